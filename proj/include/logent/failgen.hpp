// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logent/gilbert_elliott.hpp"
#include "logent/record.hpp"

namespace logent {

enum class NodeRole { Master, Worker, NameNode, DataNode };

struct NodeSpec {
  NodeRole role;
  std::string id;
};

enum class FailureKind { ComputeNode, StorageNode, Interference, Combined };

struct FailureSpec {
  FailureKind kind = FailureKind::ComputeNode;
  std::string target;
  std::uint64_t onset_ms = 0;
  std::optional<GilbertElliottParams> ge;  // interference only
};

struct WorkloadProfile {
  double events_per_sec = 3.0;       // per role stream
  double comm_events_per_sec = 6.0;  // interference traffic, baseline rate
  double comm_ramp = 3.0;            // late-execution rate multiplier
};

// Declarative description of a synthetic cluster run plus injected
// failure; a spec and seed fully determine the generated corpus.
struct ScenarioSpec {
  std::uint64_t seed = 1;
  std::uint64_t duration_ms = 80000;
  std::vector<NodeSpec> nodes;
  WorkloadProfile workload;
  std::optional<FailureSpec> failure;

  // One master/name-node machine plus three worker/data-node machines.
  static std::vector<NodeSpec> default_roster();

  void validate() const;  // SpecError naming the offending field
};

struct TruthRegion {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;  // exclusive
  std::string stage;
};

struct LabeledCorpus {
  std::vector<LogRecord> records;
  std::vector<TruthRegion> truth_regions;
  std::uint64_t total_bytes = 0;
};

// Emits per-node event streams from the normal template pool, merged by
// virtual timestamp; failure specs inject the four-stage sequence
// (detection, interleaving, recovery attempts, cleanup), peer-side bursts
// for storage failures, and Gilbert-Elliott-driven degradation records for
// interference. Identical spec+seed produce byte-identical corpora.
LabeledCorpus generate(const ScenarioSpec& spec);

// Case-study shaped corpus: exactly 52 windows at 4096 bytes, anomalous
// VM session templates confined to windows 24..27, and one rare-but-normal
// window at index 17.
LabeledCorpus openstack_shape(std::uint64_t seed);

// Matching all-normal training corpus drawn from the same template pools.
LabeledCorpus openstack_training(std::uint64_t seed);

std::string corpus_to_jsonl(const LabeledCorpus& corpus);
std::string truth_to_json(const LabeledCorpus& corpus);

// Parses a scenario JSON document. Either a full spec
//   {"seed":., "duration_ms":., "nodes":[{"role":.,"id":.}...],
//    "workload":{...}, "failure":{"kind":.,"target":.,"onset_ms":.,"ge":{...}}}
// or a preset reference {"preset":"openstack52","seed":.}.
// `seed_override` takes precedence over the file's seed.
struct GenResult {
  LabeledCorpus corpus;
  std::optional<LabeledCorpus> training;  // presets ship a training corpus
};
GenResult generate_from_spec_json(std::string_view json_text,
                                  std::optional<std::uint64_t> seed_override);

}  // namespace logent
