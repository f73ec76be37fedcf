// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logent/failgen.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <span>

#include <json.hpp>

#include "logent/error.hpp"
#include "logent/rng.hpp"

namespace logent {

namespace {

// ---------------------------------------------------------------------
// Template pools. Dynamic slots are filled at emission time; after the
// standard mask rules run, every slot collapses to a placeholder, so the
// static words carry the template identity.
// ---------------------------------------------------------------------

constexpr std::array<std::string_view, 7> kWorkerNormal = {
    "INFO Task {num} of stage {small} launched on executor {small}",
    "INFO Task {num} of stage {small} completed in {ms} ms",
    "INFO Cached partition part-{hex} in memory, {kb} KB free",
    "INFO Shuffle write for stage {small} flushed {kb} KB in {ms} ms",
    "INFO Heartbeat sent to driver from executor {small}",
    "INFO Broadcast piece bc-{hex} fetched from {peer}:{port}",
    "INFO Evicted partition part-{hex} from cache after {ms} ms idle",
};

constexpr std::array<std::string_view, 5> kDataNodeNormal = {
    "INFO Block blk-{num} received from {ip}:{port}, {kb} KB",
    "INFO Block blk-{num} replicated to {peer}:{port}",
    "INFO Verification of blk-{num} passed",
    "INFO Heartbeat report with {num} blocks sent to name node",
    "INFO Deleted blk-{num} backing file {path}",
};

constexpr std::array<std::string_view, 4> kMasterNormal = {
    "INFO Executor {small} registered from worker {peer}",
    "INFO Stage {small} submitted with {num} tasks",
    "INFO Stage {small} finished in {ms} ms",
    "INFO Driver heartbeat acknowledged for app-{hex}",
};

constexpr std::array<std::string_view, 4> kNameNodeNormal = {
    "INFO Allocated blk-{num} for {path}",
    "INFO File {path} closed with {small} blocks",
    "INFO Replication check: {num} blocks healthy, {small} pending",
    "INFO Storage report from {peer}: {kb} KB used",
};

// Compute-node failure, emitted by the master about the lost worker.
constexpr std::array<std::string_view, 3> kComputeS1 = {
    "WARN Worker {peer} missed {small} consecutive heartbeats",
    "ERROR Worker {peer} marked lost: rpc channel closed unexpectedly",
    "WARN Executor on {peer} presumed dead, {small} running tasks orphaned",
};
constexpr std::array<std::string_view, 3> kComputeS3 = {
    "WARN Reconnect attempt {attempt} to {peer} timed out after {ms} ms",
    "INFO Requeueing task {num} of stage {small} displaced from {peer}",
    "WARN Backing off {ms} ms before contacting {peer} again",
};
constexpr std::array<std::string_view, 3> kComputeS4 = {
    "INFO Pruned scheduler state for {peer} after {attempt} failed reconnects",
    "INFO Reassigned {num} orphaned tasks across {small} healthy workers",
    "INFO Cluster roster updated: {small} workers active",
};

// Storage-node failure, emitted by the name node about the lost data node.
constexpr std::array<std::string_view, 3> kStorageS1 = {
    "WARN Datanode {peer} heartbeat overdue by {ms} ms",
    "ERROR Datanode {peer} unresponsive, marking {num} replicas stale",
    "WARN Under-replication detected for {num} blocks hosted on {peer}",
};
constexpr std::array<std::string_view, 3> kStorageS3 = {
    "WARN Re-replication attempt {attempt} for blk-{num} stalled",
    "INFO Scheduling blk-{num} copy away from unreachable {peer}",
    "WARN Probe of {peer} attempt {attempt} failed: connection refused",
};
constexpr std::array<std::string_view, 3> kStorageS4 = {
    "INFO Removed {peer} from the active datanode set",
    "INFO Re-replication completed for {num} blocks",
    "INFO Pending replication queue drained in {ms} ms",
};

// Delayed peer-side failures on surviving data nodes.
constexpr std::array<std::string_view, 4> kPeerBurst = {
    "ERROR Read of blk-{num} from {peer}:{port} timed out after {ms} ms",
    "WARN Pipeline for blk-{num} broken at {peer}, rebuilding with {small} nodes",
    "INFO Requesting blk-{num} from an alternate replica instead of {peer}",
    "ERROR Transfer of blk-{num} to {peer}:{port} aborted: no route to host",
};

// Communication degradation under interference.
constexpr std::array<std::string_view, 4> kDegradation = {
    "WARN Rpc to {peer}:{port} timed out after {ms} ms, attempt {attempt}",
    "WARN Slow transfer to {peer}: {kb} KB took {ms} ms",
    "WARN Connection to {peer}:{port} reset, backing off {ms} ms",
    "ERROR Stream to {peer} stalled, {num} packets outstanding",
};
constexpr std::string_view kResubmit =
    "INFO Resubmitting task {num} after communication timeout with {peer}";

// ---------------------------------------------------------------------
// Slot filling
// ---------------------------------------------------------------------

struct FillCtx {
  Rng* rng = nullptr;
  const std::vector<std::string>* peer_pool = nullptr;
  std::string fixed_peer;  // exact peer for failure templates
  std::string session;     // expands {inst}
  int attempt = 0;
};

std::string random_hex8(Rng& rng) {
  static const char digits[] = "0123456789";
  static const char letters[] = "abcdef";
  static const char all[] = "0123456789abcdef";
  std::string s(8, '0');
  s[0] = digits[rng.below(10)];
  s[1] = letters[rng.below(6)];
  for (int i = 2; i < 8; ++i) s[i] = all[rng.below(16)];
  return s;
}

std::string fill_template(std::string_view tmpl, FillCtx& ctx) {
  std::string out;
  out.reserve(tmpl.size() + 16);
  char buf[64];
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    std::size_t close = tmpl.find('}', i);
    std::string_view slot = tmpl.substr(i + 1, close - i - 1);
    i = close + 1;
    Rng& rng = *ctx.rng;
    if (slot == "num") {
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(1 + rng.below(99999)));
      out += buf;
    } else if (slot == "small") {
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(1 + rng.below(99)));
      out += buf;
    } else if (slot == "ms") {
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(1 + rng.below(60000)));
      out += buf;
    } else if (slot == "kb") {
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(16 + rng.below(524272)));
      out += buf;
    } else if (slot == "hex") {
      out += random_hex8(rng);
    } else if (slot == "ip") {
      std::snprintf(buf, sizeof(buf), "192.168.%llu.%llu",
                    static_cast<unsigned long long>(1 + rng.below(254)),
                    static_cast<unsigned long long>(1 + rng.below(254)));
      out += buf;
    } else if (slot == "port") {
      std::snprintf(buf, sizeof(buf), "%llu",
                    static_cast<unsigned long long>(1024 + rng.below(64511)));
      out += buf;
    } else if (slot == "path") {
      std::snprintf(buf, sizeof(buf), "/srv/jobs/run-%llu/part-%llu",
                    static_cast<unsigned long long>(1 + rng.below(999)),
                    static_cast<unsigned long long>(1 + rng.below(9999)));
      out += buf;
    } else if (slot == "peer") {
      if (!ctx.fixed_peer.empty())
        out += ctx.fixed_peer;
      else if (ctx.peer_pool && !ctx.peer_pool->empty())
        out += (*ctx.peer_pool)[rng.below(ctx.peer_pool->size())];
      else
        out += "peer";
    } else if (slot == "attempt") {
      std::snprintf(buf, sizeof(buf), "%d", ctx.attempt);
      out += buf;
    } else if (slot == "inst") {
      out += ctx.session;
    } else if (slot == "d") {
      out += static_cast<char>('0' + rng.below(10));
    } else {
      out += '{';
      out += slot;
      out += '}';
    }
  }
  return out;
}

std::string format_ts(std::uint64_t t_us) {
  std::uint64_t ms_total = t_us / 1000;
  std::uint64_t s = 9 * 3600 + ms_total / 1000;  // run starts at 09:00:00
  char buf[40];
  std::snprintf(buf, sizeof(buf), "2025-03-14 %02llu:%02llu:%02llu,%03llu",
                static_cast<unsigned long long>(s / 3600),
                static_cast<unsigned long long>((s % 3600) / 60),
                static_cast<unsigned long long>(s % 60),
                static_cast<unsigned long long>(ms_total % 1000));
  return buf;
}

// ---------------------------------------------------------------------
// Event assembly
// ---------------------------------------------------------------------

enum Episode { kNone = 0, kComputeEpisode, kStorageEpisode, kPeerEpisode };

struct PendingEvent {
  std::uint64_t t_us = 0;
  std::size_t node = 0;  // roster index of the emitting node
  std::string_view tmpl;
  Label label = Label::Normal;
  int episode = kNone;
  int attempt = 0;
  std::string fixed_peer;
  std::string session;
};

std::span<const std::string_view> normal_pool(NodeRole role) {
  switch (role) {
    case NodeRole::Master: return kMasterNormal;
    case NodeRole::Worker: return kWorkerNormal;
    case NodeRole::NameNode: return kNameNodeNormal;
    case NodeRole::DataNode: return kDataNodeNormal;
  }
  return kWorkerNormal;
}

const char* role_tag(NodeRole role) {
  switch (role) {
    case NodeRole::Master: return "master";
    case NodeRole::Worker: return "worker";
    case NodeRole::NameNode: return "name-node";
    case NodeRole::DataNode: return "data-node";
  }
  return "?";
}

// Evenly spaced burst of stage templates.
void push_stage(std::vector<PendingEvent>& events, std::uint64_t start_us,
                std::uint64_t span_us, std::size_t count,
                std::span<const std::string_view> pool, std::size_t node,
                const std::string& about, int episode, int attempt_base) {
  std::uint64_t gap = count > 1 ? span_us / count : span_us;
  for (std::size_t i = 0; i < count; ++i) {
    PendingEvent ev;
    ev.t_us = start_us + i * gap;
    ev.node = node;
    ev.tmpl = pool[i % pool.size()];
    ev.label = Label::Anomalous;
    ev.episode = episode;
    ev.attempt = attempt_base + static_cast<int>(i / pool.size()) + 1;
    ev.fixed_peer = about;
    events.push_back(std::move(ev));
  }
}

struct EpisodePlan {
  std::size_t emitter;      // roster index
  const std::string* about; // failed node id
  std::span<const std::string_view> s1, s3, s4;
  int episode;
};

// Four-stage injection: detection burst, interleaving gap, repeated
// recovery attempts, cleanup. Bursts are compact so an episode stays a
// few windows wide at the default workload, mirroring the two-spike
// shape (detection spike, interleaving dip, recovery spike).
void push_four_stages(std::vector<PendingEvent>& events,
                      std::uint64_t onset_us, const EpisodePlan& plan) {
  push_stage(events, onset_us, 1000000, 24, plan.s1, plan.emitter,
             *plan.about, plan.episode, 0);
  std::uint64_t s3_start = onset_us + 1000000 + 2000000;
  push_stage(events, s3_start, 2500000, 18, plan.s3, plan.emitter,
             *plan.about, plan.episode, 0);
  std::uint64_t s4_start = s3_start + 2500000;
  push_stage(events, s4_start, 1000000, 10, plan.s4, plan.emitter,
             *plan.about, plan.episode, 6);
}

std::size_t find_role(const std::vector<NodeSpec>& nodes, NodeRole role) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].role == role) return i;
  return nodes.size();
}

bool hosts_role(const std::vector<NodeSpec>& nodes, const std::string& id,
                NodeRole role) {
  for (const auto& n : nodes)
    if (n.id == id && n.role == role) return true;
  return false;
}

}  // namespace

std::vector<NodeSpec> ScenarioSpec::default_roster() {
  return {
      {NodeRole::Master, "node01"},   {NodeRole::NameNode, "node01"},
      {NodeRole::Worker, "node02"},   {NodeRole::DataNode, "node02"},
      {NodeRole::Worker, "node03"},   {NodeRole::DataNode, "node03"},
      {NodeRole::Worker, "node04"},   {NodeRole::DataNode, "node04"},
  };
}

void ScenarioSpec::validate() const {
  if (duration_ms < 1000)
    throw SpecError("duration_ms", "must be at least 1000");
  if (nodes.empty()) throw SpecError("nodes", "roster is empty");
  if (workload.events_per_sec <= 0.0)
    throw SpecError("workload.events_per_sec", "must be positive");
  if (workload.comm_events_per_sec <= 0.0)
    throw SpecError("workload.comm_events_per_sec", "must be positive");
  if (workload.comm_ramp < 0.0)
    throw SpecError("workload.comm_ramp", "must be non-negative");
  if (!failure) return;

  const FailureSpec& f = *failure;
  if (f.onset_ms >= duration_ms)
    throw SpecError("failure.onset_ms", "must lie within duration_ms");
  if (f.target.empty()) throw SpecError("failure.target", "is required");

  bool target_known = false;
  for (const auto& n : nodes) target_known |= (n.id == f.target);
  if (!target_known)
    throw SpecError("failure.target", "names no node in the roster");

  auto count_role = [&](NodeRole role) {
    std::size_t c = 0;
    for (const auto& n : nodes) c += (n.role == role);
    return c;
  };

  bool needs_compute =
      f.kind == FailureKind::ComputeNode || f.kind == FailureKind::Combined;
  bool needs_storage =
      f.kind == FailureKind::StorageNode || f.kind == FailureKind::Combined;
  if (needs_compute) {
    if (count_role(NodeRole::Master) < 1 || count_role(NodeRole::Worker) < 1)
      throw SpecError("nodes", "compute scenarios need a master and a worker");
    if (!hosts_role(nodes, f.target, NodeRole::Worker))
      throw SpecError("failure.target", "must host a worker");
  }
  if (needs_storage) {
    if (count_role(NodeRole::NameNode) < 1 || count_role(NodeRole::DataNode) < 2)
      throw SpecError("nodes",
                      "storage scenarios need a name-node and two data-nodes");
    if (!hosts_role(nodes, f.target, NodeRole::DataNode))
      throw SpecError("failure.target", "must host a data-node");
  }
  if (f.ge && f.kind != FailureKind::Interference)
    throw SpecError("failure.ge", "only interference scenarios take ge params");
  if (f.ge) f.ge->validate();
}

LabeledCorpus generate(const ScenarioSpec& spec) {
  spec.validate();

  const Rng root(spec.seed);
  const double duration_s = static_cast<double>(spec.duration_ms) / 1000.0;
  const std::uint64_t onset_us =
      spec.failure ? spec.failure->onset_ms * 1000 : 0;

  std::vector<PendingEvent> events;

  // Normal per-role streams. A failed process stops logging at onset.
  for (std::size_t n = 0; n < spec.nodes.size(); ++n) {
    const NodeSpec& node = spec.nodes[n];
    double stop_s = duration_s;
    if (spec.failure && node.id == spec.failure->target) {
      FailureKind kind = spec.failure->kind;
      bool dies_compute = (kind == FailureKind::ComputeNode ||
                           kind == FailureKind::Combined) &&
                          node.role == NodeRole::Worker;
      bool dies_storage = (kind == FailureKind::StorageNode ||
                           kind == FailureKind::Combined) &&
                          node.role == NodeRole::DataNode;
      if (dies_compute || dies_storage)
        stop_s = static_cast<double>(spec.failure->onset_ms) / 1000.0;
    }

    Rng stream = root.fork(std::string("stream/") + node.id + "/" +
                           role_tag(node.role));
    auto pool = normal_pool(node.role);
    double t = 0.0;
    for (;;) {
      t += stream.exponential(spec.workload.events_per_sec);
      if (t >= stop_s) break;
      PendingEvent ev;
      ev.t_us = static_cast<std::uint64_t>(t * 1e6);
      ev.node = n;
      ev.tmpl = pool[stream.below(pool.size())];
      events.push_back(std::move(ev));
    }
  }

  // Failure injection.
  if (spec.failure) {
    const FailureSpec& f = *spec.failure;
    bool with_compute =
        f.kind == FailureKind::ComputeNode || f.kind == FailureKind::Combined;
    bool with_storage =
        f.kind == FailureKind::StorageNode || f.kind == FailureKind::Combined;

    if (with_compute) {
      EpisodePlan plan{find_role(spec.nodes, NodeRole::Master), &f.target,
                       kComputeS1, kComputeS3, kComputeS4, kComputeEpisode};
      push_four_stages(events, onset_us, plan);
    }
    if (with_storage) {
      // Offset slightly so combined failures interleave their stages.
      std::uint64_t storage_onset = onset_us + 500000;
      EpisodePlan plan{find_role(spec.nodes, NodeRole::NameNode), &f.target,
                       kStorageS1, kStorageS3, kStorageS4, kStorageEpisode};
      push_four_stages(events, storage_onset, plan);

      // Surviving data nodes discover the failure later, when they
      // contact the dead peer directly.
      std::uint64_t burst_start = onset_us + 5000000;
      for (std::size_t n = 0; n < spec.nodes.size(); ++n) {
        const NodeSpec& node = spec.nodes[n];
        if (node.role != NodeRole::DataNode || node.id == f.target) continue;
        push_stage(events, burst_start, 1200000, 18, kPeerBurst, n, f.target,
                   kPeerEpisode, 0);
      }
    }

    if (f.kind == FailureKind::Interference) {
      GilbertElliottParams ge = f.ge.value_or(GilbertElliottParams{});
      ge.validate();

      // Separate streams keep the event schedule and chain trajectory
      // fixed while the error rates sweep.
      Rng sched = root.fork("comm/schedule");
      Rng chain = root.fork("comm/chain");
      Rng pick = root.fork("comm/pick");

      std::vector<std::size_t> observers;
      for (std::size_t n = 0; n < spec.nodes.size(); ++n)
        if (spec.nodes[n].id != f.target) observers.push_back(n);
      if (observers.empty()) observers.push_back(0);

      const double base = spec.workload.comm_events_per_sec;
      const double ramp = spec.workload.comm_ramp;
      const double lambda_max = base * (1.0 + ramp);
      GeState state = GeState::Good;
      std::uint64_t errors = 0;
      double t = static_cast<double>(f.onset_ms) / 1000.0;
      for (;;) {
        t += sched.exponential(lambda_max);
        if (t >= duration_s) break;
        double frac = t / duration_s;
        bool kept = sched.unit() < base * (1.0 + ramp * frac * frac) / lambda_max;

        std::size_t observer = observers[pick.below(observers.size())];
        std::size_t tmpl_idx = pick.below(kDegradation.size());
        auto step = ge_step(state, ge, chain);
        state = step.state;
        if (!kept || !step.error) continue;

        ++errors;
        PendingEvent ev;
        ev.t_us = static_cast<std::uint64_t>(t * 1e6);
        ev.node = observer;
        ev.tmpl = kDegradation[tmpl_idx];
        ev.label = Label::Anomalous;
        ev.attempt = static_cast<int>(errors % 9 + 1);
        ev.fixed_peer = f.target;
        events.push_back(std::move(ev));

        if (errors % 3 == 0) {
          std::size_t master = find_role(spec.nodes, NodeRole::Master);
          PendingEvent re;
          re.t_us = ev.t_us + 1000;
          re.node = master < spec.nodes.size() ? master : observer;
          re.tmpl = kResubmit;
          re.label = Label::Anomalous;
          re.fixed_peer = f.target;
          events.push_back(std::move(re));
        }
      }
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const PendingEvent& a, const PendingEvent& b) {
                     return a.t_us < b.t_us;
                   });

  // Materialize records and offsets; track episode extents for truth
  // regions.
  std::map<std::string, std::vector<std::string>> peers_of;
  std::vector<std::string> machine_ids;
  for (const auto& n : spec.nodes)
    if (std::find(machine_ids.begin(), machine_ids.end(), n.id) ==
        machine_ids.end())
      machine_ids.push_back(n.id);
  for (const auto& id : machine_ids) {
    auto& pool = peers_of[id];
    for (const auto& other : machine_ids)
      if (other != id) pool.push_back(other);
  }

  Rng content = root.fork("content");
  LabeledCorpus corpus;
  corpus.records.reserve(events.size());
  std::map<int, std::pair<std::uint64_t, std::uint64_t>> extents;

  std::uint64_t offset = 0;
  for (const auto& ev : events) {
    const std::string& node_id = spec.nodes[ev.node].id;
    FillCtx ctx;
    ctx.rng = &content;
    ctx.peer_pool = &peers_of[node_id];
    ctx.fixed_peer = ev.fixed_peer;
    ctx.attempt = ev.attempt;

    LogRecord rec;
    rec.offset = offset;
    rec.raw = format_ts(ev.t_us) + " " + fill_template(ev.tmpl, ctx);
    rec.node = node_id;
    rec.label = ev.label;

    std::uint64_t extent = to_jsonl(rec).size() + 1;
    if (ev.episode != kNone) {
      auto [it, inserted] = extents.try_emplace(
          ev.episode, std::make_pair(offset, offset + extent));
      if (!inserted) {
        it->second.first = std::min(it->second.first, offset);
        it->second.second = std::max(it->second.second, offset + extent);
      }
    }
    offset += extent;
    corpus.records.push_back(std::move(rec));
  }
  corpus.total_bytes = offset;

  for (const auto& [episode, span] : extents) {
    const char* stage = episode == kPeerEpisode ? "peer-detection" : "S1-S4";
    corpus.truth_regions.push_back({span.first, span.second, stage});
  }
  std::sort(corpus.truth_regions.begin(), corpus.truth_regions.end(),
            [](const TruthRegion& a, const TruthRegion& b) {
              return a.begin < b.begin;
            });
  return corpus;
}

// ---------------------------------------------------------------------
// Case-study shaped corpus
// ---------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 14> kOsNormal = {
    "INFO Instance {inst}: build started on host compute{d}",
    "INFO Instance {inst}: allocated vif port {num}",
    "INFO Instance {inst}: image fetch finished in {ms} ms",
    "INFO Instance {inst}: powered on in {ms} ms",
    "INFO Instance {inst}: periodic health probe ok",
    "INFO Instance {inst}: attached volume vol-{hex}",
    "INFO Instance {inst}: snapshot upload of {kb} KB complete",
    "INFO Instance {inst}: powered off cleanly",
    "INFO Instance {inst}: detached volume vol-{hex}",
    "INFO Instance {inst}: deleted, reclaimed {kb} KB",
    "INFO Scheduler placed instance {inst} on compute{d}",
    "INFO Quota check passed for project p-{hex}",
    "INFO Keystone token validated for request {hex}",
    "INFO Network agent sync finished: {num} ports active",
};

constexpr std::array<std::string_view, 8> kOsAnomalous = {
    "ERROR Instance {inst}: disk write failure on {path}, aborting launch",
    "ERROR Instance {inst}: kernel panic detected via console backtrace",
    "WARN Instance {inst}: watchdog restart loop, {small} resets observed",
    "ERROR Instance {inst}: vif plug failed, port {num} unreachable",
    "ERROR Instance {inst}: libvirt domain vanished during reboot",
    "WARN Instance {inst}: memory balloon stuck at {kb} KB",
    "ERROR Instance {inst}: destroy timed out after {ms} ms, forcing",
    "ERROR Compute agent on compute{d} lost contact with conductor",
};

// Legitimate but infrequent housekeeping; absent from training corpora.
constexpr std::array<std::string_view, 3> kOsRare = {
    "INFO Housekeeping pass {small}: compacted {num} stale records in {ms} ms",
    "INFO Rotated audit journal segment seg-{hex}, {kb} KB",
    "INFO Refreshed flavor cache: {num} entries in {ms} ms",
};

constexpr std::array<std::string_view, 4> kOsHosts = {"api01", "compute01",
                                                      "compute02", "compute03"};

struct OsBuilder {
  Rng mix;
  Rng content;
  std::vector<std::string> instances;
  std::array<std::string, 4> anomalous_instances;
  std::uint64_t t_us = 0;
  std::uint64_t offset = 0;
  LabeledCorpus corpus;

  explicit OsBuilder(std::uint64_t seed, std::string_view tag)
      : mix(Rng(seed).fork(std::string("os/mix/") + std::string(tag))),
        content(Rng(seed).fork(std::string("os/content/") + std::string(tag))) {
    Rng ids = Rng(seed).fork(std::string("os/ids/") + std::string(tag));
    instances.reserve(40);
    for (int i = 0; i < 40; ++i) instances.push_back("i-" + random_hex8(ids));
    for (auto& inst : anomalous_instances) inst = "i-" + random_hex8(ids);
  }

  // Appends one record from the pool; returns its serialized extent.
  std::uint64_t emit(std::string_view tmpl, const std::string& session,
                     Label label) {
    t_us += 40000 + mix.below(80000);
    FillCtx ctx;
    ctx.rng = &content;
    ctx.session = session;

    LogRecord rec;
    rec.offset = offset;
    rec.raw = format_ts(t_us) + " " + fill_template(tmpl, ctx);
    rec.node = std::string(kOsHosts[mix.below(kOsHosts.size())]);
    rec.session = session;
    rec.label = label;

    std::uint64_t extent = to_jsonl(rec).size() + 1;
    offset += extent;
    corpus.records.push_back(std::move(rec));
    return extent;
  }

  void emit_normal() {
    std::string_view tmpl = kOsNormal[mix.below(kOsNormal.size())];
    std::string session;
    if (tmpl.find("{inst}") != std::string_view::npos)
      session = instances[mix.below(instances.size())];
    emit(tmpl, session, Label::Normal);
  }
};

}  // namespace

LabeledCorpus openstack_shape(std::uint64_t seed) {
  OsBuilder b(seed, "eval");

  constexpr std::uint64_t kWindowBytes = 4096;
  std::uint64_t anomalous_begin = 0;
  std::uint64_t anomalous_end = 0;

  for (std::size_t w = 0; w < 52; ++w) {
    std::uint64_t window_bytes = 0;
    while (window_bytes < kWindowBytes) {
      if (w >= 24 && w <= 27 && b.mix.chance(0.85)) {
        const std::string& inst = b.anomalous_instances[w - 24];
        std::string_view tmpl = kOsAnomalous[b.mix.below(kOsAnomalous.size())];
        std::uint64_t at = b.offset;
        window_bytes += b.emit(tmpl, inst, Label::Anomalous);
        if (anomalous_begin == 0 && anomalous_end == 0) anomalous_begin = at;
        anomalous_end = b.offset;
      } else if (w == 17 && b.mix.chance(0.12)) {
        std::string_view tmpl = kOsRare[b.mix.below(kOsRare.size())];
        window_bytes += b.emit(tmpl, "", Label::Normal);
      } else {
        std::uint64_t before = b.offset;
        b.emit_normal();
        window_bytes += b.offset - before;
      }
    }
  }

  b.corpus.total_bytes = b.offset;
  b.corpus.truth_regions.push_back(
      {anomalous_begin, anomalous_end, "anomalous-sessions"});
  return std::move(b.corpus);
}

LabeledCorpus openstack_training(std::uint64_t seed) {
  OsBuilder b(seed, "train");
  for (int i = 0; i < 2200; ++i) b.emit_normal();
  b.corpus.total_bytes = b.offset;
  return std::move(b.corpus);
}

// ---------------------------------------------------------------------
// Serialization and spec parsing
// ---------------------------------------------------------------------

std::string corpus_to_jsonl(const LabeledCorpus& corpus) {
  std::string out;
  out.reserve(corpus.total_bytes);
  for (const auto& rec : corpus.records) {
    out += to_jsonl(rec);
    out += '\n';
  }
  return out;
}

std::string truth_to_json(const LabeledCorpus& corpus) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& region : corpus.truth_regions)
    doc.push_back({{"begin", region.begin},
                   {"end", region.end},
                   {"stage", region.stage}});
  return doc.dump(2) + "\n";
}

namespace {

NodeRole parse_role(const std::string& s) {
  if (s == "master") return NodeRole::Master;
  if (s == "worker") return NodeRole::Worker;
  if (s == "name-node") return NodeRole::NameNode;
  if (s == "data-node") return NodeRole::DataNode;
  throw SpecError("nodes.role", "unknown role '" + s + "'");
}

FailureKind parse_kind(const std::string& s) {
  if (s == "compute-node") return FailureKind::ComputeNode;
  if (s == "storage-node") return FailureKind::StorageNode;
  if (s == "interference") return FailureKind::Interference;
  if (s == "combined") return FailureKind::Combined;
  throw SpecError("failure.kind", "unknown kind '" + s + "'");
}

}  // namespace

GenResult generate_from_spec_json(std::string_view json_text,
                                  std::optional<std::uint64_t> seed_override) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw SpecError("(document)", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("(document)", "must be a JSON object");

  if (doc.contains("preset")) {
    std::string preset = doc["preset"].get<std::string>();
    std::uint64_t seed =
        seed_override.value_or(doc.value("seed", std::uint64_t{1}));
    if (preset == "openstack52") {
      GenResult result;
      result.corpus = openstack_shape(seed);
      result.training = openstack_training(seed);
      return result;
    }
    throw SpecError("preset", "unknown preset '" + preset + "'");
  }

  ScenarioSpec spec;
  try {
    spec.seed = doc.value("seed", spec.seed);
    spec.duration_ms = doc.value("duration_ms", spec.duration_ms);
    if (doc.contains("nodes")) {
      for (const auto& n : doc["nodes"])
        spec.nodes.push_back(
            {parse_role(n.at("role").get<std::string>()),
             n.at("id").get<std::string>()});
    } else {
      spec.nodes = ScenarioSpec::default_roster();
    }
    if (doc.contains("workload")) {
      const auto& w = doc["workload"];
      spec.workload.events_per_sec =
          w.value("events_per_sec", spec.workload.events_per_sec);
      spec.workload.comm_events_per_sec =
          w.value("comm_events_per_sec", spec.workload.comm_events_per_sec);
      spec.workload.comm_ramp = w.value("comm_ramp", spec.workload.comm_ramp);
    }
    if (doc.contains("failure") && !doc["failure"].is_null()) {
      const auto& f = doc["failure"];
      FailureSpec fail;
      fail.kind = parse_kind(f.at("kind").get<std::string>());
      fail.target = f.value("target", std::string{});
      fail.onset_ms = f.value("onset_ms", spec.duration_ms * 45 / 100);
      if (f.contains("ge")) {
        const auto& g = f["ge"];
        GilbertElliottParams ge;
        ge.good_to_bad = g.value("p", ge.good_to_bad);
        ge.bad_to_good = g.value("r", ge.bad_to_good);
        ge.error_rate_good = g.value("e_good", ge.error_rate_good);
        ge.error_rate_bad = g.value("e_bad", ge.error_rate_bad);
        fail.ge = ge;
      }
      spec.failure = fail;
    }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError("(document)", std::string("malformed spec: ") + e.what());
  }
  if (seed_override) spec.seed = *seed_override;

  GenResult result;
  result.corpus = generate(spec);
  return result;
}

}  // namespace logent
