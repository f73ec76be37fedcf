// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end wiring the pipeline: generate corpora, train
// models, score entropy timelines, detect anomalies and run
// cross-validation sweeps. Each stage reads and writes plain files so the
// steps compose and cache well.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "logent/error.hpp"
#include "logent/failgen.hpp"
#include "logent/hampel.hpp"
#include "logent/kfold.hpp"
#include "logent/mask.hpp"
#include "logent/ngram.hpp"
#include "logent/report.hpp"
#include "logent/timeline.hpp"
#include "logent/tokenize.hpp"
#include "logent/window.hpp"
#include "logent/xval.hpp"

namespace {

namespace fs = std::filesystem;
using namespace logent;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void spill(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InvalidInputError("short write: " + path);
}

// Simple key=value configuration file; '#' starts a comment. Flags given
// on the command line win over file values, which win over defaults.
std::map<std::string, std::string> parse_config(const std::string& path) {
  std::map<std::string, std::string> values;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      auto last = s.find_last_not_of(" \t\r");
      s.erase(last == std::string::npos ? 0 : last + 1);
    };
    strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    strip(key);
    strip(value);
    values[key] = value;
  }
  return values;
}

// Resolution order: flag > config file > default.
struct Settings {
  CLI::App* cmd = nullptr;
  std::map<std::string, std::string> file;

  void load(const std::string& config_path) {
    if (!config_path.empty()) file = parse_config(config_path);
  }

  template <typename T>
  T pick(const std::string& flag_name, const std::string& key, T flag_value,
         T fallback) const {
    if (cmd->count(flag_name) > 0) return flag_value;
    auto it = file.find(key);
    if (it == file.end()) return fallback;
    std::istringstream in(it->second);
    T parsed{};
    if constexpr (std::is_same_v<T, bool>) {
      std::string s = it->second;
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
      throw ConfigError("config key '" + key + "': expected boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      return it->second;
    } else {
      if (!(in >> parsed))
        throw ConfigError("config key '" + key + "': bad value");
      return parsed;
    }
  }
};

Masker make_masker(const std::string& rules_path) {
  if (rules_path.empty()) return Masker::standard();
  return Masker(load_mask_rules(rules_path));
}

std::optional<CorpusFormat> parse_format(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s == "plain") return CorpusFormat::Plain;
  if (s == "structured") return CorpusFormat::Structured;
  throw ConfigError("unknown corpus format '" + s + "'");
}

std::vector<TokenSequence> load_tokenized(const std::string& corpus_path,
                                          const std::string& format,
                                          const Masker& masker,
                                          ReadResult* raw_out = nullptr) {
  ReadResult raw = read_corpus_file(corpus_path, parse_format(format));
  if (!raw.skipped.empty())
    std::cerr << "warning: skipped " << raw.skipped.size()
              << " malformed lines in " << corpus_path << "\n";
  std::vector<TokenSequence> records;
  records.reserve(raw.records.size());
  for (const auto& rec : raw.records)
    records.push_back(tokenize(masker.apply(rec.raw), rec.offset));
  if (raw_out) *raw_out = std::move(raw);
  return records;
}

int run(int argc, char** argv) {
  CLI::App app{"log entropy toolkit: synthetic failure corpora, n-gram "
               "entropy timelines and Hampel-based failure detection"};
  app.require_subcommand(1);

  std::string config_path;

  // ---- gen ----
  auto* gen = app.add_subcommand(
      "gen", "generate a labeled synthetic corpus from a scenario spec");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 0;
  std::uint64_t gen_window = 4096;
  gen->add_option("spec", gen_spec, "scenario spec JSON")->required();
  gen->add_option("out", gen_out, "output directory")->required();
  gen->add_option("--seed", gen_seed, "override the spec seed");
  gen->add_option("--window-bytes", gen_window,
                  "window size for the label file (default 4096)");
  gen->add_option("--config", config_path, "key=value config file");

  // ---- train ----
  auto* train = app.add_subcommand("train", "train an n-gram model");
  std::string train_corpus, train_model, train_format = "auto",
              train_rules;
  unsigned train_order = 5;
  double train_alpha = 1.0;
  train->add_option("corpus", train_corpus, "training corpus")->required();
  train->add_option("model", train_model, "model output path")->required();
  train->add_option("--order", train_order, "n-gram order (default 5)");
  train->add_option("--alpha", train_alpha,
                    "additive smoothing weight (default 1.0)");
  train->add_option("--format", train_format, "plain|structured|auto");
  train->add_option("--mask-rules", train_rules, "mask rules JSON file");
  train->add_option("--config", config_path, "key=value config file");

  // ---- score ----
  auto* score = app.add_subcommand(
      "score", "score per-window entropies of a corpus under a model");
  std::string score_model, score_corpus, score_out, score_format = "auto",
              score_rules;
  std::uint64_t score_window = 4096;
  score->add_option("model", score_model, "model file")->required();
  score->add_option("corpus", score_corpus, "corpus to score")->required();
  score->add_option("timeline", score_out, "timeline CSV output")->required();
  score->add_option("--window-bytes", score_window,
                    "window size in bytes (default 4096)");
  score->add_option("--format", score_format, "plain|structured|auto");
  score->add_option("--mask-rules", score_rules, "mask rules JSON file");
  score->add_option("--config", config_path, "key=value config file");

  // ---- detect ----
  auto* detect = app.add_subcommand(
      "detect", "flag anomalous windows in a timeline; evaluate when labels "
                "are given");
  std::string det_timeline, det_out, det_labels, det_label_corpus,
      det_label_format = "auto";
  std::size_t det_half_width = 10;
  double det_k = 3.0;
  double det_scale = 1.4826;
  bool det_one_sided = false, det_two_sided = false;
  std::size_t det_gap = 0;
  std::uint64_t det_window = 4096;
  detect->add_option("timeline", det_timeline, "timeline CSV")->required();
  detect->add_option("report", det_out, "report JSON output")->required();
  detect->add_option("--labels", det_labels, "per-window label CSV");
  detect->add_option("--label-corpus", det_label_corpus,
                     "derive window labels from a labeled structured corpus");
  detect->add_option("--window-bytes", det_window,
                     "window size used with --label-corpus (default 4096)");
  detect->add_option("--format", det_label_format, "plain|structured|auto");
  detect->add_option("--hampel-half-width", det_half_width,
                     "Hampel neighborhood half-width (default 10)");
  detect->add_option("--hampel-k", det_k, "Hampel threshold (default 3.0)");
  detect->add_option("--hampel-scale", det_scale,
                     "MAD-to-sigma constant (default 1.4826)");
  detect->add_flag("--one-sided", det_one_sided,
                   "flag high-entropy deviations only (default)");
  detect->add_flag("--two-sided", det_two_sided,
                   "flag deviations in both directions");
  detect->add_option("--gap-bridge", det_gap,
                     "bridge flag gaps up to this many windows (default 0)");
  detect->add_option("--config", config_path, "key=value config file");

  // ---- xval ----
  auto* xval = app.add_subcommand(
      "xval", "k-fold cross-validation entropy sweep over model orders");
  std::string xv_corpus, xv_out, xv_format = "auto", xv_rules;
  std::size_t xv_folds = 10;
  unsigned xv_min = 1, xv_max = 8;
  double xv_alpha = 1.0;
  std::uint64_t xv_seed = 0;
  xval->add_option("corpus", xv_corpus, "corpus to sweep")->required();
  xval->add_option("table", xv_out, "per-order entropy CSV output")->required();
  xval->add_option("--folds", xv_folds, "fold count (default 10)");
  xval->add_option("--order-min", xv_min, "lowest order (default 1)");
  xval->add_option("--order-max", xv_max, "highest order (default 8)");
  xval->add_option("--alpha", xv_alpha, "smoothing weight (default 1.0)");
  xval->add_option("--seed", xv_seed, "fold shuffle seed (default 0)");
  xval->add_option("--format", xv_format, "plain|structured|auto");
  xval->add_option("--mask-rules", xv_rules, "mask rules JSON file");
  xval->add_option("--config", config_path, "key=value config file");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    Settings cfg{gen, {}};
    cfg.load(config_path);
    gen_window = cfg.pick("--window-bytes", "window-bytes", gen_window,
                          gen_window);

    std::optional<std::uint64_t> seed_override;
    if (gen->count("--seed") > 0) seed_override = gen_seed;
    GenResult result =
        generate_from_spec_json(slurp(gen_spec), seed_override);

    fs::create_directories(gen_out);
    fs::path dir(gen_out);
    spill((dir / "corpus.jsonl").string(), corpus_to_jsonl(result.corpus));
    spill((dir / "truth.json").string(), truth_to_json(result.corpus));

    auto windows = make_windows(result.corpus.records,
                                result.corpus.total_bytes, gen_window);
    spill((dir / "labels.csv").string(),
          window_labels_to_csv(window_labels(windows)));
    if (result.training)
      spill((dir / "train.jsonl").string(), corpus_to_jsonl(*result.training));

    std::cout << "gen: " << result.corpus.records.size() << " records, "
              << result.corpus.total_bytes << " bytes, "
              << result.corpus.truth_regions.size() << " truth regions -> "
              << gen_out << "\n";
    return 0;
  }

  if (train->parsed()) {
    Settings cfg{train, {}};
    cfg.load(config_path);
    train_order = cfg.pick("--order", "order", train_order, train_order);
    train_alpha = cfg.pick("--alpha", "alpha", train_alpha, train_alpha);
    train_rules = cfg.pick("--mask-rules", "mask-rules", train_rules,
                           train_rules);

    Masker masker = make_masker(train_rules);
    auto records = load_tokenized(train_corpus, train_format, masker);
    NGramTrainer trainer(train_order, train_alpha);
    for (const auto& rec : records) trainer.add(rec);
    NGramModel model = trainer.finish();
    if (model.total_tokens() == 0)
      std::cerr << "warning: training corpus produced no tokens; the model "
                   "is degenerate\n";

    std::ofstream out(train_model, std::ios::binary);
    if (!out) throw InvalidInputError("cannot write model: " + train_model);
    model.save(out);
    if (!out) throw InvalidInputError("short write: " + train_model);

    std::cout << "train: order " << model.order() << ", vocab "
              << model.vocab_size() << ", " << model.total_tokens()
              << " tokens -> " << train_model << "\n";
    return 0;
  }

  if (score->parsed()) {
    Settings cfg{score, {}};
    cfg.load(config_path);
    score_window = cfg.pick("--window-bytes", "window-bytes", score_window,
                            score_window);
    score_rules = cfg.pick("--mask-rules", "mask-rules", score_rules,
                           score_rules);

    std::ifstream min(score_model, std::ios::binary);
    if (!min) throw InvalidInputError("cannot open model: " + score_model);
    NGramModel model = NGramModel::load(min);

    Masker masker = make_masker(score_rules);
    ReadResult raw = read_corpus_file(score_corpus, parse_format(score_format));
    if (!raw.skipped.empty())
      std::cerr << "warning: skipped " << raw.skipped.size()
                << " malformed lines in " << score_corpus << "\n";
    auto windows =
        make_windows(std::move(raw.records), raw.total_bytes, score_window);
    EntropyTimeline timeline = score_timeline(model, windows, masker);
    timeline.model_id = score_model;
    timeline.corpus_id = score_corpus;

    spill(score_out, export_timeline(timeline));
    std::cout << "score: " << timeline.points.size() << " windows -> "
              << score_out << "\n";
    return 0;
  }

  if (detect->parsed()) {
    Settings cfg{detect, {}};
    cfg.load(config_path);
    det_half_width = cfg.pick("--hampel-half-width", "hampel-half-width",
                              det_half_width, det_half_width);
    det_k = cfg.pick("--hampel-k", "hampel-k", det_k, det_k);
    det_gap = cfg.pick("--gap-bridge", "gap-bridge", det_gap, det_gap);
    bool one_sided = true;
    if (det_two_sided) one_sided = false;
    if (det_one_sided) one_sided = true;
    if (!det_one_sided && !det_two_sided)
      one_sided = cfg.pick("--one-sided", "one-sided", true, true);

    EntropyTimeline timeline = parse_timeline(slurp(det_timeline));
    HampelConfig hampel{det_half_width, det_k, det_scale, one_sided};
    auto series = timeline.entropies();
    auto flags = hampel_flag(series, hampel);

    std::optional<std::vector<bool>> labels;
    if (!det_labels.empty()) {
      labels = parse_window_labels(slurp(det_labels));
    } else if (!det_label_corpus.empty()) {
      ReadResult raw =
          read_corpus_file(det_label_corpus, parse_format(det_label_format));
      auto windows =
          make_windows(std::move(raw.records), raw.total_bytes, det_window);
      labels = window_labels(windows);
    }

    DetectionReport report;
    if (labels) {
      if (labels->size() != timeline.points.size())
        throw InvalidInputError(
            "label count (" + std::to_string(labels->size()) +
            ") does not match timeline length (" +
            std::to_string(timeline.points.size()) + ")");
      report = evaluate(flags, *labels, det_gap);
    } else {
      report.window_count = timeline.points.size();
      report.flagged = flags;
      report.regions = merge_regions(flags, det_gap);
    }

    spill(det_out, report_to_json(report, labels.has_value()));
    std::cout << "detect: flagged " << report.flagged.size() << " of "
              << report.window_count << " windows -> " << det_out << "\n";
    if (labels)
      std::cout << "detect: precision " << report.precision << ", recall "
                << report.recall << ", F " << report.f_measure << ", BA "
                << report.balanced_accuracy << "\n";
    return 0;
  }

  if (xval->parsed()) {
    Settings cfg{xval, {}};
    cfg.load(config_path);
    xv_folds = cfg.pick("--folds", "folds", xv_folds, xv_folds);
    xv_alpha = cfg.pick("--alpha", "alpha", xv_alpha, xv_alpha);
    xv_seed = cfg.pick("--seed", "seed", xv_seed, xv_seed);
    xv_rules = cfg.pick("--mask-rules", "mask-rules", xv_rules, xv_rules);

    Masker masker = make_masker(xv_rules);
    auto records = load_tokenized(xv_corpus, xv_format, masker);
    SplitPlan plan{xv_folds, 0.0, xv_seed};
    auto rows = xval_sweep(records, xv_min, xv_max, plan, xv_alpha);

    spill(xv_out, export_xval_csv(rows));
    std::cout << "xval: orders " << xv_min << ".." << xv_max << ", "
              << xv_folds << " folds -> " << xv_out << "\n";
    return 0;
  }

  return 1;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
