// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "bugloc/code_ingest.hpp"
#include "bugloc/error.hpp"
#include "bugloc/evalbench.hpp"
#include "bugloc/history_ingest.hpp"
#include "bugloc/index.hpp"
#include "bugloc/report_ingest.hpp"
#include "bugloc/simrank.hpp"
#include "bugloc/synthetic.hpp"
#include "bugloc/train.hpp"

namespace bugloc::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20050414;

struct RunConfig {
  std::string corpus;
  std::string changelog;
  std::string reports;
  std::string index;
  std::string model;
  std::string output;
  std::string config;
  std::string report_file;
  std::string wordlist;
  std::string log;
  std::vector<std::string> profiles;
  std::vector<std::string> modes;
  std::vector<double> fractions;
  std::uint64_t seed = kDefaultSeed;
  bool cutoff_idf = false;
  bool all_defects = false;
  bool strict_fixes = false;
  std::size_t negatives = 150;
  double train_fraction = 0.08;
  double step = 0.10;
  double tol = 0.0001;
  double pca_threshold = 0.99;
  std::size_t max_iterations = 1000;
  std::size_t top = 10;
  std::size_t files = 200;
  std::size_t defects = 50;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// `key = value` lines; `#` starts a comment. Keys are long flag names with or
// without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    auto key = trim(std::string_view(text).substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    entries.emplace_back(key, trim(std::string_view(text).substr(eq + 1)));
  }
  return entries;
}

std::optional<std::string> find_config_arg(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::set<std::string> given_flags(const std::vector<std::string>& args) {
  std::set<std::string> names;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i].rfind("--", 0) == 0 && args[i].size() > 2) names.insert(args[i].substr(2, args[i].find('=') - 2));
  }
  return names;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<LanguageProfile> profiles_for(const RunConfig& cfg) {
  std::vector<LanguageProfile> profiles;
  for (const auto& p : cfg.profiles) profiles.push_back(load_profile(p));
  for (auto& p : builtin_profiles()) profiles.push_back(std::move(p));
  return profiles;
}

// Everything the evaluation commands share: documents with history, reports,
// linked defects and the idf source.
struct Workspace {
  std::vector<SourceDocument> documents;
  std::vector<DefectReport> reports;
  std::vector<LinkedDefect> defects;
  std::optional<CorpusIndex> shared_index;
  std::unique_ptr<IdfSource> idf;
};

std::unique_ptr<Workspace> open_workspace(const RunConfig& cfg, const WarningSink& warn) {
  if (cfg.reports.empty()) throw UsageError("--reports is required");
  if (cfg.changelog.empty()) throw UsageError("--changelog is required to mine fixed files");
  auto ws = std::make_unique<Workspace>();
  const auto profiles = profiles_for(cfg);
  const auto records = load_changelog(cfg.changelog);

  if (!cfg.index.empty()) {
    auto loaded = load_index(cfg.index);
    ws->documents = std::move(loaded.documents);
    ws->shared_index = std::move(loaded.index);
  } else if (!cfg.corpus.empty()) {
    ws->documents = scan_tree(cfg.corpus, profiles, warn);
    ingest_changelog(records, ws->documents, warn);
  } else {
    throw UsageError("either --index or --corpus is required");
  }
  if (ws->documents.empty()) throw DataError("corpus has no source files");

  ws->reports = load_reports(cfg.reports, warn);
  if (ws->reports.empty()) throw DataError("no defect reports under " + cfg.reports);

  std::vector<std::string> ids;
  for (const auto& r : ws->reports) ids.push_back(r.id);
  LinkOptions options;
  options.source_extensions = source_extensions(profiles);
  options.strict_whole_fix = cfg.strict_fixes;
  for (const auto& d : ws->documents) options.known_paths.push_back(d.path);
  ws->defects = join_links(ws->reports, mine_links(records, ids, options));
  if (ws->defects.empty()) throw DataError("no report is linked to a fixed source file by the changelog");

  if (cfg.cutoff_idf) {
    ws->idf = std::make_unique<IdfSource>(ws->documents, ws->reports);
  } else {
    if (!ws->shared_index) ws->shared_index = build_index(ws->documents, ws->reports);
    ws->idf = std::make_unique<IdfSource>(*ws->shared_index);
  }
  return ws;
}

// Holdout defects unless --all was given.
std::vector<LinkedDefect> evaluation_set(const RunConfig& cfg, const Workspace& ws) {
  if (cfg.all_defects) return ws.defects;
  return chronological_split(ws.defects, cfg.train_fraction).second;
}

WeightModel require_model(const RunConfig& cfg) {
  if (cfg.model.empty()) throw UsageError("--model is required");
  auto model = load_model(cfg.model);
  if (!model.usable()) throw DataError("model " + cfg.model + " has no positive weight");
  return model;
}

int cmd_index(const RunConfig& cfg, std::ostream& out, const WarningSink& warn) {
  if (cfg.corpus.empty()) throw UsageError("--corpus is required");
  if (cfg.index.empty()) throw UsageError("--index is required");
  IndexedCorpus corpus;
  corpus.documents = scan_tree(cfg.corpus, profiles_for(cfg), warn);
  if (cfg.changelog.empty()) {
    warn("no changelog given; churn and log messages are empty");
  } else {
    ingest_changelog(load_changelog(cfg.changelog), corpus.documents, warn);
  }
  std::vector<DefectReport> reports;
  if (!cfg.reports.empty()) reports = load_reports(cfg.reports, warn);
  corpus.index = build_index(corpus.documents, reports);
  save_index(cfg.index, corpus);
  out << "documents\t" << corpus.documents.size() << '\n';
  out << "reports\t" << reports.size() << '\n';
  out << "terms\t" << corpus.index.frequencies().size() << '\n';
  return kExitOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.index.empty()) throw UsageError("--index is required");
  if (cfg.report_file.empty()) throw UsageError("a report file is required");
  const auto model = require_model(cfg);
  const auto corpus = load_index(cfg.index);
  const auto report = load_report(cfg.report_file);

  const auto start = std::chrono::steady_clock::now();
  const auto ranked = rank(report, corpus.documents, model, corpus.index);
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);

  out << "rank\tvalue\tpath\n";
  const auto& entries = ranked.entries();
  for (std::size_t i = 0; i < entries.size() && i < cfg.top; ++i) {
    char value[64];
    std::snprintf(value, sizeof value, "%.9g", entries[i].value);
    out << (i + 1) << '\t' << value << '\t' << entries[i].path << '\n';
  }
  err << "ranked " << entries.size() << " files in " << fixed(elapsed.count(), 3) << " ms\n";
  return kExitOk;
}

int cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& err, const WarningSink& warn) {
  if (cfg.model.empty()) throw UsageError("--model is required");
  const auto ws = open_workspace(cfg, warn);
  const auto train_set = chronological_split(ws->defects, cfg.train_fraction).first;

  TrainOptions options;
  options.negatives_per_defect = cfg.negatives;
  options.seed = cfg.seed;
  options.pca_threshold = cfg.pca_threshold;
  options.ascent.step = cfg.step;
  options.ascent.tol = cfg.tol;
  options.ascent.max_iterations = cfg.max_iterations;
  const auto result = train_model(train_set, ws->documents, *ws->idf, options, warn);
  save_model(cfg.model, result.model);

  OutputTarget log(cfg.log, out);
  log.get() << "iteration\tscore\tmove\n";
  for (const auto& line : result.ascent.log) log.get() << line << '\n';

  err << "trained on " << train_set.size() << " defects (" << result.sample_count << " samples); "
      << result.stats.pca.retained.size() << " features retained, " << result.ascent.iterations
      << " iterations, training score " << fixed(result.ascent.trajectory.back()) << '\n';
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err, const WarningSink& warn) {
  const auto model = require_model(cfg);
  const auto ws = open_workspace(cfg, warn);
  const auto result = evaluate(model, evaluation_set(cfg, *ws), ws->documents, *ws->idf);
  OutputTarget target(cfg.output, out);
  write_scores_tsv(target.get(), result);
  err << "mean score " << fixed(result.mean) << " over " << result.count() << " defects\n";
  return kExitOk;
}

int cmd_baseline(const RunConfig& cfg, std::ostream& out, std::ostream& err, const WarningSink& warn) {
  if (cfg.modes.size() != 1) throw UsageError("--mode must name exactly one baseline");
  const auto kind = parse_baseline_kind(cfg.modes.front());
  if (!kind) throw UsageError("unknown baseline: " + cfg.modes.front());
  const auto ws = open_workspace(cfg, warn);
  const auto result = evaluate_baseline(*kind, evaluation_set(cfg, *ws), ws->documents);
  OutputTarget target(cfg.output, out);
  write_scores_tsv(target.get(), result);
  err << to_string(*kind) << " baseline mean score " << fixed(result.mean) << " over " << result.count()
      << " defects\n";
  return kExitOk;
}

int cmd_degrade(const RunConfig& cfg, std::ostream& out, const WarningSink& warn) {
  const auto model = require_model(cfg);
  std::vector<DegradationMode> modes;
  for (const auto& name : cfg.modes) {
    const auto mode = parse_degradation_mode(name);
    if (!mode) throw UsageError("unknown degradation mode: " + name);
    modes.push_back(*mode);
  }
  if (modes.empty()) {
    modes.push_back(DegradationMode::same_corpus);
    if (!cfg.wordlist.empty()) modes.push_back(DegradationMode::dictionary);
    modes.push_back(DegradationMode::random_chars);
  }
  std::vector<double> fractions = cfg.fractions;
  if (fractions.empty()) {
    for (int i = 0; i <= 10; ++i) fractions.push_back(i / 10.0);
  }
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) throw UsageError("--fraction values must lie in [0, 1]");
  }

  std::optional<ReplacementPool> dictionary;
  if (std::find(modes.begin(), modes.end(), DegradationMode::dictionary) != modes.end()) {
    if (cfg.wordlist.empty()) throw ConfigError("dictionary mode requires --wordlist");
    dictionary = load_wordlist(cfg.wordlist);
  }
  const auto ws = open_workspace(cfg, warn);
  const auto same_corpus = report_term_pool(ws->reports);
  const auto rows = degradation_sweep(model, evaluation_set(cfg, *ws), ws->documents, *ws->idf, modes, fractions,
                                      cfg.seed, &same_corpus, dictionary ? &*dictionary : nullptr);
  OutputTarget target(cfg.output, out);
  write_degradation_tsv(target.get(), rows);
  return kExitOk;
}

int cmd_singleton(const RunConfig& cfg, std::ostream& out, const WarningSink& warn) {
  const auto ws = open_workspace(cfg, warn);
  const auto& keys = all_feature_keys();
  const auto rows = singleton_analysis({keys.begin(), keys.end()}, evaluation_set(cfg, *ws), ws->documents,
                                       *ws->idf);
  OutputTarget target(cfg.output, out);
  write_singleton_tsv(target.get(), rows);
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) throw UsageError("--output is required");
  SyntheticOptions options;
  options.files = cfg.files;
  options.defects = cfg.defects;
  options.seed = cfg.seed;
  const auto corpus = make_synthetic(options);
  write_synthetic_tree(corpus, cfg.output);
  out << "files\t" << corpus.files.size() << '\n';
  out << "reports\t" << corpus.reports.size() << '\n';
  out << "changes\t" << corpus.changelog.size() << '\n';
  return kExitOk;
}

struct Commands {
  CLI::App* index = nullptr;
  CLI::App* rank = nullptr;
  CLI::App* train = nullptr;
  CLI::App* eval = nullptr;
  CLI::App* baseline = nullptr;
  CLI::App* degrade = nullptr;
  CLI::App* singleton = nullptr;
  CLI::App* synth = nullptr;
};

Commands build_app(CLI::App& app, RunConfig& cfg) {
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Commands c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", cfg.config, "key = value file; explicit flags win");
    sub->add_option("--profile", cfg.profiles, "extra language profile file (repeatable)");
  };
  auto inputs = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--corpus", cfg.corpus, "source tree root");
    sub->add_option("--changelog", cfg.changelog, "change-history export");
    sub->add_option("--reports", cfg.reports, "directory of defect report records");
    sub->add_option("--index", cfg.index, "index file from `bugloc index`");
    sub->add_flag("--cutoff-idf", cfg.cutoff_idf, "idf from reports filed before each report only");
    sub->add_flag("--strict-fixes", cfg.strict_fixes, "drop links whose fix also touched non-source files");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--train-fraction", cfg.train_fraction, "earliest share of defects used for training");
  };
  auto evaluation = [&](CLI::App* sub) {
    inputs(sub);
    sub->add_flag("--all", cfg.all_defects, "evaluate every linked defect, not only the holdout");
    sub->add_option("--output", cfg.output, "write the table here instead of stdout");
  };

  c.index = app.add_subcommand("index", "scan a source tree and write an index");
  common(c.index);
  c.index->add_option("--corpus", cfg.corpus, "source tree root");
  c.index->add_option("--changelog", cfg.changelog, "change-history export");
  c.index->add_option("--reports", cfg.reports, "reports counted as idf documents");
  c.index->add_option("--index", cfg.index, "index file to write");

  c.rank = app.add_subcommand("rank", "rank indexed files for one report");
  common(c.rank);
  c.rank->add_option("report", cfg.report_file, "report record file");
  c.rank->add_option("--index", cfg.index, "index file");
  c.rank->add_option("--model", cfg.model, "weight model file");
  c.rank->add_option("--top", cfg.top, "number of files to print");

  c.train = app.add_subcommand("train", "learn a weight model on the earliest defects");
  inputs(c.train);
  c.train->add_option("--model", cfg.model, "weight model file to write");
  c.train->add_option("--negatives", cfg.negatives, "unfixed files sampled per defect");
  c.train->add_option("--step", cfg.step, "relative coefficient step");
  c.train->add_option("--tol", cfg.tol, "relative improvement that stops the search");
  c.train->add_option("--pca-threshold", cfg.pca_threshold, "variance share kept by feature pruning");
  c.train->add_option("--max-iterations", cfg.max_iterations, "iteration cap");
  c.train->add_option("--log", cfg.log, "write the training log here instead of stdout");

  c.eval = app.add_subcommand("eval", "score a model on the holdout defects");
  evaluation(c.eval);
  c.eval->add_option("--model", cfg.model, "weight model file");

  c.baseline = app.add_subcommand("baseline", "score a baseline: churn, stacktrace or optimal");
  evaluation(c.baseline);
  c.baseline->add_option("--mode", cfg.modes, "baseline name")->delimiter(',');

  c.degrade = app.add_subcommand("degrade", "score a model on reports with replaced words");
  evaluation(c.degrade);
  c.degrade->add_option("--model", cfg.model, "weight model file");
  c.degrade->add_option("--mode", cfg.modes, "same-corpus, dictionary or random-chars (repeatable)")
      ->delimiter(',');
  c.degrade->add_option("--fraction", cfg.fractions, "replaced share of distinct terms (repeatable)")
      ->delimiter(',');
  c.degrade->add_option("--wordlist", cfg.wordlist, "one word per line, for dictionary mode");

  c.singleton = app.add_subcommand("singleton", "score every feature on its own");
  evaluation(c.singleton);

  c.synth = app.add_subcommand("synth", "write a synthetic corpus with planted defects");
  common(c.synth);
  c.synth->add_option("--output", cfg.output, "directory to create");
  c.synth->add_option("--files", cfg.files, "source files");
  c.synth->add_option("--defects", cfg.defects, "defect reports");
  c.synth->add_option("--seed", cfg.seed, "random seed");
  return c;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  const WarningSink warn = [&err](const std::string& message) { err << "warning: " << message << '\n'; };
  try {
    RunConfig cfg;
    CLI::App app{"Rank source files by textual similarity to a defect report", "bugloc"};
    const auto commands = build_app(app, cfg);

    // Config entries become flags, unless the flag was given explicitly.
    std::vector<std::string> args = raw_args;
    if (const auto config = find_config_arg(raw_args)) {
      std::string subcommand;
      for (std::size_t i = 1; i < raw_args.size(); ++i) {
        if (raw_args[i].empty() || raw_args[i][0] != '-') {
          subcommand = raw_args[i];
          break;
        }
      }
      CLI::App* sub = subcommand.empty() ? nullptr : app.get_subcommand_no_throw(subcommand);
      const auto given = given_flags(raw_args);
      for (const auto& [key, value] : read_config_file(*config)) {
        bool known = false;
        for (const auto* s : app.get_subcommands({})) known = known || s->get_option_no_throw("--" + key) != nullptr;
        if (!known) throw ConfigError("unknown config key: " + key);
        if (key == "config" || !sub || !sub->get_option_no_throw("--" + key) || given.contains(key)) continue;
        args.push_back("--" + key + "=" + value);
      }
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    if (commands.index->parsed()) return cmd_index(cfg, out, warn);
    if (commands.rank->parsed()) return cmd_rank(cfg, out, err);
    if (commands.train->parsed()) return cmd_train(cfg, out, err, warn);
    if (commands.eval->parsed()) return cmd_eval(cfg, out, err, warn);
    if (commands.baseline->parsed()) return cmd_baseline(cfg, out, err, warn);
    if (commands.degrade->parsed()) return cmd_degrade(cfg, out, warn);
    if (commands.singleton->parsed()) return cmd_singleton(cfg, out, warn);
    if (commands.synth->parsed()) return cmd_synth(cfg, out);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace bugloc::cli
