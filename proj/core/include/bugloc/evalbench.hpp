// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Evaluation: the score metric, comparison baselines, the word-replacement
// degradation protocol, singleton feature analysis and Pearson correlation.
//
// score = 100 * (total - inspected) / total, where `inspected` is the
// expected 1-based position of the first fixed file. Inside a tie group of
// size g holding m fixed files the first fixed file is expected at
// (files before the group) + (g + 1) / (m + 1).

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugloc/code_ingest.hpp"
#include "bugloc/history_ingest.hpp"
#include "bugloc/index.hpp"
#include "bugloc/report_ingest.hpp"
#include "bugloc/simrank.hpp"

namespace bugloc {

/// A report together with the files changed to fix it.
struct LinkedDefect {
  DefectReport report;
  std::vector<std::string> fixed_paths;
};

/// Pairs reports with links by id, in report order. Reports without a link
/// are dropped.
std::vector<LinkedDefect> join_links(const std::vector<DefectReport>& reports,
                                     const std::vector<GroundTruthLink>& links);

struct ScoreResult {
  std::vector<std::pair<std::string, double>> per_defect;  ///< (defect id, score)
  double mean = 0.0;
  std::size_t count() const noexcept { return per_defect.size(); }
};

/// Expected 1-based position of the first fixed file when it sits in a tie
/// group of `group_size` entries holding `fixed_in_group` fixed files, after
/// `preceding` other entries.
double expected_first_position(std::size_t preceding, std::size_t group_size, std::size_t fixed_in_group);

double score_from_position(double inspected, std::size_t total);

/// Throws UsageError when `fixed` is empty or names a file missing from the
/// list.
double score(const RankedList& ranked, const std::vector<std::string>& fixed, std::size_t total);

/// Same as score() for unsorted rank values; `is_fixed[i]` marks fixed files.
/// Linear time. Values are quantized like RankedList::from_values.
double score_values(std::span<const double> values, std::span<const std::uint8_t> is_fixed);

/// Mean score of rank() over `defects`. Throws UsageError on an empty set or
/// a fixed path missing from the corpus.
ScoreResult evaluate(const WeightModel& model, const std::vector<LinkedDefect>& defects,
                     const std::vector<SourceDocument>& corpus, const IdfSource& idf);

/// Feature values of every corpus file for every defect, restricted to a set
/// of slots. Scoring a model against the table is equivalent to evaluate()
/// but does not recompute similarities.
class FeatureTable {
 public:
  FeatureTable(const std::vector<LinkedDefect>& defects, const std::vector<SourceDocument>& corpus,
               const IdfSource& idf, std::vector<std::size_t> slots);

  std::size_t defect_count() const noexcept { return fixed_.size(); }
  const std::vector<std::size_t>& slots() const noexcept { return slots_; }

  /// Per-defect scores; weights outside slots() are ignored.
  std::vector<double> scores(const WeightModel& model) const;
  double mean_score(const WeightModel& model) const;

 private:
  std::vector<std::size_t> slots_;
  std::size_t files_ = 0;
  // defect-major, then file, then slot
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<std::uint8_t>> fixed_;
};

/// Files by pre-report change count, descending.
RankedList baseline_churn(const DefectReport& report, const std::vector<SourceDocument>& corpus);

/// Files named by stack-trace frames, by earliest frame position; everything
/// else in one trailing tie group. A frame names a file when its class
/// component (the element before the method name, without `$Inner`
/// suffixes) equals the file stem or a declared class name, ignoring case.
RankedList baseline_stacktrace(const DefectReport& report, const std::vector<SourceDocument>& corpus);

/// True when `frame` names `doc` under the baseline_stacktrace rule.
bool frame_matches_file(std::string_view frame, const SourceDocument& doc);

struct OptimalSearchResult {
  double score = 0.0;
  std::string term;  ///< best single search term; empty if the report has none
};

/// Best score over all single-term searches (files by occurrence count of the
/// term, non-matching files tied last) using the report's title and body
/// terms. Oracle-assisted by construction: it needs the fixed files.
OptimalSearchResult baseline_optimal_search(const DefectReport& report,
                                            const std::vector<SourceDocument>& corpus,
                                            const std::vector<std::string>& fixed);

enum class BaselineKind { churn, stack_trace, optimal_search };
std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline_kind(std::string_view name);

ScoreResult evaluate_baseline(BaselineKind kind, const std::vector<LinkedDefect>& defects,
                              const std::vector<SourceDocument>& corpus);

enum class DegradationMode { same_corpus, dictionary, random_chars };
std::string_view to_string(DegradationMode mode);
std::optional<DegradationMode> parse_degradation_mode(std::string_view name);

/// Candidate replacement words, sorted and unique.
struct ReplacementPool {
  std::vector<Term> words;
};

/// Every title and body term of `reports`.
ReplacementPool report_term_pool(const std::vector<DefectReport>& reports);
/// One word per line; lines that do not tokenize to exactly one term are
/// skipped.
ReplacementPool wordlist_pool(std::string_view text);
/// Throws ConfigError when the file cannot be read or yields no words.
ReplacementPool load_wordlist(const std::filesystem::path& file);

/// Replaces a random ceil(fraction * n) subset of the n distinct title and
/// body terms. Each replaced term's occurrences in the raw title and body are
/// rewritten to its replacement, so weights carry over. Stack frames and
/// categorical fields are left alone. `pool` is required for same_corpus and
/// dictionary modes (ConfigError for dictionary, UsageError otherwise).
DefectReport degrade(const DefectReport& report, double fraction, DegradationMode mode, std::uint64_t seed,
                     const ReplacementPool* pool = nullptr);

struct DegradationRow {
  DegradationMode mode = DegradationMode::random_chars;
  double fraction = 0.0;
  double mean_score = 0.0;
};

/// Evaluates `model` on degraded copies of `defects` for every (mode,
/// fraction). The index is not rebuilt: it reflects the unaltered corpus.
std::vector<DegradationRow> degradation_sweep(const WeightModel& model, const std::vector<LinkedDefect>& defects,
                                              const std::vector<SourceDocument>& corpus, const IdfSource& idf,
                                              const std::vector<DegradationMode>& modes,
                                              const std::vector<double>& fractions, std::uint64_t seed,
                                              const ReplacementPool* same_corpus_pool,
                                              const ReplacementPool* dictionary_pool);

struct SingletonRow {
  FeatureKey key;
  double score = 0.0;
};

/// Score of a weight-1 model on each key alone, in the order of `keys`.
std::vector<SingletonRow> singleton_analysis(const std::vector<FeatureKey>& keys,
                                             const std::vector<LinkedDefect>& defects,
                                             const std::vector<SourceDocument>& corpus, const IdfSource& idf);

/// Sample Pearson correlation. Throws UsageError on length mismatch or fewer
/// than two points, UndefinedCorrelationError on zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

void write_scores_tsv(std::ostream& out, const ScoreResult& result);
void write_degradation_tsv(std::ostream& out, const std::vector<DegradationRow>& rows);
void write_singleton_tsv(std::ostream& out, const std::vector<SingletonRow>& rows);

}  // namespace bugloc
