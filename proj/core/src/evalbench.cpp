// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/evalbench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "bugloc/error.hpp"
#include "bugloc/random.hpp"

namespace bugloc {

namespace {

std::unordered_map<std::string_view, std::size_t> path_positions(const std::vector<SourceDocument>& corpus) {
  std::unordered_map<std::string_view, std::size_t> pos;
  pos.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) pos.emplace(corpus[i].path, i);
  return pos;
}

std::vector<std::uint8_t> fixed_mask(const LinkedDefect& defect,
                                     const std::unordered_map<std::string_view, std::size_t>& positions,
                                     std::size_t n) {
  if (defect.fixed_paths.empty()) throw UsageError("defect " + defect.report.id + " has no fixed files");
  std::vector<std::uint8_t> mask(n, 0);
  for (const auto& p : defect.fixed_paths) {
    auto it = positions.find(p);
    if (it == positions.end()) {
      throw UsageError("defect " + defect.report.id + ": fixed file not in corpus: " + p);
    }
    mask[it->second] = 1;
  }
  return mask;
}

std::vector<std::string> corpus_paths(const std::vector<SourceDocument>& corpus) {
  std::vector<std::string> paths;
  paths.reserve(corpus.size());
  for (const auto& d : corpus) paths.push_back(d.path);
  return paths;
}

double mean_of(const std::vector<std::pair<std::string, double>>& rows) {
  double sum = 0.0;
  for (const auto& [id, s] : rows) sum += s;
  return rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Distinct title and body terms, sorted so the subset choice does not depend
// on hash order.
std::vector<Term> distinct_report_terms(const DefectReport& report) {
  std::set<Term> terms;
  for (const auto& [t, w] : report.title) terms.insert(t);
  for (const auto& [t, w] : report.body) terms.insert(t);
  return {terms.begin(), terms.end()};
}

std::string rewrite_terms(const std::string& raw, const std::unordered_map<Term, Term>& replacement) {
  std::string out;
  out.reserve(raw.size());
  std::size_t copied = 0;
  for (const auto& span : plain_token_spans(raw)) {
    const auto lowered = to_lower_ascii(std::string_view(raw).substr(span.offset, span.length));
    auto it = replacement.find(lowered);
    if (it == replacement.end()) continue;
    out.append(raw, copied, span.offset - copied);
    out.append(it->second);
    copied = span.offset + span.length;
  }
  out.append(raw, copied, std::string::npos);
  return out;
}

}  // namespace

std::vector<LinkedDefect> join_links(const std::vector<DefectReport>& reports,
                                     const std::vector<GroundTruthLink>& links) {
  std::unordered_map<std::string_view, const GroundTruthLink*> by_id;
  for (const auto& l : links) by_id.emplace(l.report_id, &l);
  std::vector<LinkedDefect> out;
  for (const auto& r : reports) {
    auto it = by_id.find(r.id);
    if (it != by_id.end()) out.push_back({r, it->second->fixed_paths});
  }
  return out;
}

double expected_first_position(std::size_t preceding, std::size_t group_size, std::size_t fixed_in_group) {
  if (fixed_in_group == 0 || fixed_in_group > group_size) {
    throw UsageError("tie group must hold between 1 and group_size fixed files");
  }
  return static_cast<double>(preceding) +
         static_cast<double>(group_size + 1) / static_cast<double>(fixed_in_group + 1);
}

double score_from_position(double inspected, std::size_t total) {
  if (total == 0) throw UsageError("score requires a non-empty corpus");
  return 100.0 * (static_cast<double>(total) - inspected) / static_cast<double>(total);
}

double score(const RankedList& ranked, const std::vector<std::string>& fixed, std::size_t total) {
  if (fixed.empty()) throw UsageError("score requires at least one fixed file");
  std::vector<std::size_t> fixed_groups;
  std::map<std::size_t, std::size_t> per_group;
  for (const auto& path : fixed) {
    const auto pos = ranked.find(path);
    if (!pos) throw UsageError("fixed file missing from ranked list: " + path);
    ++per_group[ranked.group_of(*pos)];
  }
  const auto [group_index, m] = *per_group.begin();
  const auto& group = ranked.tie_groups()[group_index];
  return score_from_position(expected_first_position(group.begin, group.size(), m), total);
}

double score_values(std::span<const double> values, std::span<const std::uint8_t> is_fixed) {
  if (values.size() != is_fixed.size()) throw UsageError("values and fixed mask differ in length");
  double best = -INFINITY;
  bool any = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (is_fixed[i]) {
      best = std::max(best, quantize_rank_value(values[i]));
      any = true;
    }
  }
  if (!any) throw UsageError("score requires at least one fixed file");
  std::size_t preceding = 0;
  std::size_t group = 0;
  std::size_t fixed_in_group = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double q = quantize_rank_value(values[i]);
    if (q > best) {
      ++preceding;
    } else if (q == best) {
      ++group;
      if (is_fixed[i]) ++fixed_in_group;
    }
  }
  return score_from_position(expected_first_position(preceding, group, fixed_in_group), values.size());
}

ScoreResult evaluate(const WeightModel& model, const std::vector<LinkedDefect>& defects,
                     const std::vector<SourceDocument>& corpus, const IdfSource& idf) {
  if (defects.empty()) throw UsageError("evaluation requires at least one defect");
  if (corpus.empty()) throw UsageError("evaluation requires a non-empty corpus");
  const auto positions = path_positions(corpus);
  ScoreResult result;
  for (const auto& d : defects) {
    fixed_mask(d, positions, corpus.size());
    const auto ranked = rank(d.report, corpus, model, idf.for_report(d.report));
    result.per_defect.emplace_back(d.report.id, score(ranked, d.fixed_paths, corpus.size()));
  }
  result.mean = mean_of(result.per_defect);
  return result;
}

FeatureTable::FeatureTable(const std::vector<LinkedDefect>& defects, const std::vector<SourceDocument>& corpus,
                           const IdfSource& idf, std::vector<std::size_t> slots)
    : slots_(std::move(slots)), files_(corpus.size()) {
  std::sort(slots_.begin(), slots_.end());
  slots_.erase(std::unique(slots_.begin(), slots_.end()), slots_.end());
  if (corpus.empty()) throw UsageError("feature table requires a non-empty corpus");
  const auto positions = path_positions(corpus);
  values_.reserve(defects.size());
  for (const auto& d : defects) {
    fixed_.push_back(fixed_mask(d, positions, corpus.size()));
    const PreparedReport prepared(d.report, idf.for_report(d.report));
    std::vector<double> table(files_ * slots_.size());
    for (std::size_t f = 0; f < files_; ++f) {
      for (std::size_t s = 0; s < slots_.size(); ++s) {
        table[f * slots_.size() + s] = prepared.feature(slots_[s], corpus[f]);
      }
    }
    values_.push_back(std::move(table));
  }
}

std::vector<double> FeatureTable::scores(const WeightModel& model) const {
  std::vector<std::pair<std::size_t, double>> active;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    const double w = model.slot_weight(slots_[s]);
    if (w > 0.0) active.emplace_back(s, w);
  }
  std::vector<double> out;
  out.reserve(values_.size());
  std::vector<double> combined(files_);
  for (std::size_t d = 0; d < values_.size(); ++d) {
    const auto& table = values_[d];
    for (std::size_t f = 0; f < files_; ++f) {
      double sum = 0.0;
      const double* row = table.data() + f * slots_.size();
      for (const auto& [s, w] : active) sum += w * row[s];
      combined[f] = sum;
    }
    out.push_back(score_values(combined, fixed_[d]));
  }
  return out;
}

double FeatureTable::mean_score(const WeightModel& model) const {
  if (values_.empty()) throw UsageError("feature table holds no defects");
  const auto s = scores(model);
  double sum = 0.0;
  for (double v : s) sum += v;
  return sum / static_cast<double>(s.size());
}

RankedList baseline_churn(const DefectReport& report, const std::vector<SourceDocument>& corpus) {
  std::vector<double> values;
  values.reserve(corpus.size());
  for (const auto& d : corpus) values.push_back(static_cast<double>(churn_before(d, report.submitted)));
  return RankedList::from_values(corpus_paths(corpus), std::move(values));
}

bool frame_matches_file(std::string_view frame, const SourceDocument& doc) {
  const auto last_dot = frame.rfind('.');
  if (last_dot == std::string_view::npos || last_dot == 0) return false;
  auto owner = frame.substr(0, last_dot);
  const auto prev_dot = owner.rfind('.');
  if (prev_dot != std::string_view::npos) owner = owner.substr(prev_dot + 1);
  const auto dollar = owner.find('$');
  if (dollar != std::string_view::npos) owner = owner.substr(0, dollar);
  if (owner.empty()) return false;
  const auto needle = to_lower_ascii(owner);
  const auto stem = std::filesystem::path(doc.path).stem().string();
  if (to_lower_ascii(stem) == needle) return true;
  return std::any_of(doc.declared_classes.begin(), doc.declared_classes.end(),
                     [&](const std::string& c) { return to_lower_ascii(c) == needle; });
}

RankedList baseline_stacktrace(const DefectReport& report, const std::vector<SourceDocument>& corpus) {
  std::vector<double> values(corpus.size(), 0.0);
  for (std::size_t f = 0; f < corpus.size(); ++f) {
    for (std::size_t p = 0; p < report.stack_frames.size(); ++p) {
      if (frame_matches_file(report.stack_frames[p], corpus[f])) {
        values[f] = 1.0 / static_cast<double>(p + 1);
        break;
      }
    }
  }
  return RankedList::from_values(corpus_paths(corpus), std::move(values));
}

OptimalSearchResult baseline_optimal_search(const DefectReport& report, const std::vector<SourceDocument>& corpus,
                                            const std::vector<std::string>& fixed) {
  if (corpus.empty()) throw UsageError("optimal search requires a non-empty corpus");
  LinkedDefect probe{report, fixed};
  const auto mask = fixed_mask(probe, path_positions(corpus), corpus.size());
  std::vector<double> counts(corpus.size(), 0.0);

  OptimalSearchResult best;
  best.score = score_values(counts, mask);  // no usable term: one tie group
  bool have_term = false;
  for (const auto& term : distinct_report_terms(report)) {
    for (std::size_t f = 0; f < corpus.size(); ++f) counts[f] = corpus[f].whole_file.weight(term);
    const double s = score_values(counts, mask);
    if (!have_term || s > best.score) {
      best.score = s;
      best.term = term;
      have_term = true;
    }
  }
  return best;
}

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::churn: return "churn";
    case BaselineKind::stack_trace: return "stacktrace";
    case BaselineKind::optimal_search: return "optimal";
  }
  return "?";
}

std::optional<BaselineKind> parse_baseline_kind(std::string_view name) {
  if (name == "churn") return BaselineKind::churn;
  if (name == "stacktrace" || name == "stack_trace" || name == "stack-trace") return BaselineKind::stack_trace;
  if (name == "optimal" || name == "optimal_search" || name == "optimal-search") return BaselineKind::optimal_search;
  return std::nullopt;
}

ScoreResult evaluate_baseline(BaselineKind kind, const std::vector<LinkedDefect>& defects,
                              const std::vector<SourceDocument>& corpus) {
  if (defects.empty()) throw UsageError("evaluation requires at least one defect");
  ScoreResult result;
  for (const auto& d : defects) {
    double s = 0.0;
    switch (kind) {
      case BaselineKind::churn:
        s = score(baseline_churn(d.report, corpus), d.fixed_paths, corpus.size());
        break;
      case BaselineKind::stack_trace:
        s = score(baseline_stacktrace(d.report, corpus), d.fixed_paths, corpus.size());
        break;
      case BaselineKind::optimal_search:
        s = baseline_optimal_search(d.report, corpus, d.fixed_paths).score;
        break;
    }
    result.per_defect.emplace_back(d.report.id, s);
  }
  result.mean = mean_of(result.per_defect);
  return result;
}

std::string_view to_string(DegradationMode mode) {
  switch (mode) {
    case DegradationMode::same_corpus: return "same-corpus";
    case DegradationMode::dictionary: return "dictionary";
    case DegradationMode::random_chars: return "random-chars";
  }
  return "?";
}

std::optional<DegradationMode> parse_degradation_mode(std::string_view name) {
  if (name == "same-corpus" || name == "same_corpus") return DegradationMode::same_corpus;
  if (name == "dictionary") return DegradationMode::dictionary;
  if (name == "random-chars" || name == "random_chars") return DegradationMode::random_chars;
  return std::nullopt;
}

ReplacementPool report_term_pool(const std::vector<DefectReport>& reports) {
  std::set<Term> words;
  for (const auto& r : reports) {
    for (const auto& [t, w] : r.title) words.insert(t);
    for (const auto& [t, w] : r.body) words.insert(t);
  }
  return {{words.begin(), words.end()}};
}

ReplacementPool wordlist_pool(std::string_view text) {
  std::set<Term> words;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto terms = tokenize_plain(text.substr(pos, end - pos));
    if (terms.size() == 1) words.insert(std::move(terms.front()));
    pos = end + 1;
  }
  return {{words.begin(), words.end()}};
}

ReplacementPool load_wordlist(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read wordlist " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto pool = wordlist_pool(buf.str());
  if (pool.words.empty()) throw ConfigError("wordlist has no usable words: " + file.string());
  return pool;
}

DefectReport degrade(const DefectReport& report, double fraction, DegradationMode mode, std::uint64_t seed,
                     const ReplacementPool* pool) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw UsageError("degradation fraction must lie in [0, 1]");
  if (mode == DegradationMode::dictionary && (!pool || pool->words.empty())) {
    throw ConfigError("dictionary degradation requires a wordlist");
  }
  if (mode == DegradationMode::same_corpus && (!pool || pool->words.empty())) {
    throw UsageError("same-corpus degradation requires a term pool");
  }

  const auto terms = distinct_report_terms(report);
  const std::size_t n = terms.size();
  std::size_t k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  k = std::min(k, n);
  if (k == 0) return report;

  Rng rng(seed);
  const auto chosen = rng.sample_indices(n, k);
  const std::unordered_set<std::string_view> originals(terms.begin(), terms.end());
  std::unordered_set<Term> used;
  std::unordered_map<Term, Term> replacement;

  for (auto idx : chosen) {
    const auto& original = terms[idx];
    Term candidate;
    constexpr int kAttempts = 64;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      if (mode == DegradationMode::random_chars) {
        candidate.assign(original.size(), 'a');
        for (auto& c : candidate) c = static_cast<char>('a' + rng.below(26));
      } else {
        candidate = pool->words[rng.below(pool->words.size())];
      }
      if (!originals.contains(candidate) && !used.contains(candidate)) break;
    }
    used.insert(candidate);
    replacement.emplace(original, std::move(candidate));
  }

  auto degraded = make_report(report.id, rewrite_terms(report.raw_title, replacement),
                              rewrite_terms(report.raw_body, replacement), report.submitted, report.component,
                              report.operating_system, report.version);
  degraded.stack_frames = report.stack_frames;
  return degraded;
}

std::vector<DegradationRow> degradation_sweep(const WeightModel& model, const std::vector<LinkedDefect>& defects,
                                              const std::vector<SourceDocument>& corpus, const IdfSource& idf,
                                              const std::vector<DegradationMode>& modes,
                                              const std::vector<double>& fractions, std::uint64_t seed,
                                              const ReplacementPool* same_corpus_pool,
                                              const ReplacementPool* dictionary_pool) {
  std::vector<DegradationRow> rows;
  for (auto mode : modes) {
    const ReplacementPool* pool = mode == DegradationMode::same_corpus ? same_corpus_pool
                                  : mode == DegradationMode::dictionary ? dictionary_pool
                                                                          : nullptr;
    for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
      std::vector<LinkedDefect> altered;
      altered.reserve(defects.size());
      for (std::size_t d = 0; d < defects.size(); ++d) {
        const auto defect_seed = mix_seed(mix_seed(seed, static_cast<std::uint64_t>(mode)), d);
        altered.push_back({degrade(defects[d].report, fractions[fi], mode, defect_seed, pool),
                           defects[d].fixed_paths});
      }
      rows.push_back({mode, fractions[fi], evaluate(model, altered, corpus, idf).mean});
    }
  }
  return rows;
}

std::vector<SingletonRow> singleton_analysis(const std::vector<FeatureKey>& keys,
                                             const std::vector<LinkedDefect>& defects,
                                             const std::vector<SourceDocument>& corpus, const IdfSource& idf) {
  if (defects.empty()) throw UsageError("singleton analysis requires at least one defect");
  std::vector<std::size_t> slots;
  for (const auto& k : keys) slots.push_back(feature_slot(k));
  const FeatureTable table(defects, corpus, idf, slots);
  std::vector<SingletonRow> rows;
  rows.reserve(keys.size());
  for (const auto& k : keys) rows.push_back({k, table.mean_score(WeightModel::single(k))});
  return rows;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw UsageError("pearson: series differ in length");
  if (xs.size() < 2) throw UsageError("pearson: need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("pearson: zero variance");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

void write_scores_tsv(std::ostream& out, const ScoreResult& result) {
  out << "defect_id\tscore\n";
  for (const auto& [id, s] : result.per_defect) out << id << '\t' << fixed6(s) << '\n';
  out << "mean\t" << fixed6(result.mean) << '\n';
}

void write_degradation_tsv(std::ostream& out, const std::vector<DegradationRow>& rows) {
  out << "mode\tfraction\tmean_score\n";
  for (const auto& r : rows) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.2f", r.fraction);
    out << to_string(r.mode) << '\t' << frac << '\t' << fixed6(r.mean_score) << '\n';
  }
}

void write_singleton_tsv(std::ostream& out, const std::vector<SingletonRow>& rows) {
  out << "report_field\tcode_field\tscore\n";
  for (const auto& r : rows) {
    out << to_string(r.key.report) << '\t' << to_string(r.key.code) << '\t' << fixed6(r.score) << '\n';
  }
}

}  // namespace bugloc
