// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Similarity between term vectors and the weighted rank of a source file for
// a defect report:
//
//   similarity(v1, v2) = sum over shared terms t of v1[t] * v2[t] * idf(t)
//   rank(D, f)         = sum over (j, k) of c_jk * similarity(D_j, f_k)
//
// Term weights are raw counts; nothing is normalized by document size.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bugloc/code_ingest.hpp"
#include "bugloc/index.hpp"
#include "bugloc/report_ingest.hpp"

namespace bugloc {

enum class ReportField : std::uint8_t {
  title,
  body,
  stack_trace,
  component,
  operating_system,
  version,
  date,
};

enum class CodeField : std::uint8_t {
  class_names,
  method_signatures,
  method_bodies,
  comments,
  string_literals,
  log_messages,
  churn,
};

/// One (report substructure, code substructure) pair. The six textual report
/// fields pair with the six textual code fields; `date` pairs only with
/// `churn`.
struct FeatureKey {
  ReportField report = ReportField::title;
  CodeField code = CodeField::class_names;

  friend auto operator<=>(const FeatureKey&, const FeatureKey&) = default;
};

inline constexpr std::size_t kFeatureCount = 6 * 6 + 1;

bool is_valid(FeatureKey key);

/// All valid keys in slot order: report-field-major, then (date, churn).
const std::array<FeatureKey, kFeatureCount>& all_feature_keys();

/// Dense slot of a valid key. Throws UsageError for invalid keys.
std::size_t feature_slot(FeatureKey key);

std::string_view to_string(ReportField f);
std::string_view to_string(CodeField f);
/// `report_field:code_field`
std::string to_string(FeatureKey key);
std::optional<ReportField> parse_report_field(std::string_view name);
std::optional<CodeField> parse_code_field(std::string_view name);

/// The c_jk coefficients. Keys never set have weight 0.
class WeightModel {
 public:
  WeightModel() { weights_.fill(0.0); }

  static WeightModel single(FeatureKey key, double weight = 1.0);

  double weight(FeatureKey key) const { return weights_[feature_slot(key)]; }
  double slot_weight(std::size_t slot) const { return weights_.at(slot); }

  /// Throws UsageError for an invalid key or a negative / non-finite weight.
  void set(FeatureKey key, double weight);
  void set_slot(std::size_t slot, double weight);

  /// At least one positive weight.
  bool usable() const;
  std::vector<std::size_t> active_slots() const;
  WeightModel scaled(double factor) const;

  const std::array<double, kFeatureCount>& weights() const noexcept { return weights_; }

  friend bool operator==(const WeightModel&, const WeightModel&) = default;

 private:
  std::array<double, kFeatureCount> weights_;
};

/// One `report_field TAB code_field TAB weight` line per nonzero weight, in
/// slot order.
std::string format_model(const WeightModel& model);
/// Accepts the format above; blank lines and `#` comments are skipped.
/// Throws LoadError on unknown fields, invalid pairs, duplicates or bad
/// weights.
WeightModel parse_model(std::string_view text);
void save_model(const std::filesystem::path& file, const WeightModel& model);
WeightModel load_model(const std::filesystem::path& file);

double similarity(const TermVector& v1, const TermVector& v2, const CorpusIndex& index);

/// The term vector a report contributes for `field` (not for `date`).
TermVector report_vector(const DefectReport& report, ReportField field);
const TermVector& code_vector(const SourceDocument& doc, CodeField field);

/// Value of one feature for a (report, file) pair. Text pairs use
/// similarity(); (date, churn) is the number of file changes strictly
/// before the report date.
double feature_similarity(const DefectReport& report, const SourceDocument& file, FeatureKey key,
                          const CorpusIndex& index);

using FeatureVector = std::array<double, kFeatureCount>;

/// A report with its per-field vectors pre-multiplied by idf, for ranking a
/// whole corpus against one index.
class PreparedReport {
 public:
  PreparedReport(const DefectReport& report, const CorpusIndex& index);

  double feature(std::size_t slot, const SourceDocument& file) const;
  /// Features for `slots` only; every other entry is 0.
  FeatureVector features(const SourceDocument& file, std::span<const std::size_t> slots) const;

 private:
  static constexpr std::size_t kTextFields = 6;
  std::array<TermVector, kTextFields> weighted_;
  std::optional<Date> submitted_;
};

/// Sum of weight * feature over slots, in slot order.
double combine(const WeightModel& model, const FeatureVector& features);

/// Rounds to 40 significant bits. Rank values that differ only by
/// summation-order noise compare equal after this.
double quantize_rank_value(double value);

struct RankedEntry {
  std::string path;
  double value = 0.0;
};

/// Half-open range [begin, end) of entries sharing one rank value.
struct TieGroup {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
};

class RankedList {
 public:
  RankedList() = default;

  /// Sorts by value descending, then path ascending, and records tie groups.
  /// Values are quantized with quantize_rank_value first.
  static RankedList from_values(std::vector<std::string> paths, std::vector<double> values);

  const std::vector<RankedEntry>& entries() const noexcept { return entries_; }
  const std::vector<TieGroup>& tie_groups() const noexcept { return groups_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// 0-based index of `path`, or nullopt.
  std::optional<std::size_t> find(std::string_view path) const;
  /// Index into tie_groups() of the group holding entry `position`.
  std::size_t group_of(std::size_t position) const;

 private:
  std::vector<RankedEntry> entries_;
  std::vector<TieGroup> groups_;
  std::vector<std::size_t> group_index_;
};

RankedList rank(const DefectReport& report, const std::vector<SourceDocument>& corpus,
                const WeightModel& model, const CorpusIndex& index);

}  // namespace bugloc
