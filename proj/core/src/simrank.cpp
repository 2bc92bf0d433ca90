// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/simrank.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bugloc/error.hpp"
#include "bugloc/history_ingest.hpp"

namespace bugloc {

namespace {

constexpr std::size_t kTextFieldCount = 6;
constexpr std::size_t kDateChurnSlot = kFeatureCount - 1;

constexpr std::array<std::string_view, 7> kReportFieldNames = {
    "title", "body", "stack_trace", "component", "operating_system", "version", "date"};
constexpr std::array<std::string_view, 7> kCodeFieldNames = {
    "class_names", "method_signatures", "method_bodies", "comments",
    "string_literals", "log_messages", "churn"};

std::array<FeatureKey, kFeatureCount> make_keys() {
  std::array<FeatureKey, kFeatureCount> keys{};
  std::size_t slot = 0;
  for (std::size_t r = 0; r < kTextFieldCount; ++r) {
    for (std::size_t c = 0; c < kTextFieldCount; ++c) {
      keys[slot++] = {static_cast<ReportField>(r), static_cast<CodeField>(c)};
    }
  }
  keys[slot] = {ReportField::date, CodeField::churn};
  return keys;
}

// Sum over shared terms of a[t] * b[t] * scale(t), iterating the smaller map.
template <typename Scale>
double shared_term_sum(const TermVector& a, const TermVector& b, Scale scale) {
  const TermVector& small = a.size() <= b.size() ? a : b;
  const TermVector& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (const auto& [term, w] : small) {
    const double other = large.weight(term);
    if (other > 0.0) sum += w * other * scale(term);
  }
  return sum;
}

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_valid(FeatureKey key) {
  const bool date_or_churn = key.report == ReportField::date || key.code == CodeField::churn;
  if (date_or_churn) return key.report == ReportField::date && key.code == CodeField::churn;
  return static_cast<std::size_t>(key.report) < kTextFieldCount &&
         static_cast<std::size_t>(key.code) < kTextFieldCount;
}

const std::array<FeatureKey, kFeatureCount>& all_feature_keys() {
  static const auto keys = make_keys();
  return keys;
}

std::size_t feature_slot(FeatureKey key) {
  if (!is_valid(key)) throw UsageError("invalid feature pair " + to_string(key));
  if (key.report == ReportField::date) return kDateChurnSlot;
  return static_cast<std::size_t>(key.report) * kTextFieldCount + static_cast<std::size_t>(key.code);
}

std::string_view to_string(ReportField f) { return kReportFieldNames.at(static_cast<std::size_t>(f)); }
std::string_view to_string(CodeField f) { return kCodeFieldNames.at(static_cast<std::size_t>(f)); }

std::string to_string(FeatureKey key) {
  return std::string(to_string(key.report)) + ":" + std::string(to_string(key.code));
}

std::optional<ReportField> parse_report_field(std::string_view name) {
  for (std::size_t i = 0; i < kReportFieldNames.size(); ++i) {
    if (kReportFieldNames[i] == name) return static_cast<ReportField>(i);
  }
  return std::nullopt;
}

std::optional<CodeField> parse_code_field(std::string_view name) {
  for (std::size_t i = 0; i < kCodeFieldNames.size(); ++i) {
    if (kCodeFieldNames[i] == name) return static_cast<CodeField>(i);
  }
  return std::nullopt;
}

WeightModel WeightModel::single(FeatureKey key, double weight) {
  WeightModel m;
  m.set(key, weight);
  return m;
}

void WeightModel::set(FeatureKey key, double weight) { set_slot(feature_slot(key), weight); }

void WeightModel::set_slot(std::size_t slot, double weight) {
  if (slot >= kFeatureCount) throw UsageError("feature slot out of range");
  if (!std::isfinite(weight) || weight < 0.0) throw UsageError("model weights must be finite and non-negative");
  weights_[slot] = weight;
}

bool WeightModel::usable() const {
  return std::any_of(weights_.begin(), weights_.end(), [](double w) { return w > 0.0; });
}

std::vector<std::size_t> WeightModel::active_slots() const {
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (weights_[i] > 0.0) slots.push_back(i);
  }
  return slots;
}

WeightModel WeightModel::scaled(double factor) const {
  WeightModel m;
  for (std::size_t i = 0; i < kFeatureCount; ++i) m.set_slot(i, weights_[i] * factor);
  return m;
}

std::string format_model(const WeightModel& model) {
  std::string out;
  const auto& keys = all_feature_keys();
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const double w = model.slot_weight(i);
    if (w <= 0.0) continue;
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), w);
    out += std::string(to_string(keys[i].report)) + '\t' + std::string(to_string(keys[i].code)) + '\t' +
           std::string(buf.data(), ptr) + '\n';
  }
  return out;
}

WeightModel parse_model(std::string_view text) {
  WeightModel model;
  std::array<bool, kFeatureCount> seen{};
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fail = [&](const std::string& why) {
      return LoadError("model line " + std::to_string(line_no) + ": " + why);
    };
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw fail("expected report_field TAB code_field TAB weight");
    const auto rf = parse_report_field(line.substr(0, t1));
    const auto cf = parse_code_field(line.substr(t1 + 1, t2 - t1 - 1));
    if (!rf) throw fail("unknown report field '" + std::string(line.substr(0, t1)) + "'");
    if (!cf) throw fail("unknown code field '" + std::string(line.substr(t1 + 1, t2 - t1 - 1)) + "'");
    const FeatureKey key{*rf, *cf};
    if (!is_valid(key)) throw fail("pair " + to_string(key) + " is not a valid feature");
    const auto wtext = line.substr(t2 + 1);
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(wtext.data(), wtext.data() + wtext.size(), w);
    if (ec != std::errc{} || ptr != wtext.data() + wtext.size() || !std::isfinite(w) || w < 0.0) {
      throw fail("bad weight '" + std::string(wtext) + "'");
    }
    const auto slot = feature_slot(key);
    if (seen[slot]) throw fail("duplicate pair " + to_string(key));
    seen[slot] = true;
    model.set_slot(slot, w);
  }
  return model;
}

void save_model(const std::filesystem::path& file, const WeightModel& model) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write model file " + file.string());
  out << format_model(model);
  if (!out) throw ConfigError("failed writing model file " + file.string());
}

WeightModel load_model(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read model file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

double similarity(const TermVector& v1, const TermVector& v2, const CorpusIndex& index) {
  if (index.document_count() == 0) throw UsageError("similarity requires a non-empty corpus index");
  return shared_term_sum(v1, v2, [&](std::string_view t) { return index.idf(t); });
}

TermVector report_vector(const DefectReport& report, ReportField field) {
  switch (field) {
    case ReportField::title: return report.title;
    case ReportField::body: return report.body;
    case ReportField::stack_trace: return trace_vector(report.stack_frames);
    case ReportField::component: return categorical_vector(report.component);
    case ReportField::operating_system: return categorical_vector(report.operating_system);
    case ReportField::version: return categorical_vector(report.version);
    case ReportField::date: break;
  }
  throw UsageError("the date field has no term vector");
}

const TermVector& code_vector(const SourceDocument& doc, CodeField field) {
  switch (field) {
    case CodeField::class_names: return doc.class_names;
    case CodeField::method_signatures: return doc.method_signatures;
    case CodeField::method_bodies: return doc.method_bodies;
    case CodeField::comments: return doc.comments;
    case CodeField::string_literals: return doc.string_literals;
    case CodeField::log_messages: return doc.log_messages;
    case CodeField::churn: break;
  }
  throw UsageError("churn has no term vector");
}

double feature_similarity(const DefectReport& report, const SourceDocument& file, FeatureKey key,
                          const CorpusIndex& index) {
  if (!is_valid(key)) throw UsageError("invalid feature pair " + to_string(key));
  if (index.document_count() == 0) throw UsageError("feature_similarity requires a non-empty corpus index");
  if (key.report == ReportField::date) {
    return static_cast<double>(churn_before(file, report.submitted));
  }
  return similarity(report_vector(report, key.report), code_vector(file, key.code), index);
}

PreparedReport::PreparedReport(const DefectReport& report, const CorpusIndex& index)
    : submitted_(report.submitted) {
  if (index.document_count() == 0) throw UsageError("ranking requires a non-empty corpus index");
  for (std::size_t f = 0; f < kTextFields; ++f) {
    const auto v = report_vector(report, static_cast<ReportField>(f));
    for (const auto& [term, w] : v) weighted_[f].add(term, w * index.idf(term));
  }
}

double PreparedReport::feature(std::size_t slot, const SourceDocument& file) const {
  if (slot == kDateChurnSlot) return static_cast<double>(churn_before(file, submitted_));
  if (slot >= kFeatureCount) throw UsageError("feature slot out of range");
  const auto& query = weighted_[slot / kTextFieldCount];
  const auto& target = code_vector(file, static_cast<CodeField>(slot % kTextFieldCount));
  return shared_term_sum(query, target, [](std::string_view) { return 1.0; });
}

FeatureVector PreparedReport::features(const SourceDocument& file, std::span<const std::size_t> slots) const {
  FeatureVector out{};
  for (auto slot : slots) out[slot] = feature(slot, file);
  return out;
}

double combine(const WeightModel& model, const FeatureVector& features) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const double w = model.slot_weight(i);
    if (w > 0.0) sum += w * features[i];
  }
  return sum;
}

double quantize_rank_value(double value) {
  if (value == 0.0 || !std::isfinite(value)) return value == 0.0 ? 0.0 : value;
  constexpr int kDroppedBits = 12;
  auto bits = std::bit_cast<std::uint64_t>(value);
  bits += std::uint64_t{1} << (kDroppedBits - 1);
  bits &= ~((std::uint64_t{1} << kDroppedBits) - 1);
  return std::bit_cast<double>(bits);
}

RankedList RankedList::from_values(std::vector<std::string> paths, std::vector<double> values) {
  if (paths.size() != values.size()) throw UsageError("paths and values differ in length");
  std::vector<std::size_t> order(paths.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto& v : values) v = quantize_rank_value(v);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return paths[a] < paths[b];
  });
  RankedList list;
  list.entries_.reserve(order.size());
  list.group_index_.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = values[order[i]];
    if (i == 0 || v != list.entries_.back().value) list.groups_.push_back({i, i});
    list.groups_.back().end = i + 1;
    list.group_index_.push_back(list.groups_.size() - 1);
    list.entries_.push_back({std::move(paths[order[i]]), v});
  }
  return list;
}

std::optional<std::size_t> RankedList::find(std::string_view path) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].path == path) return i;
  }
  return std::nullopt;
}

std::size_t RankedList::group_of(std::size_t position) const { return group_index_.at(position); }

RankedList rank(const DefectReport& report, const std::vector<SourceDocument>& corpus,
                const WeightModel& model, const CorpusIndex& index) {
  const PreparedReport prepared(report, index);
  const auto slots = model.active_slots();
  std::vector<std::string> paths;
  std::vector<double> values;
  paths.reserve(corpus.size());
  values.reserve(corpus.size());
  for (const auto& doc : corpus) {
    paths.push_back(doc.path);
    values.push_back(combine(model, prepared.features(doc, slots)));
  }
  return RankedList::from_values(std::move(paths), std::move(values));
}

}  // namespace bugloc
