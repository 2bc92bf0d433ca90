// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/train.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "bugloc/random.hpp"

namespace bugloc {

namespace {

std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::size_t> all_slots() {
  std::vector<std::size_t> slots(kFeatureCount);
  for (std::size_t i = 0; i < kFeatureCount; ++i) slots[i] = i;
  return slots;
}

}  // namespace

std::vector<TrainingSample> build_samples(const std::vector<LinkedDefect>& defects,
                                          const std::vector<SourceDocument>& corpus, const IdfSource& idf,
                                          std::size_t negatives_per_defect, std::uint64_t seed,
                                          const WarningSink& warn) {
  if (negatives_per_defect == 0) throw UsageError("negatives per defect must be at least 1");
  std::unordered_map<std::string_view, std::size_t> positions;
  for (std::size_t i = 0; i < corpus.size(); ++i) positions.emplace(corpus[i].path, i);
  const auto slots = all_slots();

  std::vector<TrainingSample> samples;
  for (std::size_t d = 0; d < defects.size(); ++d) {
    const auto& defect = defects[d];
    std::vector<std::size_t> fixed;
    for (const auto& p : defect.fixed_paths) {
      auto it = positions.find(p);
      if (it != positions.end()) fixed.push_back(it->second);
    }
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    if (fixed.empty()) {
      warn("defect " + defect.report.id + " has no fixed file in the corpus; skipped");
      continue;
    }

    std::vector<std::size_t> unfixed;
    unfixed.reserve(corpus.size() - fixed.size());
    for (std::size_t i = 0, j = 0; i < corpus.size(); ++i) {
      if (j < fixed.size() && fixed[j] == i) {
        ++j;
      } else {
        unfixed.push_back(i);
      }
    }
    Rng rng(mix_seed(seed, d));
    auto drawn = rng.sample_indices(unfixed.size(), negatives_per_defect);
    std::sort(drawn.begin(), drawn.end());

    const PreparedReport prepared(defect.report, idf.for_report(defect.report));
    auto emit = [&](std::size_t file, int label) {
      samples.push_back({defect.report.id, corpus[file].path, prepared.features(corpus[file], slots), label});
    };
    for (auto f : fixed) emit(f, 1);
    for (auto k : drawn) emit(unfixed[k], 0);
  }
  return samples;
}

FeatureRatios anova_init(const std::vector<TrainingSample>& samples, double cap) {
  std::size_t n1 = 0;
  for (const auto& s : samples) {
    if (s.label != 0 && s.label != 1) throw UsageError("sample label must be 0 or 1");
    n1 += static_cast<std::size_t>(s.label);
  }
  const std::size_t n = samples.size();
  const std::size_t n0 = n - n1;
  if (n0 == 0 || n1 == 0) throw UsageError("ANOVA needs samples of both labels");
  if (n < 3) throw UsageError("ANOVA needs at least three samples");

  FeatureRatios f{};
  for (std::size_t slot = 0; slot < kFeatureCount; ++slot) {
    double sum[2] = {0.0, 0.0};
    for (const auto& s : samples) sum[s.label] += s.features[slot];
    const double mean[2] = {sum[0] / static_cast<double>(n0), sum[1] / static_cast<double>(n1)};
    const double grand = (sum[0] + sum[1]) / static_cast<double>(n);
    double within = 0.0;
    for (const auto& s : samples) {
      const double d = s.features[slot] - mean[s.label];
      within += d * d;
    }
    const double between = static_cast<double>(n0) * (mean[0] - grand) * (mean[0] - grand) +
                           static_cast<double>(n1) * (mean[1] - grand) * (mean[1] - grand);
    // two groups: df_between = 1, df_within = n - 2
    const double ms_within = within / static_cast<double>(n - 2);
    if (between <= 0.0) {
      f[slot] = 0.0;
    } else if (ms_within <= 0.0) {
      f[slot] = cap;
    } else {
      f[slot] = std::min(between / ms_within, cap);
    }
  }
  return f;
}

PcaSelection pca_select(const std::vector<TrainingSample>& samples, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw UsageError("PCA threshold must lie in (0, 1]");
  const std::size_t n = samples.size();
  if (n < 2) throw UsageError("PCA needs at least two samples");

  std::vector<std::size_t> varying;
  std::vector<double> means;
  std::vector<double> sds;
  for (std::size_t slot = 0; slot < kFeatureCount; ++slot) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s.features[slot];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& s : samples) ss += (s.features[slot] - mean) * (s.features[slot] - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd > 0.0 && std::isfinite(sd)) {
      varying.push_back(slot);
      means.push_back(mean);
      sds.push_back(sd);
    }
  }
  PcaSelection out;
  const std::size_t p = varying.size();
  if (p == 0) return out;
  if (n < p) throw UsageError("PCA needs at least as many samples as varying features");

  Eigen::MatrixXd z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (samples[i].features[varying[j]] - means[j]) / sds[j];
    }
  }
  const Eigen::MatrixXd corr = (z.transpose() * z) / static_cast<double>(n - 1);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
  if (solver.info() != Eigen::Success) throw DataError("PCA eigen decomposition failed");

  // Eigen returns ascending eigenvalues; walk them from the top.
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  double total = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) total += std::max(values(i), 0.0);
  for (Eigen::Index i = values.size() - 1; i >= 0; --i) out.eigenvalues.push_back(std::max(values(i), 0.0));

  std::vector<std::size_t> retained;
  double cumulative = 0.0;
  for (std::size_t c = 0; c < p; ++c) {
    const Eigen::Index col = static_cast<Eigen::Index>(p - 1 - c);
    cumulative += out.eigenvalues[c];
    std::size_t best = 0;
    double best_load = -1.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double load = std::abs(vectors(static_cast<Eigen::Index>(j), col));
      if (load > best_load + 1e-12) {
        best_load = load;
        best = j;
      }
    }
    retained.push_back(varying[best]);
    out.components = c + 1;
    if (cumulative / total >= threshold - 1e-12) break;
  }
  out.explained = std::min(cumulative / total, 1.0);
  std::sort(retained.begin(), retained.end());
  retained.erase(std::unique(retained.begin(), retained.end()), retained.end());
  out.retained = std::move(retained);
  return out;
}

AscentResult gradient_ascent(const WeightModel& initial, const FeatureTable& table,
                             const std::vector<std::size_t>& free_slots, const AscentOptions& options) {
  if (!(options.step > 0.0 && options.step < 1.0)) throw UsageError("step must lie in (0, 1)");
  if (!(options.tol > 0.0)) throw UsageError("tolerance must be positive");
  if (table.defect_count() == 0) throw UsageError("training set is empty");
  if (!initial.usable()) throw UsageError("initial model has no positive weight");

  AscentResult result;
  result.model = initial;
  double incumbent = table.mean_score(initial);

  while (result.iterations < options.max_iterations) {
    ++result.iterations;
    result.trajectory.push_back(incumbent);

    double best_score = incumbent;
    WeightModel best_model;
    std::string best_move;
    for (auto slot : free_slots) {
      const double w = result.model.slot_weight(slot);
      if (w <= 0.0) continue;
      for (int sign : {+1, -1}) {
        WeightModel neighbor = result.model;
        neighbor.set_slot(slot, w * (1.0 + sign * options.step));
        const double s = table.mean_score(neighbor);
        if (s > best_score) {
          best_score = s;
          best_model = neighbor;
          best_move = (sign > 0 ? "+" : "-") + to_string(all_feature_keys()[slot]);
        }
      }
    }

    if (best_move.empty()) {
      result.log.push_back(std::to_string(result.iterations) + '\t' + format_score(incumbent) + "\tnone");
      break;
    }
    const double gain = best_score - incumbent;
    const double relative = incumbent > 0.0 ? gain / incumbent : std::numeric_limits<double>::infinity();
    result.model = best_model;
    incumbent = best_score;
    result.log.push_back(std::to_string(result.iterations) + '\t' + format_score(incumbent) + '\t' + best_move);
    if (relative < options.tol) break;
  }
  result.trajectory.push_back(incumbent);
  return result;
}

AscentResult gradient_ascent(const WeightModel& initial, const std::vector<LinkedDefect>& train_defects,
                             const std::vector<SourceDocument>& corpus, const IdfSource& idf,
                             const AscentOptions& options) {
  if (train_defects.empty()) throw UsageError("training set is empty");
  const auto free_slots = initial.active_slots();
  const FeatureTable table(train_defects, corpus, idf, free_slots);
  return gradient_ascent(initial, table, free_slots, options);
}

std::pair<std::vector<LinkedDefect>, std::vector<LinkedDefect>> chronological_split(
    const std::vector<LinkedDefect>& defects, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw UsageError("train fraction must lie in (0, 1)");
  const std::size_t n = defects.size();
  if (n < 2) throw UsageError("a train/test split needs at least two defects");
  std::vector<const LinkedDefect*> order;
  order.reserve(n);
  for (const auto& d : defects) order.push_back(&d);
  std::stable_sort(order.begin(), order.end(), [](const LinkedDefect* a, const LinkedDefect* b) {
    const auto& da = a->report.submitted;
    const auto& db = b->report.submitted;
    if (da.has_value() != db.has_value()) return da.has_value();
    if (da && *da != *db) return *da < *db;
    return a->report.id < b->report.id;
  });
  auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n - 1);
  std::pair<std::vector<LinkedDefect>, std::vector<LinkedDefect>> split;
  for (std::size_t i = 0; i < n; ++i) (i < k ? split.first : split.second).push_back(*order[i]);
  return split;
}

WeightModel initial_model(const FeatureRatios& f_ratio, const std::vector<std::size_t>& retained) {
  if (retained.empty()) throw UsageError("no features retained");
  double max_f = 0.0;
  for (auto slot : retained) max_f = std::max(max_f, f_ratio.at(slot));
  WeightModel model;
  for (auto slot : retained) model.set_slot(slot, max_f > 0.0 ? f_ratio[slot] / max_f : 1.0);
  return model;
}

TrainResult train_model(const std::vector<LinkedDefect>& train_defects, const std::vector<SourceDocument>& corpus,
                        const IdfSource& idf, const TrainOptions& options, const WarningSink& warn) {
  if (train_defects.empty()) throw UsageError("training set is empty");
  TrainResult result;
  const auto samples = build_samples(train_defects, corpus, idf, options.negatives_per_defect, options.seed, warn);
  result.sample_count = samples.size();
  result.stats.f_ratio = anova_init(samples);
  result.stats.pca = pca_select(samples, options.pca_threshold);
  if (result.stats.pca.retained.empty()) throw DataError("every training feature is constant");

  const auto initial = initial_model(result.stats.f_ratio, result.stats.pca.retained);
  const auto free_slots = initial.active_slots();
  const FeatureTable table(train_defects, corpus, idf, free_slots);
  result.ascent = gradient_ascent(initial, table, free_slots, options.ascent);
  result.model = result.ascent.model;
  return result;
}

}  // namespace bugloc
