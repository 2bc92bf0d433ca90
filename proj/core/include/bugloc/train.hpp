// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Learning WeightModel coefficients: one-way ANOVA F-ratios seed the weights,
// PCA over standardized features prunes the feature set, and a coordinate
// search with multiplicative +/- steps refines the survivors against the mean
// training score.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bugloc/error.hpp"
#include "bugloc/evalbench.hpp"
#include "bugloc/simrank.hpp"

namespace bugloc {

struct TrainingSample {
  std::string report_id;
  std::string path;
  FeatureVector features{};
  int label = 0;  ///< 1 iff the file was fixed for the defect
};

/// One label-1 sample per fixed file and up to `negatives_per_defect`
/// label-0 samples per defect, drawn without replacement from the unfixed
/// files. Defects whose fixed paths are all outside the corpus are skipped
/// with a warning.
std::vector<TrainingSample> build_samples(const std::vector<LinkedDefect>& defects,
                                          const std::vector<SourceDocument>& corpus, const IdfSource& idf,
                                          std::size_t negatives_per_defect, std::uint64_t seed,
                                          const WarningSink& warn = stderr_warnings());

inline constexpr double kFRatioCap = 1e6;

using FeatureRatios = std::array<double, kFeatureCount>;

/// One-way F-ratio of every slot grouped by label. Constant features get 0;
/// perfectly separated ones get `cap`. Throws UsageError unless both labels
/// are present and there are at least three samples.
FeatureRatios anova_init(const std::vector<TrainingSample>& samples, double cap = kFRatioCap);

struct PcaSelection {
  std::vector<std::size_t> retained;  ///< slots, ascending
  std::size_t components = 0;         ///< principal components kept
  double explained = 0.0;             ///< variance fraction of the kept components
  std::vector<double> eigenvalues;    ///< descending, over non-constant features
};

/// PCA on the correlation matrix of the non-constant features. Keeps the
/// smallest number of components whose cumulative variance reaches
/// `threshold` and retains, per kept component, the feature with the largest
/// absolute loading. Throws UsageError when threshold is outside (0, 1] or
/// there are fewer samples than non-constant features.
PcaSelection pca_select(const std::vector<TrainingSample>& samples, double threshold);

struct FeatureStats {
  FeatureRatios f_ratio{};
  PcaSelection pca;
};

struct AscentOptions {
  double step = 0.10;
  double tol = 0.0001;
  std::size_t max_iterations = 1000;
};

struct AscentResult {
  WeightModel model;
  std::vector<double> trajectory;  ///< incumbent score at the start of each iteration, then the final score
  std::vector<std::string> log;    ///< `iteration TAB score TAB move`
  std::size_t iterations = 0;
};

/// Coordinate search over the slots in `free_slots`: every iteration scores
/// all single-coefficient +/- step neighbors and adopts the best one if it
/// beats the incumbent. Stops on a plateau, when the relative improvement
/// falls under tol, or at the iteration cap. Slots outside `free_slots` keep
/// their initial weight.
AscentResult gradient_ascent(const WeightModel& initial, const FeatureTable& table,
                             const std::vector<std::size_t>& free_slots, const AscentOptions& options = {});

/// Convenience overload: every slot with a positive initial weight is free.
AscentResult gradient_ascent(const WeightModel& initial, const std::vector<LinkedDefect>& train_defects,
                             const std::vector<SourceDocument>& corpus, const IdfSource& idf,
                             const AscentOptions& options = {});

/// Earliest `fraction` of the defects by report date (undated last, then by
/// id) for training, the rest for evaluation. The training share is
/// ceil(fraction * n) clamped to [1, n - 1].
std::pair<std::vector<LinkedDefect>, std::vector<LinkedDefect>> chronological_split(
    const std::vector<LinkedDefect>& defects, double fraction);

/// Weights proportional to the F-ratios of `retained`, scaled so the largest
/// is 1. Falls back to weight 1 on every retained slot when all ratios are 0.
WeightModel initial_model(const FeatureRatios& f_ratio, const std::vector<std::size_t>& retained);

struct TrainOptions {
  std::size_t negatives_per_defect = 150;
  std::uint64_t seed = 20050414;
  double pca_threshold = 0.99;
  AscentOptions ascent;
};

struct TrainResult {
  WeightModel model;
  FeatureStats stats;
  AscentResult ascent;
  std::size_t sample_count = 0;
};

/// build_samples, anova_init, pca_select, initial_model, gradient_ascent.
TrainResult train_model(const std::vector<LinkedDefect>& train_defects, const std::vector<SourceDocument>& corpus,
                        const IdfSource& idf, const TrainOptions& options = {},
                        const WarningSink& warn = stderr_warnings());

}  // namespace bugloc
