// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Generated corpora with a planted signal: every defect report shares a few
// rare words with exactly one source file (its fix) and otherwise draws from
// a common filler vocabulary shared by every file. Used by the tests, the
// benchmarks and the `synth` command.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bugloc/code_ingest.hpp"
#include "bugloc/history_ingest.hpp"
#include "bugloc/report_ingest.hpp"

namespace bugloc {

struct SyntheticOptions {
  std::size_t files = 200;
  std::size_t defects = 50;
  std::size_t rare_terms = 5;        ///< shared by a report and its fixed file only
  std::size_t filler_vocabulary = 400;
  std::size_t filler_per_file = 40;  ///< filler words drawn per file
  std::size_t filler_per_report = 12;
  std::size_t noise_changes = 100;   ///< changelog records unrelated to any defect
  std::uint64_t seed = 20050414;
};

struct SyntheticFile {
  std::string path;  ///< relative, generic separators
  std::string text;
};

struct SyntheticCorpus {
  std::vector<SyntheticFile> files;
  std::vector<SourceDocument> documents;  ///< parsed files with the changelog ingested, sorted by path
  std::vector<DefectReport> reports;      ///< chronological
  std::vector<ChangeRecord> changelog;    ///< dated after every report
  std::vector<GroundTruthLink> links;     ///< one fixed file per report, the truth the generator planted
};

/// Throws UsageError when there are more defects than files or the options
/// leave no room for distinct words.
SyntheticCorpus make_synthetic(const SyntheticOptions& options = {});

/// Writes the files at their corpus paths (`src/...`), `reports/` (one
/// record per report) and `changelog.txt` under `root`, creating directories
/// as needed. `root` is then the corpus root.
void write_synthetic_tree(const SyntheticCorpus& corpus, const std::filesystem::path& root);

}  // namespace bugloc
