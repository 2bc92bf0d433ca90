// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Version-history evidence: change log messages, churn, change dates, and
// ground-truth defect links mined from log messages.
//
// Changelog export format, one record per block:
//
//   date: 2005-04-14
//   file: org/eclipse/debug/ToggleBreakpointAction.java
//   file: org/eclipse/debug/RulerToggleBreakpointActionDelegate.java
//   message:
//   Fix for bug 91543: exception when placing a breakpoint
//   ---
//
// Records are separated by a line containing only `---`.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugloc/code_ingest.hpp"
#include "bugloc/date.hpp"
#include "bugloc/error.hpp"

namespace bugloc {

struct ChangeRecord {
  std::vector<std::string> paths;
  Date date;
  std::string message;

  friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
};

struct GroundTruthLink {
  std::string report_id;
  std::vector<std::string> fixed_paths;  ///< sorted, unique

  friend bool operator==(const GroundTruthLink&, const GroundTruthLink&) = default;
};

/// Throws ChangelogError naming the record number on malformed input.
std::vector<ChangeRecord> parse_changelog(std::string_view text);
std::vector<ChangeRecord> load_changelog(const std::filesystem::path& file);
std::string format_changelog(const std::vector<ChangeRecord>& records);

/// Replaces the log_messages vector and change dates of every document with
/// the evidence from `records`. Paths unknown to the corpus are reported to
/// `warn`; the rest of such a record still counts.
void ingest_changelog(const std::vector<ChangeRecord>& records,
                      std::vector<SourceDocument>& corpus,
                      const WarningSink& warn = stderr_warnings());

/// Number of recorded changes strictly before `cutoff`; all changes when no
/// cutoff is given.
std::size_t churn_before(const SourceDocument& doc, const std::optional<Date>& cutoff);

/// True when `message` mentions `report_id`: `#id`, the word bug/defect/issue
/// at most two words before the id, or the bare id when it is a number of at
/// least five digits.
bool mentions_report(std::string_view message, std::string_view report_id);

struct LinkOptions {
  /// Lowercased extensions (with dot) that count as source files.
  std::vector<std::string> source_extensions;
  /// Drop a link entirely when any linked change touches a non-source file.
  bool strict_whole_fix = false;
  /// When non-empty, fixed paths must also appear here.
  std::vector<std::string> known_paths;
};

/// One link per report id mentioned by at least one record, in the order of
/// `report_ids`. Links whose filtered path set is empty are dropped.
std::vector<GroundTruthLink> mine_links(const std::vector<ChangeRecord>& records,
                                        const std::vector<std::string>& report_ids,
                                        const LinkOptions& options);

}  // namespace bugloc
