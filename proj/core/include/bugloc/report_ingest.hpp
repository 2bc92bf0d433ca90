// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bugloc/date.hpp"
#include "bugloc/error.hpp"
#include "bugloc/textkit.hpp"

namespace bugloc {

/// One defect report as a structured document.
struct DefectReport {
  std::string id;
  std::string raw_title;
  std::string raw_body;
  TermVector title;  ///< build_vector(tokenize_plain(raw_title))
  TermVector body;   ///< build_vector(tokenize_plain(raw_body))
  /// Fully qualified method names, top of trace first.
  std::vector<std::string> stack_frames;
  std::string component;         ///< lowercased, may be empty
  std::string operating_system;  ///< lowercased, may be empty
  std::string version;           ///< lowercased, may be empty
  std::optional<Date> submitted;

  friend bool operator==(const DefectReport&, const DefectReport&) = default;
};

/// Builds a report from already-separated fields, deriving the vectors and
/// stack frames. Categorical values are lowercased.
DefectReport make_report(std::string id, std::string raw_title, std::string raw_body,
                         std::optional<Date> submitted = std::nullopt,
                         std::string_view component = {}, std::string_view operating_system = {},
                         std::string_view version = {});

/// Parses one report record: `Key: Value` header lines (Id, Title, Date,
/// Component, OS, Version; keys case-insensitive, unknown keys ignored), the
/// first blank line, then the free-form body. `record_name` is used in
/// errors. Throws MalformedReportError when Id or Title is missing, a header
/// line has no colon, or Date is not `YYYY-MM-DD`.
DefectReport parse_report(std::string_view record, std::string_view record_name = "<record>");

/// Reads and parses one report file.
DefectReport load_report(const std::filesystem::path& file);

/// Parses every regular file in `dir` (sorted by file name). Unparseable
/// files are reported to `warn` and skipped. Throws ConfigError when `dir`
/// is not a directory.
std::vector<DefectReport> load_reports(const std::filesystem::path& dir,
                                       const WarningSink& warn = stderr_warnings());

/// Renders a report in the record format accepted by parse_report.
std::string format_report(const DefectReport& report);

/// Recognizes Java-style frame lines (`at pkg.Class.method(File.java:12)`)
/// and returns the qualified method names in textual order.
std::vector<std::string> extract_stack_frames(std::string_view body_text);

/// Positional vector: every term of the frame at 1-based position i gets
/// weight 1/i, accumulating across frames.
TermVector trace_vector(const std::vector<std::string>& frames);

/// Weight-1 vector for a categorical field value.
TermVector categorical_vector(std::string_view value);

}  // namespace bugloc
