// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Lexical decomposition of source files into substructure term vectors.
// Nothing here compiles or parses the language; comment and string regions
// come from a LanguageProfile and everything else from line-level heuristics.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bugloc/date.hpp"
#include "bugloc/error.hpp"
#include "bugloc/textkit.hpp"

namespace bugloc {

/// One source file as a structured document.
struct SourceDocument {
  std::string path;  ///< repository-relative, '/'-separated
  TermVector class_names;
  TermVector method_signatures;
  TermVector method_bodies;
  TermVector comments;
  TermVector string_literals;
  TermVector whole_file;
  TermVector log_messages;
  /// Declared class/interface/enum/struct names plus the file stem, as
  /// written. Used to match stack-trace frames to files.
  std::vector<std::string> declared_classes;
  /// Sorted; churn() is its length.
  std::vector<Date> change_dates;

  std::size_t churn() const noexcept { return change_dates.size(); }

  friend bool operator==(const SourceDocument&, const SourceDocument&) = default;
};

struct LanguageProfile {
  std::string name;
  std::vector<std::string> line_comment_markers;
  std::vector<std::pair<std::string, std::string>> block_comment_delimiters;
  std::vector<char> string_delimiters;
  std::vector<std::string> file_extensions;  ///< with leading dot, e.g. ".java"

  /// Throws ConfigError when a delimiter is empty or no extension is given.
  void validate() const;
  bool matches(const std::filesystem::path& file) const;
};

/// `//`, `/* */`, `"` and `'`, for `.java`.
LanguageProfile java_profile();
/// `//`, `/* */`, `"` and `'`, for the usual C and C++ extensions.
LanguageProfile cpp_profile();
std::vector<LanguageProfile> builtin_profiles();

/// Parses a `key = value` profile description. Keys: name, extensions,
/// line_comment, block_comment (open/close pairs), string_delimiters.
/// Repeated keys append. `#` starts a comment line.
LanguageProfile parse_profile(std::string_view text);
LanguageProfile load_profile(const std::filesystem::path& file);

/// The three disjoint lexical regions of a file. `code` has the same length
/// as the input with comment and string bytes blanked to spaces (newlines
/// kept), so byte offsets stay meaningful.
struct LexicalRegions {
  std::string code;
  std::string comments;  ///< comment contents, one region per line
  std::string strings;   ///< literal contents without delimiters
};

LexicalRegions split_regions(std::string_view text, const LanguageProfile& profile);

/// Splits `code` at `{`, `}` and `;`, classifying each piece as a method
/// signature or as body text.
struct CodeSegments {
  std::vector<std::string> signatures;
  std::vector<std::string> bodies;
};

CodeSegments split_code_segments(std::string_view code);

/// True when a code segment terminated by `terminator` looks like a method
/// declaration or definition header.
bool is_signature_segment(std::string_view segment, char terminator);

/// Names following `class`, `interface`, `enum` or `struct` in blanked code.
std::vector<std::string> declared_type_names(std::string_view code);

/// Decomposes already-decoded source text. Never fails.
SourceDocument parse_source(std::string_view text, const LanguageProfile& profile,
                            std::string path);

/// Reads `file` as UTF-8 with lossy replacement. Throws IngestError when the
/// file cannot be read or contains NUL bytes.
std::string read_source_text(const std::filesystem::path& file);

/// One document per file under `root` matched by a profile, sorted by path.
/// Files that fail to ingest are reported to `warn` and skipped. Throws
/// ConfigError when `root` is not a directory.
std::vector<SourceDocument> scan_tree(const std::filesystem::path& root,
                                      const std::vector<LanguageProfile>& profiles,
                                      const WarningSink& warn = stderr_warnings());

/// Lowercased extensions of every profile, for filtering changelog paths.
std::vector<std::string> source_extensions(const std::vector<LanguageProfile>& profiles);

}  // namespace bugloc
