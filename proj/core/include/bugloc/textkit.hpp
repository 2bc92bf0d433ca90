// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Tokenization and term-frequency vectors.
//
// Terms are lowercase runs of ASCII letters, digits and non-ASCII bytes.
// Every other byte except '_' separates terms. Inside code, underscores and
// case transitions additionally split compound identifiers, and the compound
// itself is kept as a term of its own.

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bugloc {

using Term = std::string;

struct TermHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

/// Weighted bag of terms. Entries with non-positive weight are never stored.
class TermVector {
 public:
  using Map = std::unordered_map<Term, double, TermHash, std::equal_to<>>;
  using const_iterator = Map::const_iterator;

  TermVector() = default;

  /// Adds `weight` to `term`. Non-positive weights are ignored.
  void add(std::string_view term, double weight = 1.0);

  /// Weight of `term`, 0 when absent.
  double weight(std::string_view term) const;
  bool contains(std::string_view term) const { return entries_.find(term) != entries_.end(); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double total_weight() const;

  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  /// Entries sorted by term; the canonical order for output and comparisons.
  std::vector<std::pair<Term, double>> sorted_entries() const;

  TermVector& operator+=(const TermVector& other);
  friend bool operator==(const TermVector& a, const TermVector& b) { return a.entries_ == b.entries_; }

 private:
  Map entries_;
};

/// A term together with the byte range of the input it was cut from.
struct TokenSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
};

/// Splits prose on whitespace and punctuation and lowercases each piece.
std::vector<Term> tokenize_plain(std::string_view text);

/// Byte ranges of the tokens `tokenize_plain` would return, in order.
std::vector<TokenSpan> plain_token_spans(std::string_view text);

/// Like `tokenize_plain`, plus the camel-case / underscore / Hungarian
/// sub-terms of every compound identifier. For a compound the sub-terms come
/// first, followed by the whole compound.
std::vector<Term> tokenize_code(std::string_view text);

/// Sub-terms of a single identifier (no separators), lowercased. Returns the
/// identifier itself when it has no compound structure.
std::vector<Term> split_identifier(std::string_view identifier);

/// Counts term multiplicities.
TermVector build_vector(const std::vector<Term>& terms);

std::string to_lower_ascii(std::string_view text);

/// Replaces malformed UTF-8 sequences with U+FFFD.
std::string decode_utf8_lossy(std::string_view bytes);

}  // namespace bugloc
