// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/textkit.hpp"

#include <algorithm>

namespace bugloc {

namespace {

bool is_ascii_upper(unsigned char c) { return c >= 'A' && c <= 'Z'; }
bool is_ascii_lower(unsigned char c) { return c >= 'a' && c <= 'z'; }
bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Letters, digits and any byte of a multi-byte UTF-8 sequence.
bool is_alnum_byte(unsigned char c) {
  return is_ascii_upper(c) || is_ascii_lower(c) || is_ascii_digit(c) || c >= 0x80;
}

bool is_word_byte(unsigned char c) { return is_alnum_byte(c) || c == '_'; }

// Splits one underscore-free identifier piece at case boundaries:
// "nextAvailable" -> next|Available, "HTTPServer" -> HTTP|Server,
// "szName" -> sz|Name.
void split_case(std::string_view part, std::vector<Term>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < part.size(); ++i) {
    const auto prev = static_cast<unsigned char>(part[i - 1]);
    const auto cur = static_cast<unsigned char>(part[i]);
    bool boundary = false;
    if (is_ascii_upper(cur) && !is_ascii_upper(prev)) {
      boundary = true;
    } else if (is_ascii_upper(prev) && is_ascii_upper(cur) && i + 1 < part.size() &&
               is_ascii_lower(static_cast<unsigned char>(part[i + 1]))) {
      boundary = true;
    }
    if (boundary) {
      out.push_back(to_lower_ascii(part.substr(start, i - start)));
      start = i;
    }
  }
  if (start < part.size()) out.push_back(to_lower_ascii(part.substr(start)));
}

}  // namespace

void TermVector::add(std::string_view term, double weight) {
  if (!(weight > 0.0) || term.empty()) return;
  auto it = entries_.find(term);
  if (it == entries_.end()) {
    entries_.emplace(Term{term}, weight);
  } else {
    it->second += weight;
  }
}

double TermVector::weight(std::string_view term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? 0.0 : it->second;
}

double TermVector::total_weight() const {
  double sum = 0.0;
  for (const auto& [term, w] : entries_) sum += w;
  return sum;
}

std::vector<std::pair<Term, double>> TermVector::sorted_entries() const {
  std::vector<std::pair<Term, double>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end());
  return out;
}

TermVector& TermVector::operator+=(const TermVector& other) {
  for (const auto& [term, w] : other.entries_) add(term, w);
  return *this;
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (is_ascii_upper(static_cast<unsigned char>(c))) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<TokenSpan> plain_token_spans(std::string_view text) {
  std::vector<TokenSpan> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    bool has_alnum = false;
    while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) {
      has_alnum = has_alnum || text[i] != '_';
      ++i;
    }
    if (has_alnum) spans.push_back({start, i - start});
  }
  return spans;
}

std::vector<Term> tokenize_plain(std::string_view text) {
  std::vector<Term> terms;
  for (const auto& span : plain_token_spans(text)) {
    terms.push_back(to_lower_ascii(text.substr(span.offset, span.length)));
  }
  return terms;
}

std::vector<Term> split_identifier(std::string_view identifier) {
  std::vector<Term> pieces;
  std::size_t start = 0;
  while (start <= identifier.size()) {
    std::size_t end = identifier.find('_', start);
    if (end == std::string_view::npos) end = identifier.size();
    if (end > start) split_case(identifier.substr(start, end - start), pieces);
    start = end + 1;
  }
  Term whole = to_lower_ascii(identifier);
  if (pieces.size() == 1 && pieces.front() == whole) return pieces;
  pieces.push_back(std::move(whole));
  return pieces;
}

std::vector<Term> tokenize_code(std::string_view text) {
  std::vector<Term> terms;
  for (const auto& span : plain_token_spans(text)) {
    auto pieces = split_identifier(text.substr(span.offset, span.length));
    for (auto& piece : pieces) terms.push_back(std::move(piece));
  }
  return terms;
}

TermVector build_vector(const std::vector<Term>& terms) {
  TermVector v;
  for (const auto& t : terms) v.add(t, 1.0);
  return v;
}

std::string decode_utf8_lossy(std::string_view bytes) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto cont = [&](std::size_t k, unsigned char lo = 0x80, unsigned char hi = 0xBF) {
    if (k >= n) return false;
    const auto c = static_cast<unsigned char>(bytes[k]);
    return c >= lo && c <= hi;
  };
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if (c >= 0xC2 && c <= 0xDF) {
      len = cont(i + 1) ? 2 : 0;
    } else if (c == 0xE0) {
      len = cont(i + 1, 0xA0, 0xBF) && cont(i + 2) ? 3 : 0;
    } else if ((c >= 0xE1 && c <= 0xEC) || c == 0xEE || c == 0xEF) {
      len = cont(i + 1) && cont(i + 2) ? 3 : 0;
    } else if (c == 0xED) {
      len = cont(i + 1, 0x80, 0x9F) && cont(i + 2) ? 3 : 0;
    } else if (c == 0xF0) {
      len = cont(i + 1, 0x90, 0xBF) && cont(i + 2) && cont(i + 3) ? 4 : 0;
    } else if (c >= 0xF1 && c <= 0xF3) {
      len = cont(i + 1) && cont(i + 2) && cont(i + 3) ? 4 : 0;
    } else if (c == 0xF4) {
      len = cont(i + 1, 0x80, 0x8F) && cont(i + 2) && cont(i + 3) ? 4 : 0;
    }
    if (len == 0) {
      out.append(kReplacement);
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

}  // namespace bugloc
