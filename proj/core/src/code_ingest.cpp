// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/code_ingest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace bugloc {

namespace fs = std::filesystem;

namespace {

bool is_ident_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u == '_' || u == '$' || u >= 0x80;
}

bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view text, std::size_t pos, std::string_view marker) {
  return text.size() - pos >= marker.size() && text.substr(pos, marker.size()) == marker;
}

constexpr std::array<std::string_view, 24> kControlKeywords = {
    "if",     "for",    "while",  "switch", "catch",  "return",       "else",  "do",
    "try",    "new",    "throw",  "case",   "sizeof", "synchronized", "assert", "delete",
    "goto",   "using",  "typedef", "foreach", "elif",  "lock",        "await", "yield"};

bool is_control_keyword(std::string_view word) {
  return std::find(kControlKeywords.begin(), kControlKeywords.end(), word) != kControlKeywords.end();
}

std::string_view first_identifier(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && !is_ident_start(s[i])) {
    if (!is_space(s[i]) && s[i] != '@') return {};
    ++i;
  }
  std::size_t j = i;
  while (j < s.size() && is_ident_char(s[j])) ++j;
  return s.substr(i, j - i);
}

// Index of the ')' matching the '(' at `open`, or npos.
std::size_t matching_paren(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

// Characters that may appear between the segment start and a declared
// method name: modifiers, types, template arguments, qualifiers.
bool is_declaration_prefix(std::string_view prefix) {
  for (char c : prefix) {
    if (is_ident_char(c) || is_space(c)) continue;
    switch (c) {
      case '<': case '>': case ',': case '*': case '&': case ':':
      case '[': case ']': case '@': case '~': case '?':
        continue;
      default:
        return false;
    }
  }
  return true;
}

// What may follow the closing parenthesis of a signature: qualifiers,
// `throws` clauses, trailing return types, initializer lists,
// `= 0/default/delete`.
bool is_signature_trailer(std::string_view t) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < t.size() && is_space(t[i])) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= t.size()) return true;
    const char c = t[i];
    if (c == ':' && !starts_with(t, i, "::")) return true;
    if (starts_with(t, i, "->")) {
      for (std::size_t k = i + 2; k < t.size(); ++k) {
        const char d = t[k];
        if (!(is_ident_char(d) || is_space(d) || d == ':' || d == '<' || d == '>' || d == ',' ||
              d == '*' || d == '&')) {
          return false;
        }
      }
      return true;
    }
    if (c == '=') {
      const auto rest = trim(t.substr(i + 1));
      return rest == "0" || rest == "default" || rest == "delete";
    }
    if (c == '&') {
      ++i;
      continue;
    }
    if (!is_ident_start(c)) return false;
    std::size_t j = i;
    while (j < t.size() && is_ident_char(t[j])) ++j;
    const auto word = t.substr(i, j - i);
    i = j;
    if (word == "const" || word == "override" || word == "final" || word == "volatile" ||
        word == "mutable") {
      continue;
    }
    if (word == "noexcept") {
      skip_ws();
      if (i < t.size() && t[i] == '(') {
        const auto close = matching_paren(t, i);
        if (close == std::string_view::npos) return false;
        i = close + 1;
      }
      continue;
    }
    if (word == "throws") {
      // Comma-separated list of (possibly qualified) exception types.
      bool expect_name = true;
      while (true) {
        skip_ws();
        if (i >= t.size()) return !expect_name;
        if (expect_name) {
          if (!is_ident_start(t[i])) return false;
          while (i < t.size() && (is_ident_char(t[i]) || t[i] == '.')) ++i;
          expect_name = false;
        } else if (t[i] == ',') {
          ++i;
          expect_name = true;
        } else {
          break;
        }
      }
      continue;
    }
    return false;
  }
}

std::string join_lines(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    out += p;
    out += '\n';
  }
  return out;
}

std::vector<std::string> split_values(std::string_view value) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && is_space(value[i])) ++i;
    std::size_t j = i;
    while (j < value.size() && !is_space(value[j])) ++j;
    if (j > i) out.emplace_back(value.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

void LanguageProfile::validate() const {
  const std::string who = "language profile '" + name + "'";
  for (const auto& m : line_comment_markers) {
    if (m.empty()) throw ConfigError(who + ": empty line comment marker");
  }
  for (const auto& [open, close] : block_comment_delimiters) {
    if (open.empty() || close.empty()) throw ConfigError(who + ": empty block comment delimiter");
  }
  for (char c : string_delimiters) {
    if (c == '\0' || is_space(c)) throw ConfigError(who + ": invalid string delimiter");
  }
  if (file_extensions.empty()) throw ConfigError(who + ": no file extensions");
  for (const auto& e : file_extensions) {
    if (e.empty()) throw ConfigError(who + ": empty file extension");
  }
}

bool LanguageProfile::matches(const fs::path& file) const {
  const auto ext = to_lower_ascii(file.extension().string());
  return std::any_of(file_extensions.begin(), file_extensions.end(),
                     [&](const std::string& e) { return to_lower_ascii(e) == ext; });
}

LanguageProfile java_profile() {
  return {"java", {"//"}, {{"/*", "*/"}}, {'"', '\''}, {".java"}};
}

LanguageProfile cpp_profile() {
  return {"cpp",
          {"//"},
          {{"/*", "*/"}},
          {'"', '\''},
          {".c", ".cc", ".cpp", ".cxx", ".c++", ".h", ".hh", ".hpp", ".hxx", ".inl"}};
}

std::vector<LanguageProfile> builtin_profiles() { return {java_profile(), cpp_profile()}; }

LanguageProfile parse_profile(std::string_view text) {
  LanguageProfile profile;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("profile line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = to_lower_ascii(trim(stripped.substr(0, eq)));
    const auto values = split_values(stripped.substr(eq + 1));
    if (key == "name") {
      profile.name = std::string(trim(stripped.substr(eq + 1)));
    } else if (key == "extensions" || key == "extension") {
      for (auto v : values) {
        if (v.front() != '.') v.insert(v.begin(), '.');
        profile.file_extensions.push_back(std::move(v));
      }
    } else if (key == "line_comment" || key == "line_comments") {
      profile.line_comment_markers.insert(profile.line_comment_markers.end(), values.begin(),
                                          values.end());
    } else if (key == "block_comment" || key == "block_comments") {
      if (values.size() % 2 != 0) {
        throw ConfigError("profile line " + std::to_string(line_no) +
                          ": block_comment needs open/close pairs");
      }
      for (std::size_t i = 0; i < values.size(); i += 2) {
        profile.block_comment_delimiters.emplace_back(values[i], values[i + 1]);
      }
    } else if (key == "string_delimiters" || key == "string_delimiter") {
      for (const auto& v : values) {
        for (char c : v) profile.string_delimiters.push_back(c);
      }
    } else {
      throw ConfigError("profile line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (profile.name.empty()) profile.name = "custom";
  profile.validate();
  return profile;
}

LanguageProfile load_profile(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read language profile " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

LexicalRegions split_regions(std::string_view text, const LanguageProfile& profile) {
  LexicalRegions out;
  out.code.assign(text);
  const std::size_t n = text.size();

  auto blank = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      if (out.code[k] != '\n') out.code[k] = ' ';
    }
  };

  std::size_t i = 0;
  while (i < n) {
    // Longest comment opener at this position wins.
    std::size_t line_len = 0;
    for (const auto& m : profile.line_comment_markers) {
      if (m.size() > line_len && starts_with(text, i, m)) line_len = m.size();
    }
    const std::pair<std::string, std::string>* block = nullptr;
    for (const auto& d : profile.block_comment_delimiters) {
      if (starts_with(text, i, d.first) && (!block || d.first.size() > block->first.size())) {
        block = &d;
      }
    }
    if (block && block->first.size() >= line_len) {
      const std::size_t body = i + block->first.size();
      const std::size_t close = text.find(block->second, body);
      const std::size_t body_end = close == std::string_view::npos ? n : close;
      const std::size_t end =
          close == std::string_view::npos ? n : close + block->second.size();
      out.comments.append(text.substr(body, body_end - body));
      out.comments += '\n';
      blank(i, end);
      i = end;
      continue;
    }
    if (line_len > 0) {
      const std::size_t body = i + line_len;
      std::size_t end = text.find('\n', body);
      if (end == std::string_view::npos) end = n;
      out.comments.append(text.substr(body, end - body));
      out.comments += '\n';
      blank(i, end);
      i = end;
      continue;
    }
    const char c = text[i];
    if (std::find(profile.string_delimiters.begin(), profile.string_delimiters.end(), c) !=
        profile.string_delimiters.end()) {
      // Literals end at the matching unescaped delimiter or, unterminated, at
      // the end of the line.
      std::size_t j = i + 1;
      while (j < n && text[j] != c && text[j] != '\n') {
        j += (text[j] == '\\' && j + 1 < n && text[j + 1] != '\n') ? 2 : 1;
      }
      const std::size_t content_end = std::min(j, n);
      out.strings.append(text.substr(i + 1, content_end - (i + 1)));
      out.strings += '\n';
      const std::size_t end = (j < n && text[j] == c) ? j + 1 : content_end;
      blank(i, end);
      i = end;
      continue;
    }
    ++i;
  }
  return out;
}

bool is_signature_segment(std::string_view segment, char terminator) {
  if (terminator != '{' && terminator != ';') return false;
  const auto s = trim(segment);
  if (s.empty()) return false;
  if (is_control_keyword(first_identifier(s))) return false;

  std::size_t search = 0;
  while (true) {
    const std::size_t open = s.find('(', search);
    if (open == std::string_view::npos || open == 0 || !is_ident_char(s[open - 1])) return false;
    std::size_t name_start = open;
    while (name_start > 0 && is_ident_char(s[name_start - 1])) --name_start;
    const std::size_t close = matching_paren(s, open);
    if (close == std::string_view::npos) return false;
    if (name_start > 0 && s[name_start - 1] == '@') {
      // Annotation with arguments; the declaration follows it.
      search = close + 1;
      continue;
    }
    const auto name = s.substr(name_start, open - name_start);
    if (!is_ident_start(name.front()) || is_control_keyword(name)) return false;
    const auto prefix = s.substr(0, name_start);
    if (!is_declaration_prefix(prefix)) return false;
    if (terminator == ';' && first_identifier(trim(prefix)).empty()) return false;
    return is_signature_trailer(s.substr(close + 1));
  }
}

CodeSegments split_code_segments(std::string_view code) {
  CodeSegments out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= code.size(); ++i) {
    const char term = i < code.size() ? code[i] : '\0';
    if (term != '{' && term != '}' && term != ';' && term != '\0') continue;
    const auto seg = code.substr(start, i - start);
    if (!trim(seg).empty()) {
      if (is_signature_segment(seg, term)) {
        out.signatures.emplace_back(seg);
      } else {
        out.bodies.emplace_back(seg);
      }
    }
    start = i + 1;
  }
  return out;
}

std::vector<std::string> declared_type_names(std::string_view code) {
  std::vector<std::string> names;
  std::size_t i = 0;
  bool want_name = false;
  char prev_sig = '\0';  // last non-space, non-identifier byte before the current word
  while (i < code.size()) {
    if (!is_ident_start(code[i])) {
      if (!is_space(code[i])) {
        prev_sig = code[i];
        want_name = false;
      }
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < code.size() && is_ident_char(code[j])) ++j;
    const auto word = code.substr(i, j - i);
    if (want_name) {
      if (word != "class" && word != "struct") {
        names.emplace_back(word);
        want_name = false;
      }
    } else if ((word == "class" || word == "interface" || word == "enum" || word == "struct") &&
               prev_sig != '.' && prev_sig != '<' && prev_sig != ',') {
      want_name = true;
    }
    prev_sig = '\0';
    i = j;
  }
  return names;
}

SourceDocument parse_source(std::string_view text, const LanguageProfile& profile, std::string path) {
  SourceDocument doc;
  doc.path = std::move(path);
  doc.whole_file = build_vector(tokenize_code(text));

  const auto regions = split_regions(text, profile);
  doc.comments = build_vector(tokenize_code(regions.comments));
  doc.string_literals = build_vector(tokenize_code(regions.strings));

  const auto segments = split_code_segments(regions.code);
  doc.method_signatures = build_vector(tokenize_code(join_lines(segments.signatures)));
  doc.method_bodies = build_vector(tokenize_code(join_lines(segments.bodies)));

  doc.declared_classes = declared_type_names(regions.code);
  const auto stem = fs::path(doc.path).stem().string();
  if (!stem.empty()) doc.declared_classes.push_back(stem);
  doc.class_names = build_vector(tokenize_code(join_lines(doc.declared_classes)));
  return doc;
}

std::string read_source_text(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestError(file.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IngestError(file.string(), "read failed");
  const std::string bytes = buf.str();
  if (bytes.find('\0') != std::string::npos) throw IngestError(file.string(), "binary content");
  return decode_utf8_lossy(bytes);
}

std::vector<SourceDocument> scan_tree(const fs::path& root,
                                      const std::vector<LanguageProfile>& profiles,
                                      const WarningSink& warn) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw ConfigError("corpus root is not a directory: " + root.string());
  }
  std::vector<std::pair<std::string, const LanguageProfile*>> files;
  for (auto it = fs::recursive_directory_iterator(
           root, fs::directory_options::skip_permission_denied, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file(ec)) continue;
    for (const auto& profile : profiles) {
      if (profile.matches(it->path())) {
        files.emplace_back(fs::relative(it->path(), root).generic_string(), &profile);
        break;
      }
    }
  }
  if (ec) throw ConfigError("cannot walk corpus root " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<SourceDocument> docs;
  docs.reserve(files.size());
  for (const auto& [rel, profile] : files) {
    try {
      docs.push_back(parse_source(read_source_text(root / rel), *profile, rel));
    } catch (const IngestError& e) {
      warn(std::string("skipping ") + e.what());
    }
  }
  return docs;
}

std::vector<std::string> source_extensions(const std::vector<LanguageProfile>& profiles) {
  std::vector<std::string> exts;
  for (const auto& p : profiles) {
    for (const auto& e : p.file_extensions) exts.push_back(to_lower_ascii(e));
  }
  std::sort(exts.begin(), exts.end());
  exts.erase(std::unique(exts.begin(), exts.end()), exts.end());
  return exts;
}

}  // namespace bugloc
