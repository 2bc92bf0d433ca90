// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/history_ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace bugloc {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

bool is_alnum(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

std::string normalize_path(std::string_view p) {
  p = trim(p);
  while (p.substr(0, 2) == "./") p.remove_prefix(2);
  return fs::path(std::string(p)).lexically_normal().generic_string();
}

// Splits "key: value"; returns false when the line has no colon.
bool split_key(std::string_view line, std::string& key, std::string_view& value) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return false;
  key = to_lower_ascii(trim(line.substr(0, colon)));
  value = line.substr(colon + 1);
  return true;
}

ChangeRecord parse_record(const std::vector<std::string_view>& lines, std::size_t record_no) {
  const auto fail = [&](const std::string& why) {
    return ChangelogError("changelog record " + std::to_string(record_no) + ": " + why);
  };
  std::size_t i = 0;
  std::string key;
  std::string_view value;
  if (!split_key(lines[i], key, value) || key != "date") throw fail("expected 'date:' line");
  const auto date = Date::parse(trim(value));
  if (!date) throw fail("date is not YYYY-MM-DD");
  ChangeRecord record{{}, *date, {}};
  ++i;
  for (; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    if (!split_key(lines[i], key, value)) throw fail("expected 'file:' or 'message:' line");
    if (key == "file") {
      const auto path = normalize_path(value);
      if (path.empty() || path == ".") throw fail("empty file path");
      if (std::find(record.paths.begin(), record.paths.end(), path) == record.paths.end()) {
        record.paths.push_back(path);
      }
    } else if (key == "message") {
      std::string message(trim(value));
      for (++i; i < lines.size(); ++i) {
        if (!message.empty()) message += '\n';
        message.append(lines[i]);
      }
      record.message = std::string(trim(message));
      break;
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  if (record.paths.empty()) throw fail("no 'file:' lines");
  return record;
}

bool has_source_extension(const std::string& path, const std::vector<std::string>& exts) {
  if (exts.empty()) return true;
  const auto ext = to_lower_ascii(fs::path(path).extension().string());
  return std::binary_search(exts.begin(), exts.end(), ext);
}

}  // namespace

std::vector<ChangeRecord> parse_changelog(std::string_view text) {
  std::vector<ChangeRecord> records;
  std::vector<std::string_view> block;
  std::size_t record_no = 0;
  auto flush = [&] {
    while (!block.empty() && trim(block.front()).empty()) block.erase(block.begin());
    while (!block.empty() && trim(block.back()).empty()) block.pop_back();
    if (!block.empty()) {
      ++record_no;
      records.push_back(parse_record(block, record_no));
    }
    block.clear();
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line == "---") {
      flush();
    } else {
      block.push_back(line);
    }
    pos = end + 1;
  }
  flush();
  return records;
}

std::vector<ChangeRecord> load_changelog(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read changelog " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_changelog(decode_utf8_lossy(buf.str()));
}

std::string format_changelog(const std::vector<ChangeRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += "date: " + r.date.to_string() + "\n";
    for (const auto& p : r.paths) out += "file: " + p + "\n";
    out += "message:\n";
    if (!r.message.empty()) out += r.message + "\n";
    out += "---\n";
  }
  return out;
}

void ingest_changelog(const std::vector<ChangeRecord>& records, std::vector<SourceDocument>& corpus,
                      const WarningSink& warn) {
  std::unordered_map<std::string, std::size_t> by_path;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    corpus[i].log_messages = TermVector{};
    corpus[i].change_dates.clear();
    by_path.emplace(corpus[i].path, i);
  }
  std::set<std::string> unknown;
  for (const auto& record : records) {
    const auto message_vector = build_vector(tokenize_plain(record.message));
    for (const auto& path : record.paths) {
      auto it = by_path.find(path);
      if (it == by_path.end()) {
        unknown.insert(path);
        continue;
      }
      auto& doc = corpus[it->second];
      doc.log_messages += message_vector;
      doc.change_dates.push_back(record.date);
    }
  }
  for (auto& doc : corpus) std::sort(doc.change_dates.begin(), doc.change_dates.end());
  for (const auto& path : unknown) warn("changelog path not in corpus: " + path);
}

std::size_t churn_before(const SourceDocument& doc, const std::optional<Date>& cutoff) {
  if (!cutoff) return doc.change_dates.size();
  const auto it = std::lower_bound(doc.change_dates.begin(), doc.change_dates.end(), *cutoff);
  return static_cast<std::size_t>(it - doc.change_dates.begin());
}

bool mentions_report(std::string_view message, std::string_view report_id) {
  if (report_id.empty()) return false;
  const auto id = to_lower_ascii(report_id);
  const auto text = to_lower_ascii(message);
  const bool long_number =
      id.size() >= 5 && std::all_of(id.begin(), id.end(), [](char c) { return c >= '0' && c <= '9'; });

  for (std::size_t pos = text.find(id); pos != std::string::npos; pos = text.find(id, pos + 1)) {
    const std::size_t end = pos + id.size();
    if (pos > 0 && is_alnum(text[pos - 1])) continue;
    if (end < text.size() && is_alnum(text[end])) continue;
    if (pos > 0 && text[pos - 1] == '#') return true;
    if (long_number) return true;

    // Look back at most two words for a defect keyword.
    std::size_t k = pos;
    for (int words = 0; words < 2; ++words) {
      while (k > 0 && !is_alnum(text[k - 1])) --k;
      if (k == 0) break;
      const std::size_t word_end = k;
      while (k > 0 && is_alnum(text[k - 1])) --k;
      const auto word = std::string_view(text).substr(k, word_end - k);
      if (word == "bug" || word == "defect" || word == "issue") return true;
    }
  }
  return false;
}

std::vector<GroundTruthLink> mine_links(const std::vector<ChangeRecord>& records,
                                        const std::vector<std::string>& report_ids,
                                        const LinkOptions& options) {
  auto exts = options.source_extensions;
  std::sort(exts.begin(), exts.end());
  auto known = options.known_paths;
  std::sort(known.begin(), known.end());

  std::vector<GroundTruthLink> links;
  std::set<std::string> seen;
  for (const auto& id : report_ids) {
    if (!seen.insert(id).second) continue;
    std::set<std::string> paths;
    bool touched_non_source = false;
    bool mentioned = false;
    for (const auto& record : records) {
      if (!mentions_report(record.message, id)) continue;
      mentioned = true;
      for (const auto& p : record.paths) {
        if (!has_source_extension(p, exts)) {
          touched_non_source = true;
          continue;
        }
        if (!known.empty() && !std::binary_search(known.begin(), known.end(), p)) continue;
        paths.insert(p);
      }
    }
    if (!mentioned || paths.empty()) continue;
    if (options.strict_whole_fix && touched_non_source) continue;
    links.push_back({id, {paths.begin(), paths.end()}});
  }
  return links;
}

}  // namespace bugloc
