// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/report_ingest.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace bugloc {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

const std::regex& frame_pattern() {
  static const std::regex re(
      R"(^\s*(at\s+)?([A-Za-z_$][\w$]*(?:\.(?:[A-Za-z_$][\w$]*|<init>|<clinit>))+)\s*(\([^()]*\))?\s*(.*)$)");
  return re;
}

}  // namespace

TermVector categorical_vector(std::string_view value) {
  TermVector v;
  for (const auto& term : tokenize_plain(value)) {
    if (!v.contains(term)) v.add(term, 1.0);
  }
  return v;
}

std::vector<std::string> extract_stack_frames(std::string_view body_text) {
  std::vector<std::string> frames;
  std::size_t pos = 0;
  while (pos <= body_text.size()) {
    std::size_t end = body_text.find('\n', pos);
    if (end == std::string_view::npos) end = body_text.size();
    std::string line(body_text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (line.find('.') != std::string::npos && std::regex_match(line, m, frame_pattern())) {
      const bool has_at = m[1].matched;
      const bool has_location = m[3].matched;
      const bool clean_tail = m[4].length() == 0;
      if ((has_at && (has_location || clean_tail)) || (!has_at && has_location)) {
        frames.push_back(m[2].str());
      }
    }
    pos = end + 1;
  }
  return frames;
}

TermVector trace_vector(const std::vector<std::string>& frames) {
  TermVector v;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const double w = 1.0 / static_cast<double>(i + 1);
    for (const auto& term : tokenize_code(frames[i])) v.add(term, w);
  }
  return v;
}

DefectReport make_report(std::string id, std::string raw_title, std::string raw_body,
                         std::optional<Date> submitted, std::string_view component,
                         std::string_view operating_system, std::string_view version) {
  DefectReport r;
  r.id = std::move(id);
  r.raw_title = std::move(raw_title);
  r.raw_body = std::move(raw_body);
  r.title = build_vector(tokenize_plain(r.raw_title));
  r.body = build_vector(tokenize_plain(r.raw_body));
  r.stack_frames = extract_stack_frames(r.raw_body);
  r.component = to_lower_ascii(trim(component));
  r.operating_system = to_lower_ascii(trim(operating_system));
  r.version = to_lower_ascii(trim(version));
  r.submitted = submitted;
  return r;
}

DefectReport parse_report(std::string_view record, std::string_view record_name) {
  const std::string name(record_name);
  std::optional<std::string> id;
  std::optional<std::string> title;
  std::optional<Date> date;
  std::string component;
  std::string os;
  std::string version;

  std::size_t pos = 0;
  std::string_view body;
  while (pos < record.size()) {
    std::size_t end = record.find('\n', pos);
    const bool last = end == std::string_view::npos;
    if (last) end = record.size();
    const auto line = record.substr(pos, end - pos);
    const std::size_t next = last ? record.size() : end + 1;
    if (trim(line).empty()) {
      body = record.substr(next);
      break;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw MalformedReportError(name, "header line without ':'");
    }
    const auto key = to_lower_ascii(trim(line.substr(0, colon)));
    const auto value = trim(line.substr(colon + 1));
    if (key == "id") {
      id = std::string(value);
    } else if (key == "title") {
      title = std::string(value);
    } else if (key == "date") {
      date = Date::parse(value);
      if (!date) throw MalformedReportError(name, "Date is not YYYY-MM-DD: '" + std::string(value) + "'");
    } else if (key == "component") {
      component = std::string(value);
    } else if (key == "os") {
      os = std::string(value);
    } else if (key == "version") {
      version = std::string(value);
    }
    pos = next;
  }
  if (!id || id->empty()) throw MalformedReportError(name, "missing Id");
  if (!title) throw MalformedReportError(name, "missing Title");
  return make_report(std::move(*id), std::move(*title), std::string(body), date, component, os,
                     version);
}

DefectReport load_report(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot read report " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(decode_utf8_lossy(buf.str()), file.string());
}

std::vector<DefectReport> load_reports(const fs::path& dir, const WarningSink& warn) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("reports path is not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto fname = entry.path().filename().string();
    if (fname.empty() || fname.front() == '.') continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<DefectReport> reports;
  for (const auto& f : files) {
    try {
      reports.push_back(load_report(f));
    } catch (const DataError& e) {
      warn(std::string("skipping report: ") + e.what());
    }
  }
  return reports;
}

std::string format_report(const DefectReport& report) {
  std::string out;
  out += "Id: " + report.id + "\n";
  out += "Title: " + report.raw_title + "\n";
  if (report.submitted) out += "Date: " + report.submitted->to_string() + "\n";
  if (!report.component.empty()) out += "Component: " + report.component + "\n";
  if (!report.operating_system.empty()) out += "OS: " + report.operating_system + "\n";
  if (!report.version.empty()) out += "Version: " + report.version + "\n";
  out += "\n";
  out += report.raw_body;
  return out;
}

}  // namespace bugloc
