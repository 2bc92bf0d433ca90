// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/index.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include "bugloc/error.hpp"

namespace bugloc {

namespace {

constexpr std::string_view kMagic = "bugloc-index";

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::vector<std::string_view> split_tabs(std::string_view line, std::size_t max_fields) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (fields.size() + 1 < max_fields) {
    const auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) break;
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  fields.push_back(line.substr(pos));
  return fields;
}

// Sequential reader that turns every format deviation into a LoadError
// carrying the line number.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(std::string_view expecting) {
    std::string line;
    if (!std::getline(in_, line)) fail("truncated file, expected " + std::string(expecting));
    ++line_no_;
    return line;
  }

  std::vector<std::string_view> fields(const std::string& line, std::string_view tag,
                                       std::size_t count) {
    auto f = split_tabs(line, count);
    if (f.size() != count || f[0] != tag) {
      fail("expected '" + std::string(tag) + "' record with " + std::to_string(count) + " fields");
    }
    return f;
  }

  std::size_t to_size(std::string_view text) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) fail("bad integer '" + std::string(text) + "'");
    return v;
  }

  double to_double(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) fail("bad number '" + std::string(text) + "'");
    return v;
  }

  Date to_date(std::string_view text) {
    auto d = Date::parse(text);
    if (!d) fail("bad date '" + std::string(text) + "'");
    return *d;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw LoadError("index line " + std::to_string(line_no_) + ": " + why);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

struct NamedVector {
  std::string_view name;
  TermVector SourceDocument::*member;
};

constexpr std::array<NamedVector, 7> kDocumentVectors = {{
    {"class_names", &SourceDocument::class_names},
    {"method_signatures", &SourceDocument::method_signatures},
    {"method_bodies", &SourceDocument::method_bodies},
    {"comments", &SourceDocument::comments},
    {"string_literals", &SourceDocument::string_literals},
    {"whole_file", &SourceDocument::whole_file},
    {"log_messages", &SourceDocument::log_messages},
}};

}  // namespace

struct IndexCodec {
  static void set_frequency(CorpusIndex& index, std::string term, std::size_t df) {
    index.doc_frequency_[std::move(term)] = df;
  }
  static void add_registry(CorpusIndex& index, RegistryEntry entry) {
    index.registry_.push_back(std::move(entry));
  }
};

void CorpusIndex::add_document(RegistryEntry entry, const std::vector<std::string_view>& distinct_terms) {
  registry_.push_back(std::move(entry));
  for (auto term : distinct_terms) {
    auto it = doc_frequency_.find(term);
    if (it == doc_frequency_.end()) {
      doc_frequency_.emplace(Term{term}, 1);
    } else {
      ++it->second;
    }
  }
}

std::size_t CorpusIndex::doc_frequency(std::string_view term) const {
  auto it = doc_frequency_.find(term);
  return it == doc_frequency_.end() ? 0 : it->second;
}

double CorpusIndex::idf(std::string_view term) const {
  if (registry_.empty()) throw UsageError("idf requested on an empty corpus index");
  const auto df = doc_frequency(term);
  return static_cast<double>(registry_.size()) / static_cast<double>(df == 0 ? 1 : df);
}

CorpusIndex build_index(const std::vector<SourceDocument>& sources,
                        const std::vector<DefectReport>& reports, const std::optional<Date>& cutoff) {
  CorpusIndex index;
  std::vector<std::string_view> terms;
  std::unordered_set<std::string_view> seen;
  auto collect = [&](const TermVector& a, const TermVector& b) {
    terms.clear();
    seen.clear();
    for (const auto& [t, w] : a) {
      if (seen.insert(t).second) terms.push_back(t);
    }
    for (const auto& [t, w] : b) {
      if (seen.insert(t).second) terms.push_back(t);
    }
  };
  for (const auto& doc : sources) {
    collect(doc.whole_file, doc.log_messages);
    index.add_document({doc.path, DocumentKind::source_file, std::nullopt}, terms);
  }
  for (const auto& report : reports) {
    if (cutoff && !(report.submitted && *report.submitted < *cutoff)) continue;
    collect(report.title, report.body);
    index.add_document({report.id, DocumentKind::defect_report, report.submitted}, terms);
  }
  return index;
}

void write_index(std::ostream& out, const IndexedCorpus& corpus) {
  const auto& index = corpus.index;
  out << kMagic << '\t' << kIndexFormatVersion << '\n';
  out << "documents\t" << index.document_count() << '\n';
  for (const auto& e : index.registry()) {
    out << "doc\t" << (e.kind == DocumentKind::source_file ? "source" : "report") << '\t'
        << (e.date ? e.date->to_string() : "-") << '\t' << e.id << '\n';
  }
  std::vector<std::pair<std::string_view, std::size_t>> terms(index.frequencies().begin(),
                                                              index.frequencies().end());
  std::sort(terms.begin(), terms.end());
  out << "terms\t" << terms.size() << '\n';
  for (const auto& [t, df] : terms) out << "t\t" << t << '\t' << df << '\n';

  out << "sources\t" << corpus.documents.size() << '\n';
  for (const auto& doc : corpus.documents) {
    out << "source\t" << doc.path << '\n';
    out << "dates";
    for (const auto& d : doc.change_dates) out << '\t' << d.to_string();
    out << '\n';
    out << "classes\t" << doc.declared_classes.size() << '\n';
    for (const auto& c : doc.declared_classes) out << "c\t" << c << '\n';
    for (const auto& nv : kDocumentVectors) {
      const auto entries = (doc.*(nv.member)).sorted_entries();
      out << "vec\t" << nv.name << '\t' << entries.size() << '\n';
      for (const auto& [t, w] : entries) out << "e\t" << t << '\t' << format_double(w) << '\n';
    }
  }
  out << "end\n";
}

IndexedCorpus read_index(std::istream& in) {
  LineReader r(in);
  IndexedCorpus corpus;

  {
    const auto header = r.next("header");
    const auto f = split_tabs(header, 2);
    if (f.size() != 2 || f[0] != kMagic) r.fail("not a bugloc index file");
    if (f[1] != std::to_string(kIndexFormatVersion)) {
      r.fail("unsupported index format version '" + std::string(f[1]) + "' (expected " +
             std::to_string(kIndexFormatVersion) + ")");
    }
  }

  std::string line = r.next("documents");
  const auto doc_count = r.to_size(r.fields(line, "documents", 2)[1]);
  for (std::size_t i = 0; i < doc_count; ++i) {
    line = r.next("doc record");
    const auto f = r.fields(line, "doc", 4);
    RegistryEntry e;
    if (f[1] == "source") {
      e.kind = DocumentKind::source_file;
    } else if (f[1] == "report") {
      e.kind = DocumentKind::defect_report;
    } else {
      r.fail("unknown document kind '" + std::string(f[1]) + "'");
    }
    if (f[2] != "-") e.date = r.to_date(f[2]);
    e.id = std::string(f[3]);
    IndexCodec::add_registry(corpus.index, std::move(e));
  }

  line = r.next("terms");
  const auto term_count = r.to_size(r.fields(line, "terms", 2)[1]);
  for (std::size_t i = 0; i < term_count; ++i) {
    line = r.next("term record");
    const auto f = r.fields(line, "t", 3);
    const auto df = r.to_size(f[2]);
    if (f[1].empty() || df == 0 || df > doc_count) r.fail("document frequency out of range");
    IndexCodec::set_frequency(corpus.index, std::string(f[1]), df);
  }

  line = r.next("sources");
  const auto source_count = r.to_size(r.fields(line, "sources", 2)[1]);
  corpus.documents.reserve(source_count);
  for (std::size_t i = 0; i < source_count; ++i) {
    SourceDocument doc;
    line = r.next("source record");
    doc.path = std::string(r.fields(line, "source", 2)[1]);

    line = r.next("dates");
    {
      const auto f = split_tabs(line, std::string::npos);
      if (f[0] != "dates") r.fail("expected 'dates' record");
      for (std::size_t k = 1; k < f.size(); ++k) doc.change_dates.push_back(r.to_date(f[k]));
      if (!std::is_sorted(doc.change_dates.begin(), doc.change_dates.end())) r.fail("unsorted dates");
    }

    line = r.next("classes");
    const auto class_count = r.to_size(r.fields(line, "classes", 2)[1]);
    for (std::size_t k = 0; k < class_count; ++k) {
      line = r.next("class record");
      doc.declared_classes.emplace_back(r.fields(line, "c", 2)[1]);
    }

    for (const auto& nv : kDocumentVectors) {
      line = r.next("vector header");
      const auto f = r.fields(line, "vec", 3);
      if (f[1] != nv.name) r.fail("expected vector '" + std::string(nv.name) + "'");
      const auto n = r.to_size(f[2]);
      auto& vec = doc.*(nv.member);
      for (std::size_t k = 0; k < n; ++k) {
        line = r.next("vector entry");
        const auto e = r.fields(line, "e", 3);
        const double w = r.to_double(e[2]);
        if (!(w > 0.0) || e[1].empty() || vec.contains(e[1])) r.fail("invalid vector entry");
        vec.add(e[1], w);
      }
    }
    corpus.documents.push_back(std::move(doc));
  }

  line = r.next("end marker");
  if (line != "end") r.fail("expected end marker");
  std::string extra;
  if (std::getline(in, extra)) r.fail("trailing data after end marker");
  return corpus;
}

void save_index(const std::filesystem::path& file, const IndexedCorpus& corpus) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write index file " + file.string());
  write_index(out, corpus);
  out.flush();
  if (!out) throw ConfigError("failed writing index file " + file.string());
}

IndexedCorpus load_index(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read index file " + file.string());
  return read_index(in);
}

IdfSource::IdfSource(const CorpusIndex& shared) : shared_(&shared) {}

IdfSource::IdfSource(const std::vector<SourceDocument>& sources, const std::vector<DefectReport>& reports)
    : sources_(&sources), reports_(&reports) {}

const CorpusIndex& IdfSource::for_report(const DefectReport& report) const {
  if (shared_) return *shared_;
  std::lock_guard lock(mutex_);
  auto& slot = cache_[report.submitted];
  if (!slot) {
    // Undated reports see every other report.
    slot = std::make_unique<CorpusIndex>(
        report.submitted ? build_index(*sources_, *reports_, report.submitted)
                         : build_index(*sources_, *reports_));
  }
  return *slot;
}

}  // namespace bugloc
