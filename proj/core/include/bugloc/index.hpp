// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

// Document-frequency statistics over the corpus of source files and defect
// reports, and the on-disk form of an indexed corpus.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bugloc/code_ingest.hpp"
#include "bugloc/date.hpp"
#include "bugloc/report_ingest.hpp"
#include "bugloc/textkit.hpp"

namespace bugloc {

enum class DocumentKind { source_file, defect_report };

struct RegistryEntry {
  std::string id;
  DocumentKind kind = DocumentKind::source_file;
  std::optional<Date> date;

  friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

class CorpusIndex {
 public:
  using FrequencyMap = std::unordered_map<Term, std::size_t, TermHash, std::equal_to<>>;

  /// Registers one corpus document with the distinct terms it contains.
  void add_document(RegistryEntry entry, const std::vector<std::string_view>& distinct_terms);

  std::size_t document_count() const noexcept { return registry_.size(); }
  std::size_t doc_frequency(std::string_view term) const;

  /// document_count / doc_frequency. Terms absent from the index get
  /// document_count. Throws UsageError on an empty index.
  double idf(std::string_view term) const;

  const std::vector<RegistryEntry>& registry() const noexcept { return registry_; }
  const FrequencyMap& frequencies() const noexcept { return doc_frequency_; }

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;

 private:
  friend struct IndexCodec;
  std::vector<RegistryEntry> registry_;
  FrequencyMap doc_frequency_;
};

/// One document per source file (whole_file plus log_messages terms) and one
/// per report (title plus body terms) dated strictly before `cutoff`. Without
/// a cutoff every report is included; with one, undated reports are not.
CorpusIndex build_index(const std::vector<SourceDocument>& sources,
                        const std::vector<DefectReport>& reports,
                        const std::optional<Date>& cutoff = std::nullopt);

/// What the index file stores: the statistics plus the source documents they
/// were computed from.
struct IndexedCorpus {
  CorpusIndex index;
  std::vector<SourceDocument> documents;

  friend bool operator==(const IndexedCorpus&, const IndexedCorpus&) = default;
};

inline constexpr int kIndexFormatVersion = 1;

/// Line-delimited text, byte-identical for identical input.
void write_index(std::ostream& out, const IndexedCorpus& corpus);
/// Throws LoadError on version mismatch, truncation or corruption.
IndexedCorpus read_index(std::istream& in);

void save_index(const std::filesystem::path& file, const IndexedCorpus& corpus);
IndexedCorpus load_index(const std::filesystem::path& file);

/// Chooses the index used for a given report: either one shared snapshot, or
/// an index restricted to reports filed before that report (built lazily and
/// cached per date). The referenced documents must outlive this object.
class IdfSource {
 public:
  explicit IdfSource(const CorpusIndex& shared);
  IdfSource(const std::vector<SourceDocument>& sources, const std::vector<DefectReport>& reports);

  const CorpusIndex& for_report(const DefectReport& report) const;
  bool uses_cutoff() const noexcept { return shared_ == nullptr; }

 private:
  const CorpusIndex* shared_ = nullptr;
  const std::vector<SourceDocument>* sources_ = nullptr;
  const std::vector<DefectReport>* reports_ = nullptr;
  mutable std::mutex mutex_;
  mutable std::map<std::optional<Date>, std::unique_ptr<CorpusIndex>> cache_;
};

}  // namespace bugloc
