// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include "bugloc/error.hpp"
#include "bugloc/random.hpp"

namespace bugloc {

namespace {

constexpr std::string_view kConsonants = "bcdfghjklmnprstvwz";
constexpr std::string_view kVowels = "aeiou";

// Words the Java template itself contributes; pseudo-words must not collide.
const std::unordered_set<std::string_view>& reserved_words() {
  static const std::unordered_set<std::string_view> words = {
      "package", "synth", "public", "class", "private", "static", "final", "string", "label", "void",
      "int", "value", "log", "return", "native", "fix", "for", "bug", "cleanup", "of", "when", "in",
      "the", "after", "fails", "with", "and", "problem", "seen", "module", "import", "double", "switch",
  };
  return words;
}

class WordSource {
 public:
  explicit WordSource(std::uint64_t seed) : rng_(seed) {}

  std::string next() {
    for (;;) {
      const std::size_t syllables = 3 + rng_.below(2);
      std::string w;
      for (std::size_t i = 0; i < syllables; ++i) {
        w += kConsonants[rng_.below(kConsonants.size())];
        w += kVowels[rng_.below(kVowels.size())];
      }
      if (reserved_words().contains(w) || !seen_.insert(w).second) continue;
      return w;
    }
  }

 private:
  Rng rng_;
  std::unordered_set<std::string> seen_;
};

std::string capitalized(std::string w) {
  if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to && i < words.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += words[i];
  }
  return out;
}

std::string render_file(const std::string& package, const std::string& class_name,
                        const std::vector<std::string>& filler, const std::vector<std::string>& planted) {
  std::string s;
  s += "// " + join(filler, 0, 4) + "\n";
  s += "package synth." + package + ";\n\n";
  s += "/* " + join(filler, 4, 8) + " */\n";
  s += "public class " + class_name + " {\n";
  s += "  private static final String LABEL = \"" + join(filler, 8, 10) + "\";\n";

  // Remaining filler in chunks of eight: comment, method name, locals, log.
  for (std::size_t at = 10; at < filler.size(); at += 8) {
    const auto word = [&](std::size_t k) -> const std::string& { return filler[std::min(at + k, filler.size() - 1)]; };
    s += "\n  // " + word(0) + " " + word(1) + "\n";
    s += "  public void " + word(2) + capitalized(word(3)) + "(int value) {\n";
    s += "    int " + word(4) + " = value + 1;\n";
    s += "    int " + word(5) + " = value * 2;\n";
    s += "    log(\"" + word(6) + " " + word(7) + "\");\n";
    s += "  }\n";
  }
  for (const auto& r : planted) {
    s += "\n  // " + r + "\n";
    s += "  public void " + r + "(int value) {\n";
    s += "    int " + r + " = value * 2;\n";
    s += "    log(\"" + r + "\");\n";
    s += "  }\n";
  }
  s += "}\n";
  return s;
}

}  // namespace

SyntheticCorpus make_synthetic(const SyntheticOptions& options) {
  if (options.files == 0) throw UsageError("synthetic corpus needs at least one file");
  if (options.defects > options.files) throw UsageError("more synthetic defects than files");
  if (options.filler_vocabulary == 0) throw UsageError("filler vocabulary must not be empty");

  WordSource words(mix_seed(options.seed, 1));
  Rng rng(mix_seed(options.seed, 2));

  std::vector<std::string> vocabulary(options.filler_vocabulary);
  for (auto& w : vocabulary) w = words.next();
  auto draw_filler = [&](std::size_t n) {
    std::vector<std::string> out(n);
    for (auto& w : out) w = vocabulary[rng.below(vocabulary.size())];
    return out;
  };

  struct Draft {
    std::string path;
    std::string package;
    std::string class_name;
    std::vector<std::string> filler;
    std::vector<std::string> planted;
  };
  std::vector<Draft> drafts(options.files);
  for (std::size_t i = 0; i < options.files; ++i) {
    auto& d = drafts[i];
    d.class_name = capitalized(words.next());
    d.package = "p" + std::to_string(i % 10);
    d.path = "src/" + d.package + "/" + d.class_name + ".java";
    d.filler = draw_filler(options.filler_per_file);
  }
  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) { return a.path < b.path; });

  SyntheticCorpus corpus;
  const auto fixed = rng.sample_indices(options.files, options.defects);
  const Date first_report(2005, 1, 3);
  const Date first_change(2006, 1, 2);
  for (std::size_t d = 0; d < options.defects; ++d) {
    std::vector<std::string> rare(options.rare_terms);
    for (auto& w : rare) w = words.next();
    drafts[fixed[d]].planted.insert(drafts[fixed[d]].planted.end(), rare.begin(), rare.end());

    const auto filler = draw_filler(options.filler_per_report);
    const std::size_t title_rare = std::min<std::size_t>(2, rare.size());
    std::string title = "Problem with " + join(rare, 0, title_rare);
    if (!filler.empty()) title += " after " + join(filler, 0, 2);
    std::string body = "When " + join(filler, 2, 6) + " the " + join(rare, title_rare, rare.size()) + " fails.\n";
    body += join(filler, 6, filler.size()) + "\n";

    const std::string id = std::to_string(10000 + d);
    corpus.reports.push_back(make_report(id, title, body, first_report.plus_days(3 * static_cast<int>(d))));
    corpus.links.push_back({id, {drafts[fixed[d]].path}});
    corpus.changelog.push_back(
        {{drafts[fixed[d]].path}, first_change.plus_days(static_cast<int>(d)), "Fix for bug " + id});
  }
  const Date first_noise = first_change.plus_days(static_cast<int>(options.defects) + 1);
  for (std::size_t i = 0; i < options.noise_changes; ++i) {
    const auto& target = drafts[rng.below(drafts.size())];
    corpus.changelog.push_back({{target.path}, first_noise.plus_days(static_cast<int>(i)),
                                "Cleanup of " + join(draw_filler(2), 0, 2)});
  }

  const auto profile = java_profile();
  for (const auto& d : drafts) {
    corpus.files.push_back({d.path, render_file(d.package, d.class_name, d.filler, d.planted)});
    corpus.documents.push_back(parse_source(corpus.files.back().text, profile, d.path));
  }
  ingest_changelog(corpus.changelog, corpus.documents, ignore_warnings());
  return corpus;
}

void write_synthetic_tree(const SyntheticCorpus& corpus, const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  auto write = [](const fs::path& file, const std::string& text) {
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    out << text;
    if (!out) throw ConfigError("cannot write " + file.string());
  };
  for (const auto& f : corpus.files) write(root / f.path, f.text);
  for (const auto& r : corpus.reports) write(root / "reports" / (r.id + ".txt"), format_report(r));
  write(root / "changelog.txt", format_changelog(corpus.changelog));
}

}  // namespace bugloc
