// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/evalbench.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "bugloc/synthetic.hpp"

namespace bugloc {
namespace {

SourceDocument file(std::string path, std::string_view body = {}) {
  SourceDocument d;
  d.path = std::move(path);
  d.method_bodies = build_vector(tokenize_code(body));
  d.whole_file = d.method_bodies;
  const auto stem = d.path.substr(0, d.path.find('.'));
  d.declared_classes = {stem};
  return d;
}

std::vector<std::string> paths_of(const RankedList& list) {
  std::vector<std::string> out;
  for (const auto& e : list.entries()) out.push_back(e.path);
  return out;
}

// Average 1-based position of the first fixed file over every ordering of a
// group of g files, m of them fixed.
double brute_force_first_position(std::size_t g, std::size_t m) {
  std::vector<int> order(g);
  std::iota(order.begin(), order.end(), 0);
  double total = 0.0;
  std::size_t count = 0;
  do {
    for (std::size_t i = 0; i < g; ++i) {
      if (order[i] < static_cast<int>(m)) {
        total += static_cast<double>(i + 1);
        break;
      }
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  return total / static_cast<double>(count);
}

TEST(Score, WorkedExample) {
  // 7992 of 9992 files need not be inspected; this prints as 80% when
  // rounded to whole percent.
  const double s = score_from_position(2000.0, 9992);
  EXPECT_NEAR(s, 100.0 * 7992.0 / 9992.0, 1e-12);
  EXPECT_NEAR(s, 79.98398718975180, 1e-9);
  EXPECT_EQ(std::lround(s), 80);
}

TEST(Score, FixedFileRankedFirst) {
  for (std::size_t n : {1u, 2u, 10u, 9992u}) {
    std::vector<std::string> paths;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
      paths.push_back("f" + std::to_string(i));
      values.push_back(i == 0 ? 10.0 : 1.0);
    }
    const auto list = RankedList::from_values(paths, values);
    EXPECT_DOUBLE_EQ(score(list, {"f0"}, n), 100.0 * static_cast<double>(n - 1) / static_cast<double>(n));
  }
}

TEST(Score, WholeCorpusTie) {
  std::vector<std::string> paths;
  for (int i = 0; i < 10; ++i) paths.push_back("f" + std::to_string(i));
  const auto list = RankedList::from_values(paths, std::vector<double>(10, 0.0));
  EXPECT_DOUBLE_EQ(expected_first_position(0, 10, 1), 5.5);
  EXPECT_DOUBLE_EQ(score(list, {"f7"}, 10), 45.0);
  EXPECT_NEAR(brute_force_first_position(10, 1), 5.5, 1e-9);
}

TEST(Score, TieExpectationMatchesPermutations) {
  for (std::size_t g = 1; g <= 6; ++g) {
    for (std::size_t m = 1; m <= g; ++m) {
      EXPECT_NEAR(expected_first_position(0, g, m), brute_force_first_position(g, m), 1e-9) << g << "," << m;
      EXPECT_NEAR(expected_first_position(4, g, m), 4.0 + brute_force_first_position(g, m), 1e-9);
    }
  }
}

TEST(Score, Errors) {
  const auto list = RankedList::from_values({"a", "b"}, {1.0, 0.0});
  EXPECT_THROW(score(list, {}, 2), UsageError);
  EXPECT_THROW(score(list, {"zz"}, 2), UsageError);
  EXPECT_THROW(expected_first_position(0, 2, 0), UsageError);
}

TEST(Score, FirstFixedFileDecides) {
  const auto list = RankedList::from_values({"a", "b", "c", "d"}, {4.0, 3.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(score(list, {"c", "b"}, 4), 50.0);
}

// score_values on unsorted values agrees with score on the ranked list.
TEST(Score, LinearScoreAgreesWithRankedList) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = 1 + rng() % 30;
    std::vector<std::string> paths;
    std::vector<double> values;
    std::vector<std::uint8_t> mask(n, 0);
    std::vector<std::string> fixed;
    for (std::size_t i = 0; i < n; ++i) {
      paths.push_back("p" + std::to_string(i));
      values.push_back(static_cast<double>(rng() % 5) * 0.1);
    }
    const std::size_t k = 1 + rng() % n;
    for (std::size_t i = 0; i < k; ++i) mask[rng() % n] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) fixed.push_back(paths[i]);
    }
    const auto list = RankedList::from_values(paths, values);
    const double s = score(list, fixed, n);
    EXPECT_NEAR(score_values(values, mask), s, 1e-12);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 100.0);
  }
}

class TenFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    for (int i = 0; i < 10; ++i) {
      std::string body = "common";
      for (int k = 0; k < i; ++k) body += " ladder";
      corpus.push_back(file("F" + std::to_string(i) + ".java", body));
    }
    index = build_index(corpus, {});
    model.set({ReportField::body, CodeField::method_bodies}, 1.0);
  }
  std::vector<SourceDocument> corpus;
  CorpusIndex index;
  WeightModel model;
};

TEST_F(TenFiles, SingleDefectRankedFirst) {
  const std::vector<LinkedDefect> defects = {{make_report("1", "", "ladder"), {"F9.java"}}};
  const auto result = evaluate(model, defects, corpus, IdfSource(index));
  ASSERT_EQ(result.count(), 1u);
  EXPECT_DOUBLE_EQ(result.mean, 90.0);
}

TEST_F(TenFiles, MeanOfTwoDefects) {
  const std::vector<LinkedDefect> defects = {{make_report("1", "", "ladder"), {"F8.java"}},
                                             {make_report("2", "", "ladder"), {"F9.java"}}};
  const auto result = evaluate(model, defects, corpus, IdfSource(index));
  EXPECT_DOUBLE_EQ(result.per_defect[0].second, 80.0);
  EXPECT_DOUBLE_EQ(result.per_defect[1].second, 90.0);
  EXPECT_DOUBLE_EQ(result.mean, 85.0);
}

TEST_F(TenFiles, ZeroModelIsRandomOrder) {
  const std::vector<LinkedDefect> defects = {{make_report("1", "", "ladder"), {"F3.java"}}};
  WeightModel zero;
  const auto result = evaluate(zero, defects, corpus, IdfSource(index));
  EXPECT_DOUBLE_EQ(result.mean, 100.0 * (10.0 - 5.5) / 10.0);
}

TEST_F(TenFiles, Errors) {
  EXPECT_THROW(evaluate(model, {}, corpus, IdfSource(index)), UsageError);
  const std::vector<LinkedDefect> bad = {{make_report("1", "", "x"), {"missing.java"}}};
  EXPECT_THROW(evaluate(model, bad, corpus, IdfSource(index)), UsageError);
}

TEST(FeatureTable, AgreesWithEvaluate) {
  SyntheticOptions options;
  options.files = 40;
  options.defects = 8;
  const auto synth = make_synthetic(options);
  const auto index = build_index(synth.documents, synth.reports);
  const IdfSource idf(index);
  const auto defects = join_links(synth.reports, synth.links);
  std::mt19937_64 rng(2);
  std::vector<std::size_t> slots(kFeatureCount);
  std::iota(slots.begin(), slots.end(), 0);
  const FeatureTable table(defects, synth.documents, idf, slots);
  for (int round = 0; round < 10; ++round) {
    WeightModel m;
    for (std::size_t s = 0; s < kFeatureCount; ++s) {
      if (rng() % 3 == 0) m.set_slot(s, static_cast<double>(rng() % 100) / 37.0);
    }
    const auto direct = evaluate(m, defects, synth.documents, idf);
    const auto fast = table.scores(m);
    ASSERT_EQ(fast.size(), direct.count());
    for (std::size_t d = 0; d < fast.size(); ++d) EXPECT_DOUBLE_EQ(fast[d], direct.per_defect[d].second);
    EXPECT_DOUBLE_EQ(table.mean_score(m), direct.mean);
  }
}

TEST(BaselineChurn, OrderAndTies) {
  std::vector<SourceDocument> corpus = {file("c.java"), file("a.java"), file("d.java"), file("b.java")};
  const std::map<std::string, int> churn = {{"a.java", 5}, {"b.java", 2}};
  for (auto& d : corpus) {
    const auto it = churn.find(d.path);
    for (int i = 0; i < (it == churn.end() ? 0 : it->second); ++i) d.change_dates.push_back(Date(2005, 1, 1 + i));
  }
  const auto list = baseline_churn(make_report("1", "t", "", Date(2006, 1, 1)), corpus);
  EXPECT_EQ(paths_of(list), (std::vector<std::string>{"a.java", "b.java", "c.java", "d.java"}));
  ASSERT_EQ(list.tie_groups().size(), 3u);
  EXPECT_EQ(list.tie_groups()[2].size(), 2u);
}

TEST(BaselineChurn, AllZeroAndLateChanges) {
  std::vector<SourceDocument> corpus = {file("a.java"), file("b.java")};
  corpus[0].change_dates = {Date(2007, 1, 1)};
  const auto list = baseline_churn(make_report("1", "t", "", Date(2006, 1, 1)), corpus);
  ASSERT_EQ(list.tie_groups().size(), 1u);
  EXPECT_EQ(list.entries()[0].value, 0.0);
}

TEST(BaselineStacktrace, FrameOrder) {
  std::vector<SourceDocument> corpus = {file("A.java"), file("X.java"), file("Y.java"), file("Z.java")};
  auto report = make_report("1", "t", "");
  report.stack_frames = {"org.X.run", "org.Nothing.go", "org.Y$Inner.call", "org.X.again"};
  const auto list = baseline_stacktrace(report, corpus);
  EXPECT_EQ(paths_of(list), (std::vector<std::string>{"X.java", "Y.java", "A.java", "Z.java"}));
  ASSERT_EQ(list.tie_groups().size(), 3u);
  EXPECT_DOUBLE_EQ(list.entries()[0].value, 1.0);
  EXPECT_DOUBLE_EQ(list.entries()[1].value, quantize_rank_value(1.0 / 3.0));
}

TEST(BaselineStacktrace, NoTraceIsOneGroup) {
  std::vector<SourceDocument> corpus = {file("A.java"), file("B.java")};
  EXPECT_EQ(baseline_stacktrace(make_report("1", "t", ""), corpus).tie_groups().size(), 1u);
}

TEST(BaselineStacktrace, FrameMatching) {
  auto doc = file("src/Editor.java");
  doc.declared_classes = {"Helper", "Editor"};
  EXPECT_TRUE(frame_matches_file("org.ui.Editor.open", doc));
  EXPECT_TRUE(frame_matches_file("org.ui.helper.paint", doc));
  EXPECT_TRUE(frame_matches_file("Editor$1.run", doc));
  EXPECT_FALSE(frame_matches_file("org.ui.Editors.open", doc));
  EXPECT_FALSE(frame_matches_file("open", doc));

  SourceDocument bare;
  bare.path = "org/ui/Viewer.java";
  EXPECT_TRUE(frame_matches_file("org.ui.viewer$Inner.show", bare));
  EXPECT_FALSE(frame_matches_file("org.ui.Editor.open", bare));
}

// Independent single-term search: sort by count, group equal counts, and
// take the expected position of the first fixed file.
double oracle_term_score(const std::vector<SourceDocument>& corpus, const std::set<std::string>& fixed,
                         const std::string& term) {
  std::map<double, std::pair<std::size_t, std::size_t>, std::greater<>> groups;  // count -> (size, fixed)
  for (const auto& d : corpus) {
    auto& g = groups[d.whole_file.weight(term)];
    ++g.first;
    if (fixed.count(d.path)) ++g.second;
  }
  double before = 0.0;
  for (const auto& [count, g] : groups) {
    if (g.second > 0) {
      const double inspected = before + static_cast<double>(g.first + 1) / static_cast<double>(g.second + 1);
      return 100.0 * (static_cast<double>(corpus.size()) - inspected) / static_cast<double>(corpus.size());
    }
    before += static_cast<double>(g.first);
  }
  return -1.0;
}

TEST(BaselineOptimalSearch, ExhaustiveOracle) {
  std::mt19937_64 rng(99);
  const std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta"};
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 1 + rng() % 10;
    std::vector<SourceDocument> corpus;
    for (std::size_t i = 0; i < n; ++i) {
      std::string body;
      for (std::size_t k = rng() % 8; k > 0; --k) body += vocab[rng() % vocab.size()] + " ";
      corpus.push_back(file("f" + std::to_string(i) + ".java", body));
    }
    std::set<std::string> fixed;
    for (std::size_t k = 1 + rng() % 2; k > 0; --k) fixed.insert(corpus[rng() % n].path);
    std::string title;
    for (std::size_t k = rng() % 4; k > 0; --k) title += vocab[rng() % vocab.size()] + " ";
    const auto report = make_report("r", title, rng() % 2 ? "theta Alpha" : "");

    std::set<std::string> terms;
    for (const auto& [t, w] : report.title) terms.insert(t);
    for (const auto& [t, w] : report.body) terms.insert(t);
    double best = oracle_term_score(corpus, fixed, "\x01none");
    std::string best_term;
    bool any = false;
    for (const auto& t : terms) {
      const double s = oracle_term_score(corpus, fixed, t);
      if (!any || s > best) {
        best = s;
        best_term = t;
        any = true;
      }
    }
    const auto result = baseline_optimal_search(report, corpus, {fixed.begin(), fixed.end()});
    EXPECT_NEAR(result.score, best, 1e-12);
    EXPECT_EQ(result.term, best_term);
  }
}

TEST(BaselineOptimalSearch, UniqueTermDominates) {
  std::vector<SourceDocument> corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back(file("f" + std::to_string(i) + ".java", i == 2 ? "rare x" : "x y"));
  const auto result = baseline_optimal_search(make_report("1", "rare x y", ""), corpus, {"f2.java"});
  EXPECT_DOUBLE_EQ(result.score, 100.0 * 4.0 / 5.0);
  EXPECT_EQ(result.term, "rare");
}

TEST(BaselineOptimalSearch, AbsentTermIsRandomOrder) {
  std::vector<SourceDocument> corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back(file("f" + std::to_string(i) + ".java", "x"));
  EXPECT_DOUBLE_EQ(baseline_optimal_search(make_report("1", "nowhere", ""), corpus, {"f1.java"}).score,
                   100.0 * (5.0 - 3.0) / 5.0);
}

TEST(Baselines, NamesAndDispatch) {
  for (auto k : {BaselineKind::churn, BaselineKind::stack_trace, BaselineKind::optimal_search}) {
    EXPECT_EQ(parse_baseline_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_baseline_kind("bogus"));
  std::vector<SourceDocument> corpus = {file("A.java", "x"), file("B.java", "y")};
  corpus[1].change_dates = {Date(2000, 1, 1)};
  const std::vector<LinkedDefect> defects = {{make_report("1", "y", "", Date(2001, 1, 1)), {"B.java"}}};
  EXPECT_DOUBLE_EQ(evaluate_baseline(BaselineKind::churn, defects, corpus).mean, 50.0);
  EXPECT_DOUBLE_EQ(evaluate_baseline(BaselineKind::optimal_search, defects, corpus).mean, 50.0);
  EXPECT_DOUBLE_EQ(evaluate_baseline(BaselineKind::stack_trace, defects, corpus).mean, 100.0 * (2 - 1.5) / 2);
}

DefectReport ten_term_report() {
  return make_report("r", "Alpha beta gamma, alpha!", "delta epsilon zeta eta theta iota kappa\n  at a.B.c(B.java:1)",
                     Date(2005, 1, 1), "UI", "Linux", "3.1");
}

std::set<Term> report_terms(const DefectReport& r) {
  std::set<Term> out;
  for (const auto& [t, w] : r.title) out.insert(t);
  for (const auto& [t, w] : r.body) out.insert(t);
  return out;
}

std::multiset<double> report_weights(const DefectReport& r) {
  std::map<Term, double> merged;
  for (const auto& [t, w] : r.title) merged[t] += w;
  for (const auto& [t, w] : r.body) merged[t] += w;
  std::multiset<double> out;
  for (const auto& [t, w] : merged) out.insert(w);
  return out;
}

TEST(Degrade, FractionZeroIsIdentity) {
  const auto r = ten_term_report();
  EXPECT_EQ(degrade(r, 0.0, DegradationMode::random_chars, 1), r);
}

TEST(Degrade, FullRandomCharsReplacesEverything) {
  const auto r = ten_term_report();
  const auto original = report_terms(r);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = degrade(r, 1.0, DegradationMode::random_chars, seed);
    const auto now = report_terms(d);
    EXPECT_EQ(now.size(), original.size());
    for (const auto& t : now) EXPECT_EQ(original.count(t), 0u) << t;
    std::multiset<std::size_t> old_lengths;
    std::multiset<std::size_t> new_lengths;
    for (const auto& t : original) old_lengths.insert(t.size());
    for (const auto& t : now) new_lengths.insert(t.size());
    EXPECT_EQ(old_lengths, new_lengths);
    EXPECT_EQ(report_weights(d), report_weights(r));
    EXPECT_EQ(d.stack_frames, r.stack_frames);
    EXPECT_EQ(d.component, r.component);
    EXPECT_EQ(d.submitted, r.submitted);
  }
}

TEST(Degrade, HalfOfTenTerms) {
  const auto r = make_report("r", "one two three four five", "six seven eight nine ten");
  const auto original = report_terms(r);
  ASSERT_EQ(original.size(), 10u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = degrade(r, 0.5, DegradationMode::random_chars, seed);
    std::size_t survivors = 0;
    for (const auto& t : report_terms(d)) survivors += original.count(t);
    EXPECT_EQ(survivors, 5u);
  }
  const auto d = degrade(r, 0.25, DegradationMode::random_chars, 3);
  std::size_t survivors = 0;
  for (const auto& t : report_terms(d)) survivors += original.count(t);
  EXPECT_EQ(survivors, 7u);  // ceil(2.5) = 3 replaced
}

TEST(Degrade, PoolModesAndDeterminism) {
  const auto r = ten_term_report();
  const auto pool = wordlist_pool("apple\nbanana\ncherry\ndate\nelder\nfig\ngrape\nhoney\nice\njuice\nkiwi\n"
                                  "lemon\nmango\nnut\ntwo words\n");
  EXPECT_EQ(pool.words.size(), 14u);
  const auto a = degrade(r, 0.6, DegradationMode::dictionary, 5, &pool);
  EXPECT_EQ(a, degrade(r, 0.6, DegradationMode::dictionary, 5, &pool));
  const std::set<Term> allowed(pool.words.begin(), pool.words.end());
  const auto original = report_terms(r);
  for (const auto& t : report_terms(a)) EXPECT_TRUE(original.count(t) || allowed.count(t)) << t;
  EXPECT_NE(a, degrade(r, 0.6, DegradationMode::dictionary, 6, &pool));

  const auto other = make_report("2", "omega psi chi phi upsilon tau sigma rho pi omicron xi nu mu lambda",
                                  "kappa2 iota2 theta2 eta2 zeta2 beta2");
  const auto same = report_term_pool({r, other});
  EXPECT_TRUE(std::binary_search(same.words.begin(), same.words.end(), "omega"));
  const auto b = degrade(r, 1.0, DegradationMode::same_corpus, 5, &same);
  const auto fresh = report_terms(other);
  for (const auto& t : report_terms(b)) EXPECT_TRUE(fresh.count(t)) << t;
}

TEST(Degrade, Errors) {
  const auto r = ten_term_report();
  EXPECT_THROW(degrade(r, 0.5, DegradationMode::dictionary, 1), ConfigError);
  EXPECT_THROW(degrade(r, 1.5, DegradationMode::random_chars, 1), UsageError);
  EXPECT_THROW(degrade(r, -0.1, DegradationMode::random_chars, 1), UsageError);
  EXPECT_THROW(load_wordlist("/nonexistent/words"), ConfigError);
  for (auto m : {DegradationMode::same_corpus, DegradationMode::dictionary, DegradationMode::random_chars}) {
    EXPECT_EQ(parse_degradation_mode(to_string(m)), m);
  }
}

TEST(Singleton, PlantedKeyScoresHighest) {
  std::vector<SourceDocument> corpus;
  for (int i = 0; i < 10; ++i) corpus.push_back(file("F" + std::to_string(i) + ".java", "filler word" + std::to_string(i)));
  std::vector<LinkedDefect> defects;
  for (int d = 0; d < 3; ++d) {
    corpus[d].method_bodies.add("planted" + std::to_string(d), 2.0);
    corpus[d].whole_file.add("planted" + std::to_string(d), 2.0);
    defects.push_back({make_report(std::to_string(d), "", "planted" + std::to_string(d)), {corpus[d].path}});
  }
  const auto index = build_index(corpus, {});
  const auto& all = all_feature_keys();
  const std::vector<FeatureKey> keys(all.begin(), all.end());
  const auto rows = singleton_analysis(keys, defects, corpus, IdfSource(index));
  ASSERT_EQ(rows.size(), keys.size());
  const FeatureKey planted{ReportField::body, CodeField::method_bodies};
  for (const auto& row : rows) {
    if (row.key == planted) {
      EXPECT_DOUBLE_EQ(row.score, 90.0);
    } else {
      EXPECT_DOUBLE_EQ(row.score, 100.0 * (10.0 - 5.5) / 10.0) << to_string(row.key);
    }
  }
}

double textbook_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

TEST(Pearson, Basics) {
  const std::vector<double> xs = {1, 2, 3, 4, 5};
  std::vector<double> neg;
  for (double x : xs) neg.push_back(-x);
  EXPECT_DOUBLE_EQ(pearson(xs, xs), 1.0);
  EXPECT_DOUBLE_EQ(pearson(xs, neg), -1.0);
  const std::vector<double> ys = {2, 4, 5, 4, 5};
  EXPECT_NEAR(pearson(xs, ys), textbook_pearson(xs, ys), 1e-12);
  EXPECT_NEAR(pearson(xs, ys), 0.7745966692414834, 1e-12);
}

TEST(Pearson, Errors) {
  const std::vector<double> xs = {1, 2, 3};
  const std::vector<double> flat = {2, 2, 2};
  EXPECT_THROW(pearson(xs, flat), UndefinedCorrelationError);
  EXPECT_THROW(pearson(xs, std::vector<double>{1, 2}), UsageError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), UsageError);
}

TEST(TsvOutput, Formats) {
  ScoreResult r;
  r.per_defect = {{"1", 80.0}, {"2", 90.0}};
  r.mean = 85.0;
  std::ostringstream a;
  write_scores_tsv(a, r);
  EXPECT_EQ(a.str(), "defect_id\tscore\n1\t80.000000\n2\t90.000000\nmean\t85.000000\n");

  std::ostringstream b;
  write_degradation_tsv(b, {{DegradationMode::random_chars, 0.5, 49.75}});
  EXPECT_EQ(b.str(), "mode\tfraction\tmean_score\nrandom-chars\t0.50\t49.750000\n");

  std::ostringstream c;
  write_singleton_tsv(c, {{{ReportField::date, CodeField::churn}, 84.82}});
  EXPECT_EQ(c.str(), "report_field\tcode_field\tscore\ndate\tchurn\t84.820000\n");
}

TEST(JoinLinks, ReportOrder) {
  const std::vector<DefectReport> reports = {make_report("1", "a", ""), make_report("2", "b", ""),
                                             make_report("3", "c", "")};
  const auto joined = join_links(reports, {{"3", {"x"}}, {"1", {"y"}}});
  ASSERT_EQ(joined.size(), 2u);
  EXPECT_EQ(joined[0].report.id, "1");
  EXPECT_EQ(joined[1].fixed_paths, (std::vector<std::string>{"x"}));
}

}  // namespace
}  // namespace bugloc
