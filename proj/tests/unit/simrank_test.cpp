// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/simrank.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "bugloc/history_ingest.hpp"
#include "temp_dir.hpp"

namespace bugloc {
namespace {

// Index with `n` documents where term t appears in exactly df[t] of them.
CorpusIndex index_with(std::size_t n, const std::vector<std::pair<std::string, std::size_t>>& df) {
  CorpusIndex index;
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<std::string_view> terms;
    for (const auto& [t, k] : df) {
      if (d < k) terms.push_back(t);
    }
    index.add_document({"d" + std::to_string(d), DocumentKind::source_file, std::nullopt}, terms);
  }
  return index;
}

TermVector vec(std::initializer_list<std::pair<const char*, double>> entries) {
  TermVector v;
  for (const auto& [t, w] : entries) v.add(t, w);
  return v;
}

TEST(Similarity, HandEvaluations) {
  const auto index = index_with(4, {{"a", 1}, {"b", 4}, {"c", 2}});
  EXPECT_EQ(similarity(vec({{"a", 1}}), vec({{"b", 1}}), index), 0.0);
  const auto two = index_with(2, {{"a", 1}});
  EXPECT_DOUBLE_EQ(similarity(vec({{"a", 2}}), vec({{"a", 3}}), two), 12.0);
  EXPECT_DOUBLE_EQ(similarity(vec({{"a", 1}, {"b", 1}}), vec({{"a", 1}, {"b", 2}}), index), 6.0);
}

TEST(Similarity, UnknownTermUsesDocumentCount) {
  const auto index = index_with(5, {{"a", 1}});
  EXPECT_DOUBLE_EQ(similarity(vec({{"zz", 1}}), vec({{"zz", 2}}), index), 10.0);
}

TEST(Similarity, SymmetricBilinearMonotone) {
  std::mt19937_64 rng(21);
  const auto index = index_with(10, {{"t0", 1}, {"t1", 2}, {"t2", 3}, {"t3", 5}, {"t4", 10}});
  std::uniform_real_distribution<double> w(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    TermVector a;
    TermVector b;
    for (int t = 0; t < 6; ++t) {
      if (rng() % 2) a.add("t" + std::to_string(t), w(rng));
      if (rng() % 2) b.add("t" + std::to_string(t), w(rng));
    }
    const double ab = similarity(a, b, index);
    EXPECT_DOUBLE_EQ(ab, similarity(b, a, index));
    TermVector scaled;
    for (const auto& [t, x] : a) scaled.add(t, 3.0 * x);
    EXPECT_NEAR(similarity(scaled, b, index), 3.0 * ab, 1e-9 * (1 + ab));
    a.add("shared", 1.0);
    b.add("shared", 2.0);
    EXPECT_GE(similarity(a, b, index), ab);
  }
}

TEST(FeatureKeys, ValidSet) {
  EXPECT_EQ(all_feature_keys().size(), 37u);
  std::set<FeatureKey> seen;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const auto key = all_feature_keys()[i];
    EXPECT_TRUE(is_valid(key));
    EXPECT_EQ(feature_slot(key), i);
    seen.insert(key);
    EXPECT_EQ(parse_report_field(to_string(key.report)), key.report);
    EXPECT_EQ(parse_code_field(to_string(key.code)), key.code);
  }
  EXPECT_EQ(seen.size(), kFeatureCount);
  EXPECT_TRUE(is_valid({ReportField::date, CodeField::churn}));
  EXPECT_FALSE(is_valid({ReportField::date, CodeField::comments}));
  EXPECT_FALSE(is_valid({ReportField::title, CodeField::churn}));
  EXPECT_THROW(feature_slot({ReportField::title, CodeField::churn}), UsageError);
  EXPECT_EQ(to_string(FeatureKey{ReportField::body, CodeField::method_bodies}), "body:method_bodies");
}

TEST(WeightModel, SetAndValidate) {
  WeightModel m;
  EXPECT_FALSE(m.usable());
  m.set({ReportField::body, CodeField::comments}, 2.5);
  EXPECT_TRUE(m.usable());
  EXPECT_EQ(m.weight({ReportField::body, CodeField::comments}), 2.5);
  EXPECT_EQ(m.active_slots(), (std::vector<std::size_t>{feature_slot({ReportField::body, CodeField::comments})}));
  EXPECT_THROW(m.set({ReportField::body, CodeField::comments}, -1.0), UsageError);
  EXPECT_THROW(m.set({ReportField::body, CodeField::comments}, NAN), UsageError);
  EXPECT_THROW(m.set({ReportField::date, CodeField::comments}, 1.0), UsageError);
  EXPECT_EQ(m.scaled(2.0).weight({ReportField::body, CodeField::comments}), 5.0);
}

TEST(WeightModel, FileRoundTrip) {
  WeightModel m;
  m.set({ReportField::title, CodeField::method_bodies}, 0.1);
  m.set({ReportField::date, CodeField::churn}, 1.0 / 3.0);
  m.set({ReportField::stack_trace, CodeField::class_names}, 12345.678);
  EXPECT_EQ(parse_model(format_model(m)), m);
  testing::TempDir dir;
  save_model(dir / "m.tsv", m);
  EXPECT_EQ(load_model(dir / "m.tsv"), m);
  EXPECT_EQ(format_model(m).substr(0, 20), "title\tmethod_bodies\t");
}

TEST(WeightModel, ParseErrors) {
  EXPECT_EQ(parse_model("# comment\n\nbody\tcomments\t1\n").weight({ReportField::body, CodeField::comments}), 1.0);
  for (const char* bad : {"body\tcomment\t1\n", "body\tcomments\n", "body\tcomments\tx\n", "body\tcomments\t-1\n",
                          "date\tcomments\t1\n", "body\tcomments\t1\nbody\tcomments\t2\n", "nope\tcomments\t1\n"}) {
    EXPECT_THROW(parse_model(bad), LoadError) << bad;
  }
}

SourceDocument file(std::string path) {
  SourceDocument d;
  d.path = std::move(path);
  return d;
}

TEST(FeatureSimilarity, Dispatch) {
  auto report = make_report("1", "ruler crash", "", Date(2005, 6, 1), "", "Linux");
  report.stack_frames = {"org.Ruler.paint"};
  auto f = file("Ruler.java");
  f.class_names = build_vector({"ruler", "ruler"});
  f.comments.add("linux");
  f.change_dates = {Date(2005, 1, 1), Date(2005, 2, 1), Date(2005, 3, 1), Date(2005, 7, 1), Date(2005, 8, 1)};
  const auto index = index_with(5, {{"ruler", 1}, {"linux", 5}});

  EXPECT_EQ(feature_similarity(report, f, {ReportField::component, CodeField::log_messages}, index), 0.0);
  EXPECT_EQ(feature_similarity(report, f, {ReportField::date, CodeField::churn}, index), 3.0);
  EXPECT_DOUBLE_EQ(feature_similarity(report, f, {ReportField::stack_trace, CodeField::class_names}, index),
                   1.0 * 2.0 * 5.0);
  EXPECT_DOUBLE_EQ(feature_similarity(report, f, {ReportField::operating_system, CodeField::comments}, index), 1.0);
  EXPECT_DOUBLE_EQ(feature_similarity(report, f, {ReportField::title, CodeField::class_names}, index), 10.0);
}

TEST(FeatureSimilarity, UndatedReportCountsAllChanges) {
  const auto report = make_report("1", "t", "");
  auto f = file("a");
  f.change_dates = {Date(2005, 1, 1), Date(2009, 1, 1)};
  EXPECT_EQ(feature_similarity(report, f, {ReportField::date, CodeField::churn}, index_with(1, {})), 2.0);
}

TEST(PreparedReport, MatchesFeatureSimilarity) {
  std::mt19937_64 rng(8);
  std::vector<SourceDocument> corpus;
  for (int i = 0; i < 8; ++i) {
    std::string text;
    for (int k = 0; k < 30; ++k) text += "w" + std::to_string(rng() % 25) + " ";
    auto d = file("f" + std::to_string(i));
    d.whole_file = build_vector(tokenize_code(text));
    d.method_bodies = d.whole_file;
    d.comments = build_vector(tokenize_code(text.substr(0, 40)));
    d.class_names.add("w" + std::to_string(i));
    d.log_messages.add("w3");
    d.change_dates = {Date(2005, 1, 1)};
    corpus.push_back(d);
  }
  auto report = make_report("r", "w1 w2 w3", "w4 w4 w5 w17", Date(2005, 3, 1), "w6", "w7", "w8");
  report.stack_frames = {"a.w1.w2", "w3"};
  const auto index = build_index(corpus, {report});
  const PreparedReport prepared(report, index);
  for (const auto& doc : corpus) {
    for (std::size_t slot = 0; slot < kFeatureCount; ++slot) {
      const double direct = feature_similarity(report, doc, all_feature_keys()[slot], index);
      EXPECT_NEAR(prepared.feature(slot, doc), direct, 1e-9 * (1 + direct));
    }
  }
}

TEST(Quantize, AbsorbsSummationNoise) {
  const double a = 0.1 + 0.2 + 0.3;
  const double b = 0.3 + 0.2 + 0.1;
  EXPECT_NE(a, b);
  EXPECT_EQ(quantize_rank_value(a), quantize_rank_value(b));
  EXPECT_EQ(quantize_rank_value(0.0), 0.0);
  EXPECT_EQ(quantize_rank_value(3.0), 3.0);
  EXPECT_LT(quantize_rank_value(1.0), quantize_rank_value(1.0 + 1e-6));
}

TEST(RankedList, SortsAndGroups) {
  const auto list = RankedList::from_values({"c", "a", "d", "b", "e"}, {1.0, 2.0, 1.0, 0.0, 1.0});
  std::vector<std::string> order;
  for (const auto& e : list.entries()) order.push_back(e.path);
  EXPECT_EQ(order, (std::vector<std::string>{"a", "c", "d", "e", "b"}));
  ASSERT_EQ(list.tie_groups().size(), 3u);
  EXPECT_EQ(list.tie_groups()[1].begin, 1u);
  EXPECT_EQ(list.tie_groups()[1].size(), 3u);
  EXPECT_EQ(list.group_of(3), 1u);
  EXPECT_EQ(list.find("e"), 3u);
  EXPECT_FALSE(list.find("zz"));
}

class RankFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    auto a = file("a.java");
    a.method_bodies = build_vector({"ruler", "common", "common"});
    auto b = file("b.java");
    b.method_bodies = build_vector({"common", "common", "editor"});
    auto c = file("c.java");
    c.method_bodies = build_vector({"common"});
    corpus = {a, b, c};
    for (auto& d : corpus) d.whole_file = d.method_bodies;
    index = build_index(corpus, {});
    report = make_report("1", "", "the ruler fails with common stuff", Date(2005, 1, 1));
    model.set({ReportField::body, CodeField::method_bodies}, 1.0);
  }

  std::vector<SourceDocument> corpus;
  CorpusIndex index;
  DefectReport report;
  WeightModel model;
};

TEST_F(RankFixture, RareSharedTermWins) {
  const auto list = rank(report, corpus, model, index);
  EXPECT_EQ(list.entries()[0].path, "a.java");
  // a: ruler 1*1*3 + common 1*2*1 = 5; b: 2; c: 1
  EXPECT_DOUBLE_EQ(list.entries()[0].value, 5.0);
  EXPECT_DOUBLE_EQ(list.entries()[1].value, 2.0);
  EXPECT_DOUBLE_EQ(list.entries()[2].value, 1.0);
}

TEST_F(RankFixture, ZeroModelIsOneTieGroup) {
  const auto list = rank(report, corpus, WeightModel{}, index);
  ASSERT_EQ(list.tie_groups().size(), 1u);
  EXPECT_EQ(list.tie_groups()[0].size(), 3u);
  for (const auto& e : list.entries()) EXPECT_EQ(e.value, 0.0);
}

TEST_F(RankFixture, ScalingPreservesOrder) {
  model.set({ReportField::body, CodeField::log_messages}, 0.3);
  const auto base = rank(report, corpus, model, index);
  const auto doubled = rank(report, corpus, model.scaled(2.0), index);
  ASSERT_EQ(base.size(), doubled.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(base.entries()[i].path, doubled.entries()[i].path);
    EXPECT_DOUBLE_EQ(doubled.entries()[i].value, 2.0 * base.entries()[i].value);
  }
}

TEST_F(RankFixture, EveryFileAppearsOnceAndValuesNonIncreasing) {
  const auto list = rank(report, corpus, model, index);
  std::set<std::string> paths;
  for (std::size_t i = 0; i < list.size(); ++i) {
    paths.insert(list.entries()[i].path);
    if (i > 0) EXPECT_GE(list.entries()[i - 1].value, list.entries()[i].value);
  }
  EXPECT_EQ(paths.size(), corpus.size());
}

}  // namespace
}  // namespace bugloc
