// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugloc Authors

#include "bugloc/report_ingest.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "temp_dir.hpp"

namespace bugloc {
namespace {

using testing::TempDir;
using testing::write_file;

constexpr const char* kRecord =
    "Id: 91543\n"
    "Title: Exception when placing a breakpoint (double click on ruler)\n"
    "Date: 2005-04-14\n"
    "Component: Debug\n"
    "OS: Linux\n"
    "Version: 3.1\n"
    "\n"
    "Build I20050414-1107\n"
    "\n"
    "java.lang.NullPointerException\n"
    "  at org.eclipse.jface.text.AbstractLineTracker.getLineInformation(AbstractLineTracker.java:251)\n"
    "  at org.eclipse.ui.texteditor.AbstractTextEditor.select(AbstractTextEditor.java:4417)\n";

TEST(ParseReport, Fields) {
  const auto r = parse_report(kRecord);
  EXPECT_EQ(r.id, "91543");
  EXPECT_EQ(r.title.weight("exception"), 1.0);
  EXPECT_EQ(r.title.weight("breakpoint"), 1.0);
  EXPECT_EQ(r.title.weight("ruler"), 1.0);
  EXPECT_EQ(r.component, "debug");
  EXPECT_EQ(r.operating_system, "linux");
  EXPECT_EQ(r.version, "3.1");
  ASSERT_TRUE(r.submitted);
  EXPECT_EQ(r.submitted->to_string(), "2005-04-14");
  EXPECT_EQ(r.stack_frames, (std::vector<std::string>{
                                "org.eclipse.jface.text.AbstractLineTracker.getLineInformation",
                                "org.eclipse.ui.texteditor.AbstractTextEditor.select"}));
  EXPECT_TRUE(r.body.contains("i20050414"));
}

TEST(ParseReport, RawTextReproducesVectors) {
  const auto r = parse_report(kRecord);
  EXPECT_EQ(r.title, build_vector(tokenize_plain(r.raw_title)));
  EXPECT_EQ(r.body, build_vector(tokenize_plain(r.raw_body)));
  EXPECT_EQ(r.raw_body.substr(0, 22), "Build I20050414-1107\n\n");
}

TEST(ParseReport, NoTraceAndOptionalFields) {
  const auto r = parse_report("id: 7\ntitle: Ruler is slow\n\nIt takes ages.\n");
  EXPECT_TRUE(r.stack_frames.empty());
  EXPECT_TRUE(r.component.empty());
  EXPECT_TRUE(r.operating_system.empty());
  EXPECT_FALSE(r.submitted);
}

TEST(ParseReport, KeysAreCaseInsensitiveAndUnknownIgnored) {
  const auto r = parse_report("ID: 8\nTITLE: x\nPriority: P1\nos: Windows XP\n\nbody");
  EXPECT_EQ(r.id, "8");
  EXPECT_EQ(r.operating_system, "windows xp");
  EXPECT_EQ(r.raw_body, "body");
}

TEST(ParseReport, MalformedRecordsNameTheRecord) {
  for (const char* bad : {"Title: no id\n\nbody", "Id: 3\n\nbody", "Id: 3\nTitle: t\nDate: 2005-13-01\n\n",
                          "Id: 3\nTitle: t\nnot a header\n\n"}) {
    try {
      parse_report(bad, "reports/3.txt");
      FAIL() << bad;
    } catch (const MalformedReportError& e) {
      EXPECT_NE(std::string(e.what()).find("reports/3.txt"), std::string::npos);
    }
  }
}

TEST(ParseReport, FormatRoundTrip) {
  const auto r = parse_report(kRecord);
  EXPECT_EQ(parse_report(format_report(r)), r);
}

TEST(CategoricalVector, MultiWordValue) {
  const auto v = categorical_vector("Windows XP");
  EXPECT_EQ(v.weight("windows"), 1.0);
  EXPECT_EQ(v.weight("xp"), 1.0);
  EXPECT_EQ(categorical_vector("Linux").sorted_entries(), (std::vector<std::pair<Term, double>>{{"linux", 1.0}}));
  EXPECT_TRUE(categorical_vector("").empty());
}

TEST(ExtractStackFrames, DebuggerTrace) {
  EXPECT_EQ(extract_stack_frames(
                "at org.eclipse.jface.text.AbstractLineTracker.getLineInformation(AbstractLineTracker.java:251)"),
            (std::vector<std::string>{"org.eclipse.jface.text.AbstractLineTracker.getLineInformation"}));
}

TEST(ExtractStackFrames, EmptyAndProse) {
  EXPECT_TRUE(extract_stack_frames("").empty());
  EXPECT_TRUE(extract_stack_frames("Look at the ruler. It fails at startup.\nsee foo.bar for details").empty());
}

TEST(ExtractStackFrames, TwoLinesInOrderAndSpecialNames) {
  const auto frames = extract_stack_frames(
      "\tat a.B.c(B.java:1)\n"
      "junk\n"
      "    at x.Y$Inner.<init>(Y.java)\n"
      "at q.R.run(Native Method)\n");
  EXPECT_EQ(frames, (std::vector<std::string>{"a.B.c", "x.Y$Inner.<init>", "q.R.run"}));
}

TEST(ExtractStackFrames, MultipleTracesConcatenate) {
  const auto frames = extract_stack_frames("Trace 1:\nat a.A.f(A.java:1)\n\nTrace 2:\nat b.B.g(B.java:2)\n");
  EXPECT_EQ(frames, (std::vector<std::string>{"a.A.f", "b.B.g"}));
}

TEST(TraceVector, InversePositions) {
  EXPECT_TRUE(trace_vector({}).empty());
  const auto v = trace_vector({"m1", "m2", "m3"});
  EXPECT_DOUBLE_EQ(v.weight("m1"), 1.0);
  EXPECT_DOUBLE_EQ(v.weight("m2"), 0.5);
  EXPECT_DOUBLE_EQ(v.weight("m3"), 1.0 / 3.0);
}

TEST(TraceVector, RepeatedTermsAccumulate) {
  EXPECT_DOUBLE_EQ(trace_vector({"A.foo", "B.foo"}).weight("foo"), 1.5);
}

TEST(TraceVector, HarmonicSum) {
  for (std::size_t n : {1u, 5u, 40u}) {
    std::vector<std::string> frames;
    double harmonic = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      frames.push_back("frame" + std::to_string(i));
      harmonic += 1.0 / static_cast<double>(i);
    }
    EXPECT_NEAR(trace_vector(frames).total_weight(), harmonic, 1e-12);
  }
}

TEST(LoadReports, SortedAndSkipsBad) {
  TempDir dir;
  write_file(dir / "b.txt", "Id: 2\nTitle: second\n\n");
  write_file(dir / "a.txt", "Id: 1\nTitle: first\n\n");
  write_file(dir / "c.txt", "garbage\n");
  write_file(dir / ".hidden", "Id: 9\nTitle: hidden\n\n");
  std::vector<std::string> warnings;
  const auto reports = load_reports(dir.path(), [&](const std::string& w) { warnings.push_back(w); });
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].id, "1");
  EXPECT_EQ(reports[1].id, "2");
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_THROW(load_reports(dir / "missing"), ConfigError);
}

}  // namespace
}  // namespace bugloc
