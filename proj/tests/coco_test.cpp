#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "optkb/archive.hpp"
#include "optkb/coco.hpp"
#include "optkb/errors.hpp"

using namespace optkb;
using namespace optkb::coco;
namespace fs = std::filesystem;

namespace {

const Study kStudy{"10.1/test", "t", {"x"}, "2020", SourcePlatform::Coco};

InfoEntry entry_for(int f, int d, std::vector<int> instances) {
  InfoEntry e;
  e.function_id = f;
  e.dimension = d;
  e.algorithm_name = "MLSL";
  e.dat_path = "data/f.dat";
  for (int i : instances) e.per_instance.push_back({i, 100, 0.0});
  return e;
}

}  // namespace

TEST(InfoFile, SingleBlock) {
  const auto entries = parse_info_file(
      "funcId = 1, DIM = 2, algId = 'MLSL'\n% comment\n"
      "data_f1/run_f1.dat, 1:1953|-8.5e-9, 2:1299|-7.7e-9");
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].function_id, 1);
  EXPECT_EQ(entries[0].dimension, 2);
  EXPECT_EQ(entries[0].algorithm_name, "MLSL");
  EXPECT_EQ(entries[0].dat_path, "data_f1/run_f1.dat");
  ASSERT_EQ(entries[0].per_instance.size(), 2u);
  EXPECT_EQ(entries[0].per_instance[0], (InstanceSummary{1, 1953, -8.5e-9}));
  EXPECT_EQ(entries[0].per_instance[1], (InstanceSummary{2, 1299, -7.7e-9}));
}

TEST(InfoFile, EmptyAndMetadata) {
  EXPECT_TRUE(parse_info_file("").empty());
  const auto e = parse_info_file(
      "funcId = 3, DIM = 5, Precision = 1e-08, algId = 'BFGS', coco_version = '2.0'\n"
      "% c\nd.dat, 1:10|1.5\n");
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].precision, 1e-8);
  ASSERT_EQ(e[0].metadata.size(), 1u);
  EXPECT_EQ(e[0].metadata[0].first, "coco_version");
  EXPECT_EQ(e[0].metadata[0].second, "2.0");
}

TEST(InfoFile, MissingDimIsLineOne) {
  try {
    parse_info_file("funcId = 1, algId = 'X'\n% c\nd.dat, 1:1|1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(InfoFile, DanglingDataLine) {
  EXPECT_THROW(parse_info_file("d.dat, 1:1|1\n"), ParseError);
}

TEST(DatFile, TwoEventSegment) {
  const auto traces = parse_dat_file("% header\n1 10.0 10.0 10.0 10.0\n5 3.0 3.0 3.0 3.0\n",
                                     entry_for(1, 2, {1}));
  ASSERT_EQ(traces.size(), 1u);
  EXPECT_EQ(traces[0].events.size(), 2u);
  EXPECT_EQ(traces[0].final_best_raw, 3.0);
  EXPECT_EQ(traces[0].total_evaluations, 100);
  EXPECT_TRUE(traces[0].events[0].coordinates.empty());
}

TEST(DatFile, NonNumericField) {
  try {
    parse_dat_file("% h\n1 ten 10 10 10\n", entry_for(1, 2, {1}));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "line 2: field 2 not numeric");
  }
}

TEST(DatFile, Reconciliation) {
  try {
    parse_dat_file("% a\n1 1 1 1 1\n% b\n1 1 1 1 1\n% c\n1 1 1 1 1\n", entry_for(1, 2, {1, 2}));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("3 run segments"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("2 instances"), std::string::npos);
  }
}

TEST(DatFile, CoordinatesAndRepeatedInstances) {
  const auto traces = parse_dat_file(
      "% a\n1 4 4 4 4 0.5 -0.5\n% b\n2 3 3 3 3 1 2\n", entry_for(1, 2, {3, 3}));
  ASSERT_EQ(traces.size(), 2u);
  EXPECT_EQ(traces[0].events[0].coordinates, (std::vector<double>{0.5, -0.5}));
  EXPECT_EQ(traces[0].repetition, 0);
  EXPECT_EQ(traces[1].repetition, 1);
  EXPECT_EQ(traces[1].problem.instance_number, 3);
}

TEST(Emitters, RoundTrip) {
  fixture::Rng rng(3);
  std::vector<RunTrace> traces;
  InfoEntry e = entry_for(4, 3, {});
  for (int i = 1; i <= 4; ++i) {
    traces.push_back(fixture::make_trace(rng, "MLSL", {"BBOB", 4, i, 3}, 8));
    e.per_instance.push_back({i, traces.back().total_evaluations, traces.back().final_best_raw});
  }
  const auto infos = parse_info_file(emit_info({e}));
  ASSERT_EQ(infos.size(), 1u);
  EXPECT_EQ(infos[0].per_instance, e.per_instance);
  const auto back = parse_dat_file(emit_dat(traces), infos[0]);
  EXPECT_EQ(back, traces);
}

TEST(IngestDir, FixtureTree) {
  archive::TempDir dir;
  fixture::Rng rng(1);
  fixture::CocoLayout layout{{"MLSL"}, {1, 2}, {1, 2, 3, 4, 5}, {2}, 10, 12};
  const auto expected = fixture::write_coco_tree(rng, dir.path(), layout);
  const auto result = ingest_coco_dir(dir.path(), kStudy);
  EXPECT_EQ(result.traces.size(), 10u);
  EXPECT_TRUE(result.report.diagnostics.empty());
  EXPECT_EQ(result.traces, expected);
  EXPECT_EQ(result.report.records_accepted, 10u);
  for (const auto& t : result.traces) EXPECT_TRUE(validate_trace(t).empty());
}

TEST(IngestDir, MissingDat) {
  archive::TempDir dir;
  fixture::Rng rng(1);
  fixture::CocoLayout layout{{"MLSL"}, {1, 2}, {1, 2, 3, 4, 5}, {2}, 10, 12};
  fixture::write_coco_tree(rng, dir.path(), layout);
  fs::remove(dir.path() / "mlsl" / "data_f2" / "bbobexp_f2_DIM2.dat");
  const auto result = ingest_coco_dir(dir.path(), kStudy);
  EXPECT_EQ(result.traces.size(), 5u);
  ASSERT_EQ(result.report.diagnostics.size(), 1u);
  EXPECT_NE(result.report.diagnostics[0].message.find("not found"), std::string::npos);
}

TEST(IngestDir, EmptyAndUnreadable) {
  archive::TempDir dir;
  try {
    ingest_coco_dir(dir.path(), kStudy);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_STREQ(e.what(), "no .info files found");
  }
  EXPECT_THROW(ingest_coco_dir(dir.path() / "absent", kStudy), IoError);
  Study bad = kStudy;
  bad.identifier.clear();
  EXPECT_THROW(ingest_coco_dir(dir.path(), bad), std::invalid_argument);
}

TEST(IngestDir, NonMonotoneTraceExcludedUnlessLenient) {
  archive::TempDir dir;
  fixture::Rng rng(9);
  fixture::CocoLayout layout{{"A", "B"}, {1}, {1, 2, 3}, {2, 3}, 10, 12};
  const auto traces = fixture::write_coco_tree(rng, dir.path(), layout);
  fixture::corrupt_monotonicity(dir.path(), traces, 4, 3);

  const auto strict = ingest_coco_dir(dir.path(), kStudy);
  EXPECT_EQ(strict.traces.size(), traces.size() - 1);
  EXPECT_EQ(strict.report.records_excluded, 1u);
  for (const auto& t : strict.traces) {
    EXPECT_FALSE(t.algorithm == traces[4].algorithm && t.problem == traces[4].problem);
  }
  bool monotonicity = false;
  for (const auto& d : strict.report.diagnostics) {
    monotonicity = monotonicity || d.message.find("non-monotone best-so-far at event 3") != std::string::npos;
  }
  EXPECT_TRUE(monotonicity);

  IngestOptions lenient;
  lenient.lenient = true;
  EXPECT_EQ(ingest_coco_dir(dir.path(), kStudy, lenient).traces.size(), traces.size());
}

TEST(IngestDir, OutOfRangeFunctionExcluded) {
  archive::TempDir dir;
  fixture::Rng rng(2);
  fixture::CocoLayout layout{{"A"}, {25}, {1}, {2}, 10, 10};
  fixture::write_coco_tree(rng, dir.path(), layout);
  const auto r = ingest_coco_dir(dir.path(), kStudy);
  EXPECT_TRUE(r.traces.empty());
  EXPECT_EQ(r.report.records_excluded, 1u);
}
