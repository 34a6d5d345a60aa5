#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "lrnn/runner.hpp"

namespace lrnn {
namespace {

RunConfig zero_config() {
  RunConfig c = parse_config("case = \"zero2d\"\nM = 12\nN_t = 2\ncells = 2\nseeds = [1, 2]\n");
  c.out_dir = (std::filesystem::temp_directory_path() / "lrnn_runner_test").string();
  return c;
}

TEST(Runner, ZeroDataGivesZeroSolution) {
  for (Scheme s : {Scheme::LrnnDg, Scheme::LrnnC0Dg, Scheme::LrnnC1Dg}) {
    RunConfig c = zero_config();
    c.method.scheme = s;
    RunArtifacts art;
    const RunRecord r = run_seed(c, 1, &art);
    ASSERT_TRUE(art.solution.has_value());
    EXPECT_LE(art.solution->alpha().norm(), 1e-10) << to_string(s);
    EXPECT_EQ(r.errors.rel_l2, 0.0);
    EXPECT_EQ(r.neurons, 12);
  }
}

TEST(Runner, WritesResultsCsvPerSeed) {
  const RunConfig c = zero_config();
  std::filesystem::remove_all(c.out_dir);
  std::ostringstream log;
  const auto recs = run_to_files(c, &log);
  ASSERT_EQ(recs.size(), 2u);
  std::ifstream in(std::filesystem::path(c.out_dir) / c.csv_file);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "scheme,tau,h,M,seed,rel_l2,rel_h1,slice_l2,slice_h1,assemble_s,solve_s,relres");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
  }
  EXPECT_EQ(rows, 2);
  EXPECT_NE(log.str().find("seed 2"), std::string::npos);
}

TEST(Runner, SmallExample2Converges) {
  RunConfig c = parse_config("case = \"example2\"\nM = 120\nN_t = 2\ncells = 2\nseeds = [1]\n");
  const RunRecord r = run_seed(c, 1);
  EXPECT_LT(r.errors.rel_l2, 5e-2);
  EXPECT_GT(r.solve.cols, 0);
  EXPECT_EQ(r.tau, 0.25);
}

TEST(Runner, ErrorsNameTheRun) {
  RunConfig c = zero_config();
  c.rnn.neurons = 0;
  try {
    run_seed(c, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("seed 1"), std::string::npos) << e.what();
  }
}

TEST(Runner, Median) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
}

TEST(Tables, IdsAndShapes) {
  std::set<std::string> ids;
  for (const auto& t : table_specs()) {
    ids.insert(t.id);
    ASSERT_EQ(t.reference.size(), t.dofs.size()) << t.id;
    for (const auto& row : t.reference) EXPECT_EQ(row.size(), t.columns.size()) << t.id;
    if (!t.reference_time.empty()) EXPECT_EQ(t.reference_time.size(), t.dofs.size());
  }
  EXPECT_EQ(ids.size(), 10u);
  for (const char* id : {"1", "2", "3", "4", "5", "6", "7", "ex2_c0dg", "ex2_c1dg", "ex2_fixed_tau"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
  EXPECT_THROW(table_spec("99"), Error);
}

TEST(Tables, CellConfigTakesMeshAndDofFromTheTable) {
  const TableSpec& t = table_spec("ex2_fixed_tau");
  const RunConfig c = table_cell_config(t, 2, 640, RunConfig{});
  EXPECT_EQ(c.time_slabs, 2);
  EXPECT_EQ(c.cells[0], 6);
  EXPECT_EQ(c.cells[1], 6);
  EXPECT_EQ(c.rnn.neurons, 640);
  EXPECT_EQ(c.rnn.init_range, 0.6);
  EXPECT_EQ(c.case_id, CaseId::Example2);
}

TEST(Tables, FilteredReproductionAndTrend) {
  ReproduceOptions opt;
  opt.base.seeds = {1};
  opt.dofs = {40, 160};
  opt.columns = {0};
  const TableResult r = reproduce_table(table_spec("4"), opt);
  EXPECT_TRUE(r.cells[0][0].computed);
  EXPECT_FALSE(r.cells[1][0].computed);
  EXPECT_FALSE(r.cells[0][1].computed);
  EXPECT_LT(r.cells[2][0].l2, r.cells[0][0].l2);
  std::ostringstream os;
  write_table_csv(os, r);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, 2), "M,");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 6);
}

}  // namespace
}  // namespace lrnn
