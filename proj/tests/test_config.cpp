#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "lrnn/config.hpp"

namespace lrnn {
namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::Io;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(Toml, ScalarsArraysAndTables) {
  const TomlTable t = parse_toml(
      "# comment\n"
      "a = 3\n"
      "b = -1.5e-3  # trailing\n"
      "c = \"text # not a comment\"\n"
      "d = [1, 2, 3]\n"
      "e = true\n"
      "[sec]\n"
      "f = 'lit'\n");
  EXPECT_EQ(std::get<std::int64_t>(t.at("a").data), 3);
  EXPECT_EQ(std::get<double>(t.at("b").data), -1.5e-3);
  EXPECT_EQ(std::get<std::string>(t.at("c").data), "text # not a comment");
  EXPECT_EQ(std::get<TomlArray>(t.at("d").data).size(), 3u);
  EXPECT_TRUE(std::get<bool>(t.at("e").data));
  EXPECT_EQ(std::get<std::string>(t.at("sec.f").data), "lit");
  EXPECT_EQ(t.at("sec.f").line, 8);
}

TEST(Toml, ErrorsCarryLineNumbers) {
  try {
    parse_toml("a = 1\nb = [1, 2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_toml("a = 1\na = 2\n"), Error);
  EXPECT_THROW(parse_toml("= 3\n"), Error);
}

TEST(Config, MinimalExample1UsesPreset) {
  const RunConfig c = parse_config("case = \"example1\"\nM = 320\n");
  EXPECT_EQ(c.case_id, CaseId::Example1);
  EXPECT_EQ(c.method.scheme, Scheme::LrnnDg);
  EXPECT_EQ(c.rnn.init_range, 1.38);
  EXPECT_EQ(c.method.beta1, 7.0);
  EXPECT_EQ(c.method.beta2, 7.0);
  EXPECT_EQ(c.method.quad_points, 15);
  EXPECT_EQ(c.rnn.neurons, 320);
  EXPECT_EQ(c.dim(), 1);
}

TEST(Config, SchemePresetsAndOverrides) {
  const RunConfig c0 = parse_config("case = \"example1\"\nscheme = \"lrnn_c0dg\"\n");
  EXPECT_EQ(c0.rnn.init_range, 1.34);
  EXPECT_EQ(c0.method.colloc_spatial, 13);
  const RunConfig ex3 = parse_config("case = \"example3\"\nr = 0.3\ncells = [2, 3, 4]\n[output]\ndir = \"x\"\n");
  EXPECT_EQ(ex3.rnn.init_range, 0.3);
  EXPECT_EQ(ex3.method.beta1, 42.0);
  EXPECT_EQ(ex3.cells[2], 4);
  EXPECT_EQ(ex3.slice_time, 5.0);
  EXPECT_EQ(ex3.out_dir, "x");
  const RunConfig ex2 = parse_config("case = \"example2\"\nseeds = [7]\nsolver = \"dense\"\nrcond = 1e-10\n");
  EXPECT_EQ(ex2.seeds, std::vector<std::uint64_t>{7});
  EXPECT_EQ(ex2.solver.backend, SolverBackend::DenseSvd);
  EXPECT_EQ(ex2.method.quad_points, 9);
}

TEST(Config, RejectsInvalidValues) {
  EXPECT_EQ(kind_of("case = \"example1\"\nM = 0\n"), ErrorKind::ValidationError);
  EXPECT_NE(message_of("case = \"example1\"\nM = 0\n").find("M"), std::string::npos);
  EXPECT_EQ(kind_of("case = \"example1\"\nr = -1.0\n"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of("case = \"example2\"\ncells = [1, 2, 3]\n"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of("case = \"example9\"\n"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of("case = \"example1\"\nquad = 0\n"), ErrorKind::ValidationError);
  EXPECT_EQ(kind_of("case = \"example1\"\nM = \"many\"\n"), ErrorKind::ValidationError);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_EQ(kind_of("case = \"example1\"\nneurons = 20\n"), ErrorKind::ValidationError);
  EXPECT_NE(message_of("case = \"example1\"\n\nneurons = 20\n").find("neurons"), std::string::npos);
  EXPECT_NE(message_of("case = \"example1\"\n\nneurons = 20\n").find("line 3"), std::string::npos);
}

TEST(Config, ShippedConfigsLoad) {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(std::string(LRNN_SOURCE_DIR) + "/configs")) {
    if (entry.path().extension() != ".toml") continue;
    EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
    ++n;
  }
  EXPECT_GE(n, 5);
  EXPECT_THROW(load_config("/nonexistent/config.toml"), Error);
}

}  // namespace
}  // namespace lrnn
