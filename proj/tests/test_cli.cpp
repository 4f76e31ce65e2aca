#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace dyadic;
using namespace testing_support;

namespace {

std::string data(const std::string& rel) { return std::string(DATA_DIR) + "/" + rel; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_config(const RunConfig& c) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig command(const std::string& name) {
  RunConfig c;
  c.command = name;
  return c;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("dyadic_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST(Cli, KernelText) {
  auto c = command("kernel");
  c.space_path = data("spaces/x2.json");
  auto r = run_config(c);
  EXPECT_EQ(r.code, kExitPass);
  EXPECT_EQ(r.out, "kernel: [0,1]; scattered: 2@1, 3@1; rank 1\n");
}

TEST(Cli, KernelJson) {
  auto c = command("kernel");
  c.space_path = data("spaces/x4.json");
  c.format = OutputFormat::json;
  auto r = run_config(c);
  ASSERT_EQ(r.code, kExitPass);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["rank"], 2);
  EXPECT_TRUE(j["kernel"]["points"].empty());
  EXPECT_EQ(j["scattered"].size(), 2u);
}

TEST(Cli, CheckBadFixtureFindsCounterexample) {
  for (const char* property : {"proper", "independent"}) {
    auto c = command("check");
    c.subbase_path = data("subbases/bad_x1.json");
    c.property = property;
    c.depth = 2;
    auto r = run_config(c);
    EXPECT_EQ(r.code, kExitCounterexample) << property;
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("word 00"), std::string::npos) << r.out;
  }
}

TEST(Cli, CheckJsonReportsCounterexample) {
  auto c = command("check");
  c.subbase_path = data("subbases/bad_x1.json");
  c.property = "proper";
  c.depth = 2;
  c.format = OutputFormat::json;
  auto r = run_config(c);
  EXPECT_EQ(r.code, kExitCounterexample);
  auto j = Json::parse(r.out);
  const auto& rep = j["reports"][0];
  EXPECT_EQ(rep["property"], "proper");
  EXPECT_FALSE(rep["passed"].get<bool>());
  EXPECT_EQ(rep["words_checked"], 9);
  EXPECT_EQ(rep["counterexamples"][0]["word"], "00");
  EXPECT_EQ(rep["counterexamples"][0]["point"], "1/2");
}

TEST(Cli, InputErrors) {
  auto c = command("kernel");
  c.space_path = data("spaces/missing.json");
  auto r = run_config(c);
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);

  auto bad = temp_file("bad_space.json", R"({"primitives":[{"kind":"interval","lo":"1","hi":"0"}]})");
  c.space_path = bad;
  EXPECT_EQ(run_config(c).code, kExitInputError);

  auto broken = temp_file("broken.json", "{ not json");
  c.space_path = broken;
  EXPECT_EQ(run_config(c).code, kExitInputError);

  auto wrong_type = temp_file("wrong_type.json", R"({"primitives":[{"kind":7}]})");
  c.space_path = wrong_type;
  EXPECT_EQ(run_config(c).code, kExitInputError);

  auto e = command("encode");
  e.subbase_path = data("subbases/bad_x1.json");
  e.points = {"5"};
  EXPECT_EQ(run_config(e).code, kExitInputError);

  auto d = command("decode");
  d.subbase_path = data("subbases/bad_x1.json");
  d.word = "0x";
  EXPECT_EQ(run_config(d).code, kExitInputError);

  auto b = command("build");
  b.space_path = data("spaces/x1.json");
  b.levels = kLevelLimit + 1;
  EXPECT_EQ(run_config(b).code, kExitInputError);
}

TEST(Cli, BuildThenCheckIsConsistent) {
  for (const auto* name : {"x1", "x2", "x3", "x4", "x5"}) {
    auto b = command("build");
    b.space_path = data(std::string("spaces/") + name + ".json");
    b.levels = 2;
    b.degree_mode = DegreeMode::match_dim;
    b.format = OutputFormat::json;
    auto built = run_config(b);
    ASSERT_EQ(built.code, kExitPass) << name << built.err;
    auto path = temp_file(std::string("built_") + name + ".json", built.out);

    auto c = command("check");
    c.subbase_path = path;
    c.degree_mode = DegreeMode::match_dim;
    auto checked = run_config(c);
    EXPECT_EQ(checked.code, kExitPass) << name << "\n" << checked.out << checked.err;
  }
}

TEST(Cli, SubbaseJsonRoundTripIsByteIdentical) {
  for (const auto& [name, space] : corpus()) {
    BuildOptions o;
    o.levels = 3;
    auto r = build_proper_subbase(space, o);
    std::string first = to_json(r.subbase, r.kernel_levels).dump(2);
    auto loaded = subbase_from_json(Json::parse(first));
    std::string second = to_json(loaded.subbase, loaded.kernel_levels).dump(2);
    EXPECT_EQ(first, second) << name;
    ASSERT_EQ(loaded.subbase.size(), r.subbase.size());
    for (std::size_t n = 0; n < r.subbase.size(); ++n) EXPECT_EQ(loaded.subbase[n], r.subbase[n]) << name;
  }
}

TEST(Cli, SetJsonRoundTrip) {
  SetGen gen(41);
  for (const auto& [name, space] : extended_corpus()) {
    for (int i = 0; i < 30; ++i) {
      auto a = gen.set(space);
      EXPECT_EQ(set_from_json(space, to_json(a)), a) << name << " " << a.str();
    }
  }
}

TEST(Cli, SpaceJsonRoundTrip) {
  for (const auto& [name, space] : extended_corpus()) {
    EXPECT_EQ(*space_from_json(to_json(*space)), *space) << name;
  }
  for (const auto* name : {"x1", "x2", "x3", "x4", "x5"}) {
    auto loaded = load_space(data(std::string("spaces/") + name + ".json"));
    bool found = false;
    for (const auto& [n, s] : corpus()) found = found || *s == *loaded;
    EXPECT_TRUE(found) << name;
  }
}

TEST(Cli, EncodeAndDecode) {
  auto b = command("build");
  b.space_path = data("spaces/x1.json");
  b.levels = 2;
  b.format = OutputFormat::json;
  auto path = temp_file("x1_two.json", run_config(b).out);

  auto e = command("encode");
  e.subbase_path = path;
  e.points = {"13/32", "0"};
  auto enc = run_config(e);
  ASSERT_EQ(enc.code, kExitPass) << enc.err;
  std::istringstream lines(enc.out);
  std::string point;
  std::string word;
  lines >> point >> word;
  EXPECT_EQ(point, "13/32");

  auto d = command("decode");
  d.subbase_path = path;
  d.word = word;
  d.format = OutputFormat::json;
  auto dec = run_config(d);
  ASSERT_EQ(dec.code, kExitPass) << dec.err;
  auto set = set_from_json(load_space(data("spaces/x1.json")), Json::parse(dec.out));
  EXPECT_TRUE(set.contains(Rational(13, 32))) << set.str();
}

TEST(Cli, ReportBuildsAndChecks) {
  auto c = command("report");
  c.space_path = data("spaces/x5.json");
  c.levels = 3;
  c.degree_mode = DegreeMode::match_dim;
  auto r = run_config(c);
  EXPECT_EQ(r.code, kExitPass) << r.out << r.err;
  EXPECT_NE(r.out.find("degree: PASS (sup 1, expected 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("independent@3: PASS (27 words)"), std::string::npos) << r.out;
}

TEST(Cli, TraceListsEveryLevel) {
  auto c = command("build");
  c.space_path = data("spaces/x2.json");
  c.levels = 2;
  c.emit_trace = true;
  c.format = OutputFormat::json;
  auto r = run_config(c);
  ASSERT_EQ(r.code, kExitPass);
  auto j = Json::parse(r.out);
  ASSERT_EQ(j["trace"].size(), 2u);
  EXPECT_EQ(j["trace"][1]["level"], 1);
  EXPECT_FALSE(j["trace"][1]["V_star"].is_null());
  EXPECT_EQ(j["subbase"]["kernel_levels"], 2);
}
