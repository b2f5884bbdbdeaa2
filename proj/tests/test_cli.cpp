#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fcds/cli.hpp"
#include "fcds/csv_io.hpp"
#include "fcds/plan_io.hpp"

using namespace fcds;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    path = fs::temp_directory_path() / (std::string("fcds_test_") + tag + "_" +
                                        std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path writePlan(const TempDir& dir, const char* name, const std::string& text) {
  const auto p = dir.path / name;
  std::ofstream os(p);
  os << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kMinimalPlan = R"({
  "algorithm": "ltcds-oracle",
  "n": 100, "k": 10,
  "etaGrid": [1.0, 2.0],
  "subsetsPerEta": 20,
  "seeds": 2,
  "seed": 5
})";

}  // namespace

TEST_CASE("strict plan parsing") {
  SUBCASE("unknown keys are named") {
    try {
      parsePlan(nlohmann::json::parse(R"({"algorithm":"ltcds-oracle","n":10,"k":2,"frobnicate":1})"));
      FAIL("should have thrown");
    } catch (const PlanError& e) {
      CHECK(e.field() == "frobnicate");
    }
  }
  SUBCASE("query ratio above n names etaGrid") {
    try {
      parsePlan(nlohmann::json::parse(R"({"algorithm":"ltcds-oracle","n":20,"k":10,"etaGrid":[3.0]})"));
      FAIL("should have thrown");
    } catch (const PlanError& e) {
      CHECK(e.field() == "etaGrid");
    }
  }
  SUBCASE("rcds-only keys are rejected elsewhere") {
    CHECK_THROWS_AS(
        parsePlan(nlohmann::json::parse(R"({"algorithm":"ltcds-oracle","n":20,"k":2,"m":5})")),
        PlanError);
  }
  SUBCASE("empty plan is invalid") {
    CHECK_THROWS_AS(parsePlan(nlohmann::json::parse("{}")), PlanError);
  }
}

TEST_CASE("manifest fully reconstructs the plan") {
  auto j = nlohmann::json::parse(R"({
    "algorithm": "rcds", "n": 60, "k": 6, "m": 8,
    "ldpc": [0.5, 0.5],
    "omega": {"family": "robust", "c0": 0.2, "delta": 0.3},
    "etaGrid": [2.0], "seeds": 2, "subsetsPerEta": 10, "seed": 99,
    "dumps": {"storage": true}
  })");
  const auto plan = parsePlan(j);
  const auto manifest = makeManifest(plan);
  const auto round = parsePlan(manifest.at("plan"));
  CHECK(emitPlan(round) == emitPlan(plan));
  CHECK(manifest.at("tool") == "fcds");
}

TEST_CASE("cmdRun writes results and is byte-identical across reruns") {
  TempDir dir("run");
  const auto plan = writePlan(dir, "plan.json", kMinimalPlan);
  const auto out1 = dir.path / "out1";
  const auto out2 = dir.path / "out2";
  REQUIRE(cmdRun(plan.string(), out1.string(), std::nullopt, 2) == 0);
  REQUIRE(cmdRun(plan.string(), out2.string(), std::nullopt, 1) == 0);

  const auto results1 = slurp(out1 / "results.csv");
  CHECK(results1 == slurp(out2 / "results.csv"));
  CHECK(slurp(out1 / "manifest.json") == slurp(out2 / "manifest.json"));

  // one row per eta point, after the header
  size_t lines = 0;
  for (char c : results1)
    if (c == '\n') ++lines;
  CHECK(lines == 3);

  SUBCASE("seed override changes the bytes") {
    const auto out3 = dir.path / "out3";
    REQUIRE(cmdRun(plan.string(), out3.string(), uint64_t{77}, 2) == 0);
    CHECK(slurp(out3 / "results.csv") != results1);
  }
}

TEST_CASE("cmdRun exit codes") {
  TempDir dir("err");
  SUBCASE("invalid plan -> 1") {
    const auto plan = writePlan(dir, "bad.json",
                                R"({"algorithm":"ltcds-oracle","n":20,"k":10,"etaGrid":[3.0]})");
    CHECK(cmdRun(plan.string(), (dir.path / "out").string(), std::nullopt, 1) == 1);
  }
  SUBCASE("unreadable plan -> 1") {
    CHECK(cmdRun((dir.path / "missing.json").string(), (dir.path / "out").string(), std::nullopt,
                 1) == 1);
  }
  SUBCASE("not json -> 1") {
    const auto plan = writePlan(dir, "nope.json", "not a plan");
    CHECK(cmdRun(plan.string(), (dir.path / "out").string(), std::nullopt, 1) == 1);
  }
}

TEST_CASE("dump files appear when requested") {
  TempDir dir("dumps");
  const auto plan = writePlan(dir, "plan.json", R"({
    "algorithm": "ltcds-oracle",
    "n": 60, "k": 6,
    "etaGrid": [2.0], "subsetsPerEta": 5, "seeds": 1, "seed": 3,
    "dumps": {"graph": true, "storage": true, "distribution": true, "trace": true}
  })");
  const auto out = dir.path / "out";
  REQUIRE(cmdRun(plan.string(), out.string(), std::nullopt, 1) == 0);
  for (const char* f : {"results.csv", "manifest.json", "graph-edges.txt", "graph-positions.csv",
                        "storage.csv", "distribution.csv", "trace.csv"})
    CHECK_MESSAGE(fs::exists(out / f), f);

  // the storage dump round-trips through the decoder-facing reader
  std::ifstream is(out / "storage.csv");
  const auto rows = readStorageCsv(is);
  CHECK(rows.size() == 60);

  // trace rows carry the expected header
  CHECK(slurp(out / "trace.csv").rfind("round,nodeId,sourceId,hopCounter,event\n", 0) == 0);
}

TEST_CASE("estimate-hist command") {
  TempDir dir("hist");
  const auto plan = writePlan(dir, "plan.json", R"({
    "algorithm": "ltcds-estimated",
    "n": 60, "k": 6, "c2": 10,
    "etaGrid": [], "seeds": 2, "seed": 11
  })");
  const auto out = dir.path / "out";
  REQUIRE(cmdEstimateHist(plan.string(), out.string(), 2) == 0);
  const auto text = slurp(out / "estimates.csv");
  CHECK(text.rfind("nodeId,nHat,kHat,kSeen\n", 0) == 0);
  size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + 60 * 2);

  SUBCASE("empty plan -> 1") {
    const auto bad = writePlan(dir, "empty.json", "{}");
    CHECK(cmdEstimateHist(bad.string(), out.string(), 1) == 1);
  }
}

TEST_CASE("version string") {
  const std::string v = versionString();
  CHECK(v.find("fcds") != std::string::npos);
  CHECK(v.find('.') != std::string::npos);
}
