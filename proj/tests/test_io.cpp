#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "geodot/io.hpp"
#include "geodot/scenario.hpp"
#include "geodot/svg.hpp"
#include "oracles.hpp"

using geodot::Error;
using geodot::Point;
using geodot::Status;
namespace fs = std::filesystem;
namespace io = geodot::io;
namespace measures = geodot::measures;
namespace scenarios = geodot::scenarios;

TEST_CASE("formatted doubles survive the round trip bit for bit") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456789.123456789, -0.0, 2.5e300}) {
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("csv measures parse, serialize, and validate") {
  SUBCASE("single row") {
    const auto m = io::measure_from_csv("0,0,1.0\n");
    REQUIRE(m.size() == 1);
    CHECK(m.points[0] == Point{0.0, 0.0});
    CHECK(m.weights[0] == 1.0);
  }
  SUBCASE("round trip preserves every bit") {
    geodot::SplitMix64 rng(19);
    const auto m = oracles::uniform_square(7, rng);
    const auto back = io::measure_from_csv(io::measure_to_csv(m));
    CHECK(back.points == m.points);
    CHECK(back.weights == m.weights);
  }
  SUBCASE("weight sum off by 0.1 is a normalization error") {
    try {
      io::measure_from_csv("0,0,0.5\n1,1,0.4\n");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Status::NotNormalized);
    }
  }
  SUBCASE("ragged rows are a dimension error") {
    CHECK_THROWS_AS(io::measure_from_csv("0,0,0.5\n1,0.5\n"), Error);
  }
  SUBCASE("garbage fields are a parse error") {
    try {
      io::measure_from_csv("0,zero,1.0\n");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Status::Parse);
    }
  }
}

TEST_CASE("json measures round trip") {
  geodot::SplitMix64 rng(20);
  const auto m = oracles::uniform_square(5, rng);
  const auto back = io::measure_from_json(io::measure_to_json(m));
  CHECK(back.points == m.points);
  CHECK(back.weights == m.weights);
  CHECK_THROWS_AS(io::measure_from_json(io::json::object()), Error);
}

TEST_CASE("measure files round trip through disk in both formats") {
  geodot::SplitMix64 rng(21);
  const auto m = oracles::uniform_square(6, rng);
  const fs::path dir = "io_test_files";
  fs::create_directories(dir);
  for (const std::string format : {"csv", "json"}) {
    const std::string path = (dir / ("m." + format)).string();
    io::write_measure(m, path, format);
    const auto back = io::read_measure(path, format);
    CHECK(back.points == m.points);
    CHECK(back.weights == m.weights);
  }
  CHECK_THROWS_AS(io::read_measure((dir / "missing.csv").string(), "csv"), Error);
  CHECK_THROWS_AS(io::read_measure((dir / "m.csv").string(), "tsv"), Error);
  fs::remove_all(dir);
}

TEST_CASE("plan serialization carries entries, marginals, and cost") {
  geodot::ot::TransportPlan plan;
  plan.mu0_weights = {0.5, 0.5};
  plan.mu1_weights = {0.5, 0.5};
  plan.entries = {{0, 0, 0.5}, {1, 1, 0.5}};
  const auto j = io::plan_to_json(plan, 1.25);
  CHECK(j.at("cost").get<double>() == 1.25);
  CHECK(j.at("entries").size() == 2);
  CHECK(j.at("entries")[0][0].get<std::size_t>() == 0);

  const std::string csv = io::plan_to_csv(plan);
  CHECK(csv.find("0,0,0.5") != std::string::npos);
  CHECK(csv.find("1,1,0.5") != std::string::npos);
}

TEST_CASE("svg plots contain their series and labels") {
  io::PlotSeries series;
  series.label = "delta";
  series.points = {{1.5, 0.0588}, {2.0, 0.0385}, {4.0, 0.0122}};
  const std::string svg =
      io::render_plot({series}, io::PlotKind::Line, "lower bound", "C", "delta(C)");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("lower bound") != std::string::npos);
  CHECK(svg.find("delta(C)") != std::string::npos);
  CHECK(svg.find("delta") != std::string::npos);
  CHECK_THROWS_AS(io::render_plot({}, io::PlotKind::Line, "t", "x", "y"), Error);
}

TEST_CASE("scenario registry lists the seven runners with descriptions") {
  const auto& all = scenarios::list_scenarios();
  REQUIRE(all.size() == 7);
  std::vector<std::string> names;
  for (const auto& s : all) {
    names.push_back(s.name);
    CHECK(!s.description.empty());
  }
  for (const std::string expect :
       {"map-vs-split", "uniqueness-probe", "restriction-monotone", "delta-table",
        "comparison-geometry", "chart-distortion", "witness-reenactment"}) {
    CHECK(std::find(names.begin(), names.end(), expect) != names.end());
  }
}

TEST_CASE("scenario reports are deterministic for a fixed seed") {
  const fs::path dir = "io_test_scenario";
  fs::remove_all(dir);
  io::json config = {
      {"scenario", "map-vs-split"},
      {"seed", 9},
      {"out_dir", dir.string()},
      {"space", {{"type", "euclidean"}, {"dimension", 2}}},
      {"mu0", {{"sample", "box"}, {"n", 10}, {"lo", {0.0, 0.0}}, {"hi", {1.0, 1.0}}}},
      {"mu1", {{"sample", "box"}, {"n", 10}, {"lo", {0.0, 0.0}}, {"hi", {1.0, 1.0}}}},
  };

  const auto first = scenarios::run_scenario(config);
  CHECK(first.exit_code == 0);
  const std::string bytes1 = io::read_text_file((dir / "report.json").string());
  CHECK(fs::exists(dir / "meta.json"));
  CHECK(fs::exists(dir / "mu0.csv"));
  CHECK(fs::exists(dir / "plan.csv"));

  const auto second = scenarios::run_scenario(config);
  const std::string bytes2 = io::read_text_file((dir / "report.json").string());
  CHECK(bytes1 == bytes2);

  // Timestamps live in meta.json only, and never in the report.
  CHECK(bytes1.find("generated_at") == std::string::npos);
  const auto meta = io::json::parse(io::read_text_file((dir / "meta.json").string()));
  CHECK(meta.contains("generated_at"));

  SUBCASE("a different seed changes the report") {
    config["seed"] = 10;
    config["out_dir"] = (dir / "other").string();
    scenarios::run_scenario(config);
    const std::string other =
        io::read_text_file((dir / "other" / "report.json").string());
    CHECK(other != bytes1);
  }
  SUBCASE("moving the output directory changes nothing but its echo") {
    config["out_dir"] = (dir / "moved").string();
    scenarios::run_scenario(config);
    auto a = io::json::parse(bytes1);
    auto b = io::json::parse(io::read_text_file((dir / "moved" / "report.json").string()));
    a["config"].erase("out_dir");
    b["config"].erase("out_dir");
    CHECK(a.dump() == b.dump());
  }
  fs::remove_all(dir);
}

TEST_CASE("scenario exit codes distinguish findings from errors") {
  const fs::path dir = "io_test_exit";
  fs::remove_all(dir);

  SUBCASE("clean run exits 0") {
    io::json config = {{"scenario", "delta-table"},
                       {"out_dir", (dir / "d0").string()},
                       {"C_list", {1.5, 2.0}}};
    CHECK(scenarios::run_scenario(config).exit_code == 0);
  }
  SUBCASE("failed expectation exits 2") {
    // A generic diffuse instance solves to a map, so expecting a split
    // verdict is a negative finding, not an error.
    io::json config = {
        {"scenario", "map-vs-split"},
        {"seed", 3},
        {"out_dir", (dir / "d1").string()},
        {"space", {{"type", "euclidean"}, {"dimension", 2}}},
        {"mu0", {{"sample", "box"}, {"n", 8}, {"lo", {0.0, 0.0}}, {"hi", {1.0, 1.0}}}},
        {"mu1", {{"sample", "box"}, {"n", 8}, {"lo", {0.0, 0.0}}, {"hi", {1.0, 1.0}}}},
        {"expect", {{"verdict", "split"}}},
    };
    const auto outcome = scenarios::run_scenario(config);
    CHECK(outcome.exit_code == 2);
    CHECK(outcome.report.at("results").at("verdict").get<std::string>() == "map");
  }
  SUBCASE("unknown scenario names are an error") {
    try {
      scenarios::run_scenario({{"scenario", "zeta-table"}, {"out_dir", (dir / "d2").string()}});
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Status::UnknownScenario);
    }
  }
  fs::remove_all(dir);
}
