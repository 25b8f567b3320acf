#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "shockcop/error.hpp"
#include "shockcop/io.hpp"
#include "shockcop/shockmodel.hpp"

using namespace shockcop;

TEST_CASE("tagged distribution records") {
  CHECK(from_spec(parse_param_spec(json::parse(R"({"type":"exponential","rate":1.0,"shift":0.0})"))) ==
        exponential(1.0));
  CHECK(from_spec(parse_param_spec(json::parse(R"({"type":"pointmass","at":0.6931})"))) == point_mass(0.6931));
  CHECK(from_spec(parse_param_spec(json::parse(R"({"type":"discrete","atoms":[[1.0,0.5],[2.0,0.5]]})"))) ==
        discrete(std::vector<Atom>{{1.0, 0.5}, {2.0, 0.5}}));
  const DistFn pw = from_spec(parse_param_spec(json::parse(R"({
    "type":"piecewise","breakpoints":[0.0,1.0],"limits":[[0,0,0],[0.5,0.5,1]],
    "segments":[{"kind":"constant","value":0},{"kind":"affine","offset":0,"slope":0.5,"origin":0},
                {"kind":"constant","value":1}]})")));
  CHECK(pw(0.5) == doctest::Approx(0.25));
  CHECK(pw(1.0) == 0.5);
  CHECK(pw(1.5) == 1.0);
}

TEST_CASE("malformed records are configuration errors") {
  for (const char* bad : {R"({"rate":1})", R"({"type":"gamma"})", R"({"type":"exponential"})",
                          R"({"type":"exponential","rate":"fast"})", R"({"type":"discrete","atoms":[[1]]})",
                          R"([1,2])"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_param_spec(json::parse(bad)), ConfigError);
  }
}

TEST_CASE("p-boxes and scenarios") {
  const PBox p = parse_pbox(json::parse(R"({"lower":{"type":"exponential","rate":1},
                                            "upper":{"type":"exponential","rate":2}})"));
  CHECK(p.lower() == exponential(1.0));
  CHECK(parse_pbox(json::parse(R"({"type":"pointmass","at":1})")).is_precise());
  CHECK_THROWS_AS(parse_pbox(json::parse(R"({"lower":{"type":"exponential","rate":2},
                                             "upper":{"type":"exponential","rate":1}})")),
                  ConfigError);

  const Scenario s = parse_scenario(json::parse(R"({"model":"maxmin","x":{"type":"pointmass","at":1},
      "y":{"type":"pointmass","at":2},"z":{"type":"pointmass","at":0},"grid":11})"));
  CHECK(s.model == CopulaFamily::Maxmin);
  CHECK(s.grid == 11);
  CHECK(s.xy_grid == 200);
  CHECK_THROWS_AS(parse_scenario(json::parse(R"({"model":"gumbel","x":{},"y":{},"z":{}})")), ConfigError);
  CHECK_THROWS_AS(parse_scenario(json::parse(R"({"model":"marshall","x":{"type":"pointmass","at":1},
      "y":{"type":"pointmass","at":2},"z":{"type":"pointmass","at":0},"grid":1})")),
                  ConfigError);
  CHECK_THROWS_AS(parse_scenario(json::parse(R"({"model":"marshall","x":{"type":"pointmass","at":1},
      "y":{"type":"pointmass","at":2},"z":{"type":"discrete","atoms":[[0,0.5]]}})")),
                  ConfigError);
}

TEST_CASE("scenario files") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "shockcop_io_malformed.json";
  std::ofstream(path) << "{\"model\": ";
  CHECK_THROWS_AS(load_scenario(path), ConfigError);
  std::filesystem::remove(path);
  CHECK_NOTHROW(load_scenario(std::string(SCENARIO_DIR) + "/marshall_exp.json"));
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 0.6931471805599453, 1e-300, 123456789.0, -2.5, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number(-std::numeric_limits<double>::infinity()) == json("-inf"));
  CHECK(number(0.25) == json(0.25));
}

TEST_CASE("CSV layout") {
  const std::string s = to_csv({"u", "g"}, {{0.0, 0.5}, {0.5, 0.5}, {1.0, 1.0}});
  CHECK(s == "u,g\n0,0.5\n0.5,0.5\n1,1\n");
}

TEST_CASE("condition results serialize to the report schema") {
  const ConditionResult r{Condition::IC2, false, {Condition::IC2, {0.1, 0.2, 0.3, 0.4}, -0.5}};
  const json j = to_json(r);
  CHECK(j["condition"] == "IC2");
  CHECK(j["pass"] == false);
  CHECK(j["worst"]["u1"] == 0.1);
  CHECK(j["worst"]["v2"] == 0.4);
  CHECK(j["worst"]["value"] == -0.5);
  CHECK_FALSE(j["worst"].contains("condition"));
}

TEST_CASE("scenario reports carry both pairs and the extension probes") {
  const json j = to_json(run_scenario(load_scenario(std::string(SCENARIO_DIR) + "/d1_maxmin.json")));
  CHECK(j["model"] == "maxmin");
  CHECK(j["pass"] == true);
  CHECK(j["generators"].contains("chi_low"));
  CHECK(j["same_corner_pair"].contains("witnesses"));
  for (const char* g : {"phi_low", "phi_up", "chi_low", "chi_up"}) {
    REQUIRE(j["extension_probes"].contains(g));
    CHECK(j["extension_probes"][g]["gaps"] == 2);
  }
  CHECK_FALSE(j["extension_probes"]["phi_low"]["below"].empty());
  CHECK_FALSE(j["extension_probes"]["chi_low"]["above"].empty());
}

TEST_CASE("atomic writes leave no temporary behind") {
  const auto dir = std::filesystem::temp_directory_path() / "shockcop_io_atomic";
  std::filesystem::create_directories(dir);
  write_atomically(dir / "a.txt", "first");
  write_atomically(dir / "a.txt", "second");
  std::ifstream in(dir / "a.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "a.txt.tmp"));
  CHECK_THROWS_AS(write_atomically(dir / "missing" / "b.txt", "x"), ConfigError);
  std::filesystem::remove_all(dir);
}
