#include "doctest.h"

#include "vsweep/error.hpp"
#include "vsweep/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace vsweep;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("named scenarios round-trip through JSON") {
  for (const std::string& name : scenario_names()) {
    const ScenarioConfig c = named_scenario(name);
    CHECK(c.name == name);
    CHECK(parse_config(serialize_config(c)) == c);
  }
  ScenarioConfig t = named_scenario("circle-lissajous");
  t.kernel = KernelConfig{"tabulated", 0.75, 4.0, {0.0, 1.0, 2.0}, {1.0, 0.5, 0.0}, 1e-10, true};
  t.set.center = Path::tabulated({0.0, 1.0}, {Point{{0.0, 0.0}}, Point{{1.0, 1.0}}});
  CHECK(parse_config(serialize_config(t)) == t);
}

TEST_CASE("named scenario contents") {
  const ScenarioConfig circle = named_scenario("circle-lissajous");
  CHECK(circle.set.kind == "disk");
  CHECK(circle.set.radius == 0.5);
  CHECK(circle.kernel.epsilon == 0.75);
  CHECK(circle.h == 0.005);
  CHECK(circle.T == 9.0);
  CHECK(circle.set.center.at(1.0)[0] == doctest::Approx(2 * std::sin(1.0)));
  CHECK(circle.set.center.at(1.0)[1] == doctest::Approx(2 * std::sin(2.0)));

  const ScenarioConfig stadium = named_scenario("stadium-lissajous");
  CHECK(stadium.set.kind == "stadium");
  CHECK(stadium.set.radius == 0.3);
  CHECK(stadium.set.length == 0.72);
  CHECK(stadium.set.angle.scalar_at(0.5) == doctest::Approx(2.0));

  CHECK(named_scenario("stadium-lissajous-incompat").past == std::vector<double>{2.0, 0.0});
  CHECK_THROWS_AS((void)named_scenario("nope"), Error);
}

TEST_CASE("figure tags follow the compatibility of the past") {
  CHECK(figure_tag(named_scenario("circle-lissajous")) == "circle");
  CHECK(figure_tag(named_scenario("circle-lissajous-incompat")) == "circle-incompat");
  CHECK(figure_tag(named_scenario("stadium-lissajous")) == "stadium");
  CHECK(figure_tag(named_scenario("stadium-lissajous-incompat")) == "stadium-incompat");
  CHECK(past_compatible(named_scenario("circle-lissajous")));
  CHECK_FALSE(past_compatible(named_scenario("circle-lissajous-incompat")));
}

TEST_CASE("invalid configs are rejected") {
  const std::string good = serialize_config(named_scenario("circle-lissajous"));
  CHECK_NOTHROW((void)parse_config(good));
  CHECK(parse_error("{") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"name": "x", "bogus": 1})") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"time": {"h": 0, "T": 1}})") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"time": {"h": -0.1, "T": 1}})") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"time": {"h": "fast"}})") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"kernel": {"kind": "gaussian"}})") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"set": {"kind": "disk", "radius": -1}})") == ErrorCode::kInvalidConfig);
  CHECK(parse_error(R"({"past": {"kind": "constant", "value": [1, 2, 3]}})") == ErrorCode::kInvalidConfig);

  ScenarioConfig c = named_scenario("circle-lissajous");
  c.T = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("missing keys fall back to the defaults") {
  const ScenarioConfig c = parse_config(R"({"name": "mini", "time": {"h": 0.01, "T": 2}})");
  CHECK(c.name == "mini");
  CHECK(c.h == 0.01);
  CHECK(c.T == 2.0);
  CHECK(c.kernel == KernelConfig{});
}

TEST_CASE("load_config reads files and reports missing ones") {
  const auto dir = std::filesystem::temp_directory_path() / "vsweep_test_scenario";
  std::filesystem::create_directories(dir);
  const auto file = dir / "stadium.json";
  {
    std::ofstream out(file);
    out << serialize_config(named_scenario("stadium-lissajous"));
  }
  CHECK(load_config(file) == named_scenario("stadium-lissajous"));
  try {
    (void)load_config(dir / "missing.json");
    FAIL("expected an Error");
  } catch (const Error& e) {
    // An unreadable config is a bad argument, not an output failure.
    CHECK(e.code() == ErrorCode::kInvalidConfig);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("build_setup uses N = floor(T / h)") {
  const SimulationSetup s = build_setup(named_scenario("circle-lissajous"));
  CHECK(s.steps == 1800);
  CHECK(s.kernel->step() == 0.005);
  CHECK(build_setup(named_scenario("circle-lissajous"), 0.25).steps == 36);
  CHECK(step_count(9.0, 0.005) == 1800);
}

TEST_CASE("dyadic ranges") {
  const std::vector<double> r = parse_dyadic_range("2^-2..2^-8");
  REQUIRE(r.size() == 7);
  CHECK(r.front() == 0.25);
  CHECK(r.back() == std::ldexp(1.0, -8));
  CHECK(parse_dyadic_range("2^-10") == std::vector<double>{std::ldexp(1.0, -10)});
  CHECK(parse_dyadic_range("0.01") == std::vector<double>{0.01});
  CHECK_THROWS_AS((void)parse_dyadic_range("2^-8..2^-2x"), Error);
  CHECK_THROWS_AS((void)parse_dyadic_range("banana"), Error);
}
