#include "doctest.h"

#include "vsweep/error.hpp"
#include "vsweep/path.hpp"

#include <cmath>

using namespace vsweep;

namespace {
Point P(double x, double y) { return Point{{x, y}}; }
}  // namespace

TEST_CASE("constant and linear paths") {
  CHECK(Path::constant(P(1, 2)).at(5.0) == P(1, 2));
  CHECK(Path::constant_scalar(0.3).scalar_at(1.0) == 0.3);
  CHECK(Path::linear_scalar(0.0, 4.0).scalar_at(0.25) == 1.0);
  CHECK(Path::linear(P(1, 0), P(0, 2)).at(0.5) == P(1, 1));
  CHECK(Path().dimension() == 2);
}

TEST_CASE("lissajous path") {
  const Path c = Path::lissajous(P(2, 2), P(1, 2), P(0, 0));
  const double t = 0.7;
  CHECK(c.at(t)[0] == doctest::Approx(2 * std::sin(t)).epsilon(1e-15));
  CHECK(c.at(t)[1] == doctest::Approx(2 * std::sin(2 * t)).epsilon(1e-15));
  CHECK(c.at(0.0) == P(0, 0));
}

TEST_CASE("tabulated path interpolates and holds its end values") {
  const Path p = Path::tabulated({0.0, 1.0, 3.0}, {P(0, 0), P(1, 2), P(3, 2)});
  CHECK(p.at(-1.0) == P(0, 0));
  CHECK(p.at(0.5) == P(0.5, 1));
  CHECK(p.at(2.0) == P(2, 2));
  CHECK(p.at(10.0) == P(3, 2));
}

TEST_CASE("path validation") {
  CHECK_THROWS_AS((void)Path::tabulated({1.0, 0.0}, {P(0, 0), P(1, 1)}), Error);
  CHECK_THROWS_AS((void)Path::tabulated({0.0}, {P(0, 0), P(1, 1)}), Error);
  CHECK_THROWS_AS((void)Path::lissajous(P(1, 1), Point{{1.0}}, P(0, 0)), Error);
  CHECK_THROWS_AS((void)Path::linear(P(1, 1), Point{{1.0}}), Error);
}

TEST_CASE("path equality") {
  CHECK(Path::constant(P(1, 2)) == Path::constant(P(1, 2)));
  CHECK_FALSE(Path::constant(P(1, 2)) == Path::constant(P(1, 3)));
  CHECK_FALSE(Path::constant(P(0, 0)) == Path::linear(P(0, 0), P(0, 0)));
  CHECK(Path::linear_scalar(0, 4).kind_name() == "linear");
}
