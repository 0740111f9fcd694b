#include "doctest.h"

#include "vsweep/history.hpp"

using namespace vsweep;

namespace {
Point P(double x, double y) { return Point{{x, y}}; }
}  // namespace

TEST_CASE("fill places X^{-j} at lag j") {
  HistoryRing ring(2, 4);
  ring.fill([](double t) { return P(t, -t); }, 0.5);
  CHECK(ring.step_index() == 0);
  for (std::size_t j = 1; j <= 4; ++j) {
    CHECK(ring.lag(j)[0] == -0.5 * static_cast<double>(j));
    CHECK(ring.lag(j)[1] == 0.5 * static_cast<double>(j));
  }
}

TEST_CASE("push shifts every lag by one and drops the oldest") {
  HistoryRing ring(2, 3);
  ring.fill([](double t) { return P(t, 0); }, 1.0);
  for (int n = 0; n < 7; ++n) {
    ring.push(P(100 + n, 0));
    CHECK(ring.step_index() == static_cast<std::size_t>(n + 1));
    for (std::size_t j = 1; j <= 3; ++j) {
      const double expected = n + 1 - static_cast<int>(j) >= 0 ? 100.0 + n + 1 - static_cast<double>(j)
                                                               : static_cast<double>(n + 1) - static_cast<double>(j);
      CHECK(ring.lag(j)[0] == expected);
    }
  }
}

TEST_CASE("for_each_lag visits lags in increasing order") {
  HistoryRing ring(1, 5);
  ring.fill([](double t) { return Point::Constant(1, t); }, 1.0);
  ring.push(Point::Constant(1, 42.0));
  std::vector<std::size_t> js;
  std::vector<double> xs;
  ring.for_each_lag([&](std::size_t j, const double* x) {
    js.push_back(j);
    xs.push_back(*x);
  });
  CHECK(js == std::vector<std::size_t>{1, 2, 3, 4, 5});
  CHECK(xs == std::vector<double>{42.0, -1.0, -2.0, -3.0, -4.0});
}

TEST_CASE("fill resets the step counter") {
  HistoryRing ring(2, 2);
  ring.fill([](double) { return P(0, 0); }, 0.1);
  ring.push(P(1, 1));
  ring.fill([](double) { return P(3, 3); }, 0.1);
  CHECK(ring.step_index() == 0);
  CHECK(ring.lag(1) == P(3, 3));
  CHECK(ring.capacity() == 2);
  CHECK(ring.dimension() == 2);
}
