#include "doctest.h"
#include "oracles.hpp"

#include "vsweep/error.hpp"
#include "vsweep/volterra.hpp"

#include <cmath>
#include <random>

using namespace vsweep;

namespace {

GridSequence random_forcing(std::mt19937_64& rng, double h, std::size_t count) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GridSequence f{h, std::vector<double>(count)};
  for (double& v : f.values) v = u(rng);
  return f;
}

double sup_abs_diff(const GridSequence& a, const GridSequence& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < std::min(a.size(), b.size()); ++n) m = std::max(m, std::abs(a[n] - b[n]));
  return m;
}

}  // namespace

TEST_CASE("zero forcing and zero past give the zero solution") {
  const DiscreteKernel dk = discretize(KernelSpec::exponential(0.75), 0.05);
  const GridSequence z = solve_volterra(dk, GridSequence{0.05, std::vector<double>(101, 0.0)}, ScalarPast{}, 100);
  for (double v : z.values) CHECK(v == 0.0);
}

TEST_CASE("ramp past with zero forcing reproduces the initial layer") {
  const DiscreteKernel dk = discretize(KernelSpec::algebraic(4.0), 0.05);
  const GridSequence z =
      solve_volterra(dk, GridSequence{0.05, std::vector<double>(201, 0.0)}, ScalarPast::ramp(), 200);
  const GridSequence w = initial_layer(dk, 200);
  for (std::size_t n = 0; n <= 200; ++n) CHECK(z[n] == w[n]);
}

TEST_CASE("solution equals f + f * Q for random forcings") {
  std::mt19937_64 rng(7);
  for (const KernelSpec& k : {KernelSpec::exponential(0.75), KernelSpec::algebraic(4.0)}) {
    const double h = 0.01;
    const std::size_t N = 1500;
    const DiscreteKernel dk = discretize(k, h);
    const GridSequence q = compute_resolvent(dk, N);
    for (int trial = 0; trial < 3; ++trial) {
      const GridSequence f = random_forcing(rng, h, N + 1);
      const GridSequence z = solve_volterra(dk, f, ScalarPast{}, N);
      const GridSequence fq = convolve(f, q);
      GridSequence rep{h, f.values};
      for (std::size_t n = 0; n <= N; ++n) rep.values[n] += fq[n];
      CHECK(sup_abs_diff(z, rep) < 1e-10);
    }
  }
}

TEST_CASE("resolvent: base case, identity residual, positivity and Neumann series") {
  const double h = 0.1;
  const std::size_t N = 60;
  const DiscreteKernel dk = discretize(KernelSpec::exponential(0.75), h);
  const GridSequence q = compute_resolvent(dk, N);
  CHECK(q[0] == doctest::Approx(dk.weight(0) / dk.one_minus_hr0()).epsilon(1e-15));

  double residual = 0.0;
  for (std::size_t n = 0; n <= N; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += q[n - j] * dk.weight(j);
    residual = std::max(residual, std::abs(q[n] - h * acc - dk.weight(n)));
    CHECK(q[n] >= 0.0);
  }
  CHECK(residual < 1e-12);

  const std::vector<double> R(dk.weights().begin(), dk.weights().end());
  const std::vector<double> series = oracle::neumann_resolvent(R, h, N);
  for (std::size_t n = 0; n <= N; ++n) CHECK(q[n] == doctest::Approx(series[n]).epsilon(1e-11));
}

TEST_CASE("convolution identity, commutativity and grid checks") {
  std::mt19937_64 rng(11);
  const double h = 0.02;
  const GridSequence u = random_forcing(rng, h, 300);
  const GridSequence v = random_forcing(rng, h, 300);
  GridSequence delta{h, std::vector<double>(300, 0.0)};
  delta.values[0] = 1.0 / h;
  const GridSequence ud = convolve(u, delta);
  for (std::size_t n = 0; n < 300; ++n) CHECK(ud[n] == doctest::Approx(u[n]).epsilon(1e-14));

  const GridSequence uv = convolve(u, v);
  const GridSequence vu = convolve(v, u);
  CHECK(sup_abs_diff(uv, vu) < 1e-14);

  CHECK(convolve(u, GridSequence{h, std::vector<double>(10, 1.0)}).size() == 10);
  CHECK_THROWS_AS((void)convolve(u, GridSequence{2 * h, v.values}), Error);
}

TEST_CASE("self-convolution of sampled exponentials converges in L2 to eps^2 t e^{-eps t}") {
  const double eps = 0.75;
  const double T = 8.0;
  auto exact = [eps](double t) { return eps * eps * t * std::exp(-eps * t); };
  double prev = INFINITY;
  for (double h : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
    const auto count = static_cast<std::size_t>(std::llround(T / h)) + 1;
    const DiscreteKernel dk = discretize(KernelSpec::exponential(eps), h);
    GridSequence r{h, std::vector<double>(count)};
    for (std::size_t n = 0; n < count; ++n) r.values[n] = dk.weight(n);
    const GridSequence c = convolve(r, r);
    const double err = oracle::l2_piecewise_constant(c.values, h, T, exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("initial layer: W^0, positivity, conservation, uniformity") {
  const DiscreteKernel dk = discretize(KernelSpec::exponential(1.0), 0.1);
  const GridSequence w = initial_layer(dk, 200);
  CHECK(w[0] == doctest::Approx(oracle::kW0Eps1H01).epsilon(1e-10));
  CHECK(w[0] == doctest::Approx(moment(dk, 1) / dk.one_minus_hr0()).epsilon(1e-14));
  for (double v : w.values) CHECK(v >= 0.0);
  CHECK(conservation_residual(dk, w) < 1e-10);

  DiscretizeOptions unit;
  unit.renormalize = true;
  double prev_sup = 0.0;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    const DiscreteKernel a = discretize(KernelSpec::algebraic(4.0), h, unit);
    const GridSequence wa = initial_layer(a, static_cast<std::size_t>(std::llround(10.0 / h)));
    double sup = 0.0;
    for (double v : wa.values) {
      CHECK(v >= 0.0);
      sup = std::max(sup, v);
    }
    CHECK(conservation_residual(a, wa) < 1e-10);
    if (prev_sup > 0.0) CHECK(std::abs(sup - prev_sup) <= 0.1 * std::max(sup, prev_sup));
    prev_sup = sup;
  }
}

TEST_CASE("step too large is rejected") {
  const DiscreteKernel dk = DiscreteKernel::from_weights(1.0, {1.5, 0.1});
  CHECK_THROWS_AS((void)compute_resolvent(dk, 5), Error);
  try {
    (void)initial_layer(dk, 5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStepTooLarge);
  }
  const DiscreteKernel ok = discretize(KernelSpec::exponential(1.0), 0.1);
  CHECK_THROWS_AS((void)solve_volterra(ok, GridSequence{0.1, {0.0, 0.0}}, ScalarPast{}, 5), Error);
  CHECK_THROWS_AS((void)solve_volterra(ok, GridSequence{0.2, std::vector<double>(6)}, ScalarPast{}, 5), Error);
}

TEST_CASE("super-solution closed cases") {
  const DiscreteKernel dk = discretize(KernelSpec::exponential(0.75), 0.05);
  const std::size_t N = 100;
  const GridSequence w = initial_layer(dk, N);
  const double mu1 = moment(dk, 1);

  const GridSequence s0 = super_solution(dk, GridSequence{0.05, std::vector<double>(N + 1, 0.0)}, 0.3, w);
  for (double v : s0.values) CHECK(v == doctest::Approx(0.3).epsilon(1e-15));

  const double c = 0.7;
  const GridSequence sc = super_solution(dk, GridSequence{0.05, std::vector<double>(N + 1, c)}, 0.3, w);
  for (std::size_t n = 0; n <= N; ++n) {
    const double v = sc[n] - c / mu1 * w[n];
    CHECK(v == doctest::Approx(0.3 + c / mu1 * static_cast<double>(n + 1) * 0.05).epsilon(1e-12));
  }

  std::mt19937_64 rng(3);
  const GridSequence f = random_forcing(rng, 0.05, N + 1);
  const GridSequence lo = super_solution(dk, f, 0.1, w);
  const GridSequence hi = super_solution(dk, f, 0.2, w);
  for (std::size_t n = 0; n <= N; ++n) CHECK(hi[n] >= lo[n]);
}

TEST_CASE("comparison certificate") {
  {
    const DiscreteKernel dk = discretize(KernelSpec::exponential(0.75), 0.05);
    const BoundCertificate cert = check_comparison(dk, GridSequence{0.05, std::vector<double>(51, 0.0)}, ScalarPast{}, 50);
    CHECK(cert.valid());
    CHECK(cert.hypotheses_ok);
  }

  double prev = 0.0;
  for (double h : {0.02, 0.01, 0.005}) {
    const DiscreteKernel dk = discretize(KernelSpec::exponential(0.75), h);
    const auto N = static_cast<std::size_t>(std::llround(10.0 / h));
    const BoundCertificate cert =
        check_comparison(dk, GridSequence::sample(h, N + 1, [](double t) { return std::sin(t); }), ScalarPast{}, N);
    CHECK(cert.valid());
    const double smax = *std::max_element(cert.super_solution.values.begin(), cert.super_solution.values.end());
    if (prev > 0.0) CHECK(std::abs(smax - prev) <= 0.1 * std::max(smax, prev));
    prev = smax;
  }

  const DiscreteKernel alg = discretize(KernelSpec::algebraic(4.0), 0.02);
  const BoundCertificate ac =
      check_comparison(alg, GridSequence::sample(0.02, 501, [](double t) { return std::cos(3 * t); }),
                       ScalarPast::constant(0.5), 500);
  CHECK(ac.valid());
  CHECK(ac.hypotheses_ok);

  const DiscreteKernel rising = DiscreteKernel::from_weights(0.1, {1.0, 2.0, 3.0});
  const BoundCertificate rc = check_comparison(rising, GridSequence{0.1, std::vector<double>(11, 1.0)}, ScalarPast{}, 10);
  CHECK_FALSE(rc.hypotheses_ok);
  CHECK_FALSE(rc.warnings.empty());
}
