#include "doctest.h"
#include "oracles.hpp"

#include "vsweep/diagnostics.hpp"
#include "vsweep/error.hpp"
#include "vsweep/kernel.hpp"

#include <cmath>

using namespace vsweep;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("exponential R_0 matches the high-precision value") {
  const DiscreteKernel dk = discretize(KernelSpec::exponential(0.75), 0.005);
  CHECK(dk.weight(0) == doctest::Approx(oracle::kR0Eps075H0005).epsilon(1e-14));
}

TEST_CASE("exponential weights form a geometric sequence with ratio e^{eps h}") {
  const DiscreteKernel dk = discretize(KernelSpec::exponential(1.0), 0.1);
  const auto w = dk.weights();
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    CHECK(w[j] / w[j + 1] == doctest::Approx(std::exp(0.1)).epsilon(1e-12));
  }
  CHECK(dk.mass() <= 1.0);
  CHECK(dk.mass() >= 1.0 - 1e-10);
}

TEST_CASE("closed-form weights equal quadrature cell averages") {
  for (double eps : {0.5, 0.75, 2.0}) {
    const KernelSpec k = KernelSpec::exponential(eps);
    const double h = 0.05;
    const DiscreteKernel dk = discretize(k, h);
    for (std::size_t j : {0u, 1u, 7u, 100u}) {
      const double ref = oracle::cell_average_simpson(
          [eps](long double a) { return static_cast<long double>(eps) * std::exp(-static_cast<long double>(eps) * a); },
          static_cast<double>(j) * h, h);
      CHECK(dk.weight(j) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
  const KernelSpec alg = KernelSpec::algebraic(4.0);
  for (std::size_t j : {0u, 3u, 50u}) {
    const double ref = oracle::cell_average_simpson(
        [](long double a) { return 3.0L * std::pow(1.0L + a, -4.0L); }, static_cast<double>(j) * 0.1, 0.1);
    CHECK(alg.cell_average(static_cast<double>(j) * 0.1, 0.1) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("weights are non-increasing for monotone kernels and truncation stops below tol") {
  for (const KernelSpec& k : {KernelSpec::exponential(0.75), KernelSpec::algebraic(4.0),
                              KernelSpec::tabulated([](double a) { return a < 2.0 ? 0.5 : 0.0; })}) {
    DiscretizeOptions opt;
    opt.trunc_tol = 1e-9;
    const DiscreteKernel dk = discretize(k, 0.01, opt);
    const auto w = dk.weights();
    for (std::size_t j = 1; j < w.size(); ++j) CHECK(w[j] <= w[j - 1]);
    CHECK(w.back() < 1e-9);
    for (std::size_t j = 0; j + 1 < w.size(); ++j) CHECK(w[j] >= 1e-9);
  }
}

TEST_CASE("discretize is deterministic") {
  const DiscreteKernel a = discretize(KernelSpec::algebraic(3.5), 0.02);
  const DiscreteKernel b = discretize(KernelSpec::algebraic(3.5), 0.02);
  REQUIRE(a.weights().size() == b.weights().size());
  for (std::size_t j = 0; j < a.weights().size(); ++j) CHECK(a.weights()[j] == b.weights()[j]);
}

TEST_CASE("discretize rejects bad arguments and negative kernels") {
  const KernelSpec k = KernelSpec::exponential(1.0);
  CHECK(code_of([&] { (void)discretize(k, 0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { (void)discretize(k, -0.1); }) == ErrorCode::kInvalidArgument);
  DiscretizeOptions bad;
  bad.trunc_tol = 0.0;
  CHECK(code_of([&] { (void)discretize(k, 0.1, bad); }) == ErrorCode::kInvalidArgument);
  const KernelSpec neg = KernelSpec::tabulated([](double a) { return a < 1.0 ? 1.5 : -0.1; });
  CHECK(code_of([&] { (void)discretize(neg, 0.1); }) == ErrorCode::kInvalidKernel);
  CHECK(code_of([] { (void)KernelSpec::exponential(0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { (void)KernelSpec::algebraic(1.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("renormalized kernels carry unit mass") {
  DiscretizeOptions opt;
  opt.renormalize = true;
  const DiscreteKernel dk = discretize(KernelSpec::algebraic(4.0), 0.1, opt);
  CHECK(dk.mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("discrete moments") {
  const DiscreteKernel dk = discretize(KernelSpec::exponential(1.0), 0.1);
  // The truncated tail (R_j < 1e-12 beyond a = 27) shifts mu_1 by ~3e-11.
  CHECK(moment(dk, 1) == doctest::Approx(oracle::kMu1Eps1H01).epsilon(1e-10));
  CHECK(moment(dk, 0) == doctest::Approx(dk.mass()).epsilon(1e-15));
  CHECK_THROWS_AS((void)moment(dk, 3), Error);
  CHECK_THROWS_AS((void)moment(dk, -1), Error);

  // A single cell of height 1/h has mass exactly one.
  CHECK(moment(DiscreteKernel::from_weights(0.5, {2.0}), 0) == 1.0);

  // mu_{1,h} = h e^{-h} / (1 - e^{-h}) tends to mu_1 = 1.
  double prev = 1.0;
  for (double h : {0.2, 0.1, 0.05, 0.025}) {
    const double gap = std::abs(moment(discretize(KernelSpec::exponential(1.0), h), 1) - 1.0);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("moment errors stay under C_k h int (1+a)^{k-1} rho and decay at first order") {
  const KernelSpec k = KernelSpec::exponential(1.0);
  // int rho = 1 and int (1 + a) rho = 1 + mu_1 = 2.
  const double weight[3] = {0.0, 1.0, 2.0};
  const double C[3] = {0.0, 1.0, 3.0};
  for (int order : {1, 2}) {
    std::vector<double> hs;
    std::vector<double> errs;
    for (double h : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
      const double err = std::abs(*k.exact_moment(order) - moment(discretize(k, h), order));
      CHECK(err <= C[order] * h * weight[order]);
      hs.push_back(h);
      errs.push_back(err);
    }
    const double slope = fit_slope(hs, errs);
    CHECK(slope >= 0.8);
    CHECK(slope <= 1.2);
  }
}

TEST_CASE("ratio bound") {
  for (double h : {0.1, 0.01}) {
    const RatioBound rb = ratio_bound(discretize(KernelSpec::exponential(0.75), h));
    CHECK(rb.value == doctest::Approx(std::expm1(0.75 * h) / h).epsilon(1e-9));
    CHECK_FALSE(rb.first_zero.has_value());
  }
  CHECK(ratio_bound(DiscreteKernel::from_weights(0.1, {2.0, 2.0, 2.0, 2.0})).value == 0.0);

  // Sample-grid maximum of -rho'/rho = alpha/(1+a) is alpha, attained at a = 0.
  double sup = 0.0;
  for (int i = 0; i <= 100000; ++i) sup = std::max(sup, 4.0 / (1.0 + i * 1e-3));
  const RatioBound alg = ratio_bound(discretize(KernelSpec::algebraic(4.0), 0.01));
  CHECK(std::isfinite(alg.value));
  CHECK(alg.value <= 2.0 * sup);

  const RatioBound cut = ratio_bound(DiscreteKernel::from_weights(0.1, {3.0, 2.0, 0.0, 0.0}));
  REQUIRE(cut.first_zero.has_value());
  CHECK(*cut.first_zero == 2);
  CHECK(cut.value == doctest::Approx(5.0));
}

TEST_CASE("circular kernel estimate") {
  const double a = circular_kernel_estimate(discretize(KernelSpec::exponential(0.75), 0.01)).value;
  const double b = circular_kernel_estimate(discretize(KernelSpec::exponential(0.75), 0.005)).value;
  CHECK(std::abs(a - b) <= 0.1 * std::max(a, b));
  CHECK(circular_kernel_estimate(DiscreteKernel::from_weights(0.1, {1.0, 1.0, 1.0})).value == 0.0);
  const KernelEstimate alg = circular_kernel_estimate(discretize(KernelSpec::algebraic(4.0), 0.01));
  CHECK(std::isfinite(alg.value));
  CHECK(alg.excluded == 0);
  CHECK(circular_kernel_estimate(DiscreteKernel::from_weights(0.1, {3.0, 1.0, 0.0})).excluded == 1);
}

TEST_CASE("hypothesis validation") {
  const KernelSpec e = KernelSpec::exponential(0.75);
  const ValidationReport ok = validate_hypotheses(e, discretize(e, 0.01));
  CHECK(ok.all_passed());
  CHECK(ok.warnings.empty());

  const KernelSpec bump = KernelSpec::from_samples({0.0, 1.0, 2.0, 4.0}, {0.2, 0.2, 0.6, 0.0});
  const ValidationReport bad = validate_hypotheses(bump, discretize(bump, 0.05));
  CHECK_FALSE(bad.monotone);
  CHECK_FALSE(bad.all_passed());
  CHECK_FALSE(bad.warnings.empty());

  const KernelSpec alg = KernelSpec::algebraic(4.0);
  const ValidationReport ar = validate_hypotheses(alg, discretize(alg, 0.05));
  CHECK(ar.weighted_decay);
  CHECK(ar.monotone);
  CHECK(ar.non_negative);
}
