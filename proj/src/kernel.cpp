#include "vsweep/kernel.hpp"

#include "vsweep/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace vsweep {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGlNodes{-0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
                                         0.5384693101056830910363144, 0.9061798459386639927976269};
constexpr std::array<double, 5> kGlWeights{0.2369268850561890875142640, 0.4786286704993664680412915,
                                           0.5688888888888888888888889, 0.4786286704993664680412915,
                                           0.2369268850561890875142640};

template <class F>
double gauss_legendre_average(const F& f, double a0, double h, bool* saw_negative = nullptr) {
  const double mid = a0 + 0.5 * h;
  double acc = 0.0;
  for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
    const double v = f(mid + 0.5 * h * kGlNodes[i]);
    if (saw_negative != nullptr && v < 0.0) *saw_negative = true;
    acc += kGlWeights[i] * v;
  }
  return 0.5 * acc;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidKernel: return "invalid-kernel";
    case ErrorCode::kStepTooLarge: return "step-too-large";
    case ErrorCode::kDegenerateGradient: return "degenerate-gradient";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

KernelSpec KernelSpec::exponential(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, "exponential kernel needs epsilon > 0");
  }
  return KernelSpec(ExponentialKernel{epsilon});
}

KernelSpec KernelSpec::algebraic(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidArgument, "algebraic kernel needs alpha > 1");
  }
  return KernelSpec(AlgebraicKernel{alpha});
}

KernelSpec KernelSpec::tabulated(std::function<double(double)> density) {
  if (!density) throw Error(ErrorCode::kInvalidArgument, "tabulated kernel needs a density");
  return KernelSpec(TabulatedKernel{std::move(density)});
}

KernelSpec KernelSpec::from_samples(std::vector<double> ages, std::vector<double> density) {
  if (ages.size() < 2 || ages.size() != density.size()) {
    throw Error(ErrorCode::kInvalidArgument, "kernel samples need >= 2 matching (age, density) pairs");
  }
  if (!std::is_sorted(ages.begin(), ages.end()) || ages.front() != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "kernel sample ages must be sorted and start at 0");
  }
  return tabulated([ages = std::move(ages), density = std::move(density)](double a) {
    if (a < 0.0 || a > ages.back()) return 0.0;
    const auto it = std::upper_bound(ages.begin(), ages.end(), a);
    if (it == ages.end()) return density.back();
    const auto i = static_cast<std::size_t>(it - ages.begin());
    const double w = (a - ages[i - 1]) / (ages[i] - ages[i - 1]);
    return (1.0 - w) * density[i - 1] + w * density[i];
  });
}

double KernelSpec::density(double age) const {
  if (age < 0.0) return 0.0;
  return std::visit(
      [age](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ExponentialKernel>) {
          return k.epsilon * std::exp(-k.epsilon * age);
        } else if constexpr (std::is_same_v<K, AlgebraicKernel>) {
          return (k.alpha - 1.0) * std::pow(1.0 + age, -k.alpha);
        } else {
          return k.density(age);
        }
      },
      variant_);
}

double KernelSpec::cell_average(double a0, double h) const {
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ExponentialKernel>) {
          return std::exp(-k.epsilon * a0) * (-std::expm1(-k.epsilon * h)) / h;
        } else if constexpr (std::is_same_v<K, AlgebraicKernel>) {
          // (1+a0)^(1-alpha) - (1+a0+h)^(1-alpha), written to avoid cancellation.
          const double base = 1.0 + a0;
          return std::pow(base, 1.0 - k.alpha) * (-std::expm1((1.0 - k.alpha) * std::log1p(h / base))) / h;
        } else {
          return gauss_legendre_average(k.density, a0, h);
        }
      },
      variant_);
}

std::optional<double> KernelSpec::exact_moment(int k) const {
  if (k < 0) return std::nullopt;
  if (const auto* e = std::get_if<ExponentialKernel>(&variant_)) {
    double m = 1.0;
    for (int i = 1; i <= k; ++i) m *= static_cast<double>(i) / e->epsilon;
    return m;
  }
  if (const auto* alg = std::get_if<AlgebraicKernel>(&variant_)) {
    const double a = alg->alpha;
    switch (k) {
      case 0: return 1.0;
      case 1: return a > 2.0 ? std::optional<double>(1.0 / (a - 2.0)) : std::nullopt;
      case 2:
        return a > 3.0 ? std::optional<double>((a - 1.0) / (a - 3.0) - 2.0 * (a - 1.0) / (a - 2.0) + 1.0)
                       : std::nullopt;
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string_view KernelSpec::kind_name() const {
  switch (variant_.index()) {
    case 0: return "exponential";
    case 1: return "algebraic";
    default: return "tabulated";
  }
}

DiscreteKernel::DiscreteKernel(double h, std::vector<double> weights, double trunc_tol)
    : h_(h), weights_(std::move(weights)), trunc_tol_(trunc_tol) {
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw Error(ErrorCode::kInvalidArgument, "time step must be > 0");
  if (weights_.empty()) throw Error(ErrorCode::kInvalidArgument, "discrete kernel needs at least one weight");
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kInvalidKernel, "non-finite kernel weight");
  }
  const double tail = std::accumulate(weights_.begin() + 1, weights_.end(), 0.0);
  history_mass_ = h_ * tail;
  mass_ = h_ * (weights_.front() + tail);
}

DiscreteKernel DiscreteKernel::from_weights(double h, std::vector<double> weights) {
  return DiscreteKernel(h, std::move(weights), 0.0);
}

DiscreteKernel discretize(const KernelSpec& kernel, double h, const DiscretizeOptions& options) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::kInvalidArgument, "time step must be > 0");
  if (!(options.trunc_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "trunc_tol must be > 0");

  const auto* tab = std::get_if<TabulatedKernel>(&kernel.variant());
  std::vector<double> weights;
  for (std::size_t j = 0;; ++j) {
    if (j >= options.max_weights) {
      throw Error(ErrorCode::kInvalidKernel, "kernel weights never drop below trunc_tol");
    }
    const double a0 = static_cast<double>(j) * h;
    double r = 0.0;
    if (tab != nullptr) {
      bool negative = false;
      r = gauss_legendre_average(tab->density, a0, h, &negative);
      if (negative) {
        std::ostringstream msg;
        msg << "negative density sample in cell " << j;
        throw Error(ErrorCode::kInvalidKernel, msg.str());
      }
    } else {
      r = kernel.cell_average(a0, h);
    }
    if (!std::isfinite(r) || r < 0.0) throw Error(ErrorCode::kInvalidKernel, "invalid kernel weight");
    weights.push_back(r);
    if (r < options.trunc_tol) break;
  }

  if (options.renormalize) {
    const double mass = h * std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(mass > 0.0)) throw Error(ErrorCode::kInvalidKernel, "kernel has zero mass");
    for (double& w : weights) w /= mass;
  }
  return DiscreteKernel(h, std::move(weights), options.trunc_tol);
}

double moment(const DiscreteKernel& dk, int k) {
  if (k < 0 || k > 2) throw Error(ErrorCode::kInvalidArgument, "moment order must be 0, 1 or 2");
  const double h = dk.step();
  const auto w = dk.weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double age = static_cast<double>(j) * h;
    acc += (k == 0 ? 1.0 : (k == 1 ? age : age * age)) * w[j];
  }
  return h * acc;
}

RatioBound ratio_bound(const DiscreteKernel& dk) {
  RatioBound out;
  const double h = dk.step();
  const auto w = dk.weights();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < w.size(); ++j) {
    if (w[j] == 0.0) {
      out.first_zero = j;
      break;
    }
    best = std::max(best, (w[j - 1] - w[j]) / (h * w[j]));
  }
  out.value = std::isfinite(best) ? best : 0.0;
  return out;
}

KernelEstimate circular_kernel_estimate(const DiscreteKernel& dk) {
  KernelEstimate out;
  const double h = dk.step();
  const auto w = dk.weights();
  for (std::size_t j = 1; j < w.size(); ++j) {
    if (!(w[j] > 0.0)) {
      ++out.excluded;
      continue;
    }
    const double slope = (w[j - 1] - w[j]) / h;
    out.value += h * slope * slope / w[j];
  }
  return out;
}

ValidationReport validate_hypotheses(const KernelSpec& kernel, const DiscreteKernel& dk,
                                     const ValidationOptions& options) {
  ValidationReport report;
  const auto w = dk.weights();
  const double h = dk.step();
  const std::size_t jmax = dk.truncation_index();

  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] < 0.0) report.non_negative = false;
    if (j > 0 && w[j] > w[j - 1]) report.monotone = false;
  }

  // Continuous checks on a sample grid covering the retained support.
  const int per_step = std::max(1, options.samples_per_step);
  const std::size_t n_samples = (jmax + 1) * static_cast<std::size_t>(per_step);
  double prev = kernel.density(0.0);
  if (prev < 0.0) report.non_negative = false;
  for (std::size_t i = 1; i <= n_samples; ++i) {
    const double a = static_cast<double>(i) * h / per_step;
    const double v = kernel.density(a);
    if (v < 0.0) report.non_negative = false;
    if (v > prev * (1.0 + 1e-12) + 1e-300) report.monotone = false;
    prev = v;
  }

  report.mass = dk.mass();
  report.mass_deficit = 1.0 - dk.mass();
  report.unit_mass = std::abs(report.mass_deficit) <= options.mass_tol;

  const RatioBound rb = ratio_bound(dk);
  report.ratio_bound = rb.value;
  report.ratio_bound_finite = std::isfinite(rb.value);

  const double span = 1.0 + static_cast<double>(jmax) * h;
  report.weighted_decay_value = span * span * w[jmax];
  report.weighted_decay = report.weighted_decay_value < options.weighted_decay_threshold;

  if (!report.non_negative) report.warnings.emplace_back("kernel takes negative values");
  if (!report.monotone) report.warnings.emplace_back("kernel is not non-increasing");
  if (!report.unit_mass) {
    std::ostringstream msg;
    msg << "discrete mass " << report.mass << " differs from 1";
    report.warnings.push_back(msg.str());
  }
  if (!report.ratio_bound_finite) report.warnings.emplace_back("ratio bound is not finite");
  if (!report.weighted_decay) report.warnings.emplace_back("(1+a)^2 rho(a) does not decay at the truncation age");
  return report;
}

}  // namespace vsweep
