#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vsweep {

/// rho(a) = epsilon * exp(-epsilon * a). Unit mass, mean age 1/epsilon.
struct ExponentialKernel {
  double epsilon{1.0};
};

/// rho(a) = (alpha - 1) * (1 + a)^(-alpha), normalized to unit mass (alpha > 1).
struct AlgebraicKernel {
  double alpha{4.0};
};

/// Arbitrary density supplied as a callable of the age a >= 0. The caller is
/// responsible for normalization; validate_hypotheses reports the mass.
struct TabulatedKernel {
  std::function<double(double)> density;
};

/// A continuous memory kernel: a non-negative density over ages a >= 0.
class KernelSpec {
 public:
  using Variant = std::variant<ExponentialKernel, AlgebraicKernel, TabulatedKernel>;

  static KernelSpec exponential(double epsilon);
  static KernelSpec algebraic(double alpha);
  static KernelSpec tabulated(std::function<double(double)> density);

  /// Linear interpolation through (age, density) samples, zero beyond the last age.
  static KernelSpec from_samples(std::vector<double> ages, std::vector<double> density);

  [[nodiscard]] double density(double age) const;

  /// (1/h) * integral of the density over [a0, a0 + h]. Closed form for the
  /// exponential and algebraic families, 5-point Gauss-Legendre otherwise.
  [[nodiscard]] double cell_average(double a0, double h) const;

  /// Exact continuous moment mu_k = int a^k rho(a) da, when known in closed form.
  [[nodiscard]] std::optional<double> exact_moment(int k) const;

  [[nodiscard]] std::string_view kind_name() const;
  [[nodiscard]] const Variant& variant() const noexcept { return variant_; }

 private:
  explicit KernelSpec(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// Quadrature weights R_j = (1/h) int_{jh}^{(j+1)h} rho(a) da for j = 0..J_max.
/// Immutable once built; share it through std::shared_ptr<const DiscreteKernel>.
class DiscreteKernel {
 public:
  DiscreteKernel(double h, std::vector<double> weights, double trunc_tol);

  /// Wraps raw weights without any checks beyond h > 0 and a non-empty list.
  /// Used for experiments outside the kernel hypotheses (e.g. increasing weights).
  static DiscreteKernel from_weights(double h, std::vector<double> weights);

  [[nodiscard]] double step() const noexcept { return h_; }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  /// Largest retained index J_max; weights beyond it are zero.
  [[nodiscard]] std::size_t truncation_index() const noexcept { return weights_.size() - 1; }
  [[nodiscard]] double weight(std::size_t j) const noexcept {
    return j < weights_.size() ? weights_[j] : 0.0;
  }
  [[nodiscard]] double trunc_tol() const noexcept { return trunc_tol_; }

  /// h * sum_j R_j over the retained weights.
  [[nodiscard]] double mass() const noexcept { return mass_; }
  /// h * sum_{j>=1} R_j, the normalizer of the averaged past position.
  [[nodiscard]] double history_mass() const noexcept { return history_mass_; }
  /// 1 - h R_0.
  [[nodiscard]] double one_minus_hr0() const noexcept { return 1.0 - h_ * weights_.front(); }

 private:
  double h_;
  std::vector<double> weights_;
  double trunc_tol_;
  double mass_{0.0};
  double history_mass_{0.0};
};

struct DiscretizeOptions {
  double trunc_tol{1e-12};
  /// Rescale the retained weights to unit discrete mass. Off by default: the
  /// sweeping average already divides by the retained history mass.
  bool renormalize{false};
  std::size_t max_weights{50'000'000};
};

DiscreteKernel discretize(const KernelSpec& kernel, double h, const DiscretizeOptions& options = {});

/// mu_{k,h} = h * sum_j (jh)^k R_j for k in {0, 1, 2}.
double moment(const DiscreteKernel& dk, int k);

struct RatioBound {
  /// max_{1<=j<=J} -(R_j - R_{j-1}) / (h R_j) over the positive prefix.
  double value{0.0};
  /// First index with R_j == 0, if any; the tail from there on is excluded.
  std::optional<std::size_t> first_zero;
};

RatioBound ratio_bound(const DiscreteKernel& dk);

struct KernelEstimate {
  /// h * sum_{j>=1} ((R_{j-1} - R_j)/h)^2 / R_j
  double value{0.0};
  std::size_t excluded{0};
};

KernelEstimate circular_kernel_estimate(const DiscreteKernel& dk);

struct ValidationOptions {
  double mass_tol{1e-6};
  /// Threshold on (1 + J_max h)^2 R_{J_max}, the weighted-decay surrogate.
  double weighted_decay_threshold{1e-3};
  /// Density samples per time step used for the continuous checks.
  int samples_per_step{4};
};

struct ValidationReport {
  bool non_negative{true};
  bool monotone{true};
  bool unit_mass{true};
  bool ratio_bound_finite{true};
  bool weighted_decay{true};

  double mass{0.0};
  double mass_deficit{0.0};
  double ratio_bound{0.0};
  double weighted_decay_value{0.0};
  std::vector<std::string> warnings;

  [[nodiscard]] bool all_passed() const noexcept {
    return non_negative && monotone && unit_mass && ratio_bound_finite && weighted_decay;
  }
};

ValidationReport validate_hypotheses(const KernelSpec& kernel, const DiscreteKernel& dk,
                                     const ValidationOptions& options = {});

}  // namespace vsweep
