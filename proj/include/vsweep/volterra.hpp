#pragma once

#include "vsweep/kernel.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace vsweep {

/// Scalar samples on the grid t_n = n h, n = 0..size()-1.
struct GridSequence {
  double h{1.0};
  std::vector<double> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] double operator[](std::size_t n) const { return values[n]; }
  [[nodiscard]] double time(std::size_t n) const noexcept { return static_cast<double>(n) * h; }

  static GridSequence sample(double h, std::size_t count, const std::function<double(double)>& f);
};

/// History of a scalar Volterra unknown for negative times.
class ScalarPast {
 public:
  struct Constant {
    double value{0.0};
  };
  /// Z(t) = -t, i.e. Z^n = -n h: the initial-layer past.
  struct Ramp {};
  struct Function {
    std::function<double(double)> fn;
  };

  ScalarPast() : variant_(Constant{}) {}
  static ScalarPast constant(double v) { return ScalarPast(Constant{v}); }
  static ScalarPast ramp() { return ScalarPast(Ramp{}); }
  static ScalarPast function(std::function<double(double)> fn) { return ScalarPast(Function{std::move(fn)}); }

  [[nodiscard]] double at(double t) const;

 private:
  using Variant = std::variant<Constant, Ramp, Function>;
  explicit ScalarPast(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// Solves Z^n - h sum_{j>=0} Z^{n-j} R_j = f^n for n = 0..N by forward
/// recursion; lags reaching before t = 0 read the past condition.
GridSequence solve_volterra(const DiscreteKernel& dk, const GridSequence& f, const ScalarPast& past, std::size_t N);

/// Resolvent Q with Q_n - h sum_{j=0}^n Q_{n-j} R_j = R_n, n = 0..N.
GridSequence compute_resolvent(const DiscreteKernel& dk, std::size_t N);

/// Causal convolution (U * V)_n = h sum_{j=0}^n U_{n-j} V_j over the shorter length.
GridSequence convolve(const GridSequence& u, const GridSequence& v);

/// Initial-layer corrector: homogeneous equation with ramp past W^n = -n h.
GridSequence initial_layer(const DiscreteKernel& dk, std::size_t N);

/// max_n |h sum_{j>=0} (W^n - W^{n-j}) R_j| with the ramp past; zero when the
/// discrete mass is exactly one.
double conservation_residual(const DiscreteKernel& dk, const GridSequence& w);

/// S^n = (|f|_inf / mu_{1,h}) W^n + V^n with
/// V^n = C + (1/mu_{1,h}) h sum_{j=0}^n max_{k>=j} |f^k|.
GridSequence super_solution(const DiscreteKernel& dk, const GridSequence& f, double C, const GridSequence& w);

struct BoundCertificate {
  GridSequence solution;        // Z
  GridSequence forcing_tilde;   // |f^n| + h sum_{j>n} |Z^{n-j}| R_j
  GridSequence super_solution;  // S built from forcing_tilde
  GridSequence initial_layer;   // W
  double C{0.0};
  double max_violation{0.0};  // max_n (|Z^n| - S^n)
  double w_max{0.0};
  double conservation_residual{0.0};
  bool hypotheses_ok{true};
  std::vector<std::string> warnings;

  [[nodiscard]] bool valid(double tol = 0.0) const noexcept { return max_violation <= tol; }
};

/// Builds Z, the effective forcing that absorbs the past, and the matching
/// super-solution; reports whether |Z^n| <= S^n holds on 0..N.
BoundCertificate check_comparison(const DiscreteKernel& dk, const GridSequence& f, const ScalarPast& past,
                                  std::size_t N);

}  // namespace vsweep
