#pragma once

#include "vsweep/error.hpp"
#include "vsweep/geometry.hpp"
#include "vsweep/history.hpp"
#include "vsweep/kernel.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace vsweep {

/// Prescribed positions X_p(t) for t < 0.
class VectorPast {
 public:
  struct Constant {
    Point value;
  };
  struct Function {
    std::function<Point(double)> fn;
    int dimension{2};
  };

  static VectorPast constant(Point value) { return VectorPast(Constant{std::move(value)}); }
  static VectorPast function(std::function<Point(double)> fn, int dimension) {
    return VectorPast(Function{std::move(fn), dimension});
  }

  [[nodiscard]] Point at(double t) const;
  [[nodiscard]] int dimension() const;
  [[nodiscard]] const std::variant<Constant, Function>& variant() const noexcept { return variant_; }

 private:
  explicit VectorPast(std::variant<Constant, Function> v) : variant_(std::move(v)) {}
  std::variant<Constant, Function> variant_;
};

/// One accepted step of the scheme.
struct StepRecord {
  std::size_t n{0};
  double t{0.0};
  Point x;
  Point xbar;
  double lag{0.0};          // |xbar - x|
  double energy{0.0};       // E_n(X^n)
  double dissipation{0.0};  // D_n
  /// sum_{j>=1} (R_{j-1} - R_j) |X^n - X^{n-j}|; its squares, weighted by h, sum to a bounded total.
  double kernel_gradient{0.0};
  bool active{false};  // projection moved the averaged point
  int iterations_newton{0};
  int iterations_refine{0};
  bool projection_optimal{true};

  /// P^n = X̄^n - X^n. Equals lambda^n grad phi_n(X^n) / (1 - h R_0).
  [[nodiscard]] Point displacement() const { return xbar - x; }
};

struct Trajectory {
  double h{0.0};
  int dimension{0};
  std::vector<StepRecord> steps;

  [[nodiscard]] std::size_t size() const noexcept { return steps.size(); }
  [[nodiscard]] const StepRecord& operator[](std::size_t n) const { return steps[n]; }
};

/// Mutable state of one delayed sweeping run: the kernel, the window of the
/// last J_max positions and the step counter. Single owner.
class SweepState {
 public:
  SweepState(std::shared_ptr<const DiscreteKernel> kernel, VectorPast past);

  /// X̄^n = sum_{j=1..J} R_j X^{n-j} / sum_{j=1..J} R_j.
  [[nodiscard]] Point weighted_average() const;

  /// Stores X^n and advances to step n + 1.
  void commit(const Point& xn);
  /// Back to step 0 with the window refilled from the past condition.
  void reset();

  [[nodiscard]] std::size_t step_index() const noexcept { return history_.step_index(); }
  [[nodiscard]] double time() const noexcept { return static_cast<double>(step_index()) * kernel_->step(); }
  [[nodiscard]] const HistoryRing& history() const noexcept { return history_; }
  [[nodiscard]] const DiscreteKernel& kernel() const noexcept { return *kernel_; }
  [[nodiscard]] const std::shared_ptr<const DiscreteKernel>& kernel_ptr() const noexcept { return kernel_; }
  [[nodiscard]] const VectorPast& past() const noexcept { return past_; }
  [[nodiscard]] int dimension() const noexcept { return history_.dimension(); }

 private:
  std::shared_ptr<const DiscreteKernel> kernel_;
  VectorPast past_;
  HistoryRing history_;
  double retained_weight_{0.0};  // sum_{j>=1} R_j
};

/// Advances one step: X^n = P_{C(t_n)}(X̄^n), then records energy and
/// dissipation against the window before it rotates.
StepRecord step(SweepState& state, const ConstraintSet& set, const ProjectionOptions& options = {});

struct SimulationSetup {
  std::shared_ptr<const DiscreteKernel> kernel;
  ConstraintSet set;
  VectorPast past;
  std::size_t steps{0};  // N; the run covers n = 0..N
  ProjectionOptions projection;
};

/// Raised when a step fails; carries the step index and the records so far.
class SimulationError : public Error {
 public:
  SimulationError(ErrorCode code, const std::string& message, std::size_t step, Trajectory partial)
      : Error(code, message), step_(step), partial_(std::move(partial)) {}
  [[nodiscard]] std::size_t step() const noexcept { return step_; }
  [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

 private:
  std::size_t step_;
  Trajectory partial_;
};

/// Runs n = 0..N. Deterministic for identical setups.
Trajectory simulate(const SimulationSetup& setup);

/// N = floor(T / h), tolerant to T / h landing just below an integer.
std::size_t step_count(double T, double h);

}  // namespace vsweep
