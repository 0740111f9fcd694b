#pragma once

#include "vsweep/geometry.hpp"
#include "vsweep/history.hpp"
#include "vsweep/kernel.hpp"
#include "vsweep/sweeping.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace vsweep {

/// E_n(W) = (h/2) sum_{j>=1} R_j |W - X^{n-j}|^2 over the window.
double energy(const HistoryRing& window, const DiscreteKernel& dk, const Point& w);

/// D_n = (h/2) sum_{j>=1} (R_j - R_{j+1}) |X^n - X^{n-j}|^2 with R_{J+1} = 0.
double dissipation(const HistoryRing& window, const DiscreteKernel& dk, const Point& xn);

struct StepQuantities {
  double energy{0.0};
  double dissipation{0.0};
  double kernel_gradient{0.0};
};

/// energy, dissipation and sum_j (R_{j-1} - R_j)|X^n - X^{n-j}| in one pass.
StepQuantities measure_step(const HistoryRing& window, const DiscreteKernel& dk, const Point& xn);

struct EnergyAudit {
  std::vector<double> energy;       // E_n(X^n), n = 0..N
  std::vector<double> dissipation;  // D_n, n = 0..N
  std::vector<double> excess_term;  // e_n = e(C^n, C^{n+1})^2 / h, n = 0..N-1
  double lhs{0.0};                  // E_N + sum_{n<N} D_n
  double rhs{0.0};                  // e^{2T} (E_0 + sum_{n<N} e_n)
  std::size_t negative_dissipation_steps{0};
  /// sum_{p=0..N} h (sum_j (R_{j-1} - R_j)|X^p - X^{p-j}|)^2
  double dissipation_sum{0.0};
  /// e_n came from sampled boundaries rather than a closed form.
  bool estimated{false};
  bool passed{false};
};

/// Checks E_N + sum D_n <= e^{2T} (E_0 + sum e_n) with relative slack 1e-9
/// and D_n >= 0 at every step. T = N h.
EnergyAudit energy_audit(const Trajectory& traj, const ConstraintSet& set, const DiscreteKernel& dk,
                         int excess_samples = 4096);

struct LagAudit {
  double max_lag{0.0};
  /// max_n |X̄^n - X^n|^2 - 2 E_n / (1 - h R_0)
  double max_violation{0.0};
  [[nodiscard]] bool passed(double slack = 1e-12) const noexcept { return max_violation <= slack; }
};

LagAudit lag_audit(const Trajectory& traj, const DiscreteKernel& dk);

struct ProjectionStepProduct {
  double max_scaled{0.0};  // max_n -<dP, dX> / h^2
  double l2{0.0};          // (sum_n h (<dP, dX> / h)^2)^{1/2}
};

/// Products of the increments of P^n = X̄^n - X^n and X^n over consecutive steps.
ProjectionStepProduct projection_step_product(const Trajectory& traj);

/// sqrt(h sum_{k=1..N} |z^h(hk) - z^ref(hk)|^2), reference read at the shared grid times.
double l2_error(const Trajectory& coarse, const Trajectory& reference);

/// Least-squares slope of log(error) against log(h).
double fit_slope(const std::vector<double>& h, const std::vector<double>& error);

struct ConvergenceRow {
  double h{0.0};
  double error{0.0};
  ProjectionStepProduct product;
};

struct ConvergenceTable {
  std::string scenario;
  double h_ref{0.0};
  std::vector<ConvergenceRow> rows;  // h strictly decreasing
  double slope{0.0};
  std::vector<Trajectory> runs;  // aligned with rows
  Trajectory reference;
};

/// Simulates at every h and at h_ref, then tabulates L2 errors against the
/// reference. Runs are independent and execute concurrently when `parallel`.
ConvergenceTable convergence_study(const std::string& scenario,
                                   const std::function<SimulationSetup(double)>& make_setup,
                                   std::vector<double> h_list, double h_ref, bool parallel = true);

}  // namespace vsweep
