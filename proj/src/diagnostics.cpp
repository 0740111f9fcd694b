#include "vsweep/diagnostics.hpp"

#include "vsweep/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

namespace vsweep {

namespace {

double squared_distance(const Point& xn, const double* x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < xn.size(); ++i) {
    const double d = xn[i] - x[i];
    s += d * d;
  }
  return s;
}

void require_dimension(const HistoryRing& window, const Point& p) {
  if (p.size() != window.dimension()) throw Error(ErrorCode::kInvalidArgument, "point and window differ in dimension");
}

}  // namespace

double energy(const HistoryRing& window, const DiscreteKernel& dk, const Point& w) {
  require_dimension(window, w);
  double acc = 0.0;
  window.for_each_lag([&](std::size_t j, const double* x) { acc += dk.weight(j) * squared_distance(w, x); });
  return 0.5 * dk.step() * acc;
}

double dissipation(const HistoryRing& window, const DiscreteKernel& dk, const Point& xn) {
  require_dimension(window, xn);
  double acc = 0.0;
  window.for_each_lag([&](std::size_t j, const double* x) {
    acc += (dk.weight(j) - dk.weight(j + 1)) * squared_distance(xn, x);
  });
  return 0.5 * dk.step() * acc;
}

StepQuantities measure_step(const HistoryRing& window, const DiscreteKernel& dk, const Point& xn) {
  require_dimension(window, xn);
  double e = 0.0;
  double d = 0.0;
  double g = 0.0;
  const auto w = dk.weights();
  const std::size_t J = w.size();
  window.for_each_lag([&](std::size_t j, const double* x) {
    if (j >= J) return;  // zero weight beyond the truncation index
    const double r = w[j];
    const double next = j + 1 < J ? w[j + 1] : 0.0;
    const double s = squared_distance(xn, x);
    e += r * s;
    d += (r - next) * s;
    g += (w[j - 1] - r) * std::sqrt(s);
  });
  const double half_h = 0.5 * dk.step();
  return {half_h * e, half_h * d, g};
}

EnergyAudit energy_audit(const Trajectory& traj, const ConstraintSet& set, const DiscreteKernel& dk,
                         int excess_samples) {
  if (traj.size() < 1) throw Error(ErrorCode::kInvalidArgument, "energy audit needs a non-empty trajectory");
  EnergyAudit audit;
  const std::size_t N = traj.size() - 1;
  const double h = dk.step();
  audit.estimated = !std::holds_alternative<Disk>(set.variant());

  audit.energy.reserve(N + 1);
  audit.dissipation.reserve(N + 1);
  for (const StepRecord& rec : traj.steps) {
    audit.energy.push_back(rec.energy);
    audit.dissipation.push_back(rec.dissipation);
    if (rec.dissipation < 0.0) ++audit.negative_dissipation_steps;
    audit.dissipation_sum += h * rec.kernel_gradient * rec.kernel_gradient;
  }

  double excess_total = 0.0;
  audit.excess_term.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double e = excess(set, set, traj[n].t, traj[n + 1].t, excess_samples);
    audit.excess_term.push_back(e * e / h);
    excess_total += audit.excess_term.back();
  }

  double dissipated = 0.0;
  for (std::size_t n = 0; n < N; ++n) dissipated += audit.dissipation[n];
  audit.lhs = audit.energy[N] + dissipated;
  const double growth = std::exp(2.0 * static_cast<double>(N) * h);
  audit.rhs = growth * (audit.energy[0] + excess_total);
  audit.passed = audit.negative_dissipation_steps == 0 && audit.lhs <= audit.rhs * (1.0 + 1e-9);
  return audit;
}

LagAudit lag_audit(const Trajectory& traj, const DiscreteKernel& dk) {
  LagAudit out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  const double denom = dk.one_minus_hr0();
  for (const StepRecord& rec : traj.steps) {
    out.max_lag = std::max(out.max_lag, rec.lag);
    out.max_violation = std::max(out.max_violation, rec.lag * rec.lag - 2.0 * rec.energy / denom);
  }
  if (traj.steps.empty()) out.max_violation = 0.0;
  return out;
}

ProjectionStepProduct projection_step_product(const Trajectory& traj) {
  if (traj.size() < 2) throw Error(ErrorCode::kInvalidArgument, "projection-step product needs two steps");
  const double h = traj.h;
  ProjectionStepProduct out;
  out.max_scaled = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  Point p_prev = traj[0].displacement();
  for (std::size_t n = 0; n + 1 < traj.size(); ++n) {
    Point p_next = traj[n + 1].displacement();
    const double s = (p_next - p_prev).dot(traj[n + 1].x - traj[n].x);
    out.max_scaled = std::max(out.max_scaled, -s / (h * h));
    sum += h * (s / h) * (s / h);
    p_prev = std::move(p_next);
  }
  out.l2 = std::sqrt(sum);
  return out;
}

double l2_error(const Trajectory& coarse, const Trajectory& reference) {
  if (coarse.dimension != reference.dimension) {
    throw Error(ErrorCode::kInvalidArgument, "trajectories differ in dimension");
  }
  if (!(coarse.h > 0.0) || !(reference.h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "steps must be positive");
  const double ratio = coarse.h / reference.h;
  const double stride_f = std::round(ratio);
  if (stride_f < 1.0 || std::abs(ratio - stride_f) > 1e-9 * ratio) {
    throw Error(ErrorCode::kInvalidArgument, "reference step does not divide the coarse step");
  }
  const auto stride = static_cast<std::size_t>(stride_f);
  if (coarse.size() == 0) return 0.0;
  const std::size_t N = coarse.size() - 1;
  if (N * stride >= reference.size()) {
    throw Error(ErrorCode::kInvalidArgument, "reference trajectory is shorter than the coarse one");
  }
  double sum = 0.0;
  for (std::size_t k = 1; k <= N; ++k) sum += (coarse[k].x - reference[k * stride].x).squaredNorm();
  return std::sqrt(coarse.h * sum);
}

double fit_slope(const std::vector<double>& h, const std::vector<double>& error) {
  if (h.size() != error.size() || h.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "slope fit needs at least two matching samples");
  }
  const auto n = static_cast<double>(h.size());
  std::vector<double> lx(h.size());
  std::vector<double> ly(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "slope fit needs positive data");
    lx[i] = std::log(h[i]);
    ly[i] = std::log(error[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw Error(ErrorCode::kInvalidArgument, "slope fit needs distinct steps");
  return sxy / sxx;
}

ConvergenceTable convergence_study(const std::string& scenario,
                                   const std::function<SimulationSetup(double)>& make_setup,
                                   std::vector<double> h_list, double h_ref, bool parallel) {
  if (h_list.empty()) throw Error(ErrorCode::kInvalidArgument, "convergence study needs at least one step");
  std::sort(h_list.begin(), h_list.end(), std::greater<>());
  if (std::adjacent_find(h_list.begin(), h_list.end()) != h_list.end()) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate step in the sweep");
  }
  for (double h : h_list) {
    const double ratio = h / h_ref;
    if (!(h_ref > 0.0) || ratio < 1.0 || std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
      throw Error(ErrorCode::kInvalidArgument, "reference step must divide every step of the sweep");
    }
  }

  // Setups are built sequentially; only the simulations run concurrently.
  std::vector<SimulationSetup> setups;
  setups.reserve(h_list.size() + 1);
  setups.push_back(make_setup(h_ref));
  for (double h : h_list) setups.push_back(make_setup(h));

  const auto policy = parallel ? std::launch::async : std::launch::deferred;
  std::vector<std::future<Trajectory>> futures;
  futures.reserve(setups.size());
  for (const SimulationSetup& s : setups) futures.push_back(std::async(policy, [&s] { return simulate(s); }));

  ConvergenceTable table;
  table.scenario = scenario;
  table.h_ref = h_ref;
  table.reference = futures[0].get();
  std::vector<double> errors;
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    Trajectory run = futures[i + 1].get();
    ConvergenceRow row;
    row.h = h_list[i];
    row.error = l2_error(run, table.reference);
    row.product = projection_step_product(run);
    errors.push_back(row.error);
    table.rows.push_back(row);
    table.runs.push_back(std::move(run));
  }
  table.slope = h_list.size() >= 2 ? fit_slope(h_list, errors) : 0.0;
  return table;
}

}  // namespace vsweep
