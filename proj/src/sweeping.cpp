#include "vsweep/sweeping.hpp"

#include "vsweep/diagnostics.hpp"

#include <cmath>

namespace vsweep {

Point VectorPast::at(double t) const {
  if (const auto* c = std::get_if<Constant>(&variant_)) return c->value;
  return std::get<Function>(variant_).fn(t);
}

int VectorPast::dimension() const {
  if (const auto* c = std::get_if<Constant>(&variant_)) return static_cast<int>(c->value.size());
  return std::get<Function>(variant_).dimension;
}

namespace {

std::size_t window_size(const std::shared_ptr<const DiscreteKernel>& kernel) {
  if (!kernel) throw Error(ErrorCode::kInvalidArgument, "sweep state needs a kernel");
  if (kernel->truncation_index() < 1) {
    throw Error(ErrorCode::kInvalidKernel, "kernel keeps no weight beyond j = 0; the average is undefined");
  }
  return kernel->truncation_index();
}

}  // namespace

SweepState::SweepState(std::shared_ptr<const DiscreteKernel> kernel, VectorPast past)
    : kernel_(std::move(kernel)), past_(std::move(past)), history_(past_.dimension(), window_size(kernel_)) {
  const auto w = kernel_->weights();
  for (std::size_t j = 1; j < w.size(); ++j) retained_weight_ += w[j];
  if (!(retained_weight_ > 0.0)) throw Error(ErrorCode::kInvalidKernel, "history weights sum to zero");
  reset();
}

void SweepState::reset() {
  history_.fill([this](double t) { return past_.at(t); }, kernel_->step());
}

Point SweepState::weighted_average() const {
  const int d = history_.dimension();
  Point acc = Point::Zero(d);
  const auto w = kernel_->weights();
  history_.for_each_lag([&](std::size_t j, const double* x) {
    const double r = w[j];
    for (int i = 0; i < d; ++i) acc[i] += r * x[i];
  });
  return acc / retained_weight_;
}

void SweepState::commit(const Point& xn) {
  if (xn.size() != history_.dimension()) throw Error(ErrorCode::kInvalidArgument, "position has the wrong dimension");
  history_.push(xn);
}

StepRecord step(SweepState& state, const ConstraintSet& set, const ProjectionOptions& options) {
  if (set.dimension() != state.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "constraint set and state differ in dimension");
  }
  StepRecord rec;
  rec.n = state.step_index();
  rec.t = state.time();
  rec.xbar = state.weighted_average();

  ProjectionResult pr = project(set, rec.xbar, rec.t, options);
  rec.x = std::move(pr.point);
  rec.active = !pr.was_interior;
  rec.iterations_newton = pr.iterations_newton;
  rec.iterations_refine = pr.iterations_refine;
  rec.projection_optimal = pr.optimal;
  rec.lag = (rec.xbar - rec.x).norm();

  const StepQuantities q = measure_step(state.history(), state.kernel(), rec.x);
  rec.energy = q.energy;
  rec.dissipation = q.dissipation;
  rec.kernel_gradient = q.kernel_gradient;

  state.commit(rec.x);
  return rec;
}

Trajectory simulate(const SimulationSetup& setup) {
  SweepState state(setup.kernel, setup.past);
  Trajectory traj;
  traj.h = setup.kernel->step();
  traj.dimension = state.dimension();
  traj.steps.reserve(setup.steps + 1);
  for (std::size_t n = 0; n <= setup.steps; ++n) {
    try {
      traj.steps.push_back(step(state, setup.set, setup.projection));
    } catch (const Error& e) {
      throw SimulationError(e.code(), "step " + std::to_string(n) + ": " + e.what(), n, std::move(traj));
    }
  }
  return traj;
}

std::size_t step_count(double T, double h) {
  if (!(h > 0.0) || !(T > 0.0)) throw Error(ErrorCode::kInvalidArgument, "T and h must be positive");
  return static_cast<std::size_t>(std::floor(T / h + 1e-9));
}

}  // namespace vsweep
