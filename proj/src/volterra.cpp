#include "vsweep/volterra.hpp"

#include "vsweep/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vsweep {

namespace {

double checked_diagonal(const DiscreteKernel& dk) {
  const double a = dk.one_minus_hr0();
  if (!(a > 0.0)) {
    std::ostringstream msg;
    msg << "h R_0 = " << dk.step() * dk.weight(0) << " >= 1";
    throw Error(ErrorCode::kStepTooLarge, msg.str());
  }
  return a;
}

bool same_step(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// past_values[j] = past((-j) h) for j = 1..J; slot 0 unused.
std::vector<double> materialize_past(const DiscreteKernel& dk, const ScalarPast& past) {
  const std::size_t J = dk.truncation_index();
  std::vector<double> out(J + 1, 0.0);
  for (std::size_t j = 1; j <= J; ++j) out[j] = past.at(-static_cast<double>(j) * dk.step());
  return out;
}

}  // namespace

GridSequence GridSequence::sample(double h, std::size_t count, const std::function<double(double)>& f) {
  GridSequence g{h, std::vector<double>(count)};
  for (std::size_t n = 0; n < count; ++n) g.values[n] = f(static_cast<double>(n) * h);
  return g;
}

double ScalarPast::at(double t) const {
  return std::visit(
      [t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Constant>) {
          return p.value;
        } else if constexpr (std::is_same_v<P, Ramp>) {
          return -t;
        } else {
          return p.fn(t);
        }
      },
      variant_);
}

GridSequence solve_volterra(const DiscreteKernel& dk, const GridSequence& f, const ScalarPast& past, std::size_t N) {
  if (f.size() < N + 1) throw Error(ErrorCode::kInvalidArgument, "forcing shorter than N + 1 samples");
  if (!same_step(f.h, dk.step())) throw Error(ErrorCode::kInvalidArgument, "forcing and kernel steps differ");
  const double diag = checked_diagonal(dk);
  const double h = dk.step();
  const auto R = dk.weights();
  const std::size_t J = dk.truncation_index();
  const std::vector<double> pv = materialize_past(dk, past);

  GridSequence z{h, std::vector<double>(N + 1, 0.0)};
  for (std::size_t n = 0; n <= N; ++n) {
    double acc = 0.0;
    const std::size_t inner = std::min(n, J);
    for (std::size_t j = 1; j <= inner; ++j) acc += R[j] * z.values[n - j];
    for (std::size_t j = inner + 1; j <= J; ++j) acc += R[j] * pv[j - n];
    z.values[n] = (f[n] + h * acc) / diag;
  }
  return z;
}

GridSequence compute_resolvent(const DiscreteKernel& dk, std::size_t N) {
  const double diag = checked_diagonal(dk);
  const double h = dk.step();
  const auto R = dk.weights();
  const std::size_t J = dk.truncation_index();

  GridSequence q{h, std::vector<double>(N + 1, 0.0)};
  for (std::size_t n = 0; n <= N; ++n) {
    double acc = 0.0;
    const std::size_t inner = std::min(n, J);
    for (std::size_t j = 1; j <= inner; ++j) acc += R[j] * q.values[n - j];
    q.values[n] = (dk.weight(n) + h * acc) / diag;
  }
  return q;
}

GridSequence convolve(const GridSequence& u, const GridSequence& v) {
  if (!same_step(u.h, v.h)) throw Error(ErrorCode::kInvalidArgument, "convolution of sequences on different grids");
  const std::size_t len = std::min(u.size(), v.size());
  GridSequence out{u.h, std::vector<double>(len, 0.0)};
  for (std::size_t n = 0; n < len; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) acc += u.values[n - j] * v.values[j];
    out.values[n] = u.h * acc;
  }
  return out;
}

GridSequence initial_layer(const DiscreteKernel& dk, std::size_t N) {
  const GridSequence zero{dk.step(), std::vector<double>(N + 1, 0.0)};
  return solve_volterra(dk, zero, ScalarPast::ramp(), N);
}

double conservation_residual(const DiscreteKernel& dk, const GridSequence& w) {
  const double h = dk.step();
  const auto R = dk.weights();
  const std::size_t J = dk.truncation_index();
  double worst = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= J; ++j) {
      const double lagged =
          j <= n ? w.values[n - j] : -(static_cast<double>(n) - static_cast<double>(j)) * h;
      acc += (w.values[n] - lagged) * R[j];
    }
    worst = std::max(worst, std::abs(h * acc));
  }
  return worst;
}

GridSequence super_solution(const DiscreteKernel& dk, const GridSequence& f, double C, const GridSequence& w) {
  if (w.size() < f.size()) throw Error(ErrorCode::kInvalidArgument, "initial layer shorter than forcing");
  const double mu1 = moment(dk, 1);
  if (!(mu1 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "kernel has no positive first moment");
  const std::size_t len = f.size();
  const double h = dk.step();

  // Backward sweep: running[j] = max_{k >= j} |f^k|.
  std::vector<double> running(len, 0.0);
  double m = 0.0;
  for (std::size_t j = len; j-- > 0;) {
    m = std::max(m, std::abs(f.values[j]));
    running[j] = m;
  }
  const double fmax = len > 0 ? running[0] : 0.0;

  GridSequence s{h, std::vector<double>(len, 0.0)};
  double prefix = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    prefix += running[n];
    const double v = C + h * prefix / mu1;
    s.values[n] = fmax / mu1 * w.values[n] + v;
  }
  return s;
}

BoundCertificate check_comparison(const DiscreteKernel& dk, const GridSequence& f, const ScalarPast& past,
                                  std::size_t N) {
  BoundCertificate cert;
  const RatioBound rb = ratio_bound(dk);
  const auto R = dk.weights();
  for (std::size_t j = 1; j < R.size(); ++j) {
    if (R[j] > R[j - 1]) {
      cert.hypotheses_ok = false;
      cert.warnings.emplace_back("discrete kernel is not non-increasing");
      break;
    }
  }
  if (!std::isfinite(rb.value)) {
    cert.hypotheses_ok = false;
    cert.warnings.emplace_back("ratio bound is not finite");
  }

  cert.solution = solve_volterra(dk, f, past, N);
  const double h = dk.step();
  const std::size_t J = dk.truncation_index();
  const std::vector<double> pv = materialize_past(dk, past);

  cert.forcing_tilde = GridSequence{h, std::vector<double>(N + 1, 0.0)};
  for (std::size_t n = 0; n <= N; ++n) {
    double tail = 0.0;
    for (std::size_t j = n + 1; j <= J; ++j) tail += std::abs(pv[j - n]) * R[j];
    cert.forcing_tilde.values[n] = std::abs(f[n]) + h * tail;
  }

  const double z0 = std::abs(cert.solution[0]);
  cert.C = z0 + 1e-9 * (1.0 + z0);
  cert.initial_layer = initial_layer(dk, N);
  cert.super_solution = super_solution(dk, cert.forcing_tilde, cert.C, cert.initial_layer);

  cert.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= N; ++n) {
    cert.max_violation = std::max(cert.max_violation, std::abs(cert.solution[n]) - cert.super_solution[n]);
  }
  cert.w_max = *std::max_element(cert.initial_layer.values.begin(), cert.initial_layer.values.end());
  cert.conservation_residual = conservation_residual(dk, cert.initial_layer);
  return cert;
}

}  // namespace vsweep
