#include "vsweep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vsweep {

namespace {

struct BodyFrame {
  double cx, cy, cos_a, sin_a;
};

BodyFrame stadium_frame(const Stadium& s, double t) {
  const Point c = s.center.at(t);
  const double a = s.angle.scalar_at(t);
  return {c[0], c[1], std::cos(a), std::sin(a)};
}

// Distance from a world point to the stadium core segment.
double segment_distance(const Stadium& s, const BodyFrame& f, const Point& x) {
  const double dx = x[0] - f.cx;
  const double dy = x[1] - f.cy;
  const double bx = f.cos_a * dx + f.sin_a * dy;
  const double by = -f.sin_a * dx + f.cos_a * dy;
  const double ex = std::max(std::abs(bx) - 0.5 * s.length, 0.0);
  return std::sqrt(ex * ex + by * by);
}

std::vector<Point> stadium_polyline(const Stadium& s, double t, int count) {
  const BodyFrame f = stadium_frame(s, t);
  const double half = 0.5 * s.length;
  const double r = s.radius;
  const double arc = std::numbers::pi * r;
  const double perimeter = 2.0 * s.length + 2.0 * arc;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    double u = perimeter * static_cast<double>(k) / count;
    double bx = 0.0;
    double by = 0.0;
    if (u < s.length) {  // bottom edge, left to right
      bx = -half + u;
      by = -r;
    } else if ((u -= s.length) < arc) {  // right cap
      const double th = -0.5 * std::numbers::pi + u / r;
      bx = half + r * std::cos(th);
      by = r * std::sin(th);
    } else if ((u -= arc) < s.length) {  // top edge, right to left
      bx = half - u;
      by = r;
    } else {  // left cap
      u -= s.length;
      const double th = 0.5 * std::numbers::pi + u / r;
      bx = -half + r * std::cos(th);
      by = r * std::sin(th);
    }
    Point p(2);
    p[0] = f.cx + f.cos_a * bx - f.sin_a * by;
    p[1] = f.cy + f.sin_a * bx + f.cos_a * by;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> implicit_polyline(const Implicit& imp, double t, int count) {
  const Point anchor = imp.anchor.at(t);
  if (!(imp.g(anchor, t) > 0.0)) throw Error(ErrorCode::kInvalidArgument, "implicit set anchor is not interior");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / count;
    Point u(2);
    u << std::cos(th), std::sin(th);
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (imp.g(anchor + hi * u, t) >= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++guard > 60) throw Error(ErrorCode::kUnsupported, "implicit set is unbounded along a ray");
    }
    for (int it = 0; it < 100 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (imp.g(anchor + mid * u, t) >= 0.0 ? lo : hi) = mid;
    }
    out.emplace_back(anchor + lo * u);
  }
  return out;
}

}  // namespace

ConstraintSet ConstraintSet::disk(Path center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "disk radius must be > 0");
  const int dim = center.dimension();
  return ConstraintSet(Disk{std::move(center), radius}, dim);
}

ConstraintSet ConstraintSet::stadium(Path center, Path angle, double length, double radius) {
  if (!(length > 0.0) || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "stadium length and radius must be > 0");
  }
  if (center.dimension() != 2) throw Error(ErrorCode::kUnsupported, "stadium sets are planar");
  if (angle.dimension() != 1) throw Error(ErrorCode::kInvalidArgument, "stadium angle path must be scalar");
  return ConstraintSet(Stadium{std::move(center), std::move(angle), length, radius}, 2);
}

ConstraintSet ConstraintSet::implicit(std::function<double(const Point&, double)> g, Path anchor) {
  if (!g) throw Error(ErrorCode::kInvalidArgument, "implicit set needs a function");
  const int dim = anchor.dimension();
  return ConstraintSet(Implicit{std::move(g), std::move(anchor)}, dim);
}

double ConstraintSet::evaluate(const Point& x, double t) const {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disk>) {
          return s.radius * s.radius - (x - s.center.at(t)).squaredNorm();
        } else if constexpr (std::is_same_v<S, Stadium>) {
          return s.radius - segment_distance(s, stadium_frame(s, t), x);
        } else {
          return s.g(x, t);
        }
      },
      variant_);
}

ScalarField ConstraintSet::field(double t) const {
  return std::visit(
      [t](const auto& s) -> ScalarField {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disk>) {
          return [c = s.center.at(t), r2 = s.radius * s.radius](const Point& x) { return r2 - (x - c).squaredNorm(); };
        } else if constexpr (std::is_same_v<S, Stadium>) {
          return [s, f = stadium_frame(s, t)](const Point& x) { return s.radius - segment_distance(s, f, x); };
        } else {
          return [g = s.g, t](const Point& x) { return g(x, t); };
        }
      },
      variant_);
}

double ConstraintSet::distance(const Point& x, double t) const {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disk>) {
          return std::max(0.0, (x - s.center.at(t)).norm() - s.radius);
        } else if constexpr (std::is_same_v<S, Stadium>) {
          return std::max(0.0, segment_distance(s, stadium_frame(s, t), x) - s.radius);
        } else {
          if (s.g(x, t) >= 0.0) return 0.0;
          return (project(*this, x, t).point - x).norm();
        }
      },
      variant_);
}

std::string_view ConstraintSet::kind_name() const {
  switch (variant_.index()) {
    case 0: return "disk";
    case 1: return "stadium";
    default: return "implicit";
  }
}

Point grad_fd(const ScalarField& g, const Point& p, double step, double min_norm) {
  Point grad(p.size());
  Point probe = p;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    probe[i] = p[i] + step;
    const double up = g(probe);
    probe[i] = p[i] - step;
    const double down = g(probe);
    probe[i] = p[i];
    grad[i] = (up - down) / (2.0 * step);
  }
  if (!(grad.norm() >= min_norm)) throw Error(ErrorCode::kDegenerateGradient, "gradient norm below threshold");
  return grad;
}

BoundaryPoint newton_to_boundary(const ScalarField& g, Point p0, const ProjectionOptions& options) {
  BoundaryPoint out{std::move(p0), 0, 0.0};
  for (;;) {
    out.residual = g(out.point);
    if (std::abs(out.residual) < options.tol) return out;
    if (out.iterations >= options.newton_max_iterations) {
      std::ostringstream msg;
      msg << "newton-to-boundary stalled at |g| = " << std::abs(out.residual) << " after " << out.iterations
          << " iterations";
      throw NoConvergenceError(msg.str(), out.point);
    }
    const Point grad = grad_fd(g, out.point, options.fd_step, options.min_gradient_norm);
    out.point -= (out.residual / grad.squaredNorm()) * grad;
    ++out.iterations;
  }
}

ProjectionResult refine_projection(const ScalarField& g, const Point& boundary_point, const Point& target,
                                   const ProjectionOptions& options) {
  ProjectionResult res;
  res.point = boundary_point;
  for (;;) {
    const Point grad = grad_fd(g, res.point, options.fd_step, options.min_gradient_norm);
    const Point d = res.point - target;
    const Point d_tau = d - (d.dot(grad) / grad.squaredNorm()) * grad;
    res.residual_tangential = d_tau.norm();
    if (res.residual_tangential < options.tol) {
      res.optimal = true;
      break;
    }
    if (res.iterations_refine >= options.refine_max_iterations) {
      res.optimal = false;
      break;
    }

    // Backtrack on alpha until the re-projected point is strictly closer to
    // the target, then keep halving while the distance keeps dropping.
    // Distances are compared through |q - t|^2 - |p - t|^2 = (q - p).(q + p - 2t),
    // which still resolves the second-order gains near convergence.
    double best_gain = 0.0;
    Point best;
    int newton_its = 0;
    double alpha = 1.0;
    for (int k = 0; k <= options.backtracking_halvings; ++k, alpha *= 0.5) {
      BoundaryPoint cand;
      try {
        cand = newton_to_boundary(g, res.point - alpha * d_tau, options);
      } catch (const Error&) {
        if (best.size() != 0) break;
        continue;
      }
      newton_its += cand.iterations;
      const double gain = (cand.point - res.point).dot(cand.point + res.point - 2.0 * target);
      if (gain < best_gain) {
        best_gain = gain;
        best = std::move(cand.point);
      } else if (best.size() != 0) {
        break;
      }
    }
    res.iterations_newton += newton_its;
    if (best.size() == 0) {
      res.optimal = false;
      break;
    }
    res.point = std::move(best);
    ++res.iterations_refine;
  }
  res.residual_g = g(res.point);
  return res;
}

ProjectionResult project_iterative(const ScalarField& g, const Point& x, const ProjectionOptions& options) {
  const double gx = g(x);
  if (gx >= 0.0) {
    ProjectionResult res;
    res.point = x;
    res.residual_g = gx;
    res.was_interior = true;
    return res;
  }
  const BoundaryPoint start = newton_to_boundary(g, x, options);
  ProjectionResult res = refine_projection(g, start.point, x, options);
  res.iterations_newton += start.iterations;
  return res;
}

Point project_onto_ball(const Point& center, double radius, const Point& x) {
  const Point d = x - center;
  const double n = d.norm();
  if (n <= radius) return x;
  return center + (radius / n) * d;
}

ProjectionResult project(const ConstraintSet& set, const Point& x, double t, const ProjectionOptions& options) {
  if (x.size() != set.dimension()) throw Error(ErrorCode::kInvalidArgument, "point and set dimensions differ");
  if (const auto* disk = std::get_if<Disk>(&set.variant())) {
    ProjectionResult res;
    const Point c = disk->center.at(t);
    const double gx = disk->radius * disk->radius - (x - c).squaredNorm();
    if (gx >= 0.0) {
      res.point = x;
      res.residual_g = gx;
      res.was_interior = true;
      return res;
    }
    res.point = project_onto_ball(c, disk->radius, x);
    res.residual_g = disk->radius * disk->radius - (res.point - c).squaredNorm();
    return res;
  }
  return project_iterative(set.field(t), x, options);
}

std::vector<Point> boundary_polyline(const ConstraintSet& set, double t, int count) {
  if (count < 3) throw Error(ErrorCode::kInvalidArgument, "polyline needs at least 3 points");
  if (set.dimension() != 2) throw Error(ErrorCode::kUnsupported, "boundary polylines are planar");
  return std::visit(
      [&](const auto& s) -> std::vector<Point> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disk>) {
          const Point c = s.center.at(t);
          std::vector<Point> out;
          out.reserve(static_cast<std::size_t>(count));
          for (int k = 0; k < count; ++k) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / count;
            Point p(2);
            p << c[0] + s.radius * std::cos(th), c[1] + s.radius * std::sin(th);
            out.push_back(std::move(p));
          }
          return out;
        } else if constexpr (std::is_same_v<S, Stadium>) {
          return stadium_polyline(s, t, count);
        } else {
          return implicit_polyline(s, t, count);
        }
      },
      set.variant());
}

double excess(const ConstraintSet& a, const ConstraintSet& b, double ta, double tb, int samples) {
  if (a.variant().index() != b.variant().index()) {
    throw Error(ErrorCode::kUnsupported, "excess between different set families");
  }
  if (const auto* da = std::get_if<Disk>(&a.variant())) {
    const auto& db = std::get<Disk>(b.variant());
    const double shift = (da->center.at(ta) - db.center.at(tb)).norm();
    return std::max(0.0, shift + da->radius - db.radius);
  }
  const std::vector<Point> pts = boundary_polyline(a, ta, samples);
  double worst = 0.0;
  for (const Point& p : pts) worst = std::max(worst, b.distance(p, tb));
  return worst;
}

}  // namespace vsweep
