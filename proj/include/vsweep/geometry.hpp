#pragma once

#include "vsweep/error.hpp"
#include "vsweep/path.hpp"

#include <functional>
#include <string_view>
#include <variant>
#include <vector>

namespace vsweep {

/// Scalar field x -> g(x) at a frozen time; g > 0 strictly inside the set.
using ScalarField = std::function<double(const Point&)>;

/// Closed ball {|x - c(t)| <= radius}, g = radius^2 - |x - c|^2.
struct Disk {
  Path center;
  double radius{1.0};
};

/// Planar capsule: in body coordinates the points within `radius` of the
/// segment |x1| <= length/2, x2 = 0, i.e. g = r - sqrt(max(|x1| - length/2, 0)^2 + x2^2).
/// The body frame is the world frame translated by center(t) and rotated
/// counter-clockwise by angle(t).
struct Stadium {
  Path center;
  Path angle;
  double length{1.0};
  double radius{1.0};
};

/// Superlevel set {g(x, t) >= 0} of a function concave in x. `anchor` is a
/// path of interior points used to trace the boundary.
struct Implicit {
  std::function<double(const Point&, double)> g;
  Path anchor;
};

class ConstraintSet {
 public:
  using Variant = std::variant<Disk, Stadium, Implicit>;

  static ConstraintSet disk(Path center, double radius);
  static ConstraintSet stadium(Path center, Path angle, double length, double radius);
  static ConstraintSet implicit(std::function<double(const Point&, double)> g, Path anchor);

  [[nodiscard]] double evaluate(const Point& x, double t) const;
  [[nodiscard]] ScalarField field(double t) const;
  /// Euclidean distance from x to the set (zero inside).
  [[nodiscard]] double distance(const Point& x, double t) const;
  [[nodiscard]] int dimension() const noexcept { return dim_; }
  [[nodiscard]] std::string_view kind_name() const;
  [[nodiscard]] const Variant& variant() const noexcept { return variant_; }

 private:
  explicit ConstraintSet(Variant v, int dim) : variant_(std::move(v)), dim_(dim) {}
  Variant variant_;
  int dim_;
};

struct ProjectionOptions {
  double tol{1e-8};
  double fd_step{1e-6};
  int newton_max_iterations{100};
  int refine_max_iterations{50};
  int backtracking_halvings{20};
  double min_gradient_norm{1e-12};
};

struct ProjectionResult {
  Point point;
  int iterations_newton{0};
  int iterations_refine{0};
  double residual_g{0.0};
  double residual_tangential{0.0};
  bool was_interior{false};
  /// False when refinement hit its cap or could not decrease the distance further.
  bool optimal{true};
};

/// Raised when Newton-to-boundary exhausts its iteration budget.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(const std::string& message, Point last_iterate)
      : Error(ErrorCode::kNoConvergence, message), last_iterate_(std::move(last_iterate)) {}
  [[nodiscard]] const Point& last_iterate() const noexcept { return last_iterate_; }

 private:
  Point last_iterate_;
};

/// Central differences: (g(p + d e_i) - g(p - d e_i)) / (2 d).
Point grad_fd(const ScalarField& g, const Point& p, double step = 1e-6, double min_norm = 1e-12);

struct BoundaryPoint {
  Point point;
  int iterations{0};
  double residual{0.0};
};

/// p <- p - g(p) / |grad g(p)|^2 * grad g(p) until |g(p)| < tol.
BoundaryPoint newton_to_boundary(const ScalarField& g, Point p0, const ProjectionOptions& options = {});

/// Slides a boundary point along the boundary until the displacement to
/// `target` is parallel to the gradient (tangential part below tol).
ProjectionResult refine_projection(const ScalarField& g, const Point& boundary_point, const Point& target,
                                   const ProjectionOptions& options = {});

/// Newton-to-boundary followed by refinement; feasible points return unchanged.
ProjectionResult project_iterative(const ScalarField& g, const Point& x, const ProjectionOptions& options = {});

/// Metric projection onto the set at time t. Disks use the closed form,
/// other sets the iterative route.
ProjectionResult project(const ConstraintSet& set, const Point& x, double t, const ProjectionOptions& options = {});

Point project_onto_ball(const Point& center, double radius, const Point& x);

/// Boundary of a planar set at time t as `count` points, counter-clockwise.
std::vector<Point> boundary_polyline(const ConstraintSet& set, double t, int count);

/// Excess e(A(tA), B(tB)) = sup_{a in A} dist(a, B). Exact for two disks;
/// otherwise the supremum over `samples` boundary points of A, which is
/// within O(perimeter / samples) of the true value.
double excess(const ConstraintSet& a, const ConstraintSet& b, double ta, double tb, int samples = 4096);

}  // namespace vsweep
