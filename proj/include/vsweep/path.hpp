#pragma once

#include <Eigen/Core>

#include <string_view>
#include <variant>
#include <vector>

namespace vsweep {

using Point = Eigen::VectorXd;

/// A time-parametrized point c(t); scalar paths (angles) are 1-D paths.
class Path {
 public:
  struct Constant {
    Point value;
  };
  /// c_i(t) = amplitude_i * sin(frequency_i * t + phase_i)
  struct Lissajous {
    Point amplitude;
    Point frequency;
    Point phase;
  };
  /// c(t) = offset + rate * t
  struct Linear {
    Point offset;
    Point rate;
  };
  /// Piecewise-linear through samples, held constant outside [times.front(), times.back()].
  struct Tabulated {
    std::vector<double> times;
    std::vector<Point> values;
  };
  using Variant = std::variant<Constant, Lissajous, Linear, Tabulated>;

  Path() : Path(Constant{Point::Zero(2)}) {}
  explicit Path(Variant v);

  static Path constant(Point value) { return Path(Constant{std::move(value)}); }
  static Path constant_scalar(double value) { return constant(Point::Constant(1, value)); }
  static Path lissajous(Point amplitude, Point frequency, Point phase);
  static Path linear(Point offset, Point rate);
  static Path linear_scalar(double offset, double rate);
  static Path tabulated(std::vector<double> times, std::vector<Point> values);

  [[nodiscard]] Point at(double t) const;
  [[nodiscard]] double scalar_at(double t) const { return at(t)[0]; }
  [[nodiscard]] int dimension() const noexcept { return dim_; }
  [[nodiscard]] std::string_view kind_name() const;
  [[nodiscard]] const Variant& variant() const noexcept { return variant_; }

  friend bool operator==(const Path& a, const Path& b);

 private:
  Variant variant_;
  int dim_{0};
};

}  // namespace vsweep
