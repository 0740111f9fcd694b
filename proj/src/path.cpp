#include "vsweep/path.hpp"

#include "vsweep/error.hpp"

#include <algorithm>
#include <cmath>

namespace vsweep {

namespace {

bool same_points(const Point& a, const Point& b) { return a.size() == b.size() && a == b; }

}  // namespace

Path::Path(Variant v) : variant_(std::move(v)) {
  dim_ = std::visit(
      [](const auto& p) -> int {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Constant>) {
          return static_cast<int>(p.value.size());
        } else if constexpr (std::is_same_v<P, Lissajous>) {
          if (p.amplitude.size() != p.frequency.size() || p.amplitude.size() != p.phase.size()) {
            throw Error(ErrorCode::kInvalidArgument, "lissajous components must have equal length");
          }
          return static_cast<int>(p.amplitude.size());
        } else if constexpr (std::is_same_v<P, Linear>) {
          if (p.offset.size() != p.rate.size()) {
            throw Error(ErrorCode::kInvalidArgument, "linear path offset and rate differ in length");
          }
          return static_cast<int>(p.offset.size());
        } else {
          if (p.times.empty() || p.times.size() != p.values.size()) {
            throw Error(ErrorCode::kInvalidArgument, "tabulated path needs matching, non-empty samples");
          }
          if (!std::is_sorted(p.times.begin(), p.times.end())) {
            throw Error(ErrorCode::kInvalidArgument, "tabulated path times must be sorted");
          }
          const auto d = p.values.front().size();
          for (const auto& v : p.values) {
            if (v.size() != d) throw Error(ErrorCode::kInvalidArgument, "tabulated path samples differ in size");
          }
          return static_cast<int>(d);
        }
      },
      variant_);
  if (dim_ <= 0) throw Error(ErrorCode::kInvalidArgument, "path has zero dimension");
}

Path Path::lissajous(Point amplitude, Point frequency, Point phase) {
  return Path(Lissajous{std::move(amplitude), std::move(frequency), std::move(phase)});
}

Path Path::linear(Point offset, Point rate) { return Path(Linear{std::move(offset), std::move(rate)}); }

Path Path::linear_scalar(double offset, double rate) {
  return linear(Point::Constant(1, offset), Point::Constant(1, rate));
}

Path Path::tabulated(std::vector<double> times, std::vector<Point> values) {
  return Path(Tabulated{std::move(times), std::move(values)});
}

Point Path::at(double t) const {
  return std::visit(
      [t](const auto& p) -> Point {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Constant>) {
          return p.value;
        } else if constexpr (std::is_same_v<P, Lissajous>) {
          Point out(p.amplitude.size());
          for (Eigen::Index i = 0; i < out.size(); ++i) {
            out[i] = p.amplitude[i] * std::sin(p.frequency[i] * t + p.phase[i]);
          }
          return out;
        } else if constexpr (std::is_same_v<P, Linear>) {
          return p.offset + p.rate * t;
        } else {
          if (t <= p.times.front()) return p.values.front();
          if (t >= p.times.back()) return p.values.back();
          const auto it = std::upper_bound(p.times.begin(), p.times.end(), t);
          const auto i = static_cast<std::size_t>(it - p.times.begin());
          const double w = (t - p.times[i - 1]) / (p.times[i] - p.times[i - 1]);
          return (1.0 - w) * p.values[i - 1] + w * p.values[i];
        }
      },
      variant_);
}

std::string_view Path::kind_name() const {
  switch (variant_.index()) {
    case 0: return "constant";
    case 1: return "lissajous";
    case 2: return "linear";
    default: return "tabulated";
  }
}

bool operator==(const Path& a, const Path& b) {
  if (a.variant_.index() != b.variant_.index()) return false;
  return std::visit(
      [&b](const auto& pa) -> bool {
        using P = std::decay_t<decltype(pa)>;
        const auto& pb = std::get<P>(b.variant_);
        if constexpr (std::is_same_v<P, Path::Constant>) {
          return same_points(pa.value, pb.value);
        } else if constexpr (std::is_same_v<P, Path::Lissajous>) {
          return same_points(pa.amplitude, pb.amplitude) && same_points(pa.frequency, pb.frequency) &&
                 same_points(pa.phase, pb.phase);
        } else if constexpr (std::is_same_v<P, Path::Linear>) {
          return same_points(pa.offset, pb.offset) && same_points(pa.rate, pb.rate);
        } else {
          if (pa.times != pb.times || pa.values.size() != pb.values.size()) return false;
          for (std::size_t i = 0; i < pa.values.size(); ++i) {
            if (!same_points(pa.values[i], pb.values[i])) return false;
          }
          return true;
        }
      },
      a.variant_);
}

}  // namespace vsweep
