#pragma once

#include "vsweep/path.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace vsweep {

/// Fixed window of the last `capacity` positions X^{n-1}, ..., X^{n-J},
/// stored contiguously as a ring. Slot of index m is m mod J.
class HistoryRing {
 public:
  HistoryRing(int dimension, std::size_t capacity);

  /// Resets to step 0 with X^{-j} = past(-j h) for j = 1..J.
  void fill(const std::function<Point(double)>& past, double h);

  /// Appends X^n and advances n; the oldest lag drops out.
  void push(const Point& xn);

  /// X^{n-j} for 1 <= j <= capacity.
  [[nodiscard]] Eigen::Map<const Point> lag(std::size_t j) const;

  /// Calls f(j, const double* x) for j = 1..J in increasing lag order.
  template <class F>
  void for_each_lag(F&& f) const {
    std::size_t slot = head_ == 0 ? capacity_ - 1 : head_ - 1;
    const auto d = static_cast<std::size_t>(dim_);
    for (std::size_t j = 1; j <= capacity_; ++j) {
      f(j, data_.data() + slot * d);
      slot = slot == 0 ? capacity_ - 1 : slot - 1;
    }
  }

  [[nodiscard]] std::size_t step_index() const noexcept { return n_; }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
  [[nodiscard]] int dimension() const noexcept { return dim_; }

 private:
  int dim_;
  std::size_t capacity_;
  std::size_t n_{0};
  std::size_t head_{0};  // slot that receives X^n
  std::vector<double> data_;
};

}  // namespace vsweep
