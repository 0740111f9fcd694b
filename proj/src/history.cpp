#include "vsweep/history.hpp"

#include "vsweep/error.hpp"

namespace vsweep {

HistoryRing::HistoryRing(int dimension, std::size_t capacity)
    : dim_(dimension), capacity_(capacity), data_(static_cast<std::size_t>(dimension) * capacity, 0.0) {
  if (dimension <= 0) throw Error(ErrorCode::kInvalidArgument, "history dimension must be positive");
  if (capacity == 0) throw Error(ErrorCode::kInvalidArgument, "history window must hold at least one lag");
}

void HistoryRing::fill(const std::function<Point(double)>& past, double h) {
  n_ = 0;
  head_ = 0;
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t j = 1; j <= capacity_; ++j) {
    const Point v = past(-static_cast<double>(j) * h);
    if (v.size() != dim_) throw Error(ErrorCode::kInvalidArgument, "past condition has the wrong dimension");
    const std::size_t slot = capacity_ - j;  // index -j mod J
    for (std::size_t i = 0; i < d; ++i) data_[slot * d + i] = v[static_cast<Eigen::Index>(i)];
  }
}

void HistoryRing::push(const Point& xn) {
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t i = 0; i < d; ++i) data_[head_ * d + i] = xn[static_cast<Eigen::Index>(i)];
  head_ = head_ + 1 == capacity_ ? 0 : head_ + 1;
  ++n_;
}

Eigen::Map<const Point> HistoryRing::lag(std::size_t j) const {
  if (j == 0 || j > capacity_) throw Error(ErrorCode::kInvalidArgument, "lag outside the history window");
  const std::size_t slot = (head_ + capacity_ - j) % capacity_;
  return Eigen::Map<const Point>(data_.data() + slot * static_cast<std::size_t>(dim_), dim_);
}

}  // namespace vsweep
