#pragma once

#include <cstddef>

namespace singtrace {

// Uniform grid in u = log(t). All curves are sampled on one of these.
class LogGrid {
 public:
  static constexpr std::size_t kMaxCount = 10'000'000;

  LogGrid(double u_min, double u_max, std::size_t count);

  // Grid with the given nominal spacing; the last point is exactly u_max.
  static LogGrid with_spacing(double u_min, double u_max, double spacing);

  double u_min() const { return u_min_; }
  double u_max() const { return u_max_; }
  std::size_t count() const { return count_; }
  double spacing() const { return (u_max_ - u_min_) / static_cast<double>(count_ - 1); }

  double at(std::size_t i) const {
    if (i + 1 == count_) return u_max_;
    return u_min_ + spacing() * static_cast<double>(i);
  }

 private:
  double u_min_;
  double u_max_;
  std::size_t count_;
};

}  // namespace singtrace
