#include "singtrace/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace singtrace {

LogGrid::LogGrid(double u_min, double u_max, std::size_t count)
    : u_min_(u_min), u_max_(u_max), count_(count) {
  if (!std::isfinite(u_min) || !std::isfinite(u_max) || !(u_min < u_max))
    throw std::domain_error("grid: need finite u_min < u_max");
  if (count < 2) throw std::domain_error("grid: need at least 2 points");
  if (count > kMaxCount) throw std::domain_error("grid: more than 1e7 points");
}

LogGrid LogGrid::with_spacing(double u_min, double u_max, double spacing) {
  if (!(spacing > 0.0)) throw std::domain_error("grid: spacing must be positive");
  const double n = std::ceil((u_max - u_min) / spacing - 1e-9);
  if (!(n + 1.0 <= static_cast<double>(kMaxCount)))
    throw std::domain_error("grid: more than 1e7 points");
  return LogGrid(u_min, u_max, static_cast<std::size_t>(std::max(1.0, n)) + 1);
}

}  // namespace singtrace
