#pragma once

#include <cstddef>
#include <vector>

#include "geodot/error.hpp"

namespace geodot {

/// Richardson-style limit estimate: least-squares line through the last
/// three (h, value) samples, evaluated at h = 0. The schedules used by the
/// callers decrease geometrically, so a linear model in h captures the
/// leading error term and the fit smooths roundoff in the smallest entries.
inline double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v) {
  require(h.size() == v.size(), Status::InvalidArgument, "extrapolate: length mismatch");
  require(h.size() >= 3, Status::InvalidArgument, "extrapolate: need at least 3 samples");
  std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = n - 3; i < n; ++i) {
    sx += h[i];
    sy += v[i];
    sxx += h[i] * h[i];
    sxy += h[i] * v[i];
  }
  double det = 3.0 * sxx - sx * sx;
  require(det > 0.0, Status::InvalidArgument, "extrapolate: degenerate schedule");
  double slope = (3.0 * sxy - sx * sy) / det;
  double intercept = (sy - slope * sx) / 3.0;
  return intercept;
}

}  // namespace geodot
