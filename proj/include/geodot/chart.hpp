#pragma once

#include <vector>

#include "geodot/space.hpp"

namespace geodot::charts {

/// Distance-coordinate chart around a base point: x maps to the vector of
/// distances to the strainer points. Near a regular point with well-spread
/// strainers this is close to an isometry; the library measures the actual
/// distortion instead of assuming strainer quality.
class Chart {
 public:
  Chart(spaces::SpacePtr space, Point base, std::vector<Point> strainers, double radius);

  const spaces::Space& space() const { return *space_; }
  spaces::SpacePtr space_ptr() const { return space_; }
  const Point& base() const { return base_; }
  const std::vector<Point>& strainers() const { return strainers_; }
  double radius() const { return radius_; }

  bool in_domain(const Point& x) const;

  /// Distance coordinates (d(a_1, x), ..., d(a_n, x)); x must be in the domain.
  Point eval(const Point& x) const;

 private:
  spaces::SpacePtr space_;
  Point base_;
  std::vector<Point> strainers_;
  double radius_;
};

struct DistortionResult {
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  int skipped = 0;  // coincident pairs dropped
};

/// Extremes of |phi(x) - phi(y)| / d(x, y) over the sample pairs.
DistortionResult distortion(const Chart& chart, const std::vector<std::pair<Point, Point>>& pairs);

/// Extrapolated limit of (phi(gamma(t)) - phi(gamma(0))) / d(gamma(t), gamma(0))
/// as t -> 0. Component i tends to -cos(angle between gamma and the geodesic
/// to strainer a_i). Errors if the geodesic leaves the domain within the
/// schedule's largest parameter.
Point geodesic_direction(const Chart& chart, const spaces::Geodesic& g,
                         const std::vector<double>& schedule);

/// Default parameter schedule for direction estimates: {0.1, 0.05, 0.025, 0.0125}.
std::vector<double> default_schedule();

}  // namespace geodot::charts
