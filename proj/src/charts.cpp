#include "geodot/chart.hpp"

#include <cmath>
#include <string>

#include "geodot/extrapolate.hpp"

namespace geodot::charts {

Chart::Chart(spaces::SpacePtr space, Point base, std::vector<Point> strainers, double radius)
    : space_(std::move(space)), base_(std::move(base)), strainers_(std::move(strainers)),
      radius_(radius) {
  require(space_ != nullptr, Status::InvalidArgument, "chart requires a space");
  require(std::isfinite(radius_) && radius_ > 0.0, Status::InvalidArgument,
          "chart domain radius must be positive");
  space_->validate_point(base_);
  require(static_cast<int>(strainers_.size()) == space_->dimension(), Status::InvalidArgument,
          "number of strainer points must equal the space dimension");
  for (std::size_t i = 0; i < strainers_.size(); ++i) {
    space_->validate_point(strainers_[i]);
    require(space_->distance(strainers_[i], base_) > 1e-12, Status::InvalidArgument,
            "strainer point coincides with the base point");
    for (std::size_t j = i + 1; j < strainers_.size(); ++j)
      require(space_->distance(strainers_[i], strainers_[j]) > 1e-12, Status::InvalidArgument,
              "strainer points must be pairwise distinct");
  }
}

bool Chart::in_domain(const Point& x) const {
  return space_->distance(base_, x) <= radius_ * (1.0 + 1e-12);
}

Point Chart::eval(const Point& x) const {
  require(in_domain(x), Status::Domain, "point outside the chart domain");
  Point out(strainers_.size());
  for (std::size_t i = 0; i < strainers_.size(); ++i) out[i] = space_->distance(strainers_[i], x);
  return out;
}

DistortionResult distortion(const Chart& chart, const std::vector<std::pair<Point, Point>>& pairs) {
  require(!pairs.empty(), Status::InvalidArgument, "no sample pairs");
  DistortionResult result;
  bool any = false;
  for (const auto& [x, y] : pairs) {
    double d = chart.space().distance(x, y);
    if (d <= 1e-15) {
      ++result.skipped;
      continue;
    }
    double ratio = dist(chart.eval(x), chart.eval(y)) / d;
    if (!any) {
      result.max_ratio = result.min_ratio = ratio;
      any = true;
    } else {
      result.max_ratio = std::max(result.max_ratio, ratio);
      result.min_ratio = std::min(result.min_ratio, ratio);
    }
  }
  require(any, Status::InvalidArgument, "all sample pairs were coincident");
  return result;
}

Point geodesic_direction(const Chart& chart, const spaces::Geodesic& g,
                         const std::vector<double>& schedule) {
  require(schedule.size() >= 4, Status::InvalidArgument, "schedule needs at least 4 entries");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    require(schedule[i + 1] < schedule[i] && schedule[i + 1] > 0.0, Status::InvalidArgument,
            "schedule must be strictly decreasing and positive");
  const spaces::Space& space = chart.space();
  require(chart.in_domain(g.a), Status::Domain, "geodesic basepoint outside the chart domain");

  Point phi0 = chart.eval(g.a);
  std::size_t dim = phi0.size();
  std::vector<std::vector<double>> quotients(dim);
  std::vector<double> h;
  for (double t : schedule) {
    Point pt = spaces::eval(space, g, t);
    require(chart.in_domain(pt), Status::Domain,
            "geodesic leaves the chart domain at t = " + std::to_string(t));
    double d = space.distance(g.a, pt);
    require(d > 0.0, Status::InvalidArgument, "geodesic is constant at the basepoint");
    Point phi = chart.eval(pt);
    for (std::size_t i = 0; i < dim; ++i) quotients[i].push_back((phi[i] - phi0[i]) / d);
    h.push_back(d);
  }
  Point direction(dim);
  for (std::size_t i = 0; i < dim; ++i) direction[i] = extrapolate_to_zero(h, quotients[i]);
  return direction;
}

std::vector<double> default_schedule() { return {0.1, 0.05, 0.025, 0.0125}; }

}  // namespace geodot::charts
