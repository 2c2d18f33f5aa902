#include "geodot/space.hpp"

#include <algorithm>
#include <cmath>

#include "geodot/extrapolate.hpp"
#include "geodot/model.hpp"

namespace geodot::spaces {

namespace {

constexpr double kBasepointTol = 1e-12;

Point normalized(const Point& p) {
  double n = norm(p);
  require(n > 0.0, Status::InvalidArgument, "cannot normalize zero vector");
  return scale(p, 1.0 / n);
}

}  // namespace

// ---------------------------------------------------------------- Euclidean

EuclideanSpace::EuclideanSpace(int dim) : dim_(dim) {
  require(dim >= 1, Status::InvalidArgument, "dimension must be >= 1");
}

std::string EuclideanSpace::describe() const {
  return "euclidean(dim=" + std::to_string(dim_) + ")";
}

void EuclideanSpace::validate_point(const Point& p) const {
  require(static_cast<int>(p.size()) == dim_, Status::DimensionMismatch,
          "point dimension does not match space");
  require(finite_point(p), Status::InvalidArgument, "point has non-finite coordinate");
}

double EuclideanSpace::distance(const Point& p, const Point& q) const {
  validate_point(p);
  validate_point(q);
  return dist(p, q);
}

Point EuclideanSpace::geodesic_point(const Point& p, const Point& q, double t) const {
  validate_point(p);
  validate_point(q);
  require(t >= 0.0 && t <= 1.0, Status::InvalidArgument, "geodesic parameter outside [0,1]");
  return add(scale(p, 1.0 - t), scale(q, t));
}

// ------------------------------------------------------------------- Sphere

SphereSpace::SphereSpace(double radius) : radius_(radius) {
  require(std::isfinite(radius) && radius > 0.0, Status::InvalidArgument,
          "sphere radius must be positive");
}

std::string SphereSpace::describe() const {
  return "sphere(radius=" + std::to_string(radius_) + ")";
}

void SphereSpace::validate_point(const Point& p) const {
  require(p.size() == 3, Status::DimensionMismatch, "sphere points live in R^3");
  require(finite_point(p), Status::InvalidArgument, "point has non-finite coordinate");
  double n = norm(p);
  require(std::abs(n - radius_) <= 1e-6 * radius_, Status::Domain,
          "point is not on the sphere");
}

double SphereSpace::distance(const Point& p, const Point& q) const {
  validate_point(p);
  validate_point(q);
  Point u = normalized(p), v = normalized(q);
  // Chord-based angle: 2 asin(|u-v|/2) is accurate for small angles and
  // pi - 2 asin(|u+v|/2) near the antipode; both asin arguments stay well
  // below 1 on their branch, unlike acos(<u,v>) which loses digits at the
  // ends of its range.
  double dm = dist(u, v);
  double theta;
  if (dm <= std::sqrt(2.0)) {
    theta = 2.0 * std::asin(std::min(1.0, dm / 2.0));
  } else {
    double dp = dist(u, scale(v, -1.0));
    theta = M_PI - 2.0 * std::asin(std::min(1.0, dp / 2.0));
  }
  return radius_ * theta;
}

Point SphereSpace::geodesic_point(const Point& p, const Point& q, double t) const {
  validate_point(p);
  validate_point(q);
  require(t >= 0.0 && t <= 1.0, Status::InvalidArgument, "geodesic parameter outside [0,1]");
  Point u = normalized(p), v = normalized(q);
  double theta = distance(p, q) / radius_;
  if (theta <= 1e-15) return scale(u, radius_);
  double sin_theta = std::sin(theta);
  if (sin_theta <= 1e-9) {
    // Antipodal pair: geodesic not unique. Take the meridian through a fixed
    // reference axis (first standard basis vector not parallel to u).
    Point axis(3, 0.0);
    axis[std::abs(u[0]) < 0.9 ? 0 : 1] = 1.0;
    Point w = sub(axis, scale(u, dot(axis, u)));
    w = normalized(w);
    double ang = t * theta;
    return scale(add(scale(u, std::cos(ang)), scale(w, std::sin(ang))), radius_);
  }
  double cu = std::sin((1.0 - t) * theta) / sin_theta;
  double cv = std::sin(t * theta) / sin_theta;
  Point r = add(scale(u, cu), scale(v, cv));
  return scale(normalized(r), radius_);
}

// --------------------------------------------------------------------- Cone

ConeSpace::ConeSpace(double total_angle) : total_angle_(total_angle) {
  require(std::isfinite(total_angle) && total_angle > 0.0, Status::InvalidArgument,
          "cone total angle must be positive");
}

std::string ConeSpace::describe() const {
  return "cone(total_angle=" + std::to_string(total_angle_) + ")";
}

void ConeSpace::validate_point(const Point& p) const {
  require(p.size() == 2, Status::DimensionMismatch, "cone points are (rho, phi) pairs");
  require(finite_point(p), Status::InvalidArgument, "point has non-finite coordinate");
  require(p[0] >= 0.0, Status::Domain, "cone radius must be nonnegative");
}

namespace {

// Signed angular gap from phi1 to phi2, wrapped into (-Theta/2, Theta/2].
double wrapped_gap(double phi1, double phi2, double theta_total) {
  double d = std::fmod(phi2 - phi1, theta_total);
  if (d <= -theta_total / 2.0) d += theta_total;
  if (d > theta_total / 2.0) d -= theta_total;
  return d;
}

double wrap_angle(double phi, double theta_total) {
  double w = std::fmod(phi, theta_total);
  if (w < 0.0) w += theta_total;
  return w;
}

}  // namespace

double ConeSpace::distance(const Point& p, const Point& q) const {
  validate_point(p);
  validate_point(q);
  double r1 = p[0], r2 = q[0];
  double delta = std::abs(wrapped_gap(p[1], q[1], total_angle_));
  if (delta < M_PI) {
    return std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(delta)));
  }
  return r1 + r2;
}

Point ConeSpace::geodesic_point(const Point& p, const Point& q, double t) const {
  validate_point(p);
  validate_point(q);
  require(t >= 0.0 && t <= 1.0, Status::InvalidArgument, "geodesic parameter outside [0,1]");
  double r1 = p[0], r2 = q[0];
  if (r1 == 0.0) return Point{t * r2, r2 == 0.0 ? 0.0 : wrap_angle(q[1], total_angle_)};
  if (r2 == 0.0) return Point{(1.0 - t) * r1, wrap_angle(p[1], total_angle_)};
  double gap = wrapped_gap(p[1], q[1], total_angle_);
  double delta = std::abs(gap);
  if (delta < M_PI) {
    // Unroll the sector spanned by the two rays into the plane, interpolate
    // the straight segment, and fold the result back.
    double x = (1.0 - t) * r1 + t * r2 * std::cos(delta);
    double y = t * r2 * std::sin(delta);
    double rho = std::hypot(x, y);
    if (rho == 0.0) return Point{0.0, 0.0};
    double beta = std::atan2(y, x);
    double sign = gap >= 0.0 ? 1.0 : -1.0;
    return Point{rho, wrap_angle(p[1] + sign * beta, total_angle_)};
  }
  // Through the apex, proportionally to arclength.
  double total = r1 + r2;
  double s = t * total;
  if (s <= r1) return Point{r1 - s, wrap_angle(p[1], total_angle_)};
  return Point{s - r1, wrap_angle(q[1], total_angle_)};
}

SpacePtr make_euclidean(int dim) { return std::make_shared<EuclideanSpace>(dim); }
SpacePtr make_sphere(double radius) { return std::make_shared<SphereSpace>(radius); }
SpacePtr make_cone(double total_angle) { return std::make_shared<ConeSpace>(total_angle); }

// ----------------------------------------------------------------- checkers

double alexandrov_check(const Space& space, const Point& x, const Point& y, const Point& z,
                        double s, double k) {
  double d_xy = space.distance(x, y);
  double d_xz = space.distance(x, z);
  double d_yz = space.distance(y, z);
  require(s >= 0.0 && s <= d_xy * (1.0 + 1e-12) + 1e-15, Status::Domain,
          "arclength parameter outside [0, d(x,y)]");
  Point w = d_xy == 0.0 ? x : space.geodesic_point(x, y, std::min(1.0, s / d_xy));
  model::TriangleSides sides{d_xy, d_xz, d_yz};
  return space.distance(w, z) - model::comparison_point_distance(k, sides, std::min(s, d_xy));
}

AngleEstimate angle_estimate(const Space& space, const Geodesic& g1, const Geodesic& g2,
                             const std::vector<std::pair<double, double>>& schedule, double k) {
  require(dist(g1.a, g2.a) <= kBasepointTol, Status::InvalidArgument,
          "geodesics do not share a basepoint");
  require(schedule.size() >= 4, Status::InvalidArgument, "schedule needs at least 4 entries");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
    require(schedule[i + 1].first < schedule[i].first && schedule[i + 1].second < schedule[i].second,
            Status::InvalidArgument, "schedule must be strictly decreasing");
  }
  require(schedule.back().first > 0.0 && schedule.back().second > 0.0, Status::InvalidArgument,
          "schedule entries must be positive");

  AngleEstimate out;
  std::vector<double> h;
  for (auto [t, s] : schedule) {
    Point pt = eval(space, g1, t);
    Point ps = eval(space, g2, s);
    model::TriangleSides sides{space.distance(g1.a, pt), space.distance(g1.a, ps),
                               space.distance(pt, ps)};
    out.angles.push_back(model::comparison_angle(k, sides));
    h.push_back((t + s) / 2.0);
  }
  out.limit = extrapolate_to_zero(h, out.angles);
  return out;
}

double separation_rate(const Space& space, const Geodesic& g1, const Geodesic& g2,
                       const std::vector<double>& schedule) {
  require(dist(g1.a, g2.a) <= kBasepointTol, Status::InvalidArgument,
          "geodesics do not share a basepoint");
  require(space.distance(g1.b, g2.b) > kBasepointTol, Status::InvalidArgument,
          "geodesics not distinct");
  require(schedule.size() >= 3, Status::InvalidArgument, "schedule needs at least 3 entries");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i) {
    require(schedule[i + 1] < schedule[i], Status::InvalidArgument,
            "schedule must be strictly decreasing");
  }
  std::vector<double> rates;
  for (double t : schedule) {
    require(t > 0.0 && t <= 1.0, Status::InvalidArgument, "schedule entries must be in (0,1]");
    rates.push_back(space.distance(eval(space, g1, t), eval(space, g2, t)) / t);
  }
  return extrapolate_to_zero(schedule, rates);
}

}  // namespace geodot::spaces
