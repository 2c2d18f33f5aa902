#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "geodot/vecmath.hpp"

namespace geodot::spaces {

/// Geodesic space abstraction: a metric plus a two-endpoint geodesic
/// interpolation oracle. Geodesics are parametrized on [0, 1] at constant
/// speed. Where geodesics are non-unique (sphere antipodes, cone paths
/// through the apex) the oracle returns a fixed canonical choice so that
/// restricted supports are reproducible.
class Space {
 public:
  virtual ~Space() = default;
  virtual int dimension() const = 0;
  /// Claimed lower curvature bound of the space (not verified; the
  /// comparison checkers measure actual behavior against any k).
  virtual double curvature_lower_bound() const = 0;
  virtual std::string describe() const = 0;
  virtual void validate_point(const Point& p) const = 0;
  virtual double distance(const Point& p, const Point& q) const = 0;
  virtual Point geodesic_point(const Point& p, const Point& q, double t) const = 0;
};

using SpacePtr = std::shared_ptr<const Space>;

/// R^n with the standard metric and straight-line geodesics.
class EuclideanSpace final : public Space {
 public:
  explicit EuclideanSpace(int dim);
  int dimension() const override { return dim_; }
  double curvature_lower_bound() const override { return 0.0; }
  std::string describe() const override;
  void validate_point(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  Point geodesic_point(const Point& p, const Point& q, double t) const override;

 private:
  int dim_;
};

/// Round 2-sphere of the given radius, points as vectors in R^3 with
/// |p| = radius. Distances are great-circle lengths; interpolation is slerp.
/// Antipodal pairs take the meridian through a fixed reference axis.
class SphereSpace final : public Space {
 public:
  explicit SphereSpace(double radius = 1.0);
  int dimension() const override { return 2; }
  double curvature_lower_bound() const override { return 1.0 / (radius_ * radius_); }
  std::string describe() const override;
  void validate_point(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  Point geodesic_point(const Point& p, const Point& q, double t) const override;
  double radius() const { return radius_; }

 private:
  double radius_;
};

/// Metric cone with total angle Theta around the apex; points are
/// (rho >= 0, phi in [0, Theta)), the apex is rho = 0. Geodesics between
/// points with angular gap delta < pi unroll to straight segments in the
/// plane; for delta >= pi the shortest path runs through the apex.
/// Theta <= 2*pi gives a nonnegatively curved space; Theta > 2*pi does not.
class ConeSpace final : public Space {
 public:
  explicit ConeSpace(double total_angle);
  int dimension() const override { return 2; }
  double curvature_lower_bound() const override { return 0.0; }
  std::string describe() const override;
  void validate_point(const Point& p) const override;
  double distance(const Point& p, const Point& q) const override;
  Point geodesic_point(const Point& p, const Point& q, double t) const override;
  double total_angle() const { return total_angle_; }

 private:
  double total_angle_;
};

SpacePtr make_euclidean(int dim);
SpacePtr make_sphere(double radius = 1.0);
SpacePtr make_cone(double total_angle);

/// Geodesic handle: the curve t -> geodesic_point(a, b, t).
struct Geodesic {
  Point a;
  Point b;
};

inline Point eval(const Space& space, const Geodesic& g, double t) {
  return space.geodesic_point(g.a, g.b, t);
}

/// Comparison slack d(w, z) - |w~ - z~| for w at arclength s along the
/// geodesic [x, y], against the model surface of curvature k. Nonnegative
/// slack means this configuration satisfies the comparison inequality.
double alexandrov_check(const Space& space, const Point& x, const Point& y, const Point& z,
                        double s, double k);

struct AngleEstimate {
  std::vector<double> angles;  // theta_k(t_i, s_i) per schedule entry
  double limit = 0.0;          // extrapolated value at (0, 0)
};

/// Comparison angles theta_k(t_i, s_i) between two geodesics with a common
/// basepoint, plus the extrapolated limit as t, s -> 0. On spaces with
/// curvature >= k the sequence is non-decreasing as the schedule shrinks.
AngleEstimate angle_estimate(const Space& space, const Geodesic& g1, const Geodesic& g2,
                             const std::vector<std::pair<double, double>>& schedule, double k);

/// Extrapolated limit of d(g1(t), g2(t))/t for two distinct geodesics with
/// a common basepoint. For equal-length geodesics this approaches
/// length * sqrt(2 - 2 cos(angle)).
double separation_rate(const Space& space, const Geodesic& g1, const Geodesic& g2,
                       const std::vector<double>& schedule);

}  // namespace geodot::spaces
