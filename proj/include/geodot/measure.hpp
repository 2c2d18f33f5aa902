#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "geodot/space.hpp"
#include "geodot/vecmath.hpp"

namespace geodot::measures {

/// Finitely supported probability measure: points with positive weights
/// summing to 1. Points must be pairwise distinct in the carrying metric.
struct DiscreteMeasure {
  std::vector<Point> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Throws unless the measure satisfies its invariants (weights positive and
/// normalized within 1e-12, points pairwise distinct within 1e-12 in the
/// given space's metric, all points valid for the space).
void validate_measure(const DiscreteMeasure& m, const spaces::Space& space);

/// Same validation with the plain Euclidean metric on raw coordinates, for
/// contexts with no space at hand (file ingestion).
void validate_measure_euclidean(const DiscreteMeasure& m);

/// Open Euclidean cone with apex x, axis direction theta (unit), opening
/// alpha, truncated to the open ball of the given radius.
struct Cone {
  Point apex;
  Point direction;
  double opening = 0.0;
  double radius = 0.0;
};

void validate_cone(const Cone& cone);

/// True iff y lies strictly inside the cone: <y - x, theta> > cos(alpha)|y - x|
/// and 0 < |y - x| < radius. The apex itself is rejected with an error.
bool cone_contains(const Cone& cone, const Point& y);

/// Number of points of E, other than the apex entry itself, lying in the cone.
int cone_occupancy(const std::vector<Point>& e, std::size_t apex_index, const Point& direction,
                   double opening, double radius);

/// Axis-aligned box region with positive volume.
struct Box {
  Point lo;
  Point hi;
};

/// Geodesic cap on the 2-sphere of the given radius: points within angular
/// distance `angle` of `center`.
struct SphereCap {
  Point center;        // in R^3, |center| = sphere_radius
  double angle = 0.0;  // in (0, pi]
  double sphere_radius = 1.0;
};

using Region = std::variant<Box, SphereCap>;

/// n pseudorandom points in the region with uniform weights 1/n, driven by
/// the splittable 64-bit generator. Duplicate draws (within 1e-12) are
/// rejected and redrawn so the measure invariants hold.
DiscreteMeasure sample_diffuse(const Region& region, int n, std::uint64_t seed);

struct Segment {
  Point a;
  Point b;
};

struct Circle {
  Point center;  // in R^2
  double radius = 0.0;
};

using Curve = std::variant<Segment, Circle>;

/// n pseudorandom points on the curve with uniform weights 1/n.
DiscreteMeasure sample_on_curve(const Curve& curve, int n, std::uint64_t seed);

}  // namespace geodot::measures
