#pragma once

#include "geodot/error.hpp"

namespace geodot::model {

/// Side lengths of a triangle (x, y, z), named by the vertex pairs.
struct TriangleSides {
  double d_xy = 0.0;
  double d_xz = 0.0;
  double d_yz = 0.0;
};

/// Throws unless the sides admit a comparison triangle in the model surface
/// of curvature k: triangle inequality within 1e-12, and for k > 0 the
/// perimeter bound d_xy + d_xz + d_yz <= 2*pi/sqrt(k).
void validate_sides(double k, const TriangleSides& sides);

/// Angle at vertex x of the comparison triangle in the model surface of
/// curvature k, in [0, pi]. Uses the spherical, Euclidean, or hyperbolic
/// law of cosines according to the sign of k. Near k = 0 the closed forms
/// lose all significant digits to cancellation, so |k|*(max side)^2 < 1e-6
/// switches to a series in k that is exact at k = 0.
double comparison_angle(double k, const TriangleSides& sides);

/// Third side of the model triangle with sides a, b enclosing `angle`.
/// Inverse companion of comparison_angle; same series treatment near k = 0.
double side_from_angle(double k, double a, double b, double angle);

/// Distance |w - z| in the comparison triangle, where w lies on the side
/// [x, y] at arclength s from x. Composed as
/// side_from_angle(k, s, d_xz, comparison_angle(k, sides)).
double comparison_point_distance(double k, const TriangleSides& sides, double s);

}  // namespace geodot::model
