#include "geodot/model.hpp"

#include <algorithm>
#include <cmath>

#include "geodot/vecmath.hpp"

namespace geodot::model {

namespace {

constexpr double kTriangleSlack = 1e-12;
constexpr double kCosineSlack = 1e-12;
// Below this value of |k|*(max length)^2 the series in k is used. The
// closed-form numerator cos(sqrt(k) a) - cos(sqrt(k) b) cos(sqrt(k) c) is
// O(k) while each term is O(1), so the closed form loses ~|k| L^2 relative
// accuracy; the series truncation error is O((|k| L^2)^3) < 1e-18 here.
constexpr double kSeriesThreshold = 1e-6;

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// cos(angle at the vertex between sides b and c, opposite side a), by the
// k-series expansion of (C_k(a) - C_k(b) C_k(c)) / (k S_k(b) S_k(c)) where
// C_k, S_k are the generalized cosine/sine. Valid for either sign of k and
// exact at k = 0 (leading term is the Euclidean law of cosines).
double cos_angle_series(double k, double a, double b, double c) {
  double a2 = a * a, b2 = b * b, c2 = c * c;
  double n0 = (b2 + c2 - a2) / 2.0;
  double n1 = (a2 * a2 - b2 * b2 - c2 * c2) / 24.0 - b2 * c2 / 4.0;
  double n2 = (b2 * b2 * b2 + c2 * c2 * c2 - a2 * a2 * a2) / 720.0 +
              (b2 * b2 * c2 + b2 * c2 * c2) / 48.0;
  double d1 = -(b2 + c2) / 6.0;
  double d2 = (b2 * b2 + c2 * c2) / 120.0 + b2 * c2 / 36.0;
  double num = n0 + k * (n1 - n0 * d1) + k * k * (n2 - n1 * d1 + n0 * (d1 * d1 - d2));
  return num / (b * c);
}

}  // namespace

void validate_sides(double k, const TriangleSides& sides) {
  require(std::isfinite(k), Status::InvalidArgument, "curvature must be finite");
  require(finite_nonneg(sides.d_xy) && finite_nonneg(sides.d_xz) && finite_nonneg(sides.d_yz),
          Status::InvalidArgument, "sides must be finite and nonnegative");
  double a = sides.d_yz, b = sides.d_xy, c = sides.d_xz;
  double scale = std::max({a, b, c, 1.0});
  double slack = kTriangleSlack * scale;
  require(a <= b + c + slack && b <= a + c + slack && c <= a + b + slack, Status::Domain,
          "sides violate the triangle inequality");
  if (k > 0.0) {
    double perimeter = a + b + c;
    require(perimeter <= 2.0 * M_PI / std::sqrt(k) + slack, Status::Domain,
            "no comparison triangle");
  }
}

double comparison_angle(double k, const TriangleSides& sides) {
  validate_sides(k, sides);
  double b = sides.d_xy, c = sides.d_xz, a = sides.d_yz;
  require(b > 0.0 && c > 0.0, Status::Domain, "angle undefined at degenerate vertex");

  double maxlen = std::max({a, b, c});
  double cosv;
  if (std::abs(k) * maxlen * maxlen < kSeriesThreshold) {
    cosv = cos_angle_series(k, a, b, c);
  } else if (k > 0.0) {
    double s = std::sqrt(k);
    double den = std::sin(s * b) * std::sin(s * c);
    require(den > 0.0, Status::Domain, "degenerate spherical triangle");
    cosv = (std::cos(s * a) - std::cos(s * b) * std::cos(s * c)) / den;
  } else {
    double s = std::sqrt(-k);
    double den = std::sinh(s * b) * std::sinh(s * c);
    require(den > 0.0, Status::Domain, "degenerate hyperbolic triangle");
    cosv = (std::cosh(s * b) * std::cosh(s * c) - std::cosh(s * a)) / den;
  }
  return std::acos(clamp_cosine(cosv, kCosineSlack, "comparison_angle"));
}

double side_from_angle(double k, double a, double b, double angle) {
  require(std::isfinite(k), Status::InvalidArgument, "curvature must be finite");
  require(finite_nonneg(a) && finite_nonneg(b), Status::InvalidArgument,
          "side lengths must be finite and nonnegative");
  require(std::isfinite(angle) && angle >= 0.0 && angle <= M_PI, Status::Domain,
          "angle out of range [0, pi]");
  if (k > 0.0) {
    double limit = M_PI / std::sqrt(k) + kTriangleSlack;
    require(a <= limit && b <= limit, Status::Domain, "side exceeds model diameter");
  }
  if (a == 0.0) return b;
  if (b == 0.0) return a;

  double maxlen = std::max(a, b);
  if (std::abs(k) * maxlen * maxlen < kSeriesThreshold) {
    double a2 = a * a, b2 = b * b;
    double cosv = std::cos(angle);
    double c0sq = std::max(0.0, a2 + b2 - 2.0 * a * b * cosv);
    double q = a2 * a2 / 24.0 + b2 * b2 / 24.0 + a2 * b2 / 4.0 -
               a * b * (a2 + b2) * cosv / 6.0;
    double csq = c0sq + 2.0 * k * (c0sq * c0sq / 24.0 - q);
    return std::sqrt(std::max(0.0, csq));
  }
  if (k > 0.0) {
    double s = std::sqrt(k);
    double arg = std::cos(s * a) * std::cos(s * b) + std::sin(s * a) * std::sin(s * b) * std::cos(angle);
    return std::acos(clamp_cosine(arg, kCosineSlack, "side_from_angle")) / s;
  }
  double s = std::sqrt(-k);
  double arg = std::cosh(s * a) * std::cosh(s * b) - std::sinh(s * a) * std::sinh(s * b) * std::cos(angle);
  if (arg < 1.0) {
    require(arg >= 1.0 - kCosineSlack, Status::Domain, "side_from_angle: hyperbolic argument below 1");
    arg = 1.0;
  }
  return std::acosh(arg) / s;
}

double comparison_point_distance(double k, const TriangleSides& sides, double s) {
  require(std::isfinite(s) && s >= 0.0 && s <= sides.d_xy + kTriangleSlack * std::max(1.0, sides.d_xy),
          Status::Domain, "point parameter outside the side [x, y]");
  double angle = comparison_angle(k, sides);
  return side_from_angle(k, std::min(s, sides.d_xy), sides.d_xz, angle);
}

}  // namespace geodot::model
