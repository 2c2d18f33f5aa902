#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "geodot/error.hpp"

namespace geodot {

using Point = std::vector<double>;

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point scale(const Point& a, double s) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

inline double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

inline void check_same_dim(const Point& a, const Point& b, const char* where) {
  require(a.size() == b.size(), Status::DimensionMismatch,
          std::string(where) + ": points have different dimensions");
}

/// Clamp a cosine to [-1, 1], but only if it is within `slack` of the range.
/// Values further out indicate a genuinely bad input and raise a domain error.
inline double clamp_cosine(double c, double slack, const char* where) {
  if (c > 1.0) {
    require(c <= 1.0 + slack, Status::Domain,
            std::string(where) + ": cosine argument exceeds 1 beyond tolerance");
    return 1.0;
  }
  if (c < -1.0) {
    require(c >= -1.0 - slack, Status::Domain,
            std::string(where) + ": cosine argument below -1 beyond tolerance");
    return -1.0;
  }
  return c;
}

inline bool finite_point(const Point& p) {
  for (double v : p)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace geodot
