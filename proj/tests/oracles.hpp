#pragma once

// Independent reference computations for the test suite: closed-form
// trigonometry, plane embeddings, exhaustive enumeration, and dense grids.
// Nothing here shares code paths with the library, so agreement between the
// two is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "geodot/measure.hpp"
#include "geodot/monotonicity.hpp"
#include "geodot/rng.hpp"
#include "geodot/solver.hpp"
#include "geodot/space.hpp"
#include "geodot/vecmath.hpp"

namespace oracles {

inline double clamp1(double c) { return std::max(-1.0, std::min(1.0, c)); }

// Angle at the vertex with adjacent sides b, c and opposite side a.
inline double euclid_angle(double a, double b, double c) {
  return std::acos(clamp1((b * b + c * c - a * a) / (2.0 * b * c)));
}

inline double spherical_angle(double a, double b, double c, double k) {
  const double r = std::sqrt(k);
  const double num = std::cos(r * a) - std::cos(r * b) * std::cos(r * c);
  const double den = std::sin(r * b) * std::sin(r * c);
  return std::acos(clamp1(num / den));
}

inline double hyperbolic_angle(double a, double b, double c, double k) {
  const double r = std::sqrt(-k);
  const double num = std::cosh(r * b) * std::cosh(r * c) - std::cosh(r * a);
  const double den = std::sinh(r * b) * std::sinh(r * c);
  return std::acos(clamp1(num / den));
}

// Plane embedding: x at the origin, y at (dxy, 0), z placed by the angle at
// x, w at (s, 0) along [x, y]. Returns |w - z|.
inline double euclid_comparison_point(double dxy, double dxz, double dyz, double s) {
  const double angle = euclid_angle(dyz, dxy, dxz);
  return std::hypot(s - dxz * std::cos(angle), dxz * std::sin(angle));
}

inline geodot::Point unit3(const geodot::Point& p) {
  const double n = geodot::norm(p);
  return {p[0] / n, p[1] / n, p[2] / n};
}

// Great-circle distance through atan2, accurate from tiny separations to
// near-antipodal pairs.
inline double sphere_distance_atan2(const geodot::Point& p, const geodot::Point& q,
                                    double radius) {
  const geodot::Point a = unit3(p), b = unit3(q);
  const geodot::Point cr = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                            a[0] * b[1] - a[1] * b[0]};
  return radius * std::atan2(geodot::norm(cr), geodot::dot(a, b));
}

// Angle at x between the initial directions toward q1 and q2 on a sphere
// centered at the origin, via tangent-plane projections.
inline double sphere_tangent_angle(const geodot::Point& x, const geodot::Point& q1,
                                   const geodot::Point& q2) {
  const geodot::Point xu = unit3(x);
  auto project = [&](const geodot::Point& q) {
    const geodot::Point qu = unit3(q);
    const double d = geodot::dot(xu, qu);
    return geodot::Point{qu[0] - d * xu[0], qu[1] - d * xu[1], qu[2] - d * xu[2]};
  };
  const geodot::Point u = project(q1), v = project(q2);
  return std::acos(clamp1(geodot::dot(u, v) / (geodot::norm(u) * geodot::norm(v))));
}

// Exhaustive minimum over all n! assignments, mass 1/n per pair.
inline double permutation_min_cost(const geodot::ot::CostMatrix& cost) {
  const std::size_t n = cost.rows;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost.at(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(n);
}

// True iff some subset of at most max_subset support pairs admits a target
// permutation lowering its squared-distance cost by more than tol.
inline bool subset_violation_exists(const geodot::spaces::Space& space,
                                    const geodot::mono::SupportSet& support,
                                    std::size_t max_subset, double tol) {
  const std::size_t n = support.pairs.size();
  auto c = [&](std::size_t i, std::size_t j) {
    const double d = space.distance(support.pairs[i].first, support.pairs[j].second);
    return d * d;
  };
  for (std::size_t size = 2; size <= std::min(max_subset, n); ++size) {
    std::vector<bool> mask(n, false);
    std::fill(mask.end() - static_cast<long>(size), mask.end(), true);
    do {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask[i]) subset.push_back(i);
      double original = 0.0;
      for (std::size_t l : subset) original += c(l, l);
      std::vector<std::size_t> targets = subset;
      do {
        double permuted = 0.0;
        for (std::size_t i = 0; i < size; ++i) permuted += c(subset[i], targets[i]);
        if (original - permuted > tol) return true;
      } while (std::next_permutation(targets.begin(), targets.end()));
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return false;
}

// Dense Cartesian maximization of |y1+y2|^2/(|y1|^2+|y2|^2) over
// (u, v) in [-3,3]^2 with y2 = (1,0) and |y1 - y2| in [1/C, C].
inline double delta_grid(double C, int per_axis) {
  double best = 0.0;
  for (int iu = 0; iu <= per_axis; ++iu)
    for (int iv = 0; iv <= per_axis; ++iv) {
      const double u = -3.0 + 6.0 * iu / per_axis;
      const double v = -3.0 + 6.0 * iv / per_axis;
      const double r = std::hypot(u - 1.0, v);
      if (r < 1.0 / C || r > C) continue;
      const double num = (u + 1.0) * (u + 1.0) + v * v;
      const double den = u * u + v * v + 1.0;
      best = std::max(best, num / den);
    }
  return 1.0 - best / 2.0;
}

// ---- instance builders --------------------------------------------------

inline geodot::measures::DiscreteMeasure uniform_square(int n, geodot::SplitMix64& rng) {
  geodot::measures::DiscreteMeasure m;
  for (int i = 0; i < n; ++i) m.points.push_back({rng.next_u01(), rng.next_u01()});
  m.weights.assign(n, 1.0 / n);
  return m;
}

inline geodot::Point random_sphere_point(geodot::SplitMix64& rng, double radius = 1.0) {
  const double z = rng.next_in(-1.0, 1.0);
  const double phi = rng.next_in(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {radius * r * std::cos(phi), radius * r * std::sin(phi), radius * z};
}

inline std::vector<std::size_t> random_permutation(std::size_t n, geodot::SplitMix64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i)
    std::swap(p[i], p[rng.next_u64() % (i + 1)]);
  return p;
}

inline geodot::ot::TransportPlan permutation_plan(const std::vector<std::size_t>& perm,
                                                  const geodot::measures::DiscreteMeasure& mu0,
                                                  const geodot::measures::DiscreteMeasure& mu1) {
  geodot::ot::TransportPlan plan;
  plan.mu0_weights = mu0.weights;
  plan.mu1_weights = mu1.weights;
  for (std::size_t i = 0; i < perm.size(); ++i)
    plan.entries.push_back({i, perm[i], mu0.weights[i]});
  return plan;
}

}  // namespace oracles
