#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "geodot/measure.hpp"
#include "geodot/solver.hpp"
#include "geodot/space.hpp"

namespace geodot::mono {

/// Finite support set: source-target pairs in a common space.
struct SupportSet {
  std::vector<std::pair<Point, Point>> pairs;
};

/// Build the support of a plan: pairs (x_i, y_j) for entries above mass_tol.
SupportSet support_of(const ot::TransportPlan& plan, const measures::DiscreteMeasure& mu0,
                      const measures::DiscreteMeasure& mu1, double mass_tol = 1e-9);

/// A cycle of support indices whose cyclic target shift strictly lowers the
/// total squared-distance cost. indices = (l_1, ..., l_m); the shifted
/// assignment gives target y_{l_j} to source x_{l_{j+1}} (cyclically).
struct CycleViolation {
  std::vector<std::size_t> indices;
  double original_cost = 0.0;  // sum of c(x_l, y_l) over the cycle
  double permuted_cost = 0.0;  // sum of c(x_{l+1}, y_l) over the cycle
  double deficit = 0.0;        // original - permuted, strictly positive
};

/// Certificate that no negative cycle exists among the support pairs.
struct MonotoneCertificate {
  double min_cycle_mean = 0.0;
  std::size_t pairs = 0;
};

using CyclicalResult = std::variant<MonotoneCertificate, CycleViolation>;

/// Checks c-cyclical monotonicity of the support exactly, at all cycle
/// lengths, by negative-cycle detection on the digraph with arc weights
/// w(l -> l') = c(x_{l'}, y_l) - c(x_l, y_l). Costs are squared distances
/// of the given space. Returns the most negative simple cycle found, or a
/// certificate with the minimum cycle mean.
CyclicalResult check_cyclical(const spaces::Space& space, const SupportSet& support);

inline bool is_monotone(const CyclicalResult& r) {
  return std::holds_alternative<MonotoneCertificate>(r);
}

/// Geodesic restriction: {(x, geodesic_point(x, y, t))} with the space's
/// canonical geodesic selection. Pairs that collapse onto each other (t = 0
/// with shared sources) are deduplicated, keeping set semantics.
SupportSet restrict_support(const spaces::Space& space, const SupportSet& support, double t);

struct DeltaProblem {
  double C = 0.0;
  double delta = 0.0;
  Point y1;  // maximizer, with y2 fixed at (1, 0) by rotation invariance
  Point y2;
};

/// Largest delta with (1/2)|y1+y2|^2 <= (1-delta)(|y1|^2+|y2|^2) over the
/// compact set K = { |y2| = 1, |y2-y1| in [1/C, C] }. Grid search over the
/// rotation-reduced plane followed by projected local refinement to 1e-8.
DeltaProblem delta_of_c(double C, int resolution = 1000);

}  // namespace geodot::mono
