#pragma once

#include <optional>
#include <string>

#include "geodot/chart.hpp"
#include "geodot/monotonicity.hpp"

namespace geodot::mono {

/// Parameter ledger of the quadruple search. The constants are tied
/// together: epsilon = delta(2 k_class)/100 and epsilon_hat =
/// epsilon/(80 k_class^4); t is the contraction parameter the search
/// derives from chart data.
struct WitnessParams {
  int k_class = 0;
  double epsilon = 0.0;
  double epsilon_hat = 0.0;
  double t = 0.0;
};

/// Derives the consistent parameter set for a class index.
WitnessParams params_for_class(int k_class);

void validate_params(const WitnessParams& params);

struct WitnessOptions {
  double mass_tol = 1e-9;
  /// Truncation radius of the search cone in chart coordinates. Zero means
  /// "use the chart domain radius". The value used is always logged in the
  /// result; sample density at desk scale rarely supports the tiny radii a
  /// continuum argument would pick.
  double cone_radius = 0.0;
  /// Geodesic-parameter schedule for chart-velocity estimates.
  std::vector<double> velocity_schedule = {0.1, 0.05, 0.025, 0.0125};
  /// The cone opening starts at epsilon_hat and doubles up to this cap
  /// before the search gives up.
  double max_opening = 0.7853981633974483;  // pi/4
  int k_cap = 64;
  /// When set, every split row is classified against exactly these
  /// parameters instead of the per-row smallest class.
  std::optional<WitnessParams> pinned;
};

/// A 2-cycle of the t-restricted support that strictly lowers cost:
/// row1 keeps its second restricted target, row2 its first, and swapping
/// them wins. For an exactly optimal plan no such quadruple can exist.
struct WitnessQuadruple {
  std::size_t row1 = 0;  // split source index (x1)
  std::size_t row2 = 0;  // companion source index (x2)
  Point x1, x2;
  Point y1_target;       // first target of x1 (nearer, per the split ordering)
  Point y2_target;       // second target of x1
  Point gamma2_x1_t;     // geodesic_point(x1, y2_target, t)
  Point gamma1_x2_t;     // geodesic_point(x2, first target of x2, t)
  double original_cost = 0.0;  // d^2(x1, gamma2_x1_t) + d^2(x2, gamma1_x2_t)
  double permuted_cost = 0.0;  // d^2(x2, gamma2_x1_t) + d^2(x1, gamma1_x2_t)
  double deficit = 0.0;
  WitnessParams params;
  Point bucket_y1, bucket_y2;  // chart velocities that aimed the cone
  double opening_used = 0.0;
  bool widened = false;
  double cone_radius_used = 0.0;
};

struct WitnessResult {
  std::optional<WitnessQuadruple> witness;
  std::string reason;       // set when no witness was found
  int split_rows = 0;
  int classified_rows = 0;  // split rows that fit some class within the cap
  int buckets = 0;
  int candidates_tested = 0;
};

/// Searches a split plan for a quadruple (x2, x1, gamma2_x1(t), gamma1_x2(t))
/// whose swap strictly improves the restricted support. Split rows are
/// ordered by the nearer-target-first convention, classified by the
/// distance and separation-ratio bounds [1/k, k], grouped into buckets of
/// chart velocities agreeing within epsilon_hat, and companions are sought
/// in the chart cone aimed along (y2 - y1) with the opening widening
/// geometrically up to the cap. The contraction parameter solves
/// 2 |phi(x2) - phi(x1)| = t |y2 - y1|. Deterministic: the lowest
/// (opening, row1, row2) witness wins.
WitnessResult witness_search(const spaces::Space& space, const measures::DiscreteMeasure& mu0,
                             const measures::DiscreteMeasure& mu1, const ot::TransportPlan& plan,
                             const charts::Chart& chart, const WitnessOptions& options = {});

}  // namespace geodot::mono
