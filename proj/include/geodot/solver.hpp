#pragma once

#include <cstdint>
#include <vector>

#include "geodot/measure.hpp"
#include "geodot/space.hpp"

namespace geodot::ot {

/// Dense matrix of squared distances c[i][j] = d(x_i, y_j)^2. Always built
/// from a space's metric, never ingested pre-squared.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> c;  // row-major

  double at(std::size_t i, std::size_t j) const { return c[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return c[i * cols + j]; }
};

CostMatrix build_cost_matrix(const spaces::Space& space, const measures::DiscreteMeasure& mu0,
                             const measures::DiscreteMeasure& mu1);

struct PlanEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double mass = 0.0;
};

/// Sparse coupling with its marginals. Entries produced by the solver form
/// a basic feasible solution: at most rows + cols - 1 of them.
struct TransportPlan {
  std::vector<PlanEntry> entries;
  std::vector<double> mu0_weights;
  std::vector<double> mu1_weights;
  long pivots = 0;
  long degenerate_pivots = 0;
};

/// Throws unless the plan's row/column sums match its recorded marginals
/// within 1e-10 and the total mass is 1 within 1e-10.
void validate_plan(const TransportPlan& plan);

/// Exact solve of the discrete Kantorovich problem by network simplex on
/// the bipartite transportation graph. Bland's rule (lowest-index entering
/// arc with negative reduced cost) prevents cycling; the leaving arc is the
/// lowest-index blocking arc. Deterministic for fixed inputs.
TransportPlan solve(const measures::DiscreteMeasure& mu0, const measures::DiscreteMeasure& mu1,
                    const CostMatrix& cost);

double plan_cost(const TransportPlan& plan, const CostMatrix& cost);

struct BruteForceResult {
  double cost = 0.0;                                  // optimal plan cost (mass-weighted)
  std::vector<std::vector<std::size_t>> argmin_set;   // all optimal permutations
};

/// Exhaustive minimum over all n! assignments. Requires equal-size supports
/// with uniform weights and n <= 8.
BruteForceResult brute_force_solve(const measures::DiscreteMeasure& mu0,
                                   const measures::DiscreteMeasure& mu1, const CostMatrix& cost);

struct MapCertificate {
  bool is_map = false;
  std::vector<std::size_t> split_rows;      // sources with >= 2 carriers above mass_tol
  std::vector<long> assignment;             // per source: target index, or -1 if split
};

/// Classifies the plan as induced by a map (every source has one carrier
/// above mass_tol) or split.
MapCertificate detect_map(const TransportPlan& plan, double mass_tol);

struct UniquenessReport {
  bool unique = true;
  std::vector<TransportPlan> witnesses;  // two plans with equal cost, different support
  std::vector<double> costs;             // unperturbed costs of all probe solves
};

/// Probes optimizer uniqueness by re-solving under n_perturbations random
/// cost perturbations of relative magnitude eta and comparing the supports
/// of the solutions at the unperturbed cost. Reports non-unique when two
/// probe solutions differ in support but tie in cost within 1e-9.
UniquenessReport uniqueness_probe(const measures::DiscreteMeasure& mu0,
                                  const measures::DiscreteMeasure& mu1, const CostMatrix& cost,
                                  int n_perturbations, double eta, std::uint64_t seed);

}  // namespace geodot::ot
