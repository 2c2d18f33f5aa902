#include "geodot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "geodot/rng.hpp"

namespace geodot::ot {

namespace {

constexpr double kMarginalTol = 1e-10;
constexpr double kSupportTol = 1e-9;

struct Simplex {
  std::size_t m, n;
  const CostMatrix& cost;
  std::vector<double> mass;      // dense m*n working masses
  std::vector<char> in_basis;    // dense m*n flags
  std::vector<double> u, v;      // node potentials
  long pivots = 0;
  long degenerate = 0;

  Simplex(std::size_t m_, std::size_t n_, const CostMatrix& c)
      : m(m_), n(n_), cost(c), mass(m_ * n_, 0.0), in_basis(m_ * n_, 0), u(m_), v(n_) {}

  std::size_t idx(std::size_t i, std::size_t j) const { return i * n + j; }

  void northwest_start(std::vector<double> a, std::vector<double> b) {
    std::size_t i = 0, j = 0;
    for (;;) {
      double q = std::min(a[i], b[j]);
      mass[idx(i, j)] = q;
      in_basis[idx(i, j)] = 1;
      a[i] -= q;
      b[j] -= q;
      if (i == m - 1 && j == n - 1) break;
      if ((a[i] <= b[j] && i < m - 1) || j == n - 1)
        ++i;
      else
        ++j;
    }
  }

  // Solve u_i + v_j = c_ij over the basis tree, rooted at source node 0.
  void compute_potentials() {
    std::size_t nodes = m + n;
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (in_basis[idx(i, j)]) {
          adj[i].push_back(m + j);
          adj[m + j].push_back(i);
        }
    std::vector<char> seen(nodes, 0);
    std::vector<std::size_t> stack{0};
    u[0] = 0.0;
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
      std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t next : adj[node]) {
        if (seen[next]) continue;
        seen[next] = 1;
        ++visited;
        if (node < m)
          v[next - m] = cost.at(node, next - m) - u[node];
        else
          u[next] = cost.at(next, node - m) - v[node - m];
        stack.push_back(next);
      }
    }
    require(visited == nodes, Status::Internal, "basis does not span the bipartite graph");
  }

  // Tree path between the endpoints of the entering arc, as a node list
  // from source node ei to sink node m+ej.
  std::vector<std::size_t> tree_path(std::size_t ei, std::size_t ej) const {
    std::size_t nodes = m + n;
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (in_basis[idx(i, j)]) {
          adj[i].push_back(m + j);
          adj[m + j].push_back(i);
        }
    std::vector<long> parent(nodes, -1);
    std::vector<char> seen(nodes, 0);
    std::vector<std::size_t> queue{ei};
    seen[ei] = 1;
    for (std::size_t head = 0; head < queue.size() && !seen[m + ej]; ++head) {
      std::size_t node = queue[head];
      for (std::size_t next : adj[node])
        if (!seen[next]) {
          seen[next] = 1;
          parent[next] = static_cast<long>(node);
          queue.push_back(next);
        }
    }
    require(seen[m + ej], Status::Internal, "basis tree is disconnected");
    std::vector<std::size_t> path;
    for (long node = static_cast<long>(m + ej); node != -1; node = parent[node])
      path.push_back(static_cast<std::size_t>(node));
    std::reverse(path.begin(), path.end());
    return path;
  }

  void run() {
    double cmax = 0.0;
    for (double c : cost.c) cmax = std::max(cmax, std::abs(c));
    double eps = 1e-12 * (1.0 + cmax);
    for (;;) {
      compute_potentials();
      // Bland's rule: lowest-index arc with negative reduced cost enters.
      std::size_t enter = mass.size();
      for (std::size_t i = 0; i < m && enter == mass.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!in_basis[idx(i, j)] && cost.at(i, j) - u[i] - v[j] < -eps) {
            enter = idx(i, j);
            break;
          }
      if (enter == mass.size()) return;
      std::size_t ei = enter / n, ej = enter % n;

      // Alternating cycle: the entering arc takes +delta, then signs flip
      // along the tree path from sink back to source.
      std::vector<std::size_t> path = tree_path(ei, ej);
      std::vector<std::size_t> minus_arcs;
      for (std::size_t step = path.size() - 1; step > 0; --step) {
        std::size_t a = path[step], b = path[step - 1];
        std::size_t i = std::min(a, b), j = std::max(a, b) - m;
        // Walking from the sink end, the first tree arc carries -delta and
        // signs alternate from there.
        std::size_t pos = path.size() - 1 - step;
        if (pos % 2 == 0) minus_arcs.push_back(idx(i, j));
      }
      double delta = std::numeric_limits<double>::infinity();
      for (std::size_t arc : minus_arcs) delta = std::min(delta, mass[arc]);
      std::size_t leave = mass.size();
      for (std::size_t arc : minus_arcs)
        if (mass[arc] == delta && (leave == mass.size() || arc < leave)) leave = arc;
      require(leave != mass.size(), Status::Internal, "no blocking arc on pivot cycle");

      mass[enter] += delta;
      for (std::size_t step = path.size() - 1; step > 0; --step) {
        std::size_t a = path[step], b = path[step - 1];
        std::size_t arc = idx(std::min(a, b), std::max(a, b) - m);
        std::size_t pos = path.size() - 1 - step;
        mass[arc] += (pos % 2 == 0) ? -delta : delta;
      }
      mass[leave] = 0.0;
      in_basis[enter] = 1;
      in_basis[leave] = 0;
      ++pivots;
      if (delta == 0.0) ++degenerate;
    }
  }
};

}  // namespace

CostMatrix build_cost_matrix(const spaces::Space& space, const measures::DiscreteMeasure& mu0,
                             const measures::DiscreteMeasure& mu1) {
  CostMatrix cm;
  cm.rows = mu0.size();
  cm.cols = mu1.size();
  cm.c.resize(cm.rows * cm.cols);
  for (std::size_t i = 0; i < cm.rows; ++i)
    for (std::size_t j = 0; j < cm.cols; ++j) {
      double d = space.distance(mu0.points[i], mu1.points[j]);
      cm.at(i, j) = d * d;
    }
  return cm;
}

void validate_plan(const TransportPlan& plan) {
  std::vector<double> row(plan.mu0_weights.size(), 0.0), col(plan.mu1_weights.size(), 0.0);
  double total = 0.0;
  for (const PlanEntry& e : plan.entries) {
    require(e.i < row.size() && e.j < col.size(), Status::InvalidArgument,
            "plan entry index out of range");
    require(std::isfinite(e.mass) && e.mass >= 0.0, Status::InvalidArgument,
            "plan entry mass must be nonnegative");
    row[e.i] += e.mass;
    col[e.j] += e.mass;
    total += e.mass;
  }
  for (std::size_t i = 0; i < row.size(); ++i)
    require(std::abs(row[i] - plan.mu0_weights[i]) <= kMarginalTol, Status::InvalidArgument,
            "plan row sum does not match source marginal at index " + std::to_string(i));
  for (std::size_t j = 0; j < col.size(); ++j)
    require(std::abs(col[j] - plan.mu1_weights[j]) <= kMarginalTol, Status::InvalidArgument,
            "plan column sum does not match target marginal at index " + std::to_string(j));
  require(std::abs(total - 1.0) <= kMarginalTol, Status::InvalidArgument,
          "plan total mass is not 1");
}

TransportPlan solve(const measures::DiscreteMeasure& mu0, const measures::DiscreteMeasure& mu1,
                    const CostMatrix& cost) {
  std::size_t m = mu0.size(), n = mu1.size();
  require(m >= 1 && n >= 1, Status::InvalidArgument, "empty measure");
  require(cost.rows == m && cost.cols == n, Status::DimensionMismatch,
          "cost matrix does not match measure sizes");
  for (double c : cost.c)
    require(std::isfinite(c), Status::InvalidArgument, "non-finite cost entry");

  Simplex simplex(m, n, cost);
  simplex.northwest_start(mu0.weights, mu1.weights);
  simplex.run();

  TransportPlan plan;
  plan.mu0_weights = mu0.weights;
  plan.mu1_weights = mu1.weights;
  plan.pivots = simplex.pivots;
  plan.degenerate_pivots = simplex.degenerate;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double q = simplex.mass[simplex.idx(i, j)];
      if (q > 0.0) plan.entries.push_back({i, j, q});
    }
  validate_plan(plan);
  return plan;
}

double plan_cost(const TransportPlan& plan, const CostMatrix& cost) {
  double total = 0.0;
  for (const PlanEntry& e : plan.entries) {
    require(e.i < cost.rows && e.j < cost.cols, Status::DimensionMismatch,
            "plan entry outside cost matrix");
    total += e.mass * cost.at(e.i, e.j);
  }
  return total;
}

BruteForceResult brute_force_solve(const measures::DiscreteMeasure& mu0,
                                   const measures::DiscreteMeasure& mu1, const CostMatrix& cost) {
  std::size_t n = mu0.size();
  require(mu1.size() == n, Status::InvalidArgument, "supports must have equal size");
  require(n >= 1 && n <= 8, Status::ScaleExceeded, "oracle scale exceeded (n must be <= 8)");
  require(cost.rows == n && cost.cols == n, Status::DimensionMismatch,
          "cost matrix does not match measure sizes");
  for (double w : mu0.weights)
    require(std::abs(w - 1.0 / static_cast<double>(n)) <= 1e-12, Status::InvalidArgument,
            "brute force requires uniform weights");
  for (double w : mu1.weights)
    require(std::abs(w - 1.0 / static_cast<double>(n)) <= 1e-12, Status::InvalidArgument,
            "brute force requires uniform weights");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost.at(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));

  BruteForceResult result;
  double tie_tol = 1e-12 * (1.0 + std::abs(best));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost.at(i, perm[i]);
    if (total <= best + tie_tol) result.argmin_set.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  result.cost = best / static_cast<double>(n);
  return result;
}

MapCertificate detect_map(const TransportPlan& plan, double mass_tol) {
  double min_weight = std::numeric_limits<double>::infinity();
  for (double w : plan.mu0_weights) min_weight = std::min(min_weight, w);
  for (double w : plan.mu1_weights) min_weight = std::min(min_weight, w);
  require(mass_tol >= 0.0 && mass_tol < min_weight / 2.0, Status::InvalidArgument,
          "mass tolerance must lie in [0, min weight / 2)");

  MapCertificate cert;
  std::size_t m = plan.mu0_weights.size();
  cert.assignment.assign(m, -1);
  std::vector<int> carriers(m, 0);
  for (const PlanEntry& e : plan.entries)
    if (e.mass > mass_tol) {
      ++carriers[e.i];
      cert.assignment[e.i] = static_cast<long>(e.j);
    }
  for (std::size_t i = 0; i < m; ++i)
    if (carriers[i] != 1) {
      cert.split_rows.push_back(i);
      cert.assignment[i] = -1;
    }
  cert.is_map = cert.split_rows.empty();
  return cert;
}

UniquenessReport uniqueness_probe(const measures::DiscreteMeasure& mu0,
                                  const measures::DiscreteMeasure& mu1, const CostMatrix& cost,
                                  int n_perturbations, double eta, std::uint64_t seed) {
  require(n_perturbations >= 2, Status::InvalidArgument, "need at least 2 perturbations");
  require(eta > 0.0, Status::InvalidArgument, "perturbation magnitude must be positive");

  double cmax = 0.0;
  for (double c : cost.c) cmax = std::max(cmax, std::abs(c));
  double amplitude = eta * (1.0 + cmax);

  SplitMix64 root(seed);
  UniquenessReport report;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> supports;
  std::vector<TransportPlan> plans;
  for (int p = 0; p < n_perturbations; ++p) {
    SplitMix64 rng = root.split();
    CostMatrix perturbed = cost;
    for (double& c : perturbed.c) c += amplitude * (2.0 * rng.next_u01() - 1.0);
    TransportPlan plan = solve(mu0, mu1, perturbed);
    std::vector<std::pair<std::size_t, std::size_t>> support;
    for (const PlanEntry& e : plan.entries)
      if (e.mass > kSupportTol) support.emplace_back(e.i, e.j);
    std::sort(support.begin(), support.end());
    report.costs.push_back(plan_cost(plan, cost));
    supports.push_back(std::move(support));
    plans.push_back(std::move(plan));
  }

  for (std::size_t a = 0; a < supports.size() && report.unique; ++a)
    for (std::size_t b = a + 1; b < supports.size(); ++b)
      if (supports[a] != supports[b] && std::abs(report.costs[a] - report.costs[b]) <= 1e-9) {
        report.unique = false;
        report.witnesses = {plans[a], plans[b]};
        break;
      }
  return report;
}

}  // namespace geodot::ot
