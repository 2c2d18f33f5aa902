#include "geodot/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geodot::mono {

namespace {

constexpr double kDedupeTol = 1e-12;

double sq(double x) { return x * x; }

double pair_cost(const spaces::Space& space, const Point& x, const Point& y) {
  return sq(space.distance(x, y));
}

// Arc weight matrix w[l][l'] = c(x_{l'}, y_l) - c(x_l, y_l).
std::vector<double> arc_weights(const spaces::Space& space, const SupportSet& support) {
  std::size_t n = support.pairs.size();
  std::vector<double> own(n);
  for (std::size_t l = 0; l < n; ++l)
    own[l] = pair_cost(space, support.pairs[l].first, support.pairs[l].second);
  std::vector<double> w(n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k)
      w[l * n + k] = pair_cost(space, support.pairs[k].first, support.pairs[l].second) - own[l];
  return w;
}

double cycle_weight(const std::vector<double>& w, std::size_t n,
                    const std::vector<std::size_t>& cycle) {
  double total = 0.0;
  for (std::size_t p = 0; p < cycle.size(); ++p)
    total += w[cycle[p] * n + cycle[(p + 1) % cycle.size()]];
  return total;
}

// Karp's minimum cycle mean over the complete digraph minus the diagonal
// (self-arcs have weight 0 and would mask the true margin), with the
// all-zeros start acting as a virtual source reaching every node.
double min_cycle_mean(const std::vector<double>& w, std::size_t n) {
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n, 0.0));
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t v = 0; v < n; ++v) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t u = 0; u < n; ++u)
        if (u != v) best = std::min(best, d[k - 1][u] + w[u * n + v]);
      d[k][v] = best;
    }
  double mean = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < n; ++v) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
      worst = std::max(worst, (d[n][v] - d[k][v]) / static_cast<double>(n - k));
    mean = std::min(mean, worst);
  }
  return mean;
}

// Ratio maximized by the concavity gap: |y1+y2|^2 / (|y1|^2+|y2|^2)
// with y2 = (1, 0) fixed.
double ratio_form(double u, double v) {
  double num = sq(u + 1.0) + sq(v);
  double den = sq(u) + sq(v) + 1.0;
  return num / den;
}

// Clamp y1 = (u, v) radially into the annulus 1/C <= |y1 - (1,0)| <= C.
void project_feasible(double C, double& u, double& v) {
  double du = u - 1.0, dv = v;
  double r = std::hypot(du, dv);
  if (r < 1.0 / C) {
    if (r == 0.0) {
      u = 1.0 + 1.0 / C;
      v = 0.0;
      return;
    }
    double f = (1.0 / C) / r;
    u = 1.0 + du * f;
    v = dv * f;
  } else if (r > C) {
    double f = C / r;
    u = 1.0 + du * f;
    v = dv * f;
  }
}

}  // namespace

SupportSet support_of(const ot::TransportPlan& plan, const measures::DiscreteMeasure& mu0,
                      const measures::DiscreteMeasure& mu1, double mass_tol) {
  SupportSet support;
  for (const ot::PlanEntry& e : plan.entries)
    if (e.mass > mass_tol) support.pairs.emplace_back(mu0.points[e.i], mu1.points[e.j]);
  return support;
}

CyclicalResult check_cyclical(const spaces::Space& space, const SupportSet& support) {
  std::size_t n = support.pairs.size();
  require(n >= 1, Status::InvalidArgument, "support set is empty");
  std::vector<double> w = arc_weights(space, support);

  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, std::abs(x));
  double neg_tol = 1e-11 * (1.0 + wmax);

  // Bellman-Ford from a virtual source (all labels start at 0). Any arc
  // still improvable after n rounds sits on or leads into a negative cycle.
  std::vector<double> dist(n, 0.0);
  std::vector<long> pred(n, -1);
  for (std::size_t round = 0; round < n; ++round) {
    bool changed = false;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && dist[u] + w[u * n + v] < dist[v] - 1e-18) {
          dist[v] = dist[u] + w[u * n + v];
          pred[v] = static_cast<long>(u);
          changed = true;
        }
    if (!changed) break;
  }

  std::vector<std::vector<std::size_t>> candidates;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && dist[u] + w[u * n + v] < dist[v] - neg_tol) {
        // Walk predecessors from u until a repeat closes a cycle.
        std::vector<long> seen(n, -1);
        std::vector<std::size_t> walk;
        long node = static_cast<long>(u);
        while (node != -1 && seen[node] == -1) {
          seen[node] = static_cast<long>(walk.size());
          walk.push_back(static_cast<std::size_t>(node));
          node = pred[node];
        }
        if (node == -1) continue;
        std::vector<std::size_t> cycle(walk.begin() + seen[node], walk.end());
        std::reverse(cycle.begin(), cycle.end());
        if (cycle_weight(w, n, cycle) < -neg_tol) candidates.push_back(std::move(cycle));
      }

  if (candidates.empty()) {
    // Sanity pass over all 2-cycles, which dominate desk-scale violations.
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (w[u * n + v] + w[v * n + u] < -neg_tol) candidates.push_back({u, v});
  }

  if (candidates.empty()) {
    MonotoneCertificate cert;
    cert.pairs = n;
    cert.min_cycle_mean = n >= 2 ? min_cycle_mean(w, n) : 0.0;
    return cert;
  }

  const std::vector<std::size_t>* best = nullptr;
  double best_weight = 0.0;
  for (const auto& cycle : candidates) {
    double cw = cycle_weight(w, n, cycle);
    if (best == nullptr || cw < best_weight ||
        (cw == best_weight && cycle < *best)) {
      best = &cycle;
      best_weight = cw;
    }
  }

  CycleViolation violation;
  // Rotate the cycle so the smallest index leads, for deterministic output.
  std::vector<std::size_t> cycle = *best;
  auto lead = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), lead, cycle.end());
  violation.indices = cycle;
  for (std::size_t p = 0; p < cycle.size(); ++p) {
    std::size_t l = cycle[p];
    std::size_t next = cycle[(p + 1) % cycle.size()];
    violation.original_cost += pair_cost(space, support.pairs[l].first, support.pairs[l].second);
    violation.permuted_cost += pair_cost(space, support.pairs[next].first, support.pairs[l].second);
  }
  violation.deficit = violation.original_cost - violation.permuted_cost;
  return violation;
}

SupportSet restrict_support(const spaces::Space& space, const SupportSet& support, double t) {
  require(t >= 0.0 && t <= 1.0, Status::InvalidArgument, "restriction parameter outside [0,1]");
  SupportSet out;
  for (const auto& [x, y] : support.pairs) {
    Point yt = space.geodesic_point(x, y, t);
    bool dup = false;
    for (const auto& [px, py] : out.pairs)
      if (space.distance(px, x) + space.distance(py, yt) <= kDedupeTol) {
        dup = true;
        break;
      }
    if (!dup) out.pairs.emplace_back(x, std::move(yt));
  }
  return out;
}

DeltaProblem delta_of_c(double C, int resolution) {
  require(std::isfinite(C) && C > 1.0, Status::InvalidArgument, "C must exceed 1");
  require(resolution >= 1000, Status::InvalidArgument, "grid resolution must be >= 1000 per axis");

  // y2 = (1, 0) after rotation; y1 ranges over the annulus of radii
  // [1/C, C] around y2, inside the bounding box [1-C, 1+C] x [-C, C].
  double best = 0.0, bu = 1.0 + 1.0 / C, bv = 0.0;
  for (int iu = 0; iu <= resolution; ++iu)
    for (int iv = 0; iv <= resolution; ++iv) {
      double u = 1.0 - C + 2.0 * C * iu / resolution;
      double v = -C + 2.0 * C * iv / resolution;
      double r = std::hypot(u - 1.0, v);
      if (r < 1.0 / C || r > C) continue;
      double val = ratio_form(u, v);
      if (val > best) {
        best = val;
        bu = u;
        bv = v;
      }
    }

  // Projected pattern search, shrinking steps from one grid cell to 1e-10.
  double step = 2.0 * C / resolution;
  while (step > 1e-10) {
    bool improved = false;
    for (auto [du, dv] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
      double u = bu + du, v = bv + dv;
      project_feasible(C, u, v);
      double val = ratio_form(u, v);
      if (val > best) {
        best = val;
        bu = u;
        bv = v;
        improved = true;
      }
    }
    if (!improved) step /= 2.0;
  }

  DeltaProblem out;
  out.C = C;
  out.delta = 1.0 - best / 2.0;
  out.y1 = {bu, bv};
  out.y2 = {1.0, 0.0};
  return out;
}

}  // namespace geodot::mono
