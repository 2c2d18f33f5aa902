#include "geodot/witness.hpp"

#include <algorithm>
#include <cmath>

#include "geodot/extrapolate.hpp"

namespace geodot::mono {

namespace {

double sq(double x) { return x * x; }

struct RowInfo {
  std::size_t row = 0;
  Point x;
  std::vector<std::size_t> carriers;  // target indices, nearer target first
  bool split = false;
  bool in_chart = false;
  bool has_velocity = false;
  Point phi;
  Point v1, v2;      // chart velocities toward the first/second target
  int k_class = 0;   // 0 when unclassified
};

// Chart velocity of the geodesic from x to the target, normalized by the
// geodesic parameter: extrapolated (phi(gamma(s)) - phi(x)) / s.
std::optional<Point> chart_velocity(const charts::Chart& chart, const Point& x, const Point& target,
                                    const std::vector<double>& schedule, const Point& phi0) {
  const spaces::Space& space = chart.space();
  std::size_t dim = phi0.size();
  std::vector<std::vector<double>> quotients(dim);
  std::vector<double> h;
  for (double s : schedule) {
    Point p = space.geodesic_point(x, target, s);
    if (!chart.in_domain(p)) return std::nullopt;
    Point phi = chart.eval(p);
    for (std::size_t i = 0; i < dim; ++i) quotients[i].push_back((phi[i] - phi0[i]) / s);
    h.push_back(s);
  }
  Point v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = extrapolate_to_zero(h, quotients[i]);
  return v;
}

}  // namespace

WitnessParams params_for_class(int k_class) {
  require(k_class >= 1, Status::InvalidArgument, "class index must be >= 1");
  WitnessParams p;
  p.k_class = k_class;
  p.epsilon = delta_of_c(2.0 * k_class).delta / 100.0;
  double k4 = std::pow(static_cast<double>(k_class), 4);
  p.epsilon_hat = p.epsilon / (80.0 * k4);
  p.t = 0.0;
  return p;
}

void validate_params(const WitnessParams& params) {
  require(params.k_class >= 1, Status::InvalidArgument, "class index must be >= 1");
  WitnessParams ref = params_for_class(params.k_class);
  require(std::abs(params.epsilon - ref.epsilon) <= 1e-12 * (1.0 + ref.epsilon),
          Status::InvalidArgument, "epsilon is not delta(2k)/100 for this class");
  require(std::abs(params.epsilon_hat - ref.epsilon_hat) <= 1e-12 * (1.0 + ref.epsilon_hat),
          Status::InvalidArgument, "epsilon_hat is not epsilon/(80 k^4) for this class");
  if (params.t != 0.0)
    require(params.t > 0.0 && params.t <= 1.0, Status::InvalidArgument,
            "contraction parameter must lie in (0, 1]");
}

WitnessResult witness_search(const spaces::Space& space, const measures::DiscreteMeasure& mu0,
                             const measures::DiscreteMeasure& mu1, const ot::TransportPlan& plan,
                             const charts::Chart& chart, const WitnessOptions& options) {
  require(options.mass_tol >= 0.0, Status::InvalidArgument, "mass tolerance must be nonnegative");
  require(options.max_opening > 0.0 && options.max_opening < M_PI, Status::InvalidArgument,
          "opening cap must lie in (0, pi)");
  if (options.pinned) validate_params(*options.pinned);

  double cone_radius = options.cone_radius > 0.0 ? options.cone_radius : chart.radius();
  WitnessResult result;

  // Collect carriers per source row, nearer target first; on distance ties
  // the lower target index comes first.
  std::size_t m = mu0.size();
  std::vector<RowInfo> rows(m);
  std::vector<std::vector<std::size_t>> carriers(m);
  for (const ot::PlanEntry& e : plan.entries)
    if (e.mass > options.mass_tol) carriers[e.i].push_back(e.j);
  for (std::size_t i = 0; i < m; ++i) {
    RowInfo& row = rows[i];
    row.row = i;
    row.x = mu0.points[i];
    row.carriers = carriers[i];
    std::sort(row.carriers.begin(), row.carriers.end(), [&](std::size_t a, std::size_t b) {
      double da = space.distance(row.x, mu1.points[a]);
      double db = space.distance(row.x, mu1.points[b]);
      if (da != db) return da < db;
      return a < b;
    });
    row.split = row.carriers.size() >= 2;
    if (row.split) ++result.split_rows;
  }
  if (result.split_rows == 0) {
    result.reason = "no split row";
    return result;
  }

  // Chart data and velocities. Rows outside the chart or with geodesic
  // probes escaping it cannot participate.
  for (RowInfo& row : rows) {
    if (row.carriers.empty()) continue;
    if (!chart.in_domain(row.x)) continue;
    row.in_chart = true;
    row.phi = chart.eval(row.x);
    auto v1 = chart_velocity(chart, row.x, mu1.points[row.carriers[0]], options.velocity_schedule,
                             row.phi);
    if (!v1) continue;
    row.v1 = *v1;
    if (row.split) {
      auto v2 = chart_velocity(chart, row.x, mu1.points[row.carriers[1]],
                               options.velocity_schedule, row.phi);
      if (!v2) continue;
      row.v2 = *v2;
    }
    row.has_velocity = true;
  }

  // Classify split rows: the class must bound the second-target distance
  // and the separation ratios d(gamma1(s), gamma2(s))/s at probe scales
  // s <= 1/k, all within [1/k, k].
  for (RowInfo& row : rows) {
    if (!row.split || !row.has_velocity) continue;
    const Point& y1 = mu1.points[row.carriers[0]];
    const Point& y2 = mu1.points[row.carriers[1]];
    double d2 = space.distance(row.x, y2);
    if (d2 <= 0.0) continue;
    auto fits = [&](int k) {
      double lo = 1.0 / k, hi = static_cast<double>(k);
      if (d2 < lo || d2 > hi) return false;
      std::vector<double> scales;
      for (double s : options.velocity_schedule)
        if (s <= 1.0 / k) scales.push_back(s);
      if (scales.empty())
        scales.push_back(*std::min_element(options.velocity_schedule.begin(),
                                           options.velocity_schedule.end()));
      for (double s : scales) {
        double ratio =
            space.distance(space.geodesic_point(row.x, y1, s), space.geodesic_point(row.x, y2, s)) / s;
        if (ratio < lo || ratio > hi) return false;
      }
      return true;
    };
    if (options.pinned) {
      if (fits(options.pinned->k_class)) row.k_class = options.pinned->k_class;
    } else {
      for (int k = 1; k <= options.k_cap; ++k)
        if (fits(k)) {
          row.k_class = k;
          break;
        }
    }
    if (row.k_class > 0) ++result.classified_rows;
  }
  if (result.classified_rows == 0) {
    result.reason = options.pinned ? "no split row fits the pinned class"
                                   : "no split row fits any class within the cap";
    return result;
  }

  // Bucket split rows of the same class by velocity agreement within
  // epsilon_hat; the lowest-index member leads and donates (y1, y2).
  struct Bucket {
    WitnessParams params;
    std::vector<std::size_t> members;  // row indices, ascending
    Point y1, y2;
  };
  std::vector<Bucket> buckets;
  std::vector<char> bucketed(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].k_class == 0 || bucketed[i]) continue;
    Bucket bucket;
    bucket.params = options.pinned ? *options.pinned : params_for_class(rows[i].k_class);
    bucket.params.t = 0.0;
    bucket.y1 = rows[i].v1;
    bucket.y2 = rows[i].v2;
    for (std::size_t j = i; j < m; ++j) {
      if (rows[j].k_class != rows[i].k_class || bucketed[j]) continue;
      if (dist(rows[j].v1, bucket.y1) <= bucket.params.epsilon_hat &&
          dist(rows[j].v2, bucket.y2) <= bucket.params.epsilon_hat) {
        bucket.members.push_back(j);
        bucketed[j] = 1;
      }
    }
    buckets.push_back(std::move(bucket));
  }
  result.buckets = static_cast<int>(buckets.size());

  for (const Bucket& bucket : buckets) {
    Point dir = sub(bucket.y2, bucket.y1);
    double gap = norm(dir);
    if (gap <= 1e-12) continue;
    dir = scale(dir, 1.0 / gap);

    // Companion pool: any row whose first-target velocity agrees with the
    // bucket's y1 within epsilon_hat.
    std::vector<std::size_t> pool;
    for (std::size_t j = 0; j < m; ++j)
      if (rows[j].has_velocity && dist(rows[j].v1, bucket.y1) <= bucket.params.epsilon_hat)
        pool.push_back(j);

    std::vector<double> openings;
    for (double o = std::min(bucket.params.epsilon_hat, options.max_opening);;
         o = std::min(o * 2.0, options.max_opening)) {
      openings.push_back(o);
      if (o >= options.max_opening) break;
    }

    for (double opening : openings) {
      for (std::size_t i1 : bucket.members) {
        const RowInfo& r1 = rows[i1];
        for (std::size_t i2 : pool) {
          if (i2 == i1) continue;
          const RowInfo& r2 = rows[i2];
          Point offset = sub(r2.phi, r1.phi);
          double offset_len = norm(offset);
          if (offset_len <= 0.0 || offset_len >= cone_radius) continue;
          if (dot(offset, dir) <= std::cos(opening) * offset_len) continue;

          double t = 2.0 * offset_len / gap;
          ++result.candidates_tested;
          if (t <= 0.0 || t > 1.0) continue;

          const Point& y2_target = mu1.points[r1.carriers[1]];
          const Point& y1_of_x2 = mu1.points[r2.carriers[0]];
          Point g2x1 = space.geodesic_point(r1.x, y2_target, t);
          Point g1x2 = space.geodesic_point(r2.x, y1_of_x2, t);
          double original = sq(space.distance(r1.x, g2x1)) + sq(space.distance(r2.x, g1x2));
          double permuted = sq(space.distance(r2.x, g2x1)) + sq(space.distance(r1.x, g1x2));
          double deficit = original - permuted;
          double tol = 1e-12 * (1.0 + original + permuted);
          if (deficit <= tol) continue;

          WitnessQuadruple q;
          q.row1 = i1;
          q.row2 = i2;
          q.x1 = r1.x;
          q.x2 = r2.x;
          q.y1_target = mu1.points[r1.carriers[0]];
          q.y2_target = y2_target;
          q.gamma2_x1_t = std::move(g2x1);
          q.gamma1_x2_t = std::move(g1x2);
          q.original_cost = original;
          q.permuted_cost = permuted;
          q.deficit = deficit;
          q.params = bucket.params;
          q.params.t = t;
          q.bucket_y1 = bucket.y1;
          q.bucket_y2 = bucket.y2;
          q.opening_used = opening;
          q.widened = opening > bucket.params.epsilon_hat;
          q.cone_radius_used = cone_radius;
          result.witness = std::move(q);
          return result;
        }
      }
    }
  }

  result.reason = "no improving quadruple up to the opening cap";
  return result;
}

}  // namespace geodot::mono
