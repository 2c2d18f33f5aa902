#include "geodot/measure.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "geodot/rng.hpp"

namespace geodot::measures {

namespace {

constexpr double kDistinctTol = 1e-12;
constexpr double kWeightTol = 1e-12;
constexpr int kMaxRedraws = 1000;

void check_weights(const DiscreteMeasure& m) {
  require(m.points.size() == m.weights.size(), Status::InvalidArgument,
          "points and weights differ in length");
  require(!m.points.empty(), Status::InvalidArgument, "measure is empty");
  double sum = 0.0;
  for (double w : m.weights) {
    require(std::isfinite(w) && w > 0.0, Status::NotNormalized, "weights must be positive");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= kWeightTol, Status::NotNormalized,
          "weights not normalized: sum = " + std::to_string(sum));
}

template <typename Dist>
void check_distinct(const std::vector<Point>& pts, Dist&& d) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      require(d(pts[i], pts[j]) > kDistinctTol, Status::DuplicatePoints,
              "duplicate support points at indices " + std::to_string(i) + ", " + std::to_string(j));
}

/// Draw points one by one, rejecting duplicates within tolerance.
DiscreteMeasure collect(int n, SplitMix64& rng, const std::function<Point(SplitMix64&)>& draw) {
  require(n >= 1, Status::InvalidArgument, "sample count must be >= 1");
  DiscreteMeasure m;
  m.points.reserve(n);
  while (static_cast<int>(m.points.size()) < n) {
    int attempts = 0;
    for (;;) {
      Point cand = draw(rng);
      bool dup = false;
      for (const Point& p : m.points)
        if (dist(p, cand) <= kDistinctTol) {
          dup = true;
          break;
        }
      if (!dup) {
        m.points.push_back(std::move(cand));
        break;
      }
      require(++attempts < kMaxRedraws, Status::InvalidArgument,
              "sampler cannot place distinct points in the region");
    }
  }
  m.weights.assign(n, 1.0 / n);
  return m;
}

}  // namespace

void validate_measure(const DiscreteMeasure& m, const spaces::Space& space) {
  check_weights(m);
  for (const Point& p : m.points) space.validate_point(p);
  check_distinct(m.points, [&](const Point& a, const Point& b) { return space.distance(a, b); });
}

void validate_measure_euclidean(const DiscreteMeasure& m) {
  check_weights(m);
  std::size_t d = m.points.front().size();
  for (const Point& p : m.points) {
    require(p.size() == d, Status::DimensionMismatch, "points have mixed dimensions");
    require(finite_point(p), Status::InvalidArgument, "point has non-finite coordinate");
  }
  check_distinct(m.points, [](const Point& a, const Point& b) { return dist(a, b); });
}

void validate_cone(const Cone& cone) {
  require(!cone.apex.empty() && cone.apex.size() == cone.direction.size(),
          Status::DimensionMismatch, "cone apex and direction dimensions differ");
  require(std::abs(norm(cone.direction) - 1.0) <= 1e-12, Status::InvalidArgument,
          "cone direction must be a unit vector");
  require(cone.opening > 0.0 && cone.opening < M_PI, Status::InvalidArgument,
          "cone opening must lie in (0, pi)");
  require(cone.radius > 0.0, Status::InvalidArgument, "cone radius must be positive");
}

bool cone_contains(const Cone& cone, const Point& y) {
  validate_cone(cone);
  check_same_dim(cone.apex, y, "cone_contains");
  Point v = sub(y, cone.apex);
  double r = norm(v);
  require(r > 0.0, Status::InvalidArgument, "apex excluded from its own cone");
  if (r >= cone.radius) return false;
  return dot(v, cone.direction) > std::cos(cone.opening) * r;
}

int cone_occupancy(const std::vector<Point>& e, std::size_t apex_index, const Point& direction,
                   double opening, double radius) {
  require(apex_index < e.size(), Status::InvalidArgument, "apex index out of range");
  Cone cone{e[apex_index], direction, opening, radius};
  validate_cone(cone);
  int count = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i == apex_index) continue;
    if (dist(e[i], cone.apex) <= 0.0) continue;
    if (cone_contains(cone, e[i])) ++count;
  }
  return count;
}

DiscreteMeasure sample_diffuse(const Region& region, int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  if (const Box* box = std::get_if<Box>(&region)) {
    require(!box->lo.empty() && box->lo.size() == box->hi.size(), Status::InvalidArgument,
            "box bounds dimension mismatch");
    for (std::size_t i = 0; i < box->lo.size(); ++i)
      require(box->hi[i] > box->lo[i], Status::InvalidArgument, "box region has no volume");
    return collect(n, rng, [&](SplitMix64& g) {
      Point p(box->lo.size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = g.next_in(box->lo[i], box->hi[i]);
      return p;
    });
  }
  const SphereCap& cap = std::get<SphereCap>(region);
  require(cap.center.size() == 3, Status::DimensionMismatch, "cap center must be in R^3");
  require(cap.angle > 0.0 && cap.angle <= M_PI, Status::InvalidArgument,
          "cap angle must lie in (0, pi]");
  require(cap.sphere_radius > 0.0, Status::InvalidArgument, "sphere radius must be positive");
  require(std::abs(norm(cap.center) - cap.sphere_radius) <= 1e-9 * cap.sphere_radius,
          Status::Domain, "cap center is not on the sphere");
  // Uniform on the cap: height above the plane is uniform on [cos angle, 1].
  Point axis = scale(cap.center, 1.0 / norm(cap.center));
  Point u(3, 0.0);
  u[std::abs(axis[0]) < 0.9 ? 0 : 1] = 1.0;
  Point e1 = sub(u, scale(axis, dot(u, axis)));
  e1 = scale(e1, 1.0 / norm(e1));
  Point e2{axis[1] * e1[2] - axis[2] * e1[1], axis[2] * e1[0] - axis[0] * e1[2],
           axis[0] * e1[1] - axis[1] * e1[0]};
  return collect(n, rng, [&](SplitMix64& g) {
    double z = g.next_in(std::cos(cap.angle), 1.0);
    double phi = g.next_in(0.0, 2.0 * M_PI);
    double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    Point p = add(scale(axis, z), add(scale(e1, s * std::cos(phi)), scale(e2, s * std::sin(phi))));
    return scale(p, cap.sphere_radius);
  });
}

DiscreteMeasure sample_on_curve(const Curve& curve, int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  if (const Segment* seg = std::get_if<Segment>(&curve)) {
    require(!seg->a.empty() && seg->a.size() == seg->b.size(), Status::DimensionMismatch,
            "segment endpoint dimensions differ");
    require(dist(seg->a, seg->b) > 0.0, Status::InvalidArgument, "segment has zero length");
    return collect(n, rng, [&](SplitMix64& g) {
      double t = g.next_u01();
      return add(scale(seg->a, 1.0 - t), scale(seg->b, t));
    });
  }
  const Circle& circ = std::get<Circle>(curve);
  require(circ.center.size() == 2, Status::DimensionMismatch, "circle center must be in R^2");
  require(circ.radius > 0.0, Status::InvalidArgument, "circle radius must be positive");
  return collect(n, rng, [&](SplitMix64& g) {
    double phi = g.next_in(0.0, 2.0 * M_PI);
    return Point{circ.center[0] + circ.radius * std::cos(phi),
                 circ.center[1] + circ.radius * std::sin(phi)};
  });
}

}  // namespace geodot::measures
