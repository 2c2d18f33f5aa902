#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "geodot/chart.hpp"
#include "oracles.hpp"

using geodot::Error;
using geodot::Point;
using geodot::SplitMix64;
using geodot::Status;
namespace charts = geodot::charts;
namespace spaces = geodot::spaces;

namespace {

charts::Chart plane_chart(double radius = 0.5) {
  return charts::Chart(spaces::make_euclidean(2), {0.0, 0.0},
                       {{100.0, 0.0}, {0.0, 100.0}}, radius);
}

}  // namespace

TEST_CASE("chart coordinates are plain strainer distances") {
  const auto chart = plane_chart();
  const Point phi = chart.eval({0.1, 0.0});
  REQUIRE(phi.size() == 2);
  CHECK(phi[0] == doctest::Approx(99.9).epsilon(1e-15));
  CHECK(std::abs(phi[1] - 100.0000499999875) < 1e-12);
  const Point at_base = chart.eval(chart.base());
  CHECK(at_base[0] == doctest::Approx(100.0));
  CHECK(at_base[1] == doctest::Approx(100.0));
}

TEST_CASE("domain membership and construction are validated") {
  const auto chart = plane_chart();
  CHECK(chart.in_domain({0.4, 0.0}));
  CHECK(!chart.in_domain({0.6, 0.0}));
  try {
    chart.eval({0.6, 0.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Status::Domain);
  }

  auto e2 = spaces::make_euclidean(2);
  CHECK_THROWS_AS(charts::Chart(e2, {0.0, 0.0}, {{1.0, 0.0}}, 0.5), Error);
  CHECK_THROWS_AS(charts::Chart(e2, {0.0, 0.0}, {{1.0, 0.0}, {1.0, 0.0}}, 0.5), Error);
  CHECK_THROWS_AS(charts::Chart(e2, {0.0, 0.0}, {{0.0, 0.0}, {0.0, 1.0}}, 0.5), Error);
  CHECK_THROWS_AS(charts::Chart(e2, {0.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}}, -1.0), Error);
}

TEST_CASE("distant strainers make the plane chart nearly isometric") {
  const auto chart = plane_chart();
  SplitMix64 rng(17);
  std::vector<std::pair<Point, Point>> pairs;
  for (int i = 0; i < 200; ++i) {
    pairs.push_back({{rng.next_in(-0.3, 0.3), rng.next_in(-0.3, 0.3)},
                     {rng.next_in(-0.3, 0.3), rng.next_in(-0.3, 0.3)}});
  }
  const auto d = charts::distortion(chart, pairs);
  CHECK(d.max_ratio <= 1.01);
  CHECK(d.min_ratio >= 0.5);  // pairs seen end-on still contract
  CHECK(d.max_ratio >= d.min_ratio);
  CHECK(d.skipped == 0);

  SUBCASE("coincident pairs are skipped, all-coincident is an error") {
    auto with_dup = pairs;
    with_dup.push_back({{0.1, 0.1}, {0.1, 0.1}});
    CHECK(charts::distortion(chart, with_dup).skipped == 1);
    CHECK_THROWS_AS(charts::distortion(chart, {{{0.1, 0.1}, {0.1, 0.1}}}), Error);
    CHECK_THROWS_AS(charts::distortion(chart, {}), Error);
  }
}

TEST_CASE("shrinking the chart never worsens the distortion bound") {
  auto sphere = spaces::make_sphere(1.0);
  const Point base = {1.0, 0.0, 0.0};
  const std::vector<Point> strainers = {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  SplitMix64 rng(23);

  double prev_max = 0.0;
  bool first = true;
  for (double radius : {0.4, 0.2, 0.1, 0.05}) {
    charts::Chart chart(sphere, base, strainers, radius);
    // Pull random directions back to a fixed fraction of the current radius.
    auto draw = [&]() {
      while (true) {
        const Point v = oracles::random_sphere_point(rng);
        const double d = sphere->distance(base, v);
        if (d < 1e-6) continue;
        return sphere->geodesic_point(base, v, std::min(1.0, radius * 0.9 / d));
      }
    };
    std::vector<std::pair<Point, Point>> pairs;
    while (pairs.size() < 150) {
      const Point p = draw();
      const Point q = draw();
      if (!chart.in_domain(p) || !chart.in_domain(q)) continue;
      if (sphere->distance(p, q) < 1e-9) continue;
      pairs.push_back({p, q});
    }
    const auto d = charts::distortion(chart, pairs);
    if (!first) CHECK(d.max_ratio <= prev_max + 1e-6);
    prev_max = d.max_ratio;
    first = false;
    if (radius == 0.1) {
      CHECK(d.max_ratio <= 1.02);
      CHECK(d.min_ratio >= 0.98);
    }
  }
}

TEST_CASE("direction estimates recover signed cosines in the plane") {
  const auto chart = plane_chart();
  const auto schedule = charts::default_schedule();

  // Toward the first strainer: the first distance shrinks at unit rate.
  const Point toward = charts::geodesic_direction(chart, {{0.0, 0.0}, {0.4, 0.0}}, schedule);
  CHECK(std::abs(toward[0] - (-1.0)) < 1e-6);
  CHECK(std::abs(toward[1] - 0.0) < 1e-4);

  const Point away = charts::geodesic_direction(chart, {{0.4, 0.0}, {0.0, 0.0}}, schedule);
  CHECK(std::abs(away[0] - 1.0) < 1e-6);

  const Point ortho = charts::geodesic_direction(chart, {{0.0, 0.0}, {0.0, 0.4}}, schedule);
  CHECK(std::abs(ortho[0]) < 1e-4);
  CHECK(std::abs(ortho[1] - (-1.0)) < 1e-6);

  SUBCASE("orthogonal strainers give nearly unit direction vectors") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const double angle = rng.next_in(0.0, 2.0 * M_PI);
      const Point target = {0.4 * std::cos(angle), 0.4 * std::sin(angle)};
      const Point dir = charts::geodesic_direction(chart, {{0.0, 0.0}, target}, schedule);
      CHECK(geodot::norm(dir) > 0.99);
      CHECK(geodot::norm(dir) < 1.01);
    }
  }
  SUBCASE("constant-speed reparametrization leaves the direction unchanged") {
    const spaces::Geodesic g{{0.0, 0.0}, {0.4, 0.1}};
    const spaces::Geodesic half{{0.0, 0.0},
                                spaces::make_euclidean(2)->geodesic_point(g.a, g.b, 0.5)};
    const Point d1 = charts::geodesic_direction(chart, g, schedule);
    const Point d2 = charts::geodesic_direction(chart, half, schedule);
    CHECK(std::abs(d1[0] - d2[0]) < 1e-6);
    CHECK(std::abs(d1[1] - d2[1]) < 1e-6);
  }
}

TEST_CASE("sphere direction estimates match tangent-space angles") {
  auto sphere = spaces::make_sphere(1.0);
  const Point base = {1.0, 0.0, 0.0};
  const std::vector<Point> strainers = {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  charts::Chart chart(sphere, base, strainers, 0.5);
  SplitMix64 rng(47);

  int tested = 0;
  while (tested < 12) {
    Point q = oracles::random_sphere_point(rng);
    const double d = sphere->distance(base, q);
    if (d < 0.5 || d > 2.5) continue;
    // Scale the parameter schedule so every probe sits at the same small
    // arclength from the base, keeping the extrapolation residual uniform
    // across near and far targets.
    std::vector<double> schedule;
    for (double t : charts::default_schedule()) schedule.push_back(t * 0.5 / d);
    const Point dir = charts::geodesic_direction(chart, {base, q}, schedule);
    for (std::size_t s = 0; s < strainers.size(); ++s) {
      const double want = -std::cos(oracles::sphere_tangent_angle(base, q, strainers[s]));
      CHECK(std::abs(dir[s] - want) < 1e-3);
    }
    ++tested;
  }
}

TEST_CASE("geodesics escaping the domain are a domain error") {
  const auto chart = plane_chart(0.05);
  CHECK_THROWS_AS(
      charts::geodesic_direction(chart, {{0.0, 0.0}, {1.0, 0.0}}, charts::default_schedule()),
      Error);
  CHECK_THROWS_AS(
      charts::geodesic_direction(chart, {{0.0, 0.0}, {0.01, 0.0}}, {0.1, 0.2, 0.3, 0.4}),
      Error);
}
