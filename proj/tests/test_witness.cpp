#include <cmath>
#include <variant>

#include "doctest.h"
#include "geodot/chart.hpp"
#include "geodot/monotonicity.hpp"
#include "geodot/witness.hpp"
#include "oracles.hpp"

using geodot::Error;
using geodot::Point;
namespace charts = geodot::charts;
namespace measures = geodot::measures;
namespace mono = geodot::mono;
namespace ot = geodot::ot;
namespace spaces = geodot::spaces;

namespace {

// Two sources h = 0.05 apart; the first splits its mass between two targets
// at right angles, the second sends everything straight up. The derived
// contraction parameter is t = 2 h / |y2 - y1| = h sqrt(2), and swapping the
// restricted targets improves the cost by 0.1 t - 2 h^2 = 2 (sqrt(2) - 1) h^2.
struct Fixture {
  spaces::SpacePtr space = spaces::make_euclidean(2);
  measures::DiscreteMeasure mu0, mu1;
  ot::TransportPlan plan;
  charts::Chart chart;

  Fixture()
      : chart(space, {0.0, 0.0}, {{1000.0, 0.0}, {0.0, 1000.0}}, 0.5) {
    mu0.points = {{0.0, 0.0}, {0.05, 0.0}};
    mu0.weights = {0.5, 0.5};
    mu1.points = {{0.0, 1.0}, {1.0, 0.0}, {0.05, 1.0}};
    mu1.weights = {0.25, 0.25, 0.5};
    plan.mu0_weights = mu0.weights;
    plan.mu1_weights = mu1.weights;
    plan.entries = {{0, 0, 0.25}, {0, 1, 0.25}, {1, 2, 0.5}};
  }

  mono::WitnessOptions options() const {
    mono::WitnessOptions opt;
    opt.cone_radius = 0.1;
    opt.pinned = mono::params_for_class(2);
    return opt;
  }
};

}  // namespace

TEST_CASE("class parameters are tied to the delta constants") {
  const auto p = mono::params_for_class(2);
  CHECK(p.k_class == 2);
  CHECK(std::abs(p.epsilon - 1.2195121951219513e-4) < 1e-12);
  CHECK(std::abs(p.epsilon_hat - 9.527439024390245e-8) < 1e-15);
  CHECK(p.epsilon == doctest::Approx(mono::delta_of_c(4.0).delta / 100.0));
  CHECK(p.epsilon_hat == doctest::Approx(p.epsilon / (80.0 * 16.0)));
  CHECK_NOTHROW(mono::validate_params(p));

  SUBCASE("inconsistent parameter sets are rejected") {
    auto bad = p;
    bad.epsilon_hat *= 10.0;
    CHECK_THROWS_AS(mono::validate_params(bad), Error);
    CHECK_THROWS_AS(mono::params_for_class(0), Error);
  }
}

TEST_CASE("the split two-source fixture yields the hand-computed quadruple") {
  Fixture f;
  const auto result =
      mono::witness_search(*f.space, f.mu0, f.mu1, f.plan, f.chart, f.options());
  REQUIRE(result.witness.has_value());
  const auto& w = *result.witness;

  CHECK(w.row1 == 0);
  CHECK(w.row2 == 1);
  CHECK(w.params.k_class == 2);
  CHECK(std::abs(w.params.t - 0.07071067811865477) < 1e-6);
  CHECK(std::abs(w.deficit - 0.002071067811865476) < 1e-9);
  CHECK(w.deficit == doctest::Approx(w.original_cost - w.permuted_cost).epsilon(1e-12));
  CHECK(w.original_cost > w.permuted_cost);
  // The straight-ahead cone around y2 - y1 misses the companion, so the
  // search must have widened the opening.
  CHECK(w.widened);
  CHECK(w.opening_used <= M_PI / 4 + 1e-12);
  CHECK(w.cone_radius_used == doctest::Approx(0.1));
  CHECK(result.split_rows == 1);
  CHECK(result.classified_rows == 1);

  SUBCASE("the quadruple survives the independent 2-cycle check") {
    mono::SupportSet quad;
    quad.pairs.push_back({w.x1, w.gamma2_x1_t});
    quad.pairs.push_back({w.x2, w.gamma1_x2_t});
    const auto check = mono::check_cyclical(*f.space, quad);
    REQUIRE(std::holds_alternative<mono::CycleViolation>(check));
    CHECK(std::abs(std::get<mono::CycleViolation>(check).deficit - w.deficit) < 1e-10);
  }
  SUBCASE("the interpolated points sit on the stated geodesics") {
    const double t = w.params.t;
    CHECK(geodot::dist(w.gamma2_x1_t, f.space->geodesic_point(w.x1, w.y2_target, t)) < 1e-12);
    CHECK(geodot::dist(w.gamma1_x2_t, Point{0.05, t}) < 1e-12);
  }
}

TEST_CASE("the fixture still yields a witness without pinning the class") {
  Fixture f;
  mono::WitnessOptions opt;
  opt.cone_radius = 0.1;
  const auto result = mono::witness_search(*f.space, f.mu0, f.mu1, f.plan, f.chart, opt);
  REQUIRE(result.witness.has_value());
  CHECK(result.witness->deficit > 0.0);
  CHECK(result.witness->params.k_class >= 1);
}

TEST_CASE("plans that are already maps report no split row") {
  Fixture f;
  measures::DiscreteMeasure mu0, mu1;
  mu0.points = {{0.0, 0.0}, {0.1, 0.0}};
  mu0.weights = {0.5, 0.5};
  mu1.points = {{0.0, 1.0}, {0.1, 1.0}};
  mu1.weights = {0.5, 0.5};
  ot::TransportPlan identity;
  identity.mu0_weights = mu0.weights;
  identity.mu1_weights = mu1.weights;
  identity.entries = {{0, 0, 0.5}, {1, 1, 0.5}};

  const auto result = mono::witness_search(*f.space, mu0, mu1, identity, f.chart, {});
  CHECK(!result.witness.has_value());
  CHECK(result.reason == "no split row");
  CHECK(result.split_rows == 0);
}

TEST_CASE("an optimal split plan defeats the search") {
  Fixture f;
  const auto cost = ot::build_cost_matrix(*f.space, f.mu0, f.mu1);
  const auto optimal = ot::solve(f.mu0, f.mu1, cost);
  CHECK(ot::plan_cost(optimal, cost) < ot::plan_cost(f.plan, cost));
  // The unequal atom counts force a split row even at the optimum.
  CHECK(!ot::detect_map(optimal, 1e-9).is_map);

  const auto result =
      mono::witness_search(*f.space, f.mu0, f.mu1, optimal, f.chart, f.options());
  CHECK(!result.witness.has_value());
  CHECK(result.reason == "no improving quadruple up to the opening cap");
  CHECK(result.split_rows >= 1);
}

TEST_CASE("tied couplings on the mirrored-targets instance defeat the search") {
  // Sources on the vertical axis, targets at (+-1, 0): every coupling costs
  // the same, so even a genuinely split plan admits no improving swap.
  auto space = spaces::make_euclidean(2);
  measures::DiscreteMeasure mu0, mu1;
  for (double y : {-0.2, -0.1, 0.0, 0.1, 0.2}) mu0.points.push_back({0.0, y});
  mu0.weights.assign(5, 0.2);
  mu1.points = {{-1.0, 0.0}, {1.0, 0.0}};
  mu1.weights = {0.5, 0.5};
  const auto cost = ot::build_cost_matrix(*space, mu0, mu1);
  const auto plan = ot::solve(mu0, mu1, cost);
  // Five rows of weight 1/5 cannot tile two columns of weight 1/2 without
  // splitting one of them.
  CHECK(!ot::detect_map(plan, 1e-9).is_map);

  charts::Chart chart(space, {0.0, 0.0}, {{1000.0, 0.0}, {0.0, 1000.0}}, 1.0);
  const auto result = mono::witness_search(*space, mu0, mu1, plan, chart, {});
  CHECK(!result.witness.has_value());
  CHECK(result.split_rows == 1);
}
