#include "geodot.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "geodot/chart.hpp"
#include "geodot/error.hpp"
#include "geodot/io.hpp"
#include "geodot/scenario.hpp"
#include "geodot/witness.hpp"

struct geodot_space {
  geodot::spaces::SpacePtr impl;
};

struct geodot_measure {
  geodot::measures::DiscreteMeasure impl;
};

/// Self-contained solve result: the plan plus copies of the problem data, so
/// the handle stays valid regardless of what the caller frees.
struct geodot_plan {
  geodot::spaces::SpacePtr space;
  geodot::measures::DiscreteMeasure mu0;
  geodot::measures::DiscreteMeasure mu1;
  geodot::ot::CostMatrix cost;
  geodot::ot::TransportPlan impl;
  double cost_value = 0.0;
};

struct geodot_chart {
  geodot::charts::Chart impl;
};

namespace {

using geodot::Error;
using geodot::Status;

thread_local std::string t_last_error;

template <typename F>
geodot_status guarded(F&& f) {
  try {
    t_last_error.clear();
    f();
    return GEODOT_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return static_cast<geodot_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GEODOT_INTERNAL;
  } catch (...) {
    t_last_error = "unrecognized failure";
    return GEODOT_INTERNAL;
  }
}

void check(const void* p, const char* name) {
  geodot::require(p != nullptr, Status::InvalidArgument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  geodot::require(out != nullptr, Status::Internal, "allocation failed");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

geodot::Point to_point(const double* data, std::size_t n) {
  return geodot::Point(data, data + n);
}

std::size_t point_size_of(const geodot::spaces::Space& s) {
  if (dynamic_cast<const geodot::spaces::SphereSpace*>(&s) != nullptr) return 3;
  return static_cast<std::size_t>(s.dimension());
}

void check_point_size(const geodot::spaces::Space& s, std::size_t n) {
  geodot::require(n == point_size_of(s), Status::DimensionMismatch,
                  "point_size does not match the space");
}

geodot::io::json parse_json(const char* text, const char* what) {
  check(text, what);
  try {
    return geodot::io::json::parse(text);
  } catch (const std::exception& e) {
    geodot::fail(Status::Parse, std::string(what) + ": " + e.what());
  }
}

geodot_measure* wrap_measure(geodot::measures::DiscreteMeasure m) {
  return new geodot_measure{std::move(m)};
}

}  // namespace

extern "C" {

const char* geodot_version(void) { return "0.1.0"; }

const char* geodot_last_error(void) { return t_last_error.c_str(); }

void geodot_string_free(char* s) { std::free(s); }

/* ---- spaces ---------------------------------------------------------- */

geodot_status geodot_space_euclidean(int dimension, geodot_space** out) {
  return guarded([&] {
    check(out, "out");
    *out = new geodot_space{geodot::spaces::make_euclidean(dimension)};
  });
}

geodot_status geodot_space_sphere(double radius, geodot_space** out) {
  return guarded([&] {
    check(out, "out");
    *out = new geodot_space{geodot::spaces::make_sphere(radius)};
  });
}

geodot_status geodot_space_cone(double total_angle, geodot_space** out) {
  return guarded([&] {
    check(out, "out");
    *out = new geodot_space{geodot::spaces::make_cone(total_angle)};
  });
}

void geodot_space_free(geodot_space* space) { delete space; }

geodot_status geodot_space_dimension(const geodot_space* space, int* out) {
  return guarded([&] {
    check(space, "space");
    check(out, "out");
    *out = space->impl->dimension();
  });
}

geodot_status geodot_space_point_size(const geodot_space* space, size_t* out) {
  return guarded([&] {
    check(space, "space");
    check(out, "out");
    *out = point_size_of(*space->impl);
  });
}

geodot_status geodot_space_describe(const geodot_space* space, char** out) {
  return guarded([&] {
    check(space, "space");
    check(out, "out");
    *out = dup_string(space->impl->describe());
  });
}

geodot_status geodot_space_distance(const geodot_space* space, const double* p, const double* q,
                                    size_t point_size, double* out) {
  return guarded([&] {
    check(space, "space");
    check(p, "p");
    check(q, "q");
    check(out, "out");
    check_point_size(*space->impl, point_size);
    *out = space->impl->distance(to_point(p, point_size), to_point(q, point_size));
  });
}

geodot_status geodot_space_geodesic_point(const geodot_space* space, const double* p,
                                          const double* q, size_t point_size, double t,
                                          double* out) {
  return guarded([&] {
    check(space, "space");
    check(p, "p");
    check(q, "q");
    check(out, "out");
    check_point_size(*space->impl, point_size);
    const geodot::Point r =
        space->impl->geodesic_point(to_point(p, point_size), to_point(q, point_size), t);
    std::memcpy(out, r.data(), r.size() * sizeof(double));
  });
}

geodot_status geodot_comparison_slack(const geodot_space* space, const double* x, const double* y,
                                      const double* z, size_t point_size, double s, double k,
                                      double* out) {
  return guarded([&] {
    check(space, "space");
    check(x, "x");
    check(y, "y");
    check(z, "z");
    check(out, "out");
    check_point_size(*space->impl, point_size);
    *out = geodot::spaces::alexandrov_check(*space->impl, to_point(x, point_size),
                                            to_point(y, point_size), to_point(z, point_size), s, k);
  });
}

/* ---- measures --------------------------------------------------------- */

geodot_status geodot_measure_create(const double* coords, const double* weights, size_t n_points,
                                    size_t point_size, geodot_measure** out) {
  return guarded([&] {
    check(coords, "coords");
    check(out, "out");
    geodot::require(n_points > 0 && point_size > 0, Status::InvalidArgument,
                    "n_points and point_size must be positive");
    geodot::measures::DiscreteMeasure m;
    for (size_t i = 0; i < n_points; ++i)
      m.points.push_back(to_point(coords + i * point_size, point_size));
    if (weights != nullptr) {
      m.weights.assign(weights, weights + n_points);
    } else {
      m.weights.assign(n_points, 1.0 / static_cast<double>(n_points));
    }
    geodot::measures::validate_measure_euclidean(m);
    *out = wrap_measure(std::move(m));
  });
}

void geodot_measure_free(geodot_measure* m) { delete m; }

geodot_status geodot_measure_size(const geodot_measure* m, size_t* out) {
  return guarded([&] {
    check(m, "measure");
    check(out, "out");
    *out = m->impl.size();
  });
}

geodot_status geodot_measure_point_size(const geodot_measure* m, size_t* out) {
  return guarded([&] {
    check(m, "measure");
    check(out, "out");
    *out = m->impl.points.empty() ? 0 : m->impl.points.front().size();
  });
}

geodot_status geodot_measure_get(const geodot_measure* m, size_t index, double* coords,
                                 double* weight) {
  return guarded([&] {
    check(m, "measure");
    geodot::require(index < m->impl.size(), Status::InvalidArgument,
                    "point index out of range");
    if (coords != nullptr) {
      const geodot::Point& p = m->impl.points[index];
      std::memcpy(coords, p.data(), p.size() * sizeof(double));
    }
    if (weight != nullptr) *weight = m->impl.weights[index];
  });
}

geodot_status geodot_measure_read(const char* path, const char* format, geodot_measure** out) {
  return guarded([&] {
    check(path, "path");
    check(format, "format");
    check(out, "out");
    *out = wrap_measure(geodot::io::read_measure(path, format));
  });
}

geodot_status geodot_measure_write(const geodot_measure* m, const char* path,
                                   const char* format) {
  return guarded([&] {
    check(m, "measure");
    check(path, "path");
    check(format, "format");
    geodot::io::write_measure(m->impl, path, format);
  });
}

geodot_status geodot_measure_validate(const geodot_measure* m, const geodot_space* space) {
  return guarded([&] {
    check(m, "measure");
    check(space, "space");
    geodot::measures::validate_measure(m->impl, *space->impl);
  });
}

geodot_status geodot_measure_sample_box(const double* lo, const double* hi, size_t dim, int n,
                                        uint64_t seed, geodot_measure** out) {
  return guarded([&] {
    check(lo, "lo");
    check(hi, "hi");
    check(out, "out");
    geodot::require(dim > 0, Status::InvalidArgument, "dim must be positive");
    geodot::measures::Box box{to_point(lo, dim), to_point(hi, dim)};
    *out = wrap_measure(geodot::measures::sample_diffuse(box, n, seed));
  });
}

geodot_status geodot_measure_sample_cap(const double* center, double angle, double sphere_radius,
                                        int n, uint64_t seed, geodot_measure** out) {
  return guarded([&] {
    check(center, "center");
    check(out, "out");
    geodot::measures::SphereCap cap{to_point(center, 3), angle, sphere_radius};
    *out = wrap_measure(geodot::measures::sample_diffuse(cap, n, seed));
  });
}

geodot_status geodot_measure_sample_segment(const double* a, const double* b, size_t dim, int n,
                                            uint64_t seed, geodot_measure** out) {
  return guarded([&] {
    check(a, "a");
    check(b, "b");
    check(out, "out");
    geodot::require(dim > 0, Status::InvalidArgument, "dim must be positive");
    geodot::measures::Segment seg{to_point(a, dim), to_point(b, dim)};
    *out = wrap_measure(geodot::measures::sample_on_curve(seg, n, seed));
  });
}

geodot_status geodot_measure_sample_circle(const double* center, double radius, int n,
                                           uint64_t seed, geodot_measure** out) {
  return guarded([&] {
    check(center, "center");
    check(out, "out");
    geodot::measures::Circle circ{to_point(center, 2), radius};
    *out = wrap_measure(geodot::measures::sample_on_curve(circ, n, seed));
  });
}

/* ---- transport -------------------------------------------------------- */

geodot_status geodot_solve(const geodot_space* space, const geodot_measure* mu0,
                           const geodot_measure* mu1, geodot_plan** out) {
  return guarded([&] {
    check(space, "space");
    check(mu0, "mu0");
    check(mu1, "mu1");
    check(out, "out");
    geodot::measures::validate_measure(mu0->impl, *space->impl);
    geodot::measures::validate_measure(mu1->impl, *space->impl);
    auto plan = std::make_unique<geodot_plan>();
    plan->space = space->impl;
    plan->mu0 = mu0->impl;
    plan->mu1 = mu1->impl;
    plan->cost = geodot::ot::build_cost_matrix(*space->impl, mu0->impl, mu1->impl);
    plan->impl = geodot::ot::solve(mu0->impl, mu1->impl, plan->cost);
    plan->cost_value = geodot::ot::plan_cost(plan->impl, plan->cost);
    *out = plan.release();
  });
}

void geodot_plan_free(geodot_plan* plan) { delete plan; }

geodot_status geodot_plan_size(const geodot_plan* plan, size_t* out) {
  return guarded([&] {
    check(plan, "plan");
    check(out, "out");
    *out = plan->impl.entries.size();
  });
}

geodot_status geodot_plan_entry(const geodot_plan* plan, size_t index, size_t* i, size_t* j,
                                double* mass) {
  return guarded([&] {
    check(plan, "plan");
    geodot::require(index < plan->impl.entries.size(), Status::InvalidArgument,
                    "entry index out of range");
    const geodot::ot::PlanEntry& e = plan->impl.entries[index];
    if (i != nullptr) *i = e.i;
    if (j != nullptr) *j = e.j;
    if (mass != nullptr) *mass = e.mass;
  });
}

geodot_status geodot_plan_cost(const geodot_plan* plan, double* out) {
  return guarded([&] {
    check(plan, "plan");
    check(out, "out");
    *out = plan->cost_value;
  });
}

geodot_status geodot_plan_to_json(const geodot_plan* plan, char** out) {
  return guarded([&] {
    check(plan, "plan");
    check(out, "out");
    *out = dup_string(geodot::io::plan_to_json(plan->impl, plan->cost_value).dump(2));
  });
}

geodot_status geodot_detect_map(const geodot_plan* plan, double mass_tol, int* is_map,
                                char** details_json) {
  return guarded([&] {
    check(plan, "plan");
    check(is_map, "is_map");
    const geodot::ot::MapCertificate cert = geodot::ot::detect_map(plan->impl, mass_tol);
    *is_map = cert.is_map ? 1 : 0;
    if (details_json != nullptr) {
      geodot::io::json j;
      j["is_map"] = cert.is_map;
      j["split_rows"] = cert.split_rows;
      j["assignment"] = cert.assignment;
      *details_json = dup_string(j.dump(2));
    }
  });
}

geodot_status geodot_uniqueness_probe(const geodot_plan* plan, int n_perturbations, double eta,
                                      uint64_t seed, int* unique, char** details_json) {
  return guarded([&] {
    check(plan, "plan");
    check(unique, "unique");
    const geodot::ot::UniquenessReport report = geodot::ot::uniqueness_probe(
        plan->mu0, plan->mu1, plan->cost, n_perturbations, eta, seed);
    *unique = report.unique ? 1 : 0;
    if (details_json != nullptr) {
      geodot::io::json j;
      j["unique"] = report.unique;
      j["probe_costs"] = report.costs;
      geodot::io::json witnesses = geodot::io::json::array();
      for (const auto& w : report.witnesses)
        witnesses.push_back(geodot::io::plan_to_json(w, geodot::ot::plan_cost(w, plan->cost)));
      j["witnesses"] = witnesses;
      *details_json = dup_string(j.dump(2));
    }
  });
}

/* ---- cyclical monotonicity -------------------------------------------- */

geodot_status geodot_check_cyclical(const geodot_plan* plan, double t, double mass_tol,
                                    int* monotone, char** result_json) {
  return guarded([&] {
    check(plan, "plan");
    check(monotone, "monotone");
    const geodot::mono::SupportSet support =
        geodot::mono::support_of(plan->impl, plan->mu0, plan->mu1, mass_tol);
    const geodot::mono::SupportSet restricted =
        geodot::mono::restrict_support(*plan->space, support, t);
    const geodot::mono::CyclicalResult r =
        geodot::mono::check_cyclical(*plan->space, restricted);
    *monotone = geodot::mono::is_monotone(r) ? 1 : 0;
    if (result_json != nullptr)
      *result_json = dup_string(geodot::io::cyclical_result_to_json(r).dump(2));
  });
}

geodot_status geodot_restrict_support(const geodot_plan* plan, double t, double mass_tol,
                                      char** support_json) {
  return guarded([&] {
    check(plan, "plan");
    check(support_json, "support_json");
    const geodot::mono::SupportSet support =
        geodot::mono::support_of(plan->impl, plan->mu0, plan->mu1, mass_tol);
    const geodot::mono::SupportSet restricted =
        geodot::mono::restrict_support(*plan->space, support, t);
    *support_json = dup_string(geodot::io::support_to_json(restricted).dump(2));
  });
}

geodot_status geodot_delta_of_c(double C, int resolution, double* delta, char** details_json) {
  return guarded([&] {
    check(delta, "delta");
    const geodot::mono::DeltaProblem d = geodot::mono::delta_of_c(C, resolution);
    *delta = d.delta;
    if (details_json != nullptr)
      *details_json = dup_string(geodot::io::delta_to_json(d).dump(2));
  });
}

/* ---- charts ----------------------------------------------------------- */

geodot_status geodot_chart_create(const geodot_space* space, const double* base,
                                  const double* strainers, size_t n_strainers, double radius,
                                  geodot_chart** out) {
  return guarded([&] {
    check(space, "space");
    check(base, "base");
    check(strainers, "strainers");
    check(out, "out");
    const size_t ps = point_size_of(*space->impl);
    std::vector<geodot::Point> pts;
    for (size_t i = 0; i < n_strainers; ++i) pts.push_back(to_point(strainers + i * ps, ps));
    *out = new geodot_chart{
        geodot::charts::Chart(space->impl, to_point(base, ps), std::move(pts), radius)};
  });
}

void geodot_chart_free(geodot_chart* chart) { delete chart; }

geodot_status geodot_chart_contains(const geodot_chart* chart, const double* x, int* out) {
  return guarded([&] {
    check(chart, "chart");
    check(x, "x");
    check(out, "out");
    const size_t ps = point_size_of(chart->impl.space());
    *out = chart->impl.in_domain(to_point(x, ps)) ? 1 : 0;
  });
}

geodot_status geodot_chart_eval(const geodot_chart* chart, const double* x, double* out) {
  return guarded([&] {
    check(chart, "chart");
    check(x, "x");
    check(out, "out");
    const size_t ps = point_size_of(chart->impl.space());
    const geodot::Point phi = chart->impl.eval(to_point(x, ps));
    std::memcpy(out, phi.data(), phi.size() * sizeof(double));
  });
}

/* ---- witness search ---------------------------------------------------- */

geodot_status geodot_witness_search(const geodot_plan* plan, const geodot_chart* chart,
                                    double cone_radius, int k_class, int* found,
                                    char** result_json) {
  return guarded([&] {
    check(plan, "plan");
    check(chart, "chart");
    check(found, "found");
    geodot::mono::WitnessOptions options;
    options.cone_radius = cone_radius;
    if (k_class > 0) options.pinned = geodot::mono::params_for_class(k_class);
    const geodot::mono::WitnessResult r = geodot::mono::witness_search(
        *plan->space, plan->mu0, plan->mu1, plan->impl, chart->impl, options);
    *found = r.witness.has_value() ? 1 : 0;
    if (result_json != nullptr)
      *result_json = dup_string(geodot::io::witness_result_to_json(r).dump(2));
  });
}

/* ---- scenarios ---------------------------------------------------------- */

geodot_status geodot_list_scenarios(char** out_json) {
  return guarded([&] {
    check(out_json, "out_json");
    geodot::io::json arr = geodot::io::json::array();
    for (const auto& info : geodot::scenarios::list_scenarios())
      arr.push_back({{"name", info.name}, {"description", info.description}});
    *out_json = dup_string(arr.dump(2));
  });
}

geodot_status geodot_run_scenario(const char* config_json, int* scenario_exit,
                                  char** report_json) {
  return guarded([&] {
    check(scenario_exit, "scenario_exit");
    const geodot::io::json config = parse_json(config_json, "config_json");
    const geodot::scenarios::ScenarioOutcome outcome = geodot::scenarios::run_scenario(config);
    *scenario_exit = outcome.exit_code;
    if (report_json != nullptr) *report_json = dup_string(outcome.report.dump(2));
  });
}

}  // extern "C"
