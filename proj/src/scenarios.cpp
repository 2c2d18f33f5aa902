#include "geodot/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geodot/error.hpp"
#include "geodot/rng.hpp"
#include "geodot/svg.hpp"
#include "geodot/witness.hpp"

namespace geodot::scenarios {
namespace {

namespace fs = std::filesystem;
using io::json;

// ---------------------------------------------------------------------------
// Config plumbing. Every scalar read through a take_* helper lands in the
// resolved echo, so report.json records the exact knobs of the run, defaults
// included, and feeding the echo back reproduces the run byte for byte.

const json& need(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), Status::InvalidArgument,
          std::string("config is missing \"") + key + "\"");
  return j.at(key);
}

double as_num(const json& j, const char* what) {
  require(j.is_number(), Status::InvalidArgument, std::string(what) + " must be a number");
  return j.get<double>();
}

double take_num(const json& cfg, json& res, const char* key, double dflt) {
  double v = cfg.contains(key) ? as_num(cfg.at(key), key) : dflt;
  res[key] = v;
  return v;
}

int take_int(const json& cfg, json& res, const char* key, int dflt) {
  int v = dflt;
  if (cfg.contains(key)) {
    require(cfg.at(key).is_number_integer(), Status::InvalidArgument,
            std::string(key) + " must be an integer");
    v = cfg.at(key).get<int>();
  }
  res[key] = v;
  return v;
}

std::vector<double> take_vecd(const json& cfg, json& res, const char* key,
                              std::vector<double> dflt) {
  std::vector<double> v = std::move(dflt);
  if (cfg.contains(key)) {
    const json& arr = cfg.at(key);
    require(arr.is_array() && !arr.empty(), Status::InvalidArgument,
            std::string(key) + " must be a non-empty array");
    v.clear();
    for (const auto& e : arr) v.push_back(as_num(e, key));
  }
  res[key] = v;
  return v;
}

Point as_point(const json& j, const char* what) {
  require(j.is_array() && !j.empty(), Status::InvalidArgument,
          std::string(what) + " must be a non-empty array of numbers");
  Point p;
  for (const auto& e : j) p.push_back(as_num(e, what));
  return p;
}

std::vector<Point> as_points(const json& j, const char* what) {
  require(j.is_array() && !j.empty(), Status::InvalidArgument,
          std::string(what) + " must be a non-empty array of points");
  std::vector<Point> pts;
  for (const auto& e : j) pts.push_back(as_point(e, what));
  return pts;
}

/// Fixed sub-streams of the master seed: slot 0 feeds mu0 sampling, slot 1
/// mu1, slot 2 the scenario's own draws. Explicit per-measure seeds in the
/// config override the derived ones.
std::uint64_t sub_seed(std::uint64_t master, int slot) {
  SplitMix64 g(master);
  std::uint64_t s = 0;
  for (int i = 0; i <= slot; ++i) s = g.next_u64();
  return s;
}

json canonical_space(const json& spec) {
  const std::string type = need(spec, "type").get<std::string>();
  json out;
  out["type"] = type;
  if (type == "euclidean") {
    out["dimension"] = need(spec, "dimension").get<int>();
  } else if (type == "sphere") {
    out["radius"] = spec.contains("radius") ? as_num(spec.at("radius"), "radius") : 1.0;
  } else if (type == "cone") {
    out["total_angle"] = as_num(need(spec, "total_angle"), "total_angle");
  } else {
    fail(Status::InvalidArgument, "unknown space type \"" + type + "\"");
  }
  return out;
}

measures::DiscreteMeasure measure_from_spec_impl(const json& spec, std::uint64_t fallback_seed,
                                                 json* resolved) {
  require(spec.is_object(), Status::InvalidArgument, "measure spec must be an object");
  json res = spec;
  measures::DiscreteMeasure m;
  if (spec.contains("file")) {
    const std::string path = need(spec, "file").get<std::string>();
    std::string format = spec.value("format", std::string());
    if (format.empty())
      format = path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? "json" : "csv";
    res["format"] = format;
    m = io::read_measure(path, format);
  } else if (spec.contains("points")) {
    m.points = as_points(spec.at("points"), "points");
    if (spec.contains("weights")) {
      for (const auto& w : spec.at("weights")) m.weights.push_back(as_num(w, "weights"));
    } else {
      m.weights.assign(m.points.size(), 1.0 / static_cast<double>(m.points.size()));
    }
  } else if (spec.contains("sample")) {
    const std::string kind = need(spec, "sample").get<std::string>();
    const int n = need(spec, "n").get<int>();
    std::uint64_t seed = fallback_seed;
    if (spec.contains("seed")) seed = spec.at("seed").get<std::uint64_t>();
    res["seed"] = seed;
    if (kind == "box") {
      measures::Box box{as_point(need(spec, "lo"), "lo"), as_point(need(spec, "hi"), "hi")};
      m = measures::sample_diffuse(box, n, seed);
    } else if (kind == "cap") {
      measures::SphereCap cap;
      cap.center = as_point(need(spec, "center"), "center");
      cap.angle = as_num(need(spec, "angle"), "angle");
      cap.sphere_radius = spec.contains("sphere_radius")
                              ? as_num(spec.at("sphere_radius"), "sphere_radius")
                              : 1.0;
      res["sphere_radius"] = cap.sphere_radius;
      m = measures::sample_diffuse(cap, n, seed);
    } else if (kind == "segment") {
      measures::Segment seg{as_point(need(spec, "a"), "a"), as_point(need(spec, "b"), "b")};
      m = measures::sample_on_curve(seg, n, seed);
    } else if (kind == "circle") {
      measures::Circle circ{as_point(need(spec, "center"), "center"),
                            as_num(need(spec, "radius"), "radius")};
      m = measures::sample_on_curve(circ, n, seed);
    } else {
      fail(Status::InvalidArgument, "unknown sample kind \"" + kind + "\"");
    }
  } else {
    fail(Status::InvalidArgument, "measure spec needs \"file\", \"points\", or \"sample\"");
  }
  if (resolved) *resolved = res;
  return m;
}

// ---------------------------------------------------------------------------
// Random point sources for the measurement scenarios.

Point random_point(const spaces::Space& space, SplitMix64& rng) {
  if (auto* e = dynamic_cast<const spaces::EuclideanSpace*>(&space)) {
    Point p(e->dimension());
    for (double& c : p) c = rng.next_in(-1.5, 1.5);
    return p;
  }
  if (auto* s = dynamic_cast<const spaces::SphereSpace*>(&space)) {
    const double z = rng.next_in(-1.0, 1.0);
    const double phi = rng.next_in(0.0, 2.0 * M_PI);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s->radius() * r * std::cos(phi), s->radius() * r * std::sin(phi), s->radius() * z};
  }
  if (auto* c = dynamic_cast<const spaces::ConeSpace*>(&space)) {
    return {rng.next_in(0.1, 1.5), rng.next_in(0.0, c->total_angle())};
  }
  fail(Status::Internal, "no point sampler for this space");
}

/// Point at a uniform distance below the chart radius from the base, reached
/// along the geodesic toward an auxiliary random point.
Point sample_in_chart(const charts::Chart& chart, SplitMix64& rng) {
  const spaces::Space& space = chart.space();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Point q = random_point(space, rng);
    const double d = space.distance(chart.base(), q);
    if (d <= 1e-9) continue;
    const double target = rng.next_u01() * std::min(chart.radius() * 0.99, d);
    if (target <= 1e-9) continue;
    return space.geodesic_point(chart.base(), q, target / d);
  }
  fail(Status::Internal, "chart sampling failed to produce a point");
}

// ---------------------------------------------------------------------------
// Artifact helpers.

std::pair<double, double> xy(const Point& p) {
  return {p[0], p.size() >= 2 ? p[1] : 0.0};
}

io::PlotSeries measure_series(const std::string& label, const measures::DiscreteMeasure& m) {
  io::PlotSeries s;
  s.label = label;
  for (const auto& p : m.points) s.points.push_back(xy(p));
  return s;
}

void write_json_file(const fs::path& path, const json& j) {
  io::write_text_file(path.string(), j.dump(2) + "\n");
}

struct Ctx {
  std::uint64_t seed = 0;
  fs::path out;
  json resolved;
  json results;
  int exit_code = 0;
};

json take_expect(const json& cfg) {
  if (!cfg.contains("expect")) return json::object();
  const json& e = cfg.at("expect");
  require(e.is_object(), Status::InvalidArgument, "expect must be an object");
  return e;
}

// ---------------------------------------------------------------------------
// Scenario bodies.

struct SolvedProblem {
  spaces::SpacePtr space;
  measures::DiscreteMeasure mu0;
  measures::DiscreteMeasure mu1;
  ot::CostMatrix cost;
  ot::TransportPlan plan;
  double cost_value = 0.0;
};

SolvedProblem load_and_solve(const json& cfg, Ctx& ctx) {
  SolvedProblem sp;
  sp.space = space_from_json(need(cfg, "space"));
  ctx.resolved["space"] = canonical_space(need(cfg, "space"));
  json m0res, m1res;
  sp.mu0 = measure_from_spec_impl(need(cfg, "mu0"), sub_seed(ctx.seed, 0), &m0res);
  sp.mu1 = measure_from_spec_impl(need(cfg, "mu1"), sub_seed(ctx.seed, 1), &m1res);
  ctx.resolved["mu0"] = m0res;
  ctx.resolved["mu1"] = m1res;
  measures::validate_measure(sp.mu0, *sp.space);
  measures::validate_measure(sp.mu1, *sp.space);
  sp.cost = ot::build_cost_matrix(*sp.space, sp.mu0, sp.mu1);
  sp.plan = ot::solve(sp.mu0, sp.mu1, sp.cost);
  sp.cost_value = ot::plan_cost(sp.plan, sp.cost);
  return sp;
}

void write_problem_artifacts(const SolvedProblem& sp, const Ctx& ctx) {
  io::write_measure(sp.mu0, (ctx.out / "mu0.csv").string(), "csv");
  io::write_measure(sp.mu1, (ctx.out / "mu1.csv").string(), "csv");
  io::write_text_file((ctx.out / "plan.csv").string(), io::plan_to_csv(sp.plan));
  write_json_file(ctx.out / "plan.json", io::plan_to_json(sp.plan, sp.cost_value));
}

void run_map_vs_split(const json& cfg, Ctx& ctx) {
  const double mass_tol = take_num(cfg, ctx.resolved, "mass_tol", 1e-9);
  const int probes = take_int(cfg, ctx.resolved, "probes", 8);
  const double eta = take_num(cfg, ctx.resolved, "eta", 1e-7);
  SolvedProblem sp = load_and_solve(cfg, ctx);

  const ot::MapCertificate cert = ot::detect_map(sp.plan, mass_tol);
  const ot::UniquenessReport uq =
      ot::uniqueness_probe(sp.mu0, sp.mu1, sp.cost, probes, eta, sub_seed(ctx.seed, 2));

  ctx.results["cost"] = sp.cost_value;
  ctx.results["verdict"] = cert.is_map ? "map" : "split";
  ctx.results["split_rows"] = cert.split_rows;
  ctx.results["assignment"] = cert.assignment;
  ctx.results["unique"] = uq.unique;
  ctx.results["probe_costs"] = uq.costs;
  ctx.results["solver"] = {{"pivots", sp.plan.pivots},
                           {"degenerate_pivots", sp.plan.degenerate_pivots}};

  write_problem_artifacts(sp, ctx);
  io::emit_plot({measure_series("sources", sp.mu0), measure_series("targets", sp.mu1)},
                io::PlotKind::Scatter, (ctx.out / "points.svg").string(), "transport endpoints",
                "x", "y");

  const json expect = take_expect(cfg);
  json applied = json::object();
  if (expect.contains("verdict")) {
    applied["verdict"] = expect.at("verdict");
    if (expect.at("verdict").get<std::string>() != ctx.results["verdict"].get<std::string>())
      ctx.exit_code = 2;
  }
  if (expect.contains("unique")) {
    applied["unique"] = expect.at("unique");
    if (expect.at("unique").get<bool>() != uq.unique) ctx.exit_code = 2;
  }
  ctx.resolved["expect"] = applied;
}

void run_uniqueness_probe(const json& cfg, Ctx& ctx) {
  const int probes = take_int(cfg, ctx.resolved, "probes", 16);
  const double eta = take_num(cfg, ctx.resolved, "eta", 1e-7);
  SolvedProblem sp = load_and_solve(cfg, ctx);

  const ot::UniquenessReport uq =
      ot::uniqueness_probe(sp.mu0, sp.mu1, sp.cost, probes, eta, sub_seed(ctx.seed, 2));

  ctx.results["base_cost"] = sp.cost_value;
  ctx.results["unique"] = uq.unique;
  ctx.results["probe_costs"] = uq.costs;
  if (!uq.unique) {
    for (std::size_t w = 0; w < uq.witnesses.size(); ++w) {
      const double c = ot::plan_cost(uq.witnesses[w], sp.cost);
      const fs::path p = ctx.out / ("witness_plan_" + std::to_string(w) + ".json");
      write_json_file(p, io::plan_to_json(uq.witnesses[w], c));
    }
  }

  write_problem_artifacts(sp, ctx);
  std::string costs_csv = "probe,cost\n";
  io::PlotSeries series{"probe cost", {}};
  for (std::size_t i = 0; i < uq.costs.size(); ++i) {
    costs_csv += std::to_string(i) + "," + io::format_double(uq.costs[i]) + "\n";
    series.points.emplace_back(static_cast<double>(i), uq.costs[i]);
  }
  io::write_text_file((ctx.out / "probe_costs.csv").string(), costs_csv);
  io::emit_plot({series}, io::PlotKind::Scatter, (ctx.out / "probe_costs.svg").string(),
                "unperturbed cost per probe", "probe", "cost");

  const json expect = take_expect(cfg);
  json applied = json::object();
  if (expect.contains("unique")) {
    applied["unique"] = expect.at("unique");
    if (expect.at("unique").get<bool>() != uq.unique) ctx.exit_code = 2;
  }
  ctx.resolved["expect"] = applied;
}

void run_restriction_monotone(const json& cfg, Ctx& ctx) {
  const std::vector<double> t_list =
      take_vecd(cfg, ctx.resolved, "t_list", {0.1, 0.25, 0.5, 0.75, 0.9});
  const double mass_tol = take_num(cfg, ctx.resolved, "mass_tol", 1e-9);
  for (double t : t_list)
    require(t >= 0.0 && t <= 1.0, Status::InvalidArgument, "t_list entries must lie in [0, 1]");
  SolvedProblem sp = load_and_solve(cfg, ctx);

  const mono::SupportSet support = mono::support_of(sp.plan, sp.mu0, sp.mu1, mass_tol);
  bool all_monotone = true;
  json rows = json::array();
  std::string csv = "t,pairs,monotone,min_cycle_mean\n";
  io::PlotSeries means{"min cycle mean", {}};
  for (double t : t_list) {
    const mono::SupportSet restricted = mono::restrict_support(*sp.space, support, t);
    const mono::CyclicalResult r = mono::check_cyclical(*sp.space, restricted);
    json row;
    row["t"] = t;
    row["pairs"] = restricted.pairs.size();
    row["monotone"] = mono::is_monotone(r);
    csv += io::format_double(t) + "," + std::to_string(restricted.pairs.size()) + ",";
    if (mono::is_monotone(r)) {
      const auto& cert = std::get<mono::MonotoneCertificate>(r);
      row["min_cycle_mean"] = cert.min_cycle_mean;
      csv += "1," + io::format_double(cert.min_cycle_mean) + "\n";
      means.points.emplace_back(t, cert.min_cycle_mean);
    } else {
      all_monotone = false;
      row["violation"] = io::violation_to_json(std::get<mono::CycleViolation>(r));
      csv += "0,\n";
    }
    rows.push_back(row);
  }

  ctx.results["cost"] = sp.cost_value;
  ctx.results["support_pairs"] = support.pairs.size();
  ctx.results["rows"] = rows;
  ctx.results["all_monotone"] = all_monotone;

  write_problem_artifacts(sp, ctx);
  io::write_text_file((ctx.out / "restriction.csv").string(), csv);
  if (!means.points.empty())
    io::emit_plot({means}, io::PlotKind::Line, (ctx.out / "restriction.svg").string(),
                  "cycle slack after restriction", "t", "min cycle mean");

  const json expect = take_expect(cfg);
  const bool expected = expect.contains("all_monotone") ? expect.at("all_monotone").get<bool>()
                                                        : true;
  ctx.resolved["expect"] = {{"all_monotone", expected}};
  if (all_monotone != expected) ctx.exit_code = 2;
}

void run_delta_table(const json& cfg, Ctx& ctx) {
  const std::vector<double> c_list = take_vecd(cfg, ctx.resolved, "C_list", {1.5, 2.0, 4.0, 10.0});
  const int resolution = take_int(cfg, ctx.resolved, "resolution", 1000);

  bool all_positive = true;
  bool monotone_ok = true;
  json rows = json::array();
  std::string csv = "C,delta,y1_u,y1_v\n";
  io::PlotSeries series{"delta(C)", {}};
  double prev_c = 0.0, prev_delta = 0.0;
  bool have_prev = false;
  for (double c : c_list) {
    const mono::DeltaProblem d = mono::delta_of_c(c, resolution);
    rows.push_back(io::delta_to_json(d));
    csv += io::format_double(c) + "," + io::format_double(d.delta) + "," +
           io::format_double(d.y1[0]) + "," + io::format_double(d.y1[1]) + "\n";
    series.points.emplace_back(c, d.delta);
    if (d.delta <= 0.0) all_positive = false;
    if (have_prev && c > prev_c && d.delta > prev_delta + 1e-12) monotone_ok = false;
    prev_c = c;
    prev_delta = d.delta;
    have_prev = true;
  }

  ctx.results["rows"] = rows;
  ctx.results["all_positive"] = all_positive;
  ctx.results["monotone_ok"] = monotone_ok;

  io::write_text_file((ctx.out / "delta.csv").string(), csv);
  io::emit_plot({series}, io::PlotKind::Line, (ctx.out / "delta.svg").string(),
                "concavity gap by ratio bound", "C", "delta");

  if (!all_positive || !monotone_ok) ctx.exit_code = 2;
}

void run_comparison_geometry(const json& cfg, Ctx& ctx) {
  spaces::SpacePtr space = space_from_json(need(cfg, "space"));
  ctx.resolved["space"] = canonical_space(need(cfg, "space"));
  const double k = take_num(cfg, ctx.resolved, "k", space->curvature_lower_bound());
  const int n_configs = take_int(cfg, ctx.resolved, "n_configs", 1000);
  const double negative_tol = take_num(cfg, ctx.resolved, "negative_tol", 1e-12);
  require(n_configs > 0, Status::InvalidArgument, "n_configs must be positive");

  SplitMix64 rng(sub_seed(ctx.seed, 2));
  std::vector<double> slacks;
  int skipped = 0;
  int negatives = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  json worst;
  for (int i = 0; i < n_configs; ++i) {
    const Point x = random_point(*space, rng);
    const Point y = random_point(*space, rng);
    const Point z = random_point(*space, rng);
    const double s = rng.next_u01() * space->distance(x, y);
    double slack = 0.0;
    try {
      slack = spaces::alexandrov_check(*space, x, y, z, s, k);
    } catch (const Error& e) {
      if (e.code() == Status::Domain) {
        ++skipped;
        continue;
      }
      throw;
    }
    slacks.push_back(slack);
    if (slack < -negative_tol) ++negatives;
    if (slack < min_slack) {
      min_slack = slack;
      worst = {{"x", x}, {"y", y}, {"z", z}, {"s", s}, {"slack", slack}};
    }
  }
  require(!slacks.empty(), Status::InvalidArgument,
          "every sampled configuration was skipped; no comparison triangles exist");

  ctx.results["evaluated"] = slacks.size();
  ctx.results["skipped"] = skipped;
  ctx.results["min_slack"] = min_slack;
  ctx.results["negatives"] = negatives;
  ctx.results["worst"] = worst;

  std::sort(slacks.begin(), slacks.end());
  std::string csv = "rank,slack\n";
  io::PlotSeries series{"sorted slack", {}};
  for (std::size_t i = 0; i < slacks.size(); ++i) {
    csv += std::to_string(i) + "," + io::format_double(slacks[i]) + "\n";
    series.points.emplace_back(static_cast<double>(i), slacks[i]);
  }
  io::write_text_file((ctx.out / "slacks.csv").string(), csv);
  io::emit_plot({series}, io::PlotKind::Line, (ctx.out / "slacks.svg").string(),
                "comparison slack profile", "rank", "slack");

  const json expect = take_expect(cfg);
  const bool expected_negative =
      expect.contains("negative_found") ? expect.at("negative_found").get<bool>() : false;
  ctx.resolved["expect"] = {{"negative_found", expected_negative}};
  if ((negatives > 0) != expected_negative) ctx.exit_code = 2;
}

void run_chart_distortion(const json& cfg, Ctx& ctx) {
  spaces::SpacePtr space = space_from_json(need(cfg, "space"));
  ctx.resolved["space"] = canonical_space(need(cfg, "space"));
  const json& chart_spec = need(cfg, "chart");
  ctx.resolved["chart"] = chart_spec;
  const charts::Chart chart = chart_from_json(space, chart_spec);
  const int n_pairs = take_int(cfg, ctx.resolved, "n_pairs", 200);
  require(n_pairs > 0, Status::InvalidArgument, "n_pairs must be positive");

  SplitMix64 rng(sub_seed(ctx.seed, 2));
  std::vector<std::pair<Point, Point>> pairs;
  std::string csv = "distance,ratio\n";
  io::PlotSeries series{"pair ratio", {}};
  for (int i = 0; i < n_pairs; ++i) {
    Point a = sample_in_chart(chart, rng);
    Point b = sample_in_chart(chart, rng);
    const double d = space->distance(a, b);
    if (d <= 1e-15) {
      --i;
      continue;
    }
    const double ratio = dist(chart.eval(a), chart.eval(b)) / d;
    csv += io::format_double(d) + "," + io::format_double(ratio) + "\n";
    series.points.emplace_back(d, ratio);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  const charts::DistortionResult agg = charts::distortion(chart, pairs);

  ctx.results["n_pairs"] = n_pairs;
  ctx.results["max_ratio"] = agg.max_ratio;
  ctx.results["min_ratio"] = agg.min_ratio;
  ctx.results["skipped"] = agg.skipped;

  io::write_text_file((ctx.out / "pairs.csv").string(), csv);
  io::emit_plot({series}, io::PlotKind::Scatter, (ctx.out / "distortion.svg").string(),
                "chart stretch per pair", "metric distance", "coordinate ratio");

  const json expect = take_expect(cfg);
  json applied = json::object();
  if (expect.contains("max_ratio_at_most")) {
    applied["max_ratio_at_most"] = expect.at("max_ratio_at_most");
    if (agg.max_ratio > expect.at("max_ratio_at_most").get<double>()) ctx.exit_code = 2;
  }
  if (expect.contains("min_ratio_at_least")) {
    applied["min_ratio_at_least"] = expect.at("min_ratio_at_least");
    if (agg.min_ratio < expect.at("min_ratio_at_least").get<double>()) ctx.exit_code = 2;
  }
  ctx.resolved["expect"] = applied;
}

ot::TransportPlan plan_from_json_entries(const json& spec,
                                         const measures::DiscreteMeasure& mu0,
                                         const measures::DiscreteMeasure& mu1) {
  ot::TransportPlan plan;
  plan.mu0_weights = mu0.weights;
  plan.mu1_weights = mu1.weights;
  for (const auto& e : need(spec, "entries")) {
    require(e.is_array() && e.size() == 3, Status::InvalidArgument,
            "plan entries must be [source, target, mass] triples");
    ot::PlanEntry entry;
    entry.i = e.at(0).get<std::size_t>();
    entry.j = e.at(1).get<std::size_t>();
    entry.mass = as_num(e.at(2), "entry mass");
    require(entry.i < mu0.size() && entry.j < mu1.size(), Status::InvalidArgument,
            "plan entry indexes a missing point");
    plan.entries.push_back(entry);
  }
  ot::validate_plan(plan);
  return plan;
}

void run_witness_reenactment(const json& cfg, Ctx& ctx) {
  const bool fixture = !cfg.contains("mu0");
  spaces::SpacePtr space;
  measures::DiscreteMeasure mu0, mu1;
  ot::TransportPlan plan;
  std::optional<charts::Chart> chart;
  mono::WitnessOptions options;
  options.mass_tol = take_num(cfg, ctx.resolved, "mass_tol", 1e-9);
  int k_class = 0;

  if (fixture) {
    // Built-in split-pair instance: two sources h apart, the first splitting
    // between two orthogonal unit targets, the second mapped straight up.
    // The plan is feasible but beatable, and the chart strainers sit far
    // away on the axes so coordinate velocities align with directions.
    const double h = take_num(cfg, ctx.resolved, "h", 0.05);
    const double strainer_distance = take_num(cfg, ctx.resolved, "strainer_distance", 1000.0);
    const double chart_radius = take_num(cfg, ctx.resolved, "chart_radius", 0.5);
    options.cone_radius = take_num(cfg, ctx.resolved, "cone_radius", 0.1);
    k_class = take_int(cfg, ctx.resolved, "k_class", 2);
    require(h > 0.0 && h < 1.0, Status::InvalidArgument, "h must lie in (0, 1)");

    space = spaces::make_euclidean(2);
    ctx.resolved["space"] = canonical_space({{"type", "euclidean"}, {"dimension", 2}});
    mu0.points = {{0.0, 0.0}, {h, 0.0}};
    mu0.weights = {0.5, 0.5};
    mu1.points = {{0.0, 1.0}, {1.0, 0.0}, {h, 1.0}};
    mu1.weights = {0.25, 0.25, 0.5};
    plan.entries = {{0, 0, 0.25}, {0, 1, 0.25}, {1, 2, 0.5}};
    plan.mu0_weights = mu0.weights;
    plan.mu1_weights = mu1.weights;
    ot::validate_plan(plan);
    chart.emplace(space, Point{0.0, 0.0},
                  std::vector<Point>{{strainer_distance, 0.0}, {0.0, strainer_distance}},
                  chart_radius);
  } else {
    space = space_from_json(need(cfg, "space"));
    ctx.resolved["space"] = canonical_space(need(cfg, "space"));
    json m0res, m1res;
    mu0 = measure_from_spec_impl(need(cfg, "mu0"), sub_seed(ctx.seed, 0), &m0res);
    mu1 = measure_from_spec_impl(need(cfg, "mu1"), sub_seed(ctx.seed, 1), &m1res);
    ctx.resolved["mu0"] = m0res;
    ctx.resolved["mu1"] = m1res;
    measures::validate_measure(mu0, *space);
    measures::validate_measure(mu1, *space);
    const json& chart_spec = need(cfg, "chart");
    ctx.resolved["chart"] = chart_spec;
    chart.emplace(chart_from_json(space, chart_spec));
    options.cone_radius = take_num(cfg, ctx.resolved, "cone_radius", 0.0);
    k_class = take_int(cfg, ctx.resolved, "k_class", 0);
    const ot::CostMatrix cost = ot::build_cost_matrix(*space, mu0, mu1);
    if (cfg.contains("plan")) {
      ctx.resolved["plan"] = cfg.at("plan");
      plan = plan_from_json_entries(cfg.at("plan"), mu0, mu1);
    } else {
      plan = ot::solve(mu0, mu1, cost);
    }
  }
  if (k_class > 0) options.pinned = mono::params_for_class(k_class);

  const mono::WitnessResult result =
      mono::witness_search(*space, mu0, mu1, plan, *chart, options);
  const bool found = result.witness.has_value();

  ctx.results["found"] = found;
  ctx.results["search"] = io::witness_result_to_json(result);
  if (found) {
    const mono::WitnessQuadruple& w = *result.witness;
    mono::SupportSet quad;
    quad.pairs = {{w.x1, w.gamma2_x1_t}, {w.x2, w.gamma1_x2_t}};
    const mono::CyclicalResult cyc = mono::check_cyclical(*space, quad);
    json cross;
    cross["monotone"] = mono::is_monotone(cyc);
    if (!mono::is_monotone(cyc)) {
      const double cyc_deficit = std::get<mono::CycleViolation>(cyc).deficit;
      cross["deficit"] = cyc_deficit;
      cross["deficit_match"] = std::abs(cyc_deficit - w.deficit) <= 1e-10;
    }
    ctx.results["cross_check"] = cross;
  }

  io::write_measure(mu0, (ctx.out / "mu0.csv").string(), "csv");
  io::write_measure(mu1, (ctx.out / "mu1.csv").string(), "csv");
  io::write_text_file((ctx.out / "plan.csv").string(), io::plan_to_csv(plan));
  write_json_file(ctx.out / "witness.json", ctx.results["search"]);
  std::vector<io::PlotSeries> series = {measure_series("sources", mu0),
                                        measure_series("targets", mu1)};
  if (found) {
    io::PlotSeries restricted{"restricted targets", {}};
    restricted.points.push_back(xy(result.witness->gamma2_x1_t));
    restricted.points.push_back(xy(result.witness->gamma1_x2_t));
    series.push_back(restricted);
  }
  io::emit_plot(series, io::PlotKind::Scatter, (ctx.out / "quadruple.svg").string(),
                "witness configuration", "x", "y");

  const json expect = take_expect(cfg);
  const bool expected = expect.contains("witness") ? expect.at("witness").get<bool>() : fixture;
  ctx.resolved["expect"] = {{"witness", expected}};
  if (found != expected) ctx.exit_code = 2;
}

using Runner = void (*)(const json&, Ctx&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"map-vs-split", run_map_vs_split},
      {"uniqueness-probe", run_uniqueness_probe},
      {"restriction-monotone", run_restriction_monotone},
      {"delta-table", run_delta_table},
      {"comparison-geometry", run_comparison_geometry},
      {"chart-distortion", run_chart_distortion},
      {"witness-reenactment", run_witness_reenactment},
  };
  return table;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = {
      {"map-vs-split", "solve a transport problem, classify the plan as map or split, "
                       "and probe optimizer uniqueness"},
      {"uniqueness-probe", "re-solve under random cost perturbations and compare supports"},
      {"restriction-monotone", "restrict an optimal support along geodesics and re-check "
                               "cyclical monotonicity at each t"},
      {"delta-table", "quantitative concavity gap delta(C) with maximizing configurations"},
      {"comparison-geometry", "comparison slack of random triangles against a model curvature"},
      {"chart-distortion", "bi-Lipschitz ratios of a distance chart over sampled pairs"},
      {"witness-reenactment", "hunt an improving quadruple in the restricted support of a "
                              "split plan"},
  };
  return infos;
}

spaces::SpacePtr space_from_json(const json& spec) {
  const json canon = canonical_space(spec);
  const std::string type = canon.at("type").get<std::string>();
  if (type == "euclidean") return spaces::make_euclidean(canon.at("dimension").get<int>());
  if (type == "sphere") return spaces::make_sphere(canon.at("radius").get<double>());
  return spaces::make_cone(canon.at("total_angle").get<double>());
}

measures::DiscreteMeasure measure_from_spec(const json& spec, std::uint64_t fallback_seed) {
  return measure_from_spec_impl(spec, fallback_seed, nullptr);
}

charts::Chart chart_from_json(spaces::SpacePtr space, const json& spec) {
  require(spec.is_object(), Status::InvalidArgument, "chart spec must be an object");
  return charts::Chart(std::move(space), as_point(need(spec, "base"), "base"),
                       as_points(need(spec, "strainers"), "strainers"),
                       as_num(need(spec, "radius"), "radius"));
}

ScenarioOutcome run_scenario(const json& config) {
  require(config.is_object(), Status::InvalidArgument, "config must be a JSON object");
  const std::string name = need(config, "scenario").get<std::string>();
  const auto it = runners().find(name);
  if (it == runners().end()) fail(Status::UnknownScenario, "unknown scenario \"" + name + "\"");

  Ctx ctx;
  ctx.resolved["scenario"] = name;
  if (config.contains("seed")) {
    ctx.seed = config.at("seed").get<std::uint64_t>();
  } else {
    ctx.seed = 1;
  }
  ctx.resolved["seed"] = ctx.seed;
  const std::string out_dir = config.value("out_dir", std::string("out"));
  ctx.resolved["out_dir"] = out_dir;
  ctx.out = fs::path(out_dir);
  fs::create_directories(ctx.out);

  const auto t0 = std::chrono::steady_clock::now();
  it->second(config, ctx);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json report;
  report["scenario"] = name;
  report["config"] = ctx.resolved;
  report["results"] = ctx.results;
  report["exit_code"] = ctx.exit_code;
  write_json_file(ctx.out / "report.json", report);

  json meta;
  meta["scenario"] = name;
  meta["generated_at"] = utc_timestamp();
  meta["elapsed_seconds"] = elapsed;
  write_json_file(ctx.out / "meta.json", meta);

  return {ctx.exit_code, report};
}

}  // namespace geodot::scenarios
