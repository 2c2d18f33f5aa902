// Command-line front end. Talks to the library exclusively through the C
// interface in geodot.h, the same surface other language bindings would use.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geodot.h"

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void die(const std::string& context) {
  std::fprintf(stderr, "error: %s: %s\n", context.c_str(), geodot_last_error());
  std::exit(1);
}

void ok(geodot_status st, const std::string& context) {
  if (st != GEODOT_OK) die(context);
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { geodot_string_free(s); }
};

struct SpaceHandle {
  geodot_space* h = nullptr;
  ~SpaceHandle() { geodot_space_free(h); }
};

struct MeasureHandle {
  geodot_measure* h = nullptr;
  ~MeasureHandle() { geodot_measure_free(h); }
};

struct PlanHandle {
  geodot_plan* h = nullptr;
  ~PlanHandle() { geodot_plan_free(h); }
};

struct ChartHandle {
  geodot_chart* h = nullptr;
  ~ChartHandle() { geodot_chart_free(h); }
};

/// Space specs are "euclidean:D", "sphere[:R]", or "cone:THETA".
geodot_space* make_space(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string type = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  geodot_space* s = nullptr;
  if (type == "euclidean") {
    if (arg.empty()) {
      std::fprintf(stderr, "error: euclidean spec needs a dimension, e.g. euclidean:2\n");
      std::exit(1);
    }
    ok(geodot_space_euclidean(std::stoi(arg), &s), "creating space");
  } else if (type == "sphere") {
    ok(geodot_space_sphere(arg.empty() ? 1.0 : std::stod(arg), &s), "creating space");
  } else if (type == "cone") {
    if (arg.empty()) {
      std::fprintf(stderr, "error: cone spec needs a total angle, e.g. cone:6.283\n");
      std::exit(1);
    }
    ok(geodot_space_cone(std::stod(arg), &s), "creating space");
  } else {
    std::fprintf(stderr, "error: unknown space type \"%s\"\n", type.c_str());
    std::exit(1);
  }
  return s;
}

std::string resolve_format(const std::string& path, const std::string& flag) {
  if (flag == "csv" || flag == "json") return flag;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return "json";
  return "csv";
}

geodot_measure* load_measure(const std::string& path, const std::string& format_flag) {
  geodot_measure* m = nullptr;
  ok(geodot_measure_read(path.c_str(), resolve_format(path, format_flag).c_str(), &m),
     "reading " + path);
  return m;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> p;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) p.push_back(std::stod(part));
  if (p.empty()) {
    std::fprintf(stderr, "error: empty point \"%s\"\n", text.c_str());
    std::exit(1);
  }
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    std::exit(1);
  }
}

std::string plan_csv(const geodot_plan* plan) {
  size_t n = 0;
  ok(geodot_plan_size(plan, &n), "reading plan");
  std::string text = "source,target,mass\n";
  char line[128];
  for (size_t e = 0; e < n; ++e) {
    size_t i = 0, j = 0;
    double mass = 0.0;
    ok(geodot_plan_entry(plan, e, &i, &j, &mass), "reading plan");
    std::snprintf(line, sizeof(line), "%zu,%zu,%.17g\n", i, j, mass);
    text += line;
  }
  return text;
}

struct ProblemArgs {
  std::string space_spec;
  std::string mu0_path;
  std::string mu1_path;
  std::string format = "auto";
};

void add_problem_options(CLI::App* cmd, ProblemArgs& args) {
  cmd->add_option("--space", args.space_spec, "space spec: euclidean:D, sphere[:R], cone:THETA")
      ->required();
  cmd->add_option("--mu0", args.mu0_path, "source measure file")->required();
  cmd->add_option("--mu1", args.mu1_path, "target measure file")->required();
  cmd->add_option("--format", args.format, "measure file format: csv, json, or auto")
      ->check(CLI::IsMember({"csv", "json", "auto"}));
}

struct Problem {
  SpaceHandle space;
  MeasureHandle mu0;
  MeasureHandle mu1;
  PlanHandle plan;
};

void solve_problem(const ProblemArgs& args, Problem& p) {
  p.space.h = make_space(args.space_spec);
  p.mu0.h = load_measure(args.mu0_path, args.format);
  p.mu1.h = load_measure(args.mu1_path, args.format);
  ok(geodot_solve(p.space.h, p.mu0.h, p.mu1.h, &p.plan.h), "solving");
}

int run_solve(const ProblemArgs& args, const std::string& out_dir, bool as_csv) {
  Problem p;
  solve_problem(args, p);
  OwnedString plan_json;
  ok(geodot_plan_to_json(p.plan.h, &plan_json.s), "serializing plan");
  if (as_csv) {
    std::fputs(plan_csv(p.plan.h).c_str(), stdout);
  } else {
    std::printf("%s\n", plan_json.s);
  }
  if (!out_dir.empty()) {
    write_file(out_dir + "/plan.json", std::string(plan_json.s) + "\n");
    write_file(out_dir + "/plan.csv", plan_csv(p.plan.h));
  }
  return 0;
}

int run_check_monotone(const ProblemArgs& args, double t, double mass_tol) {
  Problem p;
  solve_problem(args, p);
  int monotone = 0;
  OwnedString result;
  ok(geodot_check_cyclical(p.plan.h, t, mass_tol, &monotone, &result.s), "checking cycles");
  std::printf("%s\n", result.s);
  return monotone ? 0 : 2;
}

int run_restrict(const ProblemArgs& args, double t, double mass_tol,
                 const std::string& out_dir) {
  Problem p;
  solve_problem(args, p);
  OwnedString support;
  ok(geodot_restrict_support(p.plan.h, t, mass_tol, &support.s), "restricting support");
  std::printf("%s\n", support.s);
  if (!out_dir.empty()) write_file(out_dir + "/support.json", std::string(support.s) + "\n");
  return 0;
}

int run_delta(const std::vector<double>& c_list, int resolution, bool as_json) {
  json rows = json::array();
  for (double c : c_list) {
    double delta = 0.0;
    OwnedString details;
    ok(geodot_delta_of_c(c, resolution, &delta, &details.s), "computing delta");
    if (as_json) {
      rows.push_back(json::parse(details.s));
    } else {
      std::printf("C=%.17g delta=%.17g\n", c, delta);
    }
  }
  if (as_json) std::printf("%s\n", rows.dump(2).c_str());
  return 0;
}

int run_chart(const std::string& space_spec, const std::string& base_text,
              const std::vector<std::string>& strainer_texts, double radius,
              const std::vector<std::string>& eval_texts) {
  SpaceHandle space;
  space.h = make_space(space_spec);
  size_t ps = 0;
  ok(geodot_space_point_size(space.h, &ps), "querying space");

  const std::vector<double> base = parse_point(base_text);
  std::vector<double> strainers;
  for (const auto& text : strainer_texts) {
    const std::vector<double> s = parse_point(text);
    strainers.insert(strainers.end(), s.begin(), s.end());
  }
  ChartHandle chart;
  ok(geodot_chart_create(space.h, base.data(), strainers.data(), strainer_texts.size(), radius,
                         &chart.h),
     "creating chart");

  std::vector<double> coords(strainer_texts.size());
  for (const auto& text : eval_texts) {
    const std::vector<double> x = parse_point(text);
    int inside = 0;
    ok(geodot_chart_contains(chart.h, x.data(), &inside), "testing domain");
    if (!inside) {
      std::printf("%s -> outside the chart domain\n", text.c_str());
      continue;
    }
    ok(geodot_chart_eval(chart.h, x.data(), coords.data()), "evaluating chart");
    std::printf("%s ->", text.c_str());
    for (double c : coords) std::printf(" %.17g", c);
    std::printf("\n");
  }
  return 0;
}

int run_scenario_cmd(const std::string& name, const std::string& config_path,
                     std::uint64_t seed, bool seed_set, const std::string& out_dir) {
  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "error: cannot read %s\n", config_path.c_str());
      return 1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      config = json::parse(buffer.str());
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s: %s\n", config_path.c_str(), e.what());
      return 1;
    }
  }
  if (!name.empty()) config["scenario"] = name;
  if (seed_set) config["seed"] = seed;
  if (!out_dir.empty()) config["out_dir"] = out_dir;

  int scenario_exit = 0;
  OwnedString report;
  ok(geodot_run_scenario(config.dump().c_str(), &scenario_exit, &report.s), "running scenario");
  std::printf("%s\n", report.s);
  return scenario_exit;
}

int run_list_scenarios() {
  OwnedString listing;
  ok(geodot_list_scenarios(&listing.s), "listing scenarios");
  const json arr = json::parse(listing.s);
  for (const auto& entry : arr)
    std::printf("%-22s %s\n", entry.at("name").get<std::string>().c_str(),
                entry.at("description").get<std::string>().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"squared-distance optimal transport on geodesic spaces"};
  app.require_subcommand(1);

  ProblemArgs solve_args;
  std::string solve_out;
  bool solve_csv = false;
  auto* solve = app.add_subcommand("solve", "solve a transport problem and print the plan");
  add_problem_options(solve, solve_args);
  solve->add_option("--out", solve_out, "directory for plan.json and plan.csv");
  solve->add_flag("--csv", solve_csv, "print the plan as CSV instead of JSON");

  ProblemArgs mono_args;
  double mono_t = 1.0;
  double mono_mass_tol = 1e-9;
  auto* mono = app.add_subcommand(
      "check-monotone", "check cyclical monotonicity of the optimal support, restricted by t");
  add_problem_options(mono, mono_args);
  mono->add_option("--t", mono_t, "restriction parameter in [0, 1]")->check(CLI::Range(0.0, 1.0));
  mono->add_option("--mass-tol", mono_mass_tol, "plan entries below this mass are ignored");

  ProblemArgs restrict_args;
  double restrict_t = 0.5;
  double restrict_mass_tol = 1e-9;
  std::string restrict_out;
  auto* restrict_cmd =
      app.add_subcommand("restrict", "print the geodesically restricted support of the plan");
  add_problem_options(restrict_cmd, restrict_args);
  restrict_cmd->add_option("--t", restrict_t, "restriction parameter in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  restrict_cmd->add_option("--mass-tol", restrict_mass_tol,
                           "plan entries below this mass are ignored");
  restrict_cmd->add_option("--out", restrict_out, "directory for support.json");

  std::vector<double> delta_c = {1.5, 2.0, 4.0, 10.0};
  int delta_resolution = 1000;
  bool delta_json = false;
  auto* delta = app.add_subcommand("delta", "concavity gap delta(C) for ratio bounds C");
  delta->add_option("--C", delta_c, "ratio bounds (repeatable)");
  delta->add_option("--resolution", delta_resolution, "grid resolution per axis");
  delta->add_flag("--json", delta_json, "print maximizer details as JSON");

  std::string chart_space, chart_base;
  std::vector<std::string> chart_strainers, chart_evals;
  double chart_radius = 1.0;
  auto* chart = app.add_subcommand("chart", "evaluate distance coordinates around a base point");
  chart->add_option("--space", chart_space, "space spec: euclidean:D, sphere[:R], cone:THETA")
      ->required();
  chart->add_option("--base", chart_base, "base point, comma-separated")->required();
  chart->add_option("--strainer", chart_strainers, "strainer point (repeat once per dimension)")
      ->required();
  chart->add_option("--radius", chart_radius, "chart domain radius")->required();
  chart->add_option("--eval", chart_evals, "point to evaluate (repeatable)");

  std::string scenario_name, scenario_config, scenario_out;
  std::uint64_t scenario_seed = 0;
  auto* scenario = app.add_subcommand("scenario", "run a named scenario from a JSON config");
  scenario->add_option("name", scenario_name, "scenario name (may also come from the config)");
  scenario->add_option("--config", scenario_config, "JSON config file");
  auto* seed_opt = scenario->add_option("--seed", scenario_seed, "master seed override");
  scenario->add_option("--out", scenario_out, "output directory override");

  auto* list = app.add_subcommand("list-scenarios", "list the registered scenarios");

  CLI11_PARSE(app, argc, argv);

  if (*solve) return run_solve(solve_args, solve_out, solve_csv);
  if (*mono) return run_check_monotone(mono_args, mono_t, mono_mass_tol);
  if (*restrict_cmd)
    return run_restrict(restrict_args, restrict_t, restrict_mass_tol, restrict_out);
  if (*delta) return run_delta(delta_c, delta_resolution, delta_json);
  if (*chart) return run_chart(chart_space, chart_base, chart_strainers, chart_radius, chart_evals);
  if (*scenario)
    return run_scenario_cmd(scenario_name, scenario_config, scenario_seed, seed_opt->count() > 0,
                            scenario_out);
  if (*list) return run_list_scenarios();
  return 0;
}
