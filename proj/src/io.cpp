#include "geodot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace geodot::io {

namespace {

json point_to_json(const Point& p) {
  json arr = json::array();
  for (double v : p) arr.push_back(v);
  return arr;
}

Point point_from_json(const json& j) {
  require(j.is_array() && !j.empty(), Status::Parse, "point must be a nonempty array");
  Point p;
  for (const auto& v : j) {
    require(v.is_number(), Status::Parse, "point coordinates must be numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

double parse_double(const std::string& field) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    fail(Status::Parse, "not a number: '" + field + "'");
  }
  require(pos == field.size(), Status::Parse, "trailing characters in number: '" + field + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string measure_to_csv(const measures::DiscreteMeasure& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (double c : m.points[i]) out << format_double(c) << ',';
    out << format_double(m.weights[i]) << '\n';
  }
  return out.str();
}

measures::DiscreteMeasure measure_from_csv(const std::string& text) {
  measures::DiscreteMeasure m;
  std::istringstream in(text);
  std::string line;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(parse_double(field));
    require(fields.size() >= 2, Status::Parse, "row needs at least one coordinate and a weight");
    if (dim == 0) dim = fields.size() - 1;
    require(fields.size() - 1 == dim, Status::DimensionMismatch,
            "rows have inconsistent coordinate counts");
    m.weights.push_back(fields.back());
    fields.pop_back();
    m.points.push_back(std::move(fields));
  }
  measures::validate_measure_euclidean(m);
  return m;
}

json measure_to_json(const measures::DiscreteMeasure& m) {
  json j;
  j["points"] = json::array();
  for (const Point& p : m.points) j["points"].push_back(point_to_json(p));
  j["weights"] = json::array();
  for (double w : m.weights) j["weights"].push_back(w);
  return j;
}

measures::DiscreteMeasure measure_from_json(const json& j) {
  require(j.is_object() && j.contains("points") && j.contains("weights"), Status::Parse,
          "measure JSON needs 'points' and 'weights'");
  measures::DiscreteMeasure m;
  for (const auto& p : j.at("points")) m.points.push_back(point_from_json(p));
  for (const auto& w : j.at("weights")) {
    require(w.is_number(), Status::Parse, "weights must be numbers");
    m.weights.push_back(w.get<double>());
  }
  measures::validate_measure_euclidean(m);
  return m;
}

measures::DiscreteMeasure read_measure(const std::string& path, const std::string& format) {
  std::string text = read_text_file(path);
  if (format == "csv") return measure_from_csv(text);
  if (format == "json") {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(Status::Parse, std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return measure_from_json(j);
  }
  fail(Status::InvalidArgument, "unknown measure format: " + format);
}

void write_measure(const measures::DiscreteMeasure& m, const std::string& path,
                   const std::string& format) {
  if (format == "csv") {
    write_text_file(path, measure_to_csv(m));
  } else if (format == "json") {
    write_text_file(path, measure_to_json(m).dump(2) + "\n");
  } else {
    fail(Status::InvalidArgument, "unknown measure format: " + format);
  }
}

json plan_to_json(const ot::TransportPlan& plan, double cost) {
  json j;
  j["entries"] = json::array();
  for (const ot::PlanEntry& e : plan.entries)
    j["entries"].push_back(json::array({e.i, e.j, e.mass}));
  j["cost"] = cost;
  j["solver"] = {{"algorithm", "network-simplex"},
                 {"pivots", plan.pivots},
                 {"degenerate_pivots", plan.degenerate_pivots}};
  j["rows"] = plan.mu0_weights.size();
  j["cols"] = plan.mu1_weights.size();
  return j;
}

std::string plan_to_csv(const ot::TransportPlan& plan) {
  std::ostringstream out;
  out << "source,target,mass\n";
  for (const ot::PlanEntry& e : plan.entries)
    out << e.i << ',' << e.j << ',' << format_double(e.mass) << '\n';
  return out.str();
}

json support_to_json(const mono::SupportSet& support) {
  json pairs = json::array();
  for (const auto& [x, y] : support.pairs)
    pairs.push_back(json::array({point_to_json(x), point_to_json(y)}));
  return json{{"pairs", std::move(pairs)}};
}

json violation_to_json(const mono::CycleViolation& v) {
  return json{{"monotone", false},
              {"indices", v.indices},
              {"original_cost", v.original_cost},
              {"permuted_cost", v.permuted_cost},
              {"deficit", v.deficit}};
}

json certificate_to_json(const mono::MonotoneCertificate& c) {
  return json{{"monotone", true}, {"pairs", c.pairs}, {"min_cycle_mean", c.min_cycle_mean}};
}

json cyclical_result_to_json(const mono::CyclicalResult& r) {
  if (const auto* cert = std::get_if<mono::MonotoneCertificate>(&r)) return certificate_to_json(*cert);
  return violation_to_json(std::get<mono::CycleViolation>(r));
}

json delta_to_json(const mono::DeltaProblem& d) {
  return json{{"C", d.C},
              {"delta", d.delta},
              {"maximizer", {{"y1", point_to_json(d.y1)}, {"y2", point_to_json(d.y2)}}}};
}

json witness_result_to_json(const mono::WitnessResult& r) {
  json j;
  j["found"] = r.witness.has_value();
  j["split_rows"] = r.split_rows;
  j["classified_rows"] = r.classified_rows;
  j["buckets"] = r.buckets;
  j["candidates_tested"] = r.candidates_tested;
  if (!r.witness) {
    j["reason"] = r.reason;
    return j;
  }
  const mono::WitnessQuadruple& q = *r.witness;
  j["quadruple"] = {{"row1", q.row1},
                    {"row2", q.row2},
                    {"x1", point_to_json(q.x1)},
                    {"x2", point_to_json(q.x2)},
                    {"y1_target", point_to_json(q.y1_target)},
                    {"y2_target", point_to_json(q.y2_target)},
                    {"gamma2_x1_t", point_to_json(q.gamma2_x1_t)},
                    {"gamma1_x2_t", point_to_json(q.gamma1_x2_t)}};
  j["original_cost"] = q.original_cost;
  j["permuted_cost"] = q.permuted_cost;
  j["deficit"] = q.deficit;
  j["params"] = {{"k_class", q.params.k_class},
                 {"epsilon", q.params.epsilon},
                 {"epsilon_hat", q.params.epsilon_hat},
                 {"t", q.params.t}};
  j["bucket_velocities"] = {{"y1", point_to_json(q.bucket_y1)}, {"y2", point_to_json(q.bucket_y2)}};
  j["cone"] = {{"opening_used", q.opening_used},
               {"widened", q.widened},
               {"radius_used", q.cone_radius_used}};
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Status::Io, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  require(!in.bad(), Status::Io, "error reading file: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Status::Io, "cannot open file for writing: " + path);
  out << content;
  out.flush();
  require(out.good(), Status::Io, "error writing file: " + path);
}

}  // namespace geodot::io
