#pragma once

#include <string>

#include "json.hpp"

#include "geodot/measure.hpp"
#include "geodot/monotonicity.hpp"
#include "geodot/solver.hpp"
#include "geodot/witness.hpp"

namespace geodot::io {

using json = nlohmann::ordered_json;

/// Doubles are serialized with 17 significant digits so that reading back
/// reproduces the exact bit pattern and fixed seeds give byte-identical files.
std::string format_double(double v);

std::string measure_to_csv(const measures::DiscreteMeasure& m);
measures::DiscreteMeasure measure_from_csv(const std::string& text);

json measure_to_json(const measures::DiscreteMeasure& m);
measures::DiscreteMeasure measure_from_json(const json& j);

/// Reads a measure from disk; format is "csv" or "json". The result is
/// validated (normalization, distinctness, dimensions) before returning.
measures::DiscreteMeasure read_measure(const std::string& path, const std::string& format);
void write_measure(const measures::DiscreteMeasure& m, const std::string& path,
                   const std::string& format);

json plan_to_json(const ot::TransportPlan& plan, double cost);
std::string plan_to_csv(const ot::TransportPlan& plan);

json support_to_json(const mono::SupportSet& support);
json violation_to_json(const mono::CycleViolation& v);
json certificate_to_json(const mono::MonotoneCertificate& c);
json cyclical_result_to_json(const mono::CyclicalResult& r);
json delta_to_json(const mono::DeltaProblem& d);
json witness_result_to_json(const mono::WitnessResult& r);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace geodot::io
