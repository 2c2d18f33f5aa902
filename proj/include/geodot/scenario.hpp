#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geodot/chart.hpp"
#include "geodot/io.hpp"

namespace geodot::scenarios {

struct ScenarioInfo {
  std::string name;
  std::string description;
};

const std::vector<ScenarioInfo>& list_scenarios();

struct ScenarioOutcome {
  int exit_code = 0;  // 0 success, 2 negative finding (errors throw)
  io::json report;
};

/// Runs the named scenario from a flat JSON config. Writes report.json plus
/// CSV/SVG artifacts into config["out_dir"]; run metadata with timestamps
/// goes to meta.json so that report bytes depend only on config and seed.
ScenarioOutcome run_scenario(const io::json& config);

// Shared config builders, also used by the CLI verbs.
spaces::SpacePtr space_from_json(const io::json& spec);
measures::DiscreteMeasure measure_from_spec(const io::json& spec, std::uint64_t fallback_seed);
charts::Chart chart_from_json(spaces::SpacePtr space, const io::json& spec);

}  // namespace geodot::scenarios
