#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "shockcop/distfn.hpp"
#include "shockcop/generators.hpp"
#include "shockcop/imprecise.hpp"
#include "shockcop/pbox.hpp"
#include "shockcop/shockmodel.hpp"

namespace shockcop {

using json = nlohmann::json;

// Parsing throws ConfigError with a path to the offending field.

ParamSpec parse_param_spec(const json& j);
/// {"lower": ParamSpec, "upper": ParamSpec}, or one ParamSpec for a precise box.
PBox parse_pbox(const json& j);
CopulaFamily parse_model(const json& j);
Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Shortest representation that reads back to the same double.
std::string format_double(double v);
/// Finite doubles as numbers, infinities as the strings "inf" / "-inf".
json number(double v);

json to_json(const Generator& g);
json to_json(const ViolationWitness& w);
json to_json(const ConditionResult& r);
json to_json(const ScenarioResult& r);

/// Header plus rows, ',' separated, '\n' terminated.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace shockcop
