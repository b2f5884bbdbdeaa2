#pragma once

#include <string>

#include <json.hpp>

#include "fcds/experiments.hpp"

namespace fcds {

/// Strict plan deserialization: unknown keys, wrong types, and keys that do
/// not apply to the plan's algorithm/mode are rejected with a PlanError
/// naming the field. The parsed plan is also validated.
ExperimentPlan parsePlan(const nlohmann::json& j);
ExperimentPlan parsePlanFile(const std::string& path);

/// Full plan, defaults resolved; parsePlan(emitPlan(p)) reproduces p.
nlohmann::json emitPlan(const ExperimentPlan& plan);

/// Run manifest: tool name/version plus the resolved plan.
nlohmann::json makeManifest(const ExperimentPlan& plan);

}  // namespace fcds
