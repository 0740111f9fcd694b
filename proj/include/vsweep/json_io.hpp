#pragma once

// JSON mappings shared by the config files and the session wire format.

#include "vsweep/path.hpp"
#include "vsweep/scenario.hpp"

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <string_view>

namespace vsweep {

void to_json(nlohmann::json& j, const Path& path);
void from_json(const nlohmann::json& j, Path& path);

void to_json(nlohmann::json& j, const KernelConfig& config);
void from_json(const nlohmann::json& j, KernelConfig& config);

void to_json(nlohmann::json& j, const SetConfig& config);
void from_json(const nlohmann::json& j, SetConfig& config);

void to_json(nlohmann::json& j, const ToleranceConfig& config);
void from_json(const nlohmann::json& j, ToleranceConfig& config);

void to_json(nlohmann::json& j, const ScenarioConfig& config);
void from_json(const nlohmann::json& j, ScenarioConfig& config);

nlohmann::json point_to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

/// Raises invalid-config if `j` is not an object or holds a key outside `allowed`.
void require_keys(const nlohmann::json& j, std::string_view where, std::initializer_list<std::string_view> allowed);

}  // namespace vsweep
