#pragma once

#include "mns/interval_system.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mns {

struct TransformSource {
    enum class Kind { disc, real_line };
    Kind kind = Kind::disc;
    Matrix2 disc{};
    std::array<double, 4> real_line{};

    bool operator==(const TransformSource&) const = default;
};

// File-level description of a system; angles are already converted to radians.
struct SystemConfig {
    std::string name;
    std::vector<std::string> alphabet;
    std::vector<TransformSource> transforms;                 // alphabet order
    std::vector<std::vector<std::pair<double, double>>> cover; // alphabet order, arcs as (from, to)
    std::vector<std::vector<std::string>> forbidden;

    bool operator==(const SystemConfig&) const = default;
};

// Radians, "pi*<fraction>" strings, or [re, im] points on the circle.
double parse_angle(const nlohmann::json& value, const std::string& where);

SystemConfig parse_config(const nlohmann::json& doc);
// Syntax errors carry line and column.
SystemConfig parse_config_text(std::string_view text);
SystemConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const SystemConfig& config);

NumberSystemSpec build_spec(const SystemConfig& config);
// Disc matrices and radian endpoints describing an existing spec.
SystemConfig export_config(const NumberSystemSpec& spec);

} // namespace mns
