#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "castlab/analysis.hpp"
#include "castlab/bench.hpp"

namespace castlab {

// JSON field names are part of the external interface; keep them stable.
nlohmann::json to_json(const AvalancheTable& t);
nlohmann::json to_json(const Uniformity& u);
nlohmann::json to_json(const KeySensitivityReport& r);
nlohmann::json to_json(const BenchReport& r);

// Whole-run avalanche document: configuration (minus worker count) and one
// table per round count.
nlohmann::json avalanche_report(const AvalancheConfig& cfg, std::span<const AvalancheTable> tables);

std::string avalanche_csv(std::span<const AvalancheTable> tables);
std::string histogram_csv(const Histogram& h);

// Fixed-point decimal with `digits` places; locale independent.
std::string format_fixed(double v, int digits = 6);

}  // namespace castlab
