#pragma once

#include <nlohmann/json.hpp>

#include "nonlocality/behavior.hpp"
#include "nonlocality/chsh.hpp"
#include "nonlocality/optimize.hpp"
#include "nonlocality/state.hpp"

namespace nonlocality {

/// Version stamped into every document as "schema_version".
inline constexpr int kSchemaVersion = 1;

/// Significant digits of emitted reals.
inline constexpr int kOutputDigits = 12;

/// x rounded to `digits` significant decimal digits.
double round_significant(double x, int digits = kOutputDigits);

/// {"schema": "state", "schema_version", "dims": [dA, dB],
///  "amplitudes": [[[re, im], ...], ...]} with rows indexed by A's basis.
nlohmann::json to_json(const BipartitePureState& state);

/// Inverse of to_json(state); renormalizes, so rounded output reloads.
BipartitePureState state_from_json(const nlohmann::json& j);

/// {"schema": "behavior", "schema_version", "shape": {...},
///  "layout": "x,y,a,b", "table": [...]}.
nlohmann::json to_json(const BehaviorTable& table);

/// Inverse of to_json(table). Rounded tables are renormalized per setting
/// pair before validation.
BehaviorTable behavior_from_json(const nlohmann::json& j);

/// Bloch directions as {"a1": [nx, ny, nz], ...}.
nlohmann::json to_json(const ChshSettings& settings);

nlohmann::json to_json(const OptimizationResult& result);

}  // namespace nonlocality
