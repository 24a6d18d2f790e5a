#include "nonlocality/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace nonlocality {

namespace {

void check_schema(const nlohmann::json& j, const char* name) {
  if (!j.is_object() || j.value("schema", "") != name) {
    throw std::invalid_argument(std::string("expected a '") + name + "' document");
  }
  if (j.value("schema_version", 0) != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version");
  }
}

nlohmann::json direction(const BlochMeasurement& m) {
  return {round_significant(m.nx()), round_significant(m.ny()), round_significant(m.nz())};
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, x);
  return std::strtod(buffer, nullptr);
}

nlohmann::json to_json(const BipartitePureState& state) {
  nlohmann::json rows = nlohmann::json::array();
  for (int j = 0; j < state.dim_a(); ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < state.dim_b(); ++k) {
      const Complex c = state.amplitude(j, k);
      row.push_back({round_significant(c.real()), round_significant(c.imag())});
    }
    rows.push_back(std::move(row));
  }
  return {{"schema", "state"},
          {"schema_version", kSchemaVersion},
          {"dims", {state.dim_a(), state.dim_b()}},
          {"amplitudes", std::move(rows)}};
}

BipartitePureState state_from_json(const nlohmann::json& j) {
  check_schema(j, "state");
  const int da = j.at("dims").at(0).get<int>();
  const int db = j.at("dims").at(1).get<int>();
  const auto& rows = j.at("amplitudes");
  if (static_cast<int>(rows.size()) != da) throw std::invalid_argument("state: row count mismatch");
  Eigen::MatrixXcd c(da, db);
  for (int r = 0; r < da; ++r) {
    if (static_cast<int>(rows[r].size()) != db) {
      throw std::invalid_argument("state: column count mismatch");
    }
    for (int k = 0; k < db; ++k) c(r, k) = {rows[r][k].at(0).get<double>(), rows[r][k].at(1).get<double>()};
  }
  return BipartitePureState::normalized(std::move(c));
}

nlohmann::json to_json(const BehaviorTable& table) {
  const auto& s = table.shape();
  nlohmann::json values = nlohmann::json::array();
  for (double p : table.values()) values.push_back(round_significant(p));
  return {{"schema", "behavior"},
          {"schema_version", kSchemaVersion},
          {"shape",
           {{"settings_a", s.settings_a},
            {"settings_b", s.settings_b},
            {"outcomes_a", s.outcomes_a},
            {"outcomes_b", s.outcomes_b}}},
          {"layout", "x,y,a,b"},
          {"table", std::move(values)}};
}

BehaviorTable behavior_from_json(const nlohmann::json& j) {
  check_schema(j, "behavior");
  const auto& s = j.at("shape");
  const Shape shape{s.at("settings_a").get<int>(), s.at("settings_b").get<int>(),
                    s.at("outcomes_a").get<int>(), s.at("outcomes_b").get<int>()};
  auto values = j.at("table").get<std::vector<double>>();
  if (values.size() != shape.size()) throw std::invalid_argument("behavior: table size mismatch");
  const auto block = static_cast<std::size_t>(shape.outcome_pairs());
  for (std::size_t start = 0; start < values.size(); start += block) {
    double total = 0.0;
    for (std::size_t i = 0; i < block; ++i) total += values[start + i];
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("behavior: block does not sum to 1");
    for (std::size_t i = 0; i < block; ++i) values[start + i] /= total;
  }
  return BehaviorTable(shape, std::move(values));
}

nlohmann::json to_json(const ChshSettings& s) {
  return {{"a1", direction(s.a1)}, {"a2", direction(s.a2)}, {"b1", direction(s.b1)},
          {"b2", direction(s.b2)}};
}

nlohmann::json to_json(const OptimizationResult& r) {
  nlohmann::json parameters = nlohmann::json::object();
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    const auto name = i < r.parameter_names.size() ? r.parameter_names[i] : "p" + std::to_string(i);
    parameters[name] = round_significant(r.parameters[i]);
  }
  return {{"value", round_significant(r.value)}, {"parameters", std::move(parameters)},
          {"iterations", r.iterations},          {"evaluations", r.evaluations},
          {"gap", round_significant(r.gap)},     {"best_start", r.best_start},
          {"starts", r.starts},                  {"seed", r.seed}};
}

}  // namespace nonlocality
