#include "nonlocality/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nonlocality {

ChshSettings ChshSettings::from_angles(std::span<const double> angles) {
  if (angles.size() != 8) throw std::invalid_argument("ChshSettings: expected 8 angles");
  return {BlochMeasurement::from_angles(angles[0], angles[1]),
          BlochMeasurement::from_angles(angles[2], angles[3]),
          BlochMeasurement::from_angles(angles[4], angles[5]),
          BlochMeasurement::from_angles(angles[6], angles[7])};
}

std::array<GeneralMeasurement, 2> ChshSettings::measurements_a() const {
  return {to_measurement(a1), to_measurement(a2)};
}

std::array<GeneralMeasurement, 2> ChshSettings::measurements_b() const {
  return {to_measurement(b1), to_measurement(b2)};
}

double chsh_value(const BipartitePureState& state, const ChshSettings& s) {
  return correlator(state, s.a1, s.b1) + correlator(state, s.a1, s.b2) +
         correlator(state, s.a2, s.b1) - correlator(state, s.a2, s.b2);
}

ChshSettings chsh_optimal_settings(double theta) {
  const double mu = std::atan(std::sin(2.0 * theta));
  return {BlochMeasurement::z(), BlochMeasurement::x(),
          BlochMeasurement::from_angles(mu, 0.0),
          BlochMeasurement::from_angles(mu, std::numbers::pi)};
}

double chsh_analytic_maximum(double theta) {
  const double s = std::sin(2.0 * theta);
  return 2.0 * std::sqrt(1.0 + s * s);
}

int chsh_deterministic(int a1, int a2, int b1, int b2) {
  return a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2;
}

LocalExtremes chsh_local_extremes() {
  LocalExtremes out{std::numeric_limits<int>::min(), std::numeric_limits<int>::max(), 0};
  for (int mask = 0; mask < 16; ++mask) {
    auto sign = [mask](int bit) { return (mask >> bit) & 1 ? -1 : 1; };
    const int value = chsh_deterministic(sign(0), sign(1), sign(2), sign(3));
    out.maximum = std::max(out.maximum, value);
    out.minimum = std::min(out.minimum, value);
    ++out.assignments;
  }
  return out;
}

double chsh_local_bound() { return static_cast<double>(chsh_local_extremes().maximum); }

double chsh_of_behavior(const BehaviorTable& table) {
  if (table.shape() != kChshShape) {
    throw std::invalid_argument("chsh_of_behavior: requires a (2,2,2,2) behavior");
  }
  return table_correlator(table, 0, 0) + table_correlator(table, 0, 1) +
         table_correlator(table, 1, 0) - table_correlator(table, 1, 1);
}

namespace {

std::vector<double> analytic_angles(double theta) {
  const double mu = std::atan(std::sin(2.0 * theta));
  const double half_pi = std::numbers::pi / 2.0;
  return {0.0, 0.0, half_pi, 0.0, mu, 0.0, mu, std::numbers::pi};
}

// Each direction starts near z or near x; the small offsets keep the simplex
// away from the coordinate singularity at the poles.
std::vector<double> corner_angles(int corner) {
  std::vector<double> angles;
  for (int k = 0; k < 4; ++k) {
    const bool toward_x = (corner >> k) & 1;
    angles.push_back(toward_x ? std::numbers::pi / 2.0 - 0.3 : 0.3);
    angles.push_back(0.1 * (k + 1));
  }
  return angles;
}

}  // namespace

ChshOptimum optimize_chsh(double theta, const ChshOptions& options) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 4.0)) {
    throw std::invalid_argument("optimize_chsh: theta must lie in [0, pi/4]");
  }
  const auto state = make_theta_state(theta);
  std::vector<std::vector<double>> starts;
  if (options.include_analytic_start) starts.push_back(analytic_angles(theta));
  for (int corner = 0; corner < 16; ++corner) starts.push_back(corner_angles(corner));

  const Objective negative_chsh = [&](std::span<const double> p) {
    return -chsh_value(state, ChshSettings::from_angles(p));
  };

  std::vector<NelderMeadResult> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    runs[i] = nelder_mead(negative_chsh, starts[i], options.nelder_mead);
  });

  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    evaluations += runs[i].evaluations;
    if (runs[i].value < runs[best].value) best = i;
  }

  ChshOptimum out{{}, ChshSettings::from_angles(runs[best].point)};
  out.result.value = -runs[best].value;
  out.result.parameters = runs[best].point;
  out.result.parameter_names = {"a1_polar", "a1_azimuth", "a2_polar", "a2_azimuth",
                                "b1_polar", "b1_azimuth", "b2_polar", "b2_azimuth"};
  out.result.iterations = runs[best].iterations;
  out.result.evaluations = evaluations;
  out.result.gap = runs[best].diameter;
  out.result.best_start = static_cast<int>(best);
  out.result.starts = static_cast<int>(starts.size());
  return out;
}

}  // namespace nonlocality
