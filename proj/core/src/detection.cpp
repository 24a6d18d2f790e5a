#include "nonlocality/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nonlocality/random.hpp"

namespace nonlocality {

double ch_value(const DetectionProbabilities& p) {
  for (double v : {p.a1b1_pp, p.a1b2_pp, p.a2b1_pp, p.a2b2_pp, p.a1_p, p.b1_p}) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("ch_value: probability outside [0, 1]");
  }
  return p.a1b1_pp + p.a1b2_pp + p.a2b1_pp - p.a2b2_pp - p.a1_p - p.b1_p;
}

DetectionProbabilities detection_probabilities(const DetectionModel& m) {
  if (!(m.eta >= 0.0 && m.eta <= 1.0)) {
    throw std::invalid_argument("detection_probabilities: eta must lie in [0, 1]");
  }
  const auto state = make_theta_state(m.theta);
  const double c = std::cos(2.0 * m.theta);
  const auto& s = m.settings;
  auto joint = [&](const BlochMeasurement& a, const BlochMeasurement& b) {
    return m.eta * m.eta * 0.25 * (1.0 + c * (a.nz() + b.nz()) + correlator(state, a, b));
  };
  auto single = [&](const BlochMeasurement& n) { return m.eta * 0.5 * (1.0 + c * n.nz()); };
  return {joint(s.a1, s.b1), joint(s.a1, s.b2), joint(s.a2, s.b1), joint(s.a2, s.b2),
          single(s.a1), single(s.b1)};
}

std::optional<double> critical_efficiency_at(double theta, const ChshSettings& settings) {
  const double chsh = chsh_value(make_theta_state(theta), settings);
  if (chsh <= 2.0 + kNoViolationTolerance) return std::nullopt;
  const double tilt = 2.0 * std::cos(2.0 * theta) * (settings.a1.nz() + settings.b1.nz());
  return (4.0 + tilt) / (2.0 + tilt + chsh);
}

namespace {

std::vector<double> settings_to_angles(const ChshSettings& s) {
  std::vector<double> angles;
  for (const auto* n : {&s.a1, &s.a2, &s.b1, &s.b2}) {
    angles.push_back(std::acos(std::clamp(n->nz(), -1.0, 1.0)));
    angles.push_back(std::atan2(n->ny(), n->nx()));
  }
  return angles;
}

}  // namespace

EfficiencyOptimum optimize_critical_efficiency(double theta, const EfficiencyOptions& options) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 4.0)) {
    throw std::invalid_argument("optimize_critical_efficiency: theta must lie in (0, pi/4]");
  }
  const auto state = make_theta_state(theta);
  const double cos2 = std::cos(2.0 * theta);

  // Above the violation boundary the ratio is below one; below it the
  // objective rises linearly so the simplex is pushed back toward violation.
  const Objective objective = [&](std::span<const double> p) {
    const auto s = ChshSettings::from_angles(p);
    const double chsh = chsh_value(state, s);
    if (chsh <= 2.0 + kNoViolationTolerance) return 1.0 + (2.0 + kNoViolationTolerance - chsh);
    const double tilt = 2.0 * cos2 * (s.a1.nz() + s.b1.nz());
    return (4.0 + tilt) / (2.0 + tilt + chsh);
  };

  const auto chsh_optimal = chsh_optimal_settings(theta);
  std::vector<std::vector<double>> starts{settings_to_angles(chsh_optimal)};
  RandomStream rng(options.seed, 0xdec7);
  const int near_pole = std::max(0, (options.starts - 1) / 2);
  for (int i = 0; i < near_pole; ++i) {
    std::vector<double> angles;
    for (int k = 0; k < 4; ++k) {
      const double tilt = rng.uniform(0.0, 0.5);
      angles.push_back(rng.bit() ? std::numbers::pi - tilt : tilt);
      angles.push_back(rng.uniform(-0.2, 0.2));
    }
    starts.push_back(std::move(angles));
  }
  while (static_cast<int>(starts.size()) < options.starts) {
    std::vector<double> angles;
    for (int k = 0; k < 4; ++k) {
      angles.push_back(std::acos(rng.uniform(-1.0, 1.0)));
      angles.push_back(rng.uniform(-std::numbers::pi, std::numbers::pi));
    }
    starts.push_back(std::move(angles));
  }

  std::vector<NelderMeadResult> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) {
    // Two restarts from the previous optimum shake off premature collapse.
    auto run = nelder_mead(objective, starts[i], options.nelder_mead);
    long evaluations = run.evaluations;
    for (int restart = 0; restart < 2; ++restart) {
      auto again = nelder_mead(objective, run.point, options.nelder_mead);
      evaluations += again.evaluations;
      if (again.value <= run.value) run = std::move(again);
    }
    run.evaluations = evaluations;
    runs[i] = std::move(run);
  });

  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    evaluations += runs[i].evaluations;
    if (runs[i].value < runs[best].value) best = i;
  }

  EfficiencyOptimum out{{}, ChshSettings::from_angles(runs[best].point)};
  out.result.value = runs[best].value;
  out.result.parameters = runs[best].point;
  out.result.parameter_names = {"a1_polar", "a1_azimuth", "a2_polar", "a2_azimuth",
                                "b1_polar", "b1_azimuth", "b2_polar", "b2_azimuth"};
  out.result.iterations = runs[best].iterations;
  out.result.evaluations = evaluations;
  out.result.gap = runs[best].diameter;
  out.result.best_start = static_cast<int>(best);
  out.result.starts = static_cast<int>(starts.size());
  out.result.seed = options.seed;
  out.chsh = chsh_value(state, out.settings);
  out.chsh_optimal_efficiency = critical_efficiency_at(theta, chsh_optimal).value_or(1.0);
  out.below_local_model_threshold = out.result.value <= kLocalModelEfficiency;
  return out;
}

}  // namespace nonlocality
