#pragma once

#include <cstdint>
#include <optional>

#include "nonlocality/chsh.hpp"
#include "nonlocality/optimize.hpp"

namespace nonlocality {

/// Limit of the optimized critical efficiency as the state becomes separable.
inline constexpr double kSeparableLimitEfficiency = 2.0 / 3.0;

/// At or below this efficiency a local model reproduces every prediction of
/// the maximally entangled two-qubit state.
inline constexpr double kLocalModelEfficiency = 0.75;

/// CHSH values at or below 2 + this are treated as non-violating.
inline constexpr double kNoViolationTolerance = 1e-9;

/// The six probabilities entering the Clauser-Horne expression.
struct DetectionProbabilities {
  double a1b1_pp = 0.0;
  double a1b2_pp = 0.0;
  double a2b1_pp = 0.0;
  double a2b2_pp = 0.0;
  double a1_p = 0.0;
  double b1_p = 0.0;
};

/// theta-state measured with detectors that fire with probability eta.
struct DetectionModel {
  double eta = 1.0;
  double theta = 0.0;
  ChshSettings settings;
};

/// P(A1B1 ++) + P(A1B2 ++) + P(A2B1 ++) - P(A2B2 ++) - P(A1 +) - P(B1 +).
/// Local models give at most 0. Throws std::invalid_argument for entries
/// outside [0, 1].
double ch_value(const DetectionProbabilities& p);

/// Singles scale with eta, coincidences with eta^2.
DetectionProbabilities detection_probabilities(const DetectionModel& model);

/// [4 + 2 cos(2t)(a1z + b1z)] / [2 + 2 cos(2t)(a1z + b1z) + CHSH]; empty when
/// the settings give no CHSH violation.
std::optional<double> critical_efficiency_at(double theta, const ChshSettings& settings);

struct EfficiencyOptions {
  std::uint64_t seed = 2007;
  int starts = 32;
  NelderMeadOptions nelder_mead{0.1, 1e-9, 20000};
};

struct EfficiencyOptimum {
  OptimizationResult result;
  ChshSettings settings;
  /// CHSH value of the minimizing settings.
  double chsh = 0.0;
  /// Critical efficiency of the CHSH-maximizing settings, for comparison.
  double chsh_optimal_efficiency = 1.0;
  /// True when the optimum is at or below kLocalModelEfficiency.
  bool below_local_model_threshold = false;
};

/// Minimizes the critical efficiency over all settings for theta in (0, pi/4].
/// Multi-start Nelder-Mead over 8 angles: the CHSH-optimal settings, starts
/// near the +-z poles, and random directions drawn from `seed`.
EfficiencyOptimum optimize_critical_efficiency(double theta,
                                               const EfficiencyOptions& options = {});

}  // namespace nonlocality
