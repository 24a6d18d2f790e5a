#pragma once

#include <array>
#include <cstdint>

#include "nonlocality/behavior.hpp"
#include "nonlocality/measurement.hpp"
#include "nonlocality/optimize.hpp"
#include "nonlocality/state.hpp"

namespace nonlocality {

/// The setting quadruple {a1, a2, b1, b2}.
struct ChshSettings {
  BlochMeasurement a1 = BlochMeasurement::z();
  BlochMeasurement a2 = BlochMeasurement::x();
  BlochMeasurement b1 = BlochMeasurement::z();
  BlochMeasurement b2 = BlochMeasurement::z();

  /// (polar, azimuth) for a1, a2, b1, b2.
  static ChshSettings from_angles(std::span<const double> angles);
  std::array<GeneralMeasurement, 2> measurements_a() const;
  std::array<GeneralMeasurement, 2> measurements_b() const;
};

/// E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2).
double chsh_value(const BipartitePureState& state, const ChshSettings& settings);

/// a1 = z, a2 = x, b1,2 = cos(mu) z +- sin(mu) x with tan(mu) = sin(2 theta).
/// At theta = pi/4 this is b1,2 = (z +- x)/sqrt(2).
ChshSettings chsh_optimal_settings(double theta);

/// 2 sqrt(1 + sin^2(2 theta)).
double chsh_analytic_maximum(double theta);

/// a1 b1 + a1 b2 + a2 b1 - a2 b2 for outcomes in {-1, +1}.
int chsh_deterministic(int a1, int a2, int b1, int b2);

struct LocalExtremes {
  int maximum = 0;
  int minimum = 0;
  int assignments = 0;
};

/// Exhaustive sweep of all 16 deterministic assignments.
LocalExtremes chsh_local_extremes();

/// The local bound, certified by chsh_local_extremes().
double chsh_local_bound();

/// CHSH combination of the four correlators of a (2,2,2,2) table.
double chsh_of_behavior(const BehaviorTable& table);

struct ChshOptions {
  NelderMeadOptions nelder_mead{0.2, 1e-9, 2000};
  bool include_analytic_start = true;
};

struct ChshOptimum {
  OptimizationResult result;
  ChshSettings settings;
};

/// Maximizes chsh_value over all four Bloch directions (8 angles) with
/// Nelder-Mead from 16 corner starts plus the analytic optimum. Starts are
/// independent; the merge keeps the first maximal start.
ChshOptimum optimize_chsh(double theta, const ChshOptions& options = {});

}  // namespace nonlocality
