#pragma once

#include <array>
#include <vector>

#include "nonlocality/behavior.hpp"
#include "nonlocality/optimize.hpp"

namespace nonlocality {

struct CglmpPhases {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  double alpha(int j) const { return j == 0 ? alpha1 : alpha2; }
  double beta(int k) const { return k == 0 ? beta1 : beta2; }
};

/// alpha = (0, pi/3), beta = (-pi/6, pi/6): optimal for the maximally
/// entangled qutrit pair.
CglmpPhases standard_cglmp_phases();

/// Schmidt-diagonal qutrit state sum_n c_n |nn> with real c_n >= 0 and the
/// phase settings of both parties.
struct CglmpScenario {
  CglmpScenario(std::array<double, 3> schmidt, CglmpPhases phases);

  std::array<double, 3> schmidt;
  CglmpPhases phases;
};

/// Pr[a_x = b_y + delta (mod 3)] from a (2,2,3,3) table.
double congruence_probability(const BehaviorTable& table, int x, int y, int delta);

/// Pr[a1=b1] + Pr[a1=b2] + Pr[a2=b1] + Pr[a2=b2+2] - Pr[a1=b1+1] - Pr[a1=b2+2]
///   - Pr[a2=b1+2] - Pr[a2=b2]; local behaviors score at most 2.
double cglmp_value(const BehaviorTable& table);

/// Joint probability of one outcome pair with a_j = b_k + delta:
/// (1/9) sum_{n,m=0..2} c_n c_m cos[(n - m)(alpha_j + beta_k + 2 pi delta / 3)].
/// The three such pairs are equally likely.
double analytic_probability(const CglmpScenario& scenario, int j, int k, int delta);

/// Pr[a_j = b_k + delta] = 3 * analytic_probability.
double analytic_congruence_probability(const CglmpScenario& scenario, int j, int k, int delta);

/// cglmp_value evaluated from the closed-form probabilities.
double analytic_cglmp_value(const CglmpScenario& scenario);

/// Born-rule behavior of the scenario through cglmp_projectors.
BehaviorTable cglmp_behavior(const CglmpScenario& scenario);

/// Largest cglmp_value over the 81 deterministic local strategies.
double cglmp_local_maximum();

struct CglmpOptions {
  int grid_points = 24;
  /// Grid points polished with Nelder-Mead.
  int polish_starts = 8;
  NelderMeadOptions nelder_mead{0.05, 1e-10, 4000};
  double gamma_lo = 0.0;
  double gamma_hi = 1.5;
  int gamma_grid = 16;
  double gamma_tolerance = 1e-7;
};

struct CglmpOptimum {
  OptimizationResult result;
  CglmpPhases phases;
  std::array<double, 3> schmidt{};
  /// NaN when the Schmidt coefficients were fixed by the caller.
  double gamma = 0.0;
  /// Distinct maximizers found, normalized to alpha1 = 0 (only the sums
  /// alpha_j + beta_k matter).
  std::vector<CglmpPhases> distinct_optima;
};

/// Maximizes over the four phases for fixed Schmidt coefficients: a
/// grid_points^4 scan followed by Nelder-Mead polish of the best grid cells.
CglmpOptimum optimize_cglmp(const std::array<double, 3>& schmidt,
                            const CglmpOptions& options = {});

/// Maximizes over gamma-states and phases: phase optimization on a coarse
/// gamma grid, then golden-section search on gamma around the best grid point.
CglmpOptimum optimize_cglmp_state_and_settings(const CglmpOptions& options = {});

}  // namespace nonlocality
