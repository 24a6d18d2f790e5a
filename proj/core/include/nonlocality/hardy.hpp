#pragma once

#include <array>
#include <vector>

#include "nonlocality/behavior.hpp"
#include "nonlocality/measurement.hpp"
#include "nonlocality/optimize.hpp"
#include "nonlocality/state.hpp"

namespace nonlocality {

/// Threshold below which a Hardy probability counts as zero.
inline constexpr double kHardyZeroThreshold = 1e-9;

/// The four events of Hardy's argument. "x" and "z" name each party's two
/// measurements; outcome +1 is index 0.
struct HardyCertificate {
  double p_xx_mm = 0.0;  ///< P(-1, -1 | x, x), must be positive
  double p_xz_mm = 0.0;  ///< P(-1, -1 | x, z), must vanish
  double p_zx_mm = 0.0;  ///< P(-1, -1 | z, x), must vanish
  double p_zz_pp = 0.0;  ///< P(+1, +1 | z, z), must vanish
  bool holds = false;
};

struct HardyMeasurements {
  BlochMeasurement a_x = BlochMeasurement::x();
  BlochMeasurement a_z = BlochMeasurement::z();
  BlochMeasurement b_x = BlochMeasurement::x();
  BlochMeasurement b_z = BlochMeasurement::z();
};

/// Certificate for sigma_x / sigma_z on both sides. Throws
/// std::invalid_argument unless the state is a two-qubit state.
HardyCertificate hardy_certificate(const BipartitePureState& state);
HardyCertificate hardy_certificate(const BipartitePureState& state,
                                   const HardyMeasurements& measurements);

/// (2,2,2,2) behavior with setting 0 = x and setting 1 = z on each side.
BehaviorTable hardy_behavior(const BipartitePureState& state,
                             const HardyMeasurements& measurements = {});

/// Which zero constraints an LHV model must respect.
struct HardyZeros {
  bool xz = true;
  bool zx = true;
  bool zz = true;
};

/// Deterministic assignment, each entry +1 or -1.
struct HardyAssignment {
  int a_x = 1;
  int a_z = 1;
  int b_x = 1;
  int b_z = 1;
};

struct LhvProof {
  /// Assignments out of all 16 that respect the requested zeros.
  std::vector<HardyAssignment> compatible;
  /// How many of those output (-1, -1) for (x, x).
  int with_xx_mm = 0;
  int examined = 0;
  /// True when no compatible assignment reaches the (x, x) event.
  bool contradiction = false;
};

LhvProof lhv_contradiction(const HardyZeros& zeros = {});

struct HardyOptimum {
  OptimizationResult result;
  HardyMeasurements measurements;
  HardyCertificate certificate;
};

struct HardyOptions {
  /// Grid points per angle for the starting scan.
  int grid_points = 12;
  int polish_starts = 4;
  NelderMeadOptions nelder_mead{0.1, 1e-10, 2000};
};

/// Largest P(-1, -1 | x, x) over local measurement bases for which the three
/// other events vanish. Each zero is imposed exactly by solving for one
/// basis vector: A's z basis is free (two angles), then B's z basis, B's x
/// basis and A's x basis follow from the three constraints in turn.
HardyOptimum max_hardy_probability(const BipartitePureState& state,
                                   const HardyOptions& options = {});

struct HardyScanRow {
  double theta = 0.0;
  /// Certificate with sigma_x / sigma_z fixed.
  HardyCertificate fixed;
  /// Certificate of the optimized bases.
  HardyCertificate optimized;
};

/// max_hardy_probability on theta-states, one row per grid point.
std::vector<HardyScanRow> hardy_scan(const std::vector<double>& theta_grid,
                                     const HardyOptions& options = {});

/// Clauser-Horne value of a (2,2,2,2) behavior after relabeling settings
/// and outcomes.
struct ChRelabeling {
  double value = 0.0;
  bool swap_a_settings = false;
  bool swap_b_settings = false;
  /// Outcome flips per setting, indexed by the original setting.
  std::array<bool, 2> flip_a{};
  std::array<bool, 2> flip_b{};
};

/// Largest CH value over all 64 relabelings. Positive values certify
/// nonlocality.
ChRelabeling max_ch_violation(const BehaviorTable& table);

}  // namespace nonlocality
