#include "nonlocality/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace nonlocality {

namespace {

using Qubit = Eigen::Vector2cd;

void check_two_qubits(const BipartitePureState& state) {
  if (state.dim_a() != 2 || state.dim_b() != 2) {
    throw std::invalid_argument("hardy: two-qubit state required");
  }
}

// Unit vector w with <w|v> = 0; |0> when v vanishes.
Qubit orthogonal(const Qubit& v) {
  Qubit w(-std::conj(v(1)), std::conj(v(0)));
  const double norm = w.norm();
  if (norm < 1e-300) return Qubit(1.0, 0.0);
  return w / norm;
}

BlochMeasurement bloch_of(const Qubit& plus) {
  const Qubit u = plus.normalized();
  const Complex off = std::conj(u(0)) * u(1);
  const double nx = 2.0 * off.real();
  const double ny = 2.0 * off.imag();
  const double nz = std::norm(u(0)) - std::norm(u(1));
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  return {nx / norm, ny / norm, nz / norm};
}

struct HardyBases {
  Qubit a_x_minus, a_z_plus, b_x_minus, b_z_plus;
};

// Fills the remaining basis vectors from A's z "+1" vector so that the three
// zero events have vanishing amplitude.
HardyBases solve_bases(const Eigen::Matrix2cd& c, const Qubit& a_z_plus) {
  HardyBases out;
  out.a_z_plus = a_z_plus;
  const Qubit a_z_minus = orthogonal(a_z_plus);
  // beta(u)_k = sum_j conj(u_j) c_jk is B's conditional vector given A's outcome u.
  auto conditional_b = [&](const Qubit& u) -> Qubit { return c.transpose() * u.conjugate(); };
  out.b_z_plus = orthogonal(conditional_b(a_z_plus));
  const Qubit b_z_minus = orthogonal(out.b_z_plus);
  out.b_x_minus = orthogonal(conditional_b(a_z_minus));
  const Qubit conditional_a = c * b_z_minus.conjugate();
  out.a_x_minus = orthogonal(conditional_a);
  return out;
}

double joint_probability(const Eigen::Matrix2cd& c, const Qubit& a, const Qubit& b) {
  const Complex amplitude = (a.adjoint() * c * b.conjugate()).value();
  return std::norm(amplitude);
}

Qubit from_angles(double polar, double azimuth) {
  return {std::cos(polar / 2.0), std::polar(std::sin(polar / 2.0), azimuth)};
}

}  // namespace

HardyCertificate hardy_certificate(const BipartitePureState& state) {
  return hardy_certificate(state, HardyMeasurements{});
}

HardyCertificate hardy_certificate(const BipartitePureState& state,
                                   const HardyMeasurements& m) {
  const auto table = hardy_behavior(state, m);
  HardyCertificate out;
  out.p_xx_mm = table(1, 1, 0, 0);
  out.p_xz_mm = table(1, 1, 0, 1);
  out.p_zx_mm = table(1, 1, 1, 0);
  out.p_zz_pp = table(0, 0, 1, 1);
  out.holds = out.p_xx_mm > kHardyZeroThreshold &&
              std::max({out.p_xz_mm, out.p_zx_mm, out.p_zz_pp}) < kHardyZeroThreshold;
  return out;
}

BehaviorTable hardy_behavior(const BipartitePureState& state, const HardyMeasurements& m) {
  check_two_qubits(state);
  const std::array<GeneralMeasurement, 2> a{to_measurement(m.a_x), to_measurement(m.a_z)};
  const std::array<GeneralMeasurement, 2> b{to_measurement(m.b_x), to_measurement(m.b_z)};
  return behavior(state, a, b);
}

LhvProof lhv_contradiction(const HardyZeros& zeros) {
  LhvProof out;
  for (int bits = 0; bits < 16; ++bits) {
    auto sign = [bits](int k) { return (bits >> (3 - k)) & 1 ? -1 : 1; };
    const HardyAssignment s{sign(0), sign(1), sign(2), sign(3)};
    ++out.examined;
    if (zeros.xz && s.a_x == -1 && s.b_z == -1) continue;
    if (zeros.zx && s.a_z == -1 && s.b_x == -1) continue;
    if (zeros.zz && s.a_z == 1 && s.b_z == 1) continue;
    out.compatible.push_back(s);
    if (s.a_x == -1 && s.b_x == -1) ++out.with_xx_mm;
  }
  out.contradiction = out.with_xx_mm == 0;
  return out;
}

HardyOptimum max_hardy_probability(const BipartitePureState& state, const HardyOptions& options) {
  check_two_qubits(state);
  const Eigen::Matrix2cd c = state.amplitudes();
  auto probability = [&](std::span<const double> p) {
    const auto bases = solve_bases(c, from_angles(p[0], p[1]));
    return joint_probability(c, bases.a_x_minus, bases.b_x_minus);
  };

  const int n = std::max(2, options.grid_points);
  std::vector<std::vector<double>> grid;
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<double> p{std::numbers::pi * (i + 0.5) / n,
                            -std::numbers::pi + 2.0 * std::numbers::pi * j / n};
      values.push_back(probability(p));
      grid.push_back(std::move(p));
    }
  }
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  const auto keep = std::min<std::size_t>(std::max(1, options.polish_starts), grid.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] > values[b] || (values[a] == values[b] && a < b);
                    });

  const Objective negative = [&](std::span<const double> p) { return -probability(p); };
  std::vector<NelderMeadResult> runs(keep);
  parallel_for(keep, [&](std::size_t i) {
    runs[i] = nelder_mead(negative, grid[order[i]], options.nelder_mead);
  });
  std::size_t best = 0;
  long evaluations = static_cast<long>(grid.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    evaluations += runs[i].evaluations;
    if (runs[i].value < runs[best].value) best = i;
  }

  const auto bases = solve_bases(c, from_angles(runs[best].point[0], runs[best].point[1]));
  HardyOptimum out;
  out.measurements = {bloch_of(orthogonal(bases.a_x_minus)), bloch_of(bases.a_z_plus),
                      bloch_of(orthogonal(bases.b_x_minus)), bloch_of(bases.b_z_plus)};
  out.certificate = hardy_certificate(state, out.measurements);
  out.result.value = out.certificate.p_xx_mm;
  out.result.parameters = runs[best].point;
  out.result.parameter_names = {"a_z_polar", "a_z_azimuth"};
  out.result.iterations = runs[best].iterations;
  out.result.evaluations = evaluations;
  out.result.gap = runs[best].diameter;
  out.result.best_start = static_cast<int>(best);
  out.result.starts = static_cast<int>(keep);
  return out;
}

std::vector<HardyScanRow> hardy_scan(const std::vector<double>& theta_grid,
                                     const HardyOptions& options) {
  std::vector<HardyScanRow> rows(theta_grid.size());
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const auto state = make_theta_state(theta_grid[i]);
    rows[i].theta = theta_grid[i];
    rows[i].fixed = hardy_certificate(state);
    rows[i].optimized = max_hardy_probability(state, options).certificate;
  }
  return rows;
}

ChRelabeling max_ch_violation(const BehaviorTable& table) {
  if (table.shape() != kChshShape) {
    throw std::invalid_argument("max_ch_violation: requires a (2,2,2,2) behavior");
  }
  ChRelabeling best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int code = 0; code < 64; ++code) {
    ChRelabeling r;
    r.swap_a_settings = code & 1;
    r.swap_b_settings = code & 2;
    r.flip_a = {bool(code & 4), bool(code & 8)};
    r.flip_b = {bool(code & 16), bool(code & 32)};
    // "+" event of relabeled setting i on each side.
    auto joint = [&](int i, int j) {
      const int x = r.swap_a_settings ? 1 - i : i;
      const int y = r.swap_b_settings ? 1 - j : j;
      return table(r.flip_a[x] ? 1 : 0, r.flip_b[y] ? 1 : 0, x, y);
    };
    auto single_a = [&](int i) {
      const int x = r.swap_a_settings ? 1 - i : i;
      return table.marginal_a(r.flip_a[x] ? 1 : 0, x, 0);
    };
    auto single_b = [&](int j) {
      const int y = r.swap_b_settings ? 1 - j : j;
      return table.marginal_b(r.flip_b[y] ? 1 : 0, 0, y);
    };
    r.value = joint(0, 0) + joint(0, 1) + joint(1, 0) - joint(1, 1) - single_a(0) - single_b(0);
    if (r.value > best.value) best = r;
  }
  return best;
}

}  // namespace nonlocality
