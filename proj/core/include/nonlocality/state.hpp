#pragma once

#include <array>
#include <complex>
#include <span>

#include <Eigen/Dense>

namespace nonlocality {

using Complex = std::complex<double>;

/// Tolerance on the squared norm of a pure state.
inline constexpr double kNormTolerance = 1e-12;

/// Pure state of two parties, stored as the amplitude table c(j, k) in the
/// computational product basis |j> (x) |k>.
///
/// Instances are immutable once built; every factory validates the norm.
class BipartitePureState {
 public:
  /// Takes an already normalized amplitude table. Throws std::invalid_argument
  /// when a dimension is below 2 or the norm is off by more than kNormTolerance.
  explicit BipartitePureState(Eigen::MatrixXcd amplitudes);

  /// Rescales an arbitrary nonzero table to unit norm.
  static BipartitePureState normalized(Eigen::MatrixXcd amplitudes);

  int dim_a() const { return static_cast<int>(amplitudes_.rows()); }
  int dim_b() const { return static_cast<int>(amplitudes_.cols()); }
  const Eigen::MatrixXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(int j, int k) const { return amplitudes_(j, k); }

  /// rho_A = C C^dagger and rho_B = (C^dagger C)^T.
  Eigen::MatrixXcd reduced_a() const;
  Eigen::MatrixXcd reduced_b() const;

 private:
  Eigen::MatrixXcd amplitudes_;
};

/// cos(theta)|00> + sin(theta)|11>, theta in [0, pi/4].
BipartitePureState make_theta_state(double theta);

/// (|00> + gamma|11> + |22>) / sqrt(2 + gamma^2), gamma >= 0.
BipartitePureState make_gamma_state(double gamma);

/// sum_n c_n |nn>; coefficients must be real, nonnegative and unit norm.
BipartitePureState make_schmidt_state(std::span<const double> coefficients);

/// (|01> + |10> + |11>) / sqrt(3).
BipartitePureState make_hardy_state();

/// Normalized Schmidt coefficients (1, gamma, 1) / sqrt(2 + gamma^2).
std::array<double, 3> gamma_schmidt(double gamma);

/// Von Neumann entropy of rho_A in bits. Eigenvalues in (-1e-12, 0) are
/// clamped and 0 log 0 = 0.
double entanglement_entropy(const BipartitePureState& state);

/// Entropy in bits of a Hermitian density matrix.
double von_neumann_entropy(const Eigen::MatrixXcd& density);

/// Shannon entropy in bits, 0 log 0 = 0.
double shannon_entropy(std::span<const double> distribution);

}  // namespace nonlocality
