#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nonlocality/state.hpp"

namespace nonlocality {

/// Qubit measurement of n . sigma. Outcome +1 is index 0, outcome -1 is index 1.
class BlochMeasurement {
 public:
  /// Throws std::invalid_argument unless |n| = 1 within 1e-12.
  BlochMeasurement(double nx, double ny, double nz);

  /// n = (sin t cos p, sin t sin p, cos t).
  static BlochMeasurement from_angles(double polar, double azimuth);
  static BlochMeasurement x() { return {1.0, 0.0, 0.0}; }
  static BlochMeasurement y() { return {0.0, 1.0, 0.0}; }
  static BlochMeasurement z() { return {0.0, 0.0, 1.0}; }

  double nx() const { return n_[0]; }
  double ny() const { return n_[1]; }
  double nz() const { return n_[2]; }
  const std::array<double, 3>& direction() const { return n_; }

  /// The 2x2 observable n . sigma.
  Eigen::Matrix2cd observable() const;

 private:
  std::array<double, 3> n_;
};

/// A complete projective measurement: one unit vector per outcome label.
class GeneralMeasurement {
 public:
  /// Throws std::invalid_argument unless the vectors are d orthonormal
  /// d-dimensional vectors (pairwise overlaps below 1e-12, completeness
  /// within 1e-10).
  explicit GeneralMeasurement(std::vector<Eigen::VectorXcd> vectors);

  int dim() const { return static_cast<int>(vectors_.front().size()); }
  int outcomes() const { return static_cast<int>(vectors_.size()); }
  const Eigen::VectorXcd& vector(int outcome) const { return vectors_[outcome]; }
  const std::vector<Eigen::VectorXcd>& vectors() const { return vectors_; }

 private:
  std::vector<Eigen::VectorXcd> vectors_;
};

/// Eigenvectors of n . sigma, +1 first.
GeneralMeasurement to_measurement(const BlochMeasurement& bloch);

enum class Party { A, B };

/// Phase alpha_j (party A) or beta_k (party B) of the qutrit projector family.
struct PhaseSetting {
  Party party = Party::A;
  double phase = 0.0;
};

/// Qutrit projectors |r> = sum_n w^(+-rn) e^(i n phase) |n> / sqrt(3) with
/// w = e^(2 pi i / 3); party A uses w^(+rn), party B w^(-rn).
GeneralMeasurement cglmp_projectors(const PhaseSetting& setting);

/// E(a, b) = a_z b_z + sin(2 theta)(a_x b_x - a_y b_y) for a real
/// Schmidt-diagonal two-qubit state. Throws std::invalid_argument for any
/// other shape.
double correlator(const BipartitePureState& state, const BlochMeasurement& a,
                  const BlochMeasurement& b);

}  // namespace nonlocality
