#include "nonlocality/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nonlocality {

BlochMeasurement::BlochMeasurement(double nx, double ny, double nz) : n_{nx, ny, nz} {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw std::invalid_argument("BlochMeasurement: direction must be a unit vector");
  }
}

BlochMeasurement BlochMeasurement::from_angles(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

Eigen::Matrix2cd BlochMeasurement::observable() const {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  m << n_[2], n_[0] - i * n_[1], n_[0] + i * n_[1], -n_[2];
  return m;
}

GeneralMeasurement::GeneralMeasurement(std::vector<Eigen::VectorXcd> vectors)
    : vectors_(std::move(vectors)) {
  if (vectors_.empty()) {
    throw std::invalid_argument("GeneralMeasurement: no projector vectors");
  }
  const auto d = vectors_.front().size();
  if (static_cast<std::size_t>(d) != vectors_.size()) {
    throw std::invalid_argument("GeneralMeasurement: need exactly one vector per dimension");
  }
  Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != d) {
      throw std::invalid_argument("GeneralMeasurement: vectors differ in dimension");
    }
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
      const Complex overlap = vectors_[i].dot(vectors_[j]);
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > 1e-12) {
        throw std::invalid_argument("GeneralMeasurement: vectors are not orthonormal");
      }
    }
    completeness += vectors_[i] * vectors_[i].adjoint();
  }
  if ((completeness - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("GeneralMeasurement: projectors do not resolve the identity");
  }
}

GeneralMeasurement to_measurement(const BlochMeasurement& bloch) {
  // Closed-form eigenvectors of n.sigma: |+> = (cos t/2, e^{ip} sin t/2),
  // |-> = (-e^{-ip} sin t/2, cos t/2).
  const double polar = std::acos(std::clamp(bloch.nz(), -1.0, 1.0));
  const double azimuth = std::atan2(bloch.ny(), bloch.nx());
  const Complex phase = std::polar(1.0, azimuth);
  Eigen::VectorXcd plus(2);
  Eigen::VectorXcd minus(2);
  plus << std::cos(polar / 2.0), phase * std::sin(polar / 2.0);
  minus << -std::conj(phase) * std::sin(polar / 2.0), std::cos(polar / 2.0);
  return GeneralMeasurement({plus, minus});
}

GeneralMeasurement cglmp_projectors(const PhaseSetting& setting) {
  const double sign = setting.party == Party::A ? 1.0 : -1.0;
  const double norm = 1.0 / std::sqrt(3.0);
  std::vector<Eigen::VectorXcd> vectors;
  for (int r = 0; r < 3; ++r) {
    Eigen::VectorXcd v(3);
    for (int n = 0; n < 3; ++n) {
      const double angle = sign * 2.0 * std::numbers::pi * r * n / 3.0 + n * setting.phase;
      v(n) = std::polar(norm, angle);
    }
    vectors.push_back(std::move(v));
  }
  return GeneralMeasurement(std::move(vectors));
}

double correlator(const BipartitePureState& state, const BlochMeasurement& a,
                  const BlochMeasurement& b) {
  if (state.dim_a() != 2 || state.dim_b() != 2) {
    throw std::invalid_argument("correlator: requires a two-qubit state");
  }
  const auto& c = state.amplitudes();
  const bool schmidt_diagonal = std::abs(c(0, 1)) <= 1e-12 && std::abs(c(1, 0)) <= 1e-12 &&
                                std::abs(c(0, 0).imag()) <= 1e-12 &&
                                std::abs(c(1, 1).imag()) <= 1e-12;
  if (!schmidt_diagonal) {
    throw std::invalid_argument("correlator: state must be real and Schmidt-diagonal");
  }
  // sin(2 theta) = 2 cos(theta) sin(theta)
  const double sin2 = 2.0 * c(0, 0).real() * c(1, 1).real();
  return a.nz() * b.nz() + sin2 * (a.nx() * b.nx() - a.ny() * b.ny());
}

}  // namespace nonlocality
