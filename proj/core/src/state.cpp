#include "nonlocality/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nonlocality {

BipartitePureState::BipartitePureState(Eigen::MatrixXcd amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() < 2 || amplitudes_.cols() < 2) {
    throw std::invalid_argument("BipartitePureState: local dimensions must be at least 2");
  }
  const double norm = amplitudes_.squaredNorm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("BipartitePureState: squared norm is " + std::to_string(norm) +
                                ", expected 1");
  }
}

BipartitePureState BipartitePureState::normalized(Eigen::MatrixXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("BipartitePureState: cannot normalize a zero or non-finite table");
  }
  amplitudes /= norm;
  return BipartitePureState(std::move(amplitudes));
}

Eigen::MatrixXcd BipartitePureState::reduced_a() const {
  return amplitudes_ * amplitudes_.adjoint();
}

Eigen::MatrixXcd BipartitePureState::reduced_b() const {
  return (amplitudes_.adjoint() * amplitudes_).transpose();
}

BipartitePureState make_theta_state(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 4.0)) {
    throw std::invalid_argument("make_theta_state: theta must lie in [0, pi/4]");
  }
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(2, 2);
  c(0, 0) = std::cos(theta);
  c(1, 1) = std::sin(theta);
  return BipartitePureState(std::move(c));
}

std::array<double, 3> gamma_schmidt(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma_schmidt: gamma must be a finite nonnegative number");
  }
  const double scale = 1.0 / std::sqrt(2.0 + gamma * gamma);
  return {scale, gamma * scale, scale};
}

BipartitePureState make_gamma_state(double gamma) {
  const auto c = gamma_schmidt(gamma);
  return make_schmidt_state(c);
}

BipartitePureState make_schmidt_state(std::span<const double> coefficients) {
  const auto d = static_cast<Eigen::Index>(coefficients.size());
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    if (coefficients[n] < 0.0) {
      throw std::invalid_argument("make_schmidt_state: coefficients must be nonnegative");
    }
    c(n, n) = coefficients[n];
  }
  return BipartitePureState(std::move(c));
}

BipartitePureState make_hardy_state() {
  const double s = 1.0 / std::sqrt(3.0);
  Eigen::MatrixXcd c(2, 2);
  c << 0.0, s, s, s;
  return BipartitePureState(std::move(c));
}

double shannon_entropy(std::span<const double> distribution) {
  double h = 0.0;
  for (double p : distribution) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double von_neumann_entropy(const Eigen::MatrixXcd& density) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(density, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("von_neumann_entropy: eigen decomposition failed");
  }
  std::vector<double> eigenvalues;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < 0.0) {
      if (lambda < -1e-12) {
        throw std::domain_error("von_neumann_entropy: matrix is not positive semidefinite");
      }
      lambda = 0.0;
    }
    eigenvalues.push_back(lambda);
  }
  return shannon_entropy(eigenvalues);
}

double entanglement_entropy(const BipartitePureState& state) {
  return von_neumann_entropy(state.reduced_a());
}

}  // namespace nonlocality
