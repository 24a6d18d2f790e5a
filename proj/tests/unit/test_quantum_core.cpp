#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "nonlocality/behavior.hpp"
#include "nonlocality/cglmp.hpp"
#include "nonlocality/chsh.hpp"
#include "nonlocality/measurement.hpp"
#include "nonlocality/state.hpp"

namespace nl = nonlocality;
using C = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const nl::BipartitePureState& s) { return s.amplitudes().squaredNorm(); }

// <psi| (a.sigma) (x) (b.sigma) |psi> on the full 4x4 space.
double kron_expectation(const nl::BipartitePureState& s, const nl::BlochMeasurement& a,
                        const nl::BlochMeasurement& b) {
  auto pauli = [](const nl::BlochMeasurement& m) {
    Eigen::Matrix2cd p;
    p << C(m.nz(), 0), C(m.nx(), -m.ny()), C(m.nx(), m.ny()), C(-m.nz(), 0);
    return p;
  };
  const Eigen::Matrix2cd pa = pauli(a), pb = pauli(b);
  Eigen::Matrix4cd op;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) op.block<2, 2>(2 * i, 2 * j) = pa(i, j) * pb;
  }
  Eigen::Vector4cd psi;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) psi(2 * j + k) = s.amplitude(j, k);
  }
  return (psi.adjoint() * op * psi).value().real();
}

nl::BlochMeasurement random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const double x = n(rng), y = n(rng), z = n(rng);
  const double r = std::sqrt(x * x + y * y + z * z);
  return {x / r, y / r, z / r};
}

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("theta states") {
  const auto singlet = nl::make_theta_state(kPi / 4);
  CHECK(singlet.amplitude(0, 0).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(singlet.amplitude(1, 1).real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(singlet.amplitude(0, 1)) == 0.0);

  const auto product = nl::make_theta_state(0.0);
  CHECK(product.amplitude(0, 0) == C(1, 0));
  CHECK(product.amplitude(1, 1) == C(0, 0));

  const auto mid = nl::make_theta_state(kPi / 8);
  CHECK(std::abs(norm2(mid) - 1.0) < 1e-15);
  CHECK(mid.amplitude(0, 0).real() == std::cos(kPi / 8));

  CHECK_THROWS_AS(nl::make_theta_state(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(nl::make_theta_state(1.0), std::invalid_argument);
}

TEST_CASE("gamma states") {
  const auto psi3 = nl::make_gamma_state(1.0);
  for (int n = 0; n < 3; ++n) CHECK(psi3.amplitude(n, n).real() == doctest::Approx(1 / std::sqrt(3.0)));

  // (1, g, 1) / sqrt(2 + g^2) at g = (sqrt 11 - sqrt 3) / 2 = 0.792287: the
  // norm is sqrt(2.627719) = 1.621024.
  const double g = (std::sqrt(11.0) - std::sqrt(3.0)) / 2;
  const auto star = nl::make_gamma_state(g);
  CHECK(star.amplitude(0, 0).real() == doctest::Approx(0.616894).epsilon(1e-6));
  CHECK(star.amplitude(1, 1).real() == doctest::Approx(0.488757).epsilon(1e-6));
  CHECK(star.amplitude(2, 2).real() == doctest::Approx(0.616894).epsilon(1e-6));
  CHECK(std::abs(norm2(star) - 1.0) < 1e-12);

  const auto two = nl::make_gamma_state(0.0);
  CHECK(two.amplitude(1, 1) == C(0, 0));
  CHECK(two.amplitude(0, 0).real() == doctest::Approx(1 / std::sqrt(2.0)));

  CHECK_THROWS_AS(nl::make_gamma_state(-1.0), std::invalid_argument);
}

TEST_CASE("hardy state") {
  const auto h = nl::make_hardy_state();
  CHECK(std::abs(norm2(h) - 1.0) < 1e-15);
  CHECK(h.amplitude(0, 0) == C(0, 0));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.reduced_a());
  const auto ev = solver.eigenvalues();
  CHECK(ev(0) == doctest::Approx((3 - std::sqrt(5.0)) / 6).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx((3 + std::sqrt(5.0)) / 6).epsilon(1e-12));
}

TEST_CASE("state validation") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(nl::BipartitePureState{bad}, std::invalid_argument);
  CHECK_THROWS_AS(nl::BipartitePureState::normalized(Eigen::MatrixXcd::Zero(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(nl::BipartitePureState{Eigen::MatrixXcd::Ones(1, 1)}, std::invalid_argument);
  const auto ok = nl::BipartitePureState::normalized(bad);
  CHECK(std::abs(norm2(ok) - 1.0) < 1e-12);
}

TEST_CASE("correlator examples") {
  const auto singlet = nl::make_theta_state(kPi / 4);
  const auto x = nl::BlochMeasurement::x(), z = nl::BlochMeasurement::z();
  CHECK(nl::correlator(singlet, z, z) == doctest::Approx(1.0));
  CHECK(nl::correlator(singlet, x, x) == doctest::Approx(1.0));
  CHECK(kron_expectation(singlet, x, x) == doctest::Approx(1.0));
  const auto product = nl::make_theta_state(0.0);
  CHECK(std::abs(nl::correlator(product, x, x)) < 1e-15);
  CHECK(std::abs(kron_expectation(product, x, x)) < 1e-15);
  CHECK_THROWS_AS(nl::correlator(nl::make_gamma_state(1.0), x, x), std::invalid_argument);
}

TEST_CASE("property: correlator agrees with the operator expectation") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto state = nl::make_theta_state(kPi / 4 * i / 49);
    for (int k = 0; k < 20; ++k) {
      const auto a = random_direction(rng), b = random_direction(rng);
      worst = std::max(worst, std::abs(nl::correlator(state, a, b) - kron_expectation(state, a, b)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("born rule behavior") {
  const auto product = nl::make_theta_state(0.0);
  const std::array<nl::GeneralMeasurement, 2> zz{nl::to_measurement(nl::BlochMeasurement::z()),
                                                 nl::to_measurement(nl::BlochMeasurement::z())};
  const auto t = nl::behavior(product, zz, zz);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) CHECK(t(0, 0, x, y) == doctest::Approx(1.0));
  }

  const double theta = kPi / 4;
  const auto settings = nl::chsh_optimal_settings(theta);
  const auto table = nl::behavior(nl::make_theta_state(theta), settings.measurements_a(),
                                  settings.measurements_b());
  CHECK(nl::chsh_of_behavior(table) == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-9));

  const std::array<nl::GeneralMeasurement, 1> xx{nl::to_measurement(nl::BlochMeasurement::x())};
  const auto hardy = nl::behavior(nl::make_hardy_state(), xx, xx);
  CHECK(std::abs(hardy(1, 1, 0, 0) - 1.0 / 12) < 1e-12);

  const std::array<nl::GeneralMeasurement, 1> qutrit{nl::cglmp_projectors({nl::Party::A, 0.0})};
  CHECK_THROWS_AS(nl::behavior(product, qutrit, xx), std::invalid_argument);
}

TEST_CASE("property: table correlators match the closed form") {
  std::mt19937_64 rng(12);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto state = nl::make_theta_state(kPi / 4 * i / 29);
    const nl::ChshSettings s{random_direction(rng), random_direction(rng), random_direction(rng),
                             random_direction(rng)};
    const auto t = nl::behavior(state, s.measurements_a(), s.measurements_b());
    const nl::BlochMeasurement* a[] = {&s.a1, &s.a2};
    const nl::BlochMeasurement* b[] = {&s.b1, &s.b2};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        worst = std::max(worst, std::abs(nl::table_correlator(t, x, y) - nl::correlator(state, *a[x], *b[y])));
      }
    }
    CHECK(t.is_nonsignaling(1e-10));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("entanglement entropy") {
  CHECK(nl::entanglement_entropy(nl::make_theta_state(kPi / 4)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(nl::entanglement_entropy(nl::make_gamma_state(1.0)) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  const double c2 = std::pow(std::cos(kPi / 8), 2);
  CHECK(nl::entanglement_entropy(nl::make_theta_state(kPi / 8)) == doctest::Approx(binary_entropy(c2)));
  CHECK(nl::entanglement_entropy(nl::make_theta_state(kPi / 8)) == doctest::Approx(0.6009).epsilon(1e-4));
  CHECK(nl::entanglement_entropy(nl::make_theta_state(0.0)) == 0.0);
}

TEST_CASE("property: entropy symmetric between parties") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n;
  for (int d : {2, 3}) {
    for (int i = 0; i < 50; ++i) {
      Eigen::MatrixXcd c(d, d);
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) c(j, k) = C(n(rng), n(rng));
      }
      const auto s = nl::BipartitePureState::normalized(c);
      CHECK(std::abs(norm2(s) - 1.0) < 1e-12);
      const double sa = nl::von_neumann_entropy(s.reduced_a());
      const double sb = nl::von_neumann_entropy(s.reduced_b());
      CHECK(std::abs(sa - sb) < 1e-10);
    }
  }
}

TEST_CASE("property: entropy increases with theta") {
  double previous = -1.0;
  for (int i = 1; i < 50; ++i) {
    const double e = nl::entanglement_entropy(nl::make_theta_state(kPi / 4 * i / 50));
    CHECK(e > previous);
    previous = e;
  }
}

TEST_CASE("bloch measurements") {
  CHECK_THROWS_AS(nl::BlochMeasurement(1.0, 1.0, 0.0), std::invalid_argument);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 20; ++i) {
    const auto m = nl::to_measurement(random_direction(rng));
    CHECK(std::abs(m.vector(0).dot(m.vector(1))) < 1e-12);
    CHECK(std::abs(m.vector(0).norm() - 1.0) < 1e-12);
  }
  // Outcome +1 first: |0> for z, |+> for x.
  CHECK(std::abs(nl::to_measurement(nl::BlochMeasurement::z()).vector(0)(0)) == doctest::Approx(1.0));
  const auto plus = nl::to_measurement(nl::BlochMeasurement::x()).vector(0);
  CHECK(std::abs(plus(0) - plus(1)) < 1e-12);
}

TEST_CASE("cglmp projectors") {
  const auto m = nl::cglmp_projectors({nl::Party::A, 0.0});
  for (int n = 0; n < 3; ++n) CHECK(std::abs(m.vector(0)(n) - C(1 / std::sqrt(3.0), 0)) < 1e-15);

  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  for (auto party : {nl::Party::A, nl::Party::B}) {
    for (int i = 0; i < 10; ++i) {
      const auto p = nl::cglmp_projectors({party, phase(rng)});
      Eigen::Matrix3cd v;
      for (int r = 0; r < 3; ++r) v.col(r) = p.vector(r);
      CHECK((v.adjoint() * v - Eigen::Matrix3cd::Identity()).norm() < 1e-12);
    }
  }
}

TEST_CASE("general measurement validation") {
  std::vector<Eigen::VectorXcd> skew{Eigen::Vector2cd(1, 0), Eigen::Vector2cd(1, 1) / std::sqrt(2.0)};
  CHECK_THROWS_AS(nl::GeneralMeasurement{skew}, std::invalid_argument);
}
