#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nonlocality/chsh.hpp"
#include "nonlocality/polytope.hpp"

namespace nl = nonlocality;

namespace {

constexpr double kPi = std::numbers::pi;

double gisin(double theta) {
  const double s = std::sin(2 * theta);
  return 2 * std::sqrt(1 + s * s);
}

}  // namespace

TEST_CASE("chsh value at the standard settings") {
  const auto z = nl::BlochMeasurement::z(), x = nl::BlochMeasurement::x();
  const double r = 1 / std::sqrt(2.0);
  const nl::ChshSettings s{z, x, {r, 0, r}, {-r, 0, r}};
  CHECK(std::abs(nl::chsh_value(nl::make_theta_state(kPi / 4), s) - 2 * std::sqrt(2.0)) < 1e-12);
  CHECK(nl::chsh_value(nl::make_theta_state(kPi / 8), nl::chsh_optimal_settings(kPi / 8)) ==
        doctest::Approx(2.4495).epsilon(1e-4));
}

TEST_CASE("product state only sees z components") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> angle(0, kPi);
  const auto product = nl::make_theta_state(0);
  for (int i = 0; i < 50; ++i) {
    const double t[4] = {angle(rng), angle(rng), angle(rng), angle(rng)};
    const nl::ChshSettings s{nl::BlochMeasurement::from_angles(t[0], 0.3),
                             nl::BlochMeasurement::from_angles(t[1], 1.1),
                             nl::BlochMeasurement::from_angles(t[2], -0.4),
                             nl::BlochMeasurement::from_angles(t[3], 2.0)};
    const double expected = s.a1.nz() * s.b1.nz() + s.a1.nz() * s.b2.nz() + s.a2.nz() * s.b1.nz() -
                            s.a2.nz() * s.b2.nz();
    const double v = nl::chsh_value(product, s);
    CHECK(v == doctest::Approx(expected));
    CHECK(std::abs(v) <= 2 + 1e-12);
  }
}

TEST_CASE("local bound by enumeration") {
  const auto e = nl::chsh_local_extremes();
  CHECK(e.maximum == 2);
  CHECK(e.minimum == -2);
  CHECK(e.assignments == 16);
  CHECK(nl::chsh_deterministic(1, 1, 1, 1) == 2);
  CHECK(nl::chsh_local_bound() == 2.0);
}

TEST_CASE("optimizer reproduces the analytic curve") {
  CHECK(nl::optimize_chsh(kPi / 4).result.value == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(nl::optimize_chsh(0).result.value == doctest::Approx(2.0).epsilon(1e-9));
  // 2 sqrt(1 + sin^2 0.6) = 2 sqrt(1.318821) = 2.296798
  CHECK(nl::optimize_chsh(0.3).result.value == doctest::Approx(2.296798).epsilon(1e-6));
  CHECK(nl::optimize_chsh(0.3).result.value == doctest::Approx(gisin(0.3)).epsilon(1e-9));
}

TEST_CASE("property: optimizer stays on the curve, below Tsirelson and monotone") {
  double previous = 0;
  for (int i = 0; i < 50; ++i) {
    const double theta = kPi / 4 * i / 49;
    const auto opt = nl::optimize_chsh(theta);
    CHECK(opt.result.value >= gisin(theta) - 1e-6);
    CHECK(opt.result.value <= gisin(theta) + 1e-9);
    CHECK(opt.result.value <= 2 * std::sqrt(2.0) + 1e-9);
    CHECK(nl::chsh_value(nl::make_theta_state(theta), opt.settings) == doctest::Approx(opt.result.value));
    if (i > 0) CHECK(opt.result.value > previous);
    previous = opt.result.value;
  }
}

TEST_CASE("property: local mixtures never exceed 2") {
  const auto polytope = nl::LocalPolytope::enumerate(nl::kChshShape);
  std::mt19937_64 rng(22);
  std::exponential_distribution<double> e;
  for (const auto& v : polytope.vertices()) CHECK(std::abs(nl::chsh_of_behavior(v)) <= 2 + 1e-12);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> w(polytope.size());
    for (double& x : w) x = e(rng);
    double sum = 0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    CHECK(std::abs(nl::chsh_of_behavior(polytope.mixture(w))) <= 2 + 1e-12);
  }
}

TEST_CASE("two-qubit states only") {
  CHECK_THROWS_AS(nl::chsh_value(nl::make_gamma_state(1), nl::ChshSettings{}), std::invalid_argument);
  CHECK_THROWS_AS(nl::optimize_chsh(-0.1), std::invalid_argument);
}
