#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "nonlocality/cglmp.hpp"
#include "nonlocality/polytope.hpp"
#include "nonlocality/state.hpp"

namespace nl = nonlocality;

namespace {

constexpr double kPi = std::numbers::pi;
const double kMaximal = 4 * (2 * std::sqrt(3.0) + 3) / 9;
const double kGlobal = 1 + std::sqrt(11.0 / 3);
const double kGammaStar = (std::sqrt(11.0) - std::sqrt(3.0)) / 2;

// Born rule written out directly: amplitude sum_n c_n conj(a_n) conj(b_n).
double born(const std::array<double, 3>& c, double alpha, double beta, int a, int b) {
  const std::complex<double> i(0, 1);
  std::complex<double> amp = 0;
  for (int n = 0; n < 3; ++n) {
    const auto va = std::exp(i * (2 * kPi * a * n / 3 + n * alpha)) / std::sqrt(3.0);
    const auto vb = std::exp(i * (-2 * kPi * b * n / 3 + n * beta)) / std::sqrt(3.0);
    amp += c[n] * std::conj(va) * std::conj(vb);
  }
  return std::norm(amp);
}

std::array<double, 3> random_schmidt(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::array<double, 3> c{u(rng), u(rng), u(rng)};
  const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
  for (double& x : c) x /= n;
  return c;
}

nl::CglmpPhases random_phases(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("cglmp value of simple tables") {
  CHECK(nl::cglmp_value(nl::BehaviorTable::uniform(nl::kCglmpShape)) == doctest::Approx(0.0));
  const auto polytope = nl::LocalPolytope::enumerate(nl::kCglmpShape);
  CHECK(nl::cglmp_value(polytope.vertices().front()) == 2.0);
  double best = -10;
  for (const auto& v : polytope.vertices()) best = std::max(best, nl::cglmp_value(v));
  CHECK(best == 2.0);
  CHECK(nl::cglmp_local_maximum() == 2.0);
  CHECK_THROWS_AS(nl::cglmp_value(nl::BehaviorTable::uniform(nl::kChshShape)), std::invalid_argument);
}

TEST_CASE("maximally entangled qutrits at the standard phases") {
  const nl::CglmpScenario s(nl::gamma_schmidt(1), nl::standard_cglmp_phases());
  CHECK(nl::cglmp_value(nl::cglmp_behavior(s)) == doctest::Approx(kMaximal).epsilon(1e-12));
  CHECK(nl::analytic_cglmp_value(s) == doctest::Approx(kMaximal).epsilon(1e-12));
  CHECK(kMaximal == doctest::Approx(2.8729).epsilon(1e-4));
}

TEST_CASE("gamma star at the standard phases") {
  const nl::CglmpScenario s(nl::gamma_schmidt(kGammaStar), nl::standard_cglmp_phases());
  CHECK(nl::analytic_cglmp_value(s) == doctest::Approx(kGlobal).epsilon(1e-12));
}

TEST_CASE("analytic probability examples") {
  const nl::CglmpScenario product({1, 0, 0}, {0.3, -1.2, 0.5, 2.0});
  CHECK(nl::analytic_probability(product, 0, 1, 0) == doctest::Approx(1.0 / 9));
  CHECK(born({1, 0, 0}, 0.3, 0.5, 0, 0) == doctest::Approx(1.0 / 9));

  const double r = 1 / std::sqrt(3.0);
  const nl::CglmpScenario flat({r, r, r}, {0.4, 0, -0.4, 0});
  CHECK(nl::analytic_probability(flat, 0, 0, 0) == doctest::Approx(1.0 / 3));
  CHECK(born({r, r, r}, 0.4, -0.4, 0, 0) == doctest::Approx(1.0 / 3));
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(nl::CglmpScenario({1, 1, 1}, {}), std::invalid_argument);
  CHECK_THROWS_AS(nl::CglmpScenario({-0.6, 0.8, 0}, {}), std::invalid_argument);
}

TEST_CASE("property: analytic formula, projectors and direct Born rule agree") {
  std::mt19937_64 rng(41);
  double worst = 0;
  double completeness = 0;
  for (int sample = 0; sample < 500; ++sample) {
    const auto c = random_schmidt(rng);
    const nl::CglmpScenario s(c, random_phases(rng));
    const auto table = nl::cglmp_behavior(s);
    CHECK(table.is_nonsignaling(1e-10));
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        double total = 0;
        for (int delta = 0; delta < 3; ++delta) {
          const double p = nl::analytic_probability(s, j, k, delta);
          total += nl::analytic_congruence_probability(s, j, k, delta);
          for (int b = 0; b < 3; ++b) {
            const int a = (b + delta) % 3;
            worst = std::max(worst, std::abs(table(a, b, j, k) - p));
            worst = std::max(worst, std::abs(born(c, s.phases.alpha(j), s.phases.beta(k), a, b) - p));
          }
        }
        completeness = std::max(completeness, std::abs(total - 1));
      }
    }
  }
  CHECK(worst < 1e-10);
  CHECK(completeness < 1e-12);
}

TEST_CASE("phase optimization") {
  const auto maximal = nl::optimize_cglmp(nl::gamma_schmidt(1));
  CHECK(maximal.result.value == doctest::Approx(kMaximal).epsilon(1e-6));
  CHECK_FALSE(maximal.distinct_optima.empty());
  // Only the sums alpha_j + beta_k matter; compare them with the standard phases.
  const auto ref = nl::standard_cglmp_phases();
  bool standard_found = false;
  for (const auto& p : maximal.distinct_optima) {
    bool same = true;
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const double d = nl::wrap_angle(p.alpha(j) + p.beta(k) - ref.alpha(j) - ref.beta(k));
        same = same && std::abs(d) < 1e-4;
      }
    }
    standard_found = standard_found || same;
  }
  CHECK(standard_found);

  CHECK(nl::optimize_cglmp({1, 0, 0}).result.value <= 2 + 1e-9);
}

TEST_CASE("global optimum and anomaly") {
  const auto global = nl::optimize_cglmp_state_and_settings();
  CHECK(global.result.value == doctest::Approx(kGlobal).epsilon(1e-5));
  CHECK(std::abs(global.gamma - kGammaStar) < 1e-3);
  CHECK(global.result.value <= 2.9149 + 1e-4);
  const double maximal = nl::optimize_cglmp(nl::gamma_schmidt(1)).result.value;
  CHECK(global.result.value - maximal == doctest::Approx(0.0419).epsilon(1e-3));
  CHECK(nl::entanglement_entropy(nl::make_gamma_state(global.gamma)) < std::log2(3.0));
}
