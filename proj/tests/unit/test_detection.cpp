#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nonlocality/chsh.hpp"
#include "nonlocality/detection.hpp"

namespace nl = nonlocality;

namespace {

constexpr double kPi = std::numbers::pi;

nl::ChshSettings random_settings(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  auto dir = [&] { return nl::BlochMeasurement::from_angles(std::acos(1 - 2 * u(rng)), 2 * kPi * u(rng)); };
  return {dir(), dir(), dir(), dir()};
}

double ch_at(double eta, double theta, const nl::ChshSettings& s) {
  return nl::ch_value(nl::detection_probabilities({eta, theta, s}));
}

}  // namespace

TEST_CASE("ch value") {
  CHECK(nl::ch_value({}) == 0.0);
  CHECK(nl::ch_value({1, 1, 1, 1, 1, 1}) == 0.0);
  CHECK_THROWS_AS(nl::ch_value({1.5, 0, 0, 0, 0, 0}), std::invalid_argument);

  // Deterministic local strategies with +1 coded as "fires +": the maximum is 0.
  double best = -10;
  for (int bits = 0; bits < 16; ++bits) {
    const double a1 = bits & 1, a2 = (bits >> 1) & 1, b1 = (bits >> 2) & 1, b2 = (bits >> 3) & 1;
    best = std::max(best, nl::ch_value({a1 * b1, a1 * b2, a2 * b1, a2 * b2, a1, b1}));
  }
  CHECK(best == 0.0);

  const double theta = kPi / 4;
  const auto s = nl::chsh_optimal_settings(theta);
  const double chsh = nl::chsh_value(nl::make_theta_state(theta), s);
  CHECK(ch_at(1, theta, s) == doctest::Approx((2 * std::sqrt(2.0) - 2) / 4));
  CHECK(ch_at(1, theta, s) == doctest::Approx((chsh - 2) / 4));
}

TEST_CASE("detection probabilities") {
  const auto z = nl::BlochMeasurement::z();
  const nl::ChshSettings zz{z, z, z, z};
  const auto ideal = nl::detection_probabilities({1, kPi / 4, zz});
  CHECK(ideal.a1_p == doctest::Approx(0.5));
  const auto none = nl::detection_probabilities({0, kPi / 4, zz});
  CHECK(none.a1b1_pp == 0.0);
  CHECK(none.a1_p == 0.0);
  const auto lossy = nl::detection_probabilities({0.8, kPi / 4, zz});
  CHECK(lossy.a1b1_pp == doctest::Approx(0.32));
}

TEST_CASE("critical efficiency closed form") {
  const double theta = kPi / 4;
  CHECK(*nl::critical_efficiency_at(theta, nl::chsh_optimal_settings(theta)) ==
        doctest::Approx(2 / (1 + std::sqrt(2.0))).epsilon(1e-12));
  const auto z = nl::BlochMeasurement::z();
  CHECK_FALSE(nl::critical_efficiency_at(theta, {z, z, z, z}).has_value());

  // With CHSH-optimal settings held fixed the minimum sits at pi/4.
  double best = 2;
  double best_theta = 0;
  for (int i = 1; i <= 100; ++i) {
    const double t = kPi / 4 * i / 100;
    const double eta = *nl::critical_efficiency_at(t, nl::chsh_optimal_settings(t));
    if (eta < best) {
      best = eta;
      best_theta = t;
    }
  }
  CHECK(best_theta == doctest::Approx(kPi / 4));
}

TEST_CASE("property: ch changes sign at the critical efficiency") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, kPi / 4);
  int checked = 0;
  while (checked < 20) {
    const double theta = u(rng);
    const auto s = random_settings(rng);
    const auto eta = nl::critical_efficiency_at(theta, s);
    if (!eta || *eta > 1 - 1e-6) continue;
    ++checked;
    CHECK(ch_at(*eta + 1e-6, theta, s) > 0);
    CHECK(ch_at(*eta - 1e-6, theta, s) <= 0);
  }
}

TEST_CASE("optimized critical efficiency") {
  const auto small = nl::optimize_critical_efficiency(0.02);
  CHECK(std::abs(small.result.value - 2.0 / 3) < 0.01);
  CHECK(small.below_local_model_threshold);
  CHECK(small.chsh > 2);

  const auto maximal = nl::optimize_critical_efficiency(kPi / 4);
  CHECK(maximal.result.value == doctest::Approx(2 / (1 + std::sqrt(2.0))).epsilon(1e-6));

  // Anomaly witness at theta = 0.1.
  const auto low = nl::optimize_critical_efficiency(0.1);
  CHECK(low.result.value < maximal.result.value - 0.05);
  CHECK(low.result.value <= low.chsh_optimal_efficiency);
  CHECK(low.chsh > 2);
  const auto chsh_best = nl::chsh_optimal_settings(0.1);
  const nl::BlochMeasurement* found[] = {&low.settings.a1, &low.settings.a2, &low.settings.b1, &low.settings.b2};
  const nl::BlochMeasurement* ref[] = {&chsh_best.a1, &chsh_best.a2, &chsh_best.b1, &chsh_best.b2};
  double difference = 0;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) {
      difference = std::max(difference, std::abs(found[i]->direction()[k] - ref[i]->direction()[k]));
    }
  }
  CHECK(difference > 1e-3);
}

TEST_CASE("property: optimized efficiency decreases with theta") {
  double previous = 0;
  for (int i = 1; i <= 20; ++i) {
    const auto opt = nl::optimize_critical_efficiency(kPi / 4 * i / 20);
    const double eta = opt.result.value;
    CHECK(eta > previous);
    CHECK(opt.below_local_model_threshold == (eta <= nl::kLocalModelEfficiency));
    previous = eta;
  }
}
