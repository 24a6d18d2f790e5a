#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nonlocality/chsh.hpp"
#include "nonlocality/nlb.hpp"
#include "nonlocality/polytope.hpp"

namespace nl = nonlocality;

TEST_CASE("pr box table") {
  const auto box = nl::pr_box_behavior();
  CHECK(box(0, 1, 1, 1) == 0.5);
  CHECK(box(1, 0, 1, 1) == 0.5);
  CHECK(box(0, 0, 1, 1) == 0.0);
  CHECK(box(1, 1, 1, 1) == 0.0);
  CHECK(box(0, 0, 0, 0) == 0.5);
  CHECK(box(1, 1, 0, 0) == 0.5);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        CHECK(box.marginal_a(a, x, y) == 0.5);
        CHECK(box.marginal_b(a, x, y) == 0.5);
        for (int b = 0; b < 2; ++b) CHECK(box(a, b, x, y) == (((a ^ b) == (x & y)) ? 0.5 : 0.0));
      }
    }
  }
  CHECK(box.max_signaling() == 0.0);
}

TEST_CASE("hierarchy of chsh values") {
  CHECK(nl::chsh_of_behavior(nl::pr_box_behavior()) == 4.0);
  const auto polytope = nl::LocalPolytope::enumerate(nl::kChshShape);
  for (const auto& v : polytope.vertices()) {
    const double c = nl::chsh_of_behavior(v);
    CHECK(c >= -2.0);
    CHECK(c <= 2.0);
  }
  const double theta = std::numbers::pi / 4;
  const auto s = nl::chsh_optimal_settings(theta);
  const double quantum =
      nl::chsh_of_behavior(nl::behavior(nl::make_theta_state(theta), s.measurements_a(), s.measurements_b()));
  CHECK(quantum == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(quantum < 4.0);
  CHECK_THROWS_AS(nl::chsh_of_behavior(nl::BehaviorTable::uniform(nl::kCglmpShape)), std::invalid_argument);
}

TEST_CASE("sampling") {
  const std::uint64_t n = 100000;
  const auto log = nl::sample_pr_box(2007, n);
  CHECK(log.n == n);
  CHECK(log.seed == 2007);
  CHECK_FALSE(log.generator.empty());
  std::uint64_t total = 0;
  for (auto c : log.counts) total += c;
  CHECK(total == n);
  // Forbidden cells are never hit.
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          if ((a ^ b) != (x & y)) CHECK(log.counts[((x * 2 + y) * 2 + a) * 2 + b] == 0);
        }
      }
    }
  }
  CHECK(std::abs(nl::empirical_chsh(log) - 4.0) < 0.05);

  const auto empirical = nl::empirical_behavior(log);
  const auto exact = nl::pr_box_behavior();
  double deviation = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    deviation = std::max(deviation, std::abs(empirical.values()[i] - exact.values()[i]));
  }
  CHECK(deviation < 4 / std::sqrt(double(n)));
}

TEST_CASE("sampling is reproducible") {
  const auto first = nl::sample_pr_box(42, 200000);
  const auto second = nl::sample_pr_box(42, 200000);
  CHECK(first.counts == second.counts);
  CHECK(nl::sample_pr_box(43, 200000).counts != first.counts);
  // A prefix of shards is shared between different totals.
  const auto one_shard = nl::sample_pr_box(42, nl::kPrBoxShardSize);
  const auto two_shards = nl::sample_pr_box(42, 2 * nl::kPrBoxShardSize);
  for (std::size_t k = 0; k < 16; ++k) CHECK(two_shards.counts[k] >= one_shard.counts[k]);
  CHECK_THROWS_AS(nl::sample_pr_box(1, 0), std::invalid_argument);
}
