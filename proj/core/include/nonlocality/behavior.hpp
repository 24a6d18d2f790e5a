#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nonlocality/measurement.hpp"
#include "nonlocality/state.hpp"

namespace nonlocality {

/// Numbers of settings and outcomes on each side of a bipartite Bell test.
struct Shape {
  int settings_a = 2;
  int settings_b = 2;
  int outcomes_a = 2;
  int outcomes_b = 2;

  std::size_t size() const {
    return static_cast<std::size_t>(settings_a) * settings_b * outcomes_a * outcomes_b;
  }
  int setting_pairs() const { return settings_a * settings_b; }
  int outcome_pairs() const { return outcomes_a * outcomes_b; }
  bool operator==(const Shape&) const = default;
};

inline constexpr Shape kChshShape{2, 2, 2, 2};
inline constexpr Shape kCglmpShape{2, 2, 3, 3};

/// Conditional distribution P(a, b | x, y).
///
/// Layout is row-major in (x, y, a, b). Entries above -1e-12 are clamped to
/// zero on construction; each (x, y) block must sum to one within 1e-10.
class BehaviorTable {
 public:
  BehaviorTable(Shape shape, std::vector<double> probabilities);

  static BehaviorTable uniform(Shape shape);

  const Shape& shape() const { return shape_; }
  std::span<const double> values() const { return probabilities_; }

  std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(x) * shape_.settings_b + y) * shape_.outcomes_a + a) *
               shape_.outcomes_b +
           b;
  }
  double operator()(int a, int b, int x, int y) const { return probabilities_[index(a, b, x, y)]; }

  double marginal_a(int a, int x, int y) const;
  double marginal_b(int b, int x, int y) const;

  /// Largest change of a party's marginal under a change of the other
  /// party's setting.
  double max_signaling() const;
  bool is_nonsignaling(double tolerance = 1e-10) const { return max_signaling() <= tolerance; }

 private:
  Shape shape_;
  std::vector<double> probabilities_;
};

/// Born rule: P(a, b | x, y) = |<v_a (x) w_b | psi>|^2.
BehaviorTable behavior(const BipartitePureState& state,
                       std::span<const GeneralMeasurement> settings_a,
                       std::span<const GeneralMeasurement> settings_b);

/// E(x, y) = sum_ab (-1)^(a+b) P(a, b | x, y) for binary outcomes.
double table_correlator(const BehaviorTable& table, int x, int y);

}  // namespace nonlocality
