#include "nonlocality/behavior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nonlocality {

BehaviorTable::BehaviorTable(Shape shape, std::vector<double> probabilities)
    : shape_(shape), probabilities_(std::move(probabilities)) {
  if (shape_.settings_a < 1 || shape_.settings_b < 1 || shape_.outcomes_a < 1 ||
      shape_.outcomes_b < 1) {
    throw std::invalid_argument("BehaviorTable: shape entries must be positive");
  }
  if (probabilities_.size() != shape_.size()) {
    throw std::invalid_argument("BehaviorTable: table size does not match shape");
  }
  for (double& p : probabilities_) {
    if (!std::isfinite(p) || p < -1e-12 || p > 1.0 + 1e-12) {
      throw std::invalid_argument("BehaviorTable: probability outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
  }
  const auto block = static_cast<std::size_t>(shape_.outcome_pairs());
  for (std::size_t start = 0; start < probabilities_.size(); start += block) {
    double sum = 0.0;
    for (std::size_t i = 0; i < block; ++i) sum += probabilities_[start + i];
    if (std::abs(sum - 1.0) > 1e-10) {
      throw std::invalid_argument("BehaviorTable: a setting block does not sum to one");
    }
  }
}

BehaviorTable BehaviorTable::uniform(Shape shape) {
  return BehaviorTable(shape,
                       std::vector<double>(shape.size(), 1.0 / shape.outcome_pairs()));
}

double BehaviorTable::marginal_a(int a, int x, int y) const {
  double sum = 0.0;
  for (int b = 0; b < shape_.outcomes_b; ++b) sum += (*this)(a, b, x, y);
  return sum;
}

double BehaviorTable::marginal_b(int b, int x, int y) const {
  double sum = 0.0;
  for (int a = 0; a < shape_.outcomes_a; ++a) sum += (*this)(a, b, x, y);
  return sum;
}

double BehaviorTable::max_signaling() const {
  double worst = 0.0;
  for (int x = 0; x < shape_.settings_a; ++x) {
    for (int a = 0; a < shape_.outcomes_a; ++a) {
      const double reference = marginal_a(a, x, 0);
      for (int y = 1; y < shape_.settings_b; ++y) {
        worst = std::max(worst, std::abs(marginal_a(a, x, y) - reference));
      }
    }
  }
  for (int y = 0; y < shape_.settings_b; ++y) {
    for (int b = 0; b < shape_.outcomes_b; ++b) {
      const double reference = marginal_b(b, 0, y);
      for (int x = 1; x < shape_.settings_a; ++x) {
        worst = std::max(worst, std::abs(marginal_b(b, x, y) - reference));
      }
    }
  }
  return worst;
}

BehaviorTable behavior(const BipartitePureState& state,
                       std::span<const GeneralMeasurement> settings_a,
                       std::span<const GeneralMeasurement> settings_b) {
  if (settings_a.empty() || settings_b.empty()) {
    throw std::invalid_argument("behavior: each party needs at least one setting");
  }
  for (const auto& m : settings_a) {
    if (m.dim() != state.dim_a()) throw std::invalid_argument("behavior: A dimension mismatch");
  }
  for (const auto& m : settings_b) {
    if (m.dim() != state.dim_b()) throw std::invalid_argument("behavior: B dimension mismatch");
  }
  const Shape shape{static_cast<int>(settings_a.size()), static_cast<int>(settings_b.size()),
                    state.dim_a(), state.dim_b()};
  std::vector<double> probabilities(shape.size());
  const auto& c = state.amplitudes();
  std::size_t cursor = 0;
  for (const auto& ma : settings_a) {
    for (const auto& mb : settings_b) {
      for (int a = 0; a < shape.outcomes_a; ++a) {
        // <v_a| applied to A leaves the conditional vector on B.
        const Eigen::RowVectorXcd conditional = ma.vector(a).adjoint() * c;
        for (int b = 0; b < shape.outcomes_b; ++b) {
          const Complex amplitude = (conditional * mb.vector(b).conjugate()).value();
          probabilities[cursor++] = std::norm(amplitude);
        }
      }
    }
  }
  return BehaviorTable(shape, std::move(probabilities));
}

double table_correlator(const BehaviorTable& table, int x, int y) {
  const auto& shape = table.shape();
  if (shape.outcomes_a != 2 || shape.outcomes_b != 2) {
    throw std::invalid_argument("table_correlator: requires binary outcomes");
  }
  return table(0, 0, x, y) - table(0, 1, x, y) - table(1, 0, x, y) + table(1, 1, x, y);
}

}  // namespace nonlocality
