#include "nonlocality/cglmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nonlocality/polytope.hpp"
#include "nonlocality/state.hpp"

namespace nonlocality {

namespace {

struct Term {
  int x;
  int y;
  int delta;
  double sign;
};

constexpr std::array<Term, 8> kCglmpTerms{{{0, 0, 0, +1.0},
                                           {0, 1, 0, +1.0},
                                           {1, 0, 0, +1.0},
                                           {1, 1, 2, +1.0},
                                           {0, 0, 1, -1.0},
                                           {0, 1, 2, -1.0},
                                           {1, 0, 2, -1.0},
                                           {1, 1, 0, -1.0}}};

void check_schmidt(const std::array<double, 3>& c) {
  double norm = 0.0;
  for (double v : c) {
    if (!(v >= 0.0)) throw std::invalid_argument("CglmpScenario: coefficients must be >= 0");
    norm += v * v;
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument("CglmpScenario: coefficients must have unit norm");
  }
}

// For real Schmidt coefficients the double sum collapses to
// s0 + 2 s1 cos(phi) + 2 s2 cos(2 phi).
struct FastCglmp {
  explicit FastCglmp(const std::array<double, 3>& c)
      : s0(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]),
        s1(c[0] * c[1] + c[1] * c[2]),
        s2(c[0] * c[2]) {}

  double congruence(double phi) const {
    return (s0 + 2.0 * s1 * std::cos(phi) + 2.0 * s2 * std::cos(2.0 * phi)) / 3.0;
  }

  double value(double a1, double a2, double b1, double b2) const {
    const double third = 2.0 * std::numbers::pi / 3.0;
    const double alpha[2] = {a1, a2};
    const double beta[2] = {b1, b2};
    double sum = 0.0;
    for (const auto& t : kCglmpTerms) {
      sum += t.sign * congruence(alpha[t.x] + beta[t.y] + third * t.delta);
    }
    return sum;
  }

  double s0, s1, s2;
};

CglmpPhases normalized(const std::vector<double>& p) {
  // alpha -> alpha - t, beta -> beta + t leaves every sum alpha_j + beta_k fixed.
  return {0.0, wrap_angle(p[1] - p[0]), wrap_angle(p[2] + p[0]), wrap_angle(p[3] + p[0])};
}

bool same_phases(const CglmpPhases& a, const CglmpPhases& b) {
  auto diff = [](double u, double v) { return std::abs(wrap_angle(u - v)); };
  return diff(a.alpha2, b.alpha2) < 1e-3 && diff(a.beta1, b.beta1) < 1e-3 &&
         diff(a.beta2, b.beta2) < 1e-3;
}

struct PhaseSearch {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> point;
  std::vector<CglmpPhases> optima;
  long evaluations = 0;
  int iterations = 0;
  double diameter = 0.0;
};

PhaseSearch polish(const FastCglmp& fast, const std::vector<std::vector<double>>& starts,
                   const NelderMeadOptions& options) {
  const Objective negative = [&](std::span<const double> p) {
    return -fast.value(p[0], p[1], p[2], p[3]);
  };
  std::vector<NelderMeadResult> runs(starts.size());
  parallel_for(starts.size(),
               [&](std::size_t i) { runs[i] = nelder_mead(negative, starts[i], options); });
  PhaseSearch out;
  for (const auto& run : runs) {
    out.evaluations += run.evaluations;
    if (-run.value > out.value) {
      out.value = -run.value;
      out.point = run.point;
      out.iterations = run.iterations;
      out.diameter = run.diameter;
    }
  }
  for (const auto& run : runs) {
    if (-run.value < out.value - 1e-6) continue;
    const auto phases = normalized(run.point);
    const bool seen = std::any_of(out.optima.begin(), out.optima.end(),
                                  [&](const CglmpPhases& p) { return same_phases(p, phases); });
    if (!seen) out.optima.push_back(phases);
  }
  return out;
}

PhaseSearch search_phases(const std::array<double, 3>& schmidt, const CglmpOptions& options) {
  const FastCglmp fast(schmidt);
  const int n = options.grid_points;
  if (n < 2) throw std::invalid_argument("optimize_cglmp: grid needs at least 2 points per axis");
  std::vector<double> axis(n);
  for (int i = 0; i < n; ++i) axis[i] = -std::numbers::pi + 2.0 * std::numbers::pi * i / n;

  struct Cell {
    double value;
    int index[4];
  };
  const auto keep = static_cast<std::size_t>(std::max(1, options.polish_starts));
  std::vector<Cell> best;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const double v = fast.value(axis[i], axis[j], axis[k], axis[l]);
          if (best.size() < keep || v > best.back().value) {
            Cell cell{v, {i, j, k, l}};
            auto at = std::upper_bound(best.begin(), best.end(), cell,
                                       [](const Cell& a, const Cell& b) { return a.value > b.value; });
            best.insert(at, cell);
            if (best.size() > keep) best.pop_back();
          }
        }
      }
    }
  }
  std::vector<std::vector<double>> starts;
  for (const auto& cell : best) {
    starts.push_back({axis[cell.index[0]], axis[cell.index[1]], axis[cell.index[2]],
                      axis[cell.index[3]]});
  }
  auto out = polish(fast, starts, options.nelder_mead);
  out.evaluations += static_cast<long>(n) * n * n * n;
  return out;
}

CglmpOptimum to_optimum(const PhaseSearch& search, const std::array<double, 3>& schmidt,
                        double gamma) {
  CglmpOptimum out;
  out.phases = normalized(search.point);
  out.schmidt = schmidt;
  out.gamma = gamma;
  out.distinct_optima = search.optima;
  out.result.value = search.value;
  out.result.parameters = {out.phases.alpha1, out.phases.alpha2, out.phases.beta1,
                           out.phases.beta2};
  out.result.parameter_names = {"alpha1", "alpha2", "beta1", "beta2"};
  out.result.iterations = search.iterations;
  out.result.evaluations = search.evaluations;
  out.result.gap = search.diameter;
  return out;
}

}  // namespace

CglmpPhases standard_cglmp_phases() {
  return {0.0, std::numbers::pi / 3.0, -std::numbers::pi / 6.0, std::numbers::pi / 6.0};
}

CglmpScenario::CglmpScenario(std::array<double, 3> c, CglmpPhases p) : schmidt(c), phases(p) {
  check_schmidt(schmidt);
}

double congruence_probability(const BehaviorTable& table, int x, int y, int delta) {
  if (table.shape() != kCglmpShape) {
    throw std::invalid_argument("congruence_probability: requires a (2,2,3,3) behavior");
  }
  const int shift = ((delta % 3) + 3) % 3;
  double sum = 0.0;
  for (int b = 0; b < 3; ++b) sum += table((b + shift) % 3, b, x, y);
  return sum;
}

double cglmp_value(const BehaviorTable& table) {
  double sum = 0.0;
  for (const auto& t : kCglmpTerms) sum += t.sign * congruence_probability(table, t.x, t.y, t.delta);
  return sum;
}

double analytic_probability(const CglmpScenario& s, int j, int k, int delta) {
  const double phi =
      s.phases.alpha(j) + s.phases.beta(k) + 2.0 * std::numbers::pi * delta / 3.0;
  double sum = 0.0;
  for (int n = 0; n < 3; ++n) {
    for (int m = 0; m < 3; ++m) sum += s.schmidt[n] * s.schmidt[m] * std::cos((n - m) * phi);
  }
  return sum / 9.0;
}

double analytic_congruence_probability(const CglmpScenario& s, int j, int k, int delta) {
  return 3.0 * analytic_probability(s, j, k, delta);
}

double analytic_cglmp_value(const CglmpScenario& s) {
  double sum = 0.0;
  for (const auto& t : kCglmpTerms) {
    sum += t.sign * analytic_congruence_probability(s, t.x, t.y, t.delta);
  }
  return sum;
}

BehaviorTable cglmp_behavior(const CglmpScenario& s) {
  const auto state = make_schmidt_state(s.schmidt);
  const std::array<GeneralMeasurement, 2> a{cglmp_projectors({Party::A, s.phases.alpha1}),
                                            cglmp_projectors({Party::A, s.phases.alpha2})};
  const std::array<GeneralMeasurement, 2> b{cglmp_projectors({Party::B, s.phases.beta1}),
                                            cglmp_projectors({Party::B, s.phases.beta2})};
  return behavior(state, a, b);
}

double cglmp_local_maximum() {
  const auto polytope = LocalPolytope::enumerate(kCglmpShape);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& vertex : polytope.vertices()) best = std::max(best, cglmp_value(vertex));
  return best;
}

CglmpOptimum optimize_cglmp(const std::array<double, 3>& schmidt, const CglmpOptions& options) {
  check_schmidt(schmidt);
  auto out = to_optimum(search_phases(schmidt, options), schmidt,
                        std::numeric_limits<double>::quiet_NaN());
  out.result.starts = options.polish_starts;
  return out;
}

CglmpOptimum optimize_cglmp_state_and_settings(const CglmpOptions& options) {
  if (options.gamma_grid < 2) throw std::invalid_argument("optimize_cglmp: gamma grid too small");
  const double step = (options.gamma_hi - options.gamma_lo) / (options.gamma_grid - 1);

  std::vector<PhaseSearch> coarse(options.gamma_grid);
  parallel_for(coarse.size(), [&](std::size_t i) {
    coarse[i] = search_phases(gamma_schmidt(options.gamma_lo + step * i), options);
  });
  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    evaluations += coarse[i].evaluations;
    if (coarse[i].value > coarse[best].value) best = i;
  }

  // Phase maximum as a function of gamma, warm-started from the best phases so far.
  std::vector<double> warm = coarse[best].point;
  PhaseSearch last;
  auto value_at = [&](double gamma) {
    last = polish(FastCglmp(gamma_schmidt(gamma)), {warm}, options.nelder_mead);
    evaluations += last.evaluations;
    warm = last.point;
    return last.value;
  };
  const double lo = std::max(options.gamma_lo, options.gamma_lo + step * (double(best) - 1.0));
  const double hi = std::min(options.gamma_hi, options.gamma_lo + step * (double(best) + 1.0));
  const auto golden = golden_section_maximize(value_at, lo, hi, options.gamma_tolerance);

  // Final polish at the chosen gamma from every grid start.
  auto search = search_phases(gamma_schmidt(golden.x), options);
  search.evaluations += evaluations;
  auto out = to_optimum(search, gamma_schmidt(golden.x), golden.x);
  out.result.parameters.push_back(golden.x);
  out.result.parameter_names.push_back("gamma");
  out.result.gap = golden.bracket;
  out.result.iterations = golden.iterations;
  out.result.starts = options.gamma_grid;
  return out;
}

}  // namespace nonlocality
