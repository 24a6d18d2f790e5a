#include "nonlocality/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "nonlocality/state.hpp"

namespace nonlocality {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kStallCheck = 2000;
const double kLn2 = std::numbers::ln2;

void check_weights(const Shape& shape, std::span<const double> weights) {
  if (weights.size() != static_cast<std::size_t>(shape.setting_pairs())) {
    throw std::invalid_argument("setting weights: one weight per setting pair required");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("setting weights: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("setting weights: must sum to 1");
}

std::vector<double> resolve_weights(const Shape& shape, const std::vector<double>& weights) {
  auto out = weights.empty() ? uniform_setting_weights(shape) : weights;
  check_weights(shape, out);
  return out;
}

// Minimum-KL problem over vertex mixtures, with P and per-entry setting
// weights laid out like the behavior table.
class KlProblem {
 public:
  KlProblem(const BehaviorTable& p, const std::vector<double>& setting_weights)
      : polytope_(LocalPolytope::enumerate(p.shape())),
        p_(p.values().begin(), p.values().end()),
        weight_(p_.size()) {
    const auto block = static_cast<std::size_t>(p.shape().outcome_pairs());
    for (std::size_t i = 0; i < p_.size(); ++i) weight_[i] = setting_weights[i / block];
  }

  const LocalPolytope& polytope() const { return polytope_; }
  std::size_t vertices() const { return polytope_.size(); }
  std::size_t entries() const { return p_.size(); }

  void mixture(const std::vector<double>& w, std::vector<double>& q) const {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t v = 0; v < w.size(); ++v) {
      if (w[v] == 0.0) continue;
      for (auto i : polytope_.support(v)) q[i] += w[v];
    }
  }

  // ratio_i = weight_i P_i / Q_i; +inf marks an uncovered entry.
  void ratios(const std::vector<double>& q, std::vector<double>& ratio) const {
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (p_[i] <= 0.0 || weight_[i] == 0.0) {
        ratio[i] = 0.0;
      } else {
        ratio[i] = q[i] > 0.0 ? weight_[i] * p_[i] / q[i] : kInf;
      }
    }
  }

  // Minus the gradient of the objective with respect to w_v, times ln 2.
  double vertex_score(std::size_t v, const std::vector<double>& ratio) const {
    double sum = 0.0;
    for (auto i : polytope_.support(v)) sum += ratio[i];
    return sum;
  }

  // Root of the directional derivative of t -> f(q + t d) on [0, t_max].
  double line_search(const std::vector<double>& q, const std::vector<double>& d,
                     double t_max) const {
    auto slope = [&](double t) {
      // h(t) = sum weight P d / (q + t d); decreasing, h(0) > 0 for descent.
      double h = 0.0;
      for (std::size_t i = 0; i < p_.size(); ++i) {
        if (p_[i] <= 0.0 || weight_[i] == 0.0 || d[i] == 0.0) continue;
        const double denominator = q[i] + t * d[i];
        if (denominator <= 0.0) return -kInf;
        h += weight_[i] * p_[i] * d[i] / denominator;
      }
      return h;
    };
    auto curvature = [&](double t) {
      double c = 0.0;
      for (std::size_t i = 0; i < p_.size(); ++i) {
        if (p_[i] <= 0.0 || weight_[i] == 0.0 || d[i] == 0.0) continue;
        const double denominator = q[i] + t * d[i];
        c += weight_[i] * p_[i] * d[i] * d[i] / (denominator * denominator);
      }
      return c;
    };
    if (slope(t_max) >= 0.0) return t_max;
    // Newton on the bracket [lo, hi], falling back to bisection whenever the
    // Newton step leaves the bracket or fails to halve the previous step.
    double lo = 0.0;
    double hi = t_max;
    const double h0 = slope(0.0);
    const double c0 = curvature(0.0);
    double t = c0 > 0.0 && h0 / c0 < t_max ? h0 / c0 : 0.5 * t_max;
    double step = hi - lo;
    double previous = step;
    for (int k = 0; k < 200; ++k) {
      const double h = slope(t);
      if (h == 0.0) break;
      if (h > 0.0) {
        lo = t;
      } else {
        hi = t;
      }
      const double c = std::isfinite(h) ? curvature(t) : 0.0;
      const double newton = c > 0.0 ? t + h / c : -1.0;
      if (newton > lo && newton < hi && std::abs(2.0 * (newton - t)) <= std::abs(previous)) {
        previous = step;
        step = newton - t;
        t = newton;
      } else {
        previous = step;
        step = 0.5 * (hi - lo);
        t = lo + step;
      }
      if (std::abs(step) <= 1e-16 * t || hi - lo <= 1e-16 * hi) break;
    }
    return t;
  }

  // Frank-Wolfe gap of a normalized mixture, in bits.
  double gap(const std::vector<double>& w) const {
    std::vector<double> q(p_.size()), ratio(p_.size());
    mixture(w, q);
    ratios(q, ratio);
    double average = 0.0;
    double best = 0.0;
    for (std::size_t v = 0; v < w.size(); ++v) {
      const double score = vertex_score(v, ratio);
      average += w[v] * score;
      best = std::max(best, score);
    }
    return (best - average) / kLn2;
  }

  // Objective at Q, in bits.
  double divergence(const std::vector<double>& q) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (p_[i] <= 0.0 || weight_[i] == 0.0) continue;
      if (q[i] <= 0.0) return kInf;
      sum += weight_[i] * p_[i] * std::log2(p_[i] / q[i]);
    }
    return sum;
  }

  KlResult finish(std::vector<double> w, double gap, long iterations, bool converged,
                  KlMethod method, const std::vector<double>& setting_weights) const {
    KlResult out;
    const auto closest = polytope_.mixture(w);
    BehaviorTable p(polytope_.shape(), p_);
    out.distance_bits = kl_divergence(p, closest, setting_weights);
    out.weights = std::move(w);
    out.gap = gap;
    out.iterations = iterations;
    out.converged = converged;
    out.method = method;
    return out;
  }

 private:
  LocalPolytope polytope_;
  std::vector<double> p_;
  std::vector<double> weight_;
};

// Dense tableau simplex for min c^T x, A x = b, x >= 0 with b >= 0 and an
// identity basis supplied by the caller. Bland's rule avoids cycling.
struct Tableau {
  Tableau(int rows, int cols) : rows(rows), cols(cols), data((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * (cols + 1) + c]; }
  double& rhs(int r) { return at(r, cols); }
  double& reduced(int c) { return at(rows, c); }

  void pivot(int row, int col) {
    const double scale = at(row, col);
    for (int c = 0; c <= cols; ++c) at(row, c) /= scale;
    for (int r = 0; r <= rows; ++r) {
      if (r == row) continue;
      const double factor = at(r, col);
      if (factor == 0.0) continue;
      for (int c = 0; c <= cols; ++c) at(r, c) -= factor * at(row, c);
    }
    basis[row] = col;
  }

  // Returns the number of pivots; throws if the problem is unbounded.
  int solve(const std::vector<double>& cost) {
    for (int c = 0; c < cols; ++c) {
      double z = cost[c];
      for (int r = 0; r < rows; ++r) z -= cost[basis[r]] * at(r, c);
      reduced(c) = z;
    }
    double objective = 0.0;
    for (int r = 0; r < rows; ++r) objective += cost[basis[r]] * rhs(r);
    reduced(cols) = -objective;

    int pivots = 0;
    for (;;) {
      int entering = -1;
      for (int c = 0; c < cols; ++c) {
        if (reduced(c) < -1e-11) {
          entering = c;
          break;
        }
      }
      if (entering < 0) return pivots;
      int leaving = -1;
      double best_ratio = kInf;
      for (int r = 0; r < rows; ++r) {
        const double a = at(r, entering);
        if (a <= 1e-12) continue;
        const double ratio = rhs(r) / a;
        if (ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 && basis[r] < basis[leaving])) {
          best_ratio = ratio;
          leaving = r;
        }
      }
      if (leaving < 0) throw std::runtime_error("simplex: unbounded problem");
      pivot(leaving, entering);
      ++pivots;
    }
  }

  int rows;
  int cols;
  std::vector<double> data;
  std::vector<int> basis;
};

}  // namespace

LocalPolytope LocalPolytope::enumerate(Shape shape) {
  if (shape.settings_a < 1 || shape.settings_b < 1 || shape.outcomes_a < 1 ||
      shape.outcomes_b < 1) {
    throw std::invalid_argument("LocalPolytope: shape entries must be positive");
  }
  std::vector<int> bases;
  for (int x = 0; x < shape.settings_a; ++x) bases.push_back(shape.outcomes_a);
  for (int y = 0; y < shape.settings_b; ++y) bases.push_back(shape.outcomes_b);
  std::uint64_t count = 1;
  for (int base : bases) {
    if (count > kMaxVertices / static_cast<std::uint64_t>(base)) {
      throw std::invalid_argument("LocalPolytope: vertex count exceeds the size guard");
    }
    count *= static_cast<std::uint64_t>(base);
  }

  LocalPolytope out;
  out.shape_ = shape;
  out.strategies_.reserve(count);
  out.vertices_.reserve(count);
  std::vector<int> digits(bases.size());
  for (std::uint64_t index = 0; index < count; ++index) {
    std::uint64_t rest = index;
    for (std::size_t k = bases.size(); k-- > 0;) {
      digits[k] = static_cast<int>(rest % bases[k]);
      rest /= bases[k];
    }
    Strategy strategy{{digits.begin(), digits.begin() + shape.settings_a},
                      {digits.begin() + shape.settings_a, digits.end()}};
    std::vector<double> table(shape.size(), 0.0);
    const BehaviorTable layout = BehaviorTable::uniform(shape);
    for (int x = 0; x < shape.settings_a; ++x) {
      for (int y = 0; y < shape.settings_b; ++y) {
        const auto i = layout.index(strategy.outputs_a[x], strategy.outputs_b[y], x, y);
        table[i] = 1.0;
        out.support_.push_back(i);
      }
    }
    out.strategies_.push_back(std::move(strategy));
    out.vertices_.emplace_back(shape, std::move(table));
  }
  return out;
}

BehaviorTable LocalPolytope::mixture(std::span<const double> weights) const {
  if (weights.size() != size()) throw std::invalid_argument("mixture: one weight per vertex");
  std::vector<double> table(shape_.size(), 0.0);
  double total = 0.0;
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (weights[v] < 0.0) throw std::invalid_argument("mixture: negative weight");
    total += weights[v];
    for (auto i : support(v)) table[i] += weights[v];
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("mixture: weights must sum to 1");
  return BehaviorTable(shape_, std::move(table));
}

std::vector<double> uniform_setting_weights(const Shape& shape) {
  return std::vector<double>(shape.setting_pairs(), 1.0 / shape.setting_pairs());
}

double kl_divergence(const BehaviorTable& p, const BehaviorTable& q,
                     std::span<const double> setting_weights) {
  if (p.shape() != q.shape()) throw std::invalid_argument("kl_divergence: shape mismatch");
  check_weights(p.shape(), setting_weights);
  const auto block = static_cast<std::size_t>(p.shape().outcome_pairs());
  const auto pv = p.values();
  const auto qv = q.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const double w = setting_weights[i / block];
    if (pv[i] <= 0.0 || w == 0.0) continue;
    if (qv[i] <= 0.0) return kInf;
    sum += w * pv[i] * std::log2(pv[i] / qv[i]);
  }
  return std::max(sum, 0.0);
}

namespace {

struct SolverState {
  std::vector<double> w;
  double gap = kInf;
  long iterations = 0;
  bool converged = false;
};

// Multiplicative updates w_v <- w_v * score_v / <score>, continuing `state`.
void run_multiplicative(const KlProblem& problem, const KlOptions& options, SolverState& state) {
  const std::size_t nv = problem.vertices();
  const std::size_t ne = problem.entries();
  auto& w = state.w;
  std::vector<double> q(ne), ratio(ne), score(nv);
  for (; state.iterations < options.max_iterations; ++state.iterations) {
    problem.mixture(w, q);
    problem.ratios(q, ratio);
    double average = 0.0;
    double best = 0.0;
    for (std::size_t v = 0; v < nv; ++v) {
      score[v] = problem.vertex_score(v, ratio);
      average += w[v] * score[v];
      best = std::max(best, score[v]);
    }
    state.gap = (best - average) / kLn2;
    if (state.gap < options.gap_tolerance) {
      state.converged = true;
      return;
    }
    for (std::size_t v = 0; v < nv; ++v) w[v] *= score[v] / average;
  }
}

// Pairwise conditional gradient with exact line search. Returns false when
// it gave up at the stall check without converging.
bool run_conditional_gradient(const KlProblem& problem, const BehaviorTable& p,
                              const KlOptions& options, SolverState& state) {
  const std::size_t nv = problem.vertices();
  const std::size_t ne = problem.entries();
  auto& w = state.w;
  std::vector<double> q(ne), ratio(ne), score(nv), d(ne);
  problem.mixture(w, q);
  for (; state.iterations < options.max_iterations; ++state.iterations) {
    if (state.iterations % 64 == 63) {
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      for (auto& x : w) x /= total;
      problem.mixture(w, q);
    }
    problem.ratios(q, ratio);
    double average = 0.0;
    std::size_t toward = 0;
    std::size_t away = nv;
    for (std::size_t v = 0; v < nv; ++v) {
      score[v] = problem.vertex_score(v, ratio);
      average += w[v] * score[v];
      if (score[v] > score[toward]) toward = v;
      if (w[v] > 0.0 && (away == nv || score[v] < score[away])) away = v;
    }
    state.gap = (score[toward] - average) / kLn2;
    if (state.gap < options.gap_tolerance) {
      state.converged = true;
      return true;
    }
    if (state.iterations == kStallCheck && options.stall_fallback) {
      // Points inside the polytope: the LP gives an exact mixture.
      if (problem.divergence(q) < 1e-6) {
        auto membership = local_membership(p);
        if (membership.member) {
          auto lp = std::move(membership.weights);
          const double total = std::accumulate(lp.begin(), lp.end(), 0.0);
          for (auto& x : lp) x /= total;
          const double lp_gap = problem.gap(lp);
          if (lp_gap < options.gap_tolerance) {
            w = std::move(lp);
            state.gap = std::max(lp_gap, 0.0);
            state.converged = true;
            return true;
          }
        }
      }
      return false;
    }

    // Pairwise step: move mass from the worst active vertex to the best one.
    std::fill(d.begin(), d.end(), 0.0);
    for (auto i : problem.polytope().support(toward)) d[i] += 1.0;
    for (auto i : problem.polytope().support(away)) d[i] -= 1.0;
    const double t_max = w[away];
    const double t = problem.line_search(q, d, t_max);
    w[toward] += t;
    w[away] -= t;
    if (t >= t_max || w[away] < 1e-300) w[away] = 0.0;
    for (std::size_t i = 0; i < ne; ++i) q[i] += t * d[i];
  }
  return true;
}

}  // namespace

KlResult kl_to_local(const BehaviorTable& p, const KlOptions& options) {
  const auto setting_weights = resolve_weights(p.shape(), options.setting_weights);
  const KlProblem problem(p, setting_weights);
  const std::size_t nv = problem.vertices();
  SolverState state;
  state.w.assign(nv, 1.0 / static_cast<double>(nv));

  KlMethod method = options.method;
  if (method == KlMethod::ConditionalGradient &&
      !run_conditional_gradient(problem, p, options, state)) {
    // Entries near zero make the steps crawl; multiplicative updates do not
    // suffer from this. Blend in the uniform mixture so dropped vertices can
    // return.
    for (auto& x : state.w) x = 0.99 * x + 0.01 / static_cast<double>(nv);
    method = KlMethod::MultiplicativeWeights;
  }
  if (method == KlMethod::MultiplicativeWeights) run_multiplicative(problem, options, state);

  const double total = std::accumulate(state.w.begin(), state.w.end(), 0.0);
  for (auto& x : state.w) x /= total;
  return problem.finish(std::move(state.w), state.gap, state.iterations, state.converged, method,
                        setting_weights);
}

KlResult kl_to_local_multiplicative(const BehaviorTable& p, const KlOptions& options) {
  auto multiplicative = options;
  multiplicative.method = KlMethod::MultiplicativeWeights;
  return kl_to_local(p, multiplicative);
}

double SeparatingInequality::evaluate(const BehaviorTable& table) const {
  const auto values = table.values();
  if (values.size() != coefficients.size()) {
    throw std::invalid_argument("SeparatingInequality: table size mismatch");
  }
  return std::inner_product(values.begin(), values.end(), coefficients.begin(), 0.0);
}

double SeparatingInequality::local_maximum(const LocalPolytope& polytope) const {
  double best = -kInf;
  for (std::size_t v = 0; v < polytope.size(); ++v) {
    double sum = 0.0;
    for (auto i : polytope.support(v)) sum += coefficients[i];
    best = std::max(best, sum);
  }
  return best;
}

MembershipResult local_membership(const BehaviorTable& p, double tolerance) {
  const auto polytope = LocalPolytope::enumerate(p.shape());
  const int nv = static_cast<int>(polytope.size());
  const int m = static_cast<int>(p.values().size());
  // Columns: w (nv), s+ (m), s- (m), artificial (1). Rows: m entries + 1 sum.
  const int plus = nv;
  const int minus = nv + m;
  const int artificial = nv + 2 * m;
  Tableau t(m + 1, artificial + 1);
  for (int v = 0; v < nv; ++v) {
    for (auto i : polytope.support(v)) t.at(static_cast<int>(i), v) = 1.0;
    t.at(m, v) = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    t.at(i, plus + i) = 1.0;
    t.at(i, minus + i) = -1.0;
    t.rhs(i) = p.values()[i];
    t.basis.push_back(plus + i);
  }
  t.at(m, artificial) = 1.0;
  t.rhs(m) = 1.0;
  t.basis.push_back(artificial);

  const double big_m = 10.0 * (2.0 * p.shape().setting_pairs() + 1.0);
  std::vector<double> cost(artificial + 1, 0.0);
  for (int i = 0; i < 2 * m; ++i) cost[plus + i] = 1.0;
  cost[artificial] = big_m;

  MembershipResult out;
  out.pivots = t.solve(cost);
  out.weights.assign(nv, 0.0);
  for (int r = 0; r <= m; ++r) {
    if (t.basis[r] < nv) out.weights[t.basis[r]] = std::max(0.0, t.rhs(r));
  }
  out.l1_distance = std::max(0.0, -t.reduced(artificial + 1));
  // Duals from the reduced costs of the identity columns.
  out.certificate.coefficients.resize(m);
  for (int i = 0; i < m; ++i) out.certificate.coefficients[i] = 1.0 - t.reduced(plus + i);
  out.certificate.bound = -(big_m - t.reduced(artificial));
  out.member = out.l1_distance <= tolerance;
  return out;
}

namespace {

double kl_of_phases(const std::array<double, 3>& schmidt, std::span<const double> p,
                    const KlOptions& options) {
  const CglmpScenario scenario(schmidt, {0.0, p[0], p[1], p[2]});
  return kl_to_local(cglmp_behavior(scenario), options).distance_bits;
}

struct KlPhaseSearch {
  double value = -kInf;
  std::vector<double> point;
  long evaluations = 0;
  int iterations = 0;
  double diameter = 0.0;
};

KlPhaseSearch polish_kl(const std::array<double, 3>& schmidt,
                        const std::vector<std::vector<double>>& starts,
                        const KlOptimizeOptions& options, const KlOptions& inner) {
  const Objective negative = [&](std::span<const double> p) {
    return -kl_of_phases(schmidt, p, inner);
  };
  std::vector<NelderMeadResult> runs(starts.size());
  parallel_for(starts.size(),
               [&](std::size_t i) { runs[i] = nelder_mead(negative, starts[i], options.nelder_mead); });
  KlPhaseSearch out;
  for (const auto& run : runs) {
    out.evaluations += run.evaluations;
    if (-run.value > out.value) {
      out.value = -run.value;
      out.point = run.point;
      out.iterations = run.iterations;
      out.diameter = run.diameter;
    }
  }
  return out;
}

KlPhaseSearch search_kl_phases(const std::array<double, 3>& schmidt,
                               const KlOptimizeOptions& options, const KlOptions& inner) {
  const int n = options.grid_points;
  if (n < 2) throw std::invalid_argument("optimize_kl: grid needs at least 2 points per axis");
  std::vector<std::array<double, 3>> cells;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        auto axis = [n](int idx) { return -std::numbers::pi + 2.0 * std::numbers::pi * idx / n; };
        cells.push_back({axis(i), axis(j), axis(k)});
      }
    }
  }
  std::vector<double> values(cells.size());
  parallel_for(cells.size(),
               [&](std::size_t c) { values[c] = kl_of_phases(schmidt, cells[c], inner); });
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  const auto keep = std::min<std::size_t>(std::max(1, options.polish_starts), cells.size());
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] > values[b] || (values[a] == values[b] && a < b);
                    });
  std::vector<std::vector<double>> starts;
  for (std::size_t s = 0; s < keep; ++s) {
    const auto& cell = cells[order[s]];
    starts.push_back({cell[0], cell[1], cell[2]});
  }
  auto out = polish_kl(schmidt, starts, options, inner);
  out.evaluations += static_cast<long>(cells.size());
  return out;
}

KlOptimum to_kl_optimum(const KlPhaseSearch& search, double gamma,
                        const std::vector<double>& setting_weights) {
  KlOptimum out;
  out.gamma = gamma;
  out.phases = {0.0, wrap_angle(search.point[0]), wrap_angle(search.point[1]),
                wrap_angle(search.point[2])};
  KlOptions final_options;
  final_options.setting_weights = setting_weights;
  final_options.gap_tolerance = 1e-11;
  out.solver = kl_to_local(cglmp_behavior(CglmpScenario(gamma_schmidt(gamma), out.phases)),
                           final_options);
  out.result.value = out.solver.distance_bits;
  out.result.parameters = {out.phases.alpha1, out.phases.alpha2, out.phases.beta1,
                           out.phases.beta2};
  out.result.parameter_names = {"alpha1", "alpha2", "beta1", "beta2"};
  out.result.evaluations = search.evaluations;
  out.result.iterations = search.iterations;
  out.result.gap = search.diameter;
  return out;
}

}  // namespace

KlOptimum optimize_kl(const KlOptimizeOptions& options) {
  KlOptions inner;
  inner.setting_weights = resolve_weights(kCglmpShape, options.setting_weights);
  inner.gap_tolerance = options.search_gap_tolerance;
  inner.method = options.search_method;

  if (!options.global) {
    const auto schmidt = gamma_schmidt(options.gamma);
    auto out = to_kl_optimum(search_kl_phases(schmidt, options, inner), options.gamma,
                             inner.setting_weights);
    out.result.starts = options.polish_starts;
    return out;
  }

  if (options.gamma_grid < 2) throw std::invalid_argument("optimize_kl: gamma grid too small");
  const double step = (options.gamma_hi - options.gamma_lo) / (options.gamma_grid - 1);
  std::vector<KlPhaseSearch> coarse;
  long evaluations = 0;
  for (int g = 0; g < options.gamma_grid; ++g) {
    coarse.push_back(search_kl_phases(gamma_schmidt(options.gamma_lo + step * g), options, inner));
    evaluations += coarse.back().evaluations;
  }
  std::size_t best = 0;
  for (std::size_t g = 0; g < coarse.size(); ++g) {
    if (coarse[g].value > coarse[best].value) best = g;
  }

  std::vector<double> warm = coarse[best].point;
  auto value_at = [&](double gamma) {
    const auto run = polish_kl(gamma_schmidt(gamma), {warm}, options, inner);
    evaluations += run.evaluations;
    warm = run.point;
    return run.value;
  };
  const double lo = std::max(options.gamma_lo, options.gamma_lo + step * (double(best) - 1.0));
  const double hi = std::min(options.gamma_hi, options.gamma_lo + step * (double(best) + 1.0));
  const auto golden = golden_section_maximize(value_at, lo, hi, options.gamma_tolerance);

  auto final_search = polish_kl(gamma_schmidt(golden.x), {warm}, options, inner);
  final_search.evaluations += evaluations;
  auto out = to_kl_optimum(final_search, golden.x, inner.setting_weights);
  out.result.parameters.push_back(golden.x);
  out.result.parameter_names.push_back("gamma");
  out.result.gap = golden.bracket;
  out.result.iterations = golden.iterations;
  out.result.starts = options.gamma_grid;
  return out;
}

std::vector<KlConvention> kl_convention_sweep(const KlOptimizeOptions& options) {
  auto uniform_options = options;
  uniform_options.setting_weights.clear();
  uniform_options.global = true;
  const auto global = optimize_kl(uniform_options);
  uniform_options.global = false;
  uniform_options.gamma = 1.0;
  const auto maximally_entangled = optimize_kl(uniform_options);

  std::vector<KlConvention> out;
  out.push_back({"uniform", maximally_entangled.result.value, global.result.value, global.gamma});
  // Summing over setting pairs instead of averaging scales every distance by
  // the number of pairs and leaves the maximizer unchanged.
  const double pairs = kCglmpShape.setting_pairs();
  out.push_back({"unweighted-sum", pairs * maximally_entangled.result.value,
                 pairs * global.result.value, global.gamma});

  // Distance under the least favourable setting distribution (softmax of
  // three free logits), at fixed phases.
  auto max_over_distributions = [&](double gamma, const CglmpPhases& phases) {
    const auto table = cglmp_behavior(CglmpScenario(gamma_schmidt(gamma), phases));
    const Objective negative = [&](std::span<const double> logits) {
      std::vector<double> sigma{1.0, std::exp(logits[0]), std::exp(logits[1]),
                                std::exp(logits[2])};
      const double total = std::accumulate(sigma.begin(), sigma.end(), 0.0);
      for (auto& s : sigma) s /= total;
      KlOptions inner;
      inner.setting_weights = sigma;
      inner.gap_tolerance = options.search_gap_tolerance;
      inner.method = options.search_method;
      return -kl_to_local(table, inner).distance_bits;
    };
    const std::vector<double> start{0.0, 0.0, 0.0};
    return -nelder_mead(negative, start, {0.3, 1e-6, 300}).value;
  };
  const double width = 0.15;
  const auto golden = golden_section_maximize(
      [&](double gamma) { return max_over_distributions(gamma, global.phases); },
      std::max(options.gamma_lo, global.gamma - width), std::min(options.gamma_hi, global.gamma + width),
      options.gamma_tolerance);
  out.push_back({"max-over-setting-distributions",
                 max_over_distributions(1.0, maximally_entangled.phases), golden.value, golden.x});
  return out;
}

const char* to_string(KlMethod method) {
  switch (method) {
    case KlMethod::ConditionalGradient:
      return "conditional-gradient";
    case KlMethod::MultiplicativeWeights:
      return "multiplicative-weights";
  }
  return "unknown";
}

}  // namespace nonlocality
