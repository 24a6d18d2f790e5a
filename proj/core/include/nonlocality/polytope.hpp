#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nonlocality/behavior.hpp"
#include "nonlocality/cglmp.hpp"
#include "nonlocality/optimize.hpp"

namespace nonlocality {

/// Deterministic local strategy: one output per setting for each party.
struct Strategy {
  std::vector<int> outputs_a;
  std::vector<int> outputs_b;
};

/// Local polytope of a scenario, stored as its deterministic vertices.
class LocalPolytope {
 public:
  /// Largest vertex count enumerate() accepts.
  static constexpr std::uint64_t kMaxVertices = 1'000'000;

  /// All deterministic strategies in lexicographic order of
  /// (a_0, ..., a_{sa-1}, b_0, ..., b_{sb-1}), first entry most significant.
  /// Throws std::invalid_argument for non-positive shapes or when the count
  /// exceeds kMaxVertices.
  static LocalPolytope enumerate(Shape shape);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return strategies_.size(); }
  const std::vector<Strategy>& strategies() const { return strategies_; }
  const std::vector<BehaviorTable>& vertices() const { return vertices_; }

  /// Table index of the single nonzero entry of vertex v in each setting
  /// block, ordered by setting pair.
  std::span<const std::size_t> support(std::size_t v) const {
    return {support_.data() + v * static_cast<std::size_t>(shape_.setting_pairs()),
            static_cast<std::size_t>(shape_.setting_pairs())};
  }

  /// sum_v weights[v] * vertex[v].
  BehaviorTable mixture(std::span<const double> weights) const;

 private:
  Shape shape_;
  std::vector<Strategy> strategies_;
  std::vector<BehaviorTable> vertices_;
  std::vector<std::size_t> support_;
};

/// Uniform distribution over the setting pairs of a shape.
std::vector<double> uniform_setting_weights(const Shape& shape);

/// sum_xy w(x,y) sum_ab P log2(P / Q), with 0 log 0 = 0. Returns +infinity
/// when P > 0 somewhere Q = 0. Throws std::invalid_argument on shape
/// mismatch or invalid weights.
double kl_divergence(const BehaviorTable& p, const BehaviorTable& q,
                     std::span<const double> setting_weights);

enum class KlMethod { ConditionalGradient, MultiplicativeWeights };

struct KlOptions {
  /// Empty means uniform.
  std::vector<double> setting_weights;
  double gap_tolerance = 1e-9;
  long max_iterations = 100'000;
  KlMethod method = KlMethod::ConditionalGradient;
  /// Conditional gradient only: when not converged after 2000 steps, settle
  /// local points with the membership LP and hand everything else to
  /// multiplicative updates. KlResult::method names the finishing solver.
  bool stall_fallback = true;
};

struct KlResult {
  double distance_bits = 0.0;
  /// Mixture weights over the vertices of the scenario's local polytope.
  std::vector<double> weights;
  /// Frank-Wolfe duality gap in bits; bounds distance_bits - optimum.
  double gap = 0.0;
  long iterations = 0;
  bool converged = false;
  KlMethod method = KlMethod::ConditionalGradient;
};

/// Minimum KL divergence from `p` to the local polytope, started from the
/// uniform mixture. The default method is pairwise conditional gradient with
/// exact line search. Non-convergence is reported through `converged` and
/// `gap`.
KlResult kl_to_local(const BehaviorTable& p, const KlOptions& options = {});

/// kl_to_local with multiplicative (EM-type) weight updates
/// w_v <- w_v * sum_xy w(x,y) P / Q at the support of v.
KlResult kl_to_local_multiplicative(const BehaviorTable& p, const KlOptions& options = {});

/// A linear inequality sum_i coefficients[i] * P[i] <= bound satisfied by
/// every local behavior.
struct SeparatingInequality {
  std::vector<double> coefficients;
  double bound = 0.0;

  double evaluate(const BehaviorTable& table) const;
  /// Largest value over the polytope's vertices.
  double local_maximum(const LocalPolytope& polytope) const;
};

struct MembershipResult {
  bool member = false;
  /// Minimum L1 distance from P to a vertex mixture.
  double l1_distance = 0.0;
  std::vector<double> weights;
  /// Dual solution: a violated inequality whenever l1_distance > 0.
  SeparatingInequality certificate;
  int pivots = 0;
};

/// LP: minimize |A w - P|_1 over mixtures w, solved with a dense simplex
/// (Bland's rule). P is local iff the optimum is within `tolerance`.
MembershipResult local_membership(const BehaviorTable& p, double tolerance = 1e-9);

struct KlOptimizeOptions {
  /// Fixed gamma; ignored when `global` is set.
  double gamma = 1.0;
  bool global = false;
  std::vector<double> setting_weights;
  /// Grid points per axis over (alpha2, beta1, beta2); alpha1 = 0.
  int grid_points = 10;
  int polish_starts = 4;
  NelderMeadOptions nelder_mead{0.1, 1e-7, 600};
  double search_gap_tolerance = 1e-11;
  /// Solver used inside the search; the reported optimum is re-solved with
  /// the default kl_to_local.
  KlMethod search_method = KlMethod::MultiplicativeWeights;
  double gamma_lo = 0.0;
  double gamma_hi = 1.5;
  int gamma_grid = 7;
  double gamma_tolerance = 1e-4;
};

struct KlOptimum {
  OptimizationResult result;
  CglmpPhases phases;
  double gamma = 1.0;
  KlResult solver;
};

/// Maximizes kl_to_local over the qutrit projector phases for a gamma-state,
/// and over gamma as well when `global` is set.
KlOptimum optimize_kl(const KlOptimizeOptions& options = {});

struct KlConvention {
  std::string name;
  double maximally_entangled_bits = 0.0;
  double global_bits = 0.0;
  double gamma = 0.0;
};

/// Repeats the gamma search under alternative ways of weighting the setting
/// pairs: uniform, unweighted sum, and the setting distribution that
/// maximizes the distance. Phases are taken from the uniform-weight optimum.
std::vector<KlConvention> kl_convention_sweep(const KlOptimizeOptions& options = {});

const char* to_string(KlMethod method);

}  // namespace nonlocality
