#include "nonlocality/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nonlocality/chsh.hpp"
#include "nonlocality/nlb.hpp"
#include "nonlocality/random.hpp"
#include "nonlocality/serialize.hpp"

#ifndef NONLOCALITY_VERSION
#define NONLOCALITY_VERSION "unknown"
#endif

namespace nonlocality {

namespace {

constexpr double kPi = std::numbers::pi;

struct ClaimRule {
  const char* id;
  int criterion;
  const char* description;
  double tolerance;
  Comparison comparison;
};

// Default tolerances of every claim, in report order.
const std::vector<ClaimRule>& claim_rules() {
  static const std::vector<ClaimRule> rules{
      {"chsh.gisin_curve", 1, "max |optimized CHSH - 2 sqrt(1 + sin^2 2t)| on the theta grid", 1e-6,
       Comparison::Within},
      {"chsh.maximally_entangled", 1, "optimized CHSH at theta = pi/4", 1e-6, Comparison::Within},
      {"chsh.product_state", 1, "optimized CHSH at theta = 0", 1e-6, Comparison::Within},
      {"local.chsh_bound", 2, "CHSH max over 16 deterministic strategies", 0.0, Comparison::Within},
      {"local.cglmp_bound", 2, "CGLMP max over 81 deterministic strategies", 0.0, Comparison::Within},
      {"tsirelson.optimizer_ceiling", 3, "largest optimized CHSH on the theta grid", 1e-9,
       Comparison::AtMost},
      {"tsirelson.pr_box", 3, "CHSH of the PR box", 0.0, Comparison::Within},
      {"detection.small_theta", 4, "optimized critical efficiency at small theta", 0.01,
       Comparison::Within},
      {"detection.maximally_entangled", 4, "optimized critical efficiency at theta = pi/4", 1e-6,
       Comparison::Within},
      {"detection.monotone", 4, "grid steps where optimized efficiency fails to decrease with theta",
       0.0, Comparison::Within},
      {"detection.fixed_settings_minimum", 4,
       "theta minimizing the efficiency of CHSH-optimal settings", 1e-12, Comparison::Within},
      {"cglmp.maximally_entangled", 5, "CGLMP of the maximally entangled qutrits, standard phases",
       1e-5, Comparison::Within},
      {"cglmp.global_value", 5, "CGLMP maximized over gamma-states and phases", 1e-5,
       Comparison::Within},
      {"cglmp.global_gamma", 5, "gamma of the CGLMP optimum", 1e-3, Comparison::Within},
      {"kl.maximally_entangled", 6, "KL distance (bits), maximally entangled qutrits", 0.003,
       Comparison::Within},
      {"kl.global_value", 6, "KL distance (bits) maximized over gamma-states", 0.003,
       Comparison::Within},
      {"kl.global_gamma", 6, "gamma of the KL optimum", 0.02, Comparison::Within},
      {"hardy.certificate", 7, "max deviation of the Hardy certificate from (1/12, 0, 0, 0)", 1e-12,
       Comparison::AtMost},
      {"hardy.lhv_oracle", 7, "compatible LHV assignments with (a_x, b_x) = (-1, -1)", 0.0,
       Comparison::Within},
      {"hardy.exceptions", 7, "paradox certificates holding at theta in {0, pi/4}", 0.0,
       Comparison::Within},
      {"cross.cglmp_probabilities", 8, "closed-form vs Born-rule qutrit probabilities", 1e-10,
       Comparison::AtMost},
      {"cross.correlator", 8, "closed-form vs operator two-qubit correlator", 1e-10,
       Comparison::AtMost},
      {"cross.nonsignaling", 8, "largest signaling of the sampled quantum behaviors", 1e-10,
       Comparison::AtMost},
      {"cross.kl_solvers", 8, "conditional gradient vs multiplicative KL solver (bits)", 1e-7,
       Comparison::AtMost},
  };
  return rules;
}

const ClaimRule& rule_of(const std::string& id) {
  for (const auto& s : claim_rules()) {
    if (id == s.id) return s;
  }
  throw std::invalid_argument("unknown claim id: " + id);
}

class Group {
 public:
  Group(const ReproductionConfig& config) : config_(config) {}

  void add(const std::string& id, double reference, double computed,
           nlohmann::json details = nlohmann::json::object()) {
    const auto& rule = rule_of(id);
    ReportEntry e;
    e.claim = id;
    e.criterion = rule.criterion;
    e.description = rule.description;
    e.reference = reference;
    e.computed = computed;
    e.comparison = rule.comparison;
    e.tolerance = rule.tolerance;
    if (config_.profile == ToleranceProfile::Strict) e.tolerance *= 0.1;
    if (auto it = config_.tolerance_overrides.find(id); it != config_.tolerance_overrides.end()) {
      e.tolerance = it->second;
    }
    if (!std::isfinite(computed)) {
      e.pass = false;
    } else if (e.comparison == Comparison::Within) {
      e.pass = std::abs(computed - reference) <= e.tolerance;
    } else {
      e.pass = computed <= reference + e.tolerance;
    }
    e.details = std::move(details);
    entries.push_back(std::move(e));
  }

  // Records an exception as a failed entry for every claim of the group
  // not yet reported.
  void fail_remaining(int criterion, const std::string& message) {
    for (const auto& s : claim_rules()) {
      if (s.criterion != criterion) continue;
      const bool seen = std::any_of(entries.begin(), entries.end(),
                                    [&](const ReportEntry& e) { return e.claim == s.id; });
      if (!seen) add(s.id, 0.0, std::numeric_limits<double>::quiet_NaN(), {{"error", message}});
    }
  }

  std::vector<ReportEntry> entries;

 private:
  const ReproductionConfig& config_;
};

std::vector<double> inclusive_grid(double lo, double hi, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return grid;
}

BlochMeasurement random_direction(RandomStream& rng) {
  return BlochMeasurement::from_angles(std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(-kPi, kPi));
}

std::array<double, 3> random_schmidt(RandomStream& rng) {
  std::array<double, 3> c{};
  double norm = 0.0;
  for (auto& x : c) {
    x = rng.uniform();
    norm += x * x;
  }
  for (auto& x : c) x /= std::sqrt(norm);
  return c;
}

CglmpPhases random_phases(RandomStream& rng) {
  return {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
          rng.uniform(-kPi, kPi)};
}

// <psi| A (x) B |psi> with the Kronecker product written out.
double operator_expectation(const BipartitePureState& state, const BlochMeasurement& a,
                            const BlochMeasurement& b) {
  const Eigen::Matrix2cd oa = a.observable();
  const Eigen::Matrix2cd ob = b.observable();
  Eigen::Vector4cd psi;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) psi(2 * j + k) = state.amplitude(j, k);
  }
  Eigen::Matrix4cd kron;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) kron.block<2, 2>(2 * i, 2 * j) = oa(i, j) * ob;
  }
  return (psi.adjoint() * kron * psi).value().real();
}

void chsh_group(const ReproductionConfig& config, Group& g) {
  const auto grid = inclusive_grid(0.0, kPi / 4.0, std::max(2, config.chsh_grid));
  std::vector<double> optimized(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { optimized[i] = optimize_chsh(grid[i]).result.value; });
  double deviation = 0.0;
  double worst_theta = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = std::abs(optimized[i] - chsh_analytic_maximum(grid[i]));
    if (d > deviation) {
      deviation = d;
      worst_theta = grid[i];
    }
  }
  g.add("chsh.gisin_curve", 0.0, deviation,
        {{"grid_points", grid.size()}, {"worst_theta", round_significant(worst_theta)}});
  g.add("chsh.maximally_entangled", 2.0 * std::numbers::sqrt2, optimized.back());
  g.add("chsh.product_state", 2.0, optimized.front());
  g.add("tsirelson.optimizer_ceiling", 2.0 * std::numbers::sqrt2,
        *std::max_element(optimized.begin(), optimized.end()));
}

void local_group(const ReproductionConfig&, Group& g) {
  const auto chsh = chsh_local_extremes();
  g.add("local.chsh_bound", 2.0, chsh.maximum,
        {{"assignments", chsh.assignments}, {"minimum", chsh.minimum}});
  g.add("local.cglmp_bound", 2.0, cglmp_local_maximum(),
        {{"vertices", LocalPolytope::enumerate(kCglmpShape).size()}});
}

void tsirelson_group(const ReproductionConfig&, Group& g) {
  const auto box = pr_box_behavior();
  g.add("tsirelson.pr_box", 4.0, chsh_of_behavior(box),
        {{"nonsignaling", box.max_signaling() == 0.0}});
}

void detection_group(const ReproductionConfig& config, Group& g) {
  EfficiencyOptions options;
  options.seed = derive_seed(config.seed, 4);
  options.starts = config.efficiency_starts;

  const auto small = optimize_critical_efficiency(config.detection_small_theta, options);
  g.add("detection.small_theta", kSeparableLimitEfficiency, small.result.value,
        {{"theta", config.detection_small_theta},
         {"chsh", round_significant(small.chsh)},
         {"below_local_model_threshold", small.below_local_model_threshold}});

  const int n = std::max(2, config.detection_grid);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = kPi / 4.0 * (i + 1) / n;
  std::vector<double> eta(n);
  parallel_for(grid.size(),
               [&](std::size_t i) { eta[i] = optimize_critical_efficiency(grid[i], options).result.value; });

  g.add("detection.maximally_entangled", 2.0 / (1.0 + std::numbers::sqrt2), eta.back());

  int failures = 0;
  for (int i = 0; i + 1 < n; ++i) {
    if (!(eta[i] < eta[i + 1])) ++failures;
  }
  nlohmann::json curve = nlohmann::json::array();
  for (int i = 0; i < n; ++i) curve.push_back({round_significant(grid[i]), round_significant(eta[i])});
  g.add("detection.monotone", 0.0, failures, {{"curve", std::move(curve)}});

  double best_theta = grid.front();
  double best = 2.0;
  for (double theta : grid) {
    const double value = critical_efficiency_at(theta, chsh_optimal_settings(theta)).value_or(1.0);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
  }
  g.add("detection.fixed_settings_minimum", kPi / 4.0, best_theta,
        {{"minimum_efficiency", round_significant(best)}});
}

void cglmp_group(const ReproductionConfig& config, Group& g) {
  const CglmpScenario maximally_entangled(gamma_schmidt(1.0), standard_cglmp_phases());
  g.add("cglmp.maximally_entangled", 4.0 * (2.0 * std::sqrt(3.0) + 3.0) / 9.0,
        cglmp_value(cglmp_behavior(maximally_entangled)));

  const auto global = optimize_cglmp_state_and_settings(config.cglmp);
  nlohmann::json details{{"optimum", to_json(global.result)},
                         {"distinct_optima", global.distinct_optima.size()}};
  g.add("cglmp.global_value", 1.0 + std::sqrt(11.0 / 3.0), global.result.value, details);
  g.add("cglmp.global_gamma", (std::sqrt(11.0) - std::sqrt(3.0)) / 2.0, global.gamma);
}

nlohmann::json phases_json(const CglmpPhases& p) {
  return {round_significant(p.alpha1), round_significant(p.alpha2), round_significant(p.beta1),
          round_significant(p.beta2)};
}

void kl_group(const ReproductionConfig& config, Group& g) {
  auto options = config.kl;
  options.global = false;
  options.gamma = 1.0;
  const auto maximally_entangled = optimize_kl(options);
  options.global = true;
  const auto global = optimize_kl(options);

  const double margin = global.result.value - maximally_entangled.result.value;
  g.add("kl.maximally_entangled", 0.058, maximally_entangled.result.value,
        {{"phases", phases_json(maximally_entangled.phases)},
         {"solver_gap", round_significant(maximally_entangled.solver.gap)},
         {"solver", to_string(maximally_entangled.solver.method)}});
  g.add("kl.global_value", 0.077, global.result.value,
        {{"phases", phases_json(global.phases)},
         {"solver_gap", round_significant(global.solver.gap)},
         {"solver", to_string(global.solver.method)},
         {"margin_over_maximally_entangled", round_significant(margin)}});
  g.add("kl.global_gamma", 0.642, global.gamma);

  // A failing weighting convention is reported together with the alternatives.
  const auto first = g.entries.end() - 3;
  if (std::any_of(first, g.entries.end(), [](const ReportEntry& e) { return !e.pass; })) {
    nlohmann::json sweep = nlohmann::json::array();
    for (const auto& c : kl_convention_sweep(options)) {
      sweep.push_back({{"convention", c.name},
                       {"maximally_entangled_bits", round_significant(c.maximally_entangled_bits)},
                       {"global_bits", round_significant(c.global_bits)},
                       {"gamma", round_significant(c.gamma)}});
    }
    for (auto it = first; it != g.entries.end(); ++it) {
      if (!it->pass) it->details["convention_sweep"] = sweep;
    }
  }
}

void hardy_group(const ReproductionConfig& config, Group& g) {
  const auto c = hardy_certificate(make_hardy_state());
  const double deviation =
      std::max({std::abs(c.p_xx_mm - 1.0 / 12.0), c.p_xz_mm, c.p_zx_mm, c.p_zz_pp});
  g.add("hardy.certificate", 0.0, deviation,
        {{"p_xx_mm", round_significant(c.p_xx_mm)},
         {"p_xz_mm", round_significant(c.p_xz_mm)},
         {"p_zx_mm", round_significant(c.p_zx_mm)},
         {"p_zz_pp", round_significant(c.p_zz_pp)},
         {"holds", c.holds}});

  const auto proof = lhv_contradiction();
  g.add("hardy.lhv_oracle", 0.0, proof.with_xx_mm,
        {{"examined", proof.examined}, {"compatible", proof.compatible.size()}});

  int holding = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : hardy_scan({0.0, kPi / 4.0}, config.hardy)) {
    holding += row.fixed.holds + row.optimized.holds;
    rows.push_back({{"theta", round_significant(row.theta)},
                    {"fixed_holds", row.fixed.holds},
                    {"optimized_p_xx_mm", round_significant(row.optimized.p_xx_mm)},
                    {"optimized_holds", row.optimized.holds}});
  }
  g.add("hardy.exceptions", 0.0, holding, {{"rows", std::move(rows)}});
}

void cross_group(const ReproductionConfig& config, Group& g) {
  RandomStream rng(config.seed, 8);
  double signaling = 0.0;

  double cglmp_deviation = 0.0;
  for (int s = 0; s < config.cglmp_samples; ++s) {
    const CglmpScenario scenario(random_schmidt(rng), random_phases(rng));
    const auto table = cglmp_behavior(scenario);
    signaling = std::max(signaling, table.max_signaling());
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int delta = 0; delta < 3; ++delta) {
          const double pair = analytic_probability(scenario, j, k, delta);
          for (int b = 0; b < 3; ++b) {
            cglmp_deviation = std::max(cglmp_deviation, std::abs(table((b + delta) % 3, b, j, k) - pair));
          }
          cglmp_deviation =
              std::max(cglmp_deviation, std::abs(congruence_probability(table, j, k, delta) -
                                                 analytic_congruence_probability(scenario, j, k, delta)));
        }
      }
    }
  }
  g.add("cross.cglmp_probabilities", 0.0, cglmp_deviation, {{"samples", config.cglmp_samples}});

  double correlator_deviation = 0.0;
  for (int s = 0; s < config.correlator_samples; ++s) {
    const auto state = make_theta_state(rng.uniform(0.0, kPi / 4.0));
    ChshSettings settings{random_direction(rng), random_direction(rng), random_direction(rng),
                          random_direction(rng)};
    correlator_deviation =
        std::max(correlator_deviation, std::abs(correlator(state, settings.a1, settings.b1) -
                                                operator_expectation(state, settings.a1, settings.b1)));
    const auto a = settings.measurements_a();
    const auto b = settings.measurements_b();
    signaling = std::max(signaling, behavior(state, a, b).max_signaling());
  }
  g.add("cross.correlator", 0.0, correlator_deviation, {{"samples", config.correlator_samples}});
  g.add("cross.nonsignaling", 0.0, signaling,
        {{"behaviors", config.cglmp_samples + config.correlator_samples}});

  // Nonlocal points: the membership LP must reject them.
  double solver_deviation = 0.0;
  int drawn = 0;
  int accepted = 0;
  bool all_converged = true;
  KlOptions cg;
  cg.gap_tolerance = 1e-10;
  cg.stall_fallback = false;
  KlOptions mw = cg;
  mw.method = KlMethod::MultiplicativeWeights;
  while (accepted < config.kl_samples && drawn < 100 * std::max(1, config.kl_samples)) {
    ++drawn;
    const auto table = cglmp_behavior(CglmpScenario(random_schmidt(rng), random_phases(rng)));
    if (local_membership(table).member) continue;
    ++accepted;
    const auto first = kl_to_local(table, cg);
    const auto second = kl_to_local(table, mw);
    all_converged = all_converged && first.converged && second.converged;
    solver_deviation = std::max(solver_deviation, std::abs(first.distance_bits - second.distance_bits));
  }
  if (accepted < config.kl_samples) solver_deviation = std::numeric_limits<double>::infinity();
  g.add("cross.kl_solvers", 0.0, solver_deviation,
        {{"points", accepted}, {"drawn", drawn}, {"all_converged", all_converged}});
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

const char* to_string(Comparison c) { return c == Comparison::Within ? "within" : "at_most"; }

template <class T>
T required(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument("config: bad value for '" + key + "'");
  }
}

int positive(const nlohmann::json& j, const std::string& key) {
  const int v = required<int>(j, key);
  if (v < 1) throw std::invalid_argument("config: '" + key + "' must be positive");
  return v;
}

}  // namespace

const char* library_version() { return NONLOCALITY_VERSION; }

std::optional<ToleranceProfile> parse_tolerance_profile(std::string_view name) {
  if (name == "default") return ToleranceProfile::Default;
  if (name == "strict") return ToleranceProfile::Strict;
  return std::nullopt;
}

const char* to_string(ToleranceProfile profile) {
  return profile == ToleranceProfile::Strict ? "strict" : "default";
}

ReproductionConfig config_from_json(const nlohmann::json& j, ReproductionConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      c.seed = required<std::uint64_t>(j, key);
    } else if (key == "tolerance_profile") {
      const auto profile = parse_tolerance_profile(required<std::string>(j, key));
      if (!profile) throw std::invalid_argument("config: tolerance_profile must be strict or default");
      c.profile = *profile;
    } else if (key == "tolerances") {
      if (!value.is_object()) throw std::invalid_argument("config: 'tolerances' must be an object");
      for (const auto& [claim, tolerance] : value.items()) {
        rule_of(claim);
        if (!tolerance.is_number() || tolerance.get<double>() < 0.0) {
          throw std::invalid_argument("config: tolerance for '" + claim + "' must be >= 0");
        }
        c.tolerance_overrides[claim] = tolerance.get<double>();
      }
    } else if (key == "chsh_grid") {
      c.chsh_grid = positive(j, key);
    } else if (key == "detection_grid") {
      c.detection_grid = positive(j, key);
    } else if (key == "cglmp_samples") {
      c.cglmp_samples = positive(j, key);
    } else if (key == "correlator_samples") {
      c.correlator_samples = positive(j, key);
    } else if (key == "kl_samples") {
      c.kl_samples = positive(j, key);
    } else if (key == "cglmp_grid_points") {
      c.cglmp.grid_points = positive(j, key);
    } else if (key == "cglmp_gamma_grid") {
      c.cglmp.gamma_grid = positive(j, key);
    } else if (key == "kl_grid_points") {
      c.kl.grid_points = positive(j, key);
    } else if (key == "kl_gamma_grid") {
      c.kl.gamma_grid = positive(j, key);
    } else if (key == "efficiency_starts") {
      c.efficiency_starts = positive(j, key);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return c;
}

ReproductionConfig load_config(const std::filesystem::path& path, ReproductionConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return config_from_json(j, std::move(base));
}

bool ReproductionReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.pass; });
}

bool ReproductionReport::criterion_passed(int criterion) const {
  return std::all_of(entries.begin(), entries.end(), [&](const ReportEntry& e) {
    return e.criterion != criterion || e.pass;
  });
}

std::vector<int> ReproductionReport::criteria() const {
  std::set<int> seen;
  for (const auto& e : entries) seen.insert(e.criterion);
  return {seen.begin(), seen.end()};
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& s : claim_rules()) out.emplace_back(s.id);
    return out;
  }();
  return ids;
}

ReproductionReport reproduce_all(const ReproductionConfig& config) {
  using Runner = void (*)(const ReproductionConfig&, Group&);
  const std::vector<std::pair<int, Runner>> groups{
      {1, chsh_group},  {2, local_group}, {3, tsirelson_group}, {4, detection_group},
      {5, cglmp_group}, {6, kl_group},    {7, hardy_group},     {8, cross_group}};

  std::vector<Group> results(groups.size(), Group(config));
  std::vector<double> seconds(groups.size());
  parallel_for(groups.size(), [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    try {
      groups[i].second(config, results[i]);
    } catch (const std::exception& e) {
      results[i].fail_remaining(groups[i].first, e.what());
    }
    seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  ReproductionReport report;
  report.version = library_version();
  report.seed = config.seed;
  report.profile = config.profile;
  if (config.timestamp) report.timestamp = utc_timestamp();
  // Claims are listed in their fixed order, whichever group produced them.
  for (const auto& id : claim_ids()) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (auto& e : results[i].entries) {
        if (e.claim != id) continue;
        e.runtime_seconds = seconds[i];
        report.entries.push_back(e);
      }
    }
  }
  return report;
}

nlohmann::json to_json(const ReproductionReport& report, bool timing) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    nlohmann::json j{{"claim", e.claim},
                     {"criterion", e.criterion},
                     {"description", e.description},
                     {"reference", round_significant(e.reference)},
                     {"computed", std::isfinite(e.computed) ? nlohmann::json(round_significant(e.computed))
                                                            : nlohmann::json(nullptr)},
                     {"tolerance", round_significant(e.tolerance)},
                     {"comparison", to_string(e.comparison)},
                     {"pass", e.pass},
                     {"details", e.details}};
    if (timing) j["runtime_seconds"] = round_significant(e.runtime_seconds, 3);
    entries.push_back(std::move(j));
  }
  nlohmann::json criteria = nlohmann::json::object();
  for (int c : report.criteria()) criteria[std::to_string(c)] = report.criterion_passed(c);
  nlohmann::json metadata{{"version", report.version},
                          {"seed", report.seed},
                          {"tolerance_profile", to_string(report.profile)},
                          {"generator", std::string(kGeneratorName)}};
  if (!report.timestamp.empty()) metadata["timestamp"] = report.timestamp;
  return {{"schema", "reproduction_report"},
          {"schema_version", kSchemaVersion},
          {"metadata", std::move(metadata)},
          {"criteria", std::move(criteria)},
          {"entries", std::move(entries)},
          {"passed", report.passed()}};
}

std::string to_table(const ReproductionReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-2s %-34s %-18s %-18s %-10s %s\n", "#", "claim", "reference",
                "computed", "tolerance", "result");
  out << line;
  for (const auto& e : report.entries) {
    std::snprintf(line, sizeof line, "%-2d %-34s %-18.12g %-18.12g %-10.3g %s\n", e.criterion,
                  e.claim.c_str(), e.reference, e.computed, e.tolerance, e.pass ? "PASS" : "FAIL");
    out << line;
  }
  out << (report.passed() ? "all claims passed\n" : "some claims failed\n");
  return out.str();
}

}  // namespace nonlocality
