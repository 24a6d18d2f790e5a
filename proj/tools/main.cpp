// nonlocality: command-line front end of the nonlocality library.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nonlocality/cglmp.hpp"
#include "nonlocality/chsh.hpp"
#include "nonlocality/detection.hpp"
#include "nonlocality/hardy.hpp"
#include "nonlocality/nlb.hpp"
#include "nonlocality/polytope.hpp"
#include "nonlocality/report.hpp"
#include "nonlocality/serialize.hpp"
#include "nonlocality/state.hpp"

namespace nl = nonlocality;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Globals {
  std::uint64_t seed = 2007;
  std::string out;
  std::string format = "json";
  std::string profile = "default";
};

// Rows of a CSV table; reals at 12 significant digits.
class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << cells[i];
    text_ << '\n';
  }

  std::string str() const { return text_.str(); }

 private:
  std::ostringstream text_;
};

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

std::string flag(bool b) { return b ? "true" : "false"; }

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out);
  if (!file) throw std::runtime_error("cannot write " + g.out);
  file << text;
}

void emit(const Globals& g, const json& document, const std::string& csv) {
  emit(g, g.format == "csv" ? csv : document.dump(2) + "\n");
}

json phases_json(const nl::CglmpPhases& p) {
  return {{"alpha1", nl::round_significant(p.alpha1)},
          {"alpha2", nl::round_significant(p.alpha2)},
          {"beta1", nl::round_significant(p.beta1)},
          {"beta2", nl::round_significant(p.beta2)}};
}

json certificate_json(const nl::HardyCertificate& c) {
  return {{"p_xx_mm", nl::round_significant(c.p_xx_mm)},
          {"p_xz_mm", nl::round_significant(c.p_xz_mm)},
          {"p_zx_mm", nl::round_significant(c.p_zx_mm)},
          {"p_zz_pp", nl::round_significant(c.p_zz_pp)},
          {"holds", c.holds}};
}

json bloch_json(const nl::BlochMeasurement& m) {
  return {nl::round_significant(m.nx()), nl::round_significant(m.ny()), nl::round_significant(m.nz())};
}

json document(const char* schema) {
  return {{"schema", schema}, {"schema_version", nl::kSchemaVersion}, {"version", nl::library_version()}};
}

int chsh_scan(const Globals& g, double theta_min, double theta_max, int steps) {
  auto doc = document("chsh_scan");
  Csv csv({"theta", "analytic", "optimized", "entropy_bits"});
  json rows = json::array();
  for (int i = 0; i < steps; ++i) {
    const double theta = steps == 1 ? theta_min : theta_min + (theta_max - theta_min) * i / (steps - 1);
    const auto opt = nl::optimize_chsh(theta);
    const double analytic = nl::chsh_analytic_maximum(theta);
    const double entropy = nl::entanglement_entropy(nl::make_theta_state(theta));
    rows.push_back({{"theta", nl::round_significant(theta)},
                    {"analytic", nl::round_significant(analytic)},
                    {"optimized", nl::round_significant(opt.result.value)},
                    {"entropy_bits", nl::round_significant(entropy)},
                    {"settings", nl::to_json(opt.settings)}});
    csv.row({num(theta), num(analytic), num(opt.result.value), num(entropy)});
  }
  doc["rows"] = std::move(rows);
  emit(g, doc, csv.str());
  return 0;
}

int detection_scan(const Globals& g, int steps, int starts) {
  nl::EfficiencyOptions options;
  options.seed = g.seed;
  options.starts = starts;
  auto doc = document("detection_scan");
  doc["seed"] = g.seed;
  Csv csv({"theta", "eta_c_chsh_optimal", "eta_c_optimized", "chsh_at_optimal_eta_settings"});
  json rows = json::array();
  for (int i = 1; i <= steps; ++i) {
    const double theta = kPi / 4.0 * i / steps;
    const auto opt = nl::optimize_critical_efficiency(theta, options);
    rows.push_back({{"theta", nl::round_significant(theta)},
                    {"eta_c_chsh_optimal", nl::round_significant(opt.chsh_optimal_efficiency)},
                    {"eta_c_optimized", nl::round_significant(opt.result.value)},
                    {"chsh_at_optimal_eta_settings", nl::round_significant(opt.chsh)},
                    {"below_local_model_threshold", opt.below_local_model_threshold},
                    {"settings", nl::to_json(opt.settings)}});
    csv.row({num(theta), num(opt.chsh_optimal_efficiency), num(opt.result.value), num(opt.chsh)});
  }
  doc["rows"] = std::move(rows);
  emit(g, doc, csv.str());
  return 0;
}

int cglmp_opt(const Globals& g, double gamma, bool global) {
  const auto opt = global ? nl::optimize_cglmp_state_and_settings()
                          : nl::optimize_cglmp(nl::gamma_schmidt(gamma));
  const double reported_gamma = global ? opt.gamma : gamma;
  const double entropy = nl::entanglement_entropy(nl::make_schmidt_state(opt.schmidt));
  auto doc = document("cglmp_opt");
  doc["value"] = nl::round_significant(opt.result.value);
  doc["entropy_bits"] = nl::round_significant(entropy);
  doc["gamma"] = nl::round_significant(reported_gamma);
  doc["phases"] = phases_json(opt.phases);
  doc["schmidt"] = {nl::round_significant(opt.schmidt[0]), nl::round_significant(opt.schmidt[1]),
                    nl::round_significant(opt.schmidt[2])};
  doc["distinct_optima"] = opt.distinct_optima.size();
  doc["search"] = nl::to_json(opt.result);
  Csv csv({"gamma", "value", "entropy_bits", "alpha1", "alpha2", "beta1", "beta2"});
  csv.row({num(reported_gamma), num(opt.result.value), num(entropy), num(opt.phases.alpha1),
           num(opt.phases.alpha2), num(opt.phases.beta1), num(opt.phases.beta2)});
  emit(g, doc, csv.str());
  return 0;
}

int kl_opt(const Globals& g, double gamma, bool global, bool sweep) {
  nl::KlOptimizeOptions options;
  options.gamma = gamma;
  options.global = global;
  const auto opt = nl::optimize_kl(options);
  auto doc = document("kl_opt");
  doc["distance_bits"] = nl::round_significant(opt.result.value);
  doc["gamma"] = nl::round_significant(opt.gamma);
  doc["phases"] = phases_json(opt.phases);
  doc["solver_gap"] = nl::round_significant(opt.solver.gap);
  doc["iterations"] = opt.solver.iterations;
  doc["solver"] = nl::to_string(opt.solver.method);
  Csv csv({"gamma", "distance_bits", "alpha1", "alpha2", "beta1", "beta2", "solver_gap"});
  csv.row({num(opt.gamma), num(opt.result.value), num(opt.phases.alpha1), num(opt.phases.alpha2),
           num(opt.phases.beta1), num(opt.phases.beta2), num(opt.solver.gap)});
  if (sweep) {
    json conventions = json::array();
    for (const auto& c : nl::kl_convention_sweep(options)) {
      conventions.push_back({{"convention", c.name},
                             {"maximally_entangled_bits", nl::round_significant(c.maximally_entangled_bits)},
                             {"global_bits", nl::round_significant(c.global_bits)},
                             {"gamma", nl::round_significant(c.gamma)}});
    }
    doc["convention_sweep"] = std::move(conventions);
  }
  emit(g, doc, csv.str());
  return 0;
}

int hardy(const Globals& g, const std::string& state_name, double theta, int scan) {
  if (scan > 0) {
    std::vector<double> grid;
    for (int i = 0; i < scan; ++i) grid.push_back(scan == 1 ? 0.0 : kPi / 4.0 * i / (scan - 1));
    auto doc = document("hardy_scan");
    Csv csv({"theta", "holds", "p_xx_mm", "fixed_holds", "fixed_p_xx_mm"});
    json rows = json::array();
    for (const auto& row : nl::hardy_scan(grid)) {
      rows.push_back({{"theta", nl::round_significant(row.theta)},
                      {"optimized", certificate_json(row.optimized)},
                      {"fixed", certificate_json(row.fixed)}});
      csv.row({num(row.theta), flag(row.optimized.holds), num(row.optimized.p_xx_mm),
               flag(row.fixed.holds), num(row.fixed.p_xx_mm)});
    }
    doc["rows"] = std::move(rows);
    emit(g, doc, csv.str());
    return 0;
  }

  const bool use_theta = std::isfinite(theta);
  if (!use_theta && state_name != "hardy") throw CLI::ValidationError("--state", "only 'hardy' is known");
  const auto state = use_theta ? nl::make_theta_state(theta) : nl::make_hardy_state();
  const auto fixed = nl::hardy_certificate(state);
  const auto optimized = nl::max_hardy_probability(state);
  const auto proof = nl::lhv_contradiction();
  auto doc = document("hardy_certificate");
  doc["state"] = nl::to_json(state);
  doc["certificate"] = certificate_json(fixed);
  doc["optimized"] = {{"certificate", certificate_json(optimized.certificate)},
                      {"a_x", bloch_json(optimized.measurements.a_x)},
                      {"a_z", bloch_json(optimized.measurements.a_z)},
                      {"b_x", bloch_json(optimized.measurements.b_x)},
                      {"b_z", bloch_json(optimized.measurements.b_z)}};
  doc["lhv"] = {{"examined", proof.examined},
                {"compatible", proof.compatible.size()},
                {"with_xx_mm", proof.with_xx_mm},
                {"contradiction", proof.contradiction}};
  Csv csv({"p_xx_mm", "p_xz_mm", "p_zx_mm", "p_zz_pp", "holds", "optimized_p_xx_mm"});
  csv.row({num(fixed.p_xx_mm), num(fixed.p_xz_mm), num(fixed.p_zx_mm), num(fixed.p_zz_pp),
           flag(fixed.holds), num(optimized.certificate.p_xx_mm)});
  emit(g, doc, csv.str());
  return 0;
}

int prbox(const Globals& g, std::uint64_t samples) {
  auto doc = document("prbox");
  doc["seed"] = g.seed;
  Csv csv({"x", "y", "a", "b", "probability"});
  const auto log = samples > 0 ? nl::sample_pr_box(g.seed, samples) : nl::SampleLog{};
  const auto table = samples > 0 ? nl::empirical_behavior(log) : nl::pr_box_behavior();
  doc["chsh"] = nl::round_significant(nl::chsh_of_behavior(table));
  if (samples > 0) {
    doc["n"] = samples;
    doc["generator"] = log.generator;
    doc["counts"] = log.counts;
    doc["empirical_table"] = nl::to_json(table);
  } else {
    doc["table"] = nl::to_json(table);
  }
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          csv.row({std::to_string(x), std::to_string(y), std::to_string(a), std::to_string(b),
                   num(table(a, b, x, y))});
        }
      }
    }
  }
  emit(g, doc, csv.str());
  return 0;
}

nl::Shape parse_shape(const std::string& text) {
  std::vector<int> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) parts.push_back(std::stoi(item));
  if (parts.size() != 4) throw CLI::ValidationError("--shape", "expected sa,sb,oa,ob");
  return {parts[0], parts[1], parts[2], parts[3]};
}

int polytope_vertices(const Globals& g, const std::string& shape_text) {
  const auto polytope = nl::LocalPolytope::enumerate(parse_shape(shape_text));
  const auto& shape = polytope.shape();
  std::vector<std::string> header{"vertex"};
  for (int x = 0; x < shape.settings_a; ++x) header.push_back("a" + std::to_string(x));
  for (int y = 0; y < shape.settings_b; ++y) header.push_back("b" + std::to_string(y));
  for (int x = 0; x < shape.settings_a; ++x) {
    for (int y = 0; y < shape.settings_b; ++y) {
      for (int a = 0; a < shape.outcomes_a; ++a) {
        for (int b = 0; b < shape.outcomes_b; ++b) {
          header.push_back("p" + std::to_string(a) + std::to_string(b) + "|" + std::to_string(x) +
                           std::to_string(y));
        }
      }
    }
  }
  Csv csv(header);
  json vertices = json::array();
  for (std::size_t v = 0; v < polytope.size(); ++v) {
    const auto& s = polytope.strategies()[v];
    std::vector<std::string> row{std::to_string(v)};
    for (int o : s.outputs_a) row.push_back(std::to_string(o));
    for (int o : s.outputs_b) row.push_back(std::to_string(o));
    for (double p : polytope.vertices()[v].values()) row.push_back(num(p));
    csv.row(row);
    vertices.push_back({{"outputs_a", s.outputs_a}, {"outputs_b", s.outputs_b}});
  }
  auto doc = document("polytope_vertices");
  doc["shape"] = {shape.settings_a, shape.settings_b, shape.outcomes_a, shape.outcomes_b};
  doc["count"] = polytope.size();
  doc["layout"] = "x,y,a,b";
  doc["vertices"] = std::move(vertices);
  emit(g, doc, csv.str());
  return 0;
}

int reproduce(const Globals& g, const std::string& config_path, bool seed_given, bool profile_given,
              bool timing, bool no_timestamp) {
  nl::ReproductionConfig config;
  try {
    if (!config_path.empty()) config = nl::load_config(config_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  // Flags win over the config file.
  if (seed_given || config_path.empty()) config.seed = g.seed;
  if (profile_given || config_path.empty()) config.profile = *nl::parse_tolerance_profile(g.profile);
  config.timestamp = !no_timestamp;

  const auto report = nl::reproduce_all(config);
  Csv csv({"criterion", "claim", "reference", "computed", "tolerance", "comparison", "pass"});
  for (const auto& e : report.entries) {
    csv.row({std::to_string(e.criterion), e.claim, num(e.reference), num(e.computed),
             num(e.tolerance), e.comparison == nl::Comparison::Within ? "within" : "at_most",
             flag(e.pass)});
  }
  emit(g, nl::to_json(report, timing), csv.str());
  std::cerr << nl::to_table(report);
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell nonlocality measures: CHSH, detection efficiency, CGLMP, KL distance, Hardy, PR box"};
  app.set_version_flag("--version", nl::library_version());
  app.require_subcommand(1);
  // Global flags are accepted after the subcommand too.
  app.fallthrough();

  Globals g;
  auto* seed_option = app.add_option("--seed", g.seed, "Root seed for all stochastic steps");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  auto* profile_option = app.add_option("--tolerance-profile", g.profile, "Tolerance profile")
                             ->check(CLI::IsMember({"strict", "default"}));

  double theta_min = 0.0;
  double theta_max = kPi / 4.0;
  int chsh_steps = 50;
  auto* chsh = app.add_subcommand("chsh-scan", "Optimized CHSH over a theta grid");
  chsh->add_option("--theta-min", theta_min, "First theta")->check(CLI::Range(0.0, kPi / 4.0));
  chsh->add_option("--theta-max", theta_max, "Last theta")->check(CLI::Range(0.0, kPi / 4.0));
  chsh->add_option("--steps", chsh_steps, "Grid points")->check(CLI::PositiveNumber);

  int detection_steps = 20;
  int detection_starts = 32;
  auto* detection = app.add_subcommand("detection-scan", "Optimized critical efficiency over (0, pi/4]");
  detection->add_option("--steps", detection_steps, "Grid points")->check(CLI::PositiveNumber);
  detection->add_option("--starts", detection_starts, "Nelder-Mead starts per point")
      ->check(CLI::PositiveNumber);

  double cglmp_gamma = 1.0;
  bool cglmp_global = false;
  bool cglmp_max_ent = false;
  auto* cglmp = app.add_subcommand("cglmp-opt", "Maximize CGLMP over phases (and gamma)");
  auto* cglmp_gamma_option =
      cglmp->add_option("--gamma", cglmp_gamma, "Fixed gamma")->check(CLI::NonNegativeNumber);
  auto* cglmp_max_ent_option =
      cglmp->add_flag("--max-ent", cglmp_max_ent, "Maximally entangled state (gamma = 1)")
          ->excludes(cglmp_gamma_option);
  cglmp->add_flag("--global", cglmp_global, "Optimize gamma as well")
      ->excludes(cglmp_gamma_option)
      ->excludes(cglmp_max_ent_option);

  double kl_gamma = 1.0;
  bool kl_global = false;
  bool kl_sweep = false;
  auto* kl = app.add_subcommand("kl-opt", "Maximize the KL distance to the local polytope");
  auto* kl_gamma_option = kl->add_option("--gamma", kl_gamma, "Fixed gamma")->check(CLI::NonNegativeNumber);
  kl->add_flag("--global", kl_global, "Optimize gamma as well")->excludes(kl_gamma_option);
  kl->add_flag("--sweep", kl_sweep, "Also report alternative setting weightings");

  std::string hardy_state = "hardy";
  double hardy_theta = std::nan("");
  int hardy_points = 0;
  auto* hardy_cmd = app.add_subcommand("hardy", "Hardy certificates and scans");
  auto* state_option = hardy_cmd->add_option("--state", hardy_state, "Named state")
                           ->check(CLI::IsMember({"hardy"}));
  auto* theta_option = hardy_cmd->add_option("--theta", hardy_theta, "theta-state")
                           ->check(CLI::Range(0.0, kPi / 4.0))
                           ->excludes(state_option);
  hardy_cmd->add_option("--scan", hardy_points, "Scan N theta points on [0, pi/4]")
      ->check(CLI::PositiveNumber)
      ->excludes(state_option)
      ->excludes(theta_option);

  std::uint64_t prbox_samples = 0;
  auto* prbox_cmd = app.add_subcommand("prbox", "PR box table or sampled frequencies");
  prbox_cmd->add_option("--sample", prbox_samples, "Number of samples (0 = exact table)");

  std::string shape = "2,2,2,2";
  auto* polytope = app.add_subcommand("polytope", "Local polytope utilities");
  polytope->require_subcommand(1);
  auto* vertices = polytope->add_subcommand("vertices", "Deterministic vertices");
  vertices->add_option("--shape", shape, "settings_a,settings_b,outcomes_a,outcomes_b");

  std::string config_path;
  bool timing = false;
  bool no_timestamp = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce-all", "Run every reproduction check");
  reproduce_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  reproduce_cmd->add_flag("--timing", timing, "Include runtimes in the JSON report");
  reproduce_cmd->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp");

  CLI11_PARSE(app, argc, argv);

  try {
    if (chsh->parsed()) return chsh_scan(g, theta_min, theta_max, chsh_steps);
    if (detection->parsed()) return detection_scan(g, detection_steps, detection_starts);
    if (cglmp->parsed()) return cglmp_opt(g, cglmp_max_ent ? 1.0 : cglmp_gamma, cglmp_global);
    if (kl->parsed()) return kl_opt(g, kl_gamma, kl_global, kl_sweep);
    if (hardy_cmd->parsed()) return hardy(g, hardy_state, hardy_theta, hardy_points);
    if (prbox_cmd->parsed()) return prbox(g, prbox_samples);
    if (vertices->parsed()) return polytope_vertices(g, shape);
    if (reproduce_cmd->parsed()) {
      return reproduce(g, config_path, seed_option->count() > 0, profile_option->count() > 0, timing,
                       no_timestamp);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
