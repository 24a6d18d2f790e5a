#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nonlocality/cglmp.hpp"
#include "nonlocality/detection.hpp"
#include "nonlocality/hardy.hpp"
#include "nonlocality/polytope.hpp"

namespace nonlocality {

const char* library_version();

/// Strict divides every nonzero tolerance by ten.
enum class ToleranceProfile { Default, Strict };

std::optional<ToleranceProfile> parse_tolerance_profile(std::string_view name);
const char* to_string(ToleranceProfile profile);

struct ReproductionConfig {
  std::uint64_t seed = 2007;
  ToleranceProfile profile = ToleranceProfile::Default;
  /// Replaces the tolerance of the named claims; applied after the profile.
  std::map<std::string, double> tolerance_overrides;

  int chsh_grid = 50;
  int detection_grid = 20;
  double detection_small_theta = 0.02;
  int cglmp_samples = 500;
  int correlator_samples = 1000;
  int kl_samples = 50;
  CglmpOptions cglmp;
  KlOptimizeOptions kl;
  int efficiency_starts = 32;
  HardyOptions hardy;
  /// Emit a timestamp in the report metadata.
  bool timestamp = true;
};

/// Overlays the keys of a JSON object on `base`. Recognized keys: seed,
/// tolerance_profile, tolerances (claim -> value), chsh_grid,
/// detection_grid, cglmp_samples, correlator_samples, kl_samples,
/// cglmp_grid_points, cglmp_gamma_grid, kl_grid_points, kl_gamma_grid,
/// efficiency_starts. Throws std::invalid_argument on unknown keys, bad
/// types or unknown claim ids.
ReproductionConfig config_from_json(const nlohmann::json& j, ReproductionConfig base = {});

/// Reads and parses a JSON config file.
ReproductionConfig load_config(const std::filesystem::path& path, ReproductionConfig base = {});

enum class Comparison {
  Within,  ///< |computed - reference| <= tolerance
  AtMost,  ///< computed <= reference + tolerance
};

struct ReportEntry {
  std::string claim;
  int criterion = 0;
  std::string description;
  double reference = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::Within;
  bool pass = false;
  double runtime_seconds = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

struct ReproductionReport {
  std::vector<ReportEntry> entries;
  std::string version;
  std::uint64_t seed = 0;
  ToleranceProfile profile = ToleranceProfile::Default;
  /// ISO 8601 UTC; empty when disabled.
  std::string timestamp;

  bool passed() const;
  bool criterion_passed(int criterion) const;
  std::vector<int> criteria() const;
};

/// Every claim id, in report order.
const std::vector<std::string>& claim_ids();

/// Runs all eight groups of checks. Failures are recorded, not thrown.
ReproductionReport reproduce_all(const ReproductionConfig& config = {});

/// Stable JSON: keys sorted, reals at 12 significant digits. Runtimes only
/// when `timing` is set.
nlohmann::json to_json(const ReproductionReport& report, bool timing = false);

/// One line per claim.
std::string to_table(const ReproductionReport& report);

}  // namespace nonlocality
