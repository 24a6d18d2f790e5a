#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nonlocality {

/// Outcome of any of the library's searches.
struct OptimizationResult {
  double value = 0.0;
  std::vector<double> parameters;
  std::vector<std::string> parameter_names;
  int iterations = 0;
  long evaluations = 0;
  /// Simplex diameter, bracket width or solver duality gap, depending on the search.
  double gap = 0.0;
  int best_start = -1;
  int starts = 0;
  std::uint64_t seed = 0;
};

struct NelderMeadOptions {
  double initial_step = 0.1;
  double diameter_tolerance = 1e-9;
  int max_iterations = 2000;
};

struct NelderMeadResult {
  std::vector<double> point;
  double value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  double diameter = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes `f` from `start` with the standard reflection / expansion /
/// contraction / shrink moves. Stops when the simplex diameter (max distance
/// from the best vertex) falls below the tolerance or after max_iterations.
NelderMeadResult nelder_mead(const Objective& f, std::span<const double> start,
                             const NelderMeadOptions& options = {});

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  double bracket = 0.0;
};

/// Maximizes a unimodal function on [lo, hi].
GoldenSectionResult golden_section_maximize(const std::function<double(double)>& f, double lo,
                                            double hi, double tolerance = 1e-8,
                                            int max_iterations = 200);

/// Runs `fn(i)` for i in [0, n) on up to hardware_concurrency threads.
/// Results are written by index, so callers get the same output for any
/// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

}  // namespace nonlocality
