#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nonlocality/behavior.hpp"

namespace nonlocality {

/// P(a, b | x, y) = 1/2 when a xor b = x and y, else 0.
BehaviorTable pr_box_behavior();

/// Counts of sampled (x, y, a, b), laid out like a (2,2,2,2) BehaviorTable.
struct SampleLog {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::array<std::uint64_t, 16> counts{};
  std::string generator;
};

/// Samples per shard; shard s draws from RandomStream(seed, s).
inline constexpr std::uint64_t kPrBoxShardSize = 1 << 16;

/// n uses of the box with uniformly random inputs. Shards run in parallel
/// and their counts are added, so the log depends only on (seed, n).
/// Throws std::invalid_argument for n = 0.
SampleLog sample_pr_box(std::uint64_t seed, std::uint64_t n);

/// Conditional frequencies of a log. Throws std::invalid_argument when some
/// input pair was never drawn.
BehaviorTable empirical_behavior(const SampleLog& log);

/// chsh_of_behavior(empirical_behavior(log)).
double empirical_chsh(const SampleLog& log);

}  // namespace nonlocality
