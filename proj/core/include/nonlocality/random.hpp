#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nonlocality {

/// Name recorded in output metadata.
inline constexpr std::string_view kGeneratorName = "mt19937_64/splitmix64-streams";

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `stream` under the root seed `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Portable random stream. std::mt19937_64 output is fixed by the standard;
/// the conversions below avoid the implementation-defined distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform bit.
  int bit() { return static_cast<int>(engine_() >> 63); }

  /// Uniform integer in [0, n), n > 0; rejection removes modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal by Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace nonlocality
