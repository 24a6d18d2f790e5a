#include "nonlocality/nlb.hpp"

#include <stdexcept>
#include <vector>

#include "nonlocality/chsh.hpp"
#include "nonlocality/optimize.hpp"
#include "nonlocality/random.hpp"

namespace nonlocality {

BehaviorTable pr_box_behavior() {
  std::vector<double> table(kChshShape.size(), 0.0);
  const auto layout = BehaviorTable::uniform(kChshShape);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < 2; ++a) table[layout.index(a, a ^ (x & y), x, y)] = 0.5;
    }
  }
  return BehaviorTable(kChshShape, std::move(table));
}

SampleLog sample_pr_box(std::uint64_t seed, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sample_pr_box: n must be positive");
  const std::uint64_t shards = (n + kPrBoxShardSize - 1) / kPrBoxShardSize;
  std::vector<std::array<std::uint64_t, 16>> partial(shards);
  parallel_for(shards, [&](std::size_t s) {
    RandomStream rng(seed, s);
    const std::uint64_t begin = s * kPrBoxShardSize;
    const std::uint64_t end = std::min(n, begin + kPrBoxShardSize);
    auto& counts = partial[s];
    counts.fill(0);
    for (std::uint64_t i = begin; i < end; ++i) {
      const int x = rng.bit();
      const int y = rng.bit();
      const int a = rng.bit();
      const int b = a ^ (x & y);
      ++counts[((x * 2 + y) * 2 + a) * 2 + b];
    }
  });
  SampleLog log;
  log.seed = seed;
  log.n = n;
  log.generator = std::string(kGeneratorName);
  for (const auto& counts : partial) {
    for (std::size_t k = 0; k < counts.size(); ++k) log.counts[k] += counts[k];
  }
  return log;
}

BehaviorTable empirical_behavior(const SampleLog& log) {
  std::vector<double> table(16);
  for (int block = 0; block < 4; ++block) {
    std::uint64_t total = 0;
    for (int k = 0; k < 4; ++k) total += log.counts[block * 4 + k];
    if (total == 0) throw std::invalid_argument("empirical_behavior: an input pair was never drawn");
    for (int k = 0; k < 4; ++k) {
      table[block * 4 + k] = static_cast<double>(log.counts[block * 4 + k]) / total;
    }
  }
  return BehaviorTable(kChshShape, std::move(table));
}

double empirical_chsh(const SampleLog& log) { return chsh_of_behavior(empirical_behavior(log)); }

}  // namespace nonlocality
