#pragma once

// Seeded random generating sets for the bench harness and property tests.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "onefac/error.hpp"
#include "onefac/group.hpp"

namespace onefac {

struct SamplerOptions {
  std::size_t max_size = 5;
  std::size_t max_attempts = 10000;
};

// One independent stream per (seed, group, trial) so cases can be replayed or
// evaluated in any order.
inline std::mt19937_64 case_rng(std::uint64_t seed, std::uint64_t group_index,
                                std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(group_index), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

// Draws a size uniformly from [1, max_size], then that many distinct
// non-identity elements. Sets that do not generate the group or that contain
// no element of even order are rejected and redrawn.
template <class Rng>
GeneratingSet sample_generating_set(const Group& g, Rng& rng, const SamplerOptions& options = {}) {
  if (g.order() < 2) throw InvalidArgumentError("trivial group has no generating set");
  std::vector<Element> pool;
  for (auto x : g.elements()) {
    if (x != g.identity()) pool.push_back(x);
  }
  const std::size_t cap = std::min(options.max_size, pool.size());
  if (cap == 0) throw InvalidArgumentError("sampler max_size must be positive");
  std::uniform_int_distribution<std::size_t> size_dist(1, cap);
  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::size_t k = size_dist(rng);
    std::vector<Element> pick;
    std::sample(pool.begin(), pool.end(), std::back_inserter(pick), k, rng);
    const bool has_even = std::any_of(pick.begin(), pick.end(), [&](Element x) {
      return element_order(g, x) % 2 == 0;
    });
    if (!has_even) continue;
    if (generated_subgroup(g, pick).size() != g.order()) continue;
    return GeneratingSet::of(g, std::move(pick));
  }
  throw PreconditionError("no generating set with an even-order element found in " +
                          std::to_string(options.max_attempts) + " attempts");
}

}  // namespace onefac
