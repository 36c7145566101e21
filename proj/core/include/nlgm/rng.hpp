#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace nlgm {

// All randomness in the toolkit flows from one user-supplied seed. Each
// stochastic consumer (baseline sampling, rater split, scatter jitter)
// derives its own stream from (seed, stream-name) so adding a consumer
// never perturbs the draws of another.
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view stream);

std::mt19937_64 make_rng(std::uint64_t base_seed, std::string_view stream);

// Unbiased draw from [0, n). Rejection sampling on the raw 64-bit output,
// so results do not depend on the standard library's distribution
// implementation. n must be > 0.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

// Standard normal via Box-Muller on raw 64-bit draws; one value per call.
double gaussian(std::mt19937_64& rng);

// Fisher-Yates with uniform_index, for reproducible permutations.
template <typename T>
void shuffle(std::vector<T>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[uniform_index(rng, i)]);
  }
}

}  // namespace nlgm
