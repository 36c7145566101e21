#include "nlgm/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlgm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view stream) {
  return splitmix64(base_seed ^ splitmix64(fnv1a(stream)));
}

std::mt19937_64 make_rng(std::uint64_t base_seed, std::string_view stream) {
  return std::mt19937_64(derive_seed(base_seed, stream));
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_index: n must be > 0");
  }
  const std::uint64_t span = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % span);
}

double gaussian(std::mt19937_64& rng) {
  // Box-Muller on two uniforms in (0,1]; independent of the standard
  // library's normal_distribution implementation.
  const double inv = 1.0 / 18446744073709551616.0;  // 2^-64
  double u1 = (static_cast<double>(rng()) + 1.0) * inv;
  double u2 = static_cast<double>(rng()) * inv;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace nlgm
