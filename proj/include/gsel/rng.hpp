#ifndef GSEL_RNG_HPP
#define GSEL_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gsel {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for a sub-stream identified by a path of integers below `master`.
// Order-sensitive, so (game, mechanism, rep) paths never collide by permutation.
constexpr uint64_t DeriveSeed(uint64_t master, std::initializer_list<uint64_t> path) {
  uint64_t s = Mix64(master);
  for (uint64_t p : path) s = Mix64(s ^ Mix64(p + 0x632BE59BD9B4E019ull));
  return s;
}

inline Rng MakeRng(uint64_t seed) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)};
  return Rng(seq);
}

}  // namespace gsel

#endif  // GSEL_RNG_HPP
