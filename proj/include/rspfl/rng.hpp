#ifndef RSPFL_RNG_HPP_
#define RSPFL_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace rspfl {

// All randomness flows through explicitly seeded mt19937_64 engines so that
// identical (seed, call sequence) pairs give bit-identical results on every
// platform. Floating-point draws never use std::uniform_real_distribution,
// whose output is implementation-defined.
using Rng = std::mt19937_64;

// splitmix64 finalizer, used to mix seeds for derived streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream seed for replication r of a run keyed by master_seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t r) {
  return mix64(master ^ mix64(r));
}

// Two-level variant, e.g. derive_seed(master, n, r) for sweep rows.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

// Uniform draw on (0,1]; the +1 keeps log() finite.
inline double uniform01(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Inverse-CDF exponential draw.
inline double exp_draw(Rng& rng, double rate = 1.0) {
  return -std::log(uniform01(rng)) / rate;
}

}  // namespace rspfl

#endif  // RSPFL_RNG_HPP_
