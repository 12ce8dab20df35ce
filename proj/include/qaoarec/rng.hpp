#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qaoarec {

// Mixes a base seed with stream labels into an independent 64-bit seed
// (SplitMix64 finalizer applied per label).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> labels);

// Stable 64-bit FNV-1a hash, used to turn string ids into stream labels.
std::uint64_t stable_hash(std::string_view text);

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions below are written out
// explicitly because the standard library ones are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qaoarec
