#pragma once

#include <cstdint>
#include <random>

namespace mlurn {

// All randomness flows through this wrapper so that runs are reproducible
// across platforms: the raw stream is std::mt19937_64 (fully specified by the
// standard) and the uniform variates below are hand-rolled instead of using
// std::uniform_*_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Lemire's multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed for the i-th stream of a multi-run experiment.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace mlurn
