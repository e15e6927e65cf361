#pragma once

#include <cstdint>
#include <random>

#include "ratrecon/field.hpp"

namespace ratrecon {

/// Seeded random stream. Draws are produced by our own rejection sampling on
/// top of mt19937_64, so a given seed yields the same sequence on every
/// standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for parallel task `index` of a run seeded with `seed`.
  static Rng derived(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Q: numerator uniform in [-h, h], denominator uniform in [1, h], reduced.
/// F_p: uniform residue.
FieldElement random_element(const Field& field, Rng& rng, std::uint64_t height_bound);

/// Like random_element but never zero.
FieldElement random_nonzero(const Field& field, Rng& rng, std::uint64_t height_bound);

}  // namespace ratrecon
