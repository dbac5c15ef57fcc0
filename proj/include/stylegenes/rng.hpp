#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace stylegenes {

/// Deterministic 64-bit random stream based on the splitmix64 generator.
/// Identical seeds produce identical draw sequences on every platform.
/// Gaussian draws use the Box-Muller transform and consume exactly two
/// 64-bit words each (cosine branch only, nothing is cached).
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t next_u64();

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01();

  /// Standard normal draw.
  double gaussian();

  /// Derives an independent child stream from this stream's seed and a
  /// label. Does not advance this stream; the same label always yields
  /// the same child.
  RandomStream child(std::string_view label) const;

  /// Seed value a child stream with this label would start from.
  uint64_t derive_seed(std::string_view label) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t state_;
};

/// Box-Muller cosine branch: sqrt(-2 ln u1) * cos(2 pi u2).
/// u1 must lie in (0, 1], u2 in [0, 1).
double gaussian_from_uniforms(double u1, double u2);

/// Draws an index from a categorical distribution by cumulative scan:
/// the first index j with u < p_0 + ... + p_j wins. Falls back to the
/// last index with positive probability, so zero-probability entries are
/// never returned. Consumes one uniform draw.
int categorical_index(std::span<const double> probs, RandomStream& rng);

}  // namespace stylegenes
