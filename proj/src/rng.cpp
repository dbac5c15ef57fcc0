#include "stylegenes/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stylegenes {

namespace {

uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t mix(uint64_t value) {
  uint64_t z = value;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t RandomStream::next_u64() { return splitmix64_next(state_); }

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  // First word maps to (0, 1] so the logarithm is always finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return gaussian_from_uniforms(u1, u2);
}

uint64_t RandomStream::derive_seed(std::string_view label) const {
  // FNV-1a over the label folded into the parent seed, then finalized.
  uint64_t h = 0xCBF29CE484222325ull;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return mix(mix(seed_ ^ h) + 0x9E3779B97F4A7C15ull);
}

RandomStream RandomStream::child(std::string_view label) const {
  return RandomStream(derive_seed(label));
}

double gaussian_from_uniforms(double u1, double u2) {
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int categorical_index(std::span<const double> probs, RandomStream& rng) {
  if (probs.empty()) throw std::invalid_argument("categorical_index: empty distribution");
  const double u = rng.uniform01();
  double acc = 0.0;
  for (size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return static_cast<int>(j);
  }
  // Round-off can leave the accumulated sum a hair below u.
  for (size_t j = probs.size(); j-- > 0;) {
    if (probs[j] > 0.0) return static_cast<int>(j);
  }
  throw std::invalid_argument("categorical_index: no positive mass");
}

}  // namespace stylegenes
