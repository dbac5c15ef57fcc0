#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace stylegenes {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Raised when a step is rejected; the state and parameters are untouched.
struct NonFiniteGradient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bias-corrected Adam over a flat parameter block.
struct AdamState {
  AdamConfig config;
  std::vector<double> m;
  std::vector<double> v;
  int64_t step = 0;

  AdamState(size_t n, AdamConfig cfg)
      : config(cfg), m(n, 0.0), v(n, 0.0) {}
};

/// One update in place. Rejects the whole step (throws, no mutation) if any
/// gradient entry is non-finite.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state);

}  // namespace stylegenes
