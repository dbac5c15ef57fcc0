#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stylegenes/rng.hpp"
#include "stylegenes/tensor.hpp"

namespace stylegenes {

enum class Activation { kIdentity, kLeakyRelu, kTanh, kSigmoid };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

double activate(Activation a, double alpha, double z);
/// First derivative of the activation at z.
double activation_slope(Activation a, double alpha, double z);
/// Second derivative of the activation at z (zero a.e. for the piecewise
/// linear ones).
double activation_curvature(Activation a, double alpha, double z);

struct MlpLayer {
  DenseMatrix weight;  // out x in
  DenseVector bias;    // out
  Activation act = Activation::kIdentity;
  double leaky_alpha = 0.2;
  bool operator==(const MlpLayer&) const = default;
};

struct MlpModel {
  std::vector<MlpLayer> layers;
  bool operator==(const MlpModel&) const = default;

  int input_width() const { return layers.empty() ? 0 : layers.front().weight.cols; }
  int output_width() const { return layers.empty() ? 0 : layers.back().weight.rows; }
  size_t param_count() const;

  std::vector<double> flatten() const;
  void unflatten(std::span<const double> flat);
};

/// He-style initialization: weights ~ N(0, 2/fan_in) before leaky-relu
/// layers, N(0, 1/fan_in) otherwise; biases zero. Consumes one gaussian
/// draw per weight in layer-major row-major order.
MlpModel make_mlp(int input, const std::vector<int>& hidden, int output,
                  Activation hidden_act, Activation output_act, RandomStream& rng,
                  double leaky_alpha = 0.2);

/// Per-layer values retained by the forward pass for the backward pass.
struct MlpCache {
  DenseVector input;
  std::vector<DenseVector> pre;   // z_l = W_l a_{l-1} + b_l
  std::vector<DenseVector> post;  // a_l = act(z_l)
};

struct MlpGrads {
  std::vector<DenseMatrix> weight;
  std::vector<DenseVector> bias;

  explicit MlpGrads(const MlpModel& model);
  void scale(double factor);
  std::vector<double> flatten() const;
};

DenseVector mlp_forward(const MlpModel& model, std::span<const double> input,
                        MlpCache* cache = nullptr);

/// Exact reverse-mode gradients of the forward map. Accumulates parameter
/// gradients into `grads` when non-null and returns the input gradient.
DenseVector mlp_backward(const MlpModel& model, const MlpCache& cache,
                         std::span<const double> output_gradient, MlpGrads* grads);

/// Gradient of the scalar output with respect to the input
/// (requires output width 1).
DenseVector mlp_input_gradient(const MlpModel& model, const MlpCache& cache);

/// For a scalar-output model, evaluates ||d output / d input||^2 at `input`
/// and accumulates its exact parameter gradient into `grads` when non-null.
/// This is the building block of the R1 penalty.
double input_gradient_sq_norm(const MlpModel& model, std::span<const double> input,
                              MlpGrads* grads);

}  // namespace stylegenes
