#include "stylegenes/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace stylegenes {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::kIdentity: return "identity";
    case Activation::kLeakyRelu: return "leaky_relu";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
  }
  throw std::logic_error("unknown activation");
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "leaky_relu") return Activation::kLeakyRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "sigmoid") return Activation::kSigmoid;
  throw std::invalid_argument("unknown activation name: " + name);
}

double activate(Activation a, double alpha, double z) {
  switch (a) {
    case Activation::kIdentity: return z;
    case Activation::kLeakyRelu: return z >= 0.0 ? z : alpha * z;
    case Activation::kTanh: return std::tanh(z);
    case Activation::kSigmoid: return 1.0 / (1.0 + std::exp(-z));
  }
  throw std::logic_error("unknown activation");
}

double activation_slope(Activation a, double alpha, double z) {
  switch (a) {
    case Activation::kIdentity: return 1.0;
    case Activation::kLeakyRelu: return z >= 0.0 ? 1.0 : alpha;
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
  }
  throw std::logic_error("unknown activation");
}

double activation_curvature(Activation a, double alpha, double z) {
  switch (a) {
    case Activation::kIdentity: return 0.0;
    case Activation::kLeakyRelu:
      (void)alpha;
      return 0.0;
    case Activation::kTanh: {
      const double t = std::tanh(z);
      return -2.0 * t * (1.0 - t * t);
    }
    case Activation::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s) * (1.0 - 2.0 * s);
    }
  }
  throw std::logic_error("unknown activation");
}

size_t MlpModel::param_count() const {
  size_t n = 0;
  for (const auto& layer : layers) n += layer.weight.size() + layer.bias.size();
  return n;
}

std::vector<double> MlpModel::flatten() const {
  std::vector<double> flat;
  flat.reserve(param_count());
  for (const auto& layer : layers) {
    flat.insert(flat.end(), layer.weight.data.begin(), layer.weight.data.end());
    flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
  }
  return flat;
}

void MlpModel::unflatten(std::span<const double> flat) {
  if (flat.size() != param_count())
    throw std::invalid_argument("unflatten: parameter count mismatch");
  size_t off = 0;
  for (auto& layer : layers) {
    std::copy(flat.begin() + off, flat.begin() + off + layer.weight.size(),
              layer.weight.data.begin());
    off += layer.weight.size();
    std::copy(flat.begin() + off, flat.begin() + off + layer.bias.size(),
              layer.bias.begin());
    off += layer.bias.size();
  }
}

MlpModel make_mlp(int input, const std::vector<int>& hidden, int output,
                  Activation hidden_act, Activation output_act, RandomStream& rng,
                  double leaky_alpha) {
  if (input < 1 || output < 1) throw std::invalid_argument("make_mlp: bad widths");
  for (int h : hidden)
    if (h < 1) throw std::invalid_argument("make_mlp: bad hidden width");

  MlpModel model;
  std::vector<int> widths;
  widths.push_back(input);
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(output);

  for (size_t l = 0; l + 1 < widths.size(); ++l) {
    MlpLayer layer;
    const bool last = (l + 2 == widths.size());
    layer.act = last ? output_act : hidden_act;
    layer.leaky_alpha = leaky_alpha;
    layer.weight = DenseMatrix(widths[l + 1], widths[l]);
    layer.bias.assign(static_cast<size_t>(widths[l + 1]), 0.0);
    const double gain = layer.act == Activation::kLeakyRelu ? 2.0 : 1.0;
    const double scale = std::sqrt(gain / static_cast<double>(widths[l]));
    for (double& w : layer.weight.data) w = scale * rng.gaussian();
    model.layers.push_back(std::move(layer));
  }
  return model;
}

MlpGrads::MlpGrads(const MlpModel& model) {
  weight.reserve(model.layers.size());
  bias.reserve(model.layers.size());
  for (const auto& layer : model.layers) {
    weight.emplace_back(layer.weight.rows, layer.weight.cols);
    bias.emplace_back(layer.bias.size(), 0.0);
  }
}

void MlpGrads::scale(double factor) {
  for (auto& w : weight)
    for (double& v : w.data) v *= factor;
  for (auto& b : bias)
    for (double& v : b) v *= factor;
}

std::vector<double> MlpGrads::flatten() const {
  std::vector<double> flat;
  for (size_t l = 0; l < weight.size(); ++l) {
    flat.insert(flat.end(), weight[l].data.begin(), weight[l].data.end());
    flat.insert(flat.end(), bias[l].begin(), bias[l].end());
  }
  return flat;
}

DenseVector mlp_forward(const MlpModel& model, std::span<const double> input,
                        MlpCache* cache) {
  if (model.layers.empty()) throw std::invalid_argument("mlp_forward: empty model");
  if (static_cast<int>(input.size()) != model.input_width())
    throw std::invalid_argument("mlp_forward: input width mismatch");

  DenseVector a(input.begin(), input.end());
  if (cache) {
    cache->input = a;
    cache->pre.clear();
    cache->post.clear();
  }
  for (const auto& layer : model.layers) {
    DenseVector z = matvec(layer.weight, a);
    for (size_t i = 0; i < z.size(); ++i) z[i] += layer.bias[i];
    DenseVector out(z.size());
    for (size_t i = 0; i < z.size(); ++i)
      out[i] = activate(layer.act, layer.leaky_alpha, z[i]);
    if (cache) {
      cache->pre.push_back(std::move(z));
      cache->post.push_back(out);
    }
    a = std::move(out);
  }
  return a;
}

DenseVector mlp_backward(const MlpModel& model, const MlpCache& cache,
                         std::span<const double> output_gradient, MlpGrads* grads) {
  const size_t n_layers = model.layers.size();
  if (cache.pre.size() != n_layers)
    throw std::invalid_argument("mlp_backward: cache does not match model");
  if (static_cast<int>(output_gradient.size()) != model.output_width())
    throw std::invalid_argument("mlp_backward: output gradient width mismatch");

  DenseVector delta(output_gradient.begin(), output_gradient.end());
  for (size_t l = n_layers; l-- > 0;) {
    const auto& layer = model.layers[l];
    const auto& z = cache.pre[l];
    DenseVector dz(z.size());
    for (size_t i = 0; i < z.size(); ++i)
      dz[i] = delta[i] * activation_slope(layer.act, layer.leaky_alpha, z[i]);
    const DenseVector& below = l == 0 ? cache.input : cache.post[l - 1];
    if (grads) {
      add_outer(grads->weight[l], dz, below);
      for (size_t i = 0; i < dz.size(); ++i) grads->bias[l][i] += dz[i];
    }
    delta = matvec_transposed(layer.weight, dz);
  }
  return delta;
}

DenseVector mlp_input_gradient(const MlpModel& model, const MlpCache& cache) {
  if (model.output_width() != 1)
    throw std::invalid_argument("mlp_input_gradient: output must be scalar");
  const DenseVector seed{1.0};
  return mlp_backward(model, cache, seed, nullptr);
}

double input_gradient_sq_norm(const MlpModel& model, std::span<const double> input,
                              MlpGrads* grads) {
  if (model.output_width() != 1)
    throw std::invalid_argument("input_gradient_sq_norm: output must be scalar");
  const size_t n_layers = model.layers.size();

  MlpCache cache;
  mlp_forward(model, input, &cache);
  DenseVector g = mlp_input_gradient(model, cache);
  double penalty = 0.0;
  for (double v : g) penalty += v * v;
  if (!grads) return penalty;

  // penalty = <g, g> with g = d out / d input. Its parameter gradient is
  // the gradient of h(theta) = <u, g(theta)> at u = 2 g held constant,
  // which equals the directional derivative of the output along u. The
  // tangent pass propagates (a_l, t_l) where t_l is the input-directional
  // derivative of a_l; reverse-mode over that pass yields d h / d theta.
  DenseVector t(g.size());
  for (size_t i = 0; i < g.size(); ++i) t[i] = 2.0 * g[i];

  std::vector<DenseVector> tangents_pre;   // s_l = W_l t_{l-1}
  std::vector<DenseVector> tangents_post;  // t_l = slope(z_l) .* s_l
  tangents_pre.reserve(n_layers);
  tangents_post.reserve(n_layers);
  DenseVector t_in = t;
  for (size_t l = 0; l < n_layers; ++l) {
    const auto& layer = model.layers[l];
    DenseVector s = matvec(layer.weight, t);
    DenseVector t_next(s.size());
    for (size_t i = 0; i < s.size(); ++i)
      t_next[i] = activation_slope(layer.act, layer.leaky_alpha, cache.pre[l][i]) * s[i];
    tangents_pre.push_back(std::move(s));
    tangents_post.push_back(t_next);
    t = std::move(t_next);
  }

  // Reverse over the combined (a_l, t_l) recursion. alpha_l and tau_l are
  // the gradients of h with respect to a_l and t_l.
  DenseVector alpha(static_cast<size_t>(model.output_width()), 0.0);
  DenseVector tau(static_cast<size_t>(model.output_width()), 1.0);
  for (size_t l = n_layers; l-- > 0;) {
    const auto& layer = model.layers[l];
    const auto& z = cache.pre[l];
    const auto& s = tangents_pre[l];
    DenseVector dz(z.size()), ds(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
      const double slope = activation_slope(layer.act, layer.leaky_alpha, z[i]);
      const double curv = activation_curvature(layer.act, layer.leaky_alpha, z[i]);
      dz[i] = alpha[i] * slope + tau[i] * curv * s[i];
      ds[i] = tau[i] * slope;
    }
    const DenseVector& a_below = l == 0 ? cache.input : cache.post[l - 1];
    const DenseVector t_below = l == 0 ? t_in : tangents_post[l - 1];
    add_outer(grads->weight[l], dz, a_below);
    add_outer(grads->weight[l], ds, t_below);
    for (size_t i = 0; i < dz.size(); ++i) grads->bias[l][i] += dz[i];
    alpha = matvec_transposed(layer.weight, dz);
    tau = matvec_transposed(layer.weight, ds);
  }
  return penalty;
}

}  // namespace stylegenes
