#include "stylegenes/gan.hpp"

#include <cmath>

#include "stylegenes/adam.hpp"

namespace stylegenes {

PriorKind prior_from_name(const std::string& name) {
  if (name == "genome") return PriorKind::kGenome;
  if (name == "gaussian") return PriorKind::kGaussian;
  if (name == "gaussian-mapping") return PriorKind::kGaussianMapping;
  throw std::invalid_argument("unknown prior: " + name);
}

std::string prior_name(PriorKind prior) {
  switch (prior) {
    case PriorKind::kGenome: return "genome";
    case PriorKind::kGaussian: return "gaussian";
    case PriorKind::kGaussianMapping: return "gaussian-mapping";
  }
  throw std::logic_error("unknown prior");
}

void TrainConfig::validate() const {
  dims.validate();
  if (steps < 0) throw std::invalid_argument("TrainConfig: steps must be >= 0");
  if (batch < 1) throw std::invalid_argument("TrainConfig: batch must be >= 1");
  for (double lr : {lr_generator, lr_discriminator, lr_genome}) {
    if (!(lr >= 0.0) || !std::isfinite(lr))
      throw std::invalid_argument("TrainConfig: learning rates must be finite and >= 0");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
    throw std::invalid_argument("TrainConfig: adam betas must lie in [0, 1)");
  if (!(adam_eps > 0.0)) throw std::invalid_argument("TrainConfig: adam eps must be > 0");
  if (!(r1_gamma >= 0.0) || !std::isfinite(r1_gamma))
    throw std::invalid_argument("TrainConfig: r1_gamma must be finite and >= 0");
  if (log_interval < 1) throw std::invalid_argument("TrainConfig: log_interval must be >= 1");
  for (int h : generator_hidden)
    if (h < 1) throw std::invalid_argument("TrainConfig: bad generator width");
  for (int h : discriminator_hidden)
    if (h < 1) throw std::invalid_argument("TrainConfig: bad discriminator width");
  for (int h : mapping_hidden)
    if (h < 1) throw std::invalid_argument("TrainConfig: bad mapping width");
}

double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

GanModel init_gan(const TrainConfig& config) {
  config.validate();
  RandomStream root(config.seed);
  Genome genome = init_genome(config.dims, root.derive_seed("genome-init"));
  RandomStream gen_rng = root.child("generator-init");
  MlpModel generator = make_mlp(config.dims.d(), config.generator_hidden, 2,
                                Activation::kLeakyRelu, Activation::kIdentity, gen_rng);
  RandomStream disc_rng = root.child("discriminator-init");
  MlpModel discriminator = make_mlp(2, config.discriminator_hidden, 1,
                                    Activation::kLeakyRelu, Activation::kIdentity, disc_rng);
  std::optional<MlpModel> mapping;
  if (config.prior == PriorKind::kGaussianMapping) {
    RandomStream map_rng = root.child("mapping-init");
    mapping = make_mlp(config.dims.d(), config.mapping_hidden, config.dims.d(),
                       Activation::kLeakyRelu, Activation::kIdentity, map_rng);
  }
  return GanModel{config.prior, std::move(genome), std::move(generator),
                  std::move(discriminator), std::move(mapping)};
}

Point generate(const GanModel& model, const GeneSequence& seq) {
  if (model.prior != PriorKind::kGenome)
    throw std::invalid_argument("generate: model does not use the genome prior");
  const LatentCode code = assemble(model.genome, seq);
  const DenseVector out = mlp_forward(model.generator, code.values);
  return {out[0], out[1]};
}

Point gaussian_prior_generate(const GanModel& model, RandomStream& stream) {
  if (model.prior == PriorKind::kGenome)
    throw std::invalid_argument("gaussian_prior_generate: model uses the genome prior");
  DenseVector z(static_cast<size_t>(model.genome.dims().d()));
  for (double& v : z) v = stream.gaussian();
  const DenseVector w = model.mapping ? mlp_forward(*model.mapping, z) : std::move(z);
  const DenseVector out = mlp_forward(model.generator, w);
  return {out[0], out[1]};
}

double discriminate(const GanModel& model, Point p) {
  return mlp_forward(model.discriminator, std::vector<double>{p.x, p.y})[0];
}

double generator_loss_and_grads(const GanModel& model,
                                std::span<const GeneSequence> seqs,
                                MlpGrads* gen_grads,
                                std::vector<double>* genome_grads) {
  if (model.prior != PriorKind::kGenome)
    throw std::invalid_argument("generator_loss_and_grads: genome prior required");
  if (seqs.empty()) return 0.0;
  if (genome_grads && genome_grads->size() != model.genome.raw().size())
    throw std::invalid_argument("generator_loss_and_grads: genome grad size mismatch");

  const auto& dims = model.genome.dims();
  const double inv_batch = 1.0 / static_cast<double>(seqs.size());
  double loss = 0.0;
  for (const auto& seq : seqs) {
    const LatentCode code = assemble(model.genome, seq);
    MlpCache gen_cache, disc_cache;
    const DenseVector point = mlp_forward(model.generator, code.values, &gen_cache);
    const double logit = mlp_forward(model.discriminator, point, &disc_cache)[0];
    loss += softplus(-logit) * inv_batch;

    const double dlogit = -logistic(-logit) * inv_batch;
    const DenseVector dpoint =
        mlp_backward(model.discriminator, disc_cache, std::vector<double>{dlogit}, nullptr);
    const DenseVector dcode = mlp_backward(model.generator, gen_cache, dpoint, gen_grads);
    if (genome_grads) {
      for (int i = 0; i < dims.n_g; ++i) {
        const size_t dst = model.genome.offset(i, seq.indices[static_cast<size_t>(i)]);
        const size_t src = static_cast<size_t>(i) * dims.d_g;
        for (int u = 0; u < dims.d_g; ++u) (*genome_grads)[dst + u] += dcode[src + u];
      }
    }
  }
  return loss;
}

double generator_loss_and_grads_gaussian(const GanModel& model,
                                         std::span<const std::vector<double>> latents,
                                         MlpGrads* gen_grads, MlpGrads* mapping_grads) {
  if (model.prior == PriorKind::kGenome)
    throw std::invalid_argument("generator_loss_and_grads_gaussian: gaussian prior required");
  if (latents.empty()) return 0.0;

  const double inv_batch = 1.0 / static_cast<double>(latents.size());
  double loss = 0.0;
  for (const auto& z : latents) {
    MlpCache map_cache, gen_cache, disc_cache;
    DenseVector w = model.mapping ? mlp_forward(*model.mapping, z, &map_cache) : z;
    const DenseVector point = mlp_forward(model.generator, w, &gen_cache);
    const double logit = mlp_forward(model.discriminator, point, &disc_cache)[0];
    loss += softplus(-logit) * inv_batch;

    const double dlogit = -logistic(-logit) * inv_batch;
    const DenseVector dpoint =
        mlp_backward(model.discriminator, disc_cache, std::vector<double>{dlogit}, nullptr);
    const DenseVector dw = mlp_backward(model.generator, gen_cache, dpoint, gen_grads);
    if (model.mapping) mlp_backward(*model.mapping, map_cache, dw, mapping_grads);
  }
  return loss;
}

DiscBatchStats discriminator_loss_and_grads(const GanModel& model,
                                            std::span<const Point> real_points,
                                            std::span<const Point> fake_points,
                                            double r1_gamma, MlpGrads* disc_grads) {
  DiscBatchStats stats;
  const double inv_real =
      real_points.empty() ? 0.0 : 1.0 / static_cast<double>(real_points.size());
  const double inv_fake =
      fake_points.empty() ? 0.0 : 1.0 / static_cast<double>(fake_points.size());

  MlpGrads r1_acc(model.discriminator);
  for (const Point& p : real_points) {
    const std::vector<double> x{p.x, p.y};
    MlpCache cache;
    const double logit = mlp_forward(model.discriminator, x, &cache)[0];
    stats.real_mean += logit * inv_real;
    stats.loss += softplus(-logit) * inv_real;
    if (disc_grads) {
      const double dlogit = -logistic(-logit) * inv_real;
      mlp_backward(model.discriminator, cache, std::vector<double>{dlogit}, disc_grads);
    }
    if (r1_gamma > 0.0) {
      stats.r1_penalty +=
          input_gradient_sq_norm(model.discriminator, x, disc_grads ? &r1_acc : nullptr) *
          inv_real;
    }
  }
  for (const Point& p : fake_points) {
    MlpCache cache;
    const double logit =
        mlp_forward(model.discriminator, std::vector<double>{p.x, p.y}, &cache)[0];
    stats.fake_mean += logit * inv_fake;
    stats.loss += softplus(logit) * inv_fake;
    if (disc_grads) {
      const double dlogit = logistic(logit) * inv_fake;
      mlp_backward(model.discriminator, cache, std::vector<double>{dlogit}, disc_grads);
    }
  }

  if (r1_gamma > 0.0) {
    stats.loss += 0.5 * r1_gamma * stats.r1_penalty;
    if (disc_grads) {
      const double scale = 0.5 * r1_gamma * inv_real;
      for (size_t l = 0; l < r1_acc.weight.size(); ++l) {
        for (size_t i = 0; i < r1_acc.weight[l].data.size(); ++i)
          disc_grads->weight[l].data[i] += scale * r1_acc.weight[l].data[i];
        for (size_t i = 0; i < r1_acc.bias[l].size(); ++i)
          disc_grads->bias[l][i] += scale * r1_acc.bias[l][i];
      }
    }
  }
  return stats;
}

namespace {

void apply_adam_to_mlp(MlpModel& model, const MlpGrads& grads, AdamState& state) {
  std::vector<double> params = model.flatten();
  const std::vector<double> flat_grads = grads.flatten();
  adam_step(params, flat_grads, state);
  model.unflatten(params);
}

}  // namespace

std::pair<GanModel, TrainReport> train_gan(const TrainConfig& config,
                                           const ToyDataset& data) {
  config.validate();
  if (data.points.empty()) throw std::invalid_argument("train_gan: empty dataset");

  GanModel model = init_gan(config);
  TrainReport report;

  const AdamConfig gen_cfg{config.lr_generator, config.adam_beta1, config.adam_beta2,
                           config.adam_eps};
  const AdamConfig disc_cfg{config.lr_discriminator, config.adam_beta1, config.adam_beta2,
                            config.adam_eps};
  const AdamConfig genome_cfg{config.lr_genome, config.adam_beta1, config.adam_beta2,
                              config.adam_eps};
  AdamState gen_state(model.generator.param_count(), gen_cfg);
  AdamState disc_state(model.discriminator.param_count(), disc_cfg);
  AdamState genome_state(model.genome.raw().size(), genome_cfg);
  std::optional<AdamState> mapping_state;
  if (model.mapping) mapping_state.emplace(model.mapping->param_count(), gen_cfg);

  RandomStream root(config.seed);
  RandomStream data_rng = root.child("data");
  RandomStream latent_rng = root.child("latent");

  const size_t n_data = data.points.size();
  const size_t batch = static_cast<size_t>(config.batch);

  std::vector<Point> real_batch(batch), fake_batch(batch);
  std::vector<GeneSequence> seq_batch(batch);
  std::vector<std::vector<double>> z_batch(batch);
  const bool genome_prior = config.prior == PriorKind::kGenome;

  auto draw_fakes = [&] {
    if (genome_prior) {
      for (size_t b = 0; b < batch; ++b)
        seq_batch[b] = sample_sequence(config.dims, latent_rng);
    } else {
      for (size_t b = 0; b < batch; ++b) {
        z_batch[b].resize(static_cast<size_t>(config.dims.d()));
        for (double& v : z_batch[b]) v = latent_rng.gaussian();
      }
    }
  };
  auto fake_points = [&] {
    if (genome_prior) {
      for (size_t b = 0; b < batch; ++b) fake_batch[b] = generate(model, seq_batch[b]);
    } else {
      for (size_t b = 0; b < batch; ++b) {
        const DenseVector w =
            model.mapping ? mlp_forward(*model.mapping, z_batch[b]) : z_batch[b];
        const DenseVector out = mlp_forward(model.generator, w);
        fake_batch[b] = {out[0], out[1]};
      }
    }
  };

  for (int64_t step = 0; step < config.steps; ++step) {
    // Discriminator update.
    for (size_t b = 0; b < batch; ++b) {
      size_t idx = static_cast<size_t>(data_rng.uniform01() * static_cast<double>(n_data));
      if (idx >= n_data) idx = n_data - 1;
      real_batch[b] = data.points[idx];
    }
    draw_fakes();
    fake_points();
    MlpGrads disc_grads(model.discriminator);
    const DiscBatchStats d_stats = discriminator_loss_and_grads(
        model, real_batch, fake_batch, config.r1_gamma, &disc_grads);
    if (!std::isfinite(d_stats.loss))
      throw TrainingDiverged("train_gan: non-finite discriminator loss at step " +
                             std::to_string(step));
    apply_adam_to_mlp(model.discriminator, disc_grads, disc_state);

    // Generator update on a fresh latent batch.
    draw_fakes();
    double g_loss = 0.0;
    MlpGrads gen_grads(model.generator);
    if (genome_prior) {
      std::vector<double> genome_grads(model.genome.raw().size(), 0.0);
      g_loss = generator_loss_and_grads(model, seq_batch, &gen_grads, &genome_grads);
      if (!std::isfinite(g_loss))
        throw TrainingDiverged("train_gan: non-finite generator loss at step " +
                               std::to_string(step));
      apply_adam_to_mlp(model.generator, gen_grads, gen_state);
      adam_step(model.genome.raw_mut(), genome_grads, genome_state);
    } else {
      std::optional<MlpGrads> mapping_grads;
      if (model.mapping) mapping_grads.emplace(*model.mapping);
      g_loss = generator_loss_and_grads_gaussian(
          model, z_batch, &gen_grads, mapping_grads ? &*mapping_grads : nullptr);
      if (!std::isfinite(g_loss))
        throw TrainingDiverged("train_gan: non-finite generator loss at step " +
                               std::to_string(step));
      apply_adam_to_mlp(model.generator, gen_grads, gen_state);
      if (model.mapping) apply_adam_to_mlp(*model.mapping, *mapping_grads, *mapping_state);
    }

    if (step % config.log_interval == 0 || step + 1 == config.steps) {
      report.log_steps.push_back(step);
      report.d_loss.push_back(d_stats.loss);
      report.g_loss.push_back(g_loss);
      report.d_real_mean.push_back(d_stats.real_mean);
      report.d_fake_mean.push_back(d_stats.fake_mean);
    }
  }

  // Mode coverage over fresh samples.
  const int64_t coverage_samples = 10000;
  report.mode_histogram.assign(data.spec.modes.size(), 0);
  report.mode_histogram_samples = coverage_samples;
  RandomStream coverage_rng = root.child("coverage");
  for (int64_t s = 0; s < coverage_samples; ++s) {
    Point p;
    if (genome_prior) {
      p = generate(model, sample_sequence(config.dims, coverage_rng));
    } else {
      p = gaussian_prior_generate(model, coverage_rng);
    }
    ++report.mode_histogram[static_cast<size_t>(nearest_mode(data.spec.modes, p))];
  }

  return {std::move(model), std::move(report)};
}

}  // namespace stylegenes
