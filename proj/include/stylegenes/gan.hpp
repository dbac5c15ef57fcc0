#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stylegenes/dataset.hpp"
#include "stylegenes/genome.hpp"
#include "stylegenes/mlp.hpp"
#include "stylegenes/point.hpp"
#include "stylegenes/rng.hpp"

namespace stylegenes {

enum class PriorKind { kGenome, kGaussian, kGaussianMapping };

PriorKind prior_from_name(const std::string& name);
std::string prior_name(PriorKind prior);

struct TrainConfig {
  GenomeDims dims{8, 16, 4};
  PriorKind prior = PriorKind::kGenome;
  int64_t steps = 20000;
  int batch = 32;
  double lr_generator = 1e-3;
  double lr_discriminator = 1e-3;
  double lr_genome = 1e-3;
  double adam_beta1 = 0.5;
  double adam_beta2 = 0.99;
  double adam_eps = 1e-8;
  double r1_gamma = 1.0;
  uint64_t seed = 1;
  std::vector<int> generator_hidden{64, 64, 64};
  std::vector<int> discriminator_hidden{64, 64, 64};
  std::vector<int> mapping_hidden{64, 64};
  int64_t log_interval = 500;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct TrainReport {
  std::vector<int64_t> log_steps;
  std::vector<double> d_loss;
  std::vector<double> g_loss;
  std::vector<double> d_real_mean;
  std::vector<double> d_fake_mean;
  std::vector<int64_t> mode_histogram;
  int64_t mode_histogram_samples = 0;
};

struct GanModel {
  PriorKind prior;
  Genome genome;
  MlpModel generator;      // d -> 2
  MlpModel discriminator;  // 2 -> 1 logit
  std::optional<MlpModel> mapping;  // d -> d, gaussian-mapping prior only

  bool operator==(const GanModel&) const = default;
};

struct TrainingDiverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic model construction from (config.dims, config.seed).
GanModel init_gan(const TrainConfig& config);

/// Alternating non-saturating logistic GAN training, single threaded and
/// bit-reproducible from (config, data). The discriminator step applies R1
/// on the real batch; each generator step samples a fresh latent batch and,
/// for the genome prior, routes gradients only into the variants that batch
/// selected.
std::pair<GanModel, TrainReport> train_gan(const TrainConfig& config,
                                           const ToyDataset& data);

/// Generator forward of assemble(genome, seq); genome prior only.
Point generate(const GanModel& model, const GeneSequence& seq);

/// Draws z of length d, passes it through the mapping network when the
/// model has one, then the generator. Gaussian priors only.
Point gaussian_prior_generate(const GanModel& model, RandomStream& stream);

double discriminate(const GanModel& model, Point p);

double softplus(double x);
double logistic(double x);

// Training internals, exposed for the gradient suites. All losses are
// mean-reduced over the batch and gradients accumulate into the output
// arguments.

/// mean softplus(-D(G(V_k))). `genome_grads` uses the Genome::raw layout.
double generator_loss_and_grads(const GanModel& model,
                                std::span<const GeneSequence> seqs,
                                MlpGrads* gen_grads,
                                std::vector<double>* genome_grads);

double generator_loss_and_grads_gaussian(const GanModel& model,
                                         std::span<const std::vector<double>> latents,
                                         MlpGrads* gen_grads, MlpGrads* mapping_grads);

struct DiscBatchStats {
  double loss = 0.0;
  double real_mean = 0.0;
  double fake_mean = 0.0;
  double r1_penalty = 0.0;  // mean ||grad_x D||^2 over the real batch
};

/// mean softplus(D(fake)) + mean softplus(-D(real)) + (gamma/2) * r1_penalty.
DiscBatchStats discriminator_loss_and_grads(const GanModel& model,
                                            std::span<const Point> real_points,
                                            std::span<const Point> fake_points,
                                            double r1_gamma, MlpGrads* disc_grads);

}  // namespace stylegenes
