#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "stylegenes/gan.hpp"
#include "stylegenes/genome.hpp"
#include "stylegenes/point.hpp"
#include "stylegenes/rng.hpp"

namespace stylegenes {

/// p = logistic(beta * (w . x + b))
struct HalfplaneAttr {
  double wx = 1.0;
  double wy = 0.0;
  double b = 0.0;
  double beta = 4.0;
};

/// p = logistic(beta * (radius - |x - center|))
struct RadialAttr {
  Point center;
  double radius = 1.0;
  double beta = 4.0;
};

/// p = 1 if the target mode is the nearest one, else 0.
struct NearestModeAttr {
  std::vector<Point> modes;
  int target = 0;
};

/// Analytic stand-in for a pretrained attribute classifier: maps a
/// generated point to the probability that the binary attribute is present.
struct AttributeDef {
  std::string id;
  std::variant<HalfplaneAttr, RadialAttr, NearestModeAttr> kind;

  void validate() const;
};

double eval_attribute(const AttributeDef& attr, Point p);

/// The Monte Carlo set S: sequences, their generations, per-attribute
/// probabilities and discriminator logits. Reused across every
/// (position, variant, attribute) cell, nothing is regenerated.
struct SampleBatch {
  std::vector<GeneSequence> sequences;
  std::vector<Point> points;
  std::vector<std::vector<double>> attr_probs;  // [sample][attribute]
  std::vector<double> disc_logits;
  std::vector<std::string> attribute_ids;
  uint64_t seed = 0;

  size_t size() const { return sequences.size(); }
};

/// n uniformly sampled sequences, generated and scored; genome prior only.
SampleBatch collect_samples(const GanModel& model, int n,
                            const std::vector<AttributeDef>& attrs, RandomStream& stream);

/// Variant-conditional attribute probabilities p(a_l | k_i = j) with
/// pseudo-count smoothing toward the batch-global attribute mean.
struct AttributeStats {
  GenomeDims dims;
  std::vector<std::string> attribute_ids;
  std::vector<double> table;        // [attribute][position][variant]
  std::vector<int64_t> counts;      // [position][variant]
  std::vector<uint8_t> empty_cells; // [position][variant], count == 0
  std::vector<double> global_means; // per attribute
  double alpha = 0.0;
  int64_t total_samples = 0;

  size_t attribute_count() const { return attribute_ids.size(); }
  double p(size_t l, int i, int j) const {
    return table[(l * dims.n_g + static_cast<size_t>(i)) * dims.n_v + j];
  }
  int64_t count(int i, int j) const {
    return counts[static_cast<size_t>(i) * dims.n_v + j];
  }
  int attribute_index(const std::string& id) const;
};

/// p[l][i][j] = (sum_{k in S: k_i=j} p(a_l|G(V_k)) + alpha * mean_l)
///            / (count(i,j) + alpha).
/// With alpha = 0 an empty cell is flagged and set to the global mean.
AttributeStats estimate_stats(const SampleBatch& batch, const GenomeDims& dims,
                              double alpha);

/// Exact enumeration of every sequence with uniform weights; requires
/// capacity(dims) <= 100000. The ground truth for estimate_stats.
AttributeStats exact_stats(const GanModel& model, const std::vector<AttributeDef>& attrs);

/// Enumerates all sequences of `dims` in odometer order (last position
/// fastest).
std::vector<GeneSequence> enumerate_sequences(const GenomeDims& dims);

struct ConditionalSpec {
  struct Condition {
    std::string attribute_id;
    int desired = 1;  // 0 or 1
  };
  std::vector<Condition> conditions;
  double temperature = 1.0;  // T = 0 means the argmax limit

  void validate() const;
};

/// Per-position categorical distributions over variants.
struct PositionDistributions {
  int n_g = 0;
  int n_v = 0;
  std::vector<double> rows;  // [position][variant], each row sums to 1

  std::span<const double> row(int i) const {
    return {rows.data() + static_cast<size_t>(i) * n_v, static_cast<size_t>(n_v)};
  }
};

/// Bayes posterior over variants per position: weight_j proportional to
/// prod_l q_l(j)^(1/T) with q = p for desired 1 and 1-p for desired 0.
/// Computed in log space; the uniform prior over variants cancels. T = 0
/// places a point mass on the argmax (lowest index on ties). A row whose
/// weights all vanish is an error.
PositionDistributions conditional_distributions(const AttributeStats& stats,
                                                const ConditionalSpec& spec);

/// Independent categorical draw per position.
GeneSequence sample_conditional(const PositionDistributions& dists, RandomStream& stream);

}  // namespace stylegenes
