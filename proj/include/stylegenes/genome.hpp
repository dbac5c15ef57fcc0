#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stylegenes/rng.hpp"

namespace stylegenes {

using BigInt = boost::multiprecision::cpp_int;

struct GenomeDims {
  int n_g = 0;  // gene positions
  int n_v = 0;  // variants per position
  int d_g = 0;  // sub-vector length

  int d() const { return n_g * d_g; }  // total latent length
  void validate() const;
  bool operator==(const GenomeDims&) const = default;
};

/// Index vector k: one chosen variant per gene position.
struct GeneSequence {
  std::vector<int> indices;
  bool operator==(const GeneSequence&) const = default;
};

/// Concatenation of the selected variants; the generator's input.
struct LatentCode {
  std::vector<double> values;
};

/// The codebook: n_g x n_v learnable embeddings of length d_g, stored
/// flat in [position][variant][dim] row-major order. Immutable through the
/// const interface; training mutates an exclusively owned copy.
class Genome {
 public:
  Genome(GenomeDims dims, std::vector<double> embeddings, uint64_t seed);

  const GenomeDims& dims() const { return dims_; }
  uint64_t seed() const { return seed_; }

  std::span<const double> variant(int position, int variant_index) const;
  std::span<double> variant_mut(int position, int variant_index);

  const std::vector<double>& raw() const { return embeddings_; }
  std::vector<double>& raw_mut() { return embeddings_; }

  size_t offset(int position, int variant_index) const {
    return (static_cast<size_t>(position) * dims_.n_v + variant_index) * dims_.d_g;
  }

  bool operator==(const Genome&) const = default;

 private:
  GenomeDims dims_;
  uint64_t seed_;
  std::vector<double> embeddings_;

  void check_indices(int position, int variant_index) const;
};

/// Standard-normal initialization from the seeded stream, one draw per
/// entry in [position][variant][dim] order.
Genome init_genome(const GenomeDims& dims, uint64_t seed);

/// One uniformly drawn variant index per position. Consumes one uniform
/// draw per position.
GeneSequence sample_sequence(const GenomeDims& dims, RandomStream& rng);

void validate_sequence(const GenomeDims& dims, const GeneSequence& seq);

/// V_k: concatenation of the selected variants.
LatentCode assemble(const Genome& genome, const GeneSequence& seq);

/// n_v ^ n_g, exact.
BigInt capacity(const GenomeDims& dims);

std::string capacity_decimal(const GenomeDims& dims);

/// "1.34e154"-style rendering with round-half-up to `sig_figs` digits.
std::string to_scientific(const BigInt& value, int sig_figs);

/// n_g * n_v * d_g = n_v * d; independent of n_g for fixed d.
int64_t trainable_param_count(const GenomeDims& dims);

/// (1-t) * assemble(a) + t * assemble(b). Extrapolation is permitted here;
/// the CLI restricts t to [0, 1].
LatentCode interpolate_codes(const Genome& genome, const GeneSequence& a,
                             const GeneSequence& b, double t);

enum class SnapMetric { kManhattan, kEuclidean, kCosine };

SnapMetric snap_metric_from_name(const std::string& name);
std::string snap_metric_name(SnapMetric metric);

struct SnapResult {
  GeneSequence sequence;
  std::vector<double> distances;  // per-position distance to the winner
};

/// Per position, the variant closest to the code's sub-vector. Ties break
/// toward the lowest variant index. Cosine distance is 1 - cosine
/// similarity, computed as half the squared distance of the normalized
/// vectors so identical inputs give exact zero; zero-norm vectors are an
/// error under the cosine metric.
SnapResult snap_nearest(const Genome& genome, const LatentCode& code, SnapMetric metric);

struct VariantReplacement {
  int position = 0;
  int victim = 0;
  int donor = 0;
  bool operator==(const VariantReplacement&) const = default;
};

/// Returns a new genome where every victim's embedding is a copy of its
/// donor's embedding from the *input* genome. Victims must be distinct per
/// position; the input is not modified.
Genome apply_variant_replacement(const Genome& genome,
                                 const std::vector<VariantReplacement>& plan);

}  // namespace stylegenes
