#include "stylegenes/genome.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stylegenes/tensor.hpp"

namespace stylegenes {

void GenomeDims::validate() const {
  if (n_g < 1 || n_v < 1 || d_g < 1)
    throw std::invalid_argument("GenomeDims: n_g, n_v and d_g must all be >= 1");
}

Genome::Genome(GenomeDims dims, std::vector<double> embeddings, uint64_t seed)
    : dims_(dims), seed_(seed), embeddings_(std::move(embeddings)) {
  dims_.validate();
  const size_t expected =
      static_cast<size_t>(dims_.n_g) * dims_.n_v * dims_.d_g;
  if (embeddings_.size() != expected)
    throw std::invalid_argument("Genome: embedding array does not match dims");
  check_finite(embeddings_, "Genome embeddings");
}

void Genome::check_indices(int position, int variant_index) const {
  if (position < 0 || position >= dims_.n_g)
    throw std::out_of_range("Genome: position out of range");
  if (variant_index < 0 || variant_index >= dims_.n_v)
    throw std::out_of_range("Genome: variant out of range");
}

std::span<const double> Genome::variant(int position, int variant_index) const {
  check_indices(position, variant_index);
  return {embeddings_.data() + offset(position, variant_index),
          static_cast<size_t>(dims_.d_g)};
}

std::span<double> Genome::variant_mut(int position, int variant_index) {
  check_indices(position, variant_index);
  return {embeddings_.data() + offset(position, variant_index),
          static_cast<size_t>(dims_.d_g)};
}

Genome init_genome(const GenomeDims& dims, uint64_t seed) {
  dims.validate();
  RandomStream rng(seed);
  std::vector<double> values(static_cast<size_t>(dims.n_g) * dims.n_v * dims.d_g);
  for (double& v : values) v = rng.gaussian();
  return Genome(dims, std::move(values), seed);
}

GeneSequence sample_sequence(const GenomeDims& dims, RandomStream& rng) {
  dims.validate();
  // Shares the categorical scan with conditional sampling so that a
  // uniform conditional row draws the same indices from the same stream.
  const std::vector<double> uniform(static_cast<size_t>(dims.n_v),
                                    1.0 / static_cast<double>(dims.n_v));
  GeneSequence seq;
  seq.indices.resize(static_cast<size_t>(dims.n_g));
  for (int i = 0; i < dims.n_g; ++i) seq.indices[i] = categorical_index(uniform, rng);
  return seq;
}

void validate_sequence(const GenomeDims& dims, const GeneSequence& seq) {
  if (static_cast<int>(seq.indices.size()) != dims.n_g)
    throw std::invalid_argument("GeneSequence: length does not match n_g");
  for (int k : seq.indices) {
    if (k < 0 || k >= dims.n_v)
      throw std::out_of_range("GeneSequence: variant index out of range");
  }
}

LatentCode assemble(const Genome& genome, const GeneSequence& seq) {
  const auto& dims = genome.dims();
  validate_sequence(dims, seq);
  LatentCode code;
  code.values.resize(static_cast<size_t>(dims.d()));
  for (int i = 0; i < dims.n_g; ++i) {
    const auto v = genome.variant(i, seq.indices[i]);
    std::copy(v.begin(), v.end(),
              code.values.begin() + static_cast<size_t>(i) * dims.d_g);
  }
  return code;
}

BigInt capacity(const GenomeDims& dims) {
  dims.validate();
  BigInt base = dims.n_v;
  return boost::multiprecision::pow(base, static_cast<unsigned>(dims.n_g));
}

std::string capacity_decimal(const GenomeDims& dims) {
  return capacity(dims).str();
}

std::string to_scientific(const BigInt& value, int sig_figs) {
  if (sig_figs < 1) throw std::invalid_argument("to_scientific: sig_figs < 1");
  if (value < 0) return "-" + to_scientific(-value, sig_figs);
  std::string digits = value.str();
  int exponent = static_cast<int>(digits.size()) - 1;

  std::string mantissa;
  if (static_cast<int>(digits.size()) <= sig_figs) {
    mantissa = digits;
  } else {
    mantissa = digits.substr(0, static_cast<size_t>(sig_figs));
    // Round half up on the next digit, with carry.
    if (digits[static_cast<size_t>(sig_figs)] >= '5') {
      int i = sig_figs - 1;
      while (i >= 0) {
        if (mantissa[static_cast<size_t>(i)] == '9') {
          mantissa[static_cast<size_t>(i)] = '0';
          --i;
        } else {
          ++mantissa[static_cast<size_t>(i)];
          break;
        }
      }
      if (i < 0) {
        mantissa.insert(mantissa.begin(), '1');
        mantissa.pop_back();
        ++exponent;
      }
    }
  }
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  std::string out(1, mantissa[0]);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e" + std::to_string(exponent);
  return out;
}

int64_t trainable_param_count(const GenomeDims& dims) {
  dims.validate();
  return static_cast<int64_t>(dims.n_g) * dims.n_v * dims.d_g;
}

LatentCode interpolate_codes(const Genome& genome, const GeneSequence& a,
                             const GeneSequence& b, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("interpolate_codes: t must be finite");
  const LatentCode ca = assemble(genome, a);
  const LatentCode cb = assemble(genome, b);
  LatentCode out;
  out.values.resize(ca.values.size());
  for (size_t i = 0; i < ca.values.size(); ++i)
    out.values[i] = (1.0 - t) * ca.values[i] + t * cb.values[i];
  return out;
}

SnapMetric snap_metric_from_name(const std::string& name) {
  if (name == "manhattan") return SnapMetric::kManhattan;
  if (name == "euclidean") return SnapMetric::kEuclidean;
  if (name == "cosine") return SnapMetric::kCosine;
  throw std::invalid_argument("unknown snap metric: " + name);
}

std::string snap_metric_name(SnapMetric metric) {
  switch (metric) {
    case SnapMetric::kManhattan: return "manhattan";
    case SnapMetric::kEuclidean: return "euclidean";
    case SnapMetric::kCosine: return "cosine";
  }
  throw std::logic_error("unknown snap metric");
}

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double sub_vector_distance(std::span<const double> x, std::span<const double> v,
                           SnapMetric metric) {
  switch (metric) {
    case SnapMetric::kManhattan: {
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - v[i]);
      return s;
    }
    case SnapMetric::kEuclidean: {
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - v[i];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case SnapMetric::kCosine: {
      const double nx = norm(x);
      const double nv = norm(v);
      if (nx == 0.0 || nv == 0.0)
        throw std::invalid_argument("snap_nearest: zero-norm vector under cosine metric");
      double s = 0.0;
      for (size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] / nx - v[i] / nv;
        s += diff * diff;
      }
      return 0.5 * s;  // equals 1 - cosine similarity
    }
  }
  throw std::logic_error("unknown snap metric");
}

}  // namespace

SnapResult snap_nearest(const Genome& genome, const LatentCode& code, SnapMetric metric) {
  const auto& dims = genome.dims();
  if (static_cast<int>(code.values.size()) != dims.d())
    throw std::invalid_argument("snap_nearest: code length does not match dims");

  SnapResult result;
  result.sequence.indices.resize(static_cast<size_t>(dims.n_g));
  result.distances.resize(static_cast<size_t>(dims.n_g));
  for (int i = 0; i < dims.n_g; ++i) {
    const std::span<const double> sub{
        code.values.data() + static_cast<size_t>(i) * dims.d_g,
        static_cast<size_t>(dims.d_g)};
    int best = 0;
    double best_dist = sub_vector_distance(sub, genome.variant(i, 0), metric);
    for (int j = 1; j < dims.n_v; ++j) {
      const double dist = sub_vector_distance(sub, genome.variant(i, j), metric);
      if (dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    result.sequence.indices[static_cast<size_t>(i)] = best;
    result.distances[static_cast<size_t>(i)] = best_dist;
  }
  return result;
}

Genome apply_variant_replacement(const Genome& genome,
                                 const std::vector<VariantReplacement>& plan) {
  const auto& dims = genome.dims();
  std::set<std::pair<int, int>> seen;
  for (const auto& r : plan) {
    if (r.position < 0 || r.position >= dims.n_g)
      throw std::out_of_range("apply_variant_replacement: position out of range");
    if (r.victim < 0 || r.victim >= dims.n_v || r.donor < 0 || r.donor >= dims.n_v)
      throw std::out_of_range("apply_variant_replacement: variant out of range");
    if (!seen.insert({r.position, r.victim}).second)
      throw std::invalid_argument(
          "apply_variant_replacement: victim listed twice at the same position");
  }

  Genome result = genome;
  for (const auto& r : plan) {
    // Donor embeddings are always read from the input genome.
    const auto src = genome.variant(r.position, r.donor);
    const auto dst = result.variant_mut(r.position, r.victim);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return result;
}

}  // namespace stylegenes
