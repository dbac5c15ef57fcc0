#include "stylegenes/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace stylegenes {

void AttributeDef::validate() const {
  if (id.empty()) throw std::invalid_argument("AttributeDef: empty id");
  if (const auto* h = std::get_if<HalfplaneAttr>(&kind)) {
    if (!(h->beta > 0.0)) throw std::invalid_argument("AttributeDef: beta must be > 0");
    if (h->wx == 0.0 && h->wy == 0.0)
      throw std::invalid_argument("AttributeDef: halfplane normal must be nonzero");
  } else if (const auto* r = std::get_if<RadialAttr>(&kind)) {
    if (!(r->beta > 0.0)) throw std::invalid_argument("AttributeDef: beta must be > 0");
  } else if (const auto* m = std::get_if<NearestModeAttr>(&kind)) {
    if (m->modes.empty()) throw std::invalid_argument("AttributeDef: empty mode set");
    if (m->target < 0 || m->target >= static_cast<int>(m->modes.size()))
      throw std::invalid_argument("AttributeDef: target mode out of range");
  }
}

double eval_attribute(const AttributeDef& attr, Point p) {
  if (const auto* h = std::get_if<HalfplaneAttr>(&attr.kind)) {
    return logistic(h->beta * (h->wx * p.x + h->wy * p.y + h->b));
  }
  if (const auto* r = std::get_if<RadialAttr>(&attr.kind)) {
    const double dx = p.x - r->center.x;
    const double dy = p.y - r->center.y;
    return logistic(r->beta * (r->radius - std::sqrt(dx * dx + dy * dy)));
  }
  const auto& m = std::get<NearestModeAttr>(attr.kind);
  return nearest_mode(m.modes, p) == m.target ? 1.0 : 0.0;
}

SampleBatch collect_samples(const GanModel& model, int n,
                            const std::vector<AttributeDef>& attrs, RandomStream& stream) {
  if (model.prior != PriorKind::kGenome)
    throw std::invalid_argument("collect_samples: genome prior required");
  if (n < 0) throw std::invalid_argument("collect_samples: negative sample count");
  for (const auto& a : attrs) a.validate();

  SampleBatch batch;
  batch.seed = stream.seed();
  for (const auto& a : attrs) batch.attribute_ids.push_back(a.id);
  batch.sequences.reserve(static_cast<size_t>(n));
  batch.points.reserve(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    GeneSequence seq = sample_sequence(model.genome.dims(), stream);
    const Point p = generate(model, seq);
    std::vector<double> probs(attrs.size());
    for (size_t l = 0; l < attrs.size(); ++l) probs[l] = eval_attribute(attrs[l], p);
    batch.sequences.push_back(std::move(seq));
    batch.points.push_back(p);
    batch.attr_probs.push_back(std::move(probs));
    batch.disc_logits.push_back(discriminate(model, p));
  }
  return batch;
}

int AttributeStats::attribute_index(const std::string& id) const {
  for (size_t l = 0; l < attribute_ids.size(); ++l)
    if (attribute_ids[l] == id) return static_cast<int>(l);
  throw std::invalid_argument("AttributeStats: unknown attribute id: " + id);
}

namespace {

AttributeStats stats_from_batch(const std::vector<GeneSequence>& sequences,
                                const std::vector<std::vector<double>>& attr_probs,
                                const std::vector<std::string>& attribute_ids,
                                const GenomeDims& dims, double alpha) {
  const size_t n_attrs = attribute_ids.size();
  const size_t cells = static_cast<size_t>(dims.n_g) * dims.n_v;

  AttributeStats stats;
  stats.dims = dims;
  stats.attribute_ids = attribute_ids;
  stats.alpha = alpha;
  stats.total_samples = static_cast<int64_t>(sequences.size());
  stats.table.assign(n_attrs * cells, 0.0);
  stats.counts.assign(cells, 0);
  stats.empty_cells.assign(cells, 0);
  stats.global_means.assign(n_attrs, 0.5);  // neutral value for empty batches

  std::vector<double> sums(n_attrs * cells, 0.0);
  for (size_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    validate_sequence(dims, seq);
    for (int i = 0; i < dims.n_g; ++i) {
      const size_t cell =
          static_cast<size_t>(i) * dims.n_v + seq.indices[static_cast<size_t>(i)];
      ++stats.counts[cell];
      for (size_t l = 0; l < n_attrs; ++l) sums[l * cells + cell] += attr_probs[s][l];
    }
  }
  if (!sequences.empty()) {
    for (size_t l = 0; l < n_attrs; ++l) {
      double total = 0.0;
      for (size_t s = 0; s < sequences.size(); ++s) total += attr_probs[s][l];
      stats.global_means[l] = total / static_cast<double>(sequences.size());
    }
  }

  for (size_t cell = 0; cell < cells; ++cell) {
    const auto count = stats.counts[cell];
    if (count == 0) stats.empty_cells[cell] = 1;
    for (size_t l = 0; l < n_attrs; ++l) {
      const double mean = stats.global_means[l];
      double value;
      if (count == 0 && alpha == 0.0) {
        value = mean;
      } else {
        value = (sums[l * cells + cell] + alpha * mean) /
                (static_cast<double>(count) + alpha);
      }
      stats.table[l * cells + cell] = value;
    }
  }
  return stats;
}

}  // namespace

AttributeStats estimate_stats(const SampleBatch& batch, const GenomeDims& dims,
                              double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("estimate_stats: alpha must be >= 0");
  return stats_from_batch(batch.sequences, batch.attr_probs, batch.attribute_ids, dims,
                          alpha);
}

std::vector<GeneSequence> enumerate_sequences(const GenomeDims& dims) {
  dims.validate();
  std::vector<GeneSequence> all;
  GeneSequence k;
  k.indices.assign(static_cast<size_t>(dims.n_g), 0);
  while (true) {
    all.push_back(k);
    int pos = dims.n_g - 1;
    while (pos >= 0) {
      if (++k.indices[static_cast<size_t>(pos)] < dims.n_v) break;
      k.indices[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return all;
}

AttributeStats exact_stats(const GanModel& model, const std::vector<AttributeDef>& attrs) {
  const auto& dims = model.genome.dims();
  if (capacity(dims) > 100000)
    throw std::invalid_argument("exact_stats: capacity exceeds the enumeration limit");
  for (const auto& a : attrs) a.validate();

  const auto sequences = enumerate_sequences(dims);
  std::vector<std::vector<double>> probs;
  probs.reserve(sequences.size());
  std::vector<std::string> ids;
  for (const auto& a : attrs) ids.push_back(a.id);
  for (const auto& seq : sequences) {
    const Point p = generate(model, seq);
    std::vector<double> row(attrs.size());
    for (size_t l = 0; l < attrs.size(); ++l) row[l] = eval_attribute(attrs[l], p);
    probs.push_back(std::move(row));
  }
  return stats_from_batch(sequences, probs, ids, dims, 0.0);
}

void ConditionalSpec::validate() const {
  std::set<std::string> ids;
  for (const auto& c : conditions) {
    if (c.desired != 0 && c.desired != 1)
      throw std::invalid_argument("ConditionalSpec: desired value must be 0 or 1");
    if (!ids.insert(c.attribute_id).second)
      throw std::invalid_argument("ConditionalSpec: duplicate attribute id: " +
                                  c.attribute_id);
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("ConditionalSpec: temperature must be finite and >= 0");
}

PositionDistributions conditional_distributions(const AttributeStats& stats,
                                                const ConditionalSpec& spec) {
  spec.validate();
  const auto& dims = stats.dims;
  std::vector<int> attr_idx;
  for (const auto& c : spec.conditions)
    attr_idx.push_back(stats.attribute_index(c.attribute_id));

  PositionDistributions dists;
  dists.n_g = dims.n_g;
  dists.n_v = dims.n_v;
  dists.rows.assign(static_cast<size_t>(dims.n_g) * dims.n_v, 0.0);

  std::vector<double> logw(static_cast<size_t>(dims.n_v));
  for (int i = 0; i < dims.n_g; ++i) {
    double max_logw = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < dims.n_v; ++j) {
      double acc = 0.0;
      for (size_t c = 0; c < spec.conditions.size(); ++c) {
        const double p = stats.p(static_cast<size_t>(attr_idx[c]), i, j);
        const double q = spec.conditions[c].desired == 1 ? p : 1.0 - p;
        acc += std::log(q);
      }
      logw[static_cast<size_t>(j)] = acc;
      max_logw = std::max(max_logw, acc);
    }
    if (max_logw == -std::numeric_limits<double>::infinity())
      throw std::runtime_error(
          "conditional_distributions: unnormalizable all-zero row at position " +
          std::to_string(i));

    double* row = dists.rows.data() + static_cast<size_t>(i) * dims.n_v;
    if (spec.temperature == 0.0) {
      // Argmax limit; ties resolve to the lowest index via strict >.
      int best = 0;
      for (int j = 1; j < dims.n_v; ++j)
        if (logw[static_cast<size_t>(j)] > logw[static_cast<size_t>(best)]) best = j;
      row[best] = 1.0;
      continue;
    }
    const double inv_t = 1.0 / spec.temperature;
    double total = 0.0;
    for (int j = 0; j < dims.n_v; ++j) {
      const double w = std::exp(inv_t * (logw[static_cast<size_t>(j)] - max_logw));
      row[j] = w;
      total += w;
    }
    for (int j = 0; j < dims.n_v; ++j) row[j] /= total;
  }
  return dists;
}

GeneSequence sample_conditional(const PositionDistributions& dists, RandomStream& stream) {
  GeneSequence seq;
  seq.indices.resize(static_cast<size_t>(dists.n_g));
  for (int i = 0; i < dists.n_g; ++i)
    seq.indices[static_cast<size_t>(i)] = categorical_index(dists.row(i), stream);
  return seq;
}

}  // namespace stylegenes
