#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "stylegenes/genome.hpp"
#include "stylegenes/rng.hpp"

using namespace stylegenes;

namespace {

// Independent decimal oracle: repeated schoolbook multiply of a digit vector.
std::string decimal_power(unsigned base, unsigned exponent) {
  std::vector<unsigned> digits{1};  // little-endian decimal digits
  for (unsigned e = 0; e < exponent; ++e) {
    unsigned carry = 0;
    for (auto& d : digits) {
      const unsigned prod = d * base + carry;
      d = prod % 10;
      carry = prod / 10;
    }
    while (carry) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  }
  std::string out;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    out += static_cast<char>('0' + *it);
  return out;
}

// Enumerates every sequence via an odometer and counts them.
long enumerate_count(const GenomeDims& dims) {
  std::vector<int> k(static_cast<size_t>(dims.n_g), 0);
  long count = 0;
  while (true) {
    ++count;
    int pos = dims.n_g - 1;
    while (pos >= 0) {
      if (++k[static_cast<size_t>(pos)] < dims.n_v) break;
      k[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return count;
}

Genome tiny_genome(std::vector<double> values, GenomeDims dims) {
  return Genome(dims, std::move(values), 0);
}

}  // namespace

TEST_CASE("init_genome is deterministic and shaped by dims") {
  const Genome a = init_genome({1, 1, 1}, 123);
  const Genome b = init_genome({1, 1, 1}, 123);
  CHECK(a.raw().size() == 1);
  CHECK(a.raw() == b.raw());

  const Genome big = init_genome({64, 256, 8}, 5);
  CHECK(big.raw().size() == 64 * 256 * 8);

  CHECK_THROWS_AS(init_genome({0, 3, 4}, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_genome({2, 0, 4}, 1), std::invalid_argument);
  CHECK_THROWS_AS(init_genome({2, 3, 0}, 1), std::invalid_argument);
}

TEST_CASE("init_genome sample mean is near zero") {
  const Genome g = init_genome({2, 3, 4}, 7);
  double sum = 0.0;
  for (double v : g.raw()) sum += v;
  const double mean = sum / static_cast<double>(g.raw().size());
  CHECK(std::abs(mean) <= 3.0 / std::sqrt(24.0));
}

TEST_CASE("sample_sequence with a single variant is all zeros") {
  RandomStream rng(9);
  const GenomeDims dims{5, 1, 2};
  const auto seq = sample_sequence(dims, rng);
  CHECK(seq.indices == std::vector<int>{0, 0, 0, 0, 0});
}

TEST_CASE("sample_sequence cell frequencies are uniform") {
  const GenomeDims dims{2, 3, 1};
  RandomStream rng(31337);
  const int draws = 30000;
  int counts[2][3] = {};
  for (int n = 0; n < draws; ++n) {
    const auto seq = sample_sequence(dims, rng);
    for (int i = 0; i < 2; ++i) ++counts[i][seq.indices[static_cast<size_t>(i)]];
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(counts[i][j] / static_cast<double>(draws) - 1.0 / 3.0) <= 0.01);
}

TEST_CASE("sample_sequence is deterministic from stream state") {
  const GenomeDims dims{6, 4, 1};
  RandomStream a(77), b(77);
  for (int i = 0; i < 10; ++i)
    CHECK(sample_sequence(dims, a).indices == sample_sequence(dims, b).indices);
}

TEST_CASE("assemble looks up the selected variants") {
  const GenomeDims dims{2, 2, 1};
  const Genome g = tiny_genome({1, 2, 3, 4}, dims);
  CHECK(assemble(g, {{0, 1}}).values == std::vector<double>{1, 4});
  CHECK(assemble(g, {{1, 0}}).values == std::vector<double>{2, 3});
  CHECK_THROWS_AS(assemble(g, {{0, 2}}), std::out_of_range);
  CHECK_THROWS_AS(assemble(g, {{0}}), std::invalid_argument);
}

TEST_CASE("capacity matches the decimal oracle") {
  CHECK(capacity_decimal({64, 256, 8}) == decimal_power(256, 64));
  CHECK(capacity_decimal({1, 256, 512}) == "256");
  CHECK(capacity_decimal({2, 3, 4}) == "9");

  const std::string big = capacity_decimal({64, 256, 8});
  CHECK(big.size() == 155);
  CHECK(big.substr(0, 3) == "134");
  CHECK(to_scientific(capacity({64, 256, 8}), 3) == "1.34e154");
}

TEST_CASE("capacity equals exhaustive enumeration for small dims") {
  for (const GenomeDims dims : {GenomeDims{2, 3, 1}, GenomeDims{3, 4, 1},
                                GenomeDims{4, 3, 2}, GenomeDims{13, 2, 1},
                                GenomeDims{1, 9999, 1}}) {
    CAPTURE(dims.n_g);
    CAPTURE(dims.n_v);
    CHECK(capacity(dims) == BigInt(enumerate_count(dims)));
  }
}

TEST_CASE("scientific rendering rounds half up with carries") {
  CHECK(to_scientific(BigInt(256), 3) == "2.56e2");
  CHECK(to_scientific(BigInt(9996), 3) == "1e4");
  CHECK(to_scientific(BigInt(1349), 3) == "1.35e3");
  CHECK(to_scientific(BigInt(1344), 3) == "1.34e3");
  CHECK(to_scientific(BigInt(5), 3) == "5e0");
}

TEST_CASE("trainable_param_count is n_v * d") {
  CHECK(trainable_param_count({1, 70000, 512}) == 35'840'000);
  CHECK(trainable_param_count({64, 256, 8}) == 131072);
  CHECK(trainable_param_count({32, 256, 16}) == 131072);
}

TEST_CASE("interpolation endpoints and linearity") {
  const GenomeDims dims{1, 2, 1};
  const Genome g = tiny_genome({0, 2}, dims);
  const GeneSequence a{{0}}, b{{1}};
  CHECK(interpolate_codes(g, a, b, 0.0).values == assemble(g, a).values);
  CHECK(interpolate_codes(g, a, b, 1.0).values == assemble(g, b).values);
  CHECK(interpolate_codes(g, a, b, 0.25).values == std::vector<double>{0.5});
}

TEST_CASE("interpolation is symmetric under (a,b,t) -> (b,a,1-t)") {
  const Genome g = init_genome({4, 5, 3}, 21);
  RandomStream rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = sample_sequence(g.dims(), rng);
    const auto b = sample_sequence(g.dims(), rng);
    const double t = rng.uniform01();
    const auto ab = interpolate_codes(g, a, b, t).values;
    const auto ba = interpolate_codes(g, b, a, 1.0 - t).values;
    for (size_t i = 0; i < ab.size(); ++i) CHECK(ab[i] == doctest::Approx(ba[i]).epsilon(1e-12));
  }
}

TEST_CASE("snap_nearest recovers assembled codes with zero distance") {
  const Genome g = init_genome({3, 4, 2}, 33);
  RandomStream rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto k = sample_sequence(g.dims(), rng);
    const auto code = assemble(g, k);
    for (SnapMetric metric :
         {SnapMetric::kManhattan, SnapMetric::kEuclidean, SnapMetric::kCosine}) {
      const auto snapped = snap_nearest(g, code, metric);
      CHECK(snapped.sequence == k);
      for (double dist : snapped.distances) CHECK(dist == 0.0);
    }
  }
}

TEST_CASE("snap_nearest euclidean hand case") {
  const GenomeDims dims{1, 2, 2};
  const Genome g = tiny_genome({1, 0, 0, 1}, dims);
  const auto snapped = snap_nearest(g, LatentCode{{0.9, 0.1}}, SnapMetric::kEuclidean);
  CHECK(snapped.sequence.indices == std::vector<int>{0});
  CHECK(snapped.distances[0] == doctest::Approx(std::sqrt(0.02)).epsilon(1e-12));
}

TEST_CASE("snap_nearest breaks ties toward the lowest index") {
  const GenomeDims dims{1, 2, 2};
  const Genome g = tiny_genome({1, 0, -1, 0}, dims);
  for (SnapMetric metric : {SnapMetric::kManhattan, SnapMetric::kEuclidean}) {
    const auto snapped = snap_nearest(g, LatentCode{{0.0, 0.0}}, metric);
    CHECK(snapped.sequence.indices == std::vector<int>{0});
  }
}

TEST_CASE("snap_nearest rejects zero-norm vectors under cosine") {
  const GenomeDims dims{1, 2, 2};
  const Genome g = tiny_genome({1, 0, 0, 1}, dims);
  CHECK_THROWS_AS(snap_nearest(g, LatentCode{{0.0, 0.0}}, SnapMetric::kCosine),
                  std::invalid_argument);
  const Genome zero_variant = tiny_genome({0, 0, 0, 1}, dims);
  CHECK_THROWS_AS(snap_nearest(zero_variant, LatentCode{{1.0, 1.0}}, SnapMetric::kCosine),
                  std::invalid_argument);
}

TEST_CASE("variant replacement copies donors and keeps the input intact") {
  const GenomeDims dims{1, 2, 1};
  const Genome g = tiny_genome({5, 9}, dims);

  const Genome unchanged = apply_variant_replacement(g, {});
  CHECK(unchanged.raw() == g.raw());

  const Genome replaced = apply_variant_replacement(g, {{0, 1, 0}});
  CHECK(replaced.raw() == std::vector<double>{5, 5});
  CHECK(g.raw() == std::vector<double>{5, 9});

  CHECK_THROWS_AS(apply_variant_replacement(g, {{0, 2, 0}}), std::out_of_range);
  CHECK_THROWS_AS(apply_variant_replacement(g, {{0, 1, 0}, {0, 1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("replacement never increases the set of reachable codes") {
  const Genome g = init_genome({2, 3, 1}, 55);
  auto reachable = [](const Genome& genome) {
    std::set<std::vector<double>> codes;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        codes.insert(assemble(genome, {{a, b}}).values);
    return codes.size();
  };
  const size_t before = reachable(g);
  const Genome pruned = apply_variant_replacement(g, {{0, 2, 0}, {1, 1, 2}});
  CHECK(reachable(pruned) <= before);
}

TEST_CASE("assemble is injective when variants are pairwise distinct") {
  const Genome g = init_genome({3, 3, 2}, 101);
  std::set<std::vector<double>> seen;
  std::vector<int> k(3, 0);
  int count = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        seen.insert(assemble(g, {{a, b, c}}).values);
        ++count;
      }
  CHECK(static_cast<int>(seen.size()) == count);
}
