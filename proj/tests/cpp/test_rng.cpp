#include <doctest.h>

#include <cmath>
#include <vector>

#include "stylegenes/rng.hpp"

using namespace stylegenes;

TEST_CASE("same seed gives identical draw sequences") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomStream c(42), d(42);
  for (int i = 0; i < 100; ++i) CHECK(c.gaussian() == d.gaussian());
}

TEST_CASE("child streams are reproducible and independent of position") {
  RandomStream parent(7);
  RandomStream child_before = parent.child("worker");
  parent.next_u64();
  parent.next_u64();
  RandomStream child_after = parent.child("worker");
  for (int i = 0; i < 20; ++i)
    CHECK(child_before.next_u64() == child_after.next_u64());
  CHECK(parent.child("a").next_u64() != parent.child("b").next_u64());
}

TEST_CASE("uniform01 lies in [0,1)") {
  RandomStream rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("box-muller hand case: u1=0.5 u2=0.25 gives zero") {
  // sqrt(-2 ln 0.5) * cos(pi/2); cos rounds to ~6e-17.
  CHECK(std::abs(gaussian_from_uniforms(0.5, 0.25)) < 1e-15);
  CHECK(gaussian_from_uniforms(1.0, 0.0) == 0.0);
}

TEST_CASE("gaussian sample moments") {
  RandomStream rng(2024);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.gaussian();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("categorical index respects point masses and zero entries") {
  RandomStream rng(5);
  const std::vector<double> point{0.0, 1.0, 0.0};
  for (int i = 0; i < 50; ++i) CHECK(categorical_index(point, rng) == 1);

  const std::vector<double> skewed{0.9, 0.1};
  int zeros = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i)
    if (categorical_index(skewed, rng) == 0) ++zeros;
  CHECK(std::abs(zeros / static_cast<double>(n) - 0.9) < 0.01);
}
