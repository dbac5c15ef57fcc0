#pragma once

#include <cstdint>
#include <vector>

#include "stylegenes/point.hpp"
#include "stylegenes/rng.hpp"

namespace stylegenes {

/// Isotropic Gaussian mixture in the plane.
struct MixtureSpec {
  std::vector<Point> modes;
  std::vector<double> weights;  // must sum to 1
  double std_dev = 0.25;
  int count = 8192;

  void validate() const;
};

struct ToyDataset {
  std::vector<Point> points;
  MixtureSpec spec;
  uint64_t seed = 0;
};

/// Mode-first sampling: categorical mode draw by weight, then x and y
/// Gaussian perturbations, three stream consumptions per point.
ToyDataset make_dataset(const MixtureSpec& spec, uint64_t seed);

/// Index of the closest mode; ties break toward the lowest index.
int nearest_mode(const std::vector<Point>& modes, Point p);

}  // namespace stylegenes
