#include "stylegenes/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace stylegenes {

void MixtureSpec::validate() const {
  if (modes.empty()) throw std::invalid_argument("MixtureSpec: at least one mode required");
  if (weights.size() != modes.size())
    throw std::invalid_argument("MixtureSpec: one weight per mode required");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("MixtureSpec: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("MixtureSpec: weights must sum to 1");
  if (!(std_dev >= 0.0) || !std::isfinite(std_dev))
    throw std::invalid_argument("MixtureSpec: std_dev must be nonnegative");
  if (count < 0) throw std::invalid_argument("MixtureSpec: negative count");
}

ToyDataset make_dataset(const MixtureSpec& spec, uint64_t seed) {
  spec.validate();
  ToyDataset data;
  data.spec = spec;
  data.seed = seed;
  data.points.reserve(static_cast<size_t>(spec.count));
  RandomStream rng(seed);
  for (int n = 0; n < spec.count; ++n) {
    const int mode = categorical_index(spec.weights, rng);
    const Point& center = spec.modes[static_cast<size_t>(mode)];
    const double gx = rng.gaussian();
    const double gy = rng.gaussian();
    data.points.push_back({center.x + spec.std_dev * gx, center.y + spec.std_dev * gy});
  }
  return data;
}

int nearest_mode(const std::vector<Point>& modes, Point p) {
  if (modes.empty()) throw std::invalid_argument("nearest_mode: empty mode list");
  int best = 0;
  double best_sq = -1.0;
  for (size_t m = 0; m < modes.size(); ++m) {
    const double dx = p.x - modes[m].x;
    const double dy = p.y - modes[m].y;
    const double sq = dx * dx + dy * dy;
    if (best_sq < 0.0 || sq < best_sq) {
      best = static_cast<int>(m);
      best_sq = sq;
    }
  }
  return best;
}

}  // namespace stylegenes
