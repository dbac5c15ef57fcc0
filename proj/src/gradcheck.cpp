#include "stylegenes/gradcheck.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stylegenes {

double finite_diff_check(const DifferentiableLoss& loss,
                         std::span<const double> params, double h,
                         std::span<const size_t> probes) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_check: h must be positive");
  std::vector<double> work(params.begin(), params.end());
  const std::vector<double> analytic = loss.gradient(work);
  if (analytic.size() != work.size())
    throw std::invalid_argument("finite_diff_check: gradient length mismatch");

  std::vector<size_t> all;
  if (probes.empty()) {
    all.resize(work.size());
    std::iota(all.begin(), all.end(), size_t{0});
    probes = all;
  }

  double worst = 0.0;
  for (size_t idx : probes) {
    if (idx >= work.size()) throw std::out_of_range("finite_diff_check: probe index");
    const double saved = work[idx];
    work[idx] = saved + h;
    const double up = loss.value(work);
    work[idx] = saved - h;
    const double down = loss.value(work);
    work[idx] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double denom = std::max(1.0, std::abs(analytic[idx]));
    worst = std::max(worst, std::abs(numeric - analytic[idx]) / denom);
  }
  return worst;
}

}  // namespace stylegenes
