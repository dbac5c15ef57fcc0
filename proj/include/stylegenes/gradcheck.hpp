#pragma once

#include <functional>
#include <span>
#include <vector>

namespace stylegenes {

/// A scalar loss together with its analytic gradient, both functions of a
/// flat parameter vector.
struct DifferentiableLoss {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> gradient;
};

/// Central differences (f(x+h) - f(x-h)) / 2h against the analytic gradient.
/// Relative error uses a max(1, |analytic|) denominator. Returns the worst
/// error over the probed coordinates (all coordinates when `probes` is empty).
double finite_diff_check(const DifferentiableLoss& loss,
                         std::span<const double> params, double h,
                         std::span<const size_t> probes = {});

}  // namespace stylegenes
