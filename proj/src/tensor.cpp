#include "stylegenes/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stylegenes {

DenseVector matvec(const DenseMatrix& w, std::span<const double> x) {
  if (static_cast<int>(x.size()) != w.cols)
    throw std::invalid_argument("matvec: shape mismatch");
  DenseVector y(static_cast<size_t>(w.rows), 0.0);
  const double* row = w.data.data();
  for (int r = 0; r < w.rows; ++r, row += w.cols) {
    double acc = 0.0;
    for (int c = 0; c < w.cols; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

DenseVector matvec_transposed(const DenseMatrix& w, std::span<const double> x) {
  if (static_cast<int>(x.size()) != w.rows)
    throw std::invalid_argument("matvec_transposed: shape mismatch");
  DenseVector y(static_cast<size_t>(w.cols), 0.0);
  const double* row = w.data.data();
  for (int r = 0; r < w.rows; ++r, row += w.cols) {
    const double g = x[r];
    if (g == 0.0) continue;
    for (int c = 0; c < w.cols; ++c) y[c] += row[c] * g;
  }
  return y;
}

void add_outer(DenseMatrix& acc, std::span<const double> g, std::span<const double> x) {
  if (static_cast<int>(g.size()) != acc.rows || static_cast<int>(x.size()) != acc.cols)
    throw std::invalid_argument("add_outer: shape mismatch");
  double* row = acc.data.data();
  for (int r = 0; r < acc.rows; ++r, row += acc.cols) {
    const double gr = g[r];
    if (gr == 0.0) continue;
    for (int c = 0; c < acc.cols; ++c) row[c] += gr * x[c];
  }
  return;
}

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v))
      throw std::runtime_error(std::string(what) + ": non-finite value");
  }
}

}  // namespace stylegenes
