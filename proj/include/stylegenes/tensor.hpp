#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stylegenes {

using DenseVector = std::vector<double>;

/// Row-major dense matrix with explicit shape.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  bool operator==(const DenseMatrix&) const = default;
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)};
  }
  size_t size() const { return data.size(); }
};

/// y = W x. Throws on shape mismatch.
DenseVector matvec(const DenseMatrix& w, std::span<const double> x);

/// y = W^T x.
DenseVector matvec_transposed(const DenseMatrix& w, std::span<const double> x);

/// acc += g x^T (outer product accumulate; g has w.rows entries, x has w.cols).
void add_outer(DenseMatrix& acc, std::span<const double> g, std::span<const double> x);

void check_finite(std::span<const double> values, const char* what);

}  // namespace stylegenes
