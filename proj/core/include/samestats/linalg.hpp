#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace samestats {

/// Dense symmetric matrix stored as its packed upper triangle.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim);

  static SymMatrix identity(int dim);
  /// Symmetrizes a row-major dim x dim array as (A + A^T) / 2.
  static SymMatrix from_dense(int dim, std::span<const double> row_major);

  int dim() const noexcept { return dim_; }
  double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }
  double& at(int i, int j) noexcept { return data_[index(i, j)]; }

  double trace() const noexcept;
  /// Row-major dim x dim copy.
  std::vector<double> dense() const;

 private:
  std::size_t index(int i, int j) const noexcept {
    if (i > j) std::swap(i, j);
    const auto ii = static_cast<std::size_t>(i);
    return ii * static_cast<std::size_t>(dim_) - ii * (ii + 1) / 2 + static_cast<std::size_t>(j);
  }

  int dim_ = 0;
  std::vector<double> data_;
};

struct SymEigen {
  /// Ascending.
  std::vector<double> values;
  /// Column k (row-major storage: vectors[i * dim + k]) is the unit
  /// eigenvector of values[k].
  std::vector<double> vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops to
/// 1e-12 * max(1, ||M||_F). Throws NumericalError if `max_sweeps` is not
/// enough.
SymEigen sym_eig(const SymMatrix& m, int max_sweeps = 64);

/// Q f(L) Q^T for an eigendecomposition; f is applied to each eigenvalue.
template <typename F>
SymMatrix eigen_apply(const SymEigen& e, F&& f) {
  const int d = static_cast<int>(e.values.size());
  std::vector<double> fl(e.values.size());
  for (std::size_t k = 0; k < fl.size(); ++k) fl[k] = f(e.values[k]);
  SymMatrix out(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        s += e.vectors[static_cast<std::size_t>(i * d + k)] * fl[static_cast<std::size_t>(k)] *
             e.vectors[static_cast<std::size_t>(j * d + k)];
      }
      out.at(i, j) = s;
    }
  }
  return out;
}

/// A * B * A for symmetric A and B (the result is symmetric).
SymMatrix sandwich(const SymMatrix& a, const SymMatrix& b);

}  // namespace samestats
