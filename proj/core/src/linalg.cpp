#include "samestats/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "samestats/error.hpp"

namespace samestats {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw ValidationError("matrix dimension must be non-negative");
  const auto d = static_cast<std::size_t>(dim);
  data_.assign(d * (d + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::from_dense(int dim, std::span<const double> a) {
  if (a.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw ValidationError("dense matrix has the wrong number of entries");
  }
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      m.at(i, j) = 0.5 * (a[static_cast<std::size_t>(i * dim + j)] + a[static_cast<std::size_t>(j * dim + i)]);
    }
  }
  return m;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<double> SymMatrix::dense() const {
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<double> a(d * d);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) a[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] = (*this)(i, j);
  }
  return a;
}

SymEigen sym_eig(const SymMatrix& m, int max_sweeps) {
  const int d = m.dim();
  const auto du = static_cast<std::size_t>(d);
  std::vector<double> a = m.dense();
  std::vector<double> v(du * du, 0.0);
  for (std::size_t i = 0; i < du; ++i) v[i * du + i] = 1.0;
  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * du + static_cast<std::size_t>(j)]; };

  double frob = 0.0;
  for (double x : a) frob += x * x;
  frob = std::sqrt(frob);
  if (!std::isfinite(frob)) throw NumericalError("sym_eig: matrix has non-finite entries");
  const double tol = 1e-12 * std::max(1.0, frob);

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) s += 2.0 * A(i, j) * A(i, j);
    }
    return std::sqrt(s);
  };

  SymEigen out;
  while (off_norm() > tol) {
    if (out.sweeps == max_sweeps) {
      throw NumericalError("sym_eig: no convergence after " + std::to_string(max_sweeps) + " sweeps");
    }
    ++out.sweeps;
    for (int p = 0; p < d - 1; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating A(p,q); t is the smaller root of
        // t^2 + 2 theta t - 1 = 0.
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = A(k, p);
          const double akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = A(p, k);
          const double aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (std::size_t k = 0; k < du; ++k) {
          const double vkp = v[k * du + static_cast<std::size_t>(p)];
          const double vkq = v[k * du + static_cast<std::size_t>(q)];
          v[k * du + static_cast<std::size_t>(p)] = c * vkp - s * vkq;
          v[k * du + static_cast<std::size_t>(q)] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(du);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return A(x, x) < A(y, y); });
  out.values.resize(du);
  out.vectors.resize(du * du);
  for (std::size_t k = 0; k < du; ++k) {
    const int src = order[k];
    out.values[k] = A(src, src);
    for (std::size_t i = 0; i < du; ++i) out.vectors[i * du + k] = v[i * du + static_cast<std::size_t>(src)];
  }
  return out;
}

SymMatrix sandwich(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("sandwich: dimension mismatch");
  const int d = a.dim();
  const auto du = static_cast<std::size_t>(d);
  std::vector<double> ab(du * du, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += a(i, k) * b(k, j);
      ab[static_cast<std::size_t>(i) * du + static_cast<std::size_t>(j)] = s;
    }
  }
  SymMatrix out(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      double s = 0.0;
      double t = 0.0;
      for (int k = 0; k < d; ++k) {
        s += ab[static_cast<std::size_t>(i) * du + static_cast<std::size_t>(k)] * a(k, j);
        t += ab[static_cast<std::size_t>(j) * du + static_cast<std::size_t>(k)] * a(k, i);
      }
      out.at(i, j) = 0.5 * (s + t);
    }
  }
  return out;
}

}  // namespace samestats
