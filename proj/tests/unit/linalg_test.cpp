#include <gtest/gtest.h>

#include <cmath>

#include "samestats/error.hpp"
#include "samestats/linalg.hpp"
#include "samestats/rng.hpp"

namespace samestats {
namespace {

SymMatrix random_symmetric(int d, Rng& rng) {
  SymMatrix m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) m.at(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

TEST(SymMatrix, Basics) {
  SymMatrix m(3);
  m.at(0, 2) = 5.0;
  EXPECT_EQ(m(2, 0), 5.0);
  EXPECT_EQ(SymMatrix::identity(4).trace(), 4.0);
  const double dense[] = {1, 2, 4, 3};
  const auto s = SymMatrix::from_dense(2, dense);
  EXPECT_EQ(s(0, 1), 3.0);
  EXPECT_EQ(s.dense(), (std::vector<double>{1, 3, 3, 3}));
}

TEST(SymEig, IdentityAndDiagonal) {
  const auto e = sym_eig(SymMatrix::identity(5));
  for (double v : e.values) EXPECT_EQ(v, 1.0);

  SymMatrix d(2);
  d.at(0, 0) = 3.0;
  d.at(1, 1) = 1.0;
  const auto f = sym_eig(d);
  EXPECT_EQ(f.values, (std::vector<double>{1.0, 3.0}));
  // column 0 belongs to eigenvalue 1: the second axis
  EXPECT_NEAR(std::abs(f.vectors[1 * 2 + 0]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(f.vectors[0 * 2 + 1]), 1.0, 1e-15);
}

TEST(SymEig, TwoByTwoClosedForm) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    SymMatrix m(2);
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), c = rng.uniform(-5, 5);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 1) = c;
    const double mid = (a + c) / 2, rad = std::hypot((a - c) / 2, b);
    const auto e = sym_eig(m);
    EXPECT_NEAR(e.values[0], mid - rad, 1e-12);
    EXPECT_NEAR(e.values[1], mid + rad, 1e-12);
  }
}

TEST(SymEig, ReconstructionAndOrthonormality) {
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const int d = t < 100 ? 10 : static_cast<int>(rng.uniform_int(1, 16));
    const SymMatrix m = random_symmetric(d, rng);
    const auto e = sym_eig(m);
    ASSERT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    EXPECT_LE(max_abs_diff(eigen_apply(e, [](double x) { return x; }), m), 1e-9);
    const auto qtq = eigen_apply(e, [](double) { return 1.0; });
    EXPECT_LE(max_abs_diff(qtq, SymMatrix::identity(d)), 1e-12);
    double sum = 0.0;
    for (double v : e.values) sum += v;
    EXPECT_NEAR(sum, m.trace(), 1e-10);
  }
}

TEST(SymEig, CovarianceIsPositiveSemidefinite) {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const int d = 10, rows = 15;
    std::vector<double> x(static_cast<std::size_t>(rows * d));
    for (auto& v : x) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    SymMatrix c(d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int r = 0; r < rows; ++r) s += x[static_cast<std::size_t>(r * d + i)] * x[static_cast<std::size_t>(r * d + j)];
        c.at(i, j) = s;
      }
    for (double v : sym_eig(c).values) EXPECT_GE(v, -1e-10);
  }
}

TEST(SymEig, SweepBudget) {
  Rng rng(1);
  EXPECT_THROW(sym_eig(random_symmetric(10, rng), 0), NumericalError);
  EXPECT_LE(sym_eig(random_symmetric(10, rng)).sweeps, 64);
}

TEST(Sandwich, MatchesDenseProduct) {
  Rng rng(3);
  const int d = 6;
  const SymMatrix a = random_symmetric(d, rng), b = random_symmetric(d, rng);
  const SymMatrix s = sandwich(a, b);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) v += a(i, k) * b(k, l) * a(l, j);
      EXPECT_NEAR(s(i, j), v, 1e-12);
    }
  }
}

TEST(EigenApply, MatrixSquareRoot) {
  Rng rng(4);
  SymMatrix m = random_symmetric(5, rng);
  m = sandwich(m, SymMatrix::identity(5));  // m*m is positive semidefinite
  const auto root = eigen_apply(sym_eig(m), [](double x) { return std::sqrt(std::max(0.0, x)); });
  EXPECT_LE(max_abs_diff(sandwich(root, SymMatrix::identity(5)), m), 1e-10);
}

}  // namespace
}  // namespace samestats
