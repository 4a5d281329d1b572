#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "doctest.h"
#include "ncpflow/gmres.hpp"
#include "ncpflow/preconditioner.hpp"
#include "ncpflow/sparse.hpp"

using namespace ncpflow;

namespace {

SparseMatrix dense_to_sparse(const std::vector<std::vector<double>>& d) {
  const int n = static_cast<int>(d.size());
  std::vector<std::vector<int>> pattern(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pattern[i].push_back(j);
  SparseMatrix a = SparseMatrix::from_pattern(n, n, pattern);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.set(i, j, d[i][j]);
  return a;
}

// Plain Gaussian elimination with partial pivoting, used as the direct oracle.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("sparse matrix pattern and accessors") {
  SparseMatrix a = SparseMatrix::from_pattern(3, 3, {{0, 2}, {1}, {2, 0}});
  a.set(0, 0, 1.0);
  a.set(0, 2, 2.0);
  a.add(0, 2, 0.5);
  a.set(1, 1, 3.0);
  CHECK(a.at(0, 2) == doctest::Approx(2.5));
  CHECK(a.at(0, 1) == doctest::Approx(0.0));  // outside the pattern
  CHECK(a.find(0, 1) == -1);
  CHECK_THROWS(a.set(0, 1, 1.0));
  CHECK_THROWS(SparseMatrix::from_pattern(1, 1, {{0, 0}}));  // duplicate column
  // columns stored sorted even when given unsorted
  CHECK(a.col_idx()[a.row_ptr()[2]] == 0);
}

TEST_CASE("spmv identity and zero") {
  SparseMatrix eye = SparseMatrix::from_pattern(3, 3, {{0}, {1}, {2}});
  for (int i = 0; i < 3; ++i) eye.set(i, i, 1.0);
  const std::vector<double> x = {1.0, -2.0, 3.5};
  CHECK(spmv(eye, x) == x);

  const SparseMatrix zero = SparseMatrix::from_pattern(3, 3, {{}, {}, {}});
  for (double v : spmv(zero, x)) CHECK(v == 0.0);

  CHECK_THROWS(spmv(eye, {1.0, 2.0}));
}

TEST_CASE("spmv against a triple-loop dense oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 5;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<double> x(n);
  for (auto& row : d)
    for (auto& v : row) v = u(rng);
  for (auto& v : x) v = u(rng);
  const auto y = spmv(dense_to_sparse(d), x);
  for (int i = 0; i < n; ++i) {
    double want = 0.0;
    for (int j = 0; j < n; ++j) want += d[i][j] * x[j];
    CHECK(y[i] == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("coordinate export is 1-indexed") {
  SparseMatrix a = SparseMatrix::from_pattern(2, 2, {{0, 1}, {1}});
  a.set(0, 0, 1.5);
  a.set(0, 1, -2.0);
  a.set(1, 1, 3.0);
  const std::string path = "coord_export_test.txt";
  a.write_coordinate(path);
  std::ifstream in(path);
  int r, c;
  double v;
  REQUIRE((in >> r >> c >> v));
  CHECK(r == 1);
  CHECK(c == 1);
  CHECK(v == doctest::Approx(1.5));
  in >> r >> c >> v;
  CHECK(c == 2);
  std::remove(path.c_str());
}

TEST_CASE("gmres on the identity converges immediately") {
  SparseMatrix eye = SparseMatrix::from_pattern(4, 4, {{0}, {1}, {2}, {3}});
  for (int i = 0; i < 4; ++i) eye.set(i, i, 1.0);
  const std::vector<double> b = {1.0, 2.0, 3.0, 4.0};
  const auto r = gmres_solve(eye, b, std::vector<double>(4, 0.0), IdentityPreconditioner{}, {});
  CHECK(r.converged);
  CHECK(r.iterations <= 1);
  for (int i = 0; i < 4; ++i) CHECK(r.x[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("gmres finite termination on a 2x2 spd system") {
  const auto a = dense_to_sparse({{4.0, 1.0}, {1.0, 3.0}});
  const std::vector<double> b = {1.0, 2.0};
  const auto r = gmres_solve(a, b, {0.0, 0.0}, IdentityPreconditioner{}, {});
  CHECK(r.converged);
  CHECK(r.iterations <= 2);
  // inverse of [[4,1],[1,3]] is [[3,-1],[-1,4]]/11
  CHECK(r.x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-10));
  CHECK(r.x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-10));
}

TEST_CASE("gmres matches a dense direct solve on a random 50x50 system") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 50;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i][j] = u(rng);
    d[i][i] += 2.0 * n;  // keep it well conditioned
  }
  std::vector<double> b(n);
  for (auto& v : b) v = u(rng);

  const auto result = gmres_solve(dense_to_sparse(d), b, std::vector<double>(n, 0.0),
                                  IdentityPreconditioner{}, {});
  const auto x_star = dense_solve(d, b);
  CHECK(result.converged);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += (result.x[i] - x_star[i]) * (result.x[i] - x_star[i]);
    den += x_star[i] * x_star[i];
  }
  CHECK(std::sqrt(num / den) <= 1e-10);
}

TEST_CASE("gmres reports the true residual and flags non-convergence") {
  const auto a = dense_to_sparse({{1.0, 0.0}, {0.0, 1.0e-14}});
  const std::vector<double> b = {1.0, 1.0};
  GmresConfig cfg;
  cfg.max_iterations = 1;
  cfg.restart = 1;
  const auto r = gmres_solve(a, b, {0.0, 0.0}, IdentityPreconditioner{}, cfg);
  const auto res = spmv(a, r.x);
  double true_norm = 0.0;
  for (int i = 0; i < 2; ++i) true_norm += (res[i] - b[i]) * (res[i] - b[i]);
  true_norm = std::sqrt(true_norm);
  CHECK(r.residual_norm == doctest::Approx(true_norm).epsilon(1e-10));
}

TEST_CASE("gmres is deterministic") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 20;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[i][j] = u(rng);
    d[i][i] += 10.0;
  }
  std::vector<double> b(n, 1.0);
  const auto a = dense_to_sparse(d);
  const auto r1 = gmres_solve(a, b, std::vector<double>(n, 0.0), IdentityPreconditioner{}, {});
  const auto r2 = gmres_solve(a, b, std::vector<double>(n, 0.0), IdentityPreconditioner{}, {});
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.x == r2.x);
}

TEST_CASE("ilu0 on a diagonal matrix is exact") {
  SparseMatrix a = SparseMatrix::from_pattern(3, 3, {{0}, {1}, {2}});
  a.set(0, 0, 2.0);
  a.set(1, 1, 4.0);
  a.set(2, 2, 8.0);
  Ilu0Preconditioner ilu;
  REQUIRE(ilu.setup(a));
  std::vector<double> out;
  ilu.apply({2.0, 4.0, 8.0}, out);
  for (double v : out) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ilu0 flags a zero pivot instead of throwing") {
  SparseMatrix a = SparseMatrix::from_pattern(2, 2, {{0, 1}, {0, 1}});
  a.set(0, 0, 0.0);
  a.set(0, 1, 1.0);
  a.set(1, 0, 1.0);
  a.set(1, 1, 1.0);
  Ilu0Preconditioner ilu;
  CHECK_FALSE(ilu.setup(a));
}

TEST_CASE("preconditioner application is linear") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 12;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 5.0 + u(rng);
    if (i > 0) d[i][i - 1] = u(rng);
    if (i + 1 < n) d[i][i + 1] = u(rng);
  }
  std::vector<std::vector<int>> pattern(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j] != 0.0) pattern[i].push_back(j);
  SparseMatrix a = SparseMatrix::from_pattern(n, n, pattern);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j] != 0.0) a.set(i, j, d[i][j]);

  Ilu0Preconditioner ilu;
  REQUIRE(ilu.setup(a));
  std::vector<double> uvec(n), vvec(n);
  for (auto& v : uvec) v = u(rng);
  for (auto& v : vvec) v = u(rng);
  const double alpha = 1.7, beta = -0.4;
  std::vector<double> combo(n);
  for (int i = 0; i < n; ++i) combo[i] = alpha * uvec[i] + beta * vvec[i];
  std::vector<double> mu, mv, mc;
  ilu.apply(uvec, mu);
  ilu.apply(vvec, mv);
  ilu.apply(combo, mc);
  for (int i = 0; i < n; ++i)
    CHECK(mc[i] == doctest::Approx(alpha * mu[i] + beta * mv[i]).epsilon(1e-12));
}
