#include <gtest/gtest.h>

#include "ritzcoords/arrow.hpp"
#include "ritzcoords/coords.hpp"
#include "test_util.hpp"

namespace ritzcoords {
namespace {

// Row eigenvectors with unit last column: [Cauchy(lam, d) diag(q), ones].
ComplexMatrix row_eigenvectors(const ArrowMatrix& a, const ComplexList& lam) {
  const int m = static_cast<int>(a.d.size());
  ComplexMatrix r(m + 1, m + 1);
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i < m; ++i)
      r(j, i) = a.q(i) / (lam[static_cast<std::size_t>(j)] - a.d[static_cast<std::size_t>(i)]);
    r(j, m) = 1.0;
  }
  return r;
}

// Arrow with prescribed (d, lam): p q is forced, p is free.
ArrowMatrix arrow_with_spectrum(const ComplexList& d, const ComplexList& lam, rctest::Rng& rng) {
  const std::size_t m = d.size();
  ArrowMatrix a;
  a.d = d;
  a.p.resize(static_cast<Eigen::Index>(m));
  a.q.resize(static_cast<Eigen::Index>(m));
  Complex trace = 0.0;
  for (Complex l : lam) trace += l;
  for (Complex v : d) trace -= v;
  a.delta = trace;
  for (std::size_t i = 0; i < m; ++i) {
    Complex num = 1.0, den = 1.0;
    for (Complex l : lam) num *= d[i] - l;
    for (std::size_t k = 0; k < m; ++k)
      if (k != i) den *= d[i] - d[k];
    const Complex pq = -num / den;
    const Complex p = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * M_PI));
    a.p(static_cast<Eigen::Index>(i)) = p;
    a.q(static_cast<Eigen::Index>(i)) = pq / p;
  }
  return a;
}

ArrowMatrix random_arrow(rctest::Rng& rng, int m) {
  ArrowMatrix a;
  a.d = rng.list(m);
  a.p = rng.vector(m);
  a.q = rng.vector(m);
  a.delta = rng.normal();
  return a;
}

TEST(CauchyMatrix, Examples) {
  const ComplexMatrix c1 = cauchy_matrix({0.0}, {1.0, -1.0});
  EXPECT_EQ(c1(0, 0), Complex(-1.0));
  EXPECT_EQ(c1(0, 1), Complex(1.0));
  EXPECT_EQ(cauchy_matrix({2.0}, {1.0})(0, 0), Complex(1.0));
  const ComplexMatrix c3 = cauchy_matrix({0.0, 1.0}, {2.0});
  EXPECT_EQ(c3(0, 0), Complex(-0.5));
  EXPECT_EQ(c3(1, 0), Complex(-1.0));
  EXPECT_THROW(cauchy_matrix({1.0}, {1.0}), GenericityError);
}

TEST(SigmaMatrix, Examples) {
  EXPECT_EQ(sigma_matrix(RitzData({{0.0}, {-1.0, 1.0}}), 1)[0], Complex(1.0));
  EXPECT_EQ(sigma_matrix(RitzData({{0.0}, {2.0, -2.0}}), 1)[0], Complex(4.0));
  EXPECT_EQ(bc_product(RitzData({{1.0}, {0.0, 3.0}}), 1)[0], Complex(2.0));
  EXPECT_THROW(sigma_matrix(RitzData({{1.0}, {1.0 + 1e-12, 2.0}}), 1), GenericityError);
  EXPECT_THROW(bc_product(RitzData({{0.0}, {0.0, 5.0}}), 1), GenericityError);
  EXPECT_THROW(sigma_matrix(RitzData({{0.0}, {-1.0, 1.0}}), 2), ArgumentError);
}

TEST(PiMatrix, Examples) {
  const ComplexList pi = pi_matrix({0.0}, {1.0, -1.0});
  EXPECT_NEAR(std::abs(pi[0] - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(pi[1] - 2.0), 0.0, 1e-15);
  EXPECT_EQ(pi_matrix({}, {Complex(3.0, 1.0)}), ComplexList{1.0});
  EXPECT_THROW(pi_matrix({0.0}, {1.0}), ArgumentError);
}

TEST(ArrowFactorize, SwapMatrixDiagonalizer) {
  ArrowMatrix a{{0.0}, ComplexVector::Ones(1), ComplexVector::Ones(1), 0.0};
  const ArrowFactorization f = arrow_factorize(a, {1.0, -1.0});
  ComplexMatrix want(2, 2);
  want << 1.0, -1.0, 1.0, 1.0;
  EXPECT_LT((f.z_inv - want).norm(), 1e-15);
}

TEST(ArrowFactorize, HalfBorder) {
  ArrowMatrix a{{0.0}, ComplexVector::Constant(1, 0.5), ComplexVector::Constant(1, 2.0), 0.0};
  const ArrowFactorization f = arrow_factorize(a, {1.0, -1.0});
  ComplexMatrix want(2, 2);
  want << 0.5, -0.5, 1.0, 1.0;
  EXPECT_LT((f.z_inv - want).norm(), 1e-15);
}

TEST(ArrowFactorize, DegenerateBorderIsRejected) {
  ArrowMatrix a{{5.0}, ComplexVector::Zero(1), ComplexVector::Zero(1), 2.0};
  EXPECT_THROW(arrow_factorize(a, {5.0, 2.0}), GenericityError);
  EXPECT_THROW(arrow_factorize(a, {5.0}), ArgumentError);
}

TEST(ArrowFactorize, ResidualAndTwoRoutePi) {
  rctest::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.integer(1, 8);
    const ArrowMatrix a = random_arrow(rng, m);
    const ComplexMatrix dense = a.to_dense();
    const ComplexList lam = eigenvalues(dense);
    ArrowFactorization f;
    try {
      f = arrow_factorize(a, lam);
    } catch (const GenericityError&) {
      continue;  // measure-zero collisions
    }
    const ComplexVector lv = Eigen::Map<const ComplexVector>(lam.data(), m + 1);
    const ComplexMatrix z = f.z();
    EXPECT_LE((dense - f.z_inv * lv.asDiagonal() * z).norm(), 1e-8 * dense.norm());

    // diag((Pi Z) Z^{-1}) against the closed form, and Z from the column-eigenvector formula.
    const ComplexMatrix product = row_eigenvectors(a, lam) * f.z_inv;
    const ComplexMatrix off = product - ComplexMatrix(product.diagonal().asDiagonal());
    EXPECT_LE(off.norm(), 1e-8 * product.norm());
    for (int j = 0; j <= m; ++j)
      EXPECT_LE(std::abs(product(j, j) - f.pi[static_cast<std::size_t>(j)]),
                1e-8 * std::abs(f.pi[static_cast<std::size_t>(j)]));
    ComplexVector pi_inv(m + 1);
    for (int j = 0; j <= m; ++j) pi_inv(j) = 1.0 / f.pi[static_cast<std::size_t>(j)];
    const ComplexMatrix z_formula = pi_inv.asDiagonal() * row_eigenvectors(a, lam);
    EXPECT_LE((z_formula - z).norm(), 1e-8 * z.norm());
  }
}

TEST(ArrowFactorize, PiIndependentOfBorder) {
  rctest::Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.integer(1, 6);
    const ComplexList d = rng.list(m);
    const ComplexList lam = rng.list(m + 1);
    const ArrowMatrix a1 = arrow_with_spectrum(d, lam, rng);
    const ArrowMatrix a2 = arrow_with_spectrum(d, lam, rng);
    const ComplexMatrix p1 = row_eigenvectors(a1, lam) * arrow_factorize(a1, lam).z_inv;
    const ComplexMatrix p2 = row_eigenvectors(a2, lam) * arrow_factorize(a2, lam).z_inv;
    for (int j = 0; j <= m; ++j) EXPECT_LE(std::abs(p1(j, j) - p2(j, j)), 1e-10 * std::abs(p1(j, j)));
  }
}

TEST(BcProduct, MatchesExtractedCoordinates) {
  rctest::Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 7);
    const ComplexMatrix x = rctest::random_generic_matrix(rng, n);
    const ExtractedCoords ex = extract_coords(x);
    for (int m = 1; m < n; ++m) {
      const ComplexList sigma = bc_product(ex.coords.ritz, m);
      const ComplexVector& b = ex.coords.b[static_cast<std::size_t>(m - 1)];
      const ComplexVector& c = ex.c[static_cast<std::size_t>(m - 1)];
      for (int i = 0; i < m; ++i) {
        const Complex s = sigma[static_cast<std::size_t>(i)];
        EXPECT_LE(std::abs(b(i) * c(i) - s), 1e-8 * std::abs(s));
      }
    }
  }
}

TEST(BcProduct, BorderedCharacteristicPolynomial) {
  // P_{m+1} = P_m (l - delta_{m+1}) - sum_i b_i c_i P_m^{<i>}
  rctest::Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(2, 7);
    const ComplexMatrix x = rctest::random_generic_matrix(rng, n);
    const ExtractedCoords ex = extract_coords(x);
    for (int m = 1; m < n; ++m) {
      const ComplexList& mu = ex.coords.ritz.level(m);
      const ComplexVector& b = ex.coords.b[static_cast<std::size_t>(m - 1)];
      const ComplexVector& c = ex.c[static_cast<std::size_t>(m - 1)];
      for (int k = 0; k < 5; ++k) {
        const Complex z = rng.disc(2.0);
        const Complex pm = rctest::det_shifted(x.topLeftCorner(m, m), z);
        const Complex want = rctest::det_shifted(x.topLeftCorner(m + 1, m + 1), z);
        Complex got = pm * (z - x(m, m));
        for (int i = 0; i < m; ++i) {
          Complex others = 1.0;
          for (int l = 0; l < m; ++l)
            if (l != i) others *= z - mu[static_cast<std::size_t>(l)];
          got -= b(i) * c(i) * others;
        }
        EXPECT_LE(std::abs(got - want), 1e-8 * std::max(1.0, std::abs(want)));
      }
    }
  }
}

}  // namespace
}  // namespace ritzcoords
