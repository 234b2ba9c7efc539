#include <gtest/gtest.h>

#include <Eigen/SVD>

#include "ritzcoords/numcore.hpp"
#include "test_util.hpp"

namespace ritzcoords {
namespace {

ComplexMatrix swap2() {
  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

void expect_list_near(const ComplexList& got, const ComplexList& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LE(std::abs(got[i] - want[i]), tol) << "index " << i;
}

TEST(LeadingSubmatrix, SwapMatrixFirstLevel) {
  const ComplexMatrix x1 = leading_submatrix(swap2(), 1);
  ASSERT_EQ(x1.rows(), 1);
  EXPECT_EQ(x1(0, 0), Complex(0.0));
}

TEST(LeadingSubmatrix, IdentityBlock) {
  EXPECT_EQ(leading_submatrix(ComplexMatrix::Identity(3, 3), 2), ComplexMatrix::Identity(2, 2));
}

TEST(LeadingSubmatrix, RandomEntriesMatchByIndex) {
  rctest::Rng rng(11);
  const ComplexMatrix x = rng.matrix(4);
  const ComplexMatrix x3 = leading_submatrix(x, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(x3(i, j), x(i, j));
}

TEST(LeadingSubmatrix, RejectsOutOfRange) {
  EXPECT_THROW(leading_submatrix(swap2(), 0), ArgumentError);
  EXPECT_THROW(leading_submatrix(swap2(), 3), ArgumentError);
}

TEST(Eigenvalues, SwapMatrix) { expect_list_near(eigenvalues(swap2()), {-1.0, 1.0}, 1e-12); }

TEST(Eigenvalues, Identity) {
  expect_list_near(eigenvalues(ComplexMatrix::Identity(3, 3)), {1.0, 1.0, 1.0}, 1e-12);
}

TEST(Eigenvalues, CompanionOfCubic) {
  // Integer candidates: p(1) = p(2) = p(3) = 0 for l^3 - 6 l^2 + 11 l - 6.
  ComplexMatrix c = ComplexMatrix::Zero(3, 3);
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  c(0, 2) = 6.0;
  c(1, 2) = -11.0;
  c(2, 2) = 6.0;
  for (double r : {1.0, 2.0, 3.0}) EXPECT_NEAR(std::abs(rctest::det_shifted(c, r)), 0.0, 1e-12);
  expect_list_near(eigenvalues(c), {1.0, 2.0, 3.0}, 1e-9);
}

TEST(Eigenvalues, EmptyAndScalar) {
  EXPECT_TRUE(eigenvalues(ComplexMatrix(0, 0)).empty());
  ComplexMatrix x(1, 1);
  x(0, 0) = Complex(2.0, -1.0);
  expect_list_near(eigenvalues(x), {Complex(2.0, -1.0)}, 0.0);
}

TEST(Eigenvalues, RejectsNonFinite) {
  ComplexMatrix x = swap2();
  x(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eigenvalues(x), ArgumentError);
  EXPECT_THROW(eigenvalues(ComplexMatrix(2, 3)), ArgumentError);
}

TEST(Eigenvalues, CanonicalOrderAndRealConjugatePairs) {
  ComplexMatrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  const ComplexList e = eigenvalues(rot);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_LT(e[0].imag(), e[1].imag());
  EXPECT_NEAR(std::abs(e[0] - Complex(0.0, -1.0)), 0.0, 1e-12);
}

TEST(Eigenvalues, ProductFormMatchesDeterminant) {
  rctest::Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(1, 8);
    const ComplexMatrix x = rng.matrix(n);
    const ComplexList e = eigenvalues(x);
    for (int k = 0; k < 5; ++k) {
      const Complex z = rng.disc(2.0);
      const Complex want = rctest::det_shifted(x, z);
      const Complex got = rctest::product_form(e, z);
      EXPECT_LE(std::abs(got - want), 1e-8 * std::max(1.0, std::abs(want))) << "n=" << n;
    }
  }
}

TEST(Eigenvalues, RootsOfCharpolyAreIdempotent) {
  rctest::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(1, 6);
    const ComplexList roots = rng.list(n);
    const MonicPoly p = charpoly_from_eigs(roots);
    // Companion matrix of p.
    ComplexMatrix c = ComplexMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -p.coeffs[static_cast<std::size_t>(i)];
    EXPECT_LT(rctest::hausdorff(eigenvalues(c), roots), 1e-8);
  }
}

TEST(EigvecLastOne, SwapMatrixColumns) {
  const ComplexVector u = eigvec_last_one(swap2(), 1.0);
  EXPECT_NEAR(std::abs(u(0) - 1.0), 0.0, 1e-12);
  EXPECT_EQ(u(1), Complex(1.0));
  const ComplexVector v = eigvec_last_one(swap2(), -1.0);
  EXPECT_NEAR(std::abs(v(0) + 1.0), 0.0, 1e-12);
  EXPECT_EQ(v(1), Complex(1.0));
}

TEST(EigvecLastOne, Scalar) {
  ComplexMatrix x(1, 1);
  x(0, 0) = 2.0;
  const ComplexVector u = eigvec_last_one(x, 2.0);
  ASSERT_EQ(u.size(), 1);
  EXPECT_EQ(u(0), Complex(1.0));
}

TEST(EigvecLastOne, ResidualBound) {
  rctest::Rng rng(14);
  const Tolerances tol;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(2, 8);
    const ComplexMatrix x = rng.matrix(n);
    for (Complex mu : eigenvalues(x)) {
      const ComplexVector u = eigvec_last_one(x, mu);
      EXPECT_EQ(u(n - 1), Complex(1.0));
      const double residual = (x * u - mu * u).norm();
      EXPECT_LE(residual, tol.eig_rel * x.norm() * u.norm());
    }
  }
}

TEST(EigvecLastOne, VanishingLastEntryIsGenericityError) {
  ComplexMatrix x = ComplexMatrix::Zero(2, 2);
  x(0, 0) = 1.0;
  x(1, 1) = 2.0;
  EXPECT_THROW(eigvec_last_one(x, 1.0), GenericityError);
}

TEST(Charpoly, FromEigsExamples) {
  EXPECT_EQ(charpoly_from_eigs(ComplexList{}).degree(), 0u);
  expect_list_near(charpoly_from_eigs(ComplexList{1.0, -1.0}).coeffs, {-1.0, 0.0}, 0.0);
  expect_list_near(charpoly_from_eigs(ComplexList{1.0, 2.0, 3.0}).coeffs, {-6.0, 11.0, -6.0}, 0.0);
}

TEST(Charpoly, MatrixRouteMatchesDeterminant) {
  rctest::Rng rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(1, 8);
    const ComplexMatrix x = rng.matrix(n);
    const MonicPoly p = charpoly(x);
    ASSERT_EQ(p.degree(), static_cast<std::size_t>(n));
    for (int k = 0; k < 5; ++k) {
      const Complex z = rng.disc(2.0);
      const Complex want = rctest::det_shifted(x, z);
      EXPECT_LE(std::abs(poly_eval(p, z) - want), 1e-9 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Polynomials, EvalDerivativeQuotient) {
  const MonicPoly p{{-1.0, 0.0}};
  EXPECT_EQ(poly_eval(p, 0.0), Complex(-1.0));
  const Polynomial dp = poly_derivative(p);
  EXPECT_EQ(dp.degree(), 1);
  expect_list_near(dp.coeffs, {0.0, 2.0}, 0.0);

  const std::vector<MonicPoly> basis{MonicPoly::one(), MonicPoly{{0.0}}};
  expect_list_near(poly_quotient_in_basis(Polynomial{{1.0, 3.0}}, basis), {1.0, 3.0}, 0.0);
}

TEST(Polynomials, QuotientInShiftedBasis) {
  // 2 + 5 l + l^2 in (1, l - 1, (l - 1)(l - 2)): l^2 = P2 + 3 l - 2.
  const std::vector<MonicPoly> basis{MonicPoly::one(), charpoly_from_eigs(ComplexList{1.0}),
                                     charpoly_from_eigs(ComplexList{1.0, 2.0})};
  const ComplexList a = poly_quotient_in_basis(Polynomial{{2.0, 5.0, 1.0}}, basis);
  rctest::Rng rng(16);
  for (int k = 0; k < 4; ++k) {
    const Complex z = rng.normal();
    Complex sum = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) sum += a[i] * poly_eval(basis[i], z);
    EXPECT_LT(std::abs(sum - (2.0 + 5.0 * z + z * z)), 1e-12);
  }
  EXPECT_THROW(poly_quotient_in_basis(Polynomial{{0.0, 0.0, 0.0, 1.0}}, basis), ArgumentError);
}

TEST(NumericRank, Examples) {
  EXPECT_EQ(numeric_rank(ComplexMatrix::Identity(3, 3)), 3);
  EXPECT_EQ(numeric_rank(ComplexMatrix::Ones(2, 2)), 1);
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  ComplexVector v(2);
  v << 1.0, 0.0;
  EXPECT_EQ(numeric_rank(krylov_matrix(b, v)), 1);
  EXPECT_EQ(numeric_rank(ComplexMatrix::Zero(3, 2)), 0);
}

TEST(NumericRank, ProductBound) {
  rctest::Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(2, 7);
    const int r1 = rng.integer(1, n), r2 = rng.integer(1, n);
    const ComplexMatrix a = rng.matrix(n).leftCols(r1) * rng.matrix(n).topRows(r1);
    const ComplexMatrix b = rng.matrix(n).leftCols(r2) * rng.matrix(n).topRows(r2);
    const int ra = numeric_rank(a), rb = numeric_rank(b);
    EXPECT_EQ(ra, r1);
    EXPECT_EQ(rb, r2);
    EXPECT_LE(numeric_rank(a * b), std::min(ra, rb));
  }
}

TEST(CommutantDimension, DiagonalAndJordan) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  EXPECT_EQ(commutant_dimension(d), 3);
  EXPECT_EQ(commutant_dimension(ComplexMatrix::Identity(2, 2)), 4);
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(1, 0) = 1.0;
  EXPECT_EQ(commutant_dimension(j), 2);
}

TEST(Tolerances, Validate) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  Tolerances bad;
  bad.rank_rel = 0.0;
  EXPECT_THROW(bad.validate(), ArgumentError);
  bad.rank_rel = 2.0;
  EXPECT_THROW(bad.validate(), ArgumentError);
}

TEST(HessenbergReduce, KeepsSpectrumAndShape) {
  rctest::Rng rng(18);
  const ComplexMatrix x = rng.matrix(6);
  const ComplexMatrix h = hessenberg_reduce(x);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j + 1 < i; ++j) EXPECT_EQ(h(i, j), Complex(0.0));
  for (int k = 0; k < 4; ++k) {
    const Complex z = rng.normal();
    EXPECT_LT(std::abs(rctest::det_shifted(h, z) - rctest::det_shifted(x, z)),
              1e-10 * std::max(1.0, std::abs(rctest::det_shifted(x, z))));
  }
}

TEST(MatrixHelpers, EmbedBlockAndScale) {
  ComplexMatrix g(1, 1);
  g(0, 0) = 3.0;
  const ComplexMatrix e = embed_block(g, 3);
  EXPECT_EQ(e(0, 0), Complex(3.0));
  EXPECT_EQ(e.bottomRightCorner(2, 2), ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(e(0, 1), Complex(0.0));
  EXPECT_EQ(magnitude_scale(ComplexList{}), 1.0);
  EXPECT_EQ(magnitude_scale(ComplexList{Complex(3.0, 4.0), -1.0}), 5.0);
}

}  // namespace
}  // namespace ritzcoords
