#include <gtest/gtest.h>

#include "ritzcoords/arrow.hpp"
#include "ritzcoords/coords.hpp"
#include "ritzcoords/gzflow.hpp"
#include "test_util.hpp"

namespace ritzcoords {
namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix x(2, 2);
  x << a, b, c, d;
  return x;
}

FiberCoords swap_coords(Complex b1) {
  FiberCoords fc;
  fc.ritz = RitzData({{0.0}, {-1.0, 1.0}});
  fc.b.push_back(ComplexVector::Constant(1, b1));
  return fc;
}

double max_b_diff(const FiberCoords& a, const FiberCoords& b) {
  double worst = 0.0;
  for (std::size_t m = 0; m < a.b.size(); ++m)
    worst = std::max(worst, (a.b[m] - b.b[m]).cwiseAbs().maxCoeff());
  return worst;
}

TEST(ExtractCoords, SwapMatrix) {
  const ExtractedCoords ex = extract_coords(mat2(0, 1, 1, 0));
  EXPECT_NEAR(std::abs(ex.coords.b[0](0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ex.c[0](0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ex.coords.ritz.level(2)[0] + 1.0), 0.0, 1e-14);
}

TEST(ExtractCoords, ScaledSwapMatrix) {
  const ExtractedCoords ex = extract_coords(mat2(0, 0.5, 2, 0));
  EXPECT_NEAR(std::abs(ex.coords.b[0](0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ex.c[0](0) - 0.5), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s_coordinates(mat2(0, 0.5, 2, 0))(0) - 2.0), 0.0, 1e-14);
}

TEST(ExtractCoords, IdentityIsNotGeneric) {
  try {
    extract_coords(ComplexMatrix::Identity(2, 2));
    FAIL() << "expected GenericityError";
  } catch (const GenericityError& e) {
    EXPECT_EQ(e.condition(), "G2_1");
  }
}

TEST(ExtractCoords, HonoursSuppliedOrdering) {
  const RitzData reversed({{0.0}, {1.0, -1.0}});
  const ExtractedCoords ex = extract_coords(mat2(0, 1, 1, 0), reversed);
  EXPECT_NEAR(std::abs(ex.coords.ritz.level(2)[0] - 1.0), 0.0, 1e-14);
  EXPECT_LT((reconstruct(ex.coords) - mat2(0, 1, 1, 0)).norm(), 1e-12);
  EXPECT_THROW(extract_coords(mat2(0, 1, 1, 0), RitzData({{0.0}, {2.0, -1.0}})), ArgumentError);
}

TEST(ComplementC, Examples) {
  const RitzData r({{0.0}, {-1.0, 1.0}});
  EXPECT_EQ(complement_c_from_b(r, 1, ComplexVector::Constant(1, 1.0))(0), Complex(1.0));
  EXPECT_EQ(complement_c_from_b(r, 1, ComplexVector::Constant(1, 2.0))(0), Complex(0.5));
  EXPECT_THROW(complement_c_from_b(r, 1, ComplexVector::Zero(1)), ArgumentError);
}

TEST(Reconstruct, SwapMatrixAndRecurrence) {
  ComplexMatrix g_want(2, 2);
  g_want << -1.0, 1.0, 1.0, 1.0;
  EXPECT_LT((g_recurrence(swap_coords(1.0)) - g_want).norm(), 1e-15);
  EXPECT_LT((reconstruct(swap_coords(1.0)) - mat2(0, 1, 1, 0)).norm(), 1e-14);

  g_want << -0.5, 0.5, 1.0, 1.0;
  EXPECT_LT((g_recurrence(swap_coords(2.0)) - g_want).norm(), 1e-15);
  EXPECT_LT((reconstruct(swap_coords(2.0)) - mat2(0, 0.5, 2, 0)).norm(), 1e-14);
}

TEST(Reconstruct, RejectsInvalidCoordinates) {
  EXPECT_THROW(reconstruct(swap_coords(0.0)), ArgumentError);
  FiberCoords bad = swap_coords(1.0);
  bad.ritz = RitzData({{1.0}, {1.0, 2.0}});
  EXPECT_THROW(reconstruct(bad), GenericityError);
  bad = swap_coords(1.0);
  bad.b.clear();
  EXPECT_THROW(reconstruct(bad), ArgumentError);
}

TEST(RoundTrip, MatrixToCoordsToMatrix) {
  rctest::Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(2, 8);
    const ComplexMatrix x = rctest::random_generic_matrix(rng, n);
    const ComplexMatrix back = reconstruct(extract_coords(x).coords);
    EXPECT_LE(rctest::max_abs(back - x), 1e-7 * x.norm()) << "n=" << n;
  }
}

TEST(RoundTrip, CoordsToMatrixToCoords) {
  rctest::Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(2, 8);
    const FiberCoords fc = rctest::random_tame_coords(rng, n);
    const ComplexMatrix x = reconstruct(fc);
    EXPECT_LE(rctest::ritz_hausdorff(ritz_values(x), fc.ritz), 1e-7 * fc.ritz.scale());
    const FiberCoords again = extract_coords(x, fc.ritz).coords;
    for (std::size_t m = 0; m < fc.b.size(); ++m)
      for (Eigen::Index i = 0; i < fc.b[m].size(); ++i)
        EXPECT_LE(std::abs(again.b[m](i) - fc.b[m](i)), 1e-7 * std::abs(fc.b[m](i))) << "n=" << n;
  }
}

TEST(SCoordinates, HessenbergBasepointIsAllOnes) {
  rctest::Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 8);
    const RitzData r = rctest::random_generic_ritz(rng, n);
    const ComplexMatrix y = hessenberg_representative(r);
    const FiberCoords fc = extract_coords(y, r).coords;
    const ComplexVector s = flatten_b(fc.b);
    ASSERT_EQ(s.size(), n * (n - 1) / 2);
    EXPECT_LE((s - ComplexVector::Ones(s.size())).cwiseAbs().maxCoeff(), 1e-7) << "n=" << n;
  }
}

TEST(SCoordinates, EigenFlowShiftsOneSlot) {
  rctest::Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(2, 5);
    const RitzData r = rctest::random_generic_ritz(rng, n);
    ComplexMatrix y = hessenberg_representative(r);
    const int j = rng.integer(1, n * (n - 1) / 2);
    const Complex q = rng.disc(1.0);
    const ComplexVector s = s_coordinates(eigen_flow(y, j, q));
    for (int i = 0; i < s.size(); ++i) {
      const Complex want = i + 1 == j ? std::exp(-q) : Complex(1.0);
      EXPECT_LE(std::abs(s(i) - want), 1e-7);
    }
  }
}

TEST(SlotToLevel, Enumerates) {
  EXPECT_EQ(slot_to_level(1), std::make_pair(1, 1));
  EXPECT_EQ(slot_to_level(2), std::make_pair(2, 1));
  EXPECT_EQ(slot_to_level(3), std::make_pair(2, 2));
  EXPECT_EQ(slot_to_level(4), std::make_pair(3, 1));
  EXPECT_EQ(slot_to_level(6), std::make_pair(3, 3));
  EXPECT_THROW(slot_to_level(0), ArgumentError);
}

TEST(TransposeCoords, Examples) {
  EXPECT_NEAR(std::abs(transpose_coords(swap_coords(1.0)).b[0](0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(transpose_coords(swap_coords(2.0)).b[0](0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(extract_coords(mat2(0, 0.5, 2, 0).transpose()).coords.b[0](0) - 0.5), 0.0, 1e-14);
}

TEST(TransposeCoords, MatchesDirectTransposeAndIsInvolution) {
  rctest::Rng rng(45);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 6);
    const ComplexMatrix x = rctest::random_generic_matrix(rng, n);
    const FiberCoords fc = extract_coords(x).coords;
    const FiberCoords formula = transpose_coords(fc);
    const FiberCoords direct = extract_coords(x.transpose(), fc.ritz).coords;
    EXPECT_LE(max_b_diff(formula, direct), 1e-7);
    const FiberCoords twice = transpose_coords(formula);
    for (std::size_t m = 0; m < fc.b.size(); ++m)
      for (Eigen::Index i = 0; i < fc.b[m].size(); ++i)
        EXPECT_LE(std::abs(twice.b[m](i) - fc.b[m](i)), 1e-10 * std::abs(fc.b[m](i)));
  }
}

TEST(DiagonalSimilarity, Examples) {
  const FiberCoords fc = swap_coords(1.0);
  EXPECT_EQ(diagonal_similarity_coords(fc, {1.0, 1.0}).b[0](0), Complex(1.0));
  EXPECT_EQ(diagonal_similarity_coords(fc, {1.0, 2.0}).b[0](0), Complex(2.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  const ComplexMatrix conj = d * mat2(0, 1, 1, 0) * d.inverse();
  EXPECT_LT((conj - mat2(0, 0.5, 2, 0)).norm(), 1e-15);
  EXPECT_NEAR(std::abs(extract_coords(conj).coords.b[0](0) - 2.0), 0.0, 1e-14);
  EXPECT_THROW(diagonal_similarity_coords(fc, {1.0, 0.0}), ArgumentError);
  EXPECT_THROW(diagonal_similarity_coords(fc, {1.0}), ArgumentError);
}

TEST(DiagonalSimilarity, MatchesDirectConjugationAndComposes) {
  rctest::Rng rng(46);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(2, 6);
    const ComplexMatrix x = rctest::random_generic_matrix(rng, n);
    const FiberCoords fc = extract_coords(x).coords;
    const ComplexList d = rng.nonzero_list(n);
    const ComplexList e = rng.nonzero_list(n);
    const ComplexVector dv = Eigen::Map<const ComplexVector>(d.data(), n);
    const ComplexMatrix conj = dv.asDiagonal() * x * dv.cwiseInverse().asDiagonal();
    const FiberCoords direct = extract_coords(conj, fc.ritz).coords;
    EXPECT_LE(max_b_diff(diagonal_similarity_coords(fc, d), direct), 1e-7);

    ComplexList de(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) de[i] = d[i] * e[i];
    const FiberCoords stepwise = diagonal_similarity_coords(diagonal_similarity_coords(fc, d), e);
    EXPECT_LE(max_b_diff(stepwise, diagonal_similarity_coords(fc, de)), 1e-12);
  }
}

TEST(Injectivity, DistinctCoordinatesGiveDistinctMatrices) {
  rctest::Rng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(2, 6);
    const FiberCoords fc = rctest::random_tame_coords(rng, n);
    FiberCoords moved = fc;
    const auto [m, l] = slot_to_level(rng.integer(1, n * (n - 1) / 2));
    moved.b[static_cast<std::size_t>(m - 1)](l - 1) += 1e-3;
    const ComplexMatrix x = reconstruct(fc), y = reconstruct(moved);
    EXPECT_GE((x - y).norm(), 1e-6);
    EXPECT_LE(rctest::ritz_hausdorff(ritz_values(y), fc.ritz), 1e-7 * fc.ritz.scale());
  }
}

}  // namespace
}  // namespace ritzcoords
