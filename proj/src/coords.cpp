#include "ritzcoords/coords.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "ritzcoords/arrow.hpp"

namespace ritzcoords {

namespace {

// A supplied ordering must match the computed spectrum this closely (relative).
constexpr double kOrderingMatchRel = 1e-6;

ComplexList reorder_like(const ComplexList& computed, const ComplexList& wanted, double threshold,
                         int m) {
  ComplexList out;
  std::vector<bool> used(computed.size(), false);
  for (Complex w : wanted) {
    std::size_t best = computed.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < computed.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(w - computed[j]);
      if (dist < best_d) {
        best_d = dist;
        best = j;
      }
    }
    if (best == computed.size() || best_d > threshold)
      throw ArgumentError("extract_coords: supplied ordering of level " + std::to_string(m) +
                          " does not match the Ritz values of the matrix");
    used[best] = true;
    out.push_back(computed[best]);
  }
  return out;
}

ExtractedCoords extract_with(const ComplexMatrix& x, RitzData ritz, const Tolerances& tol) {
  const int n = static_cast<int>(x.rows());
  ExtractedCoords out;
  out.report = genericity_report(ritz, tol);
  if (auto failure = out.report.first_failure())
    throw GenericityError(*failure, "extract_coords: (" + *failure + ") fails");

  for (int m = 1; m < n; ++m) {
    const ComplexMatrix g = diagonalizer_last_row_ones(x.topLeftCorner(m, m), ritz.level(m), tol);
    // (g^{-1} (+) 1) x_{m+1} (g (+) 1): bottom row starts with b^T, last column with c.
    const ComplexVector b = (x.block(m, 0, 1, m) * g).transpose();
    Eigen::PartialPivLU<ComplexMatrix> lu(g);
    const ComplexVector c = lu.solve(x.block(0, m, m, 1));
    out.coords.b.push_back(b);
    out.c.push_back(c);
  }
  out.coords.ritz = std::move(ritz);
  return out;
}

}  // namespace

void FiberCoords::validate(const Tolerances& tol) const {
  const int size = ritz.n();
  if (size < 1) throw ArgumentError("FiberCoords: empty Ritz data");
  if (static_cast<int>(b.size()) != size - 1)
    throw ArgumentError("FiberCoords: expected " + std::to_string(size - 1) + " b vectors, got " +
                        std::to_string(b.size()));
  require_generic(ritz, tol);
  const double threshold = tol.coincide_rel * ritz.scale();
  for (int m = 1; m < size; ++m) {
    const ComplexVector& bm = b[static_cast<std::size_t>(m - 1)];
    if (bm.size() != m)
      throw ArgumentError("FiberCoords: b_" + std::to_string(m) + " must have " +
                          std::to_string(m) + " entries");
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!std::isfinite(bm(i).real()) || !std::isfinite(bm(i).imag()))
        throw ArgumentError("FiberCoords: non-finite b entry");
      if (std::abs(bm(i)) <= threshold)
        throw ArgumentError("FiberCoords: b_" + std::to_string(m) + " entry " +
                            std::to_string(i + 1) + " vanishes");
    }
  }
}

ComplexMatrix diagonalizer_last_row_ones(const ComplexMatrix& xm, const ComplexList& eigs,
                                         const Tolerances& tol) {
  const Eigen::Index m = xm.rows();
  if (static_cast<Eigen::Index>(eigs.size()) != m)
    throw ArgumentError("diagonalizer_last_row_ones: eigenvalue count mismatch");
  ComplexMatrix g(m, m);
  for (Eigen::Index j = 0; j < m; ++j) g.col(j) = eigvec_last_one(xm, eigs[static_cast<std::size_t>(j)], tol);
  return g;
}

ExtractedCoords extract_coords(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "extract_coords");
  require_finite(x, "extract_coords");
  return extract_with(x, ritz_values(x, tol), tol);
}

ExtractedCoords extract_coords(const ComplexMatrix& x, const RitzData& ordering,
                               const Tolerances& tol) {
  require_square(x, "extract_coords");
  require_finite(x, "extract_coords");
  if (ordering.n() != x.rows())
    throw ArgumentError("extract_coords: ordering has " + std::to_string(ordering.n()) +
                        " levels for a matrix of order " + std::to_string(x.rows()));
  const RitzData computed = ritz_values(x, tol);
  const double threshold = kOrderingMatchRel * computed.scale();
  std::vector<ComplexList> levels;
  for (int m = 1; m <= computed.n(); ++m)
    levels.push_back(reorder_like(computed.level(m), ordering.level(m), threshold, m));
  return extract_with(x, RitzData(std::move(levels)), tol);
}

ComplexVector complement_c_from_b(const RitzData& r, int m, const ComplexVector& b,
                                  const Tolerances& tol) {
  if (b.size() != m) throw ArgumentError("complement_c_from_b: b must have length m");
  for (Eigen::Index i = 0; i < b.size(); ++i)
    if (b(i) == Complex(0.0))
      throw ArgumentError("complement_c_from_b: b entry " + std::to_string(i + 1) + " is zero");
  const ComplexList sigma = sigma_matrix(r, m, tol);
  ComplexVector c(m);
  for (Eigen::Index i = 0; i < m; ++i) c(i) = sigma[static_cast<std::size_t>(i)] / b(i);
  return c;
}

ComplexMatrix g_recurrence(const FiberCoords& fc, const Tolerances& tol) {
  fc.validate(tol);
  const int n = fc.n();
  const double scale = fc.ritz.scale();
  ComplexMatrix g = ComplexMatrix::Ones(1, 1);
  for (int m = 1; m < n; ++m) {
    const ComplexList sigma = sigma_matrix(fc.ritz, m, tol);
    const ComplexVector& b = fc.b[static_cast<std::size_t>(m - 1)];
    // P_{m+1}(mu_i) / (P_m'(mu_i) b_i) = -sigma_i / b_i = -c_i
    ComplexVector weight(m);
    for (int i = 0; i < m; ++i) weight(i) = -sigma[static_cast<std::size_t>(i)] / b(i);
    const ComplexMatrix cauchy = cauchy_matrix(fc.ritz.level(m), fc.ritz.level(m + 1), tol, scale);
    ComplexMatrix next(m + 1, m + 1);
    next.topRows(m) = g * weight.asDiagonal() * cauchy;
    next.row(m).setOnes();
    g = std::move(next);
  }
  return g;
}

ComplexMatrix reconstruct(const FiberCoords& fc, const Tolerances& tol) {
  const ComplexMatrix g = g_recurrence(fc, tol);
  const int n = fc.n();
  const ComplexList& top = fc.ritz.level(n);
  ComplexVector lam(n);
  for (int j = 0; j < n; ++j) lam(j) = top[static_cast<std::size_t>(j)];
  // x = g Lambda g^{-1}  <=>  g^T x^T = (g Lambda)^T
  Eigen::PartialPivLU<ComplexMatrix> lu(g.transpose());
  const ComplexMatrix rhs = (g * lam.asDiagonal()).transpose();
  ComplexMatrix x = lu.solve(rhs).transpose();
  if (!x.allFinite()) throw NumericalError("reconstruct: singular diagonalizer");
  return x;
}

ComplexVector flatten_b(const std::vector<ComplexVector>& b) {
  Eigen::Index total = 0;
  for (const auto& bm : b) total += bm.size();
  ComplexVector s(total);
  Eigen::Index pos = 0;
  for (const auto& bm : b) {
    s.segment(pos, bm.size()) = bm;
    pos += bm.size();
  }
  return s;
}

ComplexVector s_coordinates(const ComplexMatrix& x, const Tolerances& tol) {
  return flatten_b(extract_coords(x, tol).coords.b);
}

FiberCoords transpose_coords(const FiberCoords& fc, const Tolerances& tol) {
  fc.validate(tol);
  const double scale = fc.ritz.scale();
  FiberCoords out{fc.ritz, {}};
  for (int m = 1; m < fc.n(); ++m) {
    const ComplexList pi = m == 1 ? ComplexList{1.0}
                                  : pi_matrix(fc.ritz.level(m - 1), fc.ritz.level(m), tol, scale);
    const ComplexList sigma = sigma_matrix(fc.ritz, m, tol);
    const ComplexVector& b = fc.b[static_cast<std::size_t>(m - 1)];
    ComplexVector bt(m);
    for (int i = 0; i < m; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      bt(i) = pi[iu] * sigma[iu] / b(i);
    }
    out.b.push_back(bt);
  }
  return out;
}

FiberCoords diagonal_similarity_coords(const FiberCoords& fc, const ComplexList& d) {
  if (static_cast<int>(d.size()) != fc.n())
    throw ArgumentError("diagonal_similarity_coords: expected " + std::to_string(fc.n()) +
                        " diagonal entries, got " + std::to_string(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == Complex(0.0) || !std::isfinite(std::abs(d[i])))
      throw ArgumentError("diagonal_similarity_coords: d_" + std::to_string(i + 1) +
                          " must be finite and nonzero");
  FiberCoords out{fc.ritz, fc.b};
  for (std::size_t m = 1; m < d.size(); ++m) out.b[m - 1] *= d[m] / d[m - 1];
  return out;
}

std::pair<int, int> slot_to_level(int j) {
  if (j < 1) throw ArgumentError("slot index must be positive");
  int m = 1;
  while (m * (m + 1) / 2 < j) ++m;
  return {m, j - m * (m - 1) / 2};
}

}  // namespace ritzcoords
