#pragma once

// Down-arrow matrices [[diag(d), p], [q^T, delta]]: Cauchy matrices, the
// eigenvector pairing diagonal Pi, the b*c product Sigma, and the explicit
// spectral factorization A = Z^{-1} Lambda Z.

#include "ritzcoords/fiber.hpp"
#include "ritzcoords/numcore.hpp"

namespace ritzcoords {

struct ArrowMatrix {
  ComplexList d;
  ComplexVector p;
  ComplexVector q;
  Complex delta{0.0};

  int order() const { return static_cast<int>(d.size()) + 1; }
  ComplexMatrix to_dense() const;
};

struct ArrowFactorization {
  ComplexList lambda;
  /// Column eigenvectors [-diag(p) Cauchy(d, lambda); ones].
  ComplexMatrix z_inv;
  /// diag((Pi Z) Z^{-1}); Pi Z holds the row eigenvectors with unit last column.
  ComplexList pi;

  /// Z obtained by solving against z_inv.
  ComplexMatrix z() const;
};

/// Relative residual bound enforced by arrow_factorize.
inline constexpr double kArrowResidualRel = 1e-8;

/// Entry (i, j) = 1 / (d_i - lam_j). Throws GenericityError("spectral collision")
/// when |d_i - lam_j| <= coincide_rel * scale; scale defaults to the largest
/// magnitude among the parameters.
ComplexMatrix cauchy_matrix(const ComplexList& d, const ComplexList& lam,
                            const Tolerances& tol = {}, double scale = 0.0);

/// Sigma_m = -P_{m+1}(Lambda_m) P_m'(Lambda_m)^{-1}, a diagonal of length m.
ComplexList sigma_matrix(const RitzData& r, int m, const Tolerances& tol = {});

/// Sigma_m under the name that documents b_m * c_m = Sigma_m on the fibre.
ComplexList bc_product(const RitzData& r, int m, const Tolerances& tol = {});

/// Closed form of the diagonal Pi for an arrow with diagonal d and spectrum
/// lam (length d.size() + 1); independent of the bordering p, q.
/// Empty d yields ones.
ComplexList pi_matrix(const ComplexList& d, const ComplexList& lam,
                      const Tolerances& tol = {}, double scale = 0.0);

ArrowFactorization arrow_factorize(const ArrowMatrix& a, const ComplexList& lam,
                                   const Tolerances& tol = {});

}  // namespace ritzcoords
