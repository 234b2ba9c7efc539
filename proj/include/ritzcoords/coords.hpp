#pragma once

// Complementary ("arrow") coordinates b of a generic matrix relative to its
// Ritz values: extraction, reconstruction through the g-recurrence, the
// s-coordinates, and the coordinate effect of transposition and diagonal
// similarity.

#include <vector>

#include "ritzcoords/fiber.hpp"
#include "ritzcoords/numcore.hpp"

namespace ritzcoords {

/// (R, b): Ritz values with their orderings fixed, plus b_m of length m for
/// m = 1..n-1. Every b entry is nonzero and R is generic.
struct FiberCoords {
  RitzData ritz;
  std::vector<ComplexVector> b;

  int n() const { return ritz.n(); }
  /// Throws GenericityError / ArgumentError when the invariants fail.
  void validate(const Tolerances& tol = {}) const;
};

struct ArrowCoordsPair {
  ComplexVector b;
  ComplexVector c;
};

struct ExtractedCoords {
  FiberCoords coords;
  /// c_m, derived: b_m * c_m = Sigma_m.
  std::vector<ComplexVector> c;
  GenericityReport report;
};

/// Coordinates of a generic x using the canonical ordering of every level.
ExtractedCoords extract_coords(const ComplexMatrix& x, const Tolerances& tol = {});

/// Coordinates of x using the level orderings given in `ordering`, which must
/// match the Ritz values of x as multisets (within coincide_rel * scale).
ExtractedCoords extract_coords(const ComplexMatrix& x, const RitzData& ordering,
                               const Tolerances& tol = {});

/// Column eigenvector matrix of x_m with unit last row, columns in the order
/// of `eigs`.
ComplexMatrix diagonalizer_last_row_ones(const ComplexMatrix& xm, const ComplexList& eigs,
                                         const Tolerances& tol = {});

/// c_i = Sigma_m[i] / b_i.
ComplexVector complement_c_from_b(const RitzData& r, int m, const ComplexVector& b,
                                  const Tolerances& tol = {});

/// g_n from the g-recurrence g_1 = (1),
/// g_{m+1} = [g_m P_{m+1}(L_m) P_m'(L_m)^{-1} diag(b_m)^{-1} Cauchy(L_m, L_{m+1}); ones].
ComplexMatrix g_recurrence(const FiberCoords& fc, const Tolerances& tol = {});

/// x = g_n Lambda_n g_n^{-1}.
ComplexMatrix reconstruct(const FiberCoords& fc, const Tolerances& tol = {});

/// (b_1, ..., b_{n-1}) flattened; slot j = C(m, 2) + l for b_m[l].
ComplexVector s_coordinates(const ComplexMatrix& x, const Tolerances& tol = {});
ComplexVector flatten_b(const std::vector<ComplexVector>& b);

/// Coordinates of x^T: b~_m[i] = Pi_m[i] Sigma_m[i] / b_m[i].
FiberCoords transpose_coords(const FiberCoords& fc, const Tolerances& tol = {});

/// Coordinates of d x d^{-1}: b^_m = b_m d(m+1) / d(m).
FiberCoords diagonal_similarity_coords(const FiberCoords& fc, const ComplexList& d);

/// 1-based slot j -> (m, l) with j = C(m, 2) + l, 1 <= l <= m.
std::pair<int, int> slot_to_level(int j);

}  // namespace ritzcoords
