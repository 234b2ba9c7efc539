#pragma once

// Single-input single-output diagnostics for bordering a matrix B by a row b^T,
// a column c and a corner delta: observability, controllability, regularity,
// Markov/Hankel data and the unique completion with a prescribed
// characteristic polynomial.

#include <utility>
#include <vector>

#include "ritzcoords/numcore.hpp"

namespace ritzcoords {

/// x' = B x + c u, y = b^T x + delta u.
struct SISOSystem {
  ComplexMatrix b_matrix;
  ComplexVector row;  // b
  ComplexVector col;  // c
  Complex delta{0.0};

  int order() const { return static_cast<int>(b_matrix.rows()); }
  /// [[B, c], [b^T, delta]].
  ComplexMatrix bordered() const;
};

/// Block-diagonal matrix of lower Jordan blocks (ones on the subdiagonal).
struct JordanSpec {
  std::vector<std::pair<Complex, int>> blocks;  // (eigenvalue, size)

  int order() const;
  /// Throws ArgumentError on nonpositive sizes or repeated eigenvalues.
  void validate(const Tolerances& tol = {}) const;
  ComplexMatrix assemble() const;
};

struct Completion {
  ComplexVector c;
  Complex delta{0.0};
};

/// rank [b, B^T b, ..., (B^T)^{m-1} b] == m.
bool observable(const ComplexMatrix& B, const ComplexVector& b, const Tolerances& tol = {});

/// rank [c, B c, ..., B^{m-1} c] == m.
bool controllable(const ComplexMatrix& B, const ComplexVector& c, const Tolerances& tol = {});

/// Commutant of B has dimension m (B is non-derogatory).
bool is_regular(const ComplexMatrix& B, const Tolerances& tol = {});

/// N x N Hankel matrix H_ij = b^T B^{i+j-2} c (1-based).
ComplexMatrix markov_hankel(const SISOSystem& sys, int N);

/// The first `count` coefficients g_k of lambda^{-k} in
/// lambda - delta - target(lambda) / P_B(lambda), by exact long division.
/// delta is fixed by trace matching. Requires deg target = m + 1.
ComplexList markov_targets(const ComplexMatrix& B, const MonicPoly& target, int count);

/// The unique c with det(lambda I - [[B, c], [b^T, delta]]) = target.
/// Throws GenericityError("no unique completion") if (B, b^T) is not
/// observable, NumericalError if the completed characteristic polynomial
/// misses the target by more than 1e-7 (relative, coefficientwise).
Completion solve_unique_completion(const ComplexMatrix& B, const ComplexVector& b,
                                   const MonicPoly& target, const Tolerances& tol = {});

/// Observability of (J, row^T) for J = spec.assemble(), decided from the
/// entries at the end of each Jordan segment.
bool jordan_observable_row(const JordanSpec& spec, const ComplexVector& row,
                           const Tolerances& tol = {});

}  // namespace ritzcoords
