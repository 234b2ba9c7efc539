#pragma once

// Gelfand-Zeitlin flows. Every flow is a similarity by a block g (+) I whose
// block commutes with x_m, so all Ritz levels are preserved.

#include <vector>

#include "ritzcoords/numcore.hpp"

namespace ritzcoords {

/// Flow of the Hamiltonian tr(x_m^k) for complex time q.
struct FlowParam {
  int m = 1;
  int k = 1;
  Complex q{0.0};
};

/// exp(a) by scaling and squaring around the degree-13 Pade approximant.
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

/// Ad(exp(-q k x_m^{k-1}) (+) I) x. Requires 1 <= k <= m <= n-1.
ComplexMatrix gz_flow(const ComplexMatrix& x, const FlowParam& p);

/// d/dq of gz_flow at q = 0: [x, k (x_m^{k-1} (+) 0)].
ComplexMatrix gz_vector_field(const ComplexMatrix& x, int m, int k);

/// Flow attached to the l-th eigenvalue of x_m, slot j = C(m, 2) + l.
/// Conjugates by g_m diag(1, .., e^{q} at l, .., 1) g_m^{-1} (+) I, with g_m the
/// last-row-ones diagonalizer in canonical order, so s_j scales by e^{-q}.
ComplexMatrix eigen_flow(const ComplexMatrix& x, int j, Complex q, const Tolerances& tol = {});

/// All m eigenvalue flows of level m in one similarity; qs[l-1] drives slot l.
ComplexMatrix level_flow(const ComplexMatrix& x, int m, const ComplexList& qs,
                         const Tolerances& tol = {});

/// (I, x_m, ..., x_m^{m-1}), each embedded as block (+) I_{n-m}. Throws
/// GenericityError("not regular") when the commutant of x_m exceeds dimension m.
std::vector<ComplexMatrix> centralizer_basis(const ComplexMatrix& x, int m,
                                             const Tolerances& tol = {});

}  // namespace ritzcoords
