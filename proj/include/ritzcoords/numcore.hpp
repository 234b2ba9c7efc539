#pragma once

// Dense complex linear algebra and polynomial kernel shared by every module.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ritzcoords {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using ComplexList = std::vector<Complex>;

/// Malformed input: sizes, ranges, non-finite entries, zero divisors.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An eigenvalue-disjointness or related structural condition failed.
/// `condition()` names it, e.g. "G2_1", "spectral collision", "not regular".
class GenericityError : public std::runtime_error {
 public:
  GenericityError(std::string condition, const std::string& what)
      : std::runtime_error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Iteration failed to converge or a residual check was exceeded.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double eig_rel = 1e-10;       // relative eigenvalue / eigenvector residual
  double coincide_rel = 1e-8;   // two eigenvalues closer than this (scaled) are equal
  double rank_rel = 1e-10;      // singular values below rank_rel * sigma_max are zero

  /// Throws ArgumentError unless every field lies in (0, 1).
  void validate() const;
};

/// lambda^d + c_{d-1} lambda^{d-1} + ... + c_0, stored as (c_0, ..., c_{d-1}).
struct MonicPoly {
  ComplexList coeffs;

  std::size_t degree() const { return coeffs.size(); }
  static MonicPoly one() { return {}; }
};

/// General polynomial, coefficient i multiplies lambda^i. Trailing zeros allowed.
struct Polynomial {
  ComplexList coeffs;

  /// Index of the highest nonzero coefficient; -1 for the zero polynomial.
  int degree() const;
  static Polynomial from_monic(const MonicPoly& p);
};

// --- matrices -------------------------------------------------------------

void require_square(const ComplexMatrix& x, const char* what);
void require_finite(const ComplexMatrix& x, const char* what);

/// x(1:m, 1:m) as an independent copy.
ComplexMatrix leading_submatrix(const ComplexMatrix& x, int m);

/// g (+) I_{n-m}: g in the top-left block, identity below.
ComplexMatrix embed_block(const ComplexMatrix& g, int n);

double frobenius_norm(const ComplexMatrix& x);

// --- eigenvalues ------------------------------------------------------------

/// Upper Hessenberg form by Householder reflections; the spectrum is unchanged.
ComplexMatrix hessenberg_reduce(const ComplexMatrix& x);

/// All eigenvalues with algebraic multiplicity, in canonical order.
/// Single-shift (Wilkinson) complex QR on the Hessenberg form. Throws
/// NumericalError after kMaxQrIterationsPerEigenvalue * n iterations.
ComplexList eigenvalues(const ComplexMatrix& x, const Tolerances& tol = {});

inline constexpr int kMaxQrIterationsPerEigenvalue = 60;

/// Sorts lexicographically on (re, im). Real parts that agree to within
/// coincide_rel * max|z| are treated as ties and broken by the imaginary part,
/// so conjugate pairs order deterministically despite rounding.
void canonical_sort(ComplexList& values, const Tolerances& tol = {});

/// Null vector of (x - mu I) scaled so its last entry is exactly 1.
/// Inverse iteration from a fixed pseudo-random start with LU solves.
/// Throws GenericityError when the last entry is (relatively) below
/// coincide_rel, NumericalError when the residual cannot be brought under
/// eig_rel * ||x|| * ||u||.
ComplexVector eigvec_last_one(const ComplexMatrix& x, Complex mu,
                              const Tolerances& tol = {});

// --- polynomials ------------------------------------------------------------

MonicPoly charpoly_from_eigs(std::span<const Complex> eigs);

/// det(lambda I - x) from the Hessenberg form, by the column recurrence
/// on the leading characteristic polynomials.
MonicPoly charpoly(const ComplexMatrix& x);

Complex poly_eval(const MonicPoly& p, Complex z);
Complex poly_eval(const Polynomial& p, Complex z);
Polynomial poly_derivative(const MonicPoly& p);
Polynomial poly_multiply(const Polynomial& a, const Polynomial& b);
Polynomial poly_subtract(const Polynomial& a, const Polynomial& b);

/// Coefficients a_k with target = sum_k a_k basis[k]. The basis must have
/// deg basis[k] == k; the target degree must be below basis.size().
ComplexList poly_quotient_in_basis(const Polynomial& target,
                                   std::span<const MonicPoly> basis);

// --- rank -------------------------------------------------------------------

/// Rank from the singular values: those below rank_rel * sigma_max are zero.
int numeric_rank(const ComplexMatrix& a, const Tolerances& tol = {});

/// Dimension of { y : x y = y x }, the nullity of I (x) x - x^T (x) I.
int commutant_dimension(const ComplexMatrix& x, const Tolerances& tol = {});

/// Krylov matrix [v, a v, ..., a^{m-1} v] with m = a.rows().
ComplexMatrix krylov_matrix(const ComplexMatrix& a, const ComplexVector& v);

/// max |z| over the values, or 1 when all vanish.
double magnitude_scale(std::span<const Complex> values);

}  // namespace ritzcoords
