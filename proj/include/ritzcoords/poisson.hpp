#pragma once

// Exact polynomials in the coordinate functionals alpha_ij (alpha_ij(x) = x_ij)
// with the linear Poisson structure
//   {alpha_ij, alpha_kl} = delta_jk alpha_il - delta_il alpha_kj.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ritzcoords/numcore.hpp"

namespace ritzcoords {

/// Reduced fraction with 64-bit parts; arithmetic throws std::overflow_error
/// instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(0) - a; }
  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(r), im(i) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Complex to_complex() const { return {re.to_double(), im.to_double()}; }
  std::string to_string() const;

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) = default;
};

/// Exponent of alpha_ij stored at index (i-1) * n + (j-1).
using Monomial = std::vector<std::uint16_t>;

class SparsePoly {
 public:
  explicit SparsePoly(int n);

  static SparsePoly constant(int n, ComplexRational c);
  /// alpha_ij, 1-based indices.
  static SparsePoly variable(int n, int i, int j);

  int n() const { return n_; }
  const std::map<Monomial, ComplexRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds c * monomial, dropping the entry if it cancels.
  void add_term(const Monomial& mono, const ComplexRational& c);

  SparsePoly partial(int i, int j) const;
  SparsePoly times_variable(int i, int j) const;
  Complex evaluate(const ComplexMatrix& x) const;
  /// e.g. "a11^2 + 2*a12*a21"; "0" for the zero polynomial.
  std::string to_string() const;

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(const ComplexRational& c, const SparsePoly& a);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) = default;

 private:
  int n_;
  std::map<Monomial, ComplexRational> terms_;
};

/// One summand of the Leibniz expansion of {f, g}:
/// {alpha_ij, alpha_kl} * df/dalpha_ij * dg/dalpha_kl.
struct BracketContribution {
  int i, j, k, l;
  SparsePoly value;
};

/// Nonzero Leibniz summands before collection, in (i, j, k, l) order.
std::vector<BracketContribution> bracket_contributions(const SparsePoly& f, const SparsePoly& g);

SparsePoly poisson_bracket(const SparsePoly& f, const SparsePoly& g);

/// tr((x_m)^k) expanded in the alpha_ij. Requires 1 <= k <= m <= n.
SparsePoly gz_generator(int n, int m, int k);

}  // namespace ritzcoords
