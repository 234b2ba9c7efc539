#include "ritzcoords/poisson.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ritzcoords {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("Rational: 64-bit overflow");
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

std::string variable_name(int n, std::size_t index) {
  const auto i = static_cast<int>(index) / n + 1;
  const auto j = static_cast<int>(index) % n + 1;
  std::ostringstream os;
  if (n <= 9)
    os << 'a' << i << j;
  else
    os << 'a' << i << '_' << j;
  return os.str();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  constexpr auto lowest = std::numeric_limits<std::int64_t>::min();
  if (num == lowest || den == lowest) throw std::overflow_error("Rational: 64-bit overflow");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return make(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

std::string ComplexRational::to_string() const {
  if (im.is_zero()) return re.to_string();
  if (re.is_zero()) return im.to_string() + "i";
  const std::string sign = im.num() < 0 ? "-" : "+";
  const Rational mag = im.num() < 0 ? -im : im;
  return "(" + re.to_string() + sign + mag.to_string() + "i)";
}

SparsePoly::SparsePoly(int n) : n_(n) {
  if (n < 1) throw ArgumentError("SparsePoly: n must be positive");
}

SparsePoly SparsePoly::constant(int n, ComplexRational c) {
  SparsePoly p(n);
  p.add_term(Monomial(static_cast<std::size_t>(n * n), 0), c);
  return p;
}

SparsePoly SparsePoly::variable(int n, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) throw ArgumentError("SparsePoly::variable: index out of range");
  SparsePoly p(n);
  Monomial mono(static_cast<std::size_t>(n * n), 0);
  mono[static_cast<std::size_t>((i - 1) * n + (j - 1))] = 1;
  p.add_term(mono, Rational(1));
  return p;
}

void SparsePoly::add_term(const Monomial& mono, const ComplexRational& c) {
  if (mono.size() != static_cast<std::size_t>(n_ * n_))
    throw ArgumentError("SparsePoly::add_term: monomial size mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparsePoly SparsePoly::partial(int i, int j) const {
  const auto idx = static_cast<std::size_t>((i - 1) * n_ + (j - 1));
  SparsePoly out(n_);
  for (const auto& [mono, c] : terms_) {
    const std::uint16_t e = mono[idx];
    if (e == 0) continue;
    Monomial lowered = mono;
    lowered[idx] = static_cast<std::uint16_t>(e - 1);
    out.add_term(lowered, ComplexRational(Rational(e)) * c);
  }
  return out;
}

SparsePoly SparsePoly::times_variable(int i, int j) const {
  const auto idx = static_cast<std::size_t>((i - 1) * n_ + (j - 1));
  SparsePoly out(n_);
  for (const auto& [mono, c] : terms_) {
    Monomial raised = mono;
    ++raised[idx];
    out.terms_.emplace(std::move(raised), c);
  }
  return out;
}

Complex SparsePoly::evaluate(const ComplexMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw ArgumentError("SparsePoly::evaluate: size mismatch");
  Complex total = 0.0;
  for (const auto& [mono, c] : terms_) {
    Complex term = c.to_complex();
    for (std::size_t idx = 0; idx < mono.size(); ++idx)
      for (std::uint16_t e = 0; e < mono[idx]; ++e)
        term *= x(static_cast<Eigen::Index>(idx) / n_, static_cast<Eigen::Index>(idx) % n_);
    total += term;
  }
  return total;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Higher-degree monomials sort first in lexicographic exponent order; print
  // in reverse map order so the output reads a11 before a22.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, c] = *it;
    std::string coeff = c.to_string();
    bool negative = false;
    if (c.im.is_zero() && c.re.num() < 0) {
      negative = true;
      coeff = (-c.re).to_string();
    }
    os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    std::vector<std::string> factors;
    for (std::size_t idx = 0; idx < mono.size(); ++idx) {
      if (mono[idx] == 0) continue;
      std::string f = variable_name(n_, idx);
      if (mono[idx] > 1) f += "^" + std::to_string(mono[idx]);
      factors.push_back(std::move(f));
    }
    const bool unit = coeff == "1";
    if (factors.empty()) {
      os << coeff;
      continue;
    }
    if (!unit) os << coeff << "*";
    for (std::size_t f = 0; f < factors.size(); ++f) os << (f ? "*" : "") << factors[f];
  }
  return os.str();
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
  if (a.n_ != b.n_) throw ArgumentError("SparsePoly: mismatched n");
  SparsePoly out = a;
  for (const auto& [mono, c] : b.terms_) out.add_term(mono, c);
  return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
  if (a.n_ != b.n_) throw ArgumentError("SparsePoly: mismatched n");
  SparsePoly out = a;
  for (const auto& [mono, c] : b.terms_) out.add_term(mono, ComplexRational(Rational(0)) - c);
  return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.n_ != b.n_) throw ArgumentError("SparsePoly: mismatched n");
  SparsePoly out(a.n_);
  Monomial product(a.n_ * a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t idx = 0; idx < product.size(); ++idx)
        product[idx] = static_cast<std::uint16_t>(ma[idx] + mb[idx]);
      out.add_term(product, ca * cb);
    }
  }
  return out;
}

SparsePoly operator*(const ComplexRational& c, const SparsePoly& a) {
  SparsePoly out(a.n_);
  for (const auto& [mono, coeff] : a.terms_) out.add_term(mono, c * coeff);
  return out;
}

std::vector<BracketContribution> bracket_contributions(const SparsePoly& f, const SparsePoly& g) {
  if (f.n() != g.n()) throw ArgumentError("poisson_bracket: polynomials over different n");
  const int n = f.n();
  std::vector<SparsePoly> df, dg;
  df.reserve(static_cast<std::size_t>(n * n));
  dg.reserve(static_cast<std::size_t>(n * n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      df.push_back(f.partial(i, j));
      dg.push_back(g.partial(i, j));
    }
  auto at = [n](const std::vector<SparsePoly>& v, int i, int j) -> const SparsePoly& {
    return v[static_cast<std::size_t>((i - 1) * n + (j - 1))];
  };

  std::vector<BracketContribution> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const SparsePoly& fij = at(df, i, j);
      if (fij.is_zero()) continue;
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          if (j != k && i != l) continue;
          const SparsePoly& gkl = at(dg, k, l);
          if (gkl.is_zero()) continue;
          const SparsePoly product = fij * gkl;
          SparsePoly value(n);
          if (j == k) value = value + product.times_variable(i, l);
          if (i == l) value = value - product.times_variable(k, j);
          if (!value.is_zero()) out.push_back({i, j, k, l, std::move(value)});
        }
    }
  return out;
}

SparsePoly poisson_bracket(const SparsePoly& f, const SparsePoly& g) {
  SparsePoly total(f.n());
  for (const auto& c : bracket_contributions(f, g)) total = total + c.value;
  return total;
}

SparsePoly gz_generator(int n, int m, int k) {
  if (n < 1 || m < 1 || m > n || k < 1 || k > m)
    throw ArgumentError("gz_generator: require 1 <= k <= m <= n");
  SparsePoly out(n);
  // Cyclic index words (i_1, ..., i_k) in [1, m]^k: alpha_{i1 i2} ... alpha_{ik i1}.
  std::vector<int> word(static_cast<std::size_t>(k), 1);
  Monomial mono(static_cast<std::size_t>(n * n), 0);
  while (true) {
    std::fill(mono.begin(), mono.end(), 0);
    for (int s = 0; s < k; ++s) {
      const int a = word[static_cast<std::size_t>(s)];
      const int b = word[static_cast<std::size_t>((s + 1) % k)];
      ++mono[static_cast<std::size_t>((a - 1) * n + (b - 1))];
    }
    out.add_term(mono, Rational(1));
    int pos = k - 1;
    while (pos >= 0 && word[static_cast<std::size_t>(pos)] == m) {
      word[static_cast<std::size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++word[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace ritzcoords
