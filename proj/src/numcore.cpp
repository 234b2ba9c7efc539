#include "ritzcoords/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace ritzcoords {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool all_finite(const ComplexMatrix& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      if (!is_finite(x(i, j))) return false;
  return true;
}

// Eigenvalue of the 2x2 block [a b; c d] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex p = 0.5 * (a - d);
  const Complex bc = b * c;
  const Complex disc = std::sqrt(p * p + bc);
  const Complex den_plus = p + disc;
  const Complex den_minus = p - disc;
  const Complex den = std::abs(den_plus) >= std::abs(den_minus) ? den_plus : den_minus;
  if (std::abs(den) == 0.0) return d;
  return d - bc / den;
}

}  // namespace

void Tolerances::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
      throw ArgumentError(std::string("tolerance ") + name + " must lie in (0, 1)");
  };
  check(eig_rel, "eig_rel");
  check(coincide_rel, "coincide_rel");
  check(rank_rel, "rank_rel");
}

int Polynomial::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[static_cast<std::size_t>(i)] != Complex(0.0)) return i;
  return -1;
}

Polynomial Polynomial::from_monic(const MonicPoly& p) {
  Polynomial out{p.coeffs};
  out.coeffs.push_back(1.0);
  return out;
}

void require_square(const ComplexMatrix& x, const char* what) {
  if (x.rows() != x.cols() || x.rows() < 1)
    throw ArgumentError(std::string(what) + ": expected a non-empty square matrix");
}

void require_finite(const ComplexMatrix& x, const char* what) {
  if (!all_finite(x)) throw ArgumentError(std::string(what) + ": non-finite entry");
}

ComplexMatrix leading_submatrix(const ComplexMatrix& x, int m) {
  require_square(x, "leading_submatrix");
  if (m < 1 || m > x.rows())
    throw ArgumentError("leading_submatrix: order " + std::to_string(m) + " out of range 1.." +
                        std::to_string(x.rows()));
  return x.topLeftCorner(m, m);
}

ComplexMatrix embed_block(const ComplexMatrix& g, int n) {
  if (g.rows() != g.cols() || g.rows() > n)
    throw ArgumentError("embed_block: block does not fit");
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  out.topLeftCorner(g.rows(), g.cols()) = g;
  return out;
}

double frobenius_norm(const ComplexMatrix& x) { return x.norm(); }

ComplexMatrix hessenberg_reduce(const ComplexMatrix& x) {
  require_square(x, "hessenberg_reduce");
  ComplexMatrix h = x;
  const Eigen::Index n = h.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    ComplexVector v = h.block(k + 1, k, n - k - 1, 1);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const Complex x0 = v(0);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    v(0) += phase * xnorm;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // H <- (I - 2 v v^H) H (I - 2 v v^H)
    auto rows = h.bottomRows(n - k - 1);
    const Eigen::RowVectorXcd left = v.adjoint() * rows;
    rows.noalias() -= 2.0 * v * left;
    auto cols = h.rightCols(n - k - 1);
    const ComplexVector right = cols * v;
    cols.noalias() -= 2.0 * right * v.adjoint();
    h.block(k + 2, k, n - k - 2, 1).setZero();
  }
  return h;
}

ComplexList eigenvalues(const ComplexMatrix& x, const Tolerances& tol) {
  if (x.rows() == 0 && x.cols() == 0) return {};
  require_square(x, "eigenvalues");
  require_finite(x, "eigenvalues");
  ComplexMatrix h = hessenberg_reduce(x);
  const int n = static_cast<int>(h.rows());
  const double hnorm = h.norm();
  const int max_iterations = kMaxQrIterationsPerEigenvalue * n;

  int hi = n - 1;
  int total = 0;
  int since_deflation = 0;
  std::vector<Complex> ca(static_cast<std::size_t>(n)), cb(static_cast<std::size_t>(n));
  std::vector<double> cr(static_cast<std::size_t>(n));

  while (hi > 0) {
    int l = hi;
    for (; l > 0; --l) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * s) {
        h(l, l - 1) = 0.0;
        break;
      }
    }
    if (l == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++total > max_iterations)
      throw NumericalError("eigenvalues: QR iteration did not converge after " +
                           std::to_string(max_iterations) + " iterations");
    ++since_deflation;

    Complex shift;
    if (since_deflation % 11 == 0) {
      shift = h(hi, hi) + Complex(0.75, 0.4375) * std::abs(h(hi, hi - 1));
    } else {
      shift = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (int i = l; i <= hi; ++i) h(i, i) -= shift;
    for (int k = l; k < hi; ++k) {
      const Complex a = h(k, k);
      const Complex b = h(k + 1, k);
      const double r = std::hypot(std::abs(a), std::abs(b));
      const auto ku = static_cast<std::size_t>(k);
      ca[ku] = a;
      cb[ku] = b;
      cr[ku] = r;
      if (r == 0.0) continue;
      for (int j = k; j <= hi; ++j) {
        const Complex u = h(k, j);
        const Complex v = h(k + 1, j);
        h(k, j) = (std::conj(a) * u + std::conj(b) * v) / r;
        h(k + 1, j) = (-b * u + a * v) / r;
      }
    }
    for (int k = l; k < hi; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const double r = cr[ku];
      if (r == 0.0) continue;
      const Complex a = ca[ku];
      const Complex b = cb[ku];
      const int last = std::min(k + 2, hi);
      for (int i = l; i <= last; ++i) {
        const Complex p = h(i, k);
        const Complex q = h(i, k + 1);
        h(i, k) = (p * a + q * b) / r;
        h(i, k + 1) = (-p * std::conj(b) + q * std::conj(a)) / r;
      }
    }
    for (int i = l; i <= hi; ++i) h(i, i) += shift;
  }

  ComplexList out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = h(i, i);
  canonical_sort(out, tol);
  return out;
}

void canonical_sort(ComplexList& values, const Tolerances& tol) {
  std::sort(values.begin(), values.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  const double tie = tol.coincide_rel * magnitude_scale(values);
  std::size_t start = 0;
  while (start < values.size()) {
    std::size_t end = start + 1;
    while (end < values.size() && values[end].real() - values[end - 1].real() <= tie) ++end;
    std::sort(values.begin() + static_cast<std::ptrdiff_t>(start),
              values.begin() + static_cast<std::ptrdiff_t>(end),
              [](Complex a, Complex b) { return a.imag() < b.imag(); });
    start = end;
  }
}

ComplexVector eigvec_last_one(const ComplexMatrix& x, Complex mu, const Tolerances& tol) {
  require_square(x, "eigvec_last_one");
  require_finite(x, "eigvec_last_one");
  const Eigen::Index n = x.rows();
  if (n == 1) return ComplexVector::Ones(1);

  const double xnorm = x.norm();
  const double scale = std::max(xnorm, std::abs(mu));
  // Offset the shift slightly so the LU factor is nonsingular.
  const Complex offset = Complex(1.0, 0.5) * (64.0 * kEps * std::max(scale, 1e-300));
  const ComplexMatrix shifted = x - (mu + offset) * ComplexMatrix::Identity(n, n);
  Eigen::PartialPivLU<ComplexMatrix> lu(shifted);

  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  ComplexVector u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = Complex(normal(rng), normal(rng));
  u.normalize();

  const ComplexMatrix a = x - mu * ComplexMatrix::Identity(n, n);
  auto residual_ok = [&](const ComplexVector& v) {
    return (a * v).norm() <= tol.eig_rel * xnorm * v.norm();
  };

  bool lu_ok = true;
  for (int step = 0; step < 4; ++step) {
    ComplexVector next = lu.solve(u);
    const double nn = next.norm();
    if (!std::isfinite(nn) || nn == 0.0) {
      lu_ok = false;
      break;
    }
    u = next / nn;
    if (step >= 1 && residual_ok(u)) break;
  }
  if (!lu_ok || !residual_ok(u)) {
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    u = svd.matrixV().col(n - 1);
  }
  if (!residual_ok(u))
    throw NumericalError("eigvec_last_one: residual exceeds eig_rel * ||x|| * ||u||");

  const double unorm = u.norm();
  if (std::abs(u(n - 1)) < tol.coincide_rel * unorm)
    throw GenericityError("eigenvector last entry",
                          "eigvec_last_one: eigenvector has a vanishing last entry "
                          "(consecutive leading submatrices share an eigenvalue)");
  u /= u(n - 1);
  u(n - 1) = 1.0;
  return u;
}

MonicPoly charpoly_from_eigs(std::span<const Complex> eigs) {
  // full[i] is the coefficient of lambda^i, leading coefficient kept explicitly.
  ComplexList full{1.0};
  for (Complex mu : eigs) {
    ComplexList next(full.size() + 1, 0.0);
    for (std::size_t i = 0; i < full.size(); ++i) {
      next[i + 1] += full[i];
      next[i] -= mu * full[i];
    }
    full = std::move(next);
  }
  full.pop_back();
  return MonicPoly{std::move(full)};
}

MonicPoly charpoly(const ComplexMatrix& x) {
  require_square(x, "charpoly");
  require_finite(x, "charpoly");
  const ComplexMatrix h = hessenberg_reduce(x);
  const int n = static_cast<int>(h.rows());
  // P_{j+1} = (lambda - h_jj) P_j - sum_{i<j} h_ij (prod_{r=i+1..j} h_{r,r-1}) P_i
  std::vector<Polynomial> p{Polynomial{{1.0}}};
  for (int j = 0; j < n; ++j) {
    Polynomial next = poly_multiply(Polynomial{{-h(j, j), 1.0}}, p.back());
    Complex chain = 1.0;
    for (int i = j - 1; i >= 0; --i) {
      chain *= h(i + 1, i);
      const Complex w = h(i, j) * chain;
      if (w == Complex(0.0)) continue;
      const ComplexList& low = p[static_cast<std::size_t>(i)].coeffs;
      for (std::size_t c = 0; c < low.size(); ++c) next.coeffs[c] -= w * low[c];
    }
    p.push_back(std::move(next));
  }
  ComplexList coeffs = p.back().coeffs;
  coeffs.pop_back();
  return MonicPoly{std::move(coeffs)};
}

Complex poly_eval(const MonicPoly& p, Complex z) {
  Complex acc = 1.0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex poly_eval(const Polynomial& p, Complex z) {
  Complex acc = 0.0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial poly_derivative(const MonicPoly& p) {
  const Polynomial full = Polynomial::from_monic(p);
  Polynomial out;
  for (std::size_t i = 1; i < full.coeffs.size(); ++i)
    out.coeffs.push_back(static_cast<double>(i) * full.coeffs[i]);
  return out;
}

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  Polynomial out{ComplexList(a.coeffs.size() + b.coeffs.size() - 1, 0.0)};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return out;
}

Polynomial poly_subtract(const Polynomial& a, const Polynomial& b) {
  Polynomial out{ComplexList(std::max(a.coeffs.size(), b.coeffs.size()), 0.0)};
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

ComplexList poly_quotient_in_basis(const Polynomial& target, std::span<const MonicPoly> basis) {
  const int m = static_cast<int>(basis.size());
  for (int k = 0; k < m; ++k)
    if (basis[static_cast<std::size_t>(k)].degree() != static_cast<std::size_t>(k))
      throw ArgumentError("poly_quotient_in_basis: basis element " + std::to_string(k) +
                          " must have degree " + std::to_string(k));
  if (target.degree() > m - 1)
    throw ArgumentError("poly_quotient_in_basis: target degree " +
                        std::to_string(target.degree()) + " exceeds basis span " +
                        std::to_string(m - 1));

  ComplexList rest(static_cast<std::size_t>(m), 0.0);
  for (std::size_t i = 0; i < target.coeffs.size() && i < rest.size(); ++i) rest[i] = target.coeffs[i];
  ComplexList out(static_cast<std::size_t>(m), 0.0);
  for (int k = m - 1; k >= 0; --k) {
    const auto ku = static_cast<std::size_t>(k);
    const Complex a = rest[ku];
    out[ku] = a;
    rest[ku] = 0.0;
    const ComplexList& low = basis[ku].coeffs;
    for (std::size_t i = 0; i < low.size(); ++i) rest[i] -= a * low[i];
  }
  return out;
}

int numeric_rank(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  if (!all_finite(a)) throw ArgumentError("numeric_rank: non-finite entry");
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double threshold = tol.rank_rel * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > threshold) ++rank;
  return rank;
}

int commutant_dimension(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "commutant_dimension");
  const Eigen::Index m = x.rows();
  // vec(x y - y x) = (I (x) x - x^T (x) I) vec(y), column-major vec.
  ComplexMatrix op = ComplexMatrix::Zero(m * m, m * m);
  for (Eigen::Index j = 0; j < m; ++j) op.block(j * m, j * m, m, m) += x;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      op.block(i * m, j * m, m, m).diagonal().array() -= x(j, i);
  return static_cast<int>(m * m) - numeric_rank(op, tol);
}

ComplexMatrix krylov_matrix(const ComplexMatrix& a, const ComplexVector& v) {
  require_square(a, "krylov_matrix");
  if (v.size() != a.rows()) throw ArgumentError("krylov_matrix: vector length mismatch");
  const Eigen::Index m = a.rows();
  ComplexMatrix k(m, m);
  k.col(0) = v;
  for (Eigen::Index j = 1; j < m; ++j) k.col(j) = a * k.col(j - 1);
  return k;
}

double magnitude_scale(std::span<const Complex> values) {
  double s = 0.0;
  for (Complex z : values) s = std::max(s, std::abs(z));
  return s > 0.0 ? s : 1.0;
}

}  // namespace ritzcoords
