#include "ritzcoords/control.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace ritzcoords {

namespace {

constexpr double kCompletionRel = 1e-7;

void require_vector(const ComplexMatrix& B, const ComplexVector& v, const char* what) {
  require_square(B, what);
  if (v.size() != B.rows())
    throw ArgumentError(std::string(what) + ": vector length " + std::to_string(v.size()) +
                        " does not match order " + std::to_string(B.rows()));
}

}  // namespace

ComplexMatrix SISOSystem::bordered() const {
  const int m = order();
  require_vector(b_matrix, row, "SISOSystem");
  require_vector(b_matrix, col, "SISOSystem");
  ComplexMatrix out(m + 1, m + 1);
  out.topLeftCorner(m, m) = b_matrix;
  out.topRightCorner(m, 1) = col;
  out.bottomLeftCorner(1, m) = row.transpose();
  out(m, m) = delta;
  return out;
}

int JordanSpec::order() const {
  int total = 0;
  for (const auto& [mu, size] : blocks) total += size;
  return total;
}

void JordanSpec::validate(const Tolerances& tol) const {
  if (blocks.empty()) throw ArgumentError("JordanSpec: no blocks");
  ComplexList eigs;
  for (const auto& [mu, size] : blocks) {
    if (size < 1) throw ArgumentError("JordanSpec: block sizes must be positive");
    eigs.push_back(mu);
  }
  const double threshold = tol.coincide_rel * magnitude_scale(eigs);
  for (std::size_t i = 0; i < eigs.size(); ++i)
    for (std::size_t j = i + 1; j < eigs.size(); ++j)
      if (std::abs(eigs[i] - eigs[j]) <= threshold)
        throw ArgumentError("JordanSpec: blocks " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " share an eigenvalue");
}

ComplexMatrix JordanSpec::assemble() const {
  const int m = order();
  ComplexMatrix j = ComplexMatrix::Zero(m, m);
  int offset = 0;
  for (const auto& [mu, size] : blocks) {
    for (int i = 0; i < size; ++i) {
      j(offset + i, offset + i) = mu;
      if (i > 0) j(offset + i, offset + i - 1) = 1.0;
    }
    offset += size;
  }
  return j;
}

bool observable(const ComplexMatrix& B, const ComplexVector& b, const Tolerances& tol) {
  require_vector(B, b, "observable");
  return numeric_rank(krylov_matrix(B.transpose(), b), tol) == B.rows();
}

bool controllable(const ComplexMatrix& B, const ComplexVector& c, const Tolerances& tol) {
  require_vector(B, c, "controllable");
  return numeric_rank(krylov_matrix(B, c), tol) == B.rows();
}

bool is_regular(const ComplexMatrix& B, const Tolerances& tol) {
  require_square(B, "is_regular");
  return commutant_dimension(B, tol) == B.rows();
}

ComplexMatrix markov_hankel(const SISOSystem& sys, int N) {
  if (N < 1) throw ArgumentError("markov_hankel: N must be positive");
  require_vector(sys.b_matrix, sys.row, "markov_hankel");
  require_vector(sys.b_matrix, sys.col, "markov_hankel");
  // markov[k] = b^T B^k c
  ComplexList markov;
  ComplexVector v = sys.col;
  for (int k = 0; k < 2 * N - 1; ++k) {
    markov.push_back(sys.row.transpose() * v);
    v = sys.b_matrix * v;
  }
  ComplexMatrix h(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) h(i, j) = markov[static_cast<std::size_t>(i + j)];
  return h;
}

ComplexList markov_targets(const ComplexMatrix& B, const MonicPoly& target, int count) {
  require_square(B, "markov_targets");
  const int m = static_cast<int>(B.rows());
  if (static_cast<int>(target.degree()) != m + 1)
    throw ArgumentError("markov_targets: target must have degree " + std::to_string(m + 1));
  const Polynomial p = Polynomial::from_monic(charpoly(B));  // p.coeffs[m] == 1
  const Polynomial t = Polynomial::from_monic(target);

  // target = (lambda + q0) P_B + R with q0 = t_m + tr(B) = -delta.
  const Complex q0 = t.coeffs[static_cast<std::size_t>(m)] + B.trace();
  const Polynomial quotient_times_p = poly_multiply(Polynomial{{q0, 1.0}}, p);
  // F = -R = Q P_B - target, keep degrees 0..m-1.
  ComplexList f(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    f[iu] = quotient_times_p.coeffs[iu] - t.coeffs[iu];
  }

  // F / P_B = sum_k g_k lambda^{-k}; match the coefficient of lambda^{m-j}.
  ComplexList g(static_cast<std::size_t>(count), 0.0);
  for (int j = 1; j <= count; ++j) {
    Complex value = m - j >= 0 ? f[static_cast<std::size_t>(m - j)] : Complex(0.0);
    for (int k = std::max(1, j - m); k < j; ++k)
      value -= g[static_cast<std::size_t>(k - 1)] * p.coeffs[static_cast<std::size_t>(m - j + k)];
    g[static_cast<std::size_t>(j - 1)] = value;
  }
  return g;
}

Completion solve_unique_completion(const ComplexMatrix& B, const ComplexVector& b,
                                   const MonicPoly& target, const Tolerances& tol) {
  require_vector(B, b, "solve_unique_completion");
  const int m = static_cast<int>(B.rows());
  if (static_cast<int>(target.degree()) != m + 1)
    throw ArgumentError("solve_unique_completion: target must have degree " + std::to_string(m + 1));
  if (!observable(B, b, tol))
    throw GenericityError("no unique completion",
                          "solve_unique_completion: (B, b^T) is not observable");

  Completion out;
  out.delta = -target.coeffs[static_cast<std::size_t>(m)] - B.trace();
  const ComplexList g = markov_targets(B, target, m);
  // Rows b^T B^{k-1}, k = 1..m.
  const ComplexMatrix obs = krylov_matrix(B.transpose(), b).transpose();
  ComplexVector rhs(m);
  for (int k = 0; k < m; ++k) rhs(k) = g[static_cast<std::size_t>(k)];
  out.c = obs.fullPivLu().solve(rhs);

  ComplexMatrix completed(m + 1, m + 1);
  completed.topLeftCorner(m, m) = B;
  completed.topRightCorner(m, 1) = out.c;
  completed.bottomLeftCorner(1, m) = b.transpose();
  completed(m, m) = out.delta;
  const MonicPoly achieved = charpoly(completed);
  double scale = 1.0;
  for (Complex z : target.coeffs) scale = std::max(scale, std::abs(z));
  for (std::size_t i = 0; i < target.coeffs.size(); ++i)
    if (!(std::abs(achieved.coeffs[i] - target.coeffs[i]) <= kCompletionRel * scale))
      throw NumericalError("solve_unique_completion: completed characteristic polynomial misses "
                           "the target at coefficient " + std::to_string(i));
  return out;
}

bool jordan_observable_row(const JordanSpec& spec, const ComplexVector& row, const Tolerances& tol) {
  spec.validate(tol);
  if (row.size() != spec.order())
    throw ArgumentError("jordan_observable_row: row length " + std::to_string(row.size()) +
                        " does not match order " + std::to_string(spec.order()));
  double scale = row.size() > 0 ? row.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) scale = 1.0;
  const double threshold = tol.coincide_rel * scale;
  int end = 0;
  for (const auto& [mu, size] : spec.blocks) {
    end += size;
    if (!(std::abs(row(end - 1)) > threshold)) return false;
  }
  return true;
}

}  // namespace ritzcoords
