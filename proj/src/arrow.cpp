#include "ritzcoords/arrow.hpp"

#include <cmath>

#include <Eigen/LU>

namespace ritzcoords {

namespace {

double default_scale(const ComplexList& a, const ComplexList& b) {
  ComplexList all(a);
  all.insert(all.end(), b.begin(), b.end());
  return magnitude_scale(all);
}

void require_distinct(const ComplexList& values, double threshold, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (std::abs(values[i] - values[j]) <= threshold)
        throw GenericityError("spectral collision",
                              std::string(what) + ": parameters " + std::to_string(i + 1) +
                                  " and " + std::to_string(j + 1) + " coincide");
}

void require_disjoint(const ComplexList& d, const ComplexList& lam, double threshold,
                      const char* what) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < lam.size(); ++j)
      if (std::abs(d[i] - lam[j]) <= threshold)
        throw GenericityError("spectral collision", std::string(what) + ": d_" +
                                                        std::to_string(i + 1) + " equals lambda_" +
                                                        std::to_string(j + 1));
}

}  // namespace

ComplexMatrix ArrowMatrix::to_dense() const {
  const int m = static_cast<int>(d.size());
  if (p.size() != m || q.size() != m) throw ArgumentError("ArrowMatrix: border length mismatch");
  ComplexMatrix a = ComplexMatrix::Zero(m + 1, m + 1);
  for (int i = 0; i < m; ++i) a(i, i) = d[static_cast<std::size_t>(i)];
  a.topRightCorner(m, 1) = p;
  a.bottomLeftCorner(1, m) = q.transpose();
  a(m, m) = delta;
  return a;
}

ComplexMatrix ArrowFactorization::z() const {
  Eigen::PartialPivLU<ComplexMatrix> lu(z_inv);
  return lu.solve(ComplexMatrix::Identity(z_inv.rows(), z_inv.cols()));
}

ComplexMatrix cauchy_matrix(const ComplexList& d, const ComplexList& lam, const Tolerances& tol,
                            double scale) {
  if (scale <= 0.0) scale = default_scale(d, lam);
  require_disjoint(d, lam, tol.coincide_rel * scale, "cauchy_matrix");
  ComplexMatrix c(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(lam.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < lam.size(); ++j)
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0 / (d[i] - lam[j]);
  return c;
}

ComplexList sigma_matrix(const RitzData& r, int m, const Tolerances& tol) {
  if (m < 1 || m >= r.n())
    throw ArgumentError("sigma_matrix: level " + std::to_string(m) + " out of range 1.." +
                        std::to_string(r.n() - 1));
  const GenericityReport report = genericity_report(r, tol);
  const auto mi = static_cast<std::size_t>(m - 1);
  if (!report.g1[mi])
    throw GenericityError("G1_" + std::to_string(m), "sigma_matrix: (G1_" + std::to_string(m) + ") fails");
  if (!report.g2[mi])
    throw GenericityError("G2_" + std::to_string(m), "sigma_matrix: (G2_" + std::to_string(m) + ") fails");

  const ComplexList& lower = r.level(m);
  const ComplexList& upper = r.level(m + 1);
  ComplexList sigma(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    Complex next = 1.0;  // P_{m+1}(mu_i)
    for (Complex nu : upper) next *= lower[i] - nu;
    Complex deriv = 1.0;  // P_m'(mu_i)
    for (std::size_t k = 0; k < lower.size(); ++k)
      if (k != i) deriv *= lower[i] - lower[k];
    sigma[i] = -next / deriv;
  }
  return sigma;
}

ComplexList bc_product(const RitzData& r, int m, const Tolerances& tol) {
  return sigma_matrix(r, m, tol);
}

ComplexList pi_matrix(const ComplexList& d, const ComplexList& lam, const Tolerances& tol,
                      double scale) {
  if (lam.size() != d.size() + 1)
    throw ArgumentError("pi_matrix: expected " + std::to_string(d.size() + 1) +
                        " spectrum values, got " + std::to_string(lam.size()));
  if (scale <= 0.0) scale = default_scale(d, lam);
  const double threshold = tol.coincide_rel * scale;
  require_distinct(d, threshold, "pi_matrix");
  require_disjoint(d, lam, threshold, "pi_matrix");

  // weight_i = prod_k (d_i - lam_k) / prod_{k != i} (d_i - d_k) = -p_i q_i
  ComplexList weight(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    Complex num = 1.0;
    for (Complex l : lam) num *= d[i] - l;
    Complex den = 1.0;
    for (std::size_t k = 0; k < d.size(); ++k)
      if (k != i) den *= d[i] - d[k];
    weight[i] = num / den;
  }
  ComplexList pi(lam.size());
  for (std::size_t j = 0; j < lam.size(); ++j) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Complex gap = lam[j] - d[i];
      sum += weight[i] / (gap * gap);
    }
    pi[j] = 1.0 - sum;
  }
  return pi;
}

ArrowFactorization arrow_factorize(const ArrowMatrix& a, const ComplexList& lam,
                                   const Tolerances& tol) {
  const int m = static_cast<int>(a.d.size());
  if (static_cast<int>(lam.size()) != m + 1)
    throw ArgumentError("arrow_factorize: spectrum must have " + std::to_string(m + 1) + " values");
  const ComplexMatrix dense = a.to_dense();
  require_finite(dense, "arrow_factorize");
  const double scale = default_scale(a.d, lam);
  const double threshold = tol.coincide_rel * scale;
  require_distinct(a.d, threshold, "arrow_factorize");
  require_distinct(lam, threshold, "arrow_factorize");
  require_disjoint(a.d, lam, threshold, "arrow_factorize");

  ArrowFactorization f;
  f.lambda = lam;
  f.z_inv.resize(m + 1, m + 1);
  f.z_inv.topRows(m) = (-a.p).asDiagonal() * cauchy_matrix(a.d, lam, tol, scale);
  f.z_inv.row(m).setOnes();
  f.pi = pi_matrix(a.d, lam, tol, scale);

  Eigen::PartialPivLU<ComplexMatrix> lu_t(f.z_inv.transpose());
  ComplexVector lam_vec(m + 1);
  for (int j = 0; j <= m; ++j) lam_vec(j) = lam[static_cast<std::size_t>(j)];
  // Z^{-1} Lambda Z = (Z^{-T} (Z^{-1} Lambda)^T)^T
  const ComplexMatrix scaled = f.z_inv * lam_vec.asDiagonal();
  const ComplexMatrix rebuilt = lu_t.solve(scaled.transpose()).transpose();
  const double residual = (dense - rebuilt).norm();
  if (!(residual <= kArrowResidualRel * dense.norm()))
    throw NumericalError("arrow_factorize: reconstruction residual " + std::to_string(residual) +
                         " exceeds 1e-8 * ||A||");
  return f;
}

}  // namespace ritzcoords
