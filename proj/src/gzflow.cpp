#include "ritzcoords/gzflow.hpp"

#include <array>
#include <cmath>

#include <Eigen/LU>

#include "ritzcoords/coords.hpp"
#include "ritzcoords/fiber.hpp"

namespace ritzcoords {

namespace {

void check_flow_bounds(const ComplexMatrix& x, int m, int k, const char* what) {
  require_square(x, what);
  const int n = static_cast<int>(x.rows());
  if (m < 1 || m > n - 1)
    throw ArgumentError(std::string(what) + ": level m=" + std::to_string(m) + " out of range 1.." +
                        std::to_string(n - 1));
  if (k < 1 || k > m)
    throw ArgumentError(std::string(what) + ": power k=" + std::to_string(k) + " out of range 1.." +
                        std::to_string(m));
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int p) {
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < p; ++i) out = out * a;
  return out;
}

// Conjugate the leading block: x -> (s (+) I) x (s_inv (+) I).
ComplexMatrix conjugate_leading(const ComplexMatrix& x, const ComplexMatrix& s,
                                const ComplexMatrix& s_inv) {
  const Eigen::Index m = s.rows();
  ComplexMatrix out = x;
  out.topRows(m) = s * x.topRows(m);
  out.leftCols(m) = out.leftCols(m) * s_inv;
  return out;
}

ComplexMatrix generic_diagonalizer(const ComplexMatrix& x, int m, const Tolerances& tol) {
  const RitzData ritz = ritz_values(x, tol);
  require_generic(ritz, tol);
  return diagonalizer_last_row_ones(x.topLeftCorner(m, m), ritz.level(m), tol);
}

ComplexMatrix level_similarity(const ComplexMatrix& x, int m, const ComplexVector& scales,
                               const Tolerances& tol) {
  const ComplexMatrix g = generic_diagonalizer(x, m, tol);
  Eigen::PartialPivLU<ComplexMatrix> lu(g);
  const ComplexMatrix g_inv = lu.solve(ComplexMatrix::Identity(m, m));
  const ComplexMatrix s = g * scales.asDiagonal() * g_inv;
  const ComplexMatrix s_inv = g * scales.cwiseInverse().asDiagonal() * g_inv;
  return conjugate_leading(x, s, s_inv);
}

}  // namespace

ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
  require_square(a, "matrix_exponential");
  require_finite(a, "matrix_exponential");
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const ComplexMatrix as = a / std::ldexp(1.0, squarings);

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix a2 = as * as;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                                b[5] * a4 + b[3] * a2 + b[1] * id;
  const ComplexMatrix u = as * u_inner;
  const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                          b[2] * a2 + b[0] * id;
  Eigen::PartialPivLU<ComplexMatrix> lu(v - u);
  ComplexMatrix r = lu.solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

ComplexMatrix gz_flow(const ComplexMatrix& x, const FlowParam& p) {
  check_flow_bounds(x, p.m, p.k, "gz_flow");
  require_finite(x, "gz_flow");
  const ComplexMatrix generator =
      static_cast<double>(p.k) * matrix_power(x.topLeftCorner(p.m, p.m), p.k - 1);
  const ComplexMatrix s = matrix_exponential(-p.q * generator);
  const ComplexMatrix s_inv = matrix_exponential(p.q * generator);
  return conjugate_leading(x, s, s_inv);
}

ComplexMatrix gz_vector_field(const ComplexMatrix& x, int m, int k) {
  check_flow_bounds(x, m, k, "gz_vector_field");
  const int n = static_cast<int>(x.rows());
  ComplexMatrix generator = ComplexMatrix::Zero(n, n);
  generator.topLeftCorner(m, m) =
      static_cast<double>(k) * matrix_power(x.topLeftCorner(m, m), k - 1);
  return x * generator - generator * x;
}

ComplexMatrix eigen_flow(const ComplexMatrix& x, int j, Complex q, const Tolerances& tol) {
  require_square(x, "eigen_flow");
  const int n = static_cast<int>(x.rows());
  if (j < 1 || j > n * (n - 1) / 2)
    throw ArgumentError("eigen_flow: slot j=" + std::to_string(j) + " out of range 1.." +
                        std::to_string(n * (n - 1) / 2));
  const auto [m, l] = slot_to_level(j);
  ComplexVector scales = ComplexVector::Ones(m);
  scales(l - 1) = std::exp(q);
  return level_similarity(x, m, scales, tol);
}

ComplexMatrix level_flow(const ComplexMatrix& x, int m, const ComplexList& qs,
                         const Tolerances& tol) {
  require_square(x, "level_flow");
  const int n = static_cast<int>(x.rows());
  if (m < 1 || m > n - 1)
    throw ArgumentError("level_flow: level m=" + std::to_string(m) + " out of range 1.." +
                        std::to_string(n - 1));
  if (static_cast<int>(qs.size()) != m)
    throw ArgumentError("level_flow: expected " + std::to_string(m) + " flow times");
  ComplexVector scales(m);
  for (int i = 0; i < m; ++i) scales(i) = std::exp(qs[static_cast<std::size_t>(i)]);
  return level_similarity(x, m, scales, tol);
}

std::vector<ComplexMatrix> centralizer_basis(const ComplexMatrix& x, int m, const Tolerances& tol) {
  require_square(x, "centralizer_basis");
  const int n = static_cast<int>(x.rows());
  if (m < 1 || m > n)
    throw ArgumentError("centralizer_basis: level m=" + std::to_string(m) + " out of range 1.." +
                        std::to_string(n));
  const ComplexMatrix xm = x.topLeftCorner(m, m);
  const int dim = commutant_dimension(xm, tol);
  if (dim != m)
    throw GenericityError("not regular", "centralizer_basis: x_" + std::to_string(m) +
                                             " is not regular (commutant dimension " +
                                             std::to_string(dim) + ")");
  std::vector<ComplexMatrix> basis;
  ComplexMatrix power = ComplexMatrix::Identity(m, m);
  for (int k = 0; k < m; ++k) {
    basis.push_back(embed_block(power, n));
    power = power * xm;
  }
  return basis;
}

}  // namespace ritzcoords
