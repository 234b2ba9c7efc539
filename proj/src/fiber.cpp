#include "ritzcoords/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ritzcoords {

RitzData::RitzData(std::vector<ComplexList> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw ArgumentError("RitzData: at least one level required");
  for (std::size_t m = 0; m < levels_.size(); ++m) {
    if (levels_[m].size() != m + 1)
      throw ArgumentError("RitzData: level " + std::to_string(m + 1) + " must have " +
                          std::to_string(m + 1) + " entries, got " +
                          std::to_string(levels_[m].size()));
    for (Complex z : levels_[m])
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ArgumentError("RitzData: non-finite value at level " + std::to_string(m + 1));
  }
}

double RitzData::scale() const {
  double s = 0.0;
  for (const auto& level : levels_)
    for (Complex z : level) s = std::max(s, std::abs(z));
  return s > 0.0 ? s : 1.0;
}

std::optional<std::string> GenericityReport::first_failure() const {
  for (std::size_t m = 0; m < g1.size(); ++m) {
    if (!g1[m]) return "G1_" + std::to_string(m + 1);
    if (m < g2.size() && !g2[m]) return "G2_" + std::to_string(m + 1);
  }
  return std::nullopt;
}

RitzData ritz_values(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "ritz_values");
  const int n = static_cast<int>(x.rows());
  std::vector<ComplexList> levels;
  levels.reserve(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) levels.push_back(eigenvalues(x.topLeftCorner(m, m), tol));
  return RitzData(std::move(levels));
}

namespace {

double min_gap_within(const ComplexList& level) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < level.size(); ++i)
    for (std::size_t j = i + 1; j < level.size(); ++j) gap = std::min(gap, std::abs(level[i] - level[j]));
  return gap;
}

double min_gap_between(const ComplexList& a, const ComplexList& b) {
  double gap = std::numeric_limits<double>::infinity();
  for (Complex u : a)
    for (Complex v : b) gap = std::min(gap, std::abs(u - v));
  return gap;
}

}  // namespace

GenericityReport genericity_report(const RitzData& r, const Tolerances& tol) {
  const int n = r.n();
  const double threshold = tol.coincide_rel * r.scale();
  const double warn = 1e3 * threshold;
  GenericityReport report;
  double smallest = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= n; ++m) {
    const double gap = min_gap_within(r.level(m));
    report.g1.push_back(gap > threshold);
    smallest = std::min(smallest, gap);
  }
  for (int m = 1; m < n; ++m) {
    const double gap = min_gap_between(r.level(m), r.level(m + 1));
    report.g2.push_back(gap > threshold);
    smallest = std::min(smallest, gap);
  }
  report.generic = std::all_of(report.g1.begin(), report.g1.end(), [](bool b) { return b; }) &&
                   std::all_of(report.g2.begin(), report.g2.end(), [](bool b) { return b; });
  report.ill_conditioned = report.generic && smallest <= warn;
  return report;
}

void require_generic(const RitzData& r, const Tolerances& tol) {
  const GenericityReport report = genericity_report(r, tol);
  if (auto failure = report.first_failure())
    throw GenericityError(*failure, "Ritz values are not generic: (" + *failure + ") fails");
}

ComplexList diagonal_from_ritz(const RitzData& r) {
  ComplexList diag;
  Complex previous = 0.0;
  for (const auto& level : r.levels()) {
    const Complex sum = std::accumulate(level.begin(), level.end(), Complex(0.0));
    diag.push_back(sum - previous);
    previous = sum;
  }
  return diag;
}

FiberDescriptor fiber_descriptor(const ComplexMatrix& x, const Tolerances& tol) {
  RitzData r = ritz_values(x, tol);
  ComplexList diag = diagonal_from_ritz(r);
  return {std::move(r), std::move(diag)};
}

ComplexMatrix hessenberg_representative(const RitzData& r) {
  const int n = r.n();
  std::vector<MonicPoly> charpolys{MonicPoly::one()};
  for (int m = 1; m <= n; ++m) charpolys.push_back(charpoly_from_eigs(r.level(m)));
  const ComplexList delta = diagonal_from_ritz(r);

  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  y(0, 0) = delta[0];
  for (int m = 1; m < n; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    y(m, m) = delta[mu];
    y(m, m - 1) = 1.0;
    // (lambda - delta) P_m - P_{m+1}; the lambda^{m+1} and lambda^m terms
    // cancel by the choice of delta, so only degrees 0..m-1 are kept.
    const Polynomial shifted =
        poly_multiply(Polynomial{{-delta[mu], 1.0}}, Polynomial::from_monic(charpolys[mu]));
    const Polynomial diff = poly_subtract(shifted, Polynomial::from_monic(charpolys[mu + 1]));
    Polynomial target{ComplexList(diff.coeffs.begin(), diff.coeffs.begin() + m)};
    const ComplexList coeffs =
        poly_quotient_in_basis(target, std::span<const MonicPoly>(charpolys.data(), mu));
    for (int k = 0; k < m; ++k) y(k, m) = coeffs[static_cast<std::size_t>(k)];
  }
  return y;
}

bool strong_regularity_check(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "strong_regularity_check");
  require_finite(x, "strong_regularity_check");
  const int n = static_cast<int>(x.rows());
  const int count = n * (n + 1) / 2;
  ComplexMatrix gradients = ComplexMatrix::Zero(n * n, count);
  int col = 0;
  for (int m = 1; m <= n; ++m) {
    const ComplexMatrix xm = x.topLeftCorner(m, m);
    ComplexMatrix power = ComplexMatrix::Identity(m, m);  // x_m^{k-1}
    for (int k = 1; k <= m; ++k) {
      // d tr(x_m^k) / d x_ij = k (x_m^{k-1})_ji
      ComplexMatrix grad = ComplexMatrix::Zero(n, n);
      grad.topLeftCorner(m, m) = static_cast<double>(k) * power.transpose();
      gradients.col(col++) = Eigen::Map<const ComplexVector>(grad.data(), n * n);
      power = power * xm;
    }
  }
  return numeric_rank(gradients, tol) == count;
}

double multiset_distance(const ComplexList& a, const ComplexList& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (Complex u : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(u - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

double ritz_distance(const RitzData& a, const RitzData& b) {
  if (a.n() != b.n()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int m = 1; m <= a.n(); ++m) worst = std::max(worst, multiset_distance(a.level(m), b.level(m)));
  return worst;
}

}  // namespace ritzcoords
