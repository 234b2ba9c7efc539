#pragma once

// Ritz values of the leading principal submatrices, genericity tests, and the
// unit upper Hessenberg representative of a fibre.

#include <optional>
#include <string>
#include <vector>

#include "ritzcoords/numcore.hpp"

namespace ritzcoords {

/// Ordered eigenvalue lists of x_1, ..., x_n. Level m (0-based index m-1)
/// holds exactly m values; the order inside a level is data and is kept.
class RitzData {
 public:
  RitzData() = default;
  /// Throws ArgumentError unless level m has m finite entries and n >= 1.
  explicit RitzData(std::vector<ComplexList> levels);

  int n() const { return static_cast<int>(levels_.size()); }
  /// 1-based level access.
  const ComplexList& level(int m) const { return levels_.at(static_cast<std::size_t>(m - 1)); }
  const std::vector<ComplexList>& levels() const { return levels_; }

  /// max |mu| over every level, or 1 when all vanish.
  double scale() const;

 private:
  std::vector<ComplexList> levels_;
};

struct GenericityReport {
  std::vector<bool> g1;  // g1[m-1]: E(x_m) has distinct elements, m = 1..n
  std::vector<bool> g2;  // g2[m-1]: E(x_m) and E(x_{m+1}) are disjoint, m = 1..n-1
  bool generic = false;
  /// Generic, but some gap is within 1e3 * coincide_rel * scale.
  bool ill_conditioned = false;

  /// "G1_m" or "G2_m" for the first failing condition (G1 before G2 at each m).
  std::optional<std::string> first_failure() const;
};

struct FiberDescriptor {
  RitzData ritz;
  ComplexList diag;
};

RitzData ritz_values(const ComplexMatrix& x, const Tolerances& tol = {});

GenericityReport genericity_report(const RitzData& r, const Tolerances& tol = {});

/// Throws GenericityError naming the first failing condition.
void require_generic(const RitzData& r, const Tolerances& tol = {});

/// Forced diagonal entries: sum E(x_m) - sum E(x_{m-1}).
ComplexList diagonal_from_ritz(const RitzData& r);

FiberDescriptor fiber_descriptor(const ComplexMatrix& x, const Tolerances& tol = {});

/// The unique unit upper Hessenberg matrix with the given Ritz values.
/// Column m+1 above the diagonal comes from expanding
/// (lambda - delta_{m+1}) P_m - P_{m+1} in the basis P_0, ..., P_{m-1}.
ComplexMatrix hessenberg_representative(const RitzData& r);

/// True when the gradients of all n(n+1)/2 functions tr(x_m^k), k <= m,
/// are linearly independent at x.
bool strong_regularity_check(const ComplexMatrix& x, const Tolerances& tol = {});

/// Largest distance in a greedy nearest-neighbour matching of two
/// equal-length multisets. Infinity when the lengths differ.
double multiset_distance(const ComplexList& a, const ComplexList& b);

/// Max over levels of multiset_distance.
double ritz_distance(const RitzData& a, const RitzData& b);

}  // namespace ritzcoords
