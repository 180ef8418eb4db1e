#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "quantsel/ellipsoid.hpp"
#include "quantsel/geometry.hpp"
#include "quantsel/predicates.hpp"

namespace quantsel {

/// Bodies tagged with their exact volumes (all positive).
struct MeasureFamily {
  std::vector<ConvexBody> bodies;
  std::vector<Rat> weights;  // exact volumes

  static MeasureFamily of(std::vector<ConvexBody> bodies);
  Rat total() const;
};

/// Line simultaneously halving both polygonal measures within 1e-9 of half
/// the total weight each (the mu_1 side is solved exactly up to plateaus).
/// d=1 overload: exact weighted median point. HalvingDegenerate when the
/// bisection cannot converge.
Hyperplane ham_sandwich_2d(const MeasureFamily& mu1, const MeasureFamily& mu2);

/// Exact measure of { x : <normal,x> <= offset } under the family measure.
Rat halfplane_measure(const MeasureFamily& mu, const Hyperplane& h);

struct SeparatorList {
  // subset I (indices of families on the < side), separating hyperplane
  std::vector<std::pair<std::vector<int>, Hyperplane>> separators;
};
struct CounterexampleSubset {
  std::vector<int> subset;
};

/// For each nonempty I subset of [d] (representatives of the 2^d - 1
/// bipartitions), a strict separator of union-hulls, or the failing subset.
std::variant<SeparatorList, CounterexampleSubset> separability_check(
    const std::vector<ConvexBody>& family_hulls);

struct SameTypeCertificate {
  std::vector<std::vector<ConvexBody>> trimmed;
  std::vector<std::vector<int>> parent;  // input index per trimmed body
  std::vector<std::pair<std::vector<int>, Hyperplane>> separators;
  OrderType order_type;  // of the family hulls (not Mixed)
  Rat rho;               // normalized entry volume
  Rat final_volume;      // exact volume of every output body
};

/// Iterated ham-sandwich refinement (d = 2 certified path): trims the
/// families until every transversal has one fixed order type. Sizes drop by
/// at most the (1 - 1/(2(1-alpha)))-factor per cut and volumes by alpha.
SameTypeCertificate same_type_refine(const std::vector<std::vector<ConvexBody>>& families,
                                     const Rat& alpha = Rat(1, 3));

struct FractionalHellyResult {
  std::vector<int> subfamily;  // maximal for the witness
  Ellipsoid witness;
};

/// Search procedure behind the fractional Helly statements: lift John
/// ellipsoids of qualifying k-tuple intersections, pick a deep parameter
/// point, return every body containing the decoded ellipsoid.
FractionalHellyResult fractional_helly_search(const std::vector<ConvexBody>& bodies,
                                              int k, const Rat& volume_floor,
                                              uint64_t seed = 0);

struct HomogeneousResult {
  std::vector<std::vector<int>> subfamilies;  // indices per family
  Ellipsoid witness;
};

/// Exhaustive desk-scale search: subfamilies of size >= target*‍n per family
/// whose every transversal hull contains a common full-dimensional set.
HomogeneousResult homogeneous_selection_bruteforce(
    const std::vector<std::vector<ConvexBody>>& families, const Rat& target_fraction);

}  // namespace quantsel
