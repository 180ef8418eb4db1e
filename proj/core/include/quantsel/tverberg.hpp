#pragma once

#include <optional>
#include <vector>

#include "quantsel/ellipsoid.hpp"
#include "quantsel/geometry.hpp"
#include "quantsel/rng.hpp"

namespace quantsel {

/// Disjoint index sets over an input family.
struct Partition {
  std::vector<std::vector<int>> parts;
};

/// transversals[i][j] = index of the element chosen from family j in
/// transversal i; family_subset set by the reduced variants.
struct TransversalSet {
  std::vector<std::vector<int>> transversals;
  std::optional<std::vector<int>> family_subset;
};

struct TverbergPointResult {
  Partition partition;
  VecQ common;  // exact common point, in every part's hull
};

/// Tverberg partition of points into r parts with a common point.
/// Exhaustive when the number of set partitions is <= 1e6; otherwise a
/// lifted colorful-Caratheodory pivoting search with restarts (seeded).
/// Every returned partition carries an exactly verified common point.
TverbergPointResult tverberg_points(const std::vector<VecQ>& points, int r,
                                    uint64_t seed = 0);

/// Same search, forced down one path (used by the oracle-agreement tests).
std::optional<TverbergPointResult> tverberg_points_exhaustive(
    const std::vector<VecQ>& points, int r);
std::optional<TverbergPointResult> tverberg_points_heuristic(
    const std::vector<VecQ>& points, int r, uint64_t seed);

struct ColorfulPointResult {
  TransversalSet transversals;
  VecQ common;
};

/// r disjoint transversals of the classes whose hulls share a point.
ColorfulPointResult colorful_tverberg_points(
    const std::vector<std::vector<VecQ>>& classes, int r, uint64_t seed = 0);

struct TverbergEllipsoidResult {
  Partition partition;
  Ellipsoid witness;
  Rat shrink_factor;  // containment certified at this scale
};

/// Lift ellipsoids to R^{d(d+3)/2}, find a point Tverberg partition there,
/// decode the common point. Witness det >= min input det (log-concavity),
/// containment certified against inscribed polytopes at the recorded shrink.
TverbergEllipsoidResult tverberg_ellipsoids(const std::vector<Ellipsoid>& ells,
                                            int r, uint64_t seed = 0);

struct ColorfulEllipsoidResult {
  TransversalSet transversals;
  Ellipsoid witness;
  Rat shrink_factor;
};

ColorfulEllipsoidResult colorful_tverberg_ellipsoids(
    const std::vector<std::vector<Ellipsoid>>& families, int r, uint64_t seed = 0);

struct ReduceResult {
  std::vector<std::vector<int>> chosen;  // per family, indices of <= d+1 bodies
  ConvexBody witness_cell;               // inside every reduced hull
};

/// Lemma-style transversal reduction: each family shrinks to <= d+1 bodies
/// while the intersection keeps a cell of volume >= (5 d^3 k C(2d,d))^-d
/// relative to the original intersection (proof-faithful constant).
ReduceResult reduce_transversals(const std::vector<std::vector<ConvexBody>>& families);

struct ReducedColorfulResult {
  std::vector<int> family_indices;  // d+1 of them
  TransversalSet transversals;
  Ellipsoid witness;
};

/// John per body -> colorful ellipsoid Tverberg with k transversals ->
/// reduce -> pigeonhole r transversals on one (d+1)-subset of families.
ReducedColorfulResult reduced_colorful_tverberg(
    const std::vector<std::vector<ConvexBody>>& families, int r, uint64_t seed = 0);

// -- verification helpers (used by tests and the independent verifier) --

bool partition_parts_disjoint(const Partition& p, int n);
bool transversals_disjoint(const TransversalSet& t,
                           const std::vector<int>& family_sizes);

}  // namespace quantsel
