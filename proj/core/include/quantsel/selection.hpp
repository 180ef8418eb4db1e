#pragma once

#include <optional>
#include <vector>

#include "quantsel/ellipsoid.hpp"
#include "quantsel/geometry.hpp"
#include "quantsel/rng.hpp"

namespace quantsel {

struct PointSelectionResult {
  VecQ point;
  long depth;  // closed (d+1)-simplices containing the point
};

/// Deep point by exact cell enumeration: depth is constant on open cells of
/// the arrangement of all point-spanned hyperplanes, so one interior sample
/// per cell is decisive. Requires general position (DegeneratePosition).
PointSelectionResult point_selection(const std::vector<VecQ>& points);

/// Exact depth oracle: number of closed simplices spanned by `points`
/// containing z (degenerate subsets never count).
long simplex_depth(const std::vector<VecQ>& points, const VecQ& z);

struct VolPlanesResult {
  std::vector<std::vector<int>> chosen_indices;  // d+1 point indices per set
  ConvexBody cell;                               // inside every chosen simplex
  Rat cell_volume;
  Rat intersection_volume;  // of the input hull intersection
};

/// Spanned-hyperplane refinement: trims each point set to a (d+1)-simplex
/// that still contains a cell of volume >= (m C(k,d))^-d of the intersection.
VolPlanesResult vol_planes_refine(const std::vector<std::vector<VecQ>>& sets);

/// Subset of <= 2d indices whose hull contains (5d^2)^-1 B^d; requires
/// conv(points) to contain the unit ball (PreconditionFailed otherwise).
std::vector<int> steinitz_reduce(const std::vector<VecQ>& points);

enum class SelectionVariant { Quadratic, Steinitz2d, Simplex };
enum class QuantMode { Volume, Diameter };

int variant_tuple_size(SelectionVariant v, int d);

struct SelectionWitness {
  std::optional<Ellipsoid> ellipsoid;  // volume mode
  std::optional<Segment> segment;      // diameter mode
  std::optional<VecQ> direction;       // diameter mode: cap direction
  std::optional<Rat> delta;            // diameter mode: certified v-width
  int tuple_size = 0;
  std::vector<std::vector<int>> hit_tuples;  // sorted index tuples
  Rat fraction;                              // |hit| / C(n, tuple_size)
};

SelectionWitness selection_quadratic(const std::vector<ConvexBody>& family,
                                     QuantMode mode = QuantMode::Volume,
                                     uint64_t seed = 0);
SelectionWitness selection_2d(const std::vector<ConvexBody>& family,
                              uint64_t seed = 0);
SelectionWitness selection_simplex(const std::vector<ConvexBody>& family,
                                   uint64_t seed = 0);

/// Every tuple_size-subset whose hull contains the ellipsoid, by exhaustive
/// exact enumeration (the certificate counting step).
std::vector<std::vector<int>> enumerate_hit_tuples(
    const std::vector<ConvexBody>& family, const Ellipsoid& witness,
    int tuple_size);
std::vector<std::vector<int>> enumerate_hit_tuples_segment(
    const std::vector<ConvexBody>& family, const Segment& witness,
    int tuple_size);

}  // namespace quantsel
