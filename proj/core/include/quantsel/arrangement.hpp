#pragma once

#include <vector>

#include "quantsel/geometry.hpp"

namespace quantsel {

struct Cell {
  VecQ sample;      // strictly interior rational point
  ConvexBody body;  // full-dimensional closed cell
};

/// Full-dimensional cells of the hyperplane arrangement restricted to
/// `region` (must be full-dimensional). Cells are interior-disjoint and
/// cover the region up to measure zero; deterministic order.
std::vector<Cell> arrangement_cells(const std::vector<Hyperplane>& planes,
                                    const ConvexBody& region);

}  // namespace quantsel
