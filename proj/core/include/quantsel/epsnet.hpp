#pragma once

#include "quantsel/selection.hpp"

namespace quantsel {

struct EpsNet {
  std::vector<Ellipsoid> pieces;
  Rat epsilon;
  Rat volume_floor;  // exact, in units of kappa_d (det of the shape)
  SelectionVariant variant;
  bool complete = true;  // false when a selection sub-step reported NotFound
};

/// Greedy net: while some ceil(eps*n)-subfamily is unpierced (lexicographic
/// scan), run the variant's selection on it and add the witness.
EpsNet weak_epsnet(const std::vector<ConvexBody>& family, const Rat& eps,
                   SelectionVariant variant, uint64_t seed = 0);

/// The variant's exact volume floor (det units) for bodies of volume >= 1.
Rat variant_volume_floor(SelectionVariant v, int d);

/// Is the subfamily pierced: some piece inside conv(subfamily)?
bool subfamily_pierced(const std::vector<ConvexBody>& family,
                       const std::vector<int>& subfamily,
                       const std::vector<Ellipsoid>& pieces);

/// 1/eps groups of eps*n unit boxes strictly between consecutive parallel
/// hyperplanes; groups pairwise separated. Deterministic in (params, seed).
std::vector<ConvexBody> slab_instance(int d, const Rat& eps, int n,
                                      uint64_t seed = 0);

}  // namespace quantsel
