#include "quantsel/containment.hpp"

namespace quantsel {

bool body_contains_point(const ConvexBody& body, const VecQ& p) {
  return body.hull().hrep.contains(p);
}

bool body_contains_body(const ConvexBody& outer, const ConvexBody& inner) {
  const HRep& h = outer.hull().hrep;
  for (const auto& v : inner.vertices())
    if (!h.contains(v.x)) return false;
  return true;
}

bool tuple_hull_contains_ellipsoid(const std::vector<ConvexBody>& bodies,
                                   const Ellipsoid& e) {
  ConvexBody hull = hull_of_union(bodies);
  return contains_ellipsoid(hull.hull().hrep, e);
}

}  // namespace quantsel
