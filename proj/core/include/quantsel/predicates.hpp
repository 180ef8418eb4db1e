#pragma once

#include <map>
#include <variant>
#include <vector>

#include "quantsel/geometry.hpp"

namespace quantsel {

/// Sign of det(x_1 - x_{d+1}, ..., x_d - x_{d+1}) for d+1 points in R^d.
int orientation(const std::vector<VecQ>& points);

/// Order type: orientation sign of every (d+1)-subset, keyed by the sorted
/// index tuple.
struct OrderType {
  std::map<std::vector<int>, int> signs;
  bool operator==(const OrderType& o) const { return signs == o.signs; }
};

OrderType order_type_of(const std::vector<VecQ>& points);

/// Two selections (one vertex index per body) whose orientations differ on
/// the given (d+1)-subset of bodies.
struct MixedWitness {
  std::vector<int> subset;
  std::vector<int> selection_a;  // vertex index per body in `subset`
  std::vector<int> selection_b;
  int sign_a = 0;
  int sign_b = 0;
};

/// Exhaustive vertex-product check: either every selection from the bodies
/// shares one order type, or a witness pair of differing selections.
std::variant<OrderType, MixedWitness> family_order_type(
    const std::vector<ConvexBody>& bodies);

/// Closed-simplex membership: z in conv of the given affinely independent
/// d+1 points (exact barycentric test). False for degenerate simplices.
bool point_in_simplex(const std::vector<VecQ>& simplex, const VecQ& z);

}  // namespace quantsel
