#include "quantsel/epsnet.hpp"

#include <algorithm>
#include <set>

#include "quantsel/combinatorics.hpp"
#include "quantsel/containment.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/rng.hpp"

namespace quantsel {

Rat variant_volume_floor(SelectionVariant v, int d) {
  switch (v) {
    case SelectionVariant::Quadratic:
      return pow_rat(Rat(d), -d);
    case SelectionVariant::Steinitz2d:
      return pow_rat(Rat(5) * d * d * d, -d);
    case SelectionVariant::Simplex: {
      // explicit chain bound: (d(d+3)/2 * C(2d,d))^-d * (5d^2)^-d * d^-d
      Rat m = Rat(d * (d + 3) / 2) * binomial(2 * d, d);
      return pow_rat(m, -d) * pow_rat(Rat(5) * d * d, -d) * pow_rat(Rat(d), -d);
    }
  }
  return Rat(0);
}

bool subfamily_pierced(const std::vector<ConvexBody>& family,
                       const std::vector<int>& subfamily,
                       const std::vector<Ellipsoid>& pieces) {
  if (pieces.empty()) return false;
  std::vector<ConvexBody> bodies;
  for (int i : subfamily) bodies.push_back(family[i]);
  ConvexBody hull = hull_of_union(bodies);
  const HRep& hr = hull.hull().hrep;
  for (const auto& p : pieces)
    if (contains_ellipsoid(hr, p)) return true;
  return false;
}

namespace {

// first unpierced ceil(eps*n)-subfamily in lexicographic order; exhaustive
// scan for small n, sampling plus a confirming exhaustive pass otherwise
std::optional<std::vector<int>> find_unpierced(const std::vector<ConvexBody>& family,
                                               int take,
                                               const std::vector<Ellipsoid>& pieces,
                                               uint64_t seed) {
  int n = static_cast<int>(family.size());
  std::optional<std::vector<int>> found;
  if (n <= 20) {
    for_each_subset_until(n, take, [&](const std::vector<int>& comb) {
      if (!subfamily_pierced(family, comb, pieces)) {
        found = comb;
        return true;
      }
      return false;
    });
    return found;
  }
  Rng rng(seed, "netsample");
  for (int t = 0; t < 10000; ++t) {
    std::set<int> pick;
    while (static_cast<int>(pick.size()) < take)
      pick.insert(static_cast<int>(rng.next_below(n)));
    std::vector<int> comb(pick.begin(), pick.end());
    if (!subfamily_pierced(family, comb, pieces)) return comb;
  }
  if (binomial(n, take) <= Rat(200000)) {
    for_each_subset_until(n, take, [&](const std::vector<int>& comb) {
      if (!subfamily_pierced(family, comb, pieces)) {
        found = comb;
        return true;
      }
      return false;
    });
  }
  return found;
}

}  // namespace

EpsNet weak_epsnet(const std::vector<ConvexBody>& family, const Rat& eps,
                   SelectionVariant variant, uint64_t seed) {
  if (family.empty()) fail(ErrorCode::InvalidInput, "empty family");
  if (sgn(eps) <= 0 || eps > 1) fail(ErrorCode::InvalidInput, "eps must be in (0,1]");
  int n = static_cast<int>(family.size());
  int d = family[0].dim();
  int alpha = variant_tuple_size(variant, d);
  int take = static_cast<int>(rat_ceil(eps * n).get_si());
  if (take < 1) take = 1;
  Rat per_body_floor = variant_volume_floor(variant, d);

  EpsNet net;
  net.epsilon = eps;
  net.variant = variant;
  Rat min_vol = family[0].volume();
  for (const auto& b : family) min_vol = std::min(min_vol, b.volume());
  // the 1e-4 slack mirrors the certified-John tolerance
  net.volume_floor = per_body_floor * min_vol * Rat(9999, 10000);

  int guard = static_cast<int>(rat_ceil(binomial(n, take)).get_si()) + 1;
  for (int round = 0; round < guard; ++round) {
    auto unpierced = find_unpierced(family, take, net.pieces, seed);
    if (!unpierced) break;
    std::vector<ConvexBody> sub;
    for (int i : *unpierced) sub.push_back(family[i]);
    std::optional<Ellipsoid> piece;
    // prefer a piece inside the subfamily's common intersection: it pierces
    // every later subfamily that shares even one member
    auto common = intersect_bodies(sub);
    if (common) {
      try {
        Ellipsoid deep = john_ellipsoid(*common);
        if (ellipsoid_volume_at_least(deep, net.volume_floor)) piece = deep;
      } catch (const Error&) {
      }
    }
    if (!piece && static_cast<int>(sub.size()) >= alpha) {
      try {
        SelectionWitness w;
        switch (variant) {
          case SelectionVariant::Quadratic:
            w = selection_quadratic(sub, QuantMode::Volume, seed + round);
            break;
          case SelectionVariant::Steinitz2d:
            w = selection_2d(sub, seed + round);
            break;
          case SelectionVariant::Simplex:
            w = selection_simplex(sub, seed + round);
            break;
        }
        piece = w.ellipsoid;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFound && e.code() != ErrorCode::TooFewBodies)
          throw;
      }
    }
    // subfamilies too small for the tuple machinery still get pierced: the
    // John ellipsoid of any member is inside conv(subfamily) and satisfies
    // every variant's floor (it is at least d^-d of a full body)
    if (!piece) piece = john_ellipsoid(family[(*unpierced)[0]]);
    // the added piece must pierce this subfamily, or the greedy loop stalls
    if (!subfamily_pierced(family, *unpierced, {*piece})) {
      net.complete = false;
      break;
    }
    net.pieces.push_back(std::move(*piece));
  }
  return net;
}

std::vector<ConvexBody> slab_instance(int d, const Rat& eps, int n, uint64_t seed) {
  if (d < 1 || d > 3) fail(ErrorCode::InvalidInput, "slab instance needs 1 <= d <= 3");
  if (sgn(eps) <= 0 || eps > 1) fail(ErrorCode::InvalidInput, "eps in (0,1]");
  Rat inv = 1 / eps;
  if (inv.get_den() != 1) fail(ErrorCode::InvalidInput, "1/eps must be an integer");
  long groups = inv.get_num().get_si();
  if (n % groups != 0) fail(ErrorCode::InvalidInput, "n must be divisible by 1/eps");
  long per = n / groups;

  Rng rng(seed, "slabs");
  std::vector<ConvexBody> out;
  // group i sits strictly between the hyperplanes x_d = 2i and x_d = 2i+2
  for (long g = 0; g < groups; ++g) {
    for (long j = 0; j < per; ++j) {
      VecQ base(d, Rat(0));
      for (int c = 0; c + 1 < d; ++c)
        base[c] = frac(static_cast<long>(rng.next_below(1024)), 1024);
      base[d - 1] = Rat(2 * g) + Rat(3, 10) +
                    frac(static_cast<long>(rng.next_below(256)), 640);  // < 0.7
      // axis-aligned unit box at base
      std::vector<Point> corners;
      for (int mask = 0; mask < (1 << d); ++mask) {
        VecQ v = base;
        for (int c = 0; c < d; ++c)
          if (mask & (1 << c)) v[c] += 1;
        corners.emplace_back(std::move(v));
      }
      out.emplace_back(std::move(corners));
    }
  }
  return out;
}

}  // namespace quantsel
