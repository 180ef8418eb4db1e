#include <set>

#include "doctest.h"
#include "quantsel/combinatorics.hpp"
#include "quantsel/containment.hpp"
#include "quantsel/epsnet.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/predicates.hpp"
#include "quantsel/selection.hpp"
#include "test_helpers.hpp"

using namespace quantsel;
using namespace qtest;

TEST_CASE("point_selection in d=1: points 0,1,2,3") {
  std::vector<VecQ> pts = {{Rat(0)}, {Rat(1)}, {Rat(2)}, {Rat(3)}};
  auto res = point_selection(pts);
  CHECK(res.depth == 4);
  CHECK(res.point[0] > Rat(1));
  CHECK(res.point[0] < Rat(2));
}

namespace {

// generic probe: not on any hyperplane spanned by d points of the input
bool probe_is_generic(const std::vector<VecQ>& pts, const VecQ& z) {
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (orientation({pts[i], pts[j], z}) == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("point_selection on square corners matches the exhaustive oracle") {
  std::vector<VecQ> pts = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)},
                           {Rat(1), Rat(1)}, {Rat(0), Rat(1)}};
  auto res = point_selection(pts);
  // oracle: depth at generic random probes never exceeds the returned depth
  Rng rng(2, "probe");
  long best_probe = 0;
  int used = 0;
  for (int t = 0; t < 2000; ++t) {
    VecQ z = {frac(static_cast<long>(rng.next_below(4097)), 4096),
              frac(static_cast<long>(rng.next_below(4097)), 4096)};
    if (!probe_is_generic(pts, z)) continue;
    ++used;
    best_probe = std::max(best_probe, simplex_depth(pts, z));
    CHECK(simplex_depth(pts, z) <= res.depth);
  }
  CHECK(used > 1500);
  // every generic point of the square lies in exactly 2 of the 4 triangles
  CHECK(res.depth == 2);
  CHECK(best_probe == 2);
}

TEST_CASE("point_selection: single simplex has depth 1") {
  std::vector<VecQ> pts = {{Rat(0), Rat(0)}, {Rat(3), Rat(0)}, {Rat(0), Rat(3)}};
  auto res = point_selection(pts);
  CHECK(res.depth == 1);
}

TEST_CASE("point_selection rejects degenerate position") {
  std::vector<VecQ> pts = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)},
                           {Rat(5), Rat(0)}};
  CHECK_THROWS_AS(point_selection(pts), Error);
}

TEST_CASE("point_selection depth dominates random probes on random instances") {
  Rng rng(23, "psrand");
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<VecQ> pts;
    while (static_cast<int>(pts.size()) < 7) {
      VecQ p = rand_pt2(rng, 64, 256);
      pts.push_back(p);
      try {
        if (pts.size() >= 3) point_selection(pts);
      } catch (const Error&) {
        pts.pop_back();  // keep general position
      }
    }
    auto res = point_selection(pts);
    for (int t = 0; t < 300; ++t) {
      VecQ z = rand_pt2(rng, 128, 1024);
      if (!probe_is_generic(pts, z)) continue;
      CHECK(simplex_depth(pts, z) <= res.depth);
    }
  }
}

TEST_CASE("vol_planes_refine: single simplex is the identity") {
  std::vector<std::vector<VecQ>> sets = {
      {{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(0), Rat(4)}}};
  auto res = vol_planes_refine(sets);
  CHECK(res.chosen_indices[0] == std::vector<int>{0, 1, 2});
  CHECK(res.cell_volume == Rat(8));
}

TEST_CASE("vol_planes_refine: unit square corners") {
  std::vector<std::vector<VecQ>> sets = {
      {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}}};
  auto res = vol_planes_refine(sets);
  CHECK(res.chosen_indices[0].size() == 3);
  CHECK(res.intersection_volume == Rat(1));
  // bound (1 * C(4,2))^-2 = 1/36; the max diagonal cell is actually 1/4
  CHECK(res.cell_volume >= frac(1, 36));
  CHECK(res.cell_volume == frac(1, 4));
  // cell inside the chosen simplex, exactly
  std::vector<VecQ> simplex;
  for (int i : res.chosen_indices[0]) simplex.push_back(sets[0][i]);
  for (const auto& v : res.cell.vertices())
    CHECK(point_in_simplex(simplex, v.x));
}

TEST_CASE("vol_planes_refine: two overlapping squares") {
  std::vector<std::vector<VecQ>> sets = {
      {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)}, {Rat(0), Rat(1)}},
      {{Rat(1, 2), Rat(0)}, {Rat(3, 2), Rat(0)}, {Rat(3, 2), Rat(1)}, {Rat(1, 2), Rat(1)}}};
  auto res = vol_planes_refine(sets);
  Rat bound = pow_rat(Rat(2) * binomial(4, 2), -2);  // (2*6)^-2 = 1/144
  CHECK(res.cell_volume >= bound * res.intersection_volume);
  for (int i = 0; i < 2; ++i) {
    CHECK(res.chosen_indices[i].size() == 3);
    std::vector<VecQ> simplex;
    for (int j : res.chosen_indices[i]) simplex.push_back(sets[i][j]);
    for (const auto& v : res.cell.vertices())
      CHECK(point_in_simplex(simplex, v.x));
  }
}

TEST_CASE("steinitz_reduce: cross-polytope identity") {
  std::vector<VecQ> pts = {{Rat(2), Rat(0)}, {Rat(-2), Rat(0)},
                           {Rat(0), Rat(2)}, {Rat(0), Rat(-2)}};
  auto idx = steinitz_reduce(pts);
  CHECK(idx == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("steinitz_reduce: hexagon at circumradius 2 gives 4 points") {
  // rational hexagon-ish ring at radius ~2 containing the unit ball
  std::vector<VecQ> pts;
  for (int k = 0; k < 6; ++k) {
    double th = 2 * M_PI * k / 6 + 0.1;
    Rat t = rationalize(std::tan(th / 2), 10000UL);
    VecQ u = rational_circle_point(t);
    pts.push_back(scale(u, Rat(2)));
  }
  auto idx = steinitz_reduce(pts);
  CHECK(idx.size() == 4);
  std::vector<VecQ> sub;
  for (int i : idx) sub.push_back(pts[i]);
  Ellipsoid small;
  small.shape = MatQ::identity(2);
  for (auto& v : small.shape.a) v = v / 20;
  small.center = {Rat(0), Rat(0)};
  CHECK(contains_ellipsoid(convex_hull(sub).hrep, small));
}

TEST_CASE("steinitz_reduce: ball outside the hull fails the precondition") {
  std::vector<VecQ> pts = {{Rat(2), Rat(0)}, {Rat(3), Rat(0)}, {Rat(2), Rat(1)}};
  CHECK_THROWS_AS(steinitz_reduce(pts), Error);
  try {
    steinitz_reduce(pts);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

namespace {

std::vector<ConvexBody> identical_squares(int n) {
  std::vector<ConvexBody> fam;
  for (int i = 0; i < n; ++i) fam.push_back(unit_square(Rat(0), Rat(0)));
  return fam;
}

std::vector<ConvexBody> random_squares_2x2(int n, uint64_t seed) {
  Rng rng(seed, "squares");
  std::vector<ConvexBody> fam;
  for (int i = 0; i < n; ++i)
    fam.push_back(unit_square(frac(static_cast<long>(rng.next_below(1025)), 1024),
                              frac(static_cast<long>(rng.next_below(1025)), 1024)));
  return fam;
}

void check_witness_tuples(const std::vector<ConvexBody>& fam,
                          const SelectionWitness& w) {
  REQUIRE(w.ellipsoid.has_value());
  for (const auto& t : w.hit_tuples) {
    std::vector<ConvexBody> tup;
    for (int i : t) tup.push_back(fam[i]);
    CHECK(tuple_hull_contains_ellipsoid(tup, *w.ellipsoid));
  }
}

}  // namespace

TEST_CASE("selection_quadratic: identical unit squares give fraction 1") {
  auto fam = identical_squares(8);
  auto w = selection_quadratic(fam);
  CHECK(w.tuple_size == 6);  // d(d+3)/2 + 1
  CHECK(w.fraction == Rat(1));
  // witness has the John-disk volume, at least d^-d (1 - 1e-4)
  CHECK(pi_lower() * w.ellipsoid->det_shape() >= frac(1, 4) * frac(9999, 10000));
  check_witness_tuples(fam, w);
}

TEST_CASE("selection_quadratic: 8 random unit squares in a 2x2 window") {
  auto fam = random_squares_2x2(8, 99);
  auto w = selection_quadratic(fam);
  CHECK(w.fraction > Rat(0));
  CHECK(pi_lower() * w.ellipsoid->det_shape() >= frac(1, 4) * frac(9999, 10000));
  check_witness_tuples(fam, w);
}

TEST_CASE("selection_quadratic: too few bodies") {
  auto fam = identical_squares(5);  // n = d(d+3)/2 is one short
  CHECK_THROWS_AS(selection_quadratic(fam), Error);
}

TEST_CASE("selection_2d in d=1: overlapping unit intervals") {
  std::vector<ConvexBody> fam;
  for (long k = 0; k < 6; ++k)
    fam.push_back(interval(frac(-k, 10), frac(-k, 10) + 1));
  auto w = selection_2d(fam);
  CHECK(w.tuple_size == 2);
  CHECK(w.fraction > Rat(0));
  // floor (5 d^3)^-d * min volume, with the certified-John slack
  CHECK(Rat(2) * w.ellipsoid->det_shape() >= frac(1, 5) * frac(9999, 10000));
  check_witness_tuples(fam, w);
}

TEST_CASE("selection_2d: identical bodies give fraction 1") {
  auto fam = identical_squares(8);
  auto w = selection_2d(fam);
  CHECK(w.tuple_size == 4);
  CHECK(w.fraction == Rat(1));
  check_witness_tuples(fam, w);
}

TEST_CASE("selection_simplex: identical bodies give fraction 1 on triples") {
  auto fam = identical_squares(8);
  auto w = selection_simplex(fam);
  CHECK(w.tuple_size == 3);
  CHECK(w.fraction == Rat(1));
  check_witness_tuples(fam, w);
}

TEST_CASE("selection_simplex: random congruent squares meet the chain bound") {
  auto fam = random_squares_2x2(8, 7);
  auto w = selection_simplex(fam);
  CHECK(w.fraction > Rat(0));
  Rat chain = variant_volume_floor(SelectionVariant::Simplex, 2);
  CHECK(pi_lower() * w.ellipsoid->det_shape() >= chain * frac(9999, 10000));
  check_witness_tuples(fam, w);
}

TEST_CASE("selection_2d / simplex degrade to steinitz floors on random squares") {
  auto fam = random_squares_2x2(8, 31);
  auto w = selection_2d(fam);
  CHECK(w.fraction > Rat(0));
  Rat floor2d = variant_volume_floor(SelectionVariant::Steinitz2d, 2);
  CHECK(pi_lower() * w.ellipsoid->det_shape() >= floor2d * frac(9999, 10000));
  check_witness_tuples(fam, w);
}

TEST_CASE("weak_epsnet: identical bodies need one piece") {
  auto fam = identical_squares(8);
  auto net = weak_epsnet(fam, frac(1, 2), SelectionVariant::Simplex);
  CHECK(net.complete);
  CHECK(net.pieces.size() == 1);
}

TEST_CASE("weak_epsnet on the slab instance (simplex variant)") {
  auto fam = slab_instance(2, frac(1, 4), 16, 7);
  REQUIRE(fam.size() == 16);
  for (const auto& b : fam) CHECK(b.volume() == Rat(1));
  auto net = weak_epsnet(fam, frac(1, 4), SelectionVariant::Simplex, 7);
  CHECK(net.complete);
  // slab lower bound: at least 1/eps pieces
  CHECK(net.pieces.size() >= 4);
  // the proof's counting bound: C(16,3)/C(4,3) + 1 = 141
  CHECK(net.pieces.size() <= 141);
  // exhaustive piercing verification over all 4-subfamilies
  int n = 16;
  std::vector<int> comb = {0, 1, 2, 3};
  bool all_pierced = true;
  for_each_subset(n, 4, [&](const std::vector<int>& c) {
    if (!subfamily_pierced(fam, c, net.pieces)) all_pierced = false;
  });
  CHECK(all_pierced);
  // every piece satisfies the variant floor
  for (const auto& p : net.pieces)
    CHECK(pi_lower() * p.det_shape() >= net.volume_floor);
}

TEST_CASE("weak_epsnet: clustered intervals in d=1") {
  Rng rng(3, "clusters");
  std::vector<ConvexBody> fam;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 4; ++i) {
      Rat off = frac(static_cast<long>(rng.next_below(256)), 1024);
      fam.push_back(interval(Rat(10 * c) + off, Rat(10 * c) + off + 1));
    }
  auto net = weak_epsnet(fam, frac(1, 3), SelectionVariant::Steinitz2d, 5);
  CHECK(net.complete);
  CHECK(net.pieces.size() <= 3);
  bool all_pierced = true;
  for_each_subset(12, 4, [&](const std::vector<int>& c) {
    if (!subfamily_pierced(fam, c, net.pieces)) all_pierced = false;
  });
  CHECK(all_pierced);
}

TEST_CASE("weak_epsnet monotonicity on slabs: smaller eps never shrinks the net") {
  auto fam8 = slab_instance(2, frac(1, 2), 8, 3);
  auto net_half = weak_epsnet(fam8, frac(1, 2), SelectionVariant::Simplex, 3);
  auto net_quarter = weak_epsnet(fam8, frac(1, 4), SelectionVariant::Simplex, 3);
  CHECK(net_quarter.pieces.size() >= net_half.pieces.size());
}

TEST_CASE("slab_instance validation") {
  CHECK_THROWS_AS(slab_instance(2, frac(1, 4), 15), Error);
  CHECK_THROWS_AS(slab_instance(2, frac(2, 7), 14), Error);
  auto one = slab_instance(2, Rat(1), 4, 1);
  CHECK(one.size() == 4);
}

TEST_CASE("slab groups are strictly separated") {
  auto fam = slab_instance(2, frac(1, 4), 16, 11);
  for (int g = 0; g < 4; ++g)
    for (int j = 0; j < 4; ++j) {
      const auto& b = fam[g * 4 + j];
      for (const auto& v : b.vertices()) {
        CHECK(v.x[1] > Rat(2 * g));
        CHECK(v.x[1] < Rat(2 * g + 2));
      }
    }
}
