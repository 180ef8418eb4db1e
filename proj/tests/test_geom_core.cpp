#include <algorithm>
#include <set>

#include "doctest.h"
#include "quantsel/arrangement.hpp"
#include "quantsel/containment.hpp"
#include "quantsel/ellipsoid.hpp"
#include "quantsel/error.hpp"
#include "quantsel/geometry.hpp"
#include "quantsel/john.hpp"
#include "quantsel/lp.hpp"
#include "quantsel/predicates.hpp"
#include "quantsel/rng.hpp"

using namespace quantsel;

namespace {

ConvexBody make_body(std::vector<std::vector<long>> pts) {
  std::vector<Point> v;
  for (auto& p : pts) {
    VecQ q;
    for (long c : p) q.push_back(Rat(c));
    v.emplace_back(std::move(q));
  }
  return ConvexBody(std::move(v));
}

ConvexBody unit_square_at(const Rat& x, const Rat& y) {
  std::vector<Point> v = {Point({x, y}), Point({x + 1, y}), Point({x + 1, y + 1}),
                          Point({x, y + 1})};
  return ConvexBody(std::move(v));
}

}  // namespace

TEST_CASE("orientation signs") {
  CHECK(orientation({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == 1);
  CHECK(orientation({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(2), Rat(2)}}) == 0);
  CHECK(orientation({{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}}) == -1);
}

TEST_CASE("orientation is antisymmetric and translation invariant") {
  Rng rng(11, "orient");
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<VecQ> pts;
    for (int i = 0; i < 3; ++i)
      pts.push_back({Rat(static_cast<long>(rng.next_below(41)) - 20),
                     Rat(static_cast<long>(rng.next_below(41)) - 20)});
    int s = orientation(pts);
    std::swap(pts[0], pts[1]);
    CHECK(orientation(pts) == -s);
    std::swap(pts[0], pts[1]);
    VecQ shift = {Rat(7), Rat(-3)};
    std::vector<VecQ> moved;
    for (auto& p : pts) moved.push_back(add(p, shift));
    CHECK(orientation(moved) == s);
  }
}

TEST_CASE("convex hull of the unit square") {
  auto sq = unit_square_at(Rat(0), Rat(0));
  const HullData& h = sq.hull();
  CHECK(h.hrep.halfspaces.size() == 4);
  CHECK(h.extreme.size() == 4);
  for (const auto& v : sq.coords()) CHECK(h.hrep.contains(v));
}

TEST_CASE("interior point is not extreme") {
  auto b = make_body({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
  CHECK(b.hull().extreme.size() == 4);
}

TEST_CASE("collinear points give DegenerateHull") {
  auto b = make_body({{0, 0}, {1, 1}, {2, 2}});
  CHECK_THROWS_AS((void)b.hull(), Error);
  try {
    (void)b.hull();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateHull);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("volumes: square, simplex, collinear") {
  CHECK(make_body({{0, 0}, {1, 0}, {1, 1}, {0, 1}}).volume() == Rat(1));
  CHECK(make_body({{0, 0}, {1, 0}, {0, 1}}).volume() == Rat(1, 2));
  CHECK(make_body({{0, 0}, {1, 1}, {2, 2}}).volume() == Rat(0));
}

TEST_CASE("volume in 3d: unit cube and simplex") {
  auto cube = make_body({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                         {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  CHECK(cube.volume() == Rat(1));
  auto simplex = make_body({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(simplex.volume() == Rat(1, 6));
  CHECK(cube.hull().hrep.halfspaces.size() == 6);
  CHECK(cube.hull().extreme.size() == 8);
}

TEST_CASE("volume is unchanged by adding an interior point") {
  Rng rng(3, "volpt");
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<long>> pts;
    for (int i = 0; i < 6; ++i)
      pts.push_back({static_cast<long>(rng.next_below(20)),
                     static_cast<long>(rng.next_below(20))});
    auto b = make_body(pts);
    if (b.affine_dimension() < 2) continue;
    Rat vol = b.volume();
    VecQ centroid = vertex_centroid(b.coords());
    auto verts = b.vertices();
    verts.emplace_back(centroid);
    CHECK(ConvexBody(verts).volume() == vol);
  }
}

TEST_CASE("intersect_bodies: offset squares, disjoint, self") {
  auto a = unit_square_at(Rat(0), Rat(0));
  auto b = unit_square_at(Rat(1, 2), Rat(0));
  auto inter = intersect_bodies({a, b});
  REQUIRE(inter.has_value());
  CHECK(inter->volume() == Rat(1, 2));

  auto far = unit_square_at(Rat(5), Rat(5));
  CHECK(!intersect_bodies({a, far}).has_value());

  auto self = intersect_bodies({a, a});
  REQUIRE(self.has_value());
  CHECK(self->volume() == Rat(1));
  CHECK(self->hull().extreme.size() == 4);
}

TEST_CASE("touching squares intersect with measure zero") {
  auto a = unit_square_at(Rat(0), Rat(0));
  auto b = unit_square_at(Rat(1), Rat(0));
  CHECK(!intersect_bodies({a, b}).has_value());
}

TEST_CASE("point_in_hull LP") {
  std::vector<VecQ> sq = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)},
                          {Rat(0), Rat(1)}};
  CHECK(point_in_hull(sq, {Rat(1, 2), Rat(1, 2)}));
  CHECK(point_in_hull(sq, {Rat(0), Rat(0)}));
  CHECK(!point_in_hull(sq, {Rat(2), Rat(0)}));
}

TEST_CASE("strict separator exists iff hulls are disjoint") {
  std::vector<VecQ> u = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};
  std::vector<VecQ> v = {{Rat(3), Rat(0)}, {Rat(4), Rat(1)}};
  auto sep = strict_separator(u, v);
  REQUIRE(sep.has_value());
  for (const auto& p : u) CHECK(dot(sep->first, p) < sep->second);
  for (const auto& p : v) CHECK(dot(sep->first, p) > sep->second);

  std::vector<VecQ> w = {{Rat(1, 2), Rat(0)}, {Rat(5), Rat(5)}};
  CHECK(!strict_separator(u, w).has_value());
}

TEST_CASE("arrangement: axis lines over square give 4 cells") {
  auto box = make_body({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  std::vector<Hyperplane> planes = {{{Rat(1), Rat(0)}, Rat(0)},
                                    {{Rat(0), Rat(1)}, Rat(0)}};
  auto cells = arrangement_cells(planes, box);
  CHECK(cells.size() == 4);
  Rat total(0);
  for (const auto& c : cells) {
    total += c.body.volume();
    for (const auto& h : planes) CHECK(sgn(h.eval(c.sample)) != 0);
  }
  CHECK(total == Rat(4));
}

TEST_CASE("arrangement: single line gives 2 cells") {
  auto box = make_body({{0, 0}, {4, 0}, {4, 2}, {0, 2}});
  std::vector<Hyperplane> planes = {{{Rat(1), Rat(0)}, Rat(1)}};
  CHECK(arrangement_cells(planes, box).size() == 2);
}

TEST_CASE("arrangement: 3 generic lines give 7 cells, sign-vector oracle") {
  auto box = make_body({{-10, -10}, {10, -10}, {10, 10}, {-10, 10}});
  std::vector<Hyperplane> planes = {{{Rat(1), Rat(0)}, Rat(0)},
                                    {{Rat(0), Rat(1)}, Rat(0)},
                                    {{Rat(1), Rat(1)}, Rat(3)}};
  auto cells = arrangement_cells(planes, box);

  // oracle: count realizable sign vectors by dense rational grid
  std::set<std::vector<int>> signs;
  for (long x = -39; x <= 39; x += 2)
    for (long y = -39; y <= 39; y += 2) {
      VecQ p = {frac(x, 4), frac(y, 4)};
      std::vector<int> sv;
      for (const auto& h : planes) sv.push_back(sgn(h.eval(p)));
      if (std::find(sv.begin(), sv.end(), 0) == sv.end()) signs.insert(sv);
    }
  CHECK(cells.size() == signs.size());
  CHECK(cells.size() == 7);
}

TEST_CASE("generic line counts match 1 + m + C(m,2)") {
  auto box = make_body({{-100, -100}, {100, -100}, {100, 100}, {-100, 100}});
  std::vector<Hyperplane> planes;
  // slopes all distinct, generic offsets
  long data[][3] = {{1, 2, 1}, {2, -1, 3}, {3, 1, -2}, {-1, 5, 7}, {5, 3, 2}, {7, -2, 5}};
  for (int m = 1; m <= 6; ++m) {
    planes.push_back({{Rat(data[m - 1][0]), Rat(data[m - 1][1])}, Rat(data[m - 1][2])});
    auto cells = arrangement_cells(planes, box);
    CHECK(static_cast<long>(cells.size()) == 1 + m + m * (m - 1) / 2);
  }
}

TEST_CASE("order_type_of: triangle, square, collinear triple") {
  auto ot = order_type_of({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  CHECK(ot.signs.size() == 1);
  CHECK(ot.signs.begin()->second == 1);

  auto sq = order_type_of({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(1), Rat(1)},
                           {Rat(0), Rat(1)}});
  CHECK(sq.signs.size() == 4);
  for (auto& [k, s] : sq.signs) CHECK(s != 0);

  auto degen = order_type_of({{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(2), Rat(0)},
                              {Rat(0), Rat(1)}});
  CHECK(degen.signs.at({0, 1, 2}) == 0);
}

TEST_CASE("family_order_type: separated triangles vs overlapping") {
  auto tiny = [](long cx, long cy) {
    return make_body({{10 * cx, 10 * cy}, {10 * cx + 1, 10 * cy},
                      {10 * cx, 10 * cy + 1}});
  };
  std::vector<ConvexBody> fam = {tiny(0, 0), tiny(5, 0), tiny(0, 5)};
  auto r = family_order_type(fam);
  REQUIRE(std::holds_alternative<OrderType>(r));
  for (auto& [k, s] : std::get<OrderType>(r).signs) CHECK(s != 0);

  std::vector<ConvexBody> bad = {unit_square_at(Rat(0), Rat(0)),
                                 unit_square_at(Rat(1, 2), Rat(0)),
                                 unit_square_at(Rat(0), Rat(5))};
  auto r2 = family_order_type(bad);
  CHECK(std::holds_alternative<MixedWitness>(r2));
}

TEST_CASE("family_order_type of single points equals order_type_of") {
  std::vector<VecQ> pts = {{Rat(0), Rat(0)}, {Rat(4), Rat(1)}, {Rat(1), Rat(5)}};
  std::vector<ConvexBody> fam;
  for (auto& p : pts) fam.push_back(ConvexBody({Point(p)}));
  auto r = family_order_type(fam);
  REQUIRE(std::holds_alternative<OrderType>(r));
  CHECK(std::get<OrderType>(r) == order_type_of(pts));
}

TEST_CASE("contains_ellipsoid: unit disk vs boxes") {
  Ellipsoid disk;
  disk.shape = MatQ::identity(2);
  disk.center = {Rat(0), Rat(0)};
  auto big = make_body({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}});
  auto small = make_body({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  CHECK(contains_ellipsoid(big.hull().hrep, disk));
  CHECK(contains_ellipsoid(small.hull().hrep, disk));  // tangent counts
  std::vector<Point> half = {Point({Rat(-1, 2), Rat(-1, 2)}), Point({Rat(1, 2), Rat(-1, 2)}),
                             Point({Rat(1, 2), Rat(1, 2)}), Point({Rat(-1, 2), Rat(1, 2)})};
  CHECK(!contains_ellipsoid(ConvexBody(half).hull().hrep, disk));

  // center (3/2,0): rightmost point reaches x = 5/2 > 2, so not contained;
  // tangency at exactly x = 2 (center (1,0)) still counts as inside
  Ellipsoid shifted = disk;
  shifted.center = {Rat(3, 2), Rat(0)};
  CHECK(!contains_ellipsoid(big.hull().hrep, shifted));
  shifted.center = {Rat(1), Rat(0)};
  CHECK(contains_ellipsoid(big.hull().hrep, shifted));
}

TEST_CASE("contains_ellipsoid agrees with dense boundary sampling") {
  Rng rng(17, "densebnd");
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    // random ellipse: diag(a,b) rotated by rational rotation, random center
    Rat t = frac(static_cast<long>(rng.next_below(2001)) - 1000, 1000);
    VecQ u = rational_circle_point(t);  // exact unit vector
    Rat a = frac(static_cast<long>(rng.next_below(150)) + 50, 100);
    Rat b = frac(static_cast<long>(rng.next_below(150)) + 50, 100);
    // shape = a u u^T + b w w^T with w = rot90(u): symmetric PD
    MatQ shape(2, 2);
    VecQ w = {-u[1], u[0]};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        shape.at(i, j) = a * u[i] * u[j] + b * w[i] * w[j];
    Ellipsoid e;
    e.shape = shape;
    e.center = {frac(static_cast<long>(rng.next_below(9)) - 4, 2),
                frac(static_cast<long>(rng.next_below(9)) - 4, 2)};

    auto box = make_body({{-4, -4}, {4, -4}, {4, 4}, {-4, 4}});
    bool exact = contains_ellipsoid(box.hull().hrep, e);

    // oracle: sample boundary points exactly on the ellipse
    bool sampled_inside = true;
    for (int k = 0; k < 200 && sampled_inside; ++k) {
      Rat tk = frac(static_cast<long>(rng.next_below(4001)) - 2000, 400);
      VecQ dir = rational_circle_point(tk);
      VecQ bd = add(mat_vec(e.shape, dir), e.center);
      if (!box.hull().hrep.contains(bd)) sampled_inside = false;
    }
    if (exact) CHECK(sampled_inside);
    if (!sampled_inside) CHECK(!exact);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("john ellipsoid of the square is the unit disk") {
  auto sq = make_body({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  Ellipsoid e = john_ellipsoid(sq);
  CHECK(contains_ellipsoid(sq.hull().hrep, e));
  // optimal is the unit disk, area pi; certified result must be very close
  double vol = e.volume();
  CHECK(vol > 3.141592653589793 * 0.999);
  CHECK(vol < 3.141592653589793 * 1.001);
}

TEST_CASE("john ellipsoid of the simplex reaches the Steiner inellipse") {
  auto tri = make_body({{0, 0}, {1, 0}, {0, 1}});
  Ellipsoid e = john_ellipsoid(tri);
  CHECK(contains_ellipsoid(tri.hull().hrep, e));
  double expect = 3.141592653589793 / (3.0 * std::sqrt(3.0)) * 0.5;
  CHECK(e.volume() > expect * 0.998);
  CHECK(e.volume() < expect * 1.002);
  CHECK(john_volume_bound_holds(e, tri.volume()));
}

TEST_CASE("john ellipsoid of a 64-gon covers 0.99 pi") {
  std::vector<Point> pts;
  for (int i = 0; i < 64; ++i) {
    double th = -3.141592653589793 + 2 * 3.141592653589793 * (i + 0.5) / 64;
    Rat t = rationalize(std::tan(th / 2), 100000UL);
    pts.emplace_back(rational_circle_point(t));
  }
  ConvexBody gon(std::move(pts));
  Ellipsoid e = john_ellipsoid(gon);
  CHECK(contains_ellipsoid(gon.hull().hrep, e));
  CHECK(e.volume() > 0.99 * 3.141592653589793);
}

TEST_CASE("john in d=1 is the interval itself") {
  auto seg = make_body({{0}, {2}});
  Ellipsoid e = john_ellipsoid(seg);
  CHECK(e.shape.at(0, 0) == Rat(1));
  CHECK(e.center[0] == Rat(1));
}

TEST_CASE("trim_to_volume produces the exact target inside the body") {
  auto sq = unit_square_at(Rat(0), Rat(0));
  for (Rat target : {Rat(1, 3), Rat(1, 2), Rat(7, 8), Rat(1)}) {
    ConvexBody t = trim_to_volume(sq, target);
    CHECK(t.volume() == target);
    CHECK(body_contains_body(sq, t));
  }
}
