#pragma once

#include <vector>

#include "quantsel/ellipsoid.hpp"
#include "quantsel/geometry.hpp"
#include "quantsel/rng.hpp"

namespace qtest {

using namespace quantsel;

inline ConvexBody body_from(std::vector<std::vector<long>> pts) {
  std::vector<Point> v;
  for (auto& p : pts) {
    VecQ q;
    for (long c : p) q.push_back(Rat(c));
    v.emplace_back(std::move(q));
  }
  return ConvexBody(std::move(v));
}

inline ConvexBody unit_square(const Rat& x, const Rat& y) {
  std::vector<Point> v = {Point({x, y}), Point({x + 1, y}),
                          Point({x + 1, y + 1}), Point({x, y + 1})};
  return ConvexBody(std::move(v));
}

inline ConvexBody interval(const Rat& lo, const Rat& hi) {
  std::vector<Point> v = {Point({lo}), Point({hi})};
  return ConvexBody(std::move(v));
}

inline Ellipsoid disk(const Rat& r, const Rat& cx, const Rat& cy) {
  Ellipsoid e;
  e.shape = MatQ(2, 2);
  e.shape.at(0, 0) = r;
  e.shape.at(1, 1) = r;
  e.center = {cx, cy};
  return e;
}

inline Ellipsoid segment_e(const Rat& half, const Rat& c) {
  Ellipsoid e;
  e.shape = MatQ(1, 1);
  e.shape.at(0, 0) = half;
  e.center = {c};
  return e;
}

// exact-unit-length segment in d=2 from the rational circle parametrization
inline Segment unit_segment(const Rat& t, const VecQ& base) {
  VecQ u = rational_circle_point(t);
  return Segment(Point(base), Point(add(base, u)));
}

inline VecQ rand_pt2(Rng& rng, long denom = 64, long span = 640) {
  return {frac(static_cast<long>(rng.next_below(span)) - span / 2, denom),
          frac(static_cast<long>(rng.next_below(span)) - span / 2, denom)};
}

}  // namespace qtest
