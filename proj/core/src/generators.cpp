#include "quantsel/ellipsoid.hpp"
#include "quantsel/epsnet.hpp"
#include "quantsel/error.hpp"
#include "quantsel/instance.hpp"
#include "quantsel/rng.hpp"

namespace quantsel {

namespace {

ConvexBody unit_box(const VecQ& base) {
  int d = static_cast<int>(base.size());
  std::vector<Point> corners;
  for (int mask = 0; mask < (1 << d); ++mask) {
    VecQ v = base;
    for (int c = 0; c < d; ++c)
      if (mask & (1 << c)) v[c] += 1;
    corners.emplace_back(std::move(v));
  }
  return ConvexBody(std::move(corners));
}

Instance gen_random_squares(const GenParams& p, uint64_t seed) {
  if (p.d != 2) fail(ErrorCode::InvalidInput, "randomSquares is a d=2 generator");
  Rng rng(seed, "randomSquares");
  Instance inst;
  inst.dimension = 2;
  inst.kind = InstanceKind::Bodies;
  inst.seed = seed;
  std::vector<ConvexBody> fam;
  for (int i = 0; i < p.n; ++i) {
    // congruent unit squares, lower-left corner in [0,1]^2 (a 2x2 window)
    VecQ base = {frac(static_cast<long>(rng.next_below(1025)), 1024),
                 frac(static_cast<long>(rng.next_below(1025)), 1024)};
    fam.push_back(unit_box(base));
  }
  inst.families.push_back(std::move(fam));
  return inst;
}

Instance gen_identical(const GenParams& p, uint64_t seed) {
  Instance inst;
  inst.dimension = p.d;
  inst.kind = InstanceKind::Bodies;
  inst.seed = seed;
  std::vector<ConvexBody> fam;
  for (int i = 0; i < p.n; ++i) fam.push_back(unit_box(VecQ(p.d, Rat(0))));
  inst.families.push_back(std::move(fam));
  return inst;
}

Instance gen_slabs(const GenParams& p, uint64_t seed) {
  Instance inst;
  inst.dimension = p.d;
  inst.kind = InstanceKind::Bodies;
  inst.seed = seed;
  inst.families.push_back(slab_instance(p.d, p.eps, p.n, seed));
  return inst;
}

Instance gen_clustered_intervals(const GenParams& p, uint64_t seed) {
  Rng rng(seed, "clusteredIntervals");
  Instance inst;
  inst.dimension = 1;
  inst.kind = InstanceKind::Bodies;
  inst.seed = seed;
  if (p.clusters < 1 || p.n % p.clusters != 0)
    fail(ErrorCode::InvalidInput, "n must be divisible by clusters");
  std::vector<ConvexBody> fam;
  int per = p.n / p.clusters;
  for (int c = 0; c < p.clusters; ++c)
    for (int i = 0; i < per; ++i) {
      Rat off = frac(static_cast<long>(rng.next_below(256)), 1024);
      Rat lo = Rat(10 * c) + off;
      std::vector<Point> pts = {Point({lo}), Point({lo + 1})};
      fam.emplace_back(std::move(pts));
    }
  inst.families.push_back(std::move(fam));
  return inst;
}

Instance gen_unit_segments(const GenParams& p, uint64_t seed) {
  if (p.d != 2) fail(ErrorCode::InvalidInput, "unitSegments is a d=2 generator");
  Rng rng(seed, "unitSegments");
  Instance inst;
  inst.dimension = 2;
  inst.kind = InstanceKind::Segments;
  inst.seed = seed;
  for (int f = 0; f < p.families; ++f) {
    std::vector<ConvexBody> fam;
    for (int s = 0; s < p.per; ++s) {
      // exact length 1 via the rational circle parametrization
      long half = p.spread_mille;
      Rat t = frac(static_cast<long>(rng.next_below(2 * half + 1)) - half, 1000);
      VecQ u = rational_circle_point(t);
      VecQ base = {frac(static_cast<long>(rng.next_below(2049)), 1024),
                   frac(static_cast<long>(rng.next_below(2049)), 1024)};
      std::vector<Point> pts = {Point(base), Point(add(base, u))};
      fam.emplace_back(std::move(pts));
    }
    inst.families.push_back(std::move(fam));
  }
  return inst;
}

Instance gen_color_squares(const GenParams& p, uint64_t seed) {
  // families of congruent unit squares in a shared window (colorful inputs)
  if (p.d != 2) fail(ErrorCode::InvalidInput, "colorSquares is a d=2 generator");
  Rng rng(seed, "colorSquares");
  Instance inst;
  inst.dimension = 2;
  inst.kind = InstanceKind::ColorFamilies;
  inst.seed = seed;
  for (int f = 0; f < p.families; ++f) {
    std::vector<ConvexBody> fam;
    for (int i = 0; i < p.per; ++i) {
      VecQ base = {frac(static_cast<long>(rng.next_below(513)), 1024),
                   frac(static_cast<long>(rng.next_below(513)), 1024)};
      fam.push_back(unit_box(base));
    }
    inst.families.push_back(std::move(fam));
  }
  return inst;
}

}  // namespace

Instance generate(const std::string& kind, const GenParams& p, uint64_t seed) {
  Instance inst;
  if (kind == "randomSquares") inst = gen_random_squares(p, seed);
  else if (kind == "identicalBodies") inst = gen_identical(p, seed);
  else if (kind == "slabs") inst = gen_slabs(p, seed);
  else if (kind == "clusteredIntervals") inst = gen_clustered_intervals(p, seed);
  else if (kind == "unitSegments") inst = gen_unit_segments(p, seed);
  else if (kind == "colorSquares") inst = gen_color_squares(p, seed);
  else fail(ErrorCode::InvalidInput, "unknown generator kind: " + kind);
  inst.metadata["generator"] = kind;
  return inst;
}

}  // namespace quantsel
