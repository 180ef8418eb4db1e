#include "quantsel/segments.hpp"

#include <cmath>

#include "quantsel/error.hpp"
#include "quantsel/lp.hpp"

namespace quantsel {

namespace {

// mu({ v : |<v,x>| <= delta }) on S^{d-1}: the complement of the two caps
double band_measure(int d, double delta) {
  if (d == 2) return 2.0 / 3.141592653589793 * std::asin(delta);
  if (d == 3) return delta;
  // c_d int_0^delta (1-t^2)^{(d-3)/2} dt, normalized; substitute t = sin(u)
  auto integrand = [&](double u) { return std::pow(std::cos(u), d - 2); };
  auto simpson = [&](double a, double b) {
    const int steps = 2048;
    double h = (b - a) / steps, s = integrand(a) + integrand(b);
    for (int i = 1; i < steps; ++i)
      s += integrand(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  double full = simpson(0.0, 3.141592653589793 / 2);
  return simpson(0.0, std::asin(delta)) / full;
}

}  // namespace

double cap_threshold(int d) {
  if (d < 1) fail(ErrorCode::InvalidInput, "dimension must be >= 1");
  // S^0 is two atoms: the measure equation has no solution in (0,1);
  // fixed convention delta_1 = 1 - 1/5
  if (d == 1) return 0.8;
  if (d == 2) return std::cos(9.0 * 3.141592653589793 / 20.0);
  if (d == 3) return 1.0 / 15.0;
  // solve band_measure(d, delta) = 1/(5d)
  double target = 1.0 / (5.0 * d);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (band_measure(d, mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Rat cap_threshold_rational(int d) {
  if (d == 1) return Rat(4, 5);
  if (d == 3) return Rat(1, 15);
  double delta = cap_threshold(d);
  // in [delta*(1-1e-6), delta]: certificates quote this exact rational
  Rat r = rationalize(delta * (1.0 - 5e-7), 1000000000UL);
  double rd = rat_to_double(r);
  if (!(rd >= delta * (1.0 - 1e-6) && rd <= delta))
    fail(ErrorCode::OptimizerFailed, "threshold rationalization out of band");
  return r;
}

Rat cap_threshold_upper(int d) {
  if (d == 1) return Rat(4, 5);
  if (d == 3) return Rat(1, 15);
  double delta = cap_threshold(d);
  Rat r = rationalize(delta * (1.0 + 1e-11) + 1e-15, 100000000000UL);
  if (rat_to_double(r) < delta)
    fail(ErrorCode::OptimizerFailed, "upper threshold below delta");
  return r;
}

namespace {

VecQ rational_unit_direction(int d, Rng& rng) {
  if (d == 1) return {Rat(rng.next_below(2) == 0 ? 1 : -1)};
  if (d == 2) {
    double theta = rng.next_double() * 2.0 * 3.141592653589793 - 3.141592653589793;
    Rat t = rationalize(std::tan(theta / 2.0), 1000000UL);
    return rational_circle_point(t);
  }
  if (d == 3) {
    double x = rng.next_gaussian(), y = rng.next_gaussian(), z = rng.next_gaussian();
    double nn = std::sqrt(x * x + y * y + z * z);
    if (nn < 1e-12 || z / nn < -0.999) return {Rat(0), Rat(0), Rat(-1)};
    Rat u = rationalize(x / (nn + z), 1000000UL);
    Rat v = rationalize(y / (nn + z), 1000000UL);
    return rational_sphere_point(u, v);
  }
  fail(ErrorCode::Unsupported, "directions for d > 3");
}

}  // namespace

CapWitness common_direction(const std::vector<std::vector<Segment>>& families,
                            uint64_t seed, std::optional<Rat> delta_override) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  int d = families[0][0].dim();
  if (static_cast<int>(families.size()) > 2 * d)
    fail(ErrorCode::InvalidInput, "at most 2d families");
  Rat delta = delta_override ? *delta_override : cap_threshold_rational(d);
  Rat delta_sq = delta * delta;

  Rng rng(seed, "capdir");
  const int kSampleCap = 100000;
  for (int it = 0; it < kSampleCap; ++it) {
    VecQ v = rational_unit_direction(d, rng);
    // exact normalized cap test: <v, y-x>^2 >= delta^2 |y-x|^2
    std::vector<long> counts;
    bool ok = true;
    for (const auto& fam : families) {
      long c = 0;
      for (const auto& s : fam) {
        VecQ diff = s.delta();
        Rat dp = dot(v, diff);
        if (dp * dp >= delta_sq * norm_sq(diff)) ++c;
      }
      counts.push_back(c);
      long need = (static_cast<long>(fam.size()) + 1) / 2;
      if (c < need) { ok = false; break; }
    }
    if (ok) return {v, delta, counts};
  }
  fail(ErrorCode::SearchExhausted, "no direction covered by half of every family");
}

SegmentTverbergResult colorful_tverberg_segments(
    const std::vector<std::vector<Segment>>& families, int r, uint64_t seed,
    std::optional<Rat> delta_override) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  int d = families[0][0].dim();
  for (const auto& f : families) {
    if (f.empty()) fail(ErrorCode::NotFound, "empty segment family");
    for (const auto& s : f)
      if (s.length_sq() != 1)
        fail(ErrorCode::InvalidInput, "segments must have exact unit length");
  }
  CapWitness cap = common_direction(families, seed, delta_override);
  const Rat& delta = cap.delta;

  // filter to the covered segments, orient along v, truncate about the
  // midpoint to v-width exactly delta, lift [x,y] -> (x,y)
  std::vector<std::vector<VecQ>> classes(families.size());
  std::vector<std::vector<int>> original(families.size());
  for (size_t i = 0; i < families.size(); ++i) {
    for (size_t j = 0; j < families[i].size(); ++j) {
      Segment s = families[i][j];
      Rat w = dot(cap.direction, s.delta());
      Rat aw = abs(w);
      if (aw < delta) continue;  // unit length: |<v,diff>| >= delta
      if (sgn(w) < 0) std::swap(s.a, s.b);
      Rat f = delta / aw;
      VecQ mid = s.midpoint();
      VecQ half = scale(s.delta(), f / 2);
      VecQ x = sub(mid, half), y = add(mid, half);
      VecQ lifted = x;
      lifted.insert(lifted.end(), y.begin(), y.end());
      classes[i].push_back(std::move(lifted));
      original[i].push_back(static_cast<int>(j));
    }
  }
  ColorfulPointResult pr = colorful_tverberg_points(classes, r, seed);

  SegmentTverbergResult out;
  out.transversals = pr.transversals;
  out.original_indices = original;
  out.cap = cap;
  VecQ xbar(pr.common.begin(), pr.common.begin() + d);
  VecQ ybar(pr.common.begin() + d, pr.common.end());
  out.witness = Segment(Point(xbar), Point(ybar));

  // certificates, all exact: the witness endpoints lie in the hull of every
  // transversal's original endpoints, and the v-width equals delta
  Rat vw = dot(cap.direction, out.witness.delta());
  if (vw != delta)
    fail(ErrorCode::OptimizerFailed, "witness v-width drifted (internal)");
  for (const auto& tr : out.transversals.transversals) {
    std::vector<VecQ> endpoints;
    for (size_t i = 0; i < tr.size(); ++i) {
      const Segment& s = families[i][original[i][tr[i]]];
      endpoints.push_back(s.a.x);
      endpoints.push_back(s.b.x);
    }
    if (!point_in_hull(endpoints, out.witness.a.x) ||
        !point_in_hull(endpoints, out.witness.b.x))
      fail(ErrorCode::OptimizerFailed, "witness outside a transversal hull (internal)");
  }
  return out;
}

}  // namespace quantsel
