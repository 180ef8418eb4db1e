#include <algorithm>
#include <cmath>

#include "quantsel/error.hpp"
#include "quantsel/sametype.hpp"

namespace quantsel {

namespace {

Rat cross2(const VecQ& o, const VecQ& a, const VecQ& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// exact area of a CCW convex polygon clipped to <n,x> <= t
Rat clipped_area(const std::vector<VecQ>& poly, const VecQ& n, const Rat& t) {
  int m = static_cast<int>(poly.size());
  std::vector<VecQ> out;
  for (int i = 0; i < m; ++i) {
    const VecQ& p = poly[i];
    const VecQ& q = poly[(i + 1) % m];
    Rat sp = dot(n, p) - t, sq = dot(n, q) - t;
    int ssp = sgn(sp), ssq = sgn(sq);
    if (ssp <= 0) out.push_back(p);
    if ((ssp < 0 && ssq > 0) || (ssp > 0 && ssq < 0)) {
      Rat w = sp / (sp - sq);
      out.push_back(add(p, scale(sub(q, p), w)));
    }
  }
  if (out.size() < 3) return Rat(0);
  Rat area(0);
  for (size_t i = 1; i + 1 < out.size(); ++i)
    area += cross2(out[0], out[i], out[i + 1]);
  return area / 2;
}

struct PolyMeasure {
  std::vector<std::vector<VecQ>> polys;
  Rat total;

  Rat measure_leq(const VecQ& n, const Rat& t) const {
    Rat s(0);
    for (const auto& p : polys) s += clipped_area(p, n, t);
    return s;
  }
};

PolyMeasure prepare(const MeasureFamily& mu) {
  PolyMeasure pm;
  pm.total = Rat(0);
  for (size_t i = 0; i < mu.bodies.size(); ++i) {
    pm.polys.push_back(polygon_ccw(mu.bodies[i].coords()));
    pm.total += mu.weights[i];
  }
  return pm;
}

std::vector<Rat> breakpoints(const PolyMeasure& pm, const VecQ& n) {
  std::vector<Rat> bs;
  for (const auto& poly : pm.polys)
    for (const auto& v : poly) bs.push_back(dot(n, v));
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  return bs;
}

// halving offsets of pm along direction n: the set {t : F(t) = total/2} is a
// point or an interval; returns exact plateau endpoints, or a bisected point
// root with |F - total/2| <= total * 1e-13
std::pair<Rat, Rat> halving_interval(const PolyMeasure& pm, const VecQ& n) {
  Rat target = pm.total / 2;
  std::vector<Rat> bs = breakpoints(pm, n);
  int lo = 0, hi = static_cast<int>(bs.size()) - 1;
  // invariant: F(bs[lo]) <= target <= F(bs[hi])
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (pm.measure_leq(n, bs[mid]) < target) lo = mid;
    else hi = mid;
  }
  Rat f_lo = pm.measure_leq(n, bs[lo]);
  Rat f_hi = pm.measure_leq(n, bs[hi]);
  if (f_lo == target || f_hi == target) {
    // plateau: stretch to the extreme breakpoints with F == target
    int a = (f_lo == target) ? lo : hi;
    int b = a;
    while (a > 0 && pm.measure_leq(n, bs[a - 1]) == target) --a;
    while (b + 1 < static_cast<int>(bs.size()) &&
           pm.measure_leq(n, bs[b + 1]) == target) ++b;
    return {bs[a], bs[b]};
  }
  // strict root inside (bs[lo], bs[hi]): rational bisection
  Rat a = bs[lo], b = bs[hi];
  Rat tol = pm.total / Rat(Int("10000000000000"));
  for (int it = 0; it < 100; ++it) {
    Rat mid = (a + b) / 2;
    Rat f = pm.measure_leq(n, mid);
    if (f == target) return {mid, mid};
    if (abs(f - target) <= tol) return {mid, mid};
    if (f < target) a = mid;
    else b = mid;
  }
  return {(a + b) / 2, (a + b) / 2};
}

// balance mu2 within the mu1-halving interval; nullopt when the sign of
// (mu2(<=t) - total2/2) is constant there
struct DirectionProbe {
  int sign;        // sign of the mu2 imbalance across the interval
  Rat t;           // best offset
  Rat imbalance2;  // exact mu2 imbalance at t
};

DirectionProbe probe_direction(const PolyMeasure& m1, const PolyMeasure& m2,
                               const VecQ& n) {
  auto [t_lo, t_hi] = halving_interval(m1, n);
  Rat target2 = m2.total / 2;
  Rat g_lo = m2.measure_leq(n, t_lo) - target2;
  if (t_lo == t_hi) return {sgn(g_lo), t_lo, g_lo};
  Rat g_hi = m2.measure_leq(n, t_hi) - target2;
  if (sgn(g_lo) > 0 || sgn(g_hi) < 0) {
    // monotone g: constant sign over the plateau
    return (abs(g_lo) <= abs(g_hi)) ? DirectionProbe{sgn(g_lo), t_lo, g_lo}
                                    : DirectionProbe{sgn(g_hi), t_hi, g_hi};
  }
  // g_lo <= 0 <= g_hi: balance mu2 inside the plateau
  Rat a = t_lo, b = t_hi;
  Rat tol = m2.total / Rat(Int("10000000000000"));
  for (int it = 0; it < 120; ++it) {
    Rat mid = (a + b) / 2;
    Rat g = m2.measure_leq(n, mid) - target2;
    if (sgn(g) == 0 || abs(g) <= tol) return {0, mid, g};
    if (sgn(g) < 0) a = mid;
    else b = mid;
  }
  Rat g = m2.measure_leq(n, (a + b) / 2) - target2;
  return {sgn(g), (a + b) / 2, g};
}

}  // namespace

MeasureFamily MeasureFamily::of(std::vector<ConvexBody> bodies) {
  MeasureFamily mf;
  for (auto& b : bodies) {
    Rat v = b.volume();
    if (sgn(v) <= 0)
      fail(ErrorCode::InvalidInput, "measure family needs positive volumes");
    mf.weights.push_back(std::move(v));
    mf.bodies.push_back(std::move(b));
  }
  if (mf.bodies.empty()) fail(ErrorCode::InvalidInput, "empty measure family");
  return mf;
}

Rat MeasureFamily::total() const {
  Rat s(0);
  for (const auto& w : weights) s += w;
  return s;
}

Rat halfplane_measure(const MeasureFamily& mu, const Hyperplane& h) {
  if (mu.bodies.empty()) return Rat(0);
  if (mu.bodies[0].dim() == 1) {
    // 1d: total length of body intersected with x*n <= t
    Rat s(0);
    for (const auto& b : mu.bodies) {
      Rat lo = b.coords()[0][0], hi = lo;
      for (const auto& v : b.coords()) {
        lo = std::min(lo, v[0]);
        hi = std::max(hi, v[0]);
      }
      Rat nn = h.normal[0];
      if (sgn(nn) == 0) fail(ErrorCode::InvalidInput, "zero normal");
      Rat cut = h.offset / nn;
      if (sgn(nn) > 0)
        s += std::max(Rat(0), Rat(std::min(hi, cut) - lo));
      else
        s += std::max(Rat(0), Rat(hi - std::max(lo, cut)));
    }
    return s;
  }
  PolyMeasure pm = prepare(mu);
  return pm.measure_leq(h.normal, h.offset);
}

Hyperplane ham_sandwich_2d(const MeasureFamily& mu1, const MeasureFamily& mu2) {
  if (mu1.bodies.empty() || mu2.bodies.empty())
    fail(ErrorCode::InvalidInput, "empty measure family");
  if (mu1.bodies[0].dim() != 2)
    fail(ErrorCode::Unsupported, "certified ham sandwich needs d = 2");
  PolyMeasure m1 = prepare(mu1);
  PolyMeasure m2 = prepare(mu2);
  Rat accept_tol = m2.total / Rat(1000000000L);

  // coarse sweep over rational directions n(s) = (1-s^2, 2s), s in (-1, 1]
  const int K = 16;
  std::vector<Rat> grid;
  for (int k = 0; k < K; ++k) {
    double theta = 3.141592653589793 * k / K;
    if (k == 0) grid.push_back(Rat(0));
    else if (2 * k == K) grid.push_back(Rat(1));
    else grid.push_back(rationalize(std::tan(theta / 2), 1000UL));
  }
  auto dir = [](const Rat& s) { return VecQ{1 - s * s, 2 * s}; };

  std::vector<DirectionProbe> probes;
  for (const Rat& s : grid) {
    DirectionProbe p = probe_direction(m1, m2, dir(s));
    if (p.sign == 0 || abs(p.imbalance2) <= accept_tol)
      return {dir(s), p.t};
    probes.push_back(p);
  }
  // find a sign change (guaranteed: flipping the direction negates the
  // imbalance, and the grid covers a half turn)
  int idx = -1;
  Rat s_a, s_b;
  for (int k = 0; k < K; ++k) {
    int k2 = (k + 1) % K;
    int sign_next = (k2 == 0) ? -probes[0].sign : probes[k2].sign;
    if (probes[k].sign != sign_next) {
      idx = k;
      s_a = grid[k];
      // the wrap-around pair (s=last -> s=0 with flipped orientation) is
      // handled by extending the parameter past 1: n(s) for s>1 keeps
      // rotating; use the identity n(-1/s) = -n(s) to stay in range
      s_b = (k2 == 0) ? Rat(0) : grid[k2];
      break;
    }
  }
  if (idx < 0) fail(ErrorCode::HalvingDegenerate, "no imbalance sign change");

  int sign_a = probes[idx].sign;
  bool wrapped = (idx == K - 1);
  // bisect the direction parameter; the wrapped pair (last grid angle to the
  // reversed first direction) is reached by letting s grow: n(s) tends to
  // the reversed first direction as s -> infinity
  Rat a = s_a, b = s_b;
  auto dir_at = [&](const Rat& s) { return dir(s); };
  if (wrapped) {
    b = s_a * 2;
    bool found = false;
    for (int grow = 0; grow < 60; ++grow) {
      DirectionProbe p = probe_direction(m1, m2, dir_at(b));
      if (p.sign == 0 || abs(p.imbalance2) <= accept_tol) return {dir_at(b), p.t};
      if (p.sign != sign_a) { found = true; break; }
      b = b * 2;
    }
    if (!found) fail(ErrorCode::HalvingDegenerate, "wrap search did not flip");
  }
  for (int it = 0; it < 120; ++it) {
    Rat mid = (a + b) / 2;
    DirectionProbe p = probe_direction(m1, m2, dir_at(mid));
    if (p.sign == 0 || abs(p.imbalance2) <= accept_tol) return {dir_at(mid), p.t};
    if (p.sign == sign_a) a = mid;
    else b = mid;
  }
  fail(ErrorCode::HalvingDegenerate, "direction bisection did not converge");
}

}  // namespace quantsel
