#include "quantsel/tverberg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "quantsel/containment.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/lp.hpp"
#include "quantsel/selection.hpp"

namespace quantsel {

namespace {

constexpr unsigned long long kExhaustiveCap = 1000000ULL;
constexpr int kPivotCap = 10000;

unsigned long long stirling2_capped(int n, int r) {
  // S(n, r) saturated at cap+1
  std::vector<std::vector<unsigned long long>> s(n + 1,
      std::vector<unsigned long long>(r + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, r); ++j) {
      unsigned long long v = s[i - 1][j - 1] + j * s[i - 1][j];
      s[i][j] = std::min(v, kExhaustiveCap + 1);
    }
  return s[n][r];
}

std::vector<std::vector<VecQ>> parts_as_pointsets(const std::vector<VecQ>& pts,
                                                  const std::vector<int>& assign,
                                                  int r) {
  std::vector<std::vector<VecQ>> parts(r);
  for (size_t i = 0; i < assign.size(); ++i) parts[assign[i]].push_back(pts[i]);
  return parts;
}

std::optional<TverbergPointResult> check_assignment(
    const std::vector<VecQ>& pts, const std::vector<int>& assign, int r) {
  auto parts = parts_as_pointsets(pts, assign, r);
  for (const auto& p : parts)
    if (p.empty()) return std::nullopt;
  if (!common_hull_point_likely(parts)) return std::nullopt;
  auto z = common_hull_point(parts);
  if (!z) return std::nullopt;
  TverbergPointResult res;
  res.partition.parts.assign(r, {});
  for (size_t i = 0; i < assign.size(); ++i)
    res.partition.parts[assign[i]].push_back(static_cast<int>(i));
  res.common = *z;
  return res;
}

}  // namespace

std::optional<TverbergPointResult> tverberg_points_exhaustive(
    const std::vector<VecQ>& points, int r) {
  int n = static_cast<int>(points.size());
  if (r == 1) {
    TverbergPointResult res;
    res.partition.parts.push_back({});
    for (int i = 0; i < n; ++i) res.partition.parts[0].push_back(i);
    res.common = points[0];
    return res;
  }
  if (n < r) return std::nullopt;
  // restricted growth strings; accept only strings with exactly r blocks
  std::vector<int> a(n, 0), maxp(n, 0);
  for (;;) {
    maxp[0] = 0;
    for (int k = 1; k < n; ++k) maxp[k] = std::max(maxp[k - 1], a[k]);
    if (maxp[n - 1] == r - 1) {
      auto res = check_assignment(points, a, r);
      if (res) return res;
    }
    int i = n - 1;
    for (; i > 0; --i) {
      if (a[i] <= maxp[i - 1] && a[i] < r - 1) {
        ++a[i];
        for (int k = i + 1; k < n; ++k) a[k] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  return std::nullopt;
}

namespace {

// Sarkaria lifting: a Tverberg r-partition exists iff some transversal of the
// lifted classes b[i][0..r-1] captures the origin in its convex hull.
struct Lifted {
  int n = 0, r = 0, dim = 0;
  std::vector<std::vector<std::vector<double>>> bd;
};

Lifted build_lift(const std::vector<VecQ>& pts, int r) {
  Lifted l;
  l.n = static_cast<int>(pts.size());
  l.r = r;
  int d1 = static_cast<int>(pts[0].size()) + 1;
  l.dim = d1 * (r - 1);
  l.bd.assign(l.n, {});
  for (int i = 0; i < l.n; ++i) {
    std::vector<double> abar;
    for (const auto& c : pts[i]) abar.push_back(rat_to_double(c));
    abar.push_back(1.0);
    for (int j = 0; j < r; ++j) {
      std::vector<double> v(l.dim, 0.0);
      for (int c = 0; c < r - 1; ++c) {
        double vc = (j < r - 1) ? (j == c ? 1.0 : 0.0) : -1.0;
        if (vc == 0.0) continue;
        for (int t = 0; t < d1; ++t) v[c * d1 + t] = abar[t] * vc;
      }
      l.bd[i].push_back(std::move(v));
    }
  }
  return l;
}

double nearest_to_origin(const Lifted& l, const std::vector<int>& assign,
                         std::vector<double>& z) {
  // Frank-Wolfe toward the origin over conv of the selected lifted points
  int dim = l.dim;
  z.assign(dim, 0.0);
  for (int i = 0; i < l.n; ++i)
    for (int t = 0; t < dim; ++t) z[t] += l.bd[i][assign[i]][t] / l.n;
  for (int it = 0; it < 400; ++it) {
    int best = -1;
    double best_dot = 0.0;
    for (int i = 0; i < l.n; ++i) {
      double dp = 0.0;
      for (int t = 0; t < dim; ++t) dp += l.bd[i][assign[i]][t] * z[t];
      if (best < 0 || dp < best_dot) { best = i; best_dot = dp; }
    }
    const auto& p = l.bd[best][assign[best]];
    double num = 0.0, den = 0.0;
    for (int t = 0; t < dim; ++t) {
      double diff = p[t] - z[t];
      num += -z[t] * diff;
      den += diff * diff;
    }
    if (den < 1e-18) break;
    double gamma = std::min(1.0, std::max(0.0, num / den));
    if (gamma <= 0.0) break;
    for (int t = 0; t < dim; ++t) z[t] += gamma * (p[t] - z[t]);
  }
  double n2 = 0.0;
  for (double v : z) n2 += v * v;
  return n2;
}

}  // namespace

std::optional<TverbergPointResult> tverberg_points_heuristic(
    const std::vector<VecQ>& points, int r, uint64_t seed) {
  int n = static_cast<int>(points.size());
  if (r == 1) return tverberg_points_exhaustive(points, 1);
  if (n < r) return std::nullopt;
  Lifted l = build_lift(points, r);
  Rng rng(seed, "sarkaria");
  int pivots = 0;
  double scale = 1.0;
  for (const auto& p : points)
    for (const auto& c : p) scale = std::max(scale, std::fabs(rat_to_double(c)));
  const double accept = 1e-8 * scale * scale;
  const double promising = 1e-3 * scale * scale;

  while (pivots < kPivotCap) {
    std::vector<int> assign(n);
    for (int i = 0; i < n; ++i) assign[i] = static_cast<int>(rng.next_below(r));
    std::set<std::vector<int>> tried;
    for (;;) {
      if (++pivots > kPivotCap) break;
      std::vector<double> z;
      double n2 = nearest_to_origin(l, assign, z);
      if (n2 < promising) {
        // Frank-Wolfe converges slowly near feasibility; the exact LP is
        // the arbiter either way
        auto res = check_assignment(points, assign, r);
        if (res) return res;
        if (n2 < accept) break;  // exact said no: restart
      }
      // pivot: the swap most opposed to the current near-point
      int bi = -1, bj = -1;
      double best = 1e-14;
      for (int i = 0; i < n; ++i) {
        double cur = 0.0;
        for (int t = 0; t < l.dim; ++t) cur += l.bd[i][assign[i]][t] * z[t];
        for (int j = 0; j < r; ++j) {
          if (j == assign[i]) continue;
          double dp = 0.0;
          for (int t = 0; t < l.dim; ++t) dp += l.bd[i][j][t] * z[t];
          if (cur - dp > best) { best = cur - dp; bi = i; bj = j; }
        }
      }
      bool stuck = bi < 0;
      if (!stuck) {
        assign[bi] = bj;
        if (!tried.insert(assign).second) stuck = true;  // cycling
      }
      if (stuck) {
        // descent bottomed out: settle it exactly before restarting
        auto res = check_assignment(points, assign, r);
        if (res) return res;
        break;
      }
    }
  }
  return std::nullopt;
}

TverbergPointResult tverberg_points(const std::vector<VecQ>& points, int r,
                                    uint64_t seed) {
  int n = static_cast<int>(points.size());
  if (r < 1) fail(ErrorCode::InvalidInput, "r must be >= 1");
  if (n == 0) fail(ErrorCode::InvalidInput, "no points");
  std::optional<TverbergPointResult> res;
  if (stirling2_capped(n, r) <= kExhaustiveCap)
    res = tverberg_points_exhaustive(points, r);
  else
    res = tverberg_points_heuristic(points, r, seed);
  if (!res)
    fail(ErrorCode::NotFound,
         "no Tverberg partition into " + std::to_string(r) + " parts found");
  return *res;
}

namespace {

unsigned long long colorful_candidates_capped(
    const std::vector<std::vector<VecQ>>& classes, int r) {
  unsigned long long total = 1;
  for (size_t i = 0; i < classes.size(); ++i) {
    unsigned long long ni = classes[i].size();
    if (ni < static_cast<unsigned long long>(r)) return 0;
    unsigned long long ways = 1;
    for (int t = 0; t < r; ++t) ways *= (ni - t);
    if (i == 0)
      for (int t = 2; t <= r; ++t) ways /= t;  // unordered for class 0
    if (total > kExhaustiveCap / std::max(1ULL, ways)) return kExhaustiveCap + 1;
    total *= ways;
  }
  return total;
}

std::optional<ColorfulPointResult> colorful_check(
    const std::vector<std::vector<VecQ>>& classes,
    const std::vector<std::vector<int>>& pick, int r) {
  int k = static_cast<int>(classes.size());
  std::vector<std::vector<VecQ>> tr(r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < k; ++i) tr[j].push_back(classes[i][pick[i][j]]);
  if (!common_hull_point_likely(tr)) return std::nullopt;
  auto z = common_hull_point(tr);
  if (!z) return std::nullopt;
  ColorfulPointResult res;
  res.transversals.transversals.assign(r, std::vector<int>(k));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < k; ++i) res.transversals.transversals[j][i] = pick[i][j];
  res.common = *z;
  return res;
}

std::optional<ColorfulPointResult> colorful_exhaustive(
    const std::vector<std::vector<VecQ>>& classes, int r) {
  int k = static_cast<int>(classes.size());
  std::vector<std::vector<std::vector<int>>> options(k);
  for (int i = 0; i < k; ++i) {
    int ni = static_cast<int>(classes[i].size());
    std::vector<int> stack;
    std::vector<bool> used(ni, false);
    std::function<void()> rec = [&]() {
      if (static_cast<int>(stack.size()) == r) {
        options[i].push_back(stack);
        return;
      }
      for (int t = 0; t < ni; ++t) {
        if (used[t]) continue;
        if (i == 0 && !stack.empty() && t < stack.back()) continue;
        used[t] = true;
        stack.push_back(t);
        rec();
        stack.pop_back();
        used[t] = false;
      }
    };
    rec();
  }
  std::vector<int> cursor(k, 0);
  std::vector<std::vector<int>> pick(k);
  for (;;) {
    for (int i = 0; i < k; ++i) pick[i] = options[i][cursor[i]];
    auto res = colorful_check(classes, pick, r);
    if (res) return res;
    int i = k - 1;
    while (i >= 0 && cursor[i] + 1 == static_cast<int>(options[i].size())) {
      cursor[i] = 0;
      --i;
    }
    if (i < 0) return std::nullopt;
    ++cursor[i];
  }
}

std::optional<ColorfulPointResult> colorful_heuristic(
    const std::vector<std::vector<VecQ>>& classes, int r, uint64_t seed) {
  Rng rng(seed, "colorful");
  int k = static_cast<int>(classes.size());
  for (int attempt = 0; attempt < 4000; ++attempt) {
    std::vector<std::vector<int>> pick(k);
    for (int i = 0; i < k; ++i) {
      int ni = static_cast<int>(classes[i].size());
      std::vector<int> idx(ni);
      for (int t = 0; t < ni; ++t) idx[t] = t;
      for (int t = 0; t < r; ++t) {
        int j = t + static_cast<int>(rng.next_below(ni - t));
        std::swap(idx[t], idx[j]);
      }
      pick[i].assign(idx.begin(), idx.begin() + r);
      if (i == 0) std::sort(pick[i].begin(), pick[i].end());
    }
    auto res = colorful_check(classes, pick, r);
    if (res) return res;
    for (int swp = 0; swp < 50; ++swp) {
      int i = static_cast<int>(rng.next_below(k));
      int a = static_cast<int>(rng.next_below(r));
      int ni = static_cast<int>(classes[i].size());
      int fresh = static_cast<int>(rng.next_below(ni));
      if (std::find(pick[i].begin(), pick[i].end(), fresh) != pick[i].end())
        continue;
      int old = pick[i][a];
      pick[i][a] = fresh;
      auto r2 = colorful_check(classes, pick, r);
      if (r2) return r2;
      pick[i][a] = old;
    }
  }
  return std::nullopt;
}

}  // namespace

ColorfulPointResult colorful_tverberg_points(
    const std::vector<std::vector<VecQ>>& classes, int r, uint64_t seed) {
  if (r < 1) fail(ErrorCode::InvalidInput, "r must be >= 1");
  if (classes.empty()) fail(ErrorCode::InvalidInput, "no classes");
  for (const auto& c : classes)
    if (c.empty()) fail(ErrorCode::NotFound, "empty color class");
  int k = static_cast<int>(classes.size());
  if (r == 1) {
    ColorfulPointResult res;
    res.transversals.transversals.assign(1, std::vector<int>(k, 0));
    std::vector<VecQ> chosen;
    for (const auto& c : classes) chosen.push_back(c[0]);
    res.common = vertex_centroid(chosen);
    return res;
  }
  unsigned long long cand = colorful_candidates_capped(classes, r);
  if (cand == 0) fail(ErrorCode::NotFound, "some class is smaller than r");
  std::optional<ColorfulPointResult> res;
  if (cand <= kExhaustiveCap)
    res = colorful_exhaustive(classes, r);
  else
    res = colorful_heuristic(classes, r, seed);
  if (!res)
    fail(ErrorCode::NotFound, "no disjoint transversals with a common point");
  return *res;
}

TverbergEllipsoidResult tverberg_ellipsoids(const std::vector<Ellipsoid>& ells,
                                            int r, uint64_t seed) {
  if (ells.empty()) fail(ErrorCode::InvalidInput, "no ellipsoids");
  int d = ells[0].dim();
  std::vector<VecQ> lifted;
  for (const auto& e : ells) lifted.push_back(encode(e).coords);
  TverbergPointResult pr = tverberg_points(lifted, r, seed);
  TverbergEllipsoidResult out;
  out.partition = pr.partition;
  out.witness = decode(ParamPoint{pr.common}, d);

  Rat min_det = ells[0].det_shape();
  for (const auto& e : ells) min_det = std::min(min_det, e.det_shape());
  if (out.witness.det_shape() < min_det)
    fail(ErrorCode::OptimizerFailed, "log-concavity violated (internal)");

  std::vector<InscribedPolytope> ins;
  ins.reserve(ells.size());
  Rat s(1);
  for (const auto& e : ells) {
    ins.push_back(inscribed_polytope(e));
    s = std::min(s, ins.back().factor);
  }
  Ellipsoid shrunk = shrink(out.witness, s);
  for (const auto& part : out.partition.parts) {
    std::vector<ConvexBody> polys;
    for (int i : part) polys.push_back(ins[i].body);
    if (!tuple_hull_contains_ellipsoid(polys, shrunk))
      fail(ErrorCode::OptimizerFailed, "containment certificate failed (internal)");
  }
  out.shrink_factor = s;
  return out;
}

ColorfulEllipsoidResult colorful_tverberg_ellipsoids(
    const std::vector<std::vector<Ellipsoid>>& families, int r, uint64_t seed) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  for (const auto& f : families)
    if (f.empty()) fail(ErrorCode::NotFound, "empty family");
  int d = families[0][0].dim();
  std::vector<std::vector<VecQ>> classes;
  for (const auto& f : families) {
    std::vector<VecQ> cls;
    for (const auto& e : f) cls.push_back(encode(e).coords);
    classes.push_back(std::move(cls));
  }
  ColorfulPointResult pr = colorful_tverberg_points(classes, r, seed);
  ColorfulEllipsoidResult out;
  out.transversals = pr.transversals;
  out.witness = decode(ParamPoint{pr.common}, d);

  std::vector<std::vector<InscribedPolytope>> ins(families.size());
  Rat s(1);
  for (size_t i = 0; i < families.size(); ++i)
    for (const auto& e : families[i]) {
      ins[i].push_back(inscribed_polytope(e));
      s = std::min(s, ins[i].back().factor);
    }
  Ellipsoid shrunk = shrink(out.witness, s);
  for (const auto& tr : out.transversals.transversals) {
    std::vector<ConvexBody> polys;
    for (size_t i = 0; i < tr.size(); ++i) polys.push_back(ins[i][tr[i]].body);
    if (!tuple_hull_contains_ellipsoid(polys, shrunk))
      fail(ErrorCode::OptimizerFailed, "containment certificate failed (internal)");
  }
  out.shrink_factor = s;
  return out;
}

ReduceResult reduce_transversals(const std::vector<std::vector<ConvexBody>>& families) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  int d = families[0][0].dim();
  std::vector<ConvexBody> hulls;
  for (const auto& f : families) hulls.push_back(hull_of_union(f));
  auto inter = intersect_bodies(hulls);
  if (!inter)
    fail(ErrorCode::DegenerateHull,
         "intersection of family hulls not full-dimensional");

  Ellipsoid e = john_ellipsoid(*inter);
  auto minv = inverse(e.shape);
  if (!minv) fail(ErrorCode::OptimizerFailed, "shape matrix singular (internal)");

  // x -> shape^-1 (x - center): the inscribed ellipsoid becomes the unit ball
  auto map_pt = [&](const VecQ& x) { return mat_vec(*minv, sub(x, e.center)); };
  auto unmap_pt = [&](const VecQ& y) { return add(mat_vec(e.shape, y), e.center); };

  std::vector<std::vector<VecQ>> point_sets;
  std::vector<std::vector<int>> owner;  // body index per point, per family
  for (const auto& fam : families) {
    std::vector<VecQ> pts;
    std::vector<int> own;
    for (size_t bI = 0; bI < fam.size(); ++bI)
      for (const auto& v : fam[bI].vertices()) {
        pts.push_back(map_pt(v.x));
        own.push_back(static_cast<int>(bI));
      }
    point_sets.push_back(std::move(pts));
    owner.push_back(std::move(own));
  }

  VolPlanesResult vp = vol_planes_refine(point_sets);

  ReduceResult out;
  out.chosen.resize(families.size());
  for (size_t i = 0; i < families.size(); ++i) {
    std::set<int> bodies;
    for (int pi : vp.chosen_indices[i]) bodies.insert(owner[i][pi]);
    out.chosen[i].assign(bodies.begin(), bodies.end());
    if (static_cast<int>(out.chosen[i].size()) > d + 1)
      fail(ErrorCode::OptimizerFailed, "cover exceeds d+1 bodies (internal)");
  }
  std::vector<Point> cell_pts;
  for (const auto& v : vp.cell.vertices()) cell_pts.emplace_back(unmap_pt(v.x));
  out.witness_cell = ConvexBody(std::move(cell_pts));
  return out;
}

ReducedColorfulResult reduced_colorful_tverberg(
    const std::vector<std::vector<ConvexBody>>& families, int r, uint64_t seed) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  int d = families[0][0].dim();
  int m = static_cast<int>(families.size());
  if (m < d + 1) fail(ErrorCode::InvalidInput, "need at least d+1 families");
  std::vector<std::vector<Ellipsoid>> efams(m);
  for (int i = 0; i < m; ++i)
    for (const auto& b : families[i]) efams[i].push_back(john_ellipsoid(b));

  Rat kt = binomial(m, d + 1) * (r - 1) + 1;
  int k_target = static_cast<int>(kt.get_num().get_si());
  int k_max = static_cast<int>(families[0].size());
  for (const auto& f : families) k_max = std::min(k_max, static_cast<int>(f.size()));

  for (int k = std::min(k_target, k_max); k >= r; --k) {
    ColorfulEllipsoidResult ce;
    try {
      ce = colorful_tverberg_ellipsoids(efams, k, seed);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NotFound) continue;
      throw;
    }
    std::vector<std::vector<ConvexBody>> tr_families;
    for (const auto& tr : ce.transversals.transversals) {
      std::vector<ConvexBody> fam;
      for (size_t i = 0; i < tr.size(); ++i)
        fam.push_back(inscribed_polytope(efams[i][tr[i]]).body);
      tr_families.push_back(std::move(fam));
    }
    ReduceResult red;
    try {
      red = reduce_transversals(tr_families);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::DegenerateHull) continue;
      throw;
    }
    std::map<std::vector<int>, std::vector<int>> buckets;
    for (size_t t = 0; t < tr_families.size(); ++t) {
      std::vector<int> fams = red.chosen[t];  // positions are family indices
      for (int i = 0; i < m && static_cast<int>(fams.size()) < d + 1; ++i)
        if (std::find(fams.begin(), fams.end(), i) == fams.end())
          fams.push_back(i);  // padding only grows the transversal's hull
      std::sort(fams.begin(), fams.end());
      buckets[fams].push_back(static_cast<int>(t));
    }
    for (const auto& [subset, trs] : buckets) {
      if (static_cast<int>(trs.size()) < r) continue;
      ReducedColorfulResult out;
      out.family_indices = subset;
      for (int a = 0; a < r; ++a) {
        std::vector<int> restricted;
        for (int fi : subset)
          restricted.push_back(ce.transversals.transversals[trs[a]][fi]);
        out.transversals.transversals.push_back(std::move(restricted));
      }
      out.transversals.family_subset = subset;
      out.witness = john_ellipsoid(red.witness_cell);
      return out;
    }
    break;  // pigeonhole failed; smaller k cannot help
  }
  fail(ErrorCode::NotFound, "no r transversals share a (d+1)-subset of families");
}

bool partition_parts_disjoint(const Partition& p, int n) {
  std::vector<bool> seen(n, false);
  for (const auto& part : p.parts) {
    if (part.empty()) return false;
    for (int i : part) {
      if (i < 0 || i >= n || seen[i]) return false;
      seen[i] = true;
    }
  }
  return true;
}

bool transversals_disjoint(const TransversalSet& t,
                           const std::vector<int>& family_sizes) {
  std::set<std::pair<int, int>> used;
  for (const auto& tr : t.transversals) {
    if (tr.size() != family_sizes.size()) return false;
    for (size_t i = 0; i < tr.size(); ++i) {
      if (tr[i] < 0 || tr[i] >= family_sizes[i]) return false;
      if (!used.insert({static_cast<int>(i), tr[i]}).second) return false;
    }
  }
  return true;
}

}  // namespace quantsel
