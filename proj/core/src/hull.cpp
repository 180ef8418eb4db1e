#include <algorithm>
#include <map>
#include <set>

#include "quantsel/error.hpp"
#include "quantsel/geometry.hpp"

namespace quantsel {

namespace {

// One nonzero vector a with M a = 0 for an (r x c) matrix of rank c-1;
// nullopt when the rank is lower.
std::optional<VecQ> nullspace_vector(MatQ m) {
  int r = m.rows, c = m.cols;
  std::vector<int> pivot_col_of_row(r, -1);
  std::vector<bool> col_is_pivot(c, false);
  int row = 0;
  for (int col = 0; col < c && row < r; ++col) {
    int piv = -1;
    for (int i = row; i < r; ++i)
      if (sgn(m.at(i, col)) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < c; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rat inv_p = 1 / m.at(row, col);
    for (int j = 0; j < c; ++j) m.at(row, j) *= inv_p;
    for (int i = 0; i < r; ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = 0; j < c; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivot_col_of_row[row] = col;
    col_is_pivot[col] = true;
    ++row;
  }
  if (row != c - 1) return std::nullopt;  // not corank 1
  int free_col = -1;
  for (int j = 0; j < c; ++j)
    if (!col_is_pivot[j]) { free_col = j; break; }
  VecQ a(c, Rat(0));
  a[free_col] = 1;
  for (int i = 0; i < row; ++i) a[pivot_col_of_row[i]] = -m.at(i, free_col);
  return a;
}

void canonicalize_facet(VecQ& a, Rat& b) {
  for (const Rat& v : a) {
    if (sgn(v) != 0) {
      Rat s = abs(v);
      for (Rat& w : a) w /= s;
      b /= s;
      return;
    }
  }
}

HullData hull_1d(const std::vector<VecQ>& pts) {
  int lo = 0, hi = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (pts[i][0] < pts[lo][0]) lo = static_cast<int>(i);
    if (pts[i][0] > pts[hi][0]) hi = static_cast<int>(i);
  }
  HullData h;
  h.hrep.dim = 1;
  h.hrep.halfspaces.push_back({{Rat(1)}, pts[hi][0]});
  h.hrep.halfspaces.push_back({{Rat(-1)}, -pts[lo][0]});
  h.extreme = {lo, hi};
  std::sort(h.extreme.begin(), h.extreme.end());
  h.extreme.erase(std::unique(h.extreme.begin(), h.extreme.end()), h.extreme.end());
  return h;
}

Rat cross2(const VecQ& o, const VecQ& a, const VecQ& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain; returns extreme indices in CCW order starting at the
// lexicographic minimum.
std::vector<int> hull_2d_ccw(const std::vector<VecQ>& pts) {
  std::vector<int> idx;
  {
    std::map<std::pair<Rat, Rat>, int> uniq;
    for (size_t i = 0; i < pts.size(); ++i) {
      auto key = std::make_pair(pts[i][0], pts[i][1]);
      if (!uniq.count(key)) uniq[key] = static_cast<int>(i);
    }
    for (auto& [k, i] : uniq) idx.push_back(i);  // already lex-sorted
  }
  int n = static_cast<int>(idx.size());
  std::vector<int> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower
    while (k >= 2 && sgn(cross2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]])) <= 0) --k;
    h[k++] = idx[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {  // upper
    while (k >= t && sgn(cross2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]])) <= 0) --k;
    h[k++] = idx[i];
  }
  h.resize(k - 1);
  return h;
}

HullData hull_2d(const std::vector<VecQ>& pts) {
  std::vector<int> ccw = hull_2d_ccw(pts);
  HullData h;
  h.hrep.dim = 2;
  int m = static_cast<int>(ccw.size());
  for (int i = 0; i < m; ++i) {
    const VecQ& p = pts[ccw[i]];
    const VecQ& q = pts[ccw[(i + 1) % m]];
    VecQ a = {q[1] - p[1], p[0] - q[0]};  // outward normal of CCW edge
    Rat b = dot(a, p);
    canonicalize_facet(a, b);
    h.hrep.halfspaces.push_back({a, b});
  }
  h.extreme = ccw;
  std::sort(h.extreme.begin(), h.extreme.end());
  return h;
}

}  // namespace

HullData convex_hull(const std::vector<VecQ>& pts) {
  if (pts.empty()) fail(ErrorCode::InvalidInput, "hull of empty set");
  int d = static_cast<int>(pts[0].size());
  int adim = affine_dim(pts);
  if (adim < d)
    fail(ErrorCode::DegenerateHull,
         "affine hull has dimension " + std::to_string(adim) + " < " +
             std::to_string(d));
  if (d == 1) return hull_1d(pts);
  if (d == 2) return hull_2d(pts);

  // generic: every facet is spanned by some d-subset of points
  int n = static_cast<int>(pts.size());
  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  HullData h;
  h.hrep.dim = d;
  std::vector<int> comb(d);
  for (int i = 0; i < d; ++i) comb[i] = i;
  auto next_comb = [&]() {
    int i = d - 1;
    while (i >= 0 && comb[i] == n - d + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  do {
    MatQ m(d - 1, d);
    for (int i = 1; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m.at(i - 1, j) = pts[comb[i]][j] - pts[comb[0]][j];
    auto a_opt = nullspace_vector(std::move(m));
    if (!a_opt) continue;
    VecQ a = *a_opt;
    Rat b = dot(a, pts[comb[0]]);
    bool has_above = false, has_below = false;
    for (int i = 0; i < n && !(has_above && has_below); ++i) {
      int s = sgn(dot(a, pts[i]) - b);
      if (s > 0) has_above = true;
      if (s < 0) has_below = true;
    }
    if (has_above && has_below) continue;
    if (has_above) {
      for (Rat& v : a) v = -v;
      b = -b;
    }
    canonicalize_facet(a, b);
    std::vector<std::string> akey;
    for (const Rat& v : a) akey.push_back(rat_to_string(v));
    auto key = std::make_pair(std::move(akey), rat_to_string(b));
    if (seen.insert(key).second) h.hrep.halfspaces.push_back({a, b});
  } while (next_comb());

  // vertex test: d independent active facets
  for (int i = 0; i < n; ++i) {
    bool dup = false;
    for (int j = 0; j < i; ++j)
      if (pts[j] == pts[i]) { dup = true; break; }
    if (dup) continue;
    std::vector<VecQ> active;
    for (const auto& hs : h.hrep.halfspaces)
      if (sgn(hs.eval(pts[i])) == 0) active.push_back(hs.normal);
    if (static_cast<int>(active.size()) < d) continue;
    MatQ m(static_cast<int>(active.size()), d);
    for (size_t r = 0; r < active.size(); ++r)
      for (int c = 0; c < d; ++c) m.at(static_cast<int>(r), c) = active[r][c];
    if (rank(std::move(m)) == d) h.extreme.push_back(i);
  }
  return h;
}

Rat hull_volume(const std::vector<VecQ>& pts) {
  int d = static_cast<int>(pts[0].size());
  if (affine_dim(pts) < d) return Rat(0);
  if (d == 1) {
    Rat lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      if (p[0] < lo) lo = p[0];
      if (p[0] > hi) hi = p[0];
    }
    return hi - lo;
  }
  HullData h = convex_hull(pts);
  VecQ o = vertex_centroid(pts);
  Rat vol(0);
  for (const auto& f : h.hrep.halfspaces) {
    // points on this facet
    std::vector<VecQ> on;
    for (const auto& p : pts)
      if (sgn(f.eval(p)) == 0) on.push_back(p);
    if (static_cast<int>(on.size()) < d) continue;
    // drop the coordinate with the largest |normal| entry
    int jstar = 0;
    Rat best = abs(f.normal[0]);
    for (int j = 1; j < d; ++j) {
      Rat v = abs(f.normal[j]);
      if (v > best) { best = v; jstar = j; }
    }
    std::vector<VecQ> proj;
    proj.reserve(on.size());
    for (const auto& p : on) {
      VecQ q;
      q.reserve(d - 1);
      for (int j = 0; j < d; ++j)
        if (j != jstar) q.push_back(p[j]);
      proj.push_back(std::move(q));
    }
    Rat facet_proj_vol = hull_volume(proj);
    Rat height = abs(f.offset - dot(f.normal, o));
    vol += height * facet_proj_vol / abs(f.normal[jstar]);
  }
  return vol / d;
}

std::vector<VecQ> enumerate_vertices(const HRep& hrep) {
  int d = hrep.dim;
  int m = static_cast<int>(hrep.halfspaces.size());
  std::vector<VecQ> out;
  if (m < d) return out;
  std::vector<int> comb(d);
  for (int i = 0; i < d; ++i) comb[i] = i;
  auto next_comb = [&]() {
    int i = d - 1;
    while (i >= 0 && comb[i] == m - d + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
    return true;
  };
  std::set<std::vector<std::string>> seen;
  do {
    MatQ a(d, d);
    VecQ b(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a.at(i, j) = hrep.halfspaces[comb[i]].normal[j];
      b[i] = hrep.halfspaces[comb[i]].offset;
    }
    auto x = solve(std::move(a), std::move(b));
    if (!x) continue;
    if (!hrep.contains(*x)) continue;
    std::vector<std::string> key;
    for (const Rat& v : *x) key.push_back(rat_to_string(v));
    if (seen.insert(key).second) out.push_back(*x);
  } while (next_comb());
  return out;
}

std::optional<ConvexBody> intersect_bodies(const std::vector<ConvexBody>& bodies) {
  if (bodies.empty()) return std::nullopt;
  int d = bodies[0].dim();
  HRep all;
  all.dim = d;
  for (const auto& b : bodies) {
    if (b.dim() != d) fail(ErrorCode::InvalidInput, "dimension mismatch");
    if (b.affine_dimension() < d) return std::nullopt;
    for (const auto& hs : b.hull().hrep.halfspaces) all.halfspaces.push_back(hs);
  }
  std::vector<VecQ> verts = enumerate_vertices(all);
  if (verts.empty() || affine_dim(verts) < d) return std::nullopt;
  std::vector<Point> ps;
  ps.reserve(verts.size());
  for (auto& v : verts) ps.emplace_back(std::move(v));
  return ConvexBody(std::move(ps));
}

std::optional<ConvexBody> clip_body(const ConvexBody& body, const Hyperplane& h,
                                    bool keep_upper) {
  int d = body.dim();
  Hyperplane hs = h;
  if (keep_upper) {
    hs.normal = scale(h.normal, Rat(-1));
    hs.offset = -h.offset;
  }
  if (d == 2) {
    // fast polygon clip
    std::vector<VecQ> poly = polygon_ccw(body.coords());
    std::vector<VecQ> out;
    int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
      const VecQ& p = poly[i];
      const VecQ& q = poly[(i + 1) % n];
      Rat sp = hs.eval(p), sq = hs.eval(q);
      int ssp = sgn(sp), ssq = sgn(sq);
      if (ssp <= 0) out.push_back(p);
      if ((ssp < 0 && ssq > 0) || (ssp > 0 && ssq < 0)) {
        Rat t = sp / (sp - sq);
        VecQ inter = add(p, scale(sub(q, p), t));
        out.push_back(std::move(inter));
      }
    }
    if (out.empty() || affine_dim(out) < 2) return std::nullopt;
    std::vector<Point> ps;
    for (auto& v : out) ps.emplace_back(std::move(v));
    return ConvexBody(std::move(ps));
  }
  HRep all = body.hull().hrep;
  all.halfspaces.push_back(hs);
  std::vector<VecQ> verts = enumerate_vertices(all);
  if (verts.empty() || affine_dim(verts) < d) return std::nullopt;
  std::vector<Point> ps;
  for (auto& v : verts) ps.emplace_back(std::move(v));
  return ConvexBody(std::move(ps));
}

std::vector<VecQ> polygon_ccw(const std::vector<VecQ>& pts) {
  std::vector<int> ccw = hull_2d_ccw(pts);
  std::vector<VecQ> out;
  out.reserve(ccw.size());
  for (int i : ccw) out.push_back(pts[i]);
  return out;
}

ConvexBody trim_to_volume(const ConvexBody& body, const Rat& target) {
  int d = body.dim();
  Rat vol = body.volume();
  if (sgn(target) <= 0 || target > vol)
    fail(ErrorCode::InvalidInput, "trim target outside (0, volume]");
  if (target == vol) return body;
  if (d == 1) {
    Rat lo = body.coords()[0][0], hi = lo;
    for (const auto& p : body.coords()) {
      if (p[0] < lo) lo = p[0];
      if (p[0] > hi) hi = p[0];
    }
    Rat mid = (lo + hi) / 2;
    std::vector<Point> ps = {Point({mid - target / 2}), Point({mid + target / 2})};
    return ConvexBody(std::move(ps));
  }
  if (d != 2) fail(ErrorCode::Unsupported, "trim_to_volume needs d <= 2");
  std::vector<VecQ> poly = polygon_ccw(body.coords());
  int n = static_cast<int>(poly.size());
  // fan from poly[0]; prefix of triangles, then a fractional cut of the next
  std::vector<VecQ> kept = {poly[0], poly[1]};
  Rat acc(0);
  Rat half_target = target;  // areas via cross/2
  for (int i = 1; i + 1 < n; ++i) {
    Rat tri = cross2(poly[0], poly[i], poly[i + 1]) / 2;  // positive, CCW
    if (acc + tri < half_target) {
      acc += tri;
      kept.push_back(poly[i + 1]);
      continue;
    }
    Rat need = half_target - acc;
    Rat w = need / tri;
    if (sgn(w) > 0) {
      VecQ u = add(poly[i], scale(sub(poly[i + 1], poly[i]), w));
      kept.push_back(std::move(u));
    }
    std::vector<Point> ps;
    for (auto& v : kept) ps.emplace_back(std::move(v));
    return ConvexBody(std::move(ps));
  }
  // numerically exact fall-through only when target == vol (handled above)
  std::vector<Point> ps;
  for (auto& v : kept) ps.emplace_back(std::move(v));
  return ConvexBody(std::move(ps));
}

}  // namespace quantsel
