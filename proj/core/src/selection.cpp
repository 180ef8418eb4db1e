#include "quantsel/selection.hpp"

#include <algorithm>
#include <set>

#include "quantsel/arrangement.hpp"
#include "quantsel/combinatorics.hpp"
#include "quantsel/containment.hpp"
#include "quantsel/epsnet.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/lp.hpp"
#include "quantsel/predicates.hpp"
#include "quantsel/sametype.hpp"
#include "quantsel/segments.hpp"
#include "quantsel/tverberg.hpp"

namespace quantsel {

namespace {

std::vector<Hyperplane> spanned_hyperplanes(const std::vector<std::vector<VecQ>>& sets) {
  int d = static_cast<int>(sets[0][0].size());
  std::set<std::pair<std::vector<std::string>, std::string>> seen;
  std::vector<Hyperplane> planes;
  for (const auto& pts : sets) {
    int n = static_cast<int>(pts.size());
    for_each_subset(n, d, [&](const std::vector<int>& comb) {
      Hyperplane h;
      if (d == 1) {
        h.normal = {Rat(1)};
        h.offset = pts[comb[0]][0];
      } else {
        // normal orthogonal to the span of differences
        MatQ m(d - 1, d);
        for (int i = 1; i < d; ++i)
          for (int j = 0; j < d; ++j)
            m.at(i - 1, j) = pts[comb[i]][j] - pts[comb[0]][j];
        // nullspace via Gauss; reuse rank-style elimination
        std::vector<int> piv_col(d, -1);
        std::vector<bool> is_piv(d, false);
        int row = 0;
        for (int col = 0; col < d && row < d - 1; ++col) {
          int piv = -1;
          for (int i = row; i < d - 1; ++i)
            if (sgn(m.at(i, col)) != 0) { piv = i; break; }
          if (piv < 0) continue;
          if (piv != row)
            for (int j = 0; j < d; ++j) std::swap(m.at(piv, j), m.at(row, j));
          Rat inv_p = 1 / m.at(row, col);
          for (int j = 0; j < d; ++j) m.at(row, j) *= inv_p;
          for (int i = 0; i < d - 1; ++i) {
            if (i == row || sgn(m.at(i, col)) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = 0; j < d; ++j) m.at(i, j) -= f * m.at(row, j);
          }
          piv_col[row] = col;
          is_piv[col] = true;
          ++row;
        }
        if (row != d - 1) return;  // affinely dependent subset
        int free_col = -1;
        for (int j = 0; j < d; ++j)
          if (!is_piv[j]) { free_col = j; break; }
        h.normal.assign(d, Rat(0));
        h.normal[free_col] = 1;
        for (int i = 0; i < row; ++i) h.normal[piv_col[i]] = -m.at(i, free_col);
        h.offset = dot(h.normal, pts[comb[0]]);
      }
      // canonical form for dedup
      for (const Rat& v : h.normal) {
        if (sgn(v) != 0) {
          Rat sc = abs(v);
          for (Rat& w : h.normal) w /= sc;
          h.offset /= sc;
          break;
        }
      }
      // fix sign: first nonzero normal entry positive
      for (const Rat& v : h.normal) {
        if (sgn(v) != 0) {
          if (sgn(v) < 0) {
            for (Rat& w : h.normal) w = -w;
            h.offset = -h.offset;
          }
          break;
        }
      }
      std::vector<std::string> key;
      for (const Rat& v : h.normal) key.push_back(rat_to_string(v));
      if (seen.insert({key, rat_to_string(h.offset)}).second)
        planes.push_back(std::move(h));
    });
  }
  return planes;
}

}  // namespace

long simplex_depth(const std::vector<VecQ>& points, const VecQ& z) {
  int d = static_cast<int>(z.size());
  int n = static_cast<int>(points.size());
  long depth = 0;
  for_each_subset(n, d + 1, [&](const std::vector<int>& comb) {
    std::vector<VecQ> simplex;
    simplex.reserve(d + 1);
    for (int i : comb) simplex.push_back(points[i]);
    if (point_in_simplex(simplex, z)) ++depth;
  });
  return depth;
}

PointSelectionResult point_selection(const std::vector<VecQ>& points) {
  int n = static_cast<int>(points.size());
  if (n == 0) fail(ErrorCode::InvalidInput, "no points");
  int d = static_cast<int>(points[0].size());
  if (n < d + 1) fail(ErrorCode::InvalidInput, "need at least d+1 points");
  // general position: no d+1 points on a common hyperplane
  bool degenerate = for_each_subset_until(n, d + 1, [&](const std::vector<int>& c) {
    std::vector<VecQ> sel;
    for (int i : c) sel.push_back(points[i]);
    return orientation(sel) == 0;
  });
  if (degenerate)
    fail(ErrorCode::DegeneratePosition, "d+1 points lie on a hyperplane");

  std::vector<Hyperplane> planes = spanned_hyperplanes({points});
  double cells_estimate = std::pow(static_cast<double>(planes.size()), d);
  if (cells_estimate > 200000.0)
    fail(ErrorCode::Unsupported, "arrangement too large for exact enumeration");
  ConvexBody region{[&] {
    std::vector<Point> ps;
    for (const auto& p : points) ps.emplace_back(p);
    return ps;
  }()};
  auto cells = arrangement_cells(planes, region);
  PointSelectionResult best;
  best.depth = -1;
  for (const auto& c : cells) {
    long dep = simplex_depth(points, c.sample);
    if (dep > best.depth ||
        (dep == best.depth && c.sample < best.point)) {
      best.depth = dep;
      best.point = c.sample;
    }
  }
  return best;
}

VolPlanesResult vol_planes_refine(const std::vector<std::vector<VecQ>>& sets) {
  if (sets.empty()) fail(ErrorCode::InvalidInput, "no point sets");
  int d = static_cast<int>(sets[0][0].size());
  int m = static_cast<int>(sets.size());
  std::vector<ConvexBody> hulls;
  for (const auto& s : sets) {
    if (static_cast<int>(s.size()) < d + 1)
      fail(ErrorCode::InvalidInput, "each set needs >= d+1 points");
    std::vector<Point> ps;
    for (const auto& p : s) ps.emplace_back(p);
    hulls.emplace_back(std::move(ps));
  }
  auto inter = intersect_bodies(hulls);
  if (!inter)
    fail(ErrorCode::DegenerateHull, "hull intersection not full-dimensional");
  Rat inter_vol = inter->volume();

  std::vector<Hyperplane> planes = spanned_hyperplanes(sets);
  auto cells = arrangement_cells(planes, *inter);

  int best = -1;
  Rat best_vol(-1);
  VecQ best_sample;
  for (size_t i = 0; i < cells.size(); ++i) {
    Rat v = cells[i].body.volume();
    if (v > best_vol || (v == best_vol && cells[i].sample < best_sample)) {
      best_vol = v;
      best = static_cast<int>(i);
      best_sample = cells[i].sample;
    }
  }
  const Cell& cell = cells[best];

  // paper cell-count bound, exact
  size_t k_max = 0;
  for (const auto& s : sets) k_max = std::max(k_max, s.size());
  Rat bound = pow_rat(Rat(m) * binomial(static_cast<unsigned>(k_max),
                                        static_cast<unsigned>(d)),
                      -d);
  if (best_vol < bound * inter_vol)
    fail(ErrorCode::OptimizerFailed, "max cell below the counting bound (internal)");

  VolPlanesResult out;
  out.cell = cell.body;
  out.cell_volume = best_vol;
  out.intersection_volume = inter_vol;
  out.chosen_indices.resize(m);
  std::vector<VecQ> cell_verts;
  for (int vi : cell.body.hull().extreme) cell_verts.push_back(cell.body.vertices()[vi].x);
  for (int i = 0; i < m; ++i) {
    int ni = static_cast<int>(sets[i].size());
    bool found = for_each_subset_until(ni, d + 1, [&](const std::vector<int>& comb) {
      std::vector<VecQ> simplex;
      for (int j : comb) simplex.push_back(sets[i][j]);
      for (const auto& v : cell_verts)
        if (!point_in_simplex(simplex, v)) return false;
      out.chosen_indices[i] = comb;
      return true;
    });
    if (!found)
      fail(ErrorCode::OptimizerFailed,
           "no containing simplex for the witness cell (internal)");
  }
  return out;
}

std::vector<int> steinitz_reduce(const std::vector<VecQ>& points) {
  int n = static_cast<int>(points.size());
  if (n == 0) fail(ErrorCode::InvalidInput, "no points");
  int d = static_cast<int>(points[0].size());
  HullData hull = convex_hull(points);  // DegenerateHull when flat

  Ellipsoid unit_ball;
  unit_ball.shape = MatQ::identity(d);
  unit_ball.center.assign(d, Rat(0));
  if (!contains_ellipsoid(hull.hrep, unit_ball))
    fail(ErrorCode::PreconditionFailed, "hull does not contain the unit ball");

  Ellipsoid small = shrink(unit_ball, Rat(1, 5 * d * d));
  int target = std::min(2 * d, n);

  auto subset_ok = [&](const std::vector<int>& idx) {
    std::vector<VecQ> sub;
    for (int i : idx) sub.push_back(points[i]);
    if (affine_dim(sub) < d) return false;
    return contains_ellipsoid(convex_hull(sub).hrep, small);
  };

  std::vector<int> result;
  auto exhaustive = [&]() {
    return for_each_subset_until(n, target, [&](const std::vector<int>& comb) {
      if (!subset_ok(comb)) return false;
      result = comb;
      return true;
    });
  };

  if (n <= 16) {
    if (exhaustive()) return result;
    fail(ErrorCode::NotFound, "no 2d-subset contains the (5d^2)^-1 ball");
  }

  // greedy: grow by the point maximizing the certified inscribed-ball radius
  std::vector<int> sel;
  std::vector<bool> used(n, false);
  for (int round = 0; round < target; ++round) {
    int best = -1;
    int best_dim = -1;
    Rat best_radius(-1);
    for (int p = 0; p < n; ++p) {
      if (used[p]) continue;
      std::vector<VecQ> sub;
      for (int i : sel) sub.push_back(points[i]);
      sub.push_back(points[p]);
      int adim = affine_dim(sub);
      Rat radius(0);
      if (adim == d) {
        HullData sh = convex_hull(sub);
        std::vector<VecQ> normals;
        std::vector<Rat> offsets, ubs;
        for (const auto& hs : sh.hrep.halfspaces) {
          normals.push_back(hs.normal);
          offsets.push_back(hs.offset);
          ubs.push_back(sqrt_upper(norm_sq(hs.normal)));
        }
        auto ball = inscribed_ball(normals, offsets, ubs);
        if (ball) radius = ball->second;
      }
      if (adim > best_dim || (adim == best_dim && radius > best_radius)) {
        best = p;
        best_dim = adim;
        best_radius = radius;
      }
    }
    sel.push_back(best);
    used[best] = true;
  }
  std::sort(sel.begin(), sel.end());
  if (subset_ok(sel)) return sel;
  if (binomial(n, target) <= Rat(50000) && exhaustive()) return result;
  fail(ErrorCode::NotFound, "greedy Steinitz reduction failed certification");
}

int variant_tuple_size(SelectionVariant v, int d) {
  switch (v) {
    case SelectionVariant::Quadratic: return d * (d + 3) / 2 + 1;
    case SelectionVariant::Steinitz2d: return 2 * d;
    case SelectionVariant::Simplex: return d + 1;
  }
  return 0;
}

std::vector<std::vector<int>> enumerate_hit_tuples(
    const std::vector<ConvexBody>& family, const Ellipsoid& witness,
    int tuple_size) {
  int n = static_cast<int>(family.size());
  std::vector<std::vector<int>> hits;
  for_each_subset(n, tuple_size, [&](const std::vector<int>& comb) {
    std::vector<ConvexBody> tup;
    for (int i : comb) tup.push_back(family[i]);
    if (tuple_hull_contains_ellipsoid(tup, witness)) hits.push_back(comb);
  });
  return hits;
}

std::vector<std::vector<int>> enumerate_hit_tuples_segment(
    const std::vector<ConvexBody>& family, const Segment& witness,
    int tuple_size) {
  int n = static_cast<int>(family.size());
  std::vector<std::vector<int>> hits;
  for_each_subset(n, tuple_size, [&](const std::vector<int>& comb) {
    std::vector<ConvexBody> tup;
    for (int i : comb) tup.push_back(family[i]);
    ConvexBody hull = hull_of_union(tup);
    if (hull.affine_dimension() < hull.dim()) return;
    const HRep& hr = hull.hull().hrep;
    if (hr.contains(witness.a.x) && hr.contains(witness.b.x))
      hits.push_back(comb);
  });
  return hits;
}

namespace {

struct LiftedSelection {
  VecQ deep_point;
  long depth = -1;
};

// depth maximization over candidate points: exact counting, degenerate
// subsets skipped; candidates are convex combinations of the cloud
LiftedSelection lifted_deep_point(const std::vector<VecQ>& cloud, uint64_t seed) {
  int n = static_cast<int>(cloud.size());
  int dim = static_cast<int>(cloud[0].size());
  std::vector<VecQ> candidates;
  candidates.push_back(vertex_centroid(cloud));
  for (int r : {2, 3}) {
    if (n < r) continue;
    try {
      auto tv = tverberg_points(cloud, r, seed);
      candidates.push_back(tv.common);
    } catch (const Error&) {
    }
  }
  Rng rng(seed, "liftdeep");
  for (int t = 0; t < 24; ++t) {
    VecQ z(dim, Rat(0));
    Rat total(0);
    std::vector<Rat> w(n);
    for (int i = 0; i < n; ++i) {
      w[i] = frac(1 + static_cast<long>(rng.next_below(16)), 16);
      total += w[i];
    }
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < dim; ++k) z[k] += cloud[i][k] * w[i] / total;
    candidates.push_back(std::move(z));
  }

  // depth counting (sampled when the subset space is large)
  Rat full = binomial(n, dim + 1);
  bool sample_subsets = full > Rat(20000);
  LiftedSelection best;
  for (const auto& cand : candidates) {
    long depth = 0;
    if (!sample_subsets) {
      depth = simplex_depth(cloud, cand);
    } else {
      Rng sub(seed, "subsets");
      for (int t = 0; t < 2000; ++t) {
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < dim + 1)
          pick.insert(static_cast<int>(sub.next_below(n)));
        std::vector<VecQ> simplex;
        for (int i : pick) simplex.push_back(cloud[i]);
        if (point_in_simplex(simplex, cand)) ++depth;
      }
    }
    if (depth > best.depth) {
      best.depth = depth;
      best.deep_point = cand;
    }
  }
  return best;
}

std::vector<Ellipsoid> john_per_body(const std::vector<ConvexBody>& family) {
  std::vector<Ellipsoid> ells;
  ells.reserve(family.size());
  for (const auto& b : family) ells.push_back(john_ellipsoid(b));
  return ells;
}

Rat min_body_volume(const std::vector<ConvexBody>& family) {
  Rat v = family[0].volume();
  for (const auto& b : family) v = std::min(v, b.volume());
  return v;
}

constexpr long kHitTupleEnumCap = 200000;

void finish_witness(SelectionWitness& w, const std::vector<ConvexBody>& family,
                    int tuple_size) {
  int n = static_cast<int>(family.size());
  w.tuple_size = tuple_size;
  Rat total = binomial(n, tuple_size);
  if (total <= Rat(kHitTupleEnumCap)) {
    if (w.ellipsoid)
      w.hit_tuples = enumerate_hit_tuples(family, *w.ellipsoid, tuple_size);
    else
      w.hit_tuples = enumerate_hit_tuples_segment(family, *w.segment, tuple_size);
  }
  if (w.hit_tuples.empty())
    fail(ErrorCode::NotFound, "witness not contained in any tuple hull");
  w.fraction = Rat(static_cast<long>(w.hit_tuples.size())) / total;
}

// Tverberg -> Steinitz -> cover pipeline shared by the 2d and simplex
// selections; refine=true inserts the spanned-hyperplane refinement so each
// part is covered by d+1 bodies instead of 2d.
struct ReductionOutcome {
  std::vector<std::vector<int>> tuples;  // candidate tuples (global indices)
  Ellipsoid witness;
};

std::optional<ReductionOutcome> reduce_once(
    const std::vector<ConvexBody>& family, const std::vector<int>& subset,
    const std::vector<Ellipsoid>& ells, bool refine, uint64_t seed) {
  int d = family[0].dim();
  int lift = param_dim(d);
  int n_sub = static_cast<int>(subset.size());
  int r = std::min(lift, (n_sub - 1) / (lift + 1) + 1);
  if (r < 1) return std::nullopt;

  std::vector<Ellipsoid> sub_ells;
  for (int i : subset) sub_ells.push_back(ells[i]);

  Partition partition;
  Ellipsoid tv_witness;
  if (r == 1) {
    partition.parts.push_back({});
    for (int i = 0; i < n_sub; ++i) partition.parts[0].push_back(i);
    tv_witness = sub_ells[0];
  } else {
    try {
      auto tv = tverberg_ellipsoids(sub_ells, r, seed);
      partition = tv.partition;
      tv_witness = tv.witness;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotFound) return std::nullopt;
      throw;
    }
  }

  auto minv = inverse(tv_witness.shape);
  if (!minv) return std::nullopt;
  auto map_pt = [&](const VecQ& x) {
    return mat_vec(*minv, sub(x, tv_witness.center));
  };
  auto unmap_pt = [&](const VecQ& y) {
    return add(mat_vec(tv_witness.shape, y), tv_witness.center);
  };

  std::vector<std::vector<VecQ>> part_points(partition.parts.size());
  std::vector<std::vector<int>> part_owner(partition.parts.size());
  for (size_t j = 0; j < partition.parts.size(); ++j)
    for (int local : partition.parts[j]) {
      int global = subset[local];
      for (const auto& v : family[global].vertices()) {
        part_points[j].push_back(map_pt(v.x));
        part_owner[j].push_back(global);
      }
    }

  std::vector<std::vector<VecQ>> reduced_sets(partition.parts.size());
  std::vector<std::vector<int>> reduced_owner(partition.parts.size());
  for (size_t j = 0; j < partition.parts.size(); ++j) {
    std::vector<int> pick;
    try {
      pick = steinitz_reduce(part_points[j]);
    } catch (const Error&) {
      return std::nullopt;
    }
    for (int pi : pick) {
      reduced_sets[j].push_back(part_points[j][pi]);
      reduced_owner[j].push_back(part_owner[j][pi]);
    }
  }

  ReductionOutcome out;
  int cover_size = refine ? d + 1 : 2 * d;
  if (!refine) {
    // witness: (5d^2)^-1 scaling of the Tverberg ellipsoid
    out.witness = shrink(tv_witness, Rat(1, 5 * d * d));
    for (size_t j = 0; j < reduced_owner.size(); ++j) {
      std::set<int> bodies(reduced_owner[j].begin(), reduced_owner[j].end());
      out.tuples.emplace_back(bodies.begin(), bodies.end());
    }
  } else {
    VolPlanesResult vp;
    try {
      vp = vol_planes_refine(reduced_sets);
    } catch (const Error&) {
      return std::nullopt;
    }
    std::vector<Point> cell_pts;
    for (const auto& v : vp.cell.vertices()) cell_pts.emplace_back(unmap_pt(v.x));
    ConvexBody cell_back{std::move(cell_pts)};
    try {
      out.witness = john_ellipsoid(cell_back);
    } catch (const Error&) {
      return std::nullopt;
    }
    for (size_t j = 0; j < reduced_sets.size(); ++j) {
      std::set<int> bodies;
      for (int idx : vp.chosen_indices[j]) bodies.insert(reduced_owner[j][idx]);
      out.tuples.emplace_back(bodies.begin(), bodies.end());
    }
  }
  // pad each tuple to the full size with fresh smallest family indices
  int n = static_cast<int>(family.size());
  for (auto& t : out.tuples) {
    for (int i = 0; i < n && static_cast<int>(t.size()) < cover_size; ++i)
      if (std::find(t.begin(), t.end(), i) == t.end()) t.push_back(i);
    std::sort(t.begin(), t.end());
  }
  return out;
}

SelectionWitness selection_reduced(const std::vector<ConvexBody>& family,
                                   bool refine, uint64_t seed) {
  int n = static_cast<int>(family.size());
  if (n == 0) fail(ErrorCode::InvalidInput, "empty family");
  int d = family[0].dim();
  int lift = param_dim(d);
  int alpha = refine ? d + 1 : 2 * d;
  if (n < alpha) fail(ErrorCode::TooFewBodies, "family smaller than tuple size");

  std::vector<Ellipsoid> ells = john_per_body(family);

  // sampled f(d)-tuples when the family is large enough, else the whole family
  int fd = (lift + 1) * (lift - 1) + 1;
  std::vector<std::vector<int>> samples;
  if (n >= fd) {
    std::vector<int> first(fd);
    for (int i = 0; i < fd; ++i) first[i] = i;
    samples.push_back(first);
    Rng rng(seed, "tuplesample");
    for (int s = 0; s < 5; ++s) {
      std::set<int> pick;
      while (static_cast<int>(pick.size()) < fd)
        pick.insert(static_cast<int>(rng.next_below(n)));
      samples.emplace_back(pick.begin(), pick.end());
    }
  } else {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    samples.push_back(all);
  }

  std::vector<ReductionOutcome> outcomes;
  for (const auto& s : samples) {
    auto out = reduce_once(family, s, ells, refine, seed);
    if (out) outcomes.push_back(std::move(*out));
  }
  if (outcomes.empty())
    fail(ErrorCode::NotFound, "no tuple sample produced a partition");

  // fractional-Helly finish over the collected candidate hulls
  Ellipsoid witness = outcomes[0].witness;
  if (outcomes.size() > 1 || outcomes[0].tuples.size() > 1) {
    std::vector<ConvexBody> hulls;
    for (const auto& o : outcomes)
      for (const auto& t : o.tuples) {
        std::vector<ConvexBody> tup;
        for (int i : t) tup.push_back(family[i]);
        hulls.push_back(hull_of_union(tup));
      }
    Rat floor = variant_volume_floor(refine ? SelectionVariant::Simplex
                                            : SelectionVariant::Steinitz2d,
                                     d) *
                min_body_volume(family);
    int k = std::min<int>(static_cast<int>(hulls.size()), lift);
    try {
      auto fh = fractional_helly_search(hulls, k, floor);
      witness = fh.witness;
    } catch (const Error&) {
      // keep the direct pipeline witness
    }
  }

  SelectionWitness w;
  w.ellipsoid = witness;
  finish_witness(w, family, alpha);
  return w;
}

}  // namespace

SelectionWitness selection_quadratic(const std::vector<ConvexBody>& family,
                                     QuantMode mode, uint64_t seed) {
  int n = static_cast<int>(family.size());
  if (n == 0) fail(ErrorCode::InvalidInput, "empty family");
  int d = family[0].dim();
  int lift = param_dim(d);
  int alpha = lift + 1;
  if (n < alpha) fail(ErrorCode::TooFewBodies, "need at least d(d+3)/2 + 1 bodies");

  if (mode == QuantMode::Volume) {
    std::vector<Ellipsoid> ells = john_per_body(family);
    std::vector<VecQ> cloud;
    for (const auto& e : ells) cloud.push_back(encode(e).coords);
    LiftedSelection deep = lifted_deep_point(cloud, seed);
    SelectionWitness w;
    w.ellipsoid = decode(ParamPoint{deep.deep_point}, d);
    Rat min_det = ells[0].det_shape();
    for (const auto& e : ells) min_det = std::min(min_det, e.det_shape());
    if (w.ellipsoid->det_shape() < min_det)
      fail(ErrorCode::OptimizerFailed, "log-concavity violated (internal)");
    finish_witness(w, family, alpha);
    return w;
  }

  // diameter mode: one diameter segment per body, cap-direction filter,
  // truncate to v-width delta, lift [x,y] -> (x,y), deep point there
  std::vector<Segment> diams;
  for (const auto& b : family) {
    const auto& vs = b.vertices();
    int bi = 0, bj = 1;
    Rat best(-1);
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j) {
        Rat l = norm_sq(sub(vs[j].x, vs[i].x));
        if (l > best) {
          best = l;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    diams.emplace_back(vs[bi], vs[bj]);
  }
  for (const auto& s : diams)
    if (s.length_sq() < 1)
      fail(ErrorCode::PreconditionFailed, "diameter mode needs diameter >= 1 bodies");
  CapWitness cap = common_direction({diams}, seed, cap_threshold_rational(d));
  // keep covered segments, truncate to v-width exactly delta
  std::vector<VecQ> cloud;
  std::vector<int> owners;
  for (int i = 0; i < n; ++i) {
    Rat wdt = dot(cap.direction, diams[i].delta());
    Rat aw = abs(wdt);
    if (aw < cap.delta) continue;
    Segment s = diams[i];
    if (sgn(wdt) < 0) std::swap(s.a, s.b);
    Rat f = cap.delta / aw;
    VecQ mid = s.midpoint();
    VecQ half = scale(s.delta(), f / 2);
    VecQ x = sub(mid, half), y = add(mid, half);
    VecQ lifted = x;
    lifted.insert(lifted.end(), y.begin(), y.end());
    cloud.push_back(std::move(lifted));
    owners.push_back(i);
  }
  if (static_cast<int>(cloud.size()) < 2 * d + 1)
    fail(ErrorCode::NotFound, "too few segments share the cap direction");
  LiftedSelection deep = lifted_deep_point(cloud, seed);
  SelectionWitness w;
  VecQ xbar(deep.deep_point.begin(), deep.deep_point.begin() + d);
  VecQ ybar(deep.deep_point.begin() + d, deep.deep_point.end());
  w.segment = Segment(Point(xbar), Point(ybar));
  w.direction = cap.direction;
  w.delta = cap.delta;
  finish_witness(w, family, 2 * d + 1);
  return w;
}

SelectionWitness selection_2d(const std::vector<ConvexBody>& family, uint64_t seed) {
  return selection_reduced(family, /*refine=*/false, seed);
}

SelectionWitness selection_simplex(const std::vector<ConvexBody>& family,
                                   uint64_t seed) {
  return selection_reduced(family, /*refine=*/true, seed);
}

}  // namespace quantsel
