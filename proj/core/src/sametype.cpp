#include "quantsel/sametype.hpp"

#include <algorithm>
#include <set>

#include "quantsel/combinatorics.hpp"
#include "quantsel/containment.hpp"
#include "quantsel/error.hpp"
#include "quantsel/john.hpp"
#include "quantsel/lp.hpp"
#include "quantsel/rng.hpp"

namespace quantsel {

namespace {

std::vector<VecQ> family_union_vertices(const std::vector<ConvexBody>& bodies) {
  std::vector<VecQ> pts;
  for (const auto& b : bodies)
    for (const auto& v : b.vertices()) pts.push_back(v.x);
  return pts;
}

// nonempty subsets of {0..d-1} ordered by cardinality then lexicographic
std::vector<std::vector<int>> halving_subsets(int d) {
  std::vector<std::vector<int>> subsets;
  for (int card = 1; card <= d; ++card)
    for_each_subset(d, card, [&](const std::vector<int>& c) { subsets.push_back(c); });
  return subsets;
}

Hyperplane halve_measures(const std::vector<MeasureFamily>& mus, int d) {
  if (d == 2) return ham_sandwich_2d(mus[0], mus[1]);
  // d == 1: exact weighted median of the single measure (plateau midpoint)
  const MeasureFamily& mu = mus[0];
  std::vector<std::pair<Rat, Rat>> intervals;  // (lo, hi) per body
  std::vector<Rat> cuts;
  for (const auto& b : mu.bodies) {
    Rat lo = b.coords()[0][0], hi = lo;
    for (const auto& v : b.coords()) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    intervals.emplace_back(lo, hi);
    cuts.push_back(lo);
    cuts.push_back(hi);
  }
  Rat target = mu.total() / 2;
  auto measure_leq = [&](const Rat& t) {
    Rat s(0);
    for (const auto& [lo, hi] : intervals)
      s += std::max(Rat(0), Rat(std::min(hi, t) - lo));
    return s;
  };
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  int lo_i = 0, hi_i = static_cast<int>(cuts.size()) - 1;
  while (hi_i - lo_i > 1) {
    int mid = (lo_i + hi_i) / 2;
    if (measure_leq(cuts[mid]) < target) lo_i = mid;
    else hi_i = mid;
  }
  // the measure is piecewise linear: solve on the located segment
  Rat f_lo = measure_leq(cuts[lo_i]);
  Rat f_hi = measure_leq(cuts[hi_i]);
  Rat t;
  if (f_lo == target) t = cuts[lo_i];
  else if (f_hi == target) t = cuts[hi_i];
  else {
    Rat slope = (f_hi - f_lo) / (cuts[hi_i] - cuts[lo_i]);
    if (sgn(slope) == 0) fail(ErrorCode::HalvingDegenerate, "flat measure segment");
    t = cuts[lo_i] + (target - f_lo) / slope;
  }
  return {{Rat(1)}, t};
}

// trim body to {side} of h, pushed strictly off the line, with exact volume
std::optional<ConvexBody> trim_survivor(const ConvexBody& body, const Hyperplane& h,
                                        bool upper, const Rat& threshold,
                                        const Rat& target) {
  auto piece = clip_body(body, h, upper);
  if (!piece) return std::nullopt;
  Rat vol = piece->volume();
  if (vol <= threshold) return std::nullopt;  // strict survivor rule
  // push the cut strictly off the line, keeping volume above the target
  Rat span(0);
  for (const auto& v : body.coords()) {
    Rat e = abs(h.eval(v));
    span = std::max(span, e);
  }
  Rat eta = span / 4;
  for (int it = 0; it < 300; ++it) {
    Hyperplane shifted = h;
    shifted.offset = upper ? Rat(h.offset + eta) : Rat(h.offset - eta);
    auto pushed = clip_body(body, shifted, upper);
    if (pushed && pushed->volume() > target)
      return trim_to_volume(*pushed, target);
    eta /= 2;
  }
  return std::nullopt;  // no slack (volume exactly at target); drop the body
}

}  // namespace

std::variant<SeparatorList, CounterexampleSubset> separability_check(
    const std::vector<ConvexBody>& family_hulls) {
  int m = static_cast<int>(family_hulls.size());
  if (m < 2) fail(ErrorCode::InvalidInput, "need >= 2 hulls");
  int d = family_hulls[0].dim();
  if (m != d + 1)
    fail(ErrorCode::InvalidInput, "separability check expects d+1 hulls");
  SeparatorList out;
  for (const auto& I : halving_subsets(d)) {
    std::vector<VecQ> u_side, v_side;
    for (int i = 0; i < m; ++i) {
      bool in_I = std::find(I.begin(), I.end(), i) != I.end();
      for (const auto& v : family_hulls[i].vertices())
        (in_I ? u_side : v_side).push_back(v.x);
    }
    auto sep = strict_separator(u_side, v_side);
    if (!sep) return CounterexampleSubset{I};
    out.separators.emplace_back(I, Hyperplane{sep->first, sep->second});
  }
  // success implies a uniform order type; re-verify
  auto r = family_order_type(family_hulls);
  if (std::holds_alternative<MixedWitness>(r))
    fail(ErrorCode::OptimizerFailed, "separators found but order type mixed (internal)");
  return out;
}

SameTypeCertificate same_type_refine(const std::vector<std::vector<ConvexBody>>& families,
                                     const Rat& alpha) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  if (sgn(alpha) <= 0 || alpha >= Rat(1, 2))
    fail(ErrorCode::InvalidInput, "alpha must be in (0, 1/2)");
  int d = families[0][0].dim();
  if (d != 1 && d != 2)
    fail(ErrorCode::Unsupported, "certified same-type refinement needs d <= 2");
  int m = static_cast<int>(families.size());
  if (m < d + 1) fail(ErrorCode::InvalidInput, "need >= d+1 families");

  SameTypeCertificate cert;
  // normalize on entry: shrink every body to the common minimum volume
  Rat rho(-1);
  for (const auto& fam : families) {
    if (fam.empty()) fail(ErrorCode::InvalidInput, "empty family");
    for (const auto& b : fam) {
      Rat v = b.volume();
      if (sgn(v) <= 0) fail(ErrorCode::InvalidInput, "bodies must be full-dimensional");
      if (rho < 0 || v < rho) rho = v;
    }
  }
  cert.rho = rho;
  std::vector<std::vector<ConvexBody>> cur(m);
  std::vector<std::vector<int>> parent(m);
  std::vector<Rat> fam_vol(m, rho);
  for (int i = 0; i < m; ++i)
    for (size_t j = 0; j < families[i].size(); ++j) {
      cur[i].push_back(trim_to_volume(families[i][j], rho));
      parent[i].push_back(static_cast<int>(j));
    }

  auto subsets = halving_subsets(d);
  for_each_subset(m, d + 1, [&](const std::vector<int>& active) {
    // equalize the active families' volumes
    Rat rho_cur = fam_vol[active[0]];
    for (int i : active) rho_cur = std::min(rho_cur, fam_vol[i]);
    for (int i : active) {
      if (fam_vol[i] == rho_cur) continue;
      for (auto& b : cur[i]) b = trim_to_volume(b, rho_cur);
      fam_vol[i] = rho_cur;
    }
    for (const auto& I : subsets) {
      for (int i : active)
        if (cur[i].empty())
          fail(ErrorCode::HalvingDegenerate, "a family emptied out");
      std::vector<MeasureFamily> mus;
      for (int p = 0; p < d; ++p) {
        MeasureFamily mf;
        mf.bodies = cur[active[p]];
        mf.weights.assign(cur[active[p]].size(), rho_cur);
        mus.push_back(std::move(mf));
      }
      Hyperplane h = halve_measures(mus, d);
      Rat threshold = alpha * rho_cur;
      Rat target = alpha * rho_cur;
      // choose the big side for the last active family
      int plus_count = 0, minus_count = 0;
      for (const auto& b : cur[active[d]]) {
        auto up = clip_body(b, h, true);
        auto dn = clip_body(b, h, false);
        if (up && up->volume() > threshold) ++plus_count;
        if (dn && dn->volume() > threshold) ++minus_count;
      }
      bool last_takes_upper = plus_count >= minus_count;
      for (int p = 0; p <= d; ++p) {
        bool in_I = std::find(I.begin(), I.end(), p) != I.end();
        bool upper = in_I ? !last_takes_upper : last_takes_upper;
        int fi = active[p];
        std::vector<ConvexBody> next;
        std::vector<int> next_parent;
        for (size_t bi = 0; bi < cur[fi].size(); ++bi) {
          auto t = trim_survivor(cur[fi][bi], h, upper, threshold, target);
          if (t) {
            next.push_back(std::move(*t));
            next_parent.push_back(parent[fi][bi]);
          }
        }
        cur[fi] = std::move(next);
        parent[fi] = std::move(next_parent);
        fam_vol[fi] = target;
      }
      // record the separator oriented so the I-side families are below
      Hyperplane sep = h;
      bool i_side_upper = !last_takes_upper;
      if (i_side_upper) {
        sep.normal = scale(h.normal, Rat(-1));
        sep.offset = -h.offset;
      }
      std::vector<int> global_I;
      for (int p : I) global_I.push_back(active[p]);
      cert.separators.emplace_back(global_I, sep);
      rho_cur = target;
    }
  });

  cert.trimmed = cur;
  cert.parent = parent;
  cert.final_volume = fam_vol[0];
  for (const Rat& v : fam_vol) cert.final_volume = std::min(cert.final_volume, v);
  for (int i = 0; i < m; ++i)
    if (cur[i].empty()) fail(ErrorCode::HalvingDegenerate, "a family emptied out");
  std::vector<ConvexBody> hulls;
  for (int i = 0; i < m; ++i) hulls.push_back(hull_of_union(cur[i]));
  auto r = family_order_type(hulls);
  if (std::holds_alternative<MixedWitness>(r))
    fail(ErrorCode::OptimizerFailed, "refined families have mixed order type (internal)");
  cert.order_type = std::get<OrderType>(r);
  return cert;
}

FractionalHellyResult fractional_helly_search(const std::vector<ConvexBody>& bodies,
                                              int k, const Rat& volume_floor,
                                              uint64_t seed) {
  int n = static_cast<int>(bodies.size());
  if (n == 0 || k < 1 || k > n) fail(ErrorCode::InvalidInput, "bad tuple size");
  int d = bodies[0].dim();
  Rat floor_slack = volume_floor * Rat(9999, 10000);

  std::vector<VecQ> cloud;
  std::vector<std::vector<int>> cloud_tuple;
  std::set<std::vector<std::string>> seen;
  if (binomial(n, k) > Rat(100000))
    fail(ErrorCode::Unsupported, "tuple space too large for exhaustive scan");
  for_each_subset(n, k, [&](const std::vector<int>& comb) {
    std::vector<ConvexBody> tup;
    for (int i : comb) tup.push_back(bodies[i]);
    auto inter = intersect_bodies(tup);
    if (!inter) return;
    Ellipsoid e;
    try {
      e = john_ellipsoid(*inter);
    } catch (const Error&) {
      return;
    }
    if (!ellipsoid_volume_at_least(e, floor_slack)) return;
    VecQ enc = encode(e).coords;
    std::vector<std::string> key;
    for (const Rat& v : enc) key.push_back(rat_to_string(v));
    if (seen.insert(key).second) {
      cloud.push_back(std::move(enc));
      cloud_tuple.push_back(comb);
    }
  });
  if (cloud.empty()) fail(ErrorCode::NotFound, "no qualifying tuple");

  std::vector<VecQ> candidates = cloud;
  candidates.push_back(vertex_centroid(cloud));
  Rng rng(seed, "fhelly");
  for (int t = 0; t < 16 && cloud.size() > 1; ++t) {
    VecQ z(cloud[0].size(), Rat(0));
    Rat total(0);
    std::vector<Rat> w(cloud.size());
    for (size_t i = 0; i < cloud.size(); ++i) {
      w[i] = frac(1 + static_cast<long>(rng.next_below(8)), 8);
      total += w[i];
    }
    for (size_t i = 0; i < cloud.size(); ++i)
      for (size_t c = 0; c < z.size(); ++c) z[c] += cloud[i][c] * w[i] / total;
    candidates.push_back(std::move(z));
  }

  FractionalHellyResult best;
  int best_count = -1;
  for (const auto& cand : candidates) {
    Ellipsoid e;
    try {
      e = decode(ParamPoint{cand}, d);
    } catch (const Error&) {
      continue;
    }
    if (!ellipsoid_volume_at_least(e, floor_slack)) continue;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (contains_ellipsoid(bodies[i].hull().hrep, e)) members.push_back(i);
    if (static_cast<int>(members.size()) > best_count) {
      best_count = static_cast<int>(members.size());
      best.subfamily = members;
      best.witness = e;
    }
  }
  if (best_count < 1) fail(ErrorCode::NotFound, "no candidate inside any body");
  return best;
}

HomogeneousResult homogeneous_selection_bruteforce(
    const std::vector<std::vector<ConvexBody>>& families,
    const Rat& target_fraction) {
  if (families.empty()) fail(ErrorCode::InvalidInput, "no families");
  for (const auto& f : families) {
    if (f.empty()) fail(ErrorCode::InvalidInput, "empty family");
    if (f.size() > 8)
      fail(ErrorCode::InvalidInput, "brute force supports family sizes <= 8");
  }
  int m = static_cast<int>(families.size());
  std::vector<int> sizes(m);
  for (int i = 0; i < m; ++i) {
    Rat s = target_fraction * Rat(static_cast<long>(families[i].size()));
    sizes[i] = std::max(1, static_cast<int>(rat_ceil(s).get_si()));
    if (sizes[i] > static_cast<int>(families[i].size()))
      fail(ErrorCode::InvalidInput, "target fraction exceeds family size");
  }
  // all subfamily choices, lexicographic product order
  std::vector<std::vector<std::vector<int>>> options(m);
  for (int i = 0; i < m; ++i)
    for_each_subset(static_cast<int>(families[i].size()), sizes[i],
                    [&](const std::vector<int>& c) { options[i].push_back(c); });

  std::vector<int> cursor(m, 0);
  for (;;) {
    // intersect conv(transversal) over every transversal of the candidate
    std::optional<ConvexBody> inter;
    bool empty = false;
    std::vector<int> tv(m, 0);
    for (;;) {
      std::vector<ConvexBody> pick;
      for (int i = 0; i < m; ++i)
        pick.push_back(families[i][options[i][cursor[i]][tv[i]]]);
      ConvexBody hull = hull_of_union(pick);
      if (!inter) {
        inter = hull;
      } else {
        auto next = intersect_bodies({*inter, hull});
        if (!next) { empty = true; break; }
        inter = std::move(*next);
      }
      int i = m - 1;
      while (i >= 0 && tv[i] + 1 == sizes[i]) { tv[i] = 0; --i; }
      if (i < 0) break;
      ++tv[i];
    }
    if (!empty && inter) {
      try {
        HomogeneousResult out;
        out.witness = john_ellipsoid(*inter);
        for (int i = 0; i < m; ++i) out.subfamilies.push_back(options[i][cursor[i]]);
        return out;
      } catch (const Error&) {
        // lower-dimensional intersection; keep searching
      }
    }
    int i = m - 1;
    while (i >= 0 && cursor[i] + 1 == static_cast<int>(options[i].size())) {
      cursor[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cursor[i];
  }
  fail(ErrorCode::NotFound, "no homogeneous subfamilies at this fraction");
}

}  // namespace quantsel
