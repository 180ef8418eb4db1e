#include "quantsel/predicates.hpp"

#include "quantsel/error.hpp"

namespace quantsel {

int orientation(const std::vector<VecQ>& points) {
  int d = static_cast<int>(points[0].size());
  if (static_cast<int>(points.size()) != d + 1)
    fail(ErrorCode::InvalidInput, "orientation needs exactly d+1 points");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d)
      fail(ErrorCode::InvalidInput, "orientation: dimension mismatch");
  MatQ m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.at(j, i) = points[i][j] - points[d][j];
  return sgn(det(std::move(m)));
}

namespace {

template <typename F>
void for_each_subset(int m, int k, F&& fn) {
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    fn(comb);
    int i = k - 1;
    while (i >= 0 && comb[i] == m - k + i) --i;
    if (i < 0) return;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace

OrderType order_type_of(const std::vector<VecQ>& points) {
  int d = static_cast<int>(points[0].size());
  int m = static_cast<int>(points.size());
  if (m < d + 1) fail(ErrorCode::InvalidInput, "order type needs >= d+1 points");
  OrderType ot;
  for_each_subset(m, d + 1, [&](const std::vector<int>& comb) {
    std::vector<VecQ> sel;
    sel.reserve(d + 1);
    for (int i : comb) sel.push_back(points[i]);
    ot.signs[comb] = orientation(sel);
  });
  return ot;
}

std::variant<OrderType, MixedWitness> family_order_type(
    const std::vector<ConvexBody>& bodies) {
  int m = static_cast<int>(bodies.size());
  int d = bodies.empty() ? 0 : bodies[0].dim();
  if (m < d + 1) fail(ErrorCode::InvalidInput, "family order type needs >= d+1 bodies");
  OrderType ot;
  std::optional<MixedWitness> mixed;
  for_each_subset(m, d + 1, [&](const std::vector<int>& comb) {
    if (mixed) return;
    // vertex products are decisive: orientation is multilinear in each
    // argument, so extremes realize all signs
    std::vector<int> counts(d + 1), cur(d + 1, 0);
    for (int i = 0; i <= d; ++i)
      counts[i] = static_cast<int>(bodies[comb[i]].vertices().size());
    int seen_sign = 0;
    bool any = false;
    std::vector<int> first_sel;
    for (;;) {
      std::vector<VecQ> sel(d + 1);
      for (int i = 0; i <= d; ++i) sel[i] = bodies[comb[i]].vertices()[cur[i]].x;
      int s = orientation(sel);
      if (!any) {
        any = true;
        seen_sign = s;
        first_sel = cur;
      } else if (s != seen_sign) {
        MixedWitness w;
        w.subset = comb;
        w.selection_a = first_sel;
        w.selection_b = cur;
        w.sign_a = seen_sign;
        w.sign_b = s;
        mixed = std::move(w);
        return;
      }
      int i = d;
      while (i >= 0 && cur[i] + 1 == counts[i]) { cur[i] = 0; --i; }
      if (i < 0) break;
      ++cur[i];
    }
    ot.signs[comb] = seen_sign;
  });
  if (mixed) return *mixed;
  return ot;
}

bool point_in_simplex(const std::vector<VecQ>& simplex, const VecQ& z) {
  int d = static_cast<int>(z.size());
  if (static_cast<int>(simplex.size()) != d + 1)
    fail(ErrorCode::InvalidInput, "simplex needs d+1 points");
  // solve for barycentric coordinates
  MatQ m(d + 1, d + 1);
  VecQ rhs(d + 1);
  for (int j = 0; j <= d; ++j) {
    for (int i = 0; i < d; ++i) m.at(i, j) = simplex[j][i];
    m.at(d, j) = 1;
  }
  for (int i = 0; i < d; ++i) rhs[i] = z[i];
  rhs[d] = 1;
  auto lam = solve(std::move(m), std::move(rhs));
  if (!lam) return false;  // degenerate simplex
  for (const Rat& l : *lam)
    if (sgn(l) < 0) return false;
  return true;
}

}  // namespace quantsel
