#include "quantsel/lp.hpp"

#include <type_traits>

#include "quantsel/error.hpp"

namespace quantsel {

namespace {

// Standard-form tableau: min c.x, A x = b, x >= 0, b >= 0.
template <typename T>
class Tableau {
public:
  Tableau(int m, int n) : m_(m), n_(n), a_(m, std::vector<T>(n + 1, T(0))) {}

  std::vector<std::vector<T>>& rows() { return a_; }
  int cols() const { return n_; }

  // Bland's rule simplex on the current basis. cost has size n_ (+0 constant).
  // Columns >= exclude_from never enter. Returns false when unbounded.
  bool run(const std::vector<T>& cost, std::vector<int>& basis,
           int exclude_from = -1) {
    if (exclude_from < 0) exclude_from = n_;
    // reduced costs recomputed from scratch each pivot (desk-scale sizes)
    for (;;) {
      std::vector<T> y = dual_prices(cost, basis);
      int enter = -1;
      for (int j = 0; j < exclude_from; ++j) {
        bool basic = false;
        for (int bi : basis)
          if (bi == j) { basic = true; break; }
        if (basic) continue;
        T red = cost[j];
        for (int i = 0; i < m_; ++i) red -= y[i] * a_[i][j];
        if (LpNum<T>::sign(red) < 0) { enter = j; break; }  // Bland: first
      }
      if (enter < 0) return true;  // optimal
      // ratio test on column `enter`
      int leave = -1;
      T best_ratio{};
      for (int i = 0; i < m_; ++i) {
        if (LpNum<T>::sign(a_[i][enter]) <= 0) continue;
        T ratio = a_[i][n_] / a_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
      basis[leave] = enter;
    }
  }

  void pivot(int row, int col) {
    T inv = T(1) / a_[row][col];
    for (int j = 0; j <= n_; ++j) a_[row][j] = a_[row][j] * inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row || LpNum<T>::sign(a_[i][col]) == 0) continue;
      T f = a_[i][col];
      for (int j = 0; j <= n_; ++j) a_[i][j] = a_[i][j] - f * a_[row][j];
    }
  }

  std::vector<T> dual_prices(const std::vector<T>& cost,
                             const std::vector<int>& basis) {
    // tableau kept in "basis = identity" form, so y_i = cost[basis[i]]
    std::vector<T> y(m_);
    for (int i = 0; i < m_; ++i) y[i] = cost[basis[i]];
    return y;
  }

  int m_, n_;
  std::vector<std::vector<T>> a_;
};

}  // namespace

template <typename T>
LpResult<T> lp_solve(const LpProblem<T>& prob) {
  const int nv = prob.nvars;
  const int m = static_cast<int>(prob.rows.size());
  std::vector<bool> free_var = prob.free_var;
  free_var.resize(nv, false);

  // column layout: for each var, one col (or two when free: x = x+ - x-),
  // then one slack/surplus col per inequality, then m artificials.
  std::vector<int> col_of(nv), neg_col_of(nv, -1);
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    col_of[j] = ncols++;
    if (free_var[j]) neg_col_of[j] = ncols++;
  }
  int slack_base = ncols;
  for (int i = 0; i < m; ++i)
    if (prob.rel[i] != LpRel::Eq) ++ncols;
  int art_base = ncols;
  ncols += m;

  Tableau<T> tab(m, ncols);
  auto& a = tab.rows();
  int slack_idx = slack_base;
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m; ++i) {
    T b = prob.rhs[i];
    int flip = LpNum<T>::sign(b) < 0 ? -1 : 1;
    for (int j = 0; j < nv; ++j) {
      T c = prob.rows[i][j];
      if (flip < 0) c = -c;
      a[i][col_of[j]] = c;
      if (neg_col_of[j] >= 0) a[i][neg_col_of[j]] = -c;
    }
    if (flip < 0) b = -b;
    a[i][ncols] = b;
    if (prob.rel[i] != LpRel::Eq) {
      T s = prob.rel[i] == LpRel::Le ? T(1) : T(-1);
      if (flip < 0) s = -s;
      a[i][slack_idx++] = s;
    }
    a[i][art_base + i] = T(1);
    basis[i] = art_base + i;
  }

  // phase 1: min sum of artificials
  std::vector<T> cost1(ncols, T(0));
  for (int i = 0; i < m; ++i) cost1[art_base + i] = T(1);
  if (!tab.run(cost1, basis))
    fail(ErrorCode::InvalidInput, "phase-1 unbounded (internal)");
  T phase1(0);
  for (int i = 0; i < m; ++i)
    if (basis[i] >= art_base) phase1 += a[i][ncols];
  LpResult<T> res;
  if (LpNum<T>::sign(phase1) > 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // pivot remaining zero-level artificials out where possible
  for (int i = 0; i < m; ++i) {
    if (basis[i] < art_base) continue;
    int enter = -1;
    for (int j = 0; j < art_base; ++j)
      if (LpNum<T>::sign(a[i][j]) != 0) { enter = j; break; }
    if (enter >= 0) {
      tab.pivot(i, enter);
      basis[i] = enter;
    }
    // else: redundant row; artificial stays basic at value 0, harmless
  }

  // phase 2
  std::vector<T> cost2(ncols, T(0));
  bool has_obj = !prob.objective.empty();
  if (has_obj) {
    for (int j = 0; j < nv; ++j) {
      cost2[col_of[j]] = prob.objective[j];
      if (neg_col_of[j] >= 0) cost2[neg_col_of[j]] = -prob.objective[j];
    }
    if (!tab.run(cost2, basis, art_base)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
  }

  res.status = LpStatus::Optimal;
  res.x.assign(nv, T(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= art_base) continue;
    for (int j = 0; j < nv; ++j) {
      if (basis[i] == col_of[j]) res.x[j] = res.x[j] + a[i][ncols];
      else if (basis[i] == neg_col_of[j]) res.x[j] = res.x[j] - a[i][ncols];
    }
  }
  res.objective = T(0);
  if (has_obj)
    for (int j = 0; j < nv; ++j)
      res.objective = res.objective + prob.objective[j] * res.x[j];
  return res;
}

template LpResult<Rat> lp_solve<Rat>(const LpProblem<Rat>&);
template LpResult<double> lp_solve<double>(const LpProblem<double>&);

std::optional<VecQ> point_in_hull_weights(const std::vector<VecQ>& points,
                                          const VecQ& z) {
  if (points.empty()) return std::nullopt;
  int n = static_cast<int>(points.size());
  int d = static_cast<int>(z.size());
  LpProblem<Rat> lp;
  lp.nvars = n;
  for (int k = 0; k < d; ++k) {
    std::vector<Rat> row(n);
    for (int i = 0; i < n; ++i) row[i] = points[i][k];
    lp.add_row(std::move(row), LpRel::Eq, z[k]);
  }
  lp.add_row(std::vector<Rat>(n, Rat(1)), LpRel::Eq, Rat(1));
  auto res = lp_solve(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  return res.x;
}

bool point_in_hull(const std::vector<VecQ>& points, const VecQ& z) {
  return point_in_hull_weights(points, z).has_value();
}

namespace {

template <typename T>
LpProblem<T> common_point_problem(const std::vector<std::vector<VecQ>>& parts) {
  int r = static_cast<int>(parts.size());
  int d = static_cast<int>(parts[0][0].size());
  std::vector<int> base(r);
  int nv = 0;
  for (int j = 0; j < r; ++j) {
    base[j] = nv;
    nv += static_cast<int>(parts[j].size());
  }
  LpProblem<T> lp;
  lp.nvars = nv;
  auto coeff = [](const Rat& q) {
    if constexpr (std::is_same_v<T, Rat>) return q;
    else return q.get_d();
  };
  for (int j = 0; j < r; ++j) {
    std::vector<T> row(nv, T(0));
    for (size_t i = 0; i < parts[j].size(); ++i) row[base[j] + i] = T(1);
    lp.add_row(std::move(row), LpRel::Eq, T(1));
  }
  for (int j = 1; j < r; ++j) {
    for (int k = 0; k < d; ++k) {
      std::vector<T> row(nv, T(0));
      for (size_t i = 0; i < parts[0].size(); ++i)
        row[base[0] + i] = coeff(parts[0][i][k]);
      for (size_t i = 0; i < parts[j].size(); ++i)
        row[base[j] + i] = coeff(-parts[j][i][k]);
      lp.add_row(std::move(row), LpRel::Eq, T(0));
    }
  }
  return lp;
}

}  // namespace

std::optional<VecQ> common_hull_point(const std::vector<std::vector<VecQ>>& parts) {
  for (const auto& p : parts)
    if (p.empty()) return std::nullopt;
  auto lp = common_point_problem<Rat>(parts);
  auto res = lp_solve(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  int d = static_cast<int>(parts[0][0].size());
  VecQ z(d, Rat(0));
  for (size_t i = 0; i < parts[0].size(); ++i)
    for (int k = 0; k < d; ++k) z[k] += res.x[i] * parts[0][i][k];
  return z;
}

bool common_hull_point_likely(const std::vector<std::vector<VecQ>>& parts) {
  for (const auto& p : parts)
    if (p.empty()) return false;
  auto lp = common_point_problem<double>(parts);
  auto res = lp_solve(lp);
  return res.status == LpStatus::Optimal;
}

std::optional<std::pair<VecQ, Rat>> strict_separator(
    const std::vector<VecQ>& u_side, const std::vector<VecQ>& v_side) {
  if (u_side.empty() || v_side.empty()) return std::nullopt;
  int d = static_cast<int>(u_side[0].size());
  // vars: a (d, free), b (free)
  LpProblem<Rat> lp;
  lp.nvars = d + 1;
  lp.free_var.assign(d + 1, true);
  for (const auto& u : u_side) {
    std::vector<Rat> row(d + 1);
    for (int k = 0; k < d; ++k) row[k] = u[k];
    row[d] = Rat(-1);
    lp.add_row(std::move(row), LpRel::Le, Rat(-1));
  }
  for (const auto& v : v_side) {
    std::vector<Rat> row(d + 1);
    for (int k = 0; k < d; ++k) row[k] = v[k];
    row[d] = Rat(-1);
    lp.add_row(std::move(row), LpRel::Ge, Rat(1));
  }
  auto res = lp_solve(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  VecQ a(res.x.begin(), res.x.begin() + d);
  return std::make_pair(a, res.x[d]);
}

std::optional<std::pair<VecQ, Rat>> inscribed_ball(
    const std::vector<VecQ>& normals, const std::vector<Rat>& offsets,
    const std::vector<Rat>& norm_ubs) {
  if (normals.empty()) return std::nullopt;
  int d = static_cast<int>(normals[0].size());
  // vars: c (d, free), r >= 0; maximize r  <=>  minimize -r
  LpProblem<Rat> lp;
  lp.nvars = d + 1;
  lp.free_var.assign(d + 1, false);
  for (int k = 0; k < d; ++k) lp.free_var[k] = true;
  lp.objective.assign(d + 1, Rat(0));
  lp.objective[d] = Rat(-1);
  for (size_t i = 0; i < normals.size(); ++i) {
    std::vector<Rat> row(d + 1);
    for (int k = 0; k < d; ++k) row[k] = normals[i][k];
    row[d] = norm_ubs[i];
    lp.add_row(std::move(row), LpRel::Le, offsets[i]);
  }
  auto res = lp_solve(lp);
  if (res.status != LpStatus::Optimal) return std::nullopt;
  VecQ c(res.x.begin(), res.x.begin() + d);
  return std::make_pair(c, res.x[d]);
}

}  // namespace quantsel
