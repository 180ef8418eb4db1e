#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quantsel/linalg.hpp"
#include "quantsel/rational.hpp"

namespace quantsel {

template <typename T>
struct LpNum {
  static int sign(const T& x);
};

template <>
struct LpNum<Rat> {
  static int sign(const Rat& x) { return sgn(x); }
};

template <>
struct LpNum<double> {
  static int sign(double x) { return x > 1e-9 ? 1 : (x < -1e-9 ? -1 : 0); }
};

enum class LpRel { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// min objective . x  subject to  rows[i] . x  (rel[i])  rhs[i],
/// x[j] >= 0 unless free_var[j].
template <typename T>
struct LpProblem {
  int nvars = 0;
  std::vector<std::vector<T>> rows;
  std::vector<T> rhs;
  std::vector<LpRel> rel;
  std::vector<T> objective;  // empty => pure feasibility
  std::vector<bool> free_var;

  void add_row(std::vector<T> coeffs, LpRel r, T b) {
    rows.push_back(std::move(coeffs));
    rel.push_back(r);
    rhs.push_back(std::move(b));
  }
};

template <typename T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;
  T objective{};
};

/// Dense two-phase simplex with Bland's rule. Exact for T = Rat.
template <typename T>
LpResult<T> lp_solve(const LpProblem<T>& prob);

extern template LpResult<Rat> lp_solve<Rat>(const LpProblem<Rat>&);
extern template LpResult<double> lp_solve<double>(const LpProblem<double>&);

// ---- geometry-flavored wrappers (exact) ----

/// Barycentric weights expressing z in conv(points), if any.
std::optional<VecQ> point_in_hull_weights(const std::vector<VecQ>& points,
                                          const VecQ& z);

bool point_in_hull(const std::vector<VecQ>& points, const VecQ& z);

/// A point in the intersection of conv(parts[j]) over all j, if nonempty.
std::optional<VecQ> common_hull_point(const std::vector<std::vector<VecQ>>& parts);

/// Cheap floating-point screen for common_hull_point (false negatives only
/// on near-degenerate inputs; callers always confirm exactly).
bool common_hull_point_likely(const std::vector<std::vector<VecQ>>& parts);

/// Strict separator: (a, b) with <a,u> < b on U and <a,v> > b on V.
std::optional<std::pair<VecQ, Rat>> strict_separator(
    const std::vector<VecQ>& u_side, const std::vector<VecQ>& v_side);

/// Largest ball (center, radius) with <a_i,c> + r*norm_ub_i <= b_i.
/// norm_ub_i must be an upper bound on |a_i|_2, so the ball is certified.
std::optional<std::pair<VecQ, Rat>> inscribed_ball(
    const std::vector<VecQ>& normals, const std::vector<Rat>& offsets,
    const std::vector<Rat>& norm_ubs);

}  // namespace quantsel
