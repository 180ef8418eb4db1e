#include "quantsel/ellipsoid.hpp"

#include <cmath>

#include "quantsel/error.hpp"

namespace quantsel {

Rat Ellipsoid::det_shape() const { return det(shape); }

double Ellipsoid::volume() const {
  return rat_to_double(det_shape()) * kappa(dim());
}

void Ellipsoid::validate() const {
  int d = dim();
  if (shape.rows != d || shape.cols != d)
    fail(ErrorCode::InvalidInput, "ellipsoid shape/center size mismatch");
  if (!is_positive_definite(shape))
    fail(ErrorCode::NotPositiveDefinite, "shape matrix not positive definite");
}

double kappa(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 3.141592653589793;
    case 3: return 4.0 * 3.141592653589793 / 3.0;
    default: {
      // kappa_d = pi^{d/2} / Gamma(d/2 + 1)
      return std::pow(3.141592653589793, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    }
  }
}

Rat kappa_lower(int d) {
  switch (d) {
    case 1: return Rat(2);
    case 2: return pi_lower();
    case 3: return 4 * pi_lower() / 3;
    default: fail(ErrorCode::Unsupported, "kappa bound only for d <= 3");
  }
}

bool ellipsoid_volume_at_least(const Ellipsoid& e, const Rat& target) {
  return kappa_lower(e.dim()) * e.det_shape() >= target;
}

int param_dim(int d) { return d * (d + 3) / 2; }

ParamPoint encode(const Ellipsoid& e) {
  int d = e.dim();
  ParamPoint p;
  p.coords.reserve(param_dim(d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) p.coords.push_back(e.shape.at(i, j));
  for (int i = 0; i < d; ++i) p.coords.push_back(e.center[i]);
  return p;
}

Ellipsoid decode(const ParamPoint& p, int d) {
  if (static_cast<int>(p.coords.size()) != param_dim(d))
    fail(ErrorCode::InvalidInput, "param point has wrong length");
  Ellipsoid e;
  e.shape = MatQ(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      e.shape.at(i, j) = p.coords[k];
      e.shape.at(j, i) = p.coords[k];
      ++k;
    }
  e.center.assign(p.coords.begin() + k, p.coords.end());
  if (!is_positive_definite(e.shape))
    fail(ErrorCode::NotPositiveDefinite, "decoded matrix not positive definite");
  return e;
}

Ellipsoid shrink(const Ellipsoid& e, const Rat& factor) {
  if (sgn(factor) <= 0 || factor > 1)
    fail(ErrorCode::InvalidInput, "shrink factor must be in (0,1]");
  Ellipsoid out = e;
  for (Rat& v : out.shape.a) v *= factor;
  return out;
}

Ellipsoid combination_decode(const std::vector<ParamPoint>& points,
                             const std::vector<Rat>& weights, int d) {
  if (points.empty() || points.size() != weights.size())
    fail(ErrorCode::InvalidInput, "combination: size mismatch");
  Rat sum(0);
  for (const Rat& w : weights) {
    if (sgn(w) < 0) fail(ErrorCode::InvalidInput, "negative weight");
    sum += w;
  }
  if (sum != 1) fail(ErrorCode::InvalidInput, "weights must sum to 1");
  VecQ acc(points[0].coords.size(), Rat(0));
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].coords.size() != acc.size())
      fail(ErrorCode::InvalidInput, "combination: mixed param dimensions");
    for (size_t j = 0; j < acc.size(); ++j) acc[j] += weights[i] * points[i].coords[j];
  }
  ParamPoint p{std::move(acc)};
  return decode(p, d);
}

VecQ rational_circle_point(const Rat& t) {
  Rat den = 1 + t * t;
  return {(1 - t * t) / den, 2 * t / den};
}

VecQ rational_sphere_point(const Rat& u, const Rat& v) {
  Rat den = 1 + u * u + v * v;
  return {2 * u / den, 2 * v / den, (1 - u * u - v * v) / den};
}

namespace {

std::vector<VecQ> unit_directions(int d) {
  std::vector<VecQ> dirs;
  if (d == 2) {
    const int k = 64;
    for (int i = 0; i < k; ++i) {
      double theta = -3.141592653589793 + 2.0 * 3.141592653589793 * (i + 0.5) / k;
      Rat t = rationalize(std::tan(theta / 2.0), 100000UL);
      dirs.push_back(rational_circle_point(t));
    }
    return dirs;
  }
  if (d == 3) {
    // Fibonacci sphere, rationalized through the stereographic chart
    const int k = 192;
    const double golden = 2.399963229728653;
    for (int i = 0; i < k; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / k;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = golden * i;
      double x = r * std::cos(phi), y = r * std::sin(phi);
      if (z < -0.999) continue;
      Rat u = rationalize(x / (1.0 + z), 10000UL);
      Rat v = rationalize(y / (1.0 + z), 10000UL);
      dirs.push_back(rational_sphere_point(u, v));
    }
    dirs.push_back({Rat(0), Rat(0), Rat(-1)});
    return dirs;
  }
  fail(ErrorCode::Unsupported, "inscribed polytopes only for d <= 3");
}

}  // namespace

InscribedPolytope inscribed_polytope(const Ellipsoid& e) {
  int d = e.dim();
  if (d == 1) {
    Rat a = e.shape.at(0, 0);
    std::vector<Point> ps = {Point({e.center[0] - a}), Point({e.center[0] + a})};
    return {ConvexBody(std::move(ps)), Rat(1), Rat(1)};
  }
  std::vector<VecQ> dirs = unit_directions(d);
  Rat factor_sq;
  if (d == 2) {
    // chord distance to the origin: |u+v|^2 / 4 for consecutive unit points
    int k = static_cast<int>(dirs.size());
    for (int i = 0; i < k; ++i) {
      VecQ s = add(dirs[i], dirs[(i + 1) % k]);
      Rat dsq = norm_sq(s) / 4;
      if (i == 0 || dsq < factor_sq) factor_sq = dsq;
    }
  } else {
    HullData h = convex_hull(dirs);
    bool first = true;
    for (const auto& f : h.hrep.halfspaces) {
      if (sgn(f.offset) <= 0)
        fail(ErrorCode::InvalidInput, "sphere sample hull misses the origin");
      Rat dsq = f.offset * f.offset / norm_sq(f.normal);
      if (first || dsq < factor_sq) { factor_sq = dsq; first = false; }
    }
  }
  std::vector<Point> verts;
  verts.reserve(dirs.size());
  for (const auto& u : dirs)
    verts.emplace_back(add(mat_vec(e.shape, u), e.center));
  Rat s = sqrt_lower(factor_sq, 64);
  return {ConvexBody(std::move(verts)), factor_sq, s};
}

bool log_concavity_holds(const std::vector<Ellipsoid>& parts,
                         const std::vector<Rat>& weights, const Ellipsoid& comb) {
  // det(comb)^q >= prod det_i^{p_i} with w_i = p_i / q
  Int q(1);
  for (const Rat& w : weights)
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), w.get_den().get_mpz_t());
  Rat lhs = pow_rat(comb.det_shape(), q.get_si());
  Rat rhs(1);
  for (size_t i = 0; i < parts.size(); ++i) {
    Rat p = weights[i] * Rat(q);
    rhs *= pow_rat(parts[i].det_shape(), p.get_num().get_si());
  }
  return lhs >= rhs;
}

bool contains_ellipsoid(const HRep& hrep, const Ellipsoid& e) {
  if (hrep.dim != e.dim()) fail(ErrorCode::InvalidInput, "dimension mismatch");
  for (const auto& h : hrep.halfspaces) {
    Rat slack = h.offset - dot(h.normal, e.center);
    if (sgn(slack) < 0) return false;
    Rat lhs = norm_sq(mat_vec(e.shape, h.normal));
    if (lhs > slack * slack) return false;
  }
  return true;
}

}  // namespace quantsel
