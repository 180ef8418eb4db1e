#include "quantsel/john.hpp"

#include <cmath>
#include <vector>

#include "quantsel/error.hpp"

namespace quantsel {

namespace {

struct Facet {
  std::vector<double> a;
  double b;
};

// parameters: upper triangle of A (row-major), then center
struct Params {
  int d;
  std::vector<double> theta;

  int tri_size() const { return d * (d + 1) / 2; }
  int size() const { return tri_size() + d; }

  void matrix(std::vector<double>& m) const {  // d*d row-major
    m.assign(d * d, 0.0);
    int k = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        m[i * d + j] = theta[k];
        m[j * d + i] = theta[k];
        ++k;
      }
  }
  const double* center() const { return theta.data() + tri_size(); }
};

bool cholesky(const std::vector<double>& m, int d, std::vector<double>& l) {
  l.assign(d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m[i * d + j];
      for (int k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
      if (i == j) {
        if (s <= 1e-14) return false;
        l[i * d + i] = std::sqrt(s);
      } else {
        l[i * d + j] = s / l[j * d + j];
      }
    }
  }
  return true;
}

double logdet_from_chol(const std::vector<double>& l, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += std::log(l[i * d + i]);
  return 2.0 * s;
}

// inverse of symmetric PD matrix via Cholesky
void sym_inverse(const std::vector<double>& m, int d, std::vector<double>& inv) {
  std::vector<double> l;
  cholesky(m, d, l);
  inv.assign(d * d, 0.0);
  for (int col = 0; col < d; ++col) {
    std::vector<double> y(d, 0.0);
    y[col] = 1.0;
    for (int i = 0; i < d; ++i) {
      double s = y[i];
      for (int k = 0; k < i; ++k) s -= l[i * d + k] * y[k];
      y[i] = s / l[i * d + i];
    }
    for (int i = d - 1; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < d; ++k) s -= l[k * d + i] * y[k];
      y[i] = s / l[i * d + i];
    }
    for (int i = 0; i < d; ++i) inv[i * d + col] = y[i];
  }
}

// slacks s_i = b_i - <a_i, c> - |A a_i|; returns false when infeasible/not PD
bool slacks(const Params& p, const std::vector<Facet>& fs, std::vector<double>& s,
            std::vector<std::vector<double>>& Aa, std::vector<double>& norms) {
  int d = p.d;
  std::vector<double> m;
  p.matrix(m);
  std::vector<double> l;
  if (!cholesky(m, d, l)) return false;
  const double* c = p.center();
  s.resize(fs.size());
  Aa.resize(fs.size());
  norms.resize(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    Aa[i].assign(d, 0.0);
    for (int r = 0; r < d; ++r)
      for (int q = 0; q < d; ++q) Aa[i][r] += m[r * d + q] * fs[i].a[q];
    double n2 = 0.0, ac = 0.0;
    for (int r = 0; r < d; ++r) {
      n2 += Aa[i][r] * Aa[i][r];
      ac += fs[i].a[r] * c[r];
    }
    norms[i] = std::sqrt(n2);
    s[i] = fs[i].b - ac - norms[i];
    if (s[i] <= 0.0) return false;
  }
  return true;
}

double objective(const Params& p, const std::vector<Facet>& fs, double t,
                 bool& feasible) {
  int d = p.d;
  std::vector<double> s, norms, m, l;
  std::vector<std::vector<double>> Aa;
  if (!slacks(p, fs, s, Aa, norms)) { feasible = false; return 1e100; }
  feasible = true;
  p.matrix(m);
  cholesky(m, d, l);
  double f = -t * logdet_from_chol(l, d);
  for (double si : s) f -= std::log(si);
  return f;
}

void gradient(const Params& p, const std::vector<Facet>& fs, double t,
              std::vector<double>& g) {
  int d = p.d;
  int np = p.size();
  g.assign(np, 0.0);
  std::vector<double> s, norms, m, inv;
  std::vector<std::vector<double>> Aa;
  if (!slacks(p, fs, s, Aa, norms)) return;  // callers keep iterates feasible
  p.matrix(m);
  sym_inverse(m, d, inv);
  // -t d(logdet)/dA
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      double v = (i == j) ? inv[i * d + i] : 2.0 * inv[i * d + j];
      g[k++] -= t * v;
    }
  for (size_t fi = 0; fi < fs.size(); ++fi) {
    double invs = 1.0 / s[fi];
    std::vector<double> u(d);
    for (int r = 0; r < d; ++r) u[r] = Aa[fi][r] / std::max(norms[fi], 1e-300);
    k = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double dn = (i == j) ? u[i] * fs[fi].a[i]
                             : u[i] * fs[fi].a[j] + u[j] * fs[fi].a[i];
        g[k++] += invs * dn;  // d(-log s)/dA = (1/s) * dn/dA
      }
    for (int r = 0; r < d; ++r) g[p.tri_size() + r] += invs * fs[fi].a[r];
  }
}

// barrier path with BFGS inner loops; gradients are only evaluated at
// feasible iterates, the line search rejects infeasible trials
int bfgs_path(Params& p, const std::vector<Facet>& fs, int iter_cap) {
  int np = p.size();
  int used = 0;
  for (double t = 1.0; t < 2e10 && used < iter_cap; t *= 8.0) {
    std::vector<double> h(np * np, 0.0);  // inverse-Hessian estimate
    for (int i = 0; i < np; ++i) h[i * np + i] = 1.0;
    std::vector<double> g;
    gradient(p, fs, t, g);
    for (int it = 0; it < 60 && used < iter_cap; ++it) {
      ++used;
      std::vector<double> dir(np, 0.0);
      for (int i = 0; i < np; ++i)
        for (int j = 0; j < np; ++j) dir[i] += h[i * np + j] * g[j];
      double decr = 0.0;
      for (int i = 0; i < np; ++i) decr += g[i] * dir[i];
      if (decr <= 0) {  // reset to steepest descent
        dir = g;
        decr = 0.0;
        for (int i = 0; i < np; ++i) decr += g[i] * g[i];
        for (int i = 0; i < np; ++i) h[i * np + 0] = 0.0;
        for (int i = 0; i < np; ++i)
          for (int j = 0; j < np; ++j) h[i * np + j] = (i == j) ? 1.0 : 0.0;
      }
      if (decr < 1e-14) break;
      bool feasible = false;
      double f0 = objective(p, fs, t, feasible);
      double step = 1.0;
      Params trial = p;
      bool moved = false;
      for (int ls = 0; ls < 70; ++ls) {
        for (int i = 0; i < np; ++i) trial.theta[i] = p.theta[i] - step * dir[i];
        bool tf = false;
        double f1 = objective(trial, fs, t, tf);
        if (tf && f1 < f0 - 1e-4 * step * decr) {
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
      std::vector<double> gnew;
      gradient(trial, fs, t, gnew);
      // BFGS inverse update
      std::vector<double> sv(np), yv(np);
      for (int i = 0; i < np; ++i) {
        sv[i] = trial.theta[i] - p.theta[i];
        yv[i] = gnew[i] - g[i];
      }
      double sy = 0.0;
      for (int i = 0; i < np; ++i) sy += sv[i] * yv[i];
      if (sy > 1e-12) {
        std::vector<double> hy(np, 0.0);
        for (int i = 0; i < np; ++i)
          for (int j = 0; j < np; ++j) hy[i] += h[i * np + j] * yv[j];
        double yhy = 0.0;
        for (int i = 0; i < np; ++i) yhy += yv[i] * hy[i];
        for (int i = 0; i < np; ++i)
          for (int j = 0; j < np; ++j) {
            h[i * np + j] += ((sy + yhy) * sv[i] * sv[j]) / (sy * sy) -
                             (hy[i] * sv[j] + sv[i] * hy[j]) / sy;
          }
      }
      p = trial;
      g = std::move(gnew);
      double gn = 0.0;
      for (double v : g) gn += v * v;
      if (gn < 1e-16 * (1.0 + t * t)) break;
    }
  }
  return used;
}

Ellipsoid rationalize_params(const Params& p) {
  int d = p.d;
  Ellipsoid e;
  e.shape = MatQ(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Rat v = rationalize(p.theta[k++], 1000000UL);
      e.shape.at(i, j) = v;
      e.shape.at(j, i) = v;
    }
  e.center.resize(d);
  for (int i = 0; i < d; ++i)
    e.center[i] = rationalize(p.center()[i], 1000000UL);
  return e;
}

}  // namespace

bool john_volume_bound_holds(const Ellipsoid& e, const Rat& body_volume) {
  int d = e.dim();
  Rat dd = pow_rat(Rat(d), -d);
  Rat tol(9999, 10000);  // 1 - 1e-4
  return kappa_lower(d) * e.det_shape() >= dd * body_volume * tol;
}

Ellipsoid john_ellipsoid(const ConvexBody& body) {
  int d = body.dim();
  const HullData& h = body.hull();  // throws DegenerateHull when flat

  if (d == 1) {
    Rat lo = body.coords()[0][0], hi = lo;
    for (const auto& v : body.coords()) {
      if (v[0] < lo) lo = v[0];
      if (v[0] > hi) hi = v[0];
    }
    Ellipsoid e;
    e.shape = MatQ(1, 1);
    e.shape.at(0, 0) = (hi - lo) / 2;
    e.center = {(lo + hi) / 2};
    return e;
  }

  std::vector<Facet> fs;
  for (const auto& hs : h.hrep.halfspaces) {
    Facet f;
    f.b = rat_to_double(hs.offset);
    for (const Rat& v : hs.normal) f.a.push_back(rat_to_double(v));
    fs.push_back(std::move(f));
  }

  // strictly interior start: vertex centroid, ball scaled to fit
  Params p;
  p.d = d;
  p.theta.assign(p.size(), 0.0);
  VecQ c0q = vertex_centroid(body.coords());
  std::vector<double> c0(d);
  for (int i = 0; i < d; ++i) c0[i] = rat_to_double(c0q[i]);
  double r0 = 1e300;
  for (const auto& f : fs) {
    double n2 = 0, ac = 0;
    for (int i = 0; i < d; ++i) {
      n2 += f.a[i] * f.a[i];
      ac += f.a[i] * c0[i];
    }
    r0 = std::min(r0, (f.b - ac) / std::sqrt(n2));
  }
  if (!(r0 > 0))
    fail(ErrorCode::OptimizerFailed, "could not find interior start");
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) p.theta[k++] = (i == j) ? 0.5 * r0 : 0.0;
  for (int i = 0; i < d; ++i) p.theta[p.tri_size() + i] = c0[i];

  bfgs_path(p, fs, 500);

  Ellipsoid e = rationalize_params(p);
  if (!is_positive_definite(e.shape))
    fail(ErrorCode::OptimizerFailed, "rationalized shape not positive definite");
  Rat shrink_step(999999, 1000000);  // 1 - 1e-6
  for (int attempt = 0; attempt < 10; ++attempt) {
    if (contains_ellipsoid(h.hrep, e)) {
      if (!john_volume_bound_holds(e, body.volume()))
        fail(ErrorCode::OptimizerFailed, "inscribed ellipsoid below volume bound");
      return e;
    }
    e = shrink(e, shrink_step);
  }
  fail(ErrorCode::OptimizerFailed, "containment not certified after 10 shrink steps");
}

}  // namespace quantsel
