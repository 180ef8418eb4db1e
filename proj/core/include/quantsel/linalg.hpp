#pragma once

#include <optional>
#include <vector>

#include "quantsel/rational.hpp"

namespace quantsel {

using VecQ = std::vector<Rat>;

/// Small dense rational matrix, row-major.
struct MatQ {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> a;

  MatQ() = default;
  MatQ(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

  Rat& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static MatQ identity(int n);
};

Rat dot(const VecQ& a, const VecQ& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ add(const VecQ& a, const VecQ& b);
VecQ scale(const VecQ& a, const Rat& s);
Rat norm_sq(const VecQ& a);
VecQ mat_vec(const MatQ& m, const VecQ& v);
MatQ mat_mul(const MatQ& a, const MatQ& b);

Rat det(MatQ m);  // by value: Gaussian elimination in place

/// Solves m x = rhs for square m; nullopt when singular.
std::optional<VecQ> solve(MatQ m, VecQ rhs);

std::optional<MatQ> inverse(const MatQ& m);

/// Rank of the matrix (rational Gauss).
int rank(MatQ m);

/// Dimension of the affine hull of a point set.
int affine_dim(const std::vector<VecQ>& pts);

/// Leading principal minors all positive (exact PD test for symmetric m).
bool is_positive_definite(const MatQ& m);

}  // namespace quantsel
