#pragma once

// Test-only independent oracles. These deliberately avoid the library's
// implementation paths for the quantities they check.

#include <cmath>

#include "wigmod/module_space.hpp"
#include "wigmod/numerics.hpp"

namespace wigtest {

using namespace wigmod;

/// Gauss-Jordan inverse with partial pivoting (test-only; desk scale).
inline CMatrix gj_inverse(CMatrix a) {
  const int n = a.rows();
  CMatrix inv = CMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
    if (std::abs(a.at(piv, col)) == 0.0)
      throw std::runtime_error("gj_inverse: singular");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
    const cplx p = a.at(col, col);
    for (int c = 0; c < n; ++c) {
      a.at(col, c) /= p;
      inv.at(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = a.at(r, col);
      if (f == cplx{}) continue;
      for (int c = 0; c < n; ++c) {
        a.at(r, c) -= f * a.at(col, c);
        inv.at(r, c) -= f * inv.at(col, c);
      }
    }
  }
  return inv;
}

/// Denman-Beavers iteration for the principal square root of a PSD
/// matrix — the stated independent oracle for abs_elem.
inline CMatrix denman_beavers_sqrt(const CMatrix& p, int iters = 60) {
  CMatrix x = p;
  CMatrix y = CMatrix::identity(p.rows());
  for (int k = 0; k < iters; ++k) {
    const CMatrix xi = gj_inverse(x);
    const CMatrix yi = gj_inverse(y);
    const CMatrix xn = 0.5 * (x + yi);
    const CMatrix yn = 0.5 * (y + xi);
    if (dist_fro(xn, x) <= 1e-15 * (1.0 + x.fro_norm())) {
      x = xn;
      break;
    }
    x = xn;
    y = yn;
  }
  return x;
}

/// SVD-rank oracle on the 2 x N stacked pair: singular values from the
/// eigenvalues of the 2 x 2 Gram matrix, closed form.
inline bool stacked_rank_le_1(const CMatrix& a, const CMatrix& b, double tol) {
  const cplx gaa = fro_inner(a, a);
  const cplx gab = fro_inner(a, b);
  const cplx gbb = fro_inner(b, b);
  const double tr = gaa.real() + gbb.real();
  const double det =
      gaa.real() * gbb.real() - std::norm(gab);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  const double mu1 = 0.5 * (tr + disc);  // sigma_1^2
  const double mu2 = 0.5 * (tr - disc);  // sigma_2^2
  if (mu1 <= 0.0) return true;           // both vanish
  return std::sqrt(std::max(mu2, 0.0)) <= tol * std::sqrt(mu1);
}

inline CMatrix random_hermitian(int n, Rng& rng) {
  return CMatrix::gaussian(n, n, rng).hermitized();
}

inline CMatrix random_psd(int n, Rng& rng) {
  const CMatrix b = CMatrix::gaussian(n, n, rng);
  return (b.adjoint() * b).hermitized();
}

}  // namespace wigtest
