#include "wigmod/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wigmod {

CMatrix HermEig::reconstruct() const {
  const int n = vectors.rows();
  CMatrix lam(n, n);
  for (int i = 0; i < n; ++i) lam.at(i, i) = values[i];
  return vectors * lam * vectors.adjoint();
}

namespace {

double offdiag_norm(const CMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q). Columns p,q of a and v mix on the
// right, rows p,q of a on the left (conjugated).
void jacobi_rotate(CMatrix& a, CMatrix& v, int p, int q) {
  const cplx apq = a.at(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = apq / r;
  const double alpha = a.at(p, p).real();
  const double gamma = a.at(q, q).real();
  const double tau = (alpha - gamma) / (2.0 * r);
  // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
  const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                   (std::abs(tau) + std::sqrt(tau * tau + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const cplx s = (t * c) * phase;
  const cplx sc = std::conj(s);

  const int n = a.rows();
  for (int k = 0; k < n; ++k) {  // columns: A <- A*G
    const cplx akp = a.at(k, p);
    const cplx akq = a.at(k, q);
    a.at(k, p) = c * akp - sc * akq;
    a.at(k, q) = s * akp + c * akq;
  }
  for (int k = 0; k < n; ++k) {  // rows: A <- G^* A
    const cplx apk = a.at(p, k);
    const cplx aqk = a.at(q, k);
    a.at(p, k) = c * apk - s * aqk;
    a.at(q, k) = sc * apk + c * aqk;
  }
  for (int k = 0; k < n; ++k) {  // accumulate eigenvectors
    const cplx vkp = v.at(k, p);
    const cplx vkq = v.at(k, q);
    v.at(k, p) = c * vkp - sc * vkq;
    v.at(k, q) = s * vkp + c * vkq;
  }
  a.at(p, q) = 0.0;
  a.at(q, p) = 0.0;
  a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
  a.at(q, q) = cplx(a.at(q, q).real(), 0.0);
}

}  // namespace

HermEig herm_eig(const CMatrix& h, double tol_input) {
  if (h.rows() != h.cols()) fail(Errc::shape_mismatch, "herm_eig needs square");
  const double scale = h.fro_norm();
  if (dist_fro(h, h.adjoint()) > tol_input * (scale > 0.0 ? scale : 1.0))
    fail(Errc::non_hermitian, "herm_eig input fails Hermiticity check",
         herm_defect(h));

  const int n = h.rows();
  CMatrix a = h.hermitized();
  CMatrix v = CMatrix::identity(n);

  const double stop = 1e-15 * (scale > 0.0 ? scale : 1.0);
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (offdiag_norm(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a.at(p, q)) > 0.25 * stop / n) jacobi_rotate(a, v, p, q);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a.at(i, i).real() > a.at(j, j).real();
  });

  HermEig out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a.at(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
  }
  return out;
}

CMatrix psd_sqrt(const CMatrix& p, double tol_psd) {
  HermEig eig = herm_eig(p);
  const double scale = p.fro_norm();
  const int n = p.rows();
  CMatrix lam(n, n);
  for (int i = 0; i < n; ++i) {
    double x = eig.values[i];
    if (x < -tol_psd * (scale > 0.0 ? scale : 1.0))
      fail(Errc::not_psd, "psd_sqrt: negative eigenvalue", x);
    lam.at(i, i) = std::sqrt(x > 0.0 ? x : 0.0);
  }
  return (eig.vectors * lam * eig.vectors.adjoint()).hermitized();
}

CMatrix abs_elem(const CMatrix& a) {
  if (a.rows() != a.cols()) fail(Errc::shape_mismatch, "abs_elem needs square");
  return psd_sqrt(a.adjoint() * a);
}

namespace {

// Two-pass modified Gram-Schmidt on the columns; the positive column
// norms play the role of the R diagonal.
template <typename Mat, typename InnerFn, typename ScaleFn>
void mgs_columns(Mat& m, InnerFn col_inner, ScaleFn col_axpy) {
  const int n = m.cols();
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) {
        auto c = col_inner(m, j, k);  // <v_j, q_k>
        col_axpy(m, j, k, c);         // v_j -= c * q_k
      }
    double nrm = std::sqrt(std::abs(col_inner(m, j, j)));
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) /= nrm;
  }
}

}  // namespace

CMatrix random_unitary(int n, std::uint64_t seed) {
  if (n < 1) fail(Errc::invalid_spec, "random_unitary needs n >= 1");
  Rng rng(mix_seed(seed, {0x72756e69u}));  // salt: unitary stream
  CMatrix g = CMatrix::gaussian(n, n, rng);
  auto inner = [](const CMatrix& m, int j, int k) {
    cplx s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += m.at(i, j) * std::conj(m.at(i, k));
    return s;
  };
  auto axpy = [](CMatrix& m, int j, int k, cplx c) {
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) -= c * m.at(i, k);
  };
  mgs_columns(g, inner, axpy);
  return g;
}

RMatrix random_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) fail(Errc::invalid_spec, "random_orthogonal needs n >= 1");
  Rng rng(mix_seed(seed, {0x726f7274u}));  // salt: orthogonal stream
  RMatrix g = RMatrix::gaussian(n, n, rng);
  auto inner = [](const RMatrix& m, int j, int k) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i) s += m.at(i, j) * m.at(i, k);
    return s;
  };
  auto axpy = [](RMatrix& m, int j, int k, double c) {
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) -= c * m.at(i, k);
  };
  mgs_columns(g, inner, axpy);
  return g;
}

LinDep lin_dep_pair(const CMatrix& a, const CMatrix& b, double tol) {
  if (!a.same_shape(b)) fail(Errc::shape_mismatch, "lin_dep_pair");
  const double na = a.fro_norm();
  const double nb = b.fro_norm();
  LinDep out;
  if (na == 0.0) {
    out.kind = (nb == 0.0) ? LinDep::Kind::zero_pair : LinDep::Kind::independent;
    return out;
  }
  const cplx lambda = fro_inner(b, a) / (na * na);
  double resid2 = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    resid2 += std::norm(b.data()[k] - lambda * a.data()[k]);
  if (std::sqrt(resid2) <= tol * na) {
    out.kind = LinDep::Kind::dependent;
    out.ratio = lambda;
  }
  return out;
}

}  // namespace wigmod
