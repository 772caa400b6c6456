#include "wigmod/operator_algebra.hpp"

#include <cmath>

namespace wigmod {

ALinOp dyad(const ModVec& f, const ModVec& g) {
  if (!(f.space == g.space)) fail(Errc::shape_mismatch, "dyad");
  return {f.space, g.mat.adjoint() * f.mat};
}

ModVec op_apply(const ALinOp& s, const ModVec& f) {
  if (!(s.space == f.space)) fail(Errc::shape_mismatch, "op_apply");
  return {f.space, f.mat * s.rf};
}

ALinOp op_compose(const ALinOp& s, const ALinOp& r) {
  if (!(s.space == r.space)) fail(Errc::shape_mismatch, "op_compose");
  return {s.space, r.rf * s.rf};
}

ALinOp op_adjoint(const ALinOp& s) { return {s.space, s.rf.adjoint()}; }

ALinOp op_add(const ALinOp& s, const ALinOp& r) {
  if (!(s.space == r.space)) fail(Errc::shape_mismatch, "op_add");
  return {s.space, s.rf + r.rf};
}

ALinOp op_scale(cplx z, const ALinOp& s) { return {s.space, z * s.rf}; }

double op_norm(const ALinOp& s) { return s.rf.fro_norm(); }

SpectralData spectral_resolution(const ALinOp& s, double tol) {
  const double scale = s.rf.fro_norm();
  if (dist_fro(s.rf, s.rf.adjoint()) > tol * (scale > 0.0 ? scale : 1.0))
    fail(Errc::non_self_adjoint, "spectral_resolution", herm_defect(s.rf));

  SpectralData out;
  if (scale == 0.0) return out;
  HermEig eig = herm_eig(s.rf);
  const int m = s.space.m;
  for (int k = 0; k < m; ++k) {
    const double lam = eig.values[k];
    if (std::abs(lam) <= tol * scale) continue;
    // f_k = u x_k*: first row holds conj(x_k), the rest is zero.
    CMatrix f(s.space.d, m);
    for (int j = 0; j < m; ++j) f.at(0, j) = std::conj(eig.vectors.at(j, k));
    out.lambdas.push_back(lam);
    out.vectors.emplace_back(s.space, std::move(f));
  }
  return out;
}

std::vector<CMatrix> hermitian_basis(int m) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(m) * m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < m; ++k) basis.push_back(CMatrix::unit(m, m, k, k));
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      CMatrix b(m, m);
      b.at(k, l) = inv_sqrt2;
      b.at(l, k) = inv_sqrt2;
      basis.push_back(std::move(b));
    }
  for (int k = 0; k < m; ++k)
    for (int l = k + 1; l < m; ++l) {
      CMatrix b(m, m);
      b.at(k, l) = cplx(0.0, inv_sqrt2);
      b.at(l, k) = cplx(0.0, -inv_sqrt2);
      basis.push_back(std::move(b));
    }
  return basis;
}

namespace {

// Coordinates of a Hermitian matrix in the fixed basis (real since the
// basis is orthonormal for Re tr(X Y*) and both sides are Hermitian).
std::vector<double> hermitian_coords(const CMatrix& h,
                                     const std::vector<CMatrix>& basis) {
  std::vector<double> c(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    c[j] = fro_inner(h, basis[j]).real();
  return c;
}

CMatrix from_coords(const std::vector<double>& c,
                    const std::vector<CMatrix>& basis, int m) {
  CMatrix h(m, m);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (c[j] != 0.0) h += c[j] * basis[j];
  return h;
}

}  // namespace

JordanMap::JordanMap(ModuleSpace space, std::vector<double> psi_real,
                     double welldef_residual)
    : space_(space),
      basis_(hermitian_basis(space.m)),
      psi_real_(std::move(psi_real)),
      welldef_residual_(welldef_residual) {
  if (psi_real_.size() != basis_.size() * basis_.size())
    fail(Errc::shape_mismatch, "JordanMap coordinate matrix must be m^2 x m^2");
}

CMatrix JordanMap::apply_hermitian(const CMatrix& h) const {
  const auto c = hermitian_coords(h, basis_);
  const std::size_t n = basis_.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += psi_real_[i * n + j] * c[j];
    out[i] = s;
  }
  return from_coords(out, basis_, space_.m);
}

CMatrix JordanMap::apply_rf(const CMatrix& x) const {
  const CMatrix h = 0.5 * (x + x.adjoint());
  const CMatrix k = cplx(0.0, -0.5) * (x - x.adjoint());
  return apply_hermitian(h) + cplx(0.0, 1.0) * apply_hermitian(k);
}

ALinOp JordanMap::apply(const ALinOp& s) const {
  if (!(s.space == space_)) fail(Errc::shape_mismatch, "JordanMap::apply");
  return {space_, apply_rf(s.rf)};
}

JordanMap build_jordan_map(const TransformOracle& t, double tol,
                           std::uint64_t probe_seed) {
  const ModuleSpace s = t.space;
  const int m = s.m;
  const auto basis = hermitian_basis(m);
  const std::size_t n = basis.size();

  // psi on each basis element via its spectral resolution.
  std::vector<double> psi_real(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    SpectralData sd = spectral_resolution({s, basis[j]});
    CMatrix image(m, m);
    for (std::size_t k = 0; k < sd.lambdas.size(); ++k) {
      const ModVec tf = t.eval(sd.vectors[k]);
      image += sd.lambdas[k] * dyad(tf, tf).rf;
    }
    const auto coords = hermitian_coords(image, basis);
    for (std::size_t i = 0; i < n; ++i) psi_real[i * n + j] = coords[i];
  }
  JordanMap psi(s, std::move(psi_real), 0.0);

  // Well-definedness probe: alternative decompositions with no modular
  // orthonormality must land on the same image.
  double welldef = 0.0;
  Rng rng(mix_seed(probe_seed, {static_cast<std::uint64_t>(s.d),
                                static_cast<std::uint64_t>(s.m), t.seed}));
  for (int batch = 0; batch < kWelldefBatch; ++batch) {
    const int terms = 2 * m;
    CMatrix rf_s(m, m);
    CMatrix direct(m, m);
    for (int l = 0; l < terms; ++l) {
      const ModVec g = ModVec::gaussian(s, rng);
      const double mu = rng.gauss();
      rf_s += mu * dyad(g, g).rf;
      const ModVec tg = t.eval(g);
      direct += mu * dyad(tg, tg).rf;
    }
    const double scale = rf_s.fro_norm();
    if (scale == 0.0) continue;
    welldef = std::max(
        welldef, dist_fro(psi.apply_hermitian(rf_s.hermitized()), direct) / scale);
  }
  JordanMap out(s, psi.psi_real(), welldef);
  if (welldef > tol)
    fail(Errc::ill_defined,
         "oracle violates the modulus condition (psi not well defined)",
         welldef);
  return out;
}

Parity classify_parity(JordanMap& psi, double tol, std::uint64_t probe_seed,
                       int pairs) {
  if (psi.welldef_residual() > tol)
    fail(Errc::ill_defined, "classify_parity requires a well-defined map",
         psi.welldef_residual());
  const ModuleSpace s = psi.space();
  bool auto_ok = true, anti_ok = true;
  Rng rng(mix_seed(probe_seed, {static_cast<std::uint64_t>(s.d),
                                static_cast<std::uint64_t>(s.m)}));
  for (int k = 0; k < pairs; ++k) {
    const ALinOp a{s, CMatrix::gaussian(s.m, s.m, rng)};
    const ALinOp b{s, CMatrix::gaussian(s.m, s.m, rng)};
    const double scale = op_norm(a) * op_norm(b);
    const ALinOp lhs = psi.apply(op_compose(a, b));
    const ALinOp ab = op_compose(psi.apply(a), psi.apply(b));
    const ALinOp ba = op_compose(psi.apply(b), psi.apply(a));
    const double res_auto = dist_fro(lhs.rf, ab.rf);
    const double res_anti = dist_fro(lhs.rf, ba.rf);
    // Jordan identity holds under either parity; its failure means the
    // map is not a Jordan homomorphism at all.
    const ALinOp jordan_lhs =
        psi.apply(op_add(op_compose(a, b), op_compose(b, a)));
    const double res_jordan = dist_fro(jordan_lhs.rf, op_add(ab, ba).rf);
    if (res_jordan > tol * scale) {
      auto_ok = false;
      anti_ok = false;
      break;
    }
    if (res_auto > tol * scale) auto_ok = false;
    if (res_anti > tol * scale) anti_ok = false;
  }
  if (auto_ok) {
    psi.set_parity(Parity::automorphism);
    return Parity::automorphism;
  }
  if (anti_ok) {
    psi.set_parity(Parity::antiautomorphism);
    return Parity::antiautomorphism;
  }
  fail(Errc::parity_ambiguous,
       "map is neither a homomorphism nor an antihomomorphism");
}

}  // namespace wigmod
