#include "wigmod/wigner.hpp"

#include <cmath>

namespace wigmod {

ModVec WignerFactorization::apply_u(const ModVec& f) const {
  if (!(f.space == space)) fail(Errc::shape_mismatch, "apply_u");
  if (conjugate_linear) return {space, f.mat.conj() * w};
  return {space, f.mat * w};
}

ModVec WignerFactorization::apply_u_inverse(const ModVec& f) const {
  if (!(f.space == space)) fail(Errc::shape_mismatch, "apply_u_inverse");
  if (conjugate_linear) return {space, f.mat.conj() * w.transpose()};
  return {space, f.mat * w.adjoint()};
}

VerificationReport verify_instance(const TransformOracle& t,
                                   const std::vector<ModVec>& samples,
                                   double tol) {
  VerificationReport rep;
  rep.tol = tol;
  std::vector<ModVec> images;
  images.reserve(samples.size());
  for (const auto& f : samples) images.push_back(t.eval(f));

  const int n = static_cast<int>(samples.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const CMatrix lhs = abs_elem(inner(images[i], images[j]));
      const CMatrix rhs = abs_elem(inner(samples[i], samples[j]));
      const double scale =
          std::max(mod_norm(samples[i]) * mod_norm(samples[j]), 1e-300);
      const double res = dist_fro(lhs, rhs) / scale;
      ++rep.pair_count;
      rep.max_residual = std::max(rep.max_residual, res);
      if (res > tol) rep.offending.emplace_back(i, j);
    }
  }
  rep.pass = rep.offending.empty();
  return rep;
}

namespace {

// Reads the right factor W of an A-linear map from its images of the
// first-row basis vectors: row j of W is the first row of U(E_1j).
// Returns the worst deviation of the raw map from f -> f W over the
// full basis (the A-linearity read-off residual).
CMatrix read_off_right_factor(
    ModuleSpace s, const std::function<ModVec(const ModVec&)>& raw,
    bool conjugate_linear, double& readoff_residual) {
  CMatrix w(s.m, s.m);
  for (int j = 0; j < s.m; ++j) {
    const ModVec img = raw(ModVec::basis(s, 0, j));
    for (int c = 0; c < s.m; ++c) w.at(j, c) = img.mat.at(0, c);
  }
  double worst = 0.0;
  for (int i = 0; i < s.d; ++i)
    for (int j = 0; j < s.m; ++j) {
      const ModVec e = ModVec::basis(s, i, j);
      const ModVec img = raw(e);
      const CMatrix expect =
          conjugate_linear ? e.mat.conj() * w : e.mat * w;
      worst = std::max(worst, dist_fro(img.mat, expect));
    }
  readoff_residual = worst;
  return w;
}

}  // namespace

cplx recover_phase(const TransformOracle& t, const WignerFactorization& u,
                   const ModVec& f, double tol) {
  const double fn = mod_norm(f);
  if (fn == 0.0) return {1.0, 0.0};
  const ModVec back = u.apply_u_inverse(t.eval(f));
  cplx lambda = tr_inner(back, f) / tr_inner(f, f);
  const double mod = std::abs(lambda);
  if (std::abs(mod - 1.0) > tol)
    fail(Errc::phase_inconsistent, "recovered phase is not unit modulus",
         std::abs(mod - 1.0));
  double resid2 = 0.0;
  for (std::size_t k = 0; k < f.mat.data().size(); ++k)
    resid2 += std::norm(back.mat.data()[k] - lambda * f.mat.data()[k]);
  if (std::sqrt(resid2) > tol * fn)
    fail(Errc::phase_inconsistent,
         "U^-1 T f is not a scalar multiple of f", std::sqrt(resid2) / fn);
  lambda /= mod;
  // Conjugate-linear branch: U^-1 T f = conj(phase) f.
  return u.conjugate_linear ? std::conj(lambda) : lambda;
}

WignerFactorization factorize(const TransformOracle& t,
                              const FactorizeOptions& opts) {
  const ModuleSpace s = t.space;
  auto [g, h] = make_unit_pair(s);

  JordanMap psi = build_jordan_map(t, opts.tol);
  const Parity parity = classify_parity(psi, opts.tol);
  if (parity == Parity::antiautomorphism && s.d > 1)
    fail(Errc::parity_contradiction,
         "antiautomorphism with d > 1 would force |a| = |a*| for all a");

  WignerFactorization out;
  out.space = s;
  out.parity = parity;
  out.conjugate_linear = (parity == Parity::antiautomorphism);
  out.residuals.welldef = psi.welldef_residual();

  const ModVec th = t.eval(h);
  auto raw = [&](const ModVec& f) {
    const ALinOp d_op =
        out.conjugate_linear ? dyad(g, f) : dyad(f, g);
    return op_apply(psi.apply(d_op), th);
  };
  out.w = read_off_right_factor(s, raw, out.conjugate_linear,
                                out.residuals.readoff);

  const double unit_res =
      dist_fro(out.w.adjoint() * out.w, CMatrix::identity(s.m));
  out.residuals.unitarity = unit_res;
  if (unit_res > opts.tol)
    fail(Errc::not_a_unitary, "extracted right factor is not unitary",
         unit_res);

  // Fresh seeded samples, separate from the construction basis.
  Rng rng(mix_seed(opts.sample_seed, {static_cast<std::uint64_t>(s.d),
                                      static_cast<std::uint64_t>(s.m),
                                      t.seed}));
  std::vector<ModVec> samples;
  samples.reserve(opts.samples);
  for (int i = 0; i < opts.samples; ++i)
    samples.push_back(ModVec::gaussian(s, rng));

  // Inner-product preservation: [Uf, Uf'] = [f, f'] on the linear
  // branch, [Uf, Uf'] = [f', f] on the conjugate-linear branch.
  const int uni_pairs = std::min<int>(8, static_cast<int>(samples.size()));
  for (int i = 0; i < uni_pairs; ++i)
    for (int j = 0; j < uni_pairs; ++j) {
      const CMatrix lhs = inner(out.apply_u(samples[i]), out.apply_u(samples[j]));
      const CMatrix rhs = out.conjugate_linear
                              ? inner(samples[j], samples[i])
                              : inner(samples[i], samples[j]);
      const double scale =
          std::max(mod_norm(samples[i]) * mod_norm(samples[j]), 1e-300);
      out.residuals.uni =
          std::max(out.residuals.uni, dist_fro(lhs, rhs) / scale);
    }

  for (const auto& f : samples) {
    const cplx phase = recover_phase(t, out, f, opts.tol);
    const ModVec tf = t.eval(f);
    const ModVec uf = out.apply_u(f);
    double resid2 = 0.0;
    for (std::size_t k = 0; k < f.mat.data().size(); ++k)
      resid2 +=
          std::norm(tf.mat.data()[k] - phase * uf.mat.data()[k]);
    out.residuals.reconstruction =
        std::max(out.residuals.reconstruction,
                 std::sqrt(resid2) / std::max(mod_norm(f), 1e-300));
    out.phase_samples.push_back(f);
    out.phases.push_back(phase);
  }
  return out;
}

cplx gauge_align(const CMatrix& w_ref, const CMatrix& w) {
  const cplx t = fro_inner(w, w_ref);
  const double mod = std::abs(t);
  if (mod == 0.0) return {1.0, 0.0};
  return t / mod;
}

}  // namespace wigmod
