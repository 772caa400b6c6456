#include "wigmod/module_space.hpp"

#include <cmath>

namespace wigmod {

ModVec operator+(const ModVec& f, const ModVec& g) {
  if (!(f.space == g.space)) fail(Errc::shape_mismatch, "ModVec operator+");
  return {f.space, f.mat + g.mat};
}

ModVec operator-(const ModVec& f, const ModVec& g) {
  if (!(f.space == g.space)) fail(Errc::shape_mismatch, "ModVec operator-");
  return {f.space, f.mat - g.mat};
}

ModVec operator*(cplx z, const ModVec& f) { return {f.space, z * f.mat}; }

ModVec alg_mul(const CMatrix& a, const ModVec& f) {
  if (a.rows() != f.space.d || a.cols() != f.space.d)
    fail(Errc::shape_mismatch, "alg_mul needs a d x d coefficient");
  return {f.space, a * f.mat};
}

CMatrix inner(const ModVec& f, const ModVec& g) {
  if (!(f.space == g.space)) fail(Errc::shape_mismatch, "inner");
  return f.mat * g.mat.adjoint();
}

cplx tr_inner(const ModVec& f, const ModVec& g) {
  if (!(f.space == g.space)) fail(Errc::shape_mismatch, "tr_inner");
  return fro_inner(f.mat, g.mat);  // tr(f g*) entrywise
}

double mod_norm(const ModVec& f) { return f.mat.fro_norm(); }

namespace {

// Flattened C-basis of the submodule generated by `gens`: all e_ij g_k,
// orthonormalized with two-pass MGS; near-dependent directions dropped.
std::vector<CMatrix> submodule_basis(ModuleSpace s,
                                     const std::vector<ModVec>& gens) {
  std::vector<CMatrix> basis;
  double scale = 0.0;
  for (const auto& g : gens) scale = std::max(scale, g.mat.fro_norm());
  if (scale == 0.0) return basis;
  const double drop = 1e-12 * scale;

  for (const auto& g : gens) {
    for (int i = 0; i < s.d; ++i)
      for (int j = 0; j < s.d; ++j) {
        // e_ij g places row j of g into row i.
        CMatrix cand(s.d, s.m);
        for (int c = 0; c < s.m; ++c) cand.at(i, c) = g.mat.at(j, c);
        if (cand.fro_norm() <= drop) continue;
        for (int pass = 0; pass < 2; ++pass)
          for (const auto& q : basis) cand -= fro_inner(cand, q) * q;
        const double nrm = cand.fro_norm();
        if (nrm <= drop) continue;
        cand *= cplx(1.0 / nrm, 0.0);
        basis.push_back(std::move(cand));
      }
  }
  return basis;
}

}  // namespace

ModVec submodule_project(const ModVec& f, const std::vector<ModVec>& generators) {
  for (const auto& g : generators)
    if (!(g.space == f.space)) fail(Errc::shape_mismatch, "submodule_project");
  CMatrix proj(f.space.d, f.space.m);
  for (const auto& q : submodule_basis(f.space, generators))
    proj += fro_inner(f.mat, q) * q;
  return {f.space, std::move(proj)};
}

ModularFamily modular_gram_schmidt(const std::vector<ModVec>& input) {
  ModularFamily fam;
  if (input.empty()) return fam;
  const ModuleSpace s = input.front().space;
  for (const auto& f : input)
    if (!(f.space == s)) fail(Errc::shape_mismatch, "modular_gram_schmidt");

  // Stage A: peel each input into the orthogonal complement of the
  // submodule generated so far.
  for (const auto& f : input) {
    const double fn = mod_norm(f);
    if (fn == 0.0) continue;
    ModVec g = f - submodule_project(f, fam.stage_vectors);
    if (mod_norm(g) <= kTolMod * fn) continue;  // numerically dependent
    fam.stage_vectors.push_back(std::move(g));
  }

  // Stage B: split [g, g] = sum lambda_n^2 e_n into minimal projections
  // and emit h_n = (1/lambda_n) e_n g, one unit vector per component.
  for (std::size_t gi = 0; gi < fam.stage_vectors.size(); ++gi) {
    const ModVec& g = fam.stage_vectors[gi];
    HermEig eig = herm_eig(inner(g, g));
    const double mu_max = eig.values.empty() ? 0.0 : eig.values.front();
    std::vector<CMatrix> rows;  // previously emitted rows (1/lambda) v* g
    for (int n = 0; n < static_cast<int>(eig.values.size()); ++n) {
      const double mu = eig.values[n];
      if (mu <= 1e-12 * mu_max || mu <= 0.0) break;  // descending order
      CMatrix v(s.d, 1);
      for (int i = 0; i < s.d; ++i) v.at(i, 0) = eig.vectors.at(i, n);
      CMatrix row = v.adjoint() * g.mat;  // 1 x m, norm lambda_n
      // Re-orthonormalize against sibling rows: exact minimal
      // projections instead of 1/lambda-amplified eigensolver dust.
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : rows) row -= fro_inner(row, q) * q;
      const double lam = row.fro_norm();
      if (lam <= 1e-12 * std::sqrt(mu_max)) continue;
      row *= cplx(1.0 / lam, 0.0);
      rows.push_back(row);
      fam.vectors.emplace_back(s, v * row);
      fam.source_index.push_back(static_cast<int>(gi));
      fam.lambda.push_back(std::sqrt(mu));
    }
  }
  return fam;
}

ModularCheck check_modular_orthonormal(const std::vector<ModVec>& family,
                                       double tol) {
  ModularCheck out;
  out.ok = true;
  const int n = static_cast<int>(family.size());
  double scale = 0.0;
  for (const auto& f : family) scale = std::max(scale, mod_norm(f));
  if (scale == 0.0) scale = 1.0;

  for (int i = 0; i < n; ++i) {
    const CMatrix gram = inner(family[i], family[i]);
    const double idem = dist_fro(gram * gram, gram);
    double rank_excess = 0.0;
    if (herm_defect(gram) <= tol) {
      HermEig eig = herm_eig(gram);
      if (eig.values.size() >= 2) rank_excess = std::abs(eig.values[1]);
    } else {
      rank_excess = 1.0;  // non-Hermitian self product: not a projection
    }
    const double absorb =
        dist_fro(alg_mul(gram, family[i]).mat, family[i].mat);
    out.max_idem = std::max(out.max_idem, idem);
    out.max_rank_excess = std::max(out.max_rank_excess, rank_excess);
    out.max_absorb = std::max(out.max_absorb, absorb);
    if ((idem > tol * scale * scale || rank_excess > tol * scale * scale ||
         absorb > tol * scale) &&
        out.offender < 0) {
      out.offender = i;
      out.ok = false;
    }
    for (int j = i + 1; j < n; ++j) {
      const double cross = inner(family[i], family[j]).fro_norm();
      out.max_cross = std::max(out.max_cross, cross);
      if (cross > tol * scale * scale && out.offender < 0) {
        out.offender = i;
        out.ok = false;
      }
    }
  }
  if (out.offender >= 0) out.ok = false;
  return out;
}

std::pair<ModVec, ModVec> make_unit_pair(ModuleSpace space) {
  if (space.m < space.d)
    fail(Errc::low_modular_dimension,
         "make_unit_pair: rank of [g, h] is at most m < d");
  CMatrix g(space.d, space.m);
  for (int i = 0; i < space.d; ++i) g.at(i, i) = 1.0;
  ModVec v{space, g};
  return {v, v};
}

}  // namespace wigmod
