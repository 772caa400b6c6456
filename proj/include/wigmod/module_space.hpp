#pragma once

#include "wigmod/numerics.hpp"

namespace wigmod {

inline constexpr double kTolMod = 1e-9;  // module-level checks, relative

/// The concrete Hilbert M_d(C)-module: d x m complex matrices with
/// generalized inner product [f, g] = f g*.
struct ModuleSpace {
  int d = 1;  // coefficient algebra is M_d(C)
  int m = 1;  // modular dimension of the space

  bool operator==(const ModuleSpace&) const = default;
};

/// Element of the module: a d x m matrix tagged with its space.
struct ModVec {
  ModuleSpace space;
  CMatrix mat;

  ModVec() = default;
  ModVec(ModuleSpace s, CMatrix x) : space(s), mat(std::move(x)) {
    if (mat.rows() != space.d || mat.cols() != space.m)
      fail(Errc::shape_mismatch, "ModVec shape does not match space");
  }

  static ModVec zero(ModuleSpace s) { return {s, CMatrix(s.d, s.m)}; }
  static ModVec basis(ModuleSpace s, int i, int j) {
    return {s, CMatrix::unit(s.d, s.m, i, j)};
  }
  static ModVec gaussian(ModuleSpace s, Rng& rng) {
    return {s, CMatrix::gaussian(s.d, s.m, rng)};
  }
};

ModVec operator+(const ModVec& f, const ModVec& g);
ModVec operator-(const ModVec& f, const ModVec& g);
ModVec operator*(cplx z, const ModVec& f);
/// Left action of the coefficient algebra: a.f with a d x d.
ModVec alg_mul(const CMatrix& a, const ModVec& f);

/// Generalized inner product [f, g] = f g* (a d x d algebra element).
CMatrix inner(const ModVec& f, const ModVec& g);

/// Scalar trace form tr [f, g]; the associated Hilbert-space norm.
cplx tr_inner(const ModVec& f, const ModVec& g);
double mod_norm(const ModVec& f);

/// Orthogonal projection of f onto the submodule generated by
/// `generators` (the C-span of all e_ij g_k). The residual f - proj is
/// modular-orthogonal to every generator.
ModVec submodule_project(const ModVec& f, const std::vector<ModVec>& generators);

/// Modular orthonormal family plus the provenance of each vector:
/// which orthogonalized stage vector it came from and its spectral
/// weight there.
struct ModularFamily {
  std::vector<ModVec> vectors;
  std::vector<int> source_index;     // per vector: index into stage_vectors
  std::vector<double> lambda;        // per vector: weight in sum lambda_k h_k
  std::vector<ModVec> stage_vectors; // pairwise modular-orthogonal g_i
};

/// Two-stage modular orthonormalization: sequential submodule projection
/// to pairwise-orthogonal stage vectors, then per-vector spectral
/// splitting of [g, g] into minimal projections. Zero and numerically
/// dependent inputs are dropped, not errored.
ModularFamily modular_gram_schmidt(const std::vector<ModVec>& input);

struct ModularCheck {
  bool ok = false;
  double max_cross = 0.0;     // ||[f_a, f_b]||, a != b
  double max_idem = 0.0;      // ||G^2 - G|| for G = [f, f]
  double max_rank_excess = 0.0;  // second-largest eigenvalue of [f, f]
  double max_absorb = 0.0;    // ||[f, f] f - f||
  int offender = -1;          // first failing vector, -1 if none
};

/// Validates pairwise vanishing products, minimal-projection self
/// products (Hermitian idempotent of numerical rank one) and the
/// absorbing identity [f, f] f = f.
ModularCheck check_modular_orthonormal(const std::vector<ModVec>& family,
                                       double tol = kTolMod);

/// Vectors g = h with [g, h] = I_d exactly (ones on the (i, i) slots).
/// Throws LowModularDimension when m < d: [g, h] then has rank < d.
std::pair<ModVec, ModVec> make_unit_pair(ModuleSpace space);

}  // namespace wigmod
