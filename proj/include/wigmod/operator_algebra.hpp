#pragma once

#include <functional>
#include <optional>
#include <string>

#include "wigmod/module_space.hpp"

namespace wigmod {

inline constexpr double kTolWig = 1e-7;  // Jordan-map pipeline checks
inline constexpr int kParityPairs = 16;
inline constexpr int kWelldefBatch = 8;

/// A-linear operator on the module, canonically a right multiplication
/// f -> f * rf by an m x m matrix.
struct ALinOp {
  ModuleSpace space;
  CMatrix rf;

  ALinOp() = default;
  ALinOp(ModuleSpace s, CMatrix r) : space(s), rf(std::move(r)) {
    if (rf.rows() != space.m || rf.cols() != space.m)
      fail(Errc::shape_mismatch, "ALinOp right factor must be m x m");
  }

  static ALinOp identity(ModuleSpace s) { return {s, CMatrix::identity(s.m)}; }
  static ALinOp zero(ModuleSpace s) { return {s, CMatrix(s.m, s.m)}; }
};

/// Dyad f (.) g: h -> [h, g] f. Right factor g* f.
ALinOp dyad(const ModVec& f, const ModVec& g);

ModVec op_apply(const ALinOp& s, const ModVec& f);
/// Composition S after R; right factors multiply in reverse order.
ALinOp op_compose(const ALinOp& s, const ALinOp& r);
ALinOp op_adjoint(const ALinOp& s);
ALinOp op_add(const ALinOp& s, const ALinOp& r);
ALinOp op_scale(cplx z, const ALinOp& s);
double op_norm(const ALinOp& s);

/// Spectral resolution S = sum lambda_k f_k (.) f_k of a self-adjoint
/// operator, with {f_k} modular orthonormal.
struct SpectralData {
  std::vector<double> lambdas;
  std::vector<ModVec> vectors;
};

/// Eigendecomposes the right factor and lifts each eigenvector x_k to
/// f_k = u x_k* (u the first standard column of C^d), so every
/// [f_k, f_k] is the same minimal projection u u*. Terms with
/// |lambda| <= tol * ||rf|| are dropped.
SpectralData spectral_resolution(const ALinOp& s, double tol = kTolMod);

/// Black-box transformation of the module. Evaluation must be pure;
/// surjectivity is assumed (IllDefined is the practical proxy).
struct TransformOracle {
  ModuleSpace space;
  std::function<ModVec(const ModVec&)> eval;
  std::string kind;          // metadata, empty for ad-hoc oracles
  std::uint64_t seed = 0;    // metadata
};

enum class Parity { automorphism, antiautomorphism, undetermined };

/// Real-linear map psi on Hermitian right factors induced by an oracle,
/// stored on the fixed Hermitian basis {E_kk} then (E_kl+E_lk)/sqrt2
/// then (i E_kl - i E_lk)/sqrt2, lexicographic; complexified as
/// Psi(S + iR) = psi(S) + i psi(R).
class JordanMap {
 public:
  JordanMap(ModuleSpace space, std::vector<double> psi_real,
            double welldef_residual);

  ModuleSpace space() const { return space_; }
  double welldef_residual() const { return welldef_residual_; }
  Parity parity() const { return parity_; }
  void set_parity(Parity p) { parity_ = p; }

  /// psi on a Hermitian right factor.
  CMatrix apply_hermitian(const CMatrix& h) const;
  /// Complexified action on an arbitrary right factor.
  CMatrix apply_rf(const CMatrix& x) const;
  ALinOp apply(const ALinOp& s) const;

  const std::vector<double>& psi_real() const { return psi_real_; }

 private:
  ModuleSpace space_;
  std::vector<CMatrix> basis_;    // cached Hermitian basis of right factors
  std::vector<double> psi_real_;  // (m^2) x (m^2) row-major, basis coords
  double welldef_residual_ = 0.0;
  Parity parity_ = Parity::undetermined;
};

/// Fixed Hermitian basis of m x m right factors (orthonormal for the
/// real trace form).
std::vector<CMatrix> hermitian_basis(int m);

/// Builds psi from spectral resolutions of the Hermitian basis, mapping
/// each term (lambda, f) to lambda * dyad(T f, T f), then measures how
/// far alternative decompositions S = sum mu_l g_l (.) g_l (no modular
/// orthonormality) land from psi(S). Throws IllDefined when that
/// residual exceeds tol — the oracle violates the modulus condition.
JordanMap build_jordan_map(const TransformOracle& t, double tol = kTolWig,
                           std::uint64_t probe_seed = 0x77656c64);

/// Herstein dichotomy as a numerical classification: on seeded operator
/// pairs, compare Psi(S o R) against Psi(S) o Psi(R) and Psi(R) o Psi(S).
/// The Jordan identity must hold either way. Ties classify as
/// automorphism (commutative degenerate case m = 1).
Parity classify_parity(JordanMap& psi, double tol = kTolWig,
                       std::uint64_t probe_seed = 0x70617269,
                       int pairs = kParityPairs);

}  // namespace wigmod
