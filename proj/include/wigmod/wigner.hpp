#pragma once

#include "wigmod/operator_algebra.hpp"

namespace wigmod {

/// Result of checking |[Tf, Tf']| = |[f, f']| over a sample set.
struct VerificationReport {
  double max_residual = 0.0;
  int pair_count = 0;
  bool pass = false;
  double tol = 0.0;
  std::vector<std::pair<int, int>> offending;  // sample index pairs
};

/// Recovered transformation: Tf = phase(f) * U f with U either a right
/// multiplication (linear branch) or f -> conj(f) * W (conjugate-linear
/// branch, d = 1 only).
struct WignerFactorization {
  ModuleSpace space;
  Parity parity = Parity::undetermined;
  bool conjugate_linear = false;
  CMatrix w;  // unitary right factor of U

  std::vector<ModVec> phase_samples;
  std::vector<cplx> phases;  // unit modulus, aligned with phase_samples

  struct Residuals {
    double welldef = 0.0;         // from the Jordan map
    double unitarity = 0.0;       // ||W* W - I||
    double readoff = 0.0;         // raw map vs right multiplication, basis
    double uni = 0.0;             // [Uf, Uf'] vs [f, f'] (or [f', f])
    double reconstruction = 0.0;  // max ||Tf - phase * U f|| / ||f||
  } residuals;

  ModVec apply_u(const ModVec& f) const;
  /// Inverse of U (equals the adjoint; U is (A-)unitary).
  ModVec apply_u_inverse(const ModVec& f) const;
};

struct FactorizeOptions {
  int samples = 32;              // fresh verification vectors
  double tol = kTolWig;
  std::uint64_t sample_seed = 0x66726573;  // fresh-sample stream salt
};

/// Checks the modulus condition over all sample pairs (diagonal
/// included); residuals are relative to ||f|| * ||f'||. Failures are
/// reported, never thrown.
VerificationReport verify_instance(const TransformOracle& t,
                                   const std::vector<ModVec>& samples,
                                   double tol);

/// The constructive engine: unit pair, Jordan map, parity, read-off of
/// the unitary right factor from f -> Psi(f (.) g) Th (automorphism) or
/// f -> Psi(g (.) f) Th (antiautomorphism, d = 1), then per-sample
/// phase recovery. Throws IllDefined, ParityContradiction (anti with
/// d > 1), NotAUnitary, PhaseInconsistent.
WignerFactorization factorize(const TransformOracle& t,
                              const FactorizeOptions& opts = {});

/// Phase of one vector against a recovered factorization:
/// lambda = tr_inner(U^-1 T f, f) / tr_inner(f, f), asserted unit
/// modulus within tol and renormalized; f = 0 yields 1.
cplx recover_phase(const TransformOracle& t, const WignerFactorization& u,
                   const ModVec& f, double tol = kTolWig);

/// Gauge scalar aligning a recovered right factor with a reference:
/// tr(W_ref* W) normalized to unit modulus (factorizations agree up to
/// one global unit scalar).
cplx gauge_align(const CMatrix& w_ref, const CMatrix& w);

}  // namespace wigmod
