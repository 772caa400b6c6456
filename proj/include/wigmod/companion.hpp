#pragma once

#include <functional>
#include <optional>
#include <string>

#include "wigmod/numerics.hpp"
#include "wigmod/wigner.hpp"

namespace wigmod {

/// Black-box map on the trivial module over M_d(C).
struct CstarOracle {
  int d = 1;
  std::function<CMatrix(const CMatrix&)> eval;
  std::string kind;
  std::uint64_t seed = 0;
  /// S with Phi(S) = I when the producer can supply one; hash-phase
  /// generators cannot (the phase at S depends on S's own bytes).
  std::optional<CMatrix> identity_preimage;
};

/// Recovered Phi(A) = phase(A) * A * U. U = Phi(I) is pinned: this
/// factorization has no gauge freedom.
struct CstarFactorization {
  int d = 1;
  CMatrix u;
  std::vector<CMatrix> phase_samples;
  std::vector<cplx> phases;  // unit modulus
  struct Residuals {
    double unitarity = 0.0;       // max of ||U*U - I||, ||UU* - I||
    double reconstruction = 0.0;  // max ||Phi(A) - eps(A) A U|| / ||A||
  } residuals;
};

/// Diagnostics for the induced map psi(A*A - B*B) =
/// Phi(A)*Phi(A) - Phi(B)*Phi(B).
struct CstarPsiCheck {
  double welldef_residual = 0.0;   // across unitary-mixed decompositions
  double psi_identity_projection = 0.0;  // ||psi(I)^2 - psi(I)||
  double psi_identity_distance = 0.0;    // ||psi(I) - I||
  double preimage_residual = 0.0;  // ||psi(S*S) - I|| when a preimage is known
};

VerificationReport cstar_verify(const CstarOracle& phi,
                                const std::vector<CMatrix>& samples,
                                double tol);

CstarPsiCheck cstar_psi_check(const CstarOracle& phi,
                              std::uint64_t probe_seed = 0x63737472,
                              int pairs = 8);

CstarFactorization cstar_factorize(const CstarOracle& phi,
                                   const std::vector<CMatrix>& samples,
                                   double tol = kTolWig);

/// Black-box map on a finite-dimensional real Hilbert space.
struct RealOracle {
  int n = 1;
  std::function<std::vector<double>(const std::vector<double>&)> eval;
  std::string kind;
  std::uint64_t seed = 0;
};

/// Recovered Tx = sign(x) * U x with U orthogonal; gauge is the global
/// sign {+U, -U}.
struct RealFactorization {
  int n = 1;
  RMatrix u;
  std::vector<std::vector<double>> sign_samples;
  std::vector<double> signs;  // each exactly +1 or -1
  struct Residuals {
    double orthogonality = 0.0;   // ||U^T U - I||
    double reconstruction = 0.0;  // max ||Tx - sign * U x|| / ||x||
  } residuals;
};

VerificationReport real_verify(const RealOracle& t,
                               const std::vector<std::vector<double>>& samples,
                               double tol);

/// Builds U column-by-column from T's images of the standard basis,
/// chaining signs through T(e_ref + e_j); n = 1 is handled directly
/// (U = (1)). Throws SignChainBroken or NotOrthogonal on hypothesis
/// violations.
RealFactorization real_factorize(const RealOracle& t,
                                 const std::vector<std::vector<double>>& samples,
                                 double tol = kTolWig);

}  // namespace wigmod
