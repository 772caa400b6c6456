#pragma once

#include <optional>

#include "wigmod/cmatrix.hpp"

namespace wigmod {

// Tolerances shared across the numeric kernel. Relative unless noted.
inline constexpr double kTolEig = 1e-11;    // eigendecomposition contracts
inline constexpr double kTolInput = 1e-9;   // Hermiticity precondition
inline constexpr double kTolPsd = 1e-9;     // negative-eigenvalue clamp
inline constexpr int kMaxJacobiSweeps = 100;

/// Hermitian eigendecomposition result. Eigenvalues descending, ties kept
/// in first-occurrence column order after sweep convergence; columns of
/// `vectors` are the matching eigenvectors.
struct HermEig {
  std::vector<double> values;
  CMatrix vectors;

  CMatrix reconstruct() const;
};

/// Cyclic Jacobi for complex Hermitian matrices. Deterministic: fixed
/// sweep order (p < q lexicographic), no pivot search.
/// Throws NonHermitian if ||H - H*|| > tol_input * ||H||.
HermEig herm_eig(const CMatrix& h, double tol_input = kTolInput);

/// Unique PSD square root via eigendecomposition; eigenvalue dust in
/// [-tol_psd*||P||, 0) is clamped to zero. Throws NotPSD below that.
CMatrix psd_sqrt(const CMatrix& p, double tol_psd = kTolPsd);

/// |a| = psd_sqrt(a* a), the absolute value of a square matrix.
CMatrix abs_elem(const CMatrix& a);

/// Haar-distributed unitary: QR (modified Gram-Schmidt with one
/// reorthogonalization pass) of a seeded Gaussian matrix; the positive
/// R diagonal produced by MGS is the phase normalization.
CMatrix random_unitary(int n, std::uint64_t seed);

/// Real orthogonal counterpart of random_unitary.
RMatrix random_orthogonal(int n, std::uint64_t seed);

/// Outcome of the pairwise linear-dependence test.
struct LinDep {
  enum class Kind { independent, dependent, zero_pair };
  Kind kind = Kind::independent;
  cplx ratio{};  // b = ratio * a when kind == dependent

  bool dependent_or_zero() const { return kind != Kind::independent; }
};

/// Tests whether (a, b) has numerical rank <= 1. Returns the ratio with
/// ||b - ratio*a|| <= tol*||a|| when a != 0, the zero_pair marker when
/// both vanish, and independent otherwise.
LinDep lin_dep_pair(const CMatrix& a, const CMatrix& b, double tol);

}  // namespace wigmod
