#pragma once

#include <vector>

#include "wigmod/util.hpp"

namespace wigmod {

/// Dense complex matrix, row-major, value semantics throughout.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  CMatrix(int rows, int cols, std::vector<cplx> entries);

  static CMatrix zeros(int rows, int cols) { return {rows, cols}; }
  static CMatrix identity(int n);
  /// Matrix unit E_ij (1 at (i,j), 0 elsewhere).
  static CMatrix unit(int rows, int cols, int i, int j);
  static CMatrix scalar(int n, cplx z);
  /// Entrywise standard complex Gaussian draw.
  static CMatrix gaussian(int rows, int cols, Rng& rng);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cplx& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  cplx& operator()(int i, int j) { return at(i, j); }
  const cplx& operator()(int i, int j) const { return at(i, j); }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator-() const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx z);

  CMatrix adjoint() const;    // conjugate transpose
  CMatrix transpose() const;
  CMatrix conj() const;

  cplx trace() const;
  double fro_norm() const;
  double max_abs() const;

  /// (A + A*)/2 — removes anti-Hermitian rounding dust.
  CMatrix hermitized() const;

  bool same_shape(const CMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }
  bool is_finite() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix operator*(cplx z, const CMatrix& m);
CMatrix operator*(double x, const CMatrix& m);

/// Frobenius distance.
double dist_fro(const CMatrix& a, const CMatrix& b);

/// Frobenius inner product sum_ij a_ij * conj(b_ij).
cplx fro_inner(const CMatrix& a, const CMatrix& b);

/// Relative Hermiticity defect ||A - A*|| / max(||A||, 1e-300).
double herm_defect(const CMatrix& a);

void append_canonical_bytes(std::vector<std::uint8_t>& out, const CMatrix& m);

// --- real matrices (finite-dimensional real Hilbert space engine) ------

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static RMatrix identity(int n);
  static RMatrix gaussian(int rows, int cols, Rng& rng);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const double& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double& operator()(int i, int j) { return at(i, j); }
  const double& operator()(int i, int j) const { return at(i, j); }

  const std::vector<double>& data() const { return a_; }

  RMatrix operator*(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  RMatrix operator+(const RMatrix& o) const;
  RMatrix transpose() const;
  double fro_norm() const;

  std::vector<double> matvec(const std::vector<double>& x) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

RMatrix operator*(double x, const RMatrix& m);

double dot(const std::vector<double>& x, const std::vector<double>& y);
double norm2(const std::vector<double>& x);

}  // namespace wigmod
