#include "wigmod/cmatrix.hpp"

#include <cmath>

namespace wigmod {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_hermitian: return "NonHermitian";
    case Errc::not_psd: return "NotPSD";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::low_modular_dimension: return "LowModularDimension";
    case Errc::non_self_adjoint: return "NonSelfAdjoint";
    case Errc::ill_defined: return "IllDefined";
    case Errc::parity_ambiguous: return "ParityAmbiguous";
    case Errc::parity_contradiction: return "ParityContradiction";
    case Errc::not_a_unitary: return "NotAUnitary";
    case Errc::phase_inconsistent: return "PhaseInconsistent";
    case Errc::not_unitary: return "NotUnitary";
    case Errc::sign_chain_broken: return "SignChainBroken";
    case Errc::not_orthogonal: return "NotOrthogonal";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

CMatrix::CMatrix(int rows, int cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(rows) * cols)
    fail(Errc::shape_mismatch, "entry count does not match rows*cols");
  if (!is_finite())
    fail(Errc::invalid_spec, "matrix entries must be finite");
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::unit(int rows, int cols, int i, int j) {
  CMatrix m(rows, cols);
  m.at(i, j) = 1.0;
  return m;
}

CMatrix CMatrix::scalar(int n, cplx z) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = z;
  return m;
}

CMatrix CMatrix::gaussian(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (auto& e : m.a_) e = rng.cgauss();
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  CMatrix r = *this;
  r += o;
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  CMatrix r = *this;
  r -= o;
  return r;
}

CMatrix CMatrix::operator-() const {
  CMatrix r = *this;
  for (auto& e : r.a_) e = -e;
  return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (!same_shape(o)) fail(Errc::shape_mismatch, "operator+");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (!same_shape(o)) fail(Errc::shape_mismatch, "operator-");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx z) {
  for (auto& e : a_) e *= z;
  return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) fail(Errc::shape_mismatch, "operator* inner dims");
  CMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cplx aik = at(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  }
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

CMatrix CMatrix::conj() const {
  CMatrix r = *this;
  for (auto& e : r.a_) e = std::conj(e);
  return r;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  int n = rows_ < cols_ ? rows_ : cols_;
  for (int i = 0; i < n; ++i) t += at(i, i);
  return t;
}

double CMatrix::fro_norm() const {
  double s = 0.0;
  for (const auto& e : a_) s += std::norm(e);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double s = 0.0;
  for (const auto& e : a_) s = std::max(s, std::abs(e));
  return s;
}

CMatrix CMatrix::hermitized() const {
  CMatrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      r.at(i, j) = 0.5 * (at(i, j) + std::conj(at(j, i)));
  return r;
}

bool CMatrix::is_finite() const {
  for (const auto& e : a_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

CMatrix operator*(cplx z, const CMatrix& m) {
  CMatrix r = m;
  r *= z;
  return r;
}

CMatrix operator*(double x, const CMatrix& m) { return cplx(x, 0.0) * m; }

double dist_fro(const CMatrix& a, const CMatrix& b) {
  if (!a.same_shape(b)) fail(Errc::shape_mismatch, "dist_fro");
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    s += std::norm(a.data()[k] - b.data()[k]);
  return std::sqrt(s);
}

cplx fro_inner(const CMatrix& a, const CMatrix& b) {
  if (!a.same_shape(b)) fail(Errc::shape_mismatch, "fro_inner");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    s += a.data()[k] * std::conj(b.data()[k]);
  return s;
}

double herm_defect(const CMatrix& a) {
  double n = a.fro_norm();
  return dist_fro(a, a.adjoint()) / (n > 0.0 ? n : 1.0);
}

void append_canonical_bytes(std::vector<std::uint8_t>& out, const CMatrix& m) {
  append_canonical_double(out, static_cast<double>(m.rows()));
  append_canonical_double(out, static_cast<double>(m.cols()));
  for (const auto& e : m.data()) {
    append_canonical_double(out, e.real());
    append_canonical_double(out, e.imag());
  }
}

// --- RMatrix ------------------------------------------------------------

RMatrix RMatrix::identity(int n) {
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

RMatrix RMatrix::gaussian(int rows, int cols, Rng& rng) {
  RMatrix m(rows, cols);
  for (auto& e : m.a_) e = rng.gauss();
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  if (cols_ != o.rows_) fail(Errc::shape_mismatch, "RMatrix operator*");
  RMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const double aik = at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(Errc::shape_mismatch, "RMatrix operator-");
  RMatrix r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
  return r;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(Errc::shape_mismatch, "RMatrix operator+");
  RMatrix r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
  return r;
}

RMatrix RMatrix::transpose() const {
  RMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

double RMatrix::fro_norm() const {
  double s = 0.0;
  for (double e : a_) s += e * e;
  return std::sqrt(s);
}

std::vector<double> RMatrix::matvec(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols_)
    fail(Errc::shape_mismatch, "RMatrix matvec");
  std::vector<double> y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) y[i] += at(i, j) * x[j];
  return y;
}

RMatrix operator*(double x, const RMatrix& m) {
  RMatrix r = m;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) *= x;
  return r;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

}  // namespace wigmod
