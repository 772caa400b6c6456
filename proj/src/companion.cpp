#include "wigmod/companion.hpp"

#include <cmath>

namespace wigmod {

VerificationReport cstar_verify(const CstarOracle& phi,
                                const std::vector<CMatrix>& samples,
                                double tol) {
  VerificationReport rep;
  rep.tol = tol;
  std::vector<CMatrix> images;
  images.reserve(samples.size());
  for (const auto& a : samples) images.push_back(phi.eval(a));

  const int n = static_cast<int>(samples.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const CMatrix lhs = abs_elem(images[i] * images[j].adjoint());
      const CMatrix rhs = abs_elem(samples[i] * samples[j].adjoint());
      const double scale =
          std::max(samples[i].fro_norm() * samples[j].fro_norm(), 1e-300);
      const double res = dist_fro(lhs, rhs) / scale;
      ++rep.pair_count;
      rep.max_residual = std::max(rep.max_residual, res);
      if (res > tol) rep.offending.emplace_back(i, j);
    }
  rep.pass = rep.offending.empty();
  return rep;
}

CstarPsiCheck cstar_psi_check(const CstarOracle& phi, std::uint64_t probe_seed,
                              int pairs) {
  CstarPsiCheck out;
  const int d = phi.d;
  auto psi_of = [&](const CMatrix& a, const CMatrix& b) {
    const CMatrix pa = phi.eval(a);
    const CMatrix pb = phi.eval(b);
    return pa.adjoint() * pa - pb.adjoint() * pb;
  };

  // Alternative representations A*A - B*B = (V1 A)* (V1 A) - (V2 B)* (V2 B)
  // must map to the same image.
  Rng rng(mix_seed(probe_seed, {static_cast<std::uint64_t>(d), phi.seed}));
  for (int k = 0; k < pairs; ++k) {
    const CMatrix a = CMatrix::gaussian(d, d, rng);
    const CMatrix b = CMatrix::gaussian(d, d, rng);
    const CMatrix v1 = random_unitary(d, rng.raw());
    const CMatrix v2 = random_unitary(d, rng.raw());
    const double scale = std::max((a.adjoint() * a - b.adjoint() * b).fro_norm(),
                                  1e-300);
    out.welldef_residual =
        std::max(out.welldef_residual,
                 dist_fro(psi_of(a, b), psi_of(v1 * a, v2 * b)) / scale);
  }

  // psi(I) evaluated at I; a provided preimage S of I adds the check
  // psi(S*S) = Phi(S)*Phi(S) = I from the other direction.
  const CMatrix eye = CMatrix::identity(d);
  const CMatrix psi_i = psi_of(eye, CMatrix(d, d));
  out.psi_identity_projection = dist_fro(psi_i * psi_i, psi_i);
  out.psi_identity_distance = dist_fro(psi_i, eye);
  if (phi.identity_preimage)
    out.preimage_residual =
        dist_fro(psi_of(*phi.identity_preimage, CMatrix(d, d)), eye);
  return out;
}

CstarFactorization cstar_factorize(const CstarOracle& phi,
                                   const std::vector<CMatrix>& samples,
                                   double tol) {
  const int d = phi.d;
  CstarFactorization out;
  out.d = d;
  out.u = phi.eval(CMatrix::identity(d));

  const CMatrix eye = CMatrix::identity(d);
  const double res_left = dist_fro(out.u.adjoint() * out.u, eye);
  const double res_right = dist_fro(out.u * out.u.adjoint(), eye);
  out.residuals.unitarity = std::max(res_left, res_right);
  if (out.residuals.unitarity > tol)
    fail(Errc::not_unitary, "Phi(I) is not unitary", out.residuals.unitarity);

  for (const auto& a : samples) {
    const double an = a.fro_norm();
    const CMatrix pa = phi.eval(a);
    cplx eps(1.0, 0.0);
    if (an > 0.0) {
      const CMatrix au = a * out.u;
      eps = fro_inner(pa, au) / fro_inner(au, au);
      const double mod = std::abs(eps);
      if (std::abs(mod - 1.0) > tol)
        fail(Errc::phase_inconsistent, "phase is not unit modulus",
             std::abs(mod - 1.0));
      const double resid = dist_fro(pa, eps * au);
      if (resid > tol * an)
        fail(Errc::phase_inconsistent,
             "Phi(A) is not a scalar multiple of A U", resid / an);
      // Independent confirmation that A and Phi(A) U* are dependent.
      if (!lin_dep_pair(a, pa * out.u.adjoint(), tol).dependent_or_zero())
        fail(Errc::phase_inconsistent,
             "A and Phi(A) U* fail the linear-dependence check");
      eps /= mod;
      out.residuals.reconstruction =
          std::max(out.residuals.reconstruction, resid / an);
    }
    out.phase_samples.push_back(a);
    out.phases.push_back(eps);
  }
  return out;
}

VerificationReport real_verify(const RealOracle& t,
                               const std::vector<std::vector<double>>& samples,
                               double tol) {
  VerificationReport rep;
  rep.tol = tol;
  std::vector<std::vector<double>> images;
  images.reserve(samples.size());
  for (const auto& x : samples) images.push_back(t.eval(x));

  const int n = static_cast<int>(samples.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double lhs = std::abs(dot(images[i], images[j]));
      const double rhs = std::abs(dot(samples[i], samples[j]));
      const double scale = std::max(norm2(samples[i]) * norm2(samples[j]), 1e-300);
      const double res = std::abs(lhs - rhs) / scale;
      ++rep.pair_count;
      rep.max_residual = std::max(rep.max_residual, res);
      if (res > tol) rep.offending.emplace_back(i, j);
    }
  rep.pass = rep.offending.empty();
  return rep;
}

namespace {

std::vector<double> basis_vec(int n, int i) {
  std::vector<double> e(n, 0.0);
  e[i] = 1.0;
  return e;
}

std::vector<double> vec_add(const std::vector<double>& x,
                            const std::vector<double>& y) {
  std::vector<double> z = x;
  for (std::size_t k = 0; k < z.size(); ++k) z[k] += y[k];
  return z;
}

double chain_residual(const std::vector<double>& mixed,
                      const std::vector<double>& cand) {
  double plus = 0.0, minus = 0.0;
  for (std::size_t k = 0; k < mixed.size(); ++k) {
    plus += (mixed[k] - cand[k]) * (mixed[k] - cand[k]);
    minus += (mixed[k] + cand[k]) * (mixed[k] + cand[k]);
  }
  return std::sqrt(std::min(plus, minus));
}

}  // namespace

RealFactorization real_factorize(const RealOracle& t,
                                 const std::vector<std::vector<double>>& samples,
                                 double tol) {
  const int n = t.n;
  RealFactorization out;
  out.n = n;

  if (n == 1) {
    out.u = RMatrix::identity(1);
    out.residuals.orthogonality = 0.0;
  } else {
    std::vector<std::vector<double>> te(n);
    for (int j = 0; j < n; ++j) te[j] = t.eval(basis_vec(n, j));

    std::vector<std::vector<double>> cols(n);
    cols[0] = te[0];
    for (int j = 1; j < n; ++j) {
      // Chain the sign of column j to an already-fixed reference leg,
      // normally e_1; deterministic fallback order on ambiguity.
      bool fixed = false;
      for (int ref = 0; ref < j && !fixed; ++ref) {
        const std::vector<double> mixed =
            t.eval(vec_add(basis_vec(n, ref), basis_vec(n, j)));
        double best = 0.0;
        int best_sigma = 0;
        for (int sigma : {+1, -1}) {
          std::vector<double> cand = cols[ref];
          for (int k = 0; k < n; ++k) cand[k] += sigma * te[j][k];
          const double res = chain_residual(mixed, cand);
          if (best_sigma == 0 || res < best) {
            best = res;
            best_sigma = sigma;
          }
        }
        if (best <= tol * std::sqrt(2.0)) {
          cols[j] = te[j];
          for (int k = 0; k < n; ++k) cols[j][k] *= best_sigma;
          fixed = true;
        }
      }
      if (!fixed)
        fail(Errc::sign_chain_broken,
             "no sign makes T(e_ref + e_j) match the chained columns");
    }

    out.u = RMatrix(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) out.u.at(i, j) = cols[j][i];
    out.residuals.orthogonality =
        (out.u.transpose() * out.u - RMatrix::identity(n)).fro_norm();
    if (out.residuals.orthogonality > tol)
      fail(Errc::not_orthogonal, "recovered U is not orthogonal",
           out.residuals.orthogonality);
  }

  for (const auto& x : samples) {
    const double xn = norm2(x);
    double sign = 1.0;
    if (xn > 0.0) {
      const std::vector<double> tx = t.eval(x);
      const std::vector<double> ux = out.u.matvec(x);
      const double raw = dot(tx, ux) / dot(ux, ux);
      sign = raw >= 0.0 ? 1.0 : -1.0;
      if (std::abs(std::abs(raw) - 1.0) > tol)
        fail(Errc::phase_inconsistent, "sign is not +-1",
             std::abs(std::abs(raw) - 1.0));
      double resid2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double diff = tx[k] - sign * ux[k];
        resid2 += diff * diff;
      }
      const double resid = std::sqrt(resid2);
      if (resid > tol * xn)
        fail(Errc::phase_inconsistent,
             "Tx is not a sign multiple of Ux", resid / xn);
      out.residuals.reconstruction =
          std::max(out.residuals.reconstruction, resid / xn);
    }
    out.sign_samples.push_back(x);
    out.signs.push_back(sign);
  }
  return out;
}

}  // namespace wigmod
