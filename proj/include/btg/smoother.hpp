#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "btg/bnormal.hpp"
#include "btg/bspace.hpp"
#include "btg/hpd.hpp"
#include "btg/linalg.hpp"
#include "btg/types.hpp"

namespace btg {

/// The smoother together with its two Hermitian symmetrizations:
///   I - Mtilde^{-1} B = (I - M^{-1}A)^+ (I - M^{-1}A)
///   I - Mhat^{-1} B   = (I - M^{-1}A) (I - M^{-1}A)^+
/// and the smoothing norm ||I - M^{-1}A||_B.
template <class Real = double>
struct SmootherBundle {
  MatX<Real> m_inv;
  MatX<Real> m_tilde_inv;
  MatX<Real> m_hat_inv;
  Real smoothing_norm = Real(0);

  MatX<Real> m_tilde_inv_b;  // Mtilde^{-1} B, cached
  MatX<Real> m_hat_inv_b;    // Mhat^{-1} B, cached
};

template <class Real>
SmootherBundle<Real> build_smoother_bundle(const MatX<Real>& a, const MatX<Real>& m_inv,
                                           const HpdMatrix<Real>& B,
                                           const ToleranceProfile<Real>& tol = {}) {
  const Index n = B.size();
  if (a.rows() != n || a.cols() != n || m_inv.rows() != n || m_inv.cols() != n)
    throw DimensionMismatch("build_smoother_bundle: A and M^{-1} must be n x n");
  {
    Eigen::JacobiSVD<MatX<Real>> svd(m_inv);
    const auto& s = svd.singularValues();
    if (s(n - 1) <= tol.tau_rank * s(0))
      throw SingularSmoother("build_smoother_bundle: M^{-1} is singular to tolerance");
  }

  SmootherBundle<Real> bundle;
  bundle.m_inv = m_inv;
  const MatX<Real> s = m_inv * a;
  const MatX<Real> s_plus = b_adjoint(s, B);

  bundle.m_tilde_inv_b = s + s_plus - s_plus * s;
  bundle.m_hat_inv_b = s + s_plus - s * s_plus;

  // X = Y B^{-1} via the Hermitian solve B X^H = Y^H.
  const auto right_solve = [&B](const MatX<Real>& y) { return MatX<Real>(B.solve(y.adjoint()).adjoint()); };
  bundle.m_tilde_inv = right_solve(bundle.m_tilde_inv_b);
  bundle.m_hat_inv = right_solve(bundle.m_hat_inv_b);

  if (hermitian_residual(bundle.m_tilde_inv) > tol.tau_herm ||
      hermitian_residual(bundle.m_hat_inv) > tol.tau_herm)
    throw Error("build_smoother_bundle: symmetrized smoothers lost Hermitian symmetry");

  const MatX<Real> identity = MatX<Real>::Identity(n, n);
  const MatX<Real> residual_tilde =
      (identity - bundle.m_tilde_inv_b) - (identity - s_plus) * (identity - s);
  const MatX<Real> residual_hat = (identity - bundle.m_hat_inv_b) - (identity - s) * (identity - s_plus);
  const Real scale = Real(1) + s.norm() * s.norm();
  if (residual_tilde.norm() > tol.tau_eq * scale || residual_hat.norm() > tol.tau_eq * scale)
    throw Error("build_smoother_bundle: symmetrization identities violated");

  bundle.smoothing_norm = b_mat_norm<Real>(identity - s, B);
  return bundle;
}

/// Real spectrum of X B in the B geometry, through the Hermitian similarity
/// B^{1/2} X B^{1/2} (X Hermitian). Ascending.
template <class Real>
RealVecX<Real> b_orthogonal_spectrum(const MatX<Real>& x_hermitian, const HpdMatrix<Real>& B) {
  const MatX<Real> h = B.sqrt() * x_hermitian * B.sqrt();
  return hermitian_eigenvalues(h);
}

/// The five equivalent forms of the smoothing assumption evaluated
/// independently, with the spectra backing verdicts (3) and (5).
template <class Real = double>
struct SmoothingAssumptionReport {
  PredicateResult<Real> norm_lt_one;     // (1) ||I - M^{-1}A||_B < 1
  PredicateResult<Real> tilde_hpd;       // (2) Mtilde^{-1} HPD
  PredicateResult<Real> tilde_spectrum;  // (3) sigma(Mtilde^{-1} B) in (0,1]
  PredicateResult<Real> hat_hpd;         // (4) Mhat^{-1} HPD
  PredicateResult<Real> hat_spectrum;    // (5) sigma(Mhat^{-1} B) in (0,1]
  RealVecX<Real> tilde_eigenvalues;
  RealVecX<Real> hat_eigenvalues;
  Real smoothing_norm = Real(0);

  std::array<bool, 5> verdicts() const {
    return {norm_lt_one.ok, tilde_hpd.ok, tilde_spectrum.ok, hat_hpd.ok, hat_spectrum.ok};
  }
  bool agree() const {
    const auto v = verdicts();
    for (bool b : v)
      if (b != v[0]) return false;
    return true;
  }
  bool satisfied() const { return norm_lt_one.ok; }
};

template <class Real>
SmoothingAssumptionReport<Real> smoothing_assumption_report(const SmootherBundle<Real>& bundle,
                                                            const HpdMatrix<Real>& B,
                                                            const ToleranceProfile<Real>& tol = {}) {
  SmoothingAssumptionReport<Real> rep;
  rep.smoothing_norm = bundle.smoothing_norm;
  rep.norm_lt_one = {bundle.smoothing_norm < Real(1), bundle.smoothing_norm};

  const auto hpd_verdict = [&tol](const MatX<Real>& x) -> PredicateResult<Real> {
    const RealVecX<Real> eigs = hermitian_eigenvalues(x);
    const Real lo = eigs(0), hi = eigs(eigs.size() - 1);
    const bool ok = hi > Real(0) && lo > -tol.tau_eig * std::abs(hi);
    return {ok, lo};
  };
  rep.tilde_hpd = hpd_verdict(bundle.m_tilde_inv);
  rep.hat_hpd = hpd_verdict(bundle.m_hat_inv);

  // (0,1] with an absolute margin of 1e-10 on both ends.
  const Real slack = Real(1e-10);
  const auto interval_verdict = [slack](const RealVecX<Real>& eigs) -> PredicateResult<Real> {
    const Real lo = eigs(0), hi = eigs(eigs.size() - 1);
    const Real overshoot = std::max(hi - Real(1), -lo);
    return {lo > -slack && hi <= Real(1) + slack, overshoot};
  };
  rep.tilde_eigenvalues = b_orthogonal_spectrum(bundle.m_tilde_inv, B);
  rep.hat_eigenvalues = b_orthogonal_spectrum(bundle.m_hat_inv, B);
  rep.tilde_spectrum = interval_verdict(rep.tilde_eigenvalues);
  rep.hat_spectrum = interval_verdict(rep.hat_eigenvalues);
  return rep;
}

/// B-unitary eigendecomposition of Mhat^{-1} B with ascending eigenvalues:
/// V^H B V = I and Mhat^{-1}B V = V diag(mus).
template <class Real = double>
struct SmoothingSpectrum {
  RealVecX<Real> mus;  // ascending
  MatX<Real> V;        // B-unitary eigenvectors, columns ordered with mus
};

template <class Real>
SmoothingSpectrum<Real> smoothing_spectrum(const SmootherBundle<Real>& bundle, const HpdMatrix<Real>& B) {
  MatX<Real> h = B.sqrt() * bundle.m_hat_inv * B.sqrt();
  h = (h + MatX<Real>(h.adjoint())) / Real(2);
  Eigen::SelfAdjointEigenSolver<MatX<Real>> es(h);
  if (es.info() != Eigen::Success) throw Error("smoothing_spectrum: eigendecomposition failed");
  SmoothingSpectrum<Real> spec;
  spec.mus = es.eigenvalues();
  spec.V = B.invSqrt() * es.eigenvectors();
  return spec;
}

template <class Real = double>
struct EigenvalueMapResult {
  bool ok = false;
  Real max_residual = Real(0);
  VecX<Real> lambdas;  // eigenvalues of M^{-1}A in the order checked
};

/// For B-normal M^{-1}A, each eigenpair (lambda, z) must satisfy
/// Mhat^{-1}B z = (1 - |lambda - 1|^2) z; reports the worst relative
/// residual in the B-norm. Throws NotBNormal.
template <class Real>
EigenvalueMapResult<Real> eigenvalue_map_check(const MatX<Real>& a, const MatX<Real>& m_inv,
                                               const HpdMatrix<Real>& B, Real tol,
                                               const ToleranceProfile<Real>& profile = {}) {
  const MatX<Real> s = m_inv * a;
  const auto diag = b_unitary_diagonalize(s, B, profile);  // throws NotBNormal
  const SmootherBundle<Real> bundle = build_smoother_bundle(a, m_inv, B, profile);

  EigenvalueMapResult<Real> result;
  result.lambdas = diag.D;
  Real worst = Real(0);
  for (Index i = 0; i < diag.D.size(); ++i) {
    const VecX<Real> z = diag.U.col(i);
    const Cplx<Real> lambda = diag.D(i);
    const Real mu = Real(1) - std::norm(lambda - Cplx<Real>(1, 0));
    const VecX<Real> defect = bundle.m_hat_inv_b * z - mu * z;
    const Real res = b_vec_norm(defect, B) / b_vec_norm(z, B);
    worst = std::max(worst, res);
  }
  result.max_residual = worst;
  result.ok = worst <= tol;
  return result;
}

}  // namespace btg
