#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "btg/types.hpp"

namespace btg {

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x) {
  return x.derived().allFinite();
}

template <class Real>
Real spectral_norm(const MatX<Real>& x) {
  if (x.size() == 0) return Real(0);
  Eigen::JacobiSVD<MatX<Real>> svd(x);
  return svd.singularValues()(0);
}

/// sigma_max / sigma_min; infinity when numerically singular.
template <class Real>
Real condition_number(const MatX<Real>& x) {
  Eigen::JacobiSVD<MatX<Real>> svd(x);
  const auto& s = svd.singularValues();
  const Real smin = s(s.size() - 1);
  if (smin <= Real(0)) return std::numeric_limits<Real>::infinity();
  return s(0) / smin;
}

template <class Real>
Real spectral_radius(const MatX<Real>& x) {
  Eigen::ComplexEigenSolver<MatX<Real>> es(x, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("spectral_radius: eigensolver failed to converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

template <class Real>
MatX<Real> matrix_power(const MatX<Real>& x, int k) {
  if (x.rows() != x.cols()) throw DimensionMismatch("matrix_power: matrix must be square");
  if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
  MatX<Real> result = MatX<Real>::Identity(x.rows(), x.cols());
  for (int i = 0; i < k; ++i) result = result * x;
  return result;
}

/// Orthonormal basis of range(x): left singular vectors with sigma > tau_rank * sigma_max.
template <class Real>
MatX<Real> orthonormal_range_basis(const MatX<Real>& x, Real tau_rank) {
  Eigen::JacobiSVD<MatX<Real>> svd(x, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const Real cut = s.size() > 0 ? tau_rank * s(0) : Real(0);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the (right) null space of x.
template <class Real>
MatX<Real> null_space_basis(const MatX<Real>& x, Real tau_rank) {
  Eigen::JacobiSVD<MatX<Real>> svd(x, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Real cut = s.size() > 0 ? tau_rank * s(0) : Real(0);
  Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixV().rightCols(x.cols() - r);
}

/// Largest principal angle between span(x) and span(y), in radians. Computed
/// from sin(theta) = ||(I - Q1 Q1^H) Q2||_2, which stays accurate near zero
/// where the acos route loses half the digits. Returns pi/2 when the ranks
/// differ (the spans cannot be equal).
template <class Real>
Real largest_principal_angle(const MatX<Real>& x, const MatX<Real>& y, Real tau_rank) {
  const MatX<Real> q1 = orthonormal_range_basis(x, tau_rank);
  const MatX<Real> q2 = orthonormal_range_basis(y, tau_rank);
  if (q1.cols() != q2.cols()) return std::acos(Real(-1)) / Real(2);
  if (q1.cols() == 0) return Real(0);
  const MatX<Real> residual = q2 - q1 * (q1.adjoint() * q2);
  const Real s = std::min(spectral_norm(residual), Real(1));
  return std::asin(s);
}

template <class Real>
Real frobenius_norm(const MatX<Real>& x) {
  return x.norm();
}

/// Frobenius distance of x from Hermitian symmetry, relative to ||x||_F.
template <class Real>
Real hermitian_residual(const MatX<Real>& x) {
  const Real nrm = x.norm();
  if (nrm == Real(0)) return Real(0);
  return (x - x.adjoint()).norm() / nrm;
}

/// Eigenvalues of the Hermitian part (x + x^H)/2, ascending.
template <class Real>
RealVecX<Real> hermitian_eigenvalues(const MatX<Real>& x) {
  const MatX<Real> sym = (x + x.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<MatX<Real>> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("hermitian_eigenvalues: eigensolver failed");
  return es.eigenvalues();
}

}  // namespace btg
