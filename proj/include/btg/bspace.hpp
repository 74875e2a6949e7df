#pragma once

#include <cmath>

#include "btg/hpd.hpp"
#include "btg/linalg.hpp"
#include "btg/types.hpp"

namespace btg {

/// <x,y>_B = y^H B x.
template <class DerivedX, class DerivedY, class Real>
Cplx<Real> b_inner(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                   const HpdMatrix<Real>& B) {
  if (x.rows() != B.size() || y.rows() != B.size() || x.cols() != 1 || y.cols() != 1)
    throw DimensionMismatch("b_inner: vectors must match the inner-product dimension");
  return (y.derived().adjoint() * (B.matrix() * x.derived()))(0, 0);
}

/// ||x||_B = ||B^{1/2} x||_2.
template <class Derived, class Real>
Real b_vec_norm(const Eigen::MatrixBase<Derived>& x, const HpdMatrix<Real>& B) {
  if (x.rows() != B.size() || x.cols() != 1)
    throw DimensionMismatch("b_vec_norm: vector must match the inner-product dimension");
  return (B.sqrt() * x.derived()).norm();
}

/// Operator norm induced by ||.||_B: the largest singular value of
/// B^{1/2} C B^{-1/2}.
template <class Real>
Real b_mat_norm(const MatX<Real>& c, const HpdMatrix<Real>& B) {
  if (c.rows() != B.size() || c.cols() != B.size())
    throw DimensionMismatch("b_mat_norm: matrix must be n x n for the inner-product dimension n");
  return spectral_norm<Real>(B.sqrt() * c * B.invSqrt());
}

/// B-adjoint A^+ = B^{-1} A^H B, obtained from the Hermitian solve
/// B X = A^H B rather than an explicit inverse.
template <class Real>
MatX<Real> b_adjoint(const MatX<Real>& a, const HpdMatrix<Real>& B) {
  if (a.rows() != B.size() || a.cols() != B.size())
    throw DimensionMismatch("b_adjoint: matrix must match the inner-product dimension");
  return B.solve(a.adjoint() * B.matrix());
}

/// Columns B-orthonormal: ||U^H B U - I||_F <= tol * k for U with k columns.
template <class Real>
PredicateResult<Real> is_b_unitary(const MatX<Real>& u, const HpdMatrix<Real>& B,
                                   Real tol = ToleranceProfile<Real>{}.tau_eq) {
  if (u.rows() != B.size() || u.cols() < 1 || u.cols() > u.rows())
    throw DimensionMismatch("is_b_unitary: U must be n x k with 1 <= k <= n");
  const Index k = u.cols();
  const Real residual = (u.adjoint() * B.matrix() * u - MatX<Real>::Identity(k, k)).norm();
  return {residual <= tol * Real(k), residual};
}

/// A commutes with its B-adjoint, tested through the scale-invariant
/// commutator residual ||A A^+ - A^+ A||_F <= tol * ||A||_F^2.
template <class Real>
PredicateResult<Real> is_b_normal(const MatX<Real>& a, const HpdMatrix<Real>& B,
                                  Real tol = ToleranceProfile<Real>{}.tau_eq) {
  const MatX<Real> aplus = b_adjoint(a, B);
  const Real residual = (a * aplus - aplus * a).norm();
  const Real scale = a.norm() * a.norm();
  return {residual <= tol * scale, residual};
}

/// A equals its B-adjoint (the B-analogue of Hermitian):
/// ||A^+ - A||_F <= tol * ||A||_F.
template <class Real>
PredicateResult<Real> is_b_orthogonal_matrix(const MatX<Real>& a, const HpdMatrix<Real>& B,
                                             Real tol = ToleranceProfile<Real>{}.tau_eq) {
  const MatX<Real> aplus = b_adjoint(a, B);
  const Real residual = (aplus - a).norm();
  return {residual <= tol * a.norm(), residual};
}

}  // namespace btg
