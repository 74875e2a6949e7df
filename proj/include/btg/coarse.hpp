#pragma once

#include <array>
#include <cmath>
#include <utility>

#include <Eigen/LU>

#include "btg/bspace.hpp"
#include "btg/hpd.hpp"
#include "btg/linalg.hpp"
#include "btg/types.hpp"

namespace btg {

/// Interpolation P and restriction R (both n x nc), certified full rank with
/// nonsingular coarse matrix R^H A P against the A they were paired with.
template <class Real = double>
struct TransferPair {
  MatX<Real> P;
  MatX<Real> R;
  Index nc = 0;
};

template <class Real>
TransferPair<Real> make_transfer_pair(const MatX<Real>& a, MatX<Real> p, MatX<Real> r,
                                      const ToleranceProfile<Real>& tol = {}) {
  const Index n = a.rows();
  const Index nc = p.cols();
  if (a.rows() != a.cols()) throw DimensionMismatch("make_transfer_pair: A must be square");
  if (p.rows() != n || r.rows() != n || r.cols() != nc)
    throw DimensionMismatch("make_transfer_pair: P and R must be n x nc");
  if (nc < 1 || nc >= n) throw DimensionMismatch("make_transfer_pair: need 1 <= nc < n");

  Eigen::JacobiSVD<MatX<Real>> svd_p(p), svd_r(r);
  if (svd_p.singularValues()(nc - 1) <= tol.tau_rank * svd_p.singularValues()(0))
    throw RankDeficient("make_transfer_pair: P is rank deficient");
  if (svd_r.singularValues()(nc - 1) <= tol.tau_rank * svd_r.singularValues()(0))
    throw RankDeficient("make_transfer_pair: R is rank deficient");

  const MatX<Real> ac = r.adjoint() * a * p;
  Eigen::JacobiSVD<MatX<Real>> svd_ac(ac);
  if (svd_ac.singularValues()(nc - 1) <= tol.tau_rank * svd_ac.singularValues()(0))
    throw SingularCoarseMatrix("make_transfer_pair: R^H A P is singular to tolerance");

  return {std::move(p), std::move(r), nc};
}

/// A projection (idempotent matrix), validated at construction.
template <class Real = double>
struct Projection {
  MatX<Real> pi;
};

template <class Real>
Projection<Real> make_projection(MatX<Real> pi, const ToleranceProfile<Real>& tol = {}) {
  const Real residual = (pi * pi - pi).norm();
  if (residual > tol.tau_eq * (Real(1) + pi.norm()))
    throw Error("make_projection: matrix is not idempotent to tolerance");
  return {std::move(pi)};
}

/// Coarse-grid correction Pi_A(P, R) = P (R^H A P)^{-1} R^H A, the projection
/// onto range(P) along null(R^H A).
template <class Real>
Projection<Real> coarse_grid_projection(const MatX<Real>& a, const TransferPair<Real>& tp,
                                        const ToleranceProfile<Real>& tol = {}) {
  const MatX<Real> ac = tp.R.adjoint() * a * tp.P;
  Eigen::JacobiSVD<MatX<Real>> svd_ac(ac);
  if (svd_ac.singularValues()(tp.nc - 1) <= tol.tau_rank * svd_ac.singularValues()(0))
    throw SingularCoarseMatrix("coarse_grid_projection: R^H A P is singular to tolerance");
  Eigen::PartialPivLU<MatX<Real>> lu(ac);
  MatX<Real> pi = tp.P * lu.solve(tp.R.adjoint() * a);
  return make_projection(std::move(pi), tol);
}

/// Compatible interpolation P* = B^{-1} A^H R; Pi_A(P*, R) is B-orthogonal.
template <class Real>
MatX<Real> p_star(const MatX<Real>& a, const MatX<Real>& r, const HpdMatrix<Real>& B,
                  const ToleranceProfile<Real>& tol = {}) {
  if (a.rows() != a.cols() || r.rows() != a.rows()) throw DimensionMismatch("p_star: shape mismatch");
  MatX<Real> p = B.solve(a.adjoint() * r);
  Eigen::JacobiSVD<MatX<Real>> svd(p);
  if (svd.singularValues()(p.cols() - 1) <= tol.tau_rank * svd.singularValues()(0))
    throw RankDeficient("p_star: B^{-1} A^H R lost rank");
  return p;
}

/// Compatible restriction R* = A^{-H} B P; Pi_A(P, R*) is B-orthogonal.
template <class Real>
MatX<Real> r_star(const MatX<Real>& a, const MatX<Real>& p, const HpdMatrix<Real>& B,
                  const ToleranceProfile<Real>& tol = {}) {
  if (a.rows() != a.cols() || p.rows() != a.rows()) throw DimensionMismatch("r_star: shape mismatch");
  Eigen::JacobiSVD<MatX<Real>> svd_a(a);
  const auto& s = svd_a.singularValues();
  if (s(s.size() - 1) <= tol.tau_rank * s(0))
    throw NearSingularA("r_star: A is singular to tolerance");
  Eigen::PartialPivLU<MatX<Real>> lu(MatX<Real>(a.adjoint()));
  return lu.solve(B.matrix() * p);
}

/// The seven equivalent statements of coarse-grid B-orthogonality, each
/// evaluated numerically, plus the projection norms they hinge on.
template <class Real = double>
struct CoarseOrthogonalityReport {
  PredicateResult<Real> symmetric_product;        // (1) Pi^H B = B Pi
  PredicateResult<Real> adjoint_fixed_point;      // (2) Pi^+ = Pi via the B-adjoint
  PredicateResult<Real> range_perp_kernel;        // (3) range(Pi) perp_B null(Pi)
  PredicateResult<Real> unit_norm;                // (4) ||Pi||_B = ||I - Pi||_B = 1
  PredicateResult<Real> range_bp_ahr;             // (5) range(B P) = range(A^H R)
  PredicateResult<Real> range_p_binv_ahr;         // (6) range(P) = range(B^{-1} A^H R)
  PredicateResult<Real> kernel_rha_phb;           // (7) null(R^H A) = null(P^H B)
  Real pi_b_norm = Real(0);
  Real complement_b_norm = Real(0);

  std::array<bool, 7> verdicts() const {
    return {symmetric_product.ok, adjoint_fixed_point.ok, range_perp_kernel.ok, unit_norm.ok,
            range_bp_ahr.ok,      range_p_binv_ahr.ok,    kernel_rha_phb.ok};
  }
  bool all() const {
    for (bool v : verdicts())
      if (!v) return false;
    return true;
  }
  bool consistent() const {
    const auto v = verdicts();
    for (bool b : v)
      if (b != v[0]) return false;
    return true;
  }
};

template <class Real>
CoarseOrthogonalityReport<Real> check_projection_b_orthogonality(const MatX<Real>& a,
                                                                 const TransferPair<Real>& tp,
                                                                 const HpdMatrix<Real>& B,
                                                                 const ToleranceProfile<Real>& tol = {}) {
  CoarseOrthogonalityReport<Real> rep;
  const Projection<Real> proj = coarse_grid_projection(a, tp, tol);
  const MatX<Real>& pi = proj.pi;
  const Index n = pi.rows();
  const MatX<Real> identity = MatX<Real>::Identity(n, n);

  {
    const Real res = (pi.adjoint() * B.matrix() - B.matrix() * pi).norm();
    rep.symmetric_product = {res <= tol.tau_eq * B.matrix().norm() * std::max(Real(1), pi.norm()), res};
  }
  {
    const Real res = (b_adjoint(pi, B) - pi).norm();
    rep.adjoint_fixed_point = {res <= tol.tau_eq * std::max(Real(1), pi.norm()), res};
  }
  {
    const MatX<Real> range_basis = orthonormal_range_basis(pi, tol.tau_rank);
    const MatX<Real> kernel_basis = null_space_basis(pi, tol.tau_rank);
    const Real res = (kernel_basis.adjoint() * B.matrix() * range_basis).norm() / B.matrix().norm();
    rep.range_perp_kernel = {res <= tol.tau_eq, res};
  }
  rep.pi_b_norm = b_mat_norm(pi, B);
  rep.complement_b_norm = b_mat_norm<Real>(identity - pi, B);
  {
    const Real res = std::max(std::abs(rep.pi_b_norm - Real(1)), std::abs(rep.complement_b_norm - Real(1)));
    rep.unit_norm = {res <= tol.tau_eig, res};
  }
  {
    const Real angle =
        largest_principal_angle<Real>(B.matrix() * tp.P, a.adjoint() * tp.R, tol.tau_rank);
    rep.range_bp_ahr = {angle <= tol.tau_angle, angle};
  }
  {
    const Real angle = largest_principal_angle<Real>(tp.P, B.solve(a.adjoint() * tp.R), tol.tau_rank);
    rep.range_p_binv_ahr = {angle <= tol.tau_angle, angle};
  }
  {
    const MatX<Real> null_rha = null_space_basis<Real>(tp.R.adjoint() * a, tol.tau_rank);
    const MatX<Real> null_phb = null_space_basis<Real>(tp.P.adjoint() * B.matrix(), tol.tau_rank);
    const Real angle = largest_principal_angle(null_rha, null_phb, tol.tau_rank);
    rep.kernel_rha_phb = {angle <= tol.tau_angle, angle};
  }
  return rep;
}

/// ||Pi||_B for a nontrivial projection; also enforces the identity
/// ||Pi||_B = ||I - Pi||_B and ||Pi||_B >= 1.
template <class Real>
Real projection_b_norm(const Projection<Real>& proj, const HpdMatrix<Real>& B,
                       const ToleranceProfile<Real>& tol = {}) {
  const MatX<Real>& pi = proj.pi;
  const Index n = pi.rows();
  if (pi.norm() <= tol.tau_eq * Real(n)) throw TrivialProjection("projection_b_norm: Pi = 0");
  if ((pi - MatX<Real>::Identity(n, n)).norm() <= tol.tau_eq * Real(n))
    throw TrivialProjection("projection_b_norm: Pi = I");

  const Real norm = b_mat_norm(pi, B);
  const Real complement = b_mat_norm<Real>(MatX<Real>::Identity(n, n) - pi, B);
  if (std::abs(norm - complement) > tol.tau_eq * std::max(Real(1), norm))
    throw Error("projection_b_norm: ||Pi||_B != ||I-Pi||_B beyond tolerance");
  if (norm < Real(1) - tol.tau_eig) throw Error("projection_b_norm: projection norm below one");
  return norm;
}

}  // namespace btg
