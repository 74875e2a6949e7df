#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "btg/linalg.hpp"
#include "btg/types.hpp"

namespace btg {

/// A validated Hermitian positive definite inner-product matrix with its
/// Hermitian eigendecomposition and square-root factors cached at
/// construction. All members are read-only afterwards, so instances can be
/// shared freely across threads.
template <class Real = double>
class HpdMatrix {
 public:
  using Mat = MatX<Real>;
  using RealVec = RealVecX<Real>;

  explicit HpdMatrix(Mat b, const ToleranceProfile<Real>& tol = {}) : b_(std::move(b)) {
    tol.validate();
    if (b_.rows() != b_.cols() || b_.rows() < 1)
      throw DimensionMismatch("HpdMatrix: matrix must be square and nonempty");
    if (!all_finite(b_)) throw NotHpd("HpdMatrix: entries must be finite");

    const Real herm = hermitian_residual(b_);
    if (herm > tol.tau_herm)
      throw NotHpd("HpdMatrix: not Hermitian to tolerance (relative residual " + std::to_string(herm) + ")");

    const Mat sym = (b_ + Mat(b_.adjoint())) / Real(2);
    Eigen::SelfAdjointEigenSolver<Mat> es(sym);
    if (es.info() != Eigen::Success) throw NotHpd("HpdMatrix: eigendecomposition failed");
    d_ = es.eigenvalues();
    q_ = es.eigenvectors();

    const Index n = b_.rows();
    if (!(d_(n - 1) > Real(0)) || d_(0) <= tol.tau_rank * d_(n - 1))
      throw NotHpd("HpdMatrix: not positive definite (min eigenvalue " + std::to_string(double(d_(0))) + ")");

    sqrt_ = q_ * d_.cwiseSqrt().template cast<Cplx<Real>>().asDiagonal() * q_.adjoint();
    inv_sqrt_ = q_ * d_.cwiseSqrt().cwiseInverse().template cast<Cplx<Real>>().asDiagonal() * q_.adjoint();
    sqrt_ = (sqrt_ + Mat(sqrt_.adjoint())) / Real(2);
    inv_sqrt_ = (inv_sqrt_ + Mat(inv_sqrt_.adjoint())) / Real(2);

    const Real recon_sqrt = (sqrt_ * sqrt_ - b_).norm() / b_.norm();
    const Real recon_id = (sqrt_ * inv_sqrt_ - Mat::Identity(n, n)).norm() / std::sqrt(Real(n));
    if (recon_sqrt > tol.tau_recon || recon_id > tol.tau_recon)
      throw NotHpd("HpdMatrix: square-root reconstruction exceeded tau_recon");
  }

  static HpdMatrix Identity(Index n) { return HpdMatrix(Mat::Identity(n, n)); }

  Index size() const { return b_.rows(); }
  const Mat& matrix() const { return b_; }
  const Mat& sqrt() const { return sqrt_; }
  const Mat& invSqrt() const { return inv_sqrt_; }
  /// Ascending eigenvalues of the (symmetrized) matrix.
  const RealVec& eigenvalues() const { return d_; }
  const Mat& eigenvectors() const { return q_; }
  Real conditionNumber() const { return d_(d_.size() - 1) / d_(0); }

  /// Solve B X = rhs through the cached eigendecomposition.
  template <class Derived>
  Mat solve(const Eigen::MatrixBase<Derived>& rhs) const {
    if (rhs.rows() != b_.rows()) throw DimensionMismatch("HpdMatrix::solve: row count mismatch");
    return q_ * (d_.cwiseInverse().template cast<Cplx<Real>>().asDiagonal() * (q_.adjoint() * rhs.derived()));
  }

 private:
  Mat b_, q_, sqrt_, inv_sqrt_;
  RealVec d_;
};

}  // namespace btg
