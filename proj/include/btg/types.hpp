#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace btg {

template <class Real>
using Cplx = std::complex<Real>;

template <class Real>
using MatX = Eigen::Matrix<Cplx<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using VecX = Eigen::Matrix<Cplx<Real>, Eigen::Dynamic, 1>;

template <class Real>
using RealVecX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;
using Complex = Cplx<double>;
using Matrix = MatX<double>;
using Vector = VecX<double>;
using RealVector = RealVecX<double>;

/// Thresholds for every floating-point comparison in the library. All values
/// must be strictly positive. Defaults target double precision at moderate
/// dimensions (n up to a few hundred); callers with badly conditioned inputs
/// pass a looser profile.
template <class Real = double>
struct ToleranceProfile {
  Real tau_herm = Real(1e-10);   // relative Hermitian-symmetry residual
  Real tau_eq = Real(1e-10);     // relative matrix-equality residual
  Real tau_eig = Real(1e-8);     // eigenvalue / operator-norm comparisons
  Real tau_recon = Real(1e-12);  // factorization reconstruction residual
  Real tau_rank = Real(1e-12);   // sigma_min / sigma_max rank cutoff
  Real tau_group = Real(1e-8);   // eigenvalue clustering radius (relative)
  Real tau_angle = Real(1e-8);   // largest principal angle for subspace equality [rad]
  Real tau_opt = Real(1e-8);     // absolute slack for optimality certification
  Real kappa_max = Real(1e12);   // eigenvector condition number beyond which a matrix counts as defective

  void validate() const {
    const Real vals[] = {tau_herm, tau_eq,    tau_eig, tau_recon, tau_rank,
                         tau_group, tau_angle, tau_opt, kappa_max};
    for (Real v : vals)
      if (!(v > Real(0))) throw std::invalid_argument("ToleranceProfile: all thresholds must be positive");
  }
};

/// Outcome of a numerical predicate: the verdict plus the residual it was
/// derived from, so reports can show how close the call was.
template <class Real = double>
struct PredicateResult {
  bool ok = false;
  Real residual = Real(0);
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BTG_DEFINE_ERROR(Name)      \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  }

BTG_DEFINE_ERROR(DimensionMismatch);
BTG_DEFINE_ERROR(NotHpd);
BTG_DEFINE_ERROR(NotBNormal);
BTG_DEFINE_ERROR(SingularCoarseMatrix);
BTG_DEFINE_ERROR(RankDeficient);
BTG_DEFINE_ERROR(NearSingularA);
BTG_DEFINE_ERROR(TrivialProjection);
BTG_DEFINE_ERROR(SingularSmoother);
BTG_DEFINE_ERROR(SmoothingAssumptionViolated);
BTG_DEFINE_ERROR(OrderingAmbiguous);
BTG_DEFINE_ERROR(ProjectionNotBOrthogonal);
BTG_DEFINE_ERROR(ParseError);
BTG_DEFINE_ERROR(IoError);

#undef BTG_DEFINE_ERROR

/// Eigenvector matrix too ill-conditioned to treat the input as diagonalizable.
class Defective : public Error {
 public:
  Defective(const std::string& what, double cond_w) : Error(what), cond_w_(cond_w) {}
  double cond_w() const { return cond_w_; }

 private:
  double cond_w_;
};

}  // namespace btg
