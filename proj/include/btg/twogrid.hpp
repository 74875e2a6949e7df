#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "btg/bnormal.hpp"
#include "btg/bspace.hpp"
#include "btg/coarse.hpp"
#include "btg/hpd.hpp"
#include "btg/linalg.hpp"
#include "btg/random.hpp"
#include "btg/smoother.hpp"
#include "btg/types.hpp"

namespace btg {

/// Everything a two-grid error operator needs: the system, the smoother
/// action, the inner product and the cycle shape.
template <class Real = double>
struct TwoGridConfig {
  MatX<Real> A;
  MatX<Real> M_inv;
  HpdMatrix<Real> B;
  int nu1 = 1;
  int nu2 = 1;
  Index nc = 1;

  TwoGridConfig(MatX<Real> a, MatX<Real> m_inv, HpdMatrix<Real> b, int pre, int post, Index coarse)
      : A(std::move(a)), M_inv(std::move(m_inv)), B(std::move(b)), nu1(pre), nu2(post), nc(coarse) {
    const Index n = B.size();
    if (A.rows() != n || A.cols() != n || M_inv.rows() != n || M_inv.cols() != n)
      throw DimensionMismatch("TwoGridConfig: A and M^{-1} must match the inner-product dimension");
    if (nu1 < 0 || nu2 < 0) throw std::invalid_argument("TwoGridConfig: negative smoothing counts");
    if (nc < 1 || nc >= n) throw DimensionMismatch("TwoGridConfig: need 1 <= nc < n");
  }

  Index size() const { return B.size(); }
};

/// E_+^{nu1,nu2} = (I - (M^{-1}A)^+)^{nu2} (I - Pi_A) (I - M^{-1}A)^{nu1}:
/// post-smoothing with the B-adjoint of the smoothing step.
template <class Real>
MatX<Real> e_plus(const TwoGridConfig<Real>& cfg, const TransferPair<Real>& tp,
                  const ToleranceProfile<Real>& tol = {}) {
  const Index n = cfg.size();
  const MatX<Real> identity = MatX<Real>::Identity(n, n);
  const MatX<Real> s = cfg.M_inv * cfg.A;
  const MatX<Real> s_plus = b_adjoint(s, cfg.B);
  const Projection<Real> pi = coarse_grid_projection(cfg.A, tp, tol);
  return matrix_power<Real>(identity - s_plus, cfg.nu2) * (identity - pi.pi) *
         matrix_power<Real>(identity - s, cfg.nu1);
}

/// E^{nu1,nu2} = (I - M^{-1}A)^{nu2} (I - Pi_A) (I - M^{-1}A)^{nu1}: the same
/// smoother on both sides of the coarse-grid correction.
template <class Real>
MatX<Real> e_south(const TwoGridConfig<Real>& cfg, const TransferPair<Real>& tp,
                   const ToleranceProfile<Real>& tol = {}) {
  const Index n = cfg.size();
  const MatX<Real> identity = MatX<Real>::Identity(n, n);
  const MatX<Real> s = cfg.M_inv * cfg.A;
  const Projection<Real> pi = coarse_grid_projection(cfg.A, tp, tol);
  return matrix_power<Real>(identity - s, cfg.nu2) * (identity - pi.pi) *
         matrix_power<Real>(identity - s, cfg.nu1);
}

/// Transfers built from the B-unitary eigenvectors of Mhat^{-1}B: P takes the
/// nc smallest-mu eigenvectors, R = A^{-H} B P pins null(R^H A) to the rest.
/// predicted_norm_sq = (1 - mu_{nc+1})^{nu1+nu2} is the exact value of
/// ||E_+||_B^2 for (nu1,nu2) in {(0,1),(1,0),(1,1)} (`guaranteed`); outside
/// that set it is measured, not asserted.
template <class Real = double>
struct HatTransfers {
  TransferPair<Real> tp;
  RealVecX<Real> mus;  // ascending spectrum of Mhat^{-1}B
  Real predicted_norm_sq = Real(0);
  bool guaranteed = false;

  Real predicted_norm() const { return std::sqrt(predicted_norm_sq); }
};

template <class Real>
HatTransfers<Real> optimal_transfers_hat(const TwoGridConfig<Real>& cfg,
                                         const ToleranceProfile<Real>& tol = {}) {
  const SmootherBundle<Real> bundle = build_smoother_bundle(cfg.A, cfg.M_inv, cfg.B, tol);
  if (!(bundle.smoothing_norm < Real(1)))
    throw SmoothingAssumptionViolated("optimal_transfers_hat: ||I - M^{-1}A||_B = " +
                                      std::to_string(double(bundle.smoothing_norm)));
  const SmoothingSpectrum<Real> spec = smoothing_spectrum(bundle, cfg.B);

  HatTransfers<Real> hat;
  hat.mus = spec.mus;
  const MatX<Real> p_hat = spec.V.leftCols(cfg.nc);
  const MatX<Real> r_hat = r_star(cfg.A, p_hat, cfg.B, tol);
  hat.tp = make_transfer_pair(cfg.A, p_hat, r_hat, tol);
  hat.predicted_norm_sq = std::pow(Real(1) - spec.mus(cfg.nc), Real(cfg.nu1 + cfg.nu2));
  hat.guaranteed = (cfg.nu1 == 0 && cfg.nu2 == 1) || (cfg.nu1 == 1 && cfg.nu2 == 0) ||
                   (cfg.nu1 == 1 && cfg.nu2 == 1);
  return hat;
}

/// Left/right generalized eigenvectors of A z = lambda M z with
/// V_l^H A V_r = Lambda and V_l^H M V_r = I, eigenvalues ordered by
/// descending |1 - lambda| (stable, secondary key arg(lambda), equal
/// eigenvalues contiguous).
template <class Real = double>
struct GeneralizedEigenPair {
  MatX<Real> V_r;
  MatX<Real> V_l;
  VecX<Real> lambdas;                       // ordered by descending |1 - lambda|
  std::vector<std::vector<Index>> groups;   // contiguous equal-eigenvalue blocks
  VecX<Real> D_A;                           // diagonal of V_l^H A V_r (= lambdas)
  VecX<Real> D_M;                           // diagonal of V_l^H M V_r (= ones)
};

template <class Real>
GeneralizedEigenPair<Real> generalized_eigen_pair(const MatX<Real>& a, const MatX<Real>& m_inv,
                                                  const ToleranceProfile<Real>& tol = {}) {
  const EigenStructure<Real> es = diagonalize<Real>(m_inv * a, tol);

  // Reorder whole groups by descending |1 - lambda| of their representative.
  std::vector<std::size_t> order(es.groups.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::vector<Cplx<Real>> rep(es.groups.size());
  for (std::size_t g = 0; g < es.groups.size(); ++g) {
    Cplx<Real> sum(0, 0);
    for (Index i : es.groups[g]) sum += es.lambdas(i);
    rep[g] = sum / Real(es.groups[g].size());
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Real dx = std::abs(Cplx<Real>(1, 0) - rep[x]);
    const Real dy = std::abs(Cplx<Real>(1, 0) - rep[y]);
    if (dx != dy) return dx > dy;
    return std::arg(rep[x]) < std::arg(rep[y]);
  });

  const Index n = es.size();
  GeneralizedEigenPair<Real> gep;
  gep.V_r.resize(n, n);
  gep.lambdas.resize(n);
  Index pos = 0;
  for (std::size_t g : order) {
    std::vector<Index> block;
    for (Index i : es.groups[g]) {
      gep.V_r.col(pos) = es.W.col(i);
      gep.lambdas(pos) = es.lambdas(i);
      block.push_back(pos);
      ++pos;
    }
    gep.groups.push_back(std::move(block));
  }

  // V_l = M^{-H} V_r^{-H} normalizes V_l^H M V_r = I and V_l^H A V_r = Lambda.
  Eigen::PartialPivLU<MatX<Real>> lu(gep.V_r);
  const MatX<Real> v_r_inv = lu.inverse();
  gep.V_l = m_inv.adjoint() * v_r_inv.adjoint();
  gep.D_A = gep.lambdas;
  gep.D_M = VecX<Real>::Ones(n);

  const MatX<Real> cross_a = gep.V_l.adjoint() * a * gep.V_r;
  const Real diag_mass = cross_a.diagonal().norm();
  const Real off_mass = (cross_a - MatX<Real>(cross_a.diagonal().asDiagonal())).norm();
  if (off_mass > tol.tau_eq * std::max(Real(1), diag_mass) * Real(10))
    throw Error("generalized_eigen_pair: V_l^H A V_r not diagonal to tolerance");
  return gep;
}

/// Transfers from the leading generalized eigenvectors (descending |1-lambda|):
/// P# spans the first nc right eigenvectors, R# the first nc left ones.
/// predicted_norm = |1 - lambda_{nc+1}|^{nu1+nu2} equals both ||E||_B and
/// rho(E) when M^{-1}A is B-normal for the config's B.
template <class Real = double>
struct SharpTransfers {
  TransferPair<Real> tp;
  GeneralizedEigenPair<Real> gep;
  Real predicted_norm = Real(0);
};

template <class Real>
SharpTransfers<Real> optimal_transfers_sharp(const TwoGridConfig<Real>& cfg,
                                             const ToleranceProfile<Real>& tol = {}) {
  GeneralizedEigenPair<Real> gep = generalized_eigen_pair(cfg.A, cfg.M_inv, tol);

  // The coarse/fine split may not cut through a cluster of equal eigenvalues.
  Index boundary = 0;
  bool aligned = false;
  for (const auto& group : gep.groups) {
    boundary += Index(group.size());
    if (boundary == cfg.nc) {
      aligned = true;
      break;
    }
    if (boundary > cfg.nc) break;
  }
  if (!aligned)
    throw OrderingAmbiguous("optimal_transfers_sharp: the nc boundary splits a cluster of equal "
                            "|1-lambda| eigenvalues; the split is not well defined");

  const auto normal = is_b_normal(MatX<Real>(cfg.M_inv * cfg.A), cfg.B, tol.tau_eq);
  if (!normal.ok)
    throw NotBNormal("optimal_transfers_sharp: M^{-1}A is not B-normal for this inner product "
                     "(commutator residual " +
                     std::to_string(double(normal.residual)) + ")");

  SharpTransfers<Real> sharp;
  sharp.predicted_norm =
      std::pow(std::abs(Cplx<Real>(1, 0) - gep.lambdas(cfg.nc)), Real(cfg.nu1 + cfg.nu2));
  sharp.tp = make_transfer_pair<Real>(cfg.A, gep.V_r.leftCols(cfg.nc), gep.V_l.leftCols(cfg.nc), tol);
  sharp.gep = std::move(gep);
  return sharp;
}

enum class ErrorOperatorKind {
  AdjointPost,   // E_+: post-smoother is the B-adjoint of the smoothing step
  RepeatedPost,  // E: the same smoother on both sides
};

/// Result of a randomized optimality sweep: the smallest error norm observed
/// over random full-rank transfer pairs, a histogram of all observed norms,
/// and the certificate min >= optimal_norm - tau_opt.
template <class Real = double>
struct SweepResult {
  Real min_norm = Real(0);
  Real max_norm = Real(0);
  std::vector<int> histogram;  // 20 equal-width bins over [min_norm, max_norm]
  int evaluated = 0;
  int skipped = 0;  // draws that failed the rank / coarse-nonsingularity test
  bool certified = false;
};

template <class Real>
SweepResult<Real> optimality_sweep(const TwoGridConfig<Real>& cfg, Real optimal_norm, int trials,
                                   std::uint64_t seed, ErrorOperatorKind kind,
                                   const ToleranceProfile<Real>& tol = {}) {
  if (trials < 1) throw std::invalid_argument("optimality_sweep: trials must be >= 1");
  const Index n = cfg.size();
  std::vector<Real> norms;
  norms.reserve(std::size_t(trials));
  int skipped = 0;

  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(derive_seed(seed, std::uint64_t(t)));
    bool done = false;
    for (int attempt = 0; attempt < 10 && !done; ++attempt) {
      const MatX<Real> p = random_complex_gaussian<Real>(n, cfg.nc, rng);
      const MatX<Real> r = random_complex_gaussian<Real>(n, cfg.nc, rng);
      try {
        const TransferPair<Real> tp = make_transfer_pair(cfg.A, p, r, tol);
        const MatX<Real> e = kind == ErrorOperatorKind::AdjointPost ? e_plus(cfg, tp, tol)
                                                                    : e_south(cfg, tp, tol);
        norms.push_back(b_mat_norm(e, cfg.B));
        done = true;
      } catch (const RankDeficient&) {
        ++skipped;
      } catch (const SingularCoarseMatrix&) {
        ++skipped;
      }
    }
  }
  if (norms.empty()) throw Error("optimality_sweep: every draw failed the rank test");

  SweepResult<Real> result;
  result.evaluated = int(norms.size());
  result.skipped = skipped;
  result.min_norm = *std::min_element(norms.begin(), norms.end());
  result.max_norm = *std::max_element(norms.begin(), norms.end());
  result.histogram.assign(20, 0);
  const Real width = result.max_norm - result.min_norm;
  for (Real v : norms) {
    int bin = width > Real(0) ? int(Real(result.histogram.size()) * (v - result.min_norm) / width) : 0;
    bin = std::min<int>(bin, int(result.histogram.size()) - 1);
    ++result.histogram[std::size_t(bin)];
  }
  result.certified = result.min_norm >= optimal_norm - tol.tau_opt;
  return result;
}

/// The structural identities of E_+ that mirror the Hermitian case, valid
/// whenever Pi_A is B-orthogonal. Throws ProjectionNotBOrthogonal otherwise.
template <class Real = double>
struct EPlusPropertyReport {
  PredicateResult<Real> symmetric_adjoint;  // (E_+^{nu,nu})^+ = E_+^{nu,nu}
  PredicateResult<Real> adjoint_swap;       // (E_+^{nu,0})^+ = E_+^{0,nu} and back
  PredicateResult<Real> conjugation;        // B^{-1}(E_+^{nu,0})^H = E_+^{0,nu} B^{-1} and back
  PredicateResult<Real> norm_splitting;     // ||E_+^{nu,nu}||_B = ||E_+^{nu,0}||_B^2 = ||E_+^{0,nu}||_B^2

  bool all() const {
    return symmetric_adjoint.ok && adjoint_swap.ok && conjugation.ok && norm_splitting.ok;
  }
};

template <class Real>
EPlusPropertyReport<Real> e_plus_property_check(const TwoGridConfig<Real>& cfg,
                                                const TransferPair<Real>& tp, int nu,
                                                const ToleranceProfile<Real>& tol = {}) {
  if (nu < 0) throw std::invalid_argument("e_plus_property_check: nu must be >= 0");
  const Projection<Real> pi = coarse_grid_projection(cfg.A, tp, tol);
  const auto ortho = is_b_orthogonal_matrix(pi.pi, cfg.B, tol.tau_eq);
  if (!ortho.ok)
    throw ProjectionNotBOrthogonal("e_plus_property_check: Pi_A is not B-orthogonal (residual " +
                                   std::to_string(double(ortho.residual)) + ")");

  TwoGridConfig<Real> symmetric = cfg;
  symmetric.nu1 = nu;
  symmetric.nu2 = nu;
  TwoGridConfig<Real> pre_only = cfg;
  pre_only.nu1 = nu;
  pre_only.nu2 = 0;
  TwoGridConfig<Real> post_only = cfg;
  post_only.nu1 = 0;
  post_only.nu2 = nu;

  const MatX<Real> e_sym = e_plus(symmetric, tp, tol);
  const MatX<Real> e_pre = e_plus(pre_only, tp, tol);
  const MatX<Real> e_post = e_plus(post_only, tp, tol);

  EPlusPropertyReport<Real> rep;
  const Real scale = Real(1) + e_sym.norm();
  {
    const Real res = (b_adjoint(e_sym, cfg.B) - e_sym).norm();
    rep.symmetric_adjoint = {res <= tol.tau_eq * scale, res};
  }
  {
    const Real res1 = (b_adjoint(e_pre, cfg.B) - e_post).norm();
    const Real res2 = (b_adjoint(e_post, cfg.B) - e_pre).norm();
    const Real res = std::max(res1, res2);
    rep.adjoint_swap = {res <= tol.tau_eq * scale, res};
  }
  {
    // B^{-1} X through the cached Hermitian solve; X B^{-1} = (B^{-1} X^H)^H.
    const auto left = [&cfg](const MatX<Real>& x) { return MatX<Real>(cfg.B.solve(x)); };
    const auto right = [&cfg](const MatX<Real>& x) { return MatX<Real>(cfg.B.solve(x.adjoint()).adjoint()); };
    const MatX<Real> lhs1 = left(MatX<Real>(e_pre.adjoint()));
    const MatX<Real> lhs2 = left(MatX<Real>(e_post.adjoint()));
    const Real res1 = (lhs1 - right(e_post)).norm();
    const Real res2 = (lhs2 - right(e_pre)).norm();
    const Real res = std::max(res1, res2);
    rep.conjugation = {res <= tol.tau_eq * (Real(1) + lhs1.norm() + lhs2.norm()), res};
  }
  {
    const Real n_sym = b_mat_norm(e_sym, cfg.B);
    const Real n_pre = b_mat_norm(e_pre, cfg.B);
    const Real n_post = b_mat_norm(e_post, cfg.B);
    const Real res = std::max(std::abs(n_sym - n_pre * n_pre), std::abs(n_sym - n_post * n_post));
    rep.norm_splitting = {res <= tol.tau_eig * std::max(Real(1), n_sym), res};
  }
  return rep;
}

}  // namespace btg
