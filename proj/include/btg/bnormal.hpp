#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "btg/bspace.hpp"
#include "btg/hpd.hpp"
#include "btg/linalg.hpp"
#include "btg/random.hpp"
#include "btg/types.hpp"

namespace btg {

/// Eigendecomposition with near-equal eigenvalues clustered into contiguous
/// groups. Column order of W matches `lambdas`; `groups` lists index blocks
/// in order, covering 0..n-1 exactly once.
template <class Real = double>
struct EigenStructure {
  MatX<Real> W;
  VecX<Real> lambdas;
  std::vector<std::vector<Index>> groups;
  Real condW = Real(0);

  Index size() const { return lambdas.size(); }
};

namespace detail {

inline Index uf_find(std::vector<Index>& parent, Index i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

inline void uf_union(std::vector<Index>& parent, Index a, Index b) {
  parent[uf_find(parent, a)] = uf_find(parent, b);
}

}  // namespace detail

/// Build an EigenStructure from a given eigenvector matrix and eigenvalues:
/// single-linkage clustering of the eigenvalues in the complex plane with
/// radius tau_group * (1 + |lambda|), then a deterministic reorder (groups
/// sorted by mean eigenvalue, lexicographic on real then imaginary part) so
/// equal eigenvalues are contiguous. Throws Defective when cond(W) exceeds
/// kappa_max.
template <class Real>
EigenStructure<Real> eigen_structure_from(MatX<Real> w, VecX<Real> lambdas,
                                          const ToleranceProfile<Real>& tol = {}) {
  tol.validate();
  const Index n = lambdas.size();
  if (w.rows() != n || w.cols() != n || n < 1)
    throw DimensionMismatch("eigen_structure_from: W must be n x n matching lambdas");

  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), Index(0));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Real radius = tol.tau_group * (Real(1) + std::max(std::abs(lambdas(i)), std::abs(lambdas(j))));
      if (std::abs(lambdas(i) - lambdas(j)) <= radius) detail::uf_union(parent, i, j);
    }

  std::vector<std::vector<Index>> clusters;
  std::vector<Index> cluster_of(n, -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = detail::uf_find(parent, i);
    if (cluster_of[root] < 0) {
      cluster_of[root] = Index(clusters.size());
      clusters.emplace_back();
    }
    clusters[cluster_of[root]].push_back(i);
  }

  std::vector<Cplx<Real>> mean(clusters.size());
  for (std::size_t g = 0; g < clusters.size(); ++g) {
    Cplx<Real> s(0, 0);
    for (Index i : clusters[g]) s += lambdas(i);
    mean[g] = s / Real(clusters[g].size());
  }
  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (mean[a].real() != mean[b].real()) return mean[a].real() < mean[b].real();
    return mean[a].imag() < mean[b].imag();
  });

  EigenStructure<Real> es;
  es.W.resize(n, n);
  es.lambdas.resize(n);
  Index pos = 0;
  for (std::size_t g : order) {
    std::vector<Index> block;
    for (Index i : clusters[g]) {
      es.W.col(pos) = w.col(i);
      es.lambdas(pos) = lambdas(i);
      block.push_back(pos);
      ++pos;
    }
    es.groups.push_back(std::move(block));
  }

  es.condW = condition_number<Real>(es.W);
  if (!(es.condW < tol.kappa_max))
    throw Defective("eigen_structure_from: eigenvector matrix condition " + std::to_string(double(es.condW)) +
                        " exceeds kappa_max; matrix is defective to working precision",
                    double(es.condW));
  return es;
}

/// General (complex) eigendecomposition of A with grouped equal eigenvalues.
/// Throws Defective when A is not diagonalizable to working precision.
template <class Real>
EigenStructure<Real> diagonalize(const MatX<Real>& a, const ToleranceProfile<Real>& tol = {}) {
  if (a.rows() != a.cols() || a.rows() < 1) throw DimensionMismatch("diagonalize: matrix must be square");
  Eigen::ComplexEigenSolver<MatX<Real>> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw Error("diagonalize: eigensolver failed to converge");

  EigenStructure<Real> es = eigen_structure_from<Real>(solver.eigenvectors(), solver.eigenvalues(), tol);
  const Real residual = (a * es.W - es.W * es.lambdas.asDiagonal()).norm();
  if (residual > tol.tau_eig * std::max(Real(1), a.norm()))
    throw Error("diagonalize: eigendecomposition residual above tau_eig");
  return es;
}

/// An inner product compatible with `base`: B = (W D W^H)^{-1} with D HPD
/// block diagonal matching the eigenvalue groups.
template <class Real = double>
struct AdmissibleB {
  EigenStructure<Real> base;
  MatX<Real> D;
  HpdMatrix<Real> B;
};

/// Builds (W D W^H)^{-1} for a caller-supplied block-diagonal D and certifies
/// the result HPD. D must vanish outside the group blocks and be HPD.
template <class Real>
AdmissibleB<Real> admissible_b(const EigenStructure<Real>& es, const MatX<Real>& d,
                               const ToleranceProfile<Real>& tol = {}) {
  const Index n = es.size();
  if (d.rows() != n || d.cols() != n) throw DimensionMismatch("admissible_b: D must be n x n");

  MatX<Real> off = d;
  for (const auto& group : es.groups)
    for (Index i : group)
      for (Index j : group) off(i, j) = Cplx<Real>(0, 0);
  if (off.norm() > tol.tau_eq * std::max(Real(1), d.norm()))
    throw Error("admissible_b: D has mass outside the eigenvalue-group blocks");
  if (hermitian_residual(d) > tol.tau_herm) throw NotHpd("admissible_b: D is not Hermitian");
  const RealVecX<Real> d_eigs = hermitian_eigenvalues(d);
  if (!(d_eigs(0) > tol.tau_rank * d_eigs(n - 1)) || !(d_eigs(n - 1) > Real(0)))
    throw NotHpd("admissible_b: D is not positive definite");

  MatX<Real> s = es.W * d * es.W.adjoint();
  s = (s + MatX<Real>(s.adjoint())) / Real(2);
  Eigen::SelfAdjointEigenSolver<MatX<Real>> eig(s);
  if (eig.info() != Eigen::Success) throw Error("admissible_b: eigendecomposition of W D W^H failed");
  const RealVecX<Real> sd = eig.eigenvalues();
  if (!(sd(0) > Real(0))) throw NotHpd("admissible_b: W D W^H is not positive definite to working precision");
  MatX<Real> b = eig.eigenvectors() * sd.cwiseInverse().template cast<Cplx<Real>>().asDiagonal() *
                 eig.eigenvectors().adjoint();
  b = (b + MatX<Real>(b.adjoint())) / Real(2);
  return {es, d, HpdMatrix<Real>(std::move(b), tol)};
}

/// Draws a random admissible inner product: each group block is G G^H + 1e-3 I
/// with i.i.d. standard complex Gaussian G, keyed by `seed`.
template <class Real>
AdmissibleB<Real> sample_admissible_b(const EigenStructure<Real>& es, std::uint64_t seed,
                                      const ToleranceProfile<Real>& tol = {}) {
  std::mt19937_64 rng(seed);
  const Index n = es.size();
  MatX<Real> d = MatX<Real>::Zero(n, n);
  for (const auto& group : es.groups) {
    const Index g = Index(group.size());
    const MatX<Real> gm = random_complex_gaussian<Real>(g, g, rng);
    MatX<Real> block = gm * gm.adjoint() + Real(1e-3) * MatX<Real>::Identity(g, g);
    block = (block + MatX<Real>(block.adjoint())) / Real(2);
    for (Index i = 0; i < g; ++i)
      for (Index j = 0; j < g; ++j) d(group[std::size_t(i)], group[std::size_t(j)]) = block(i, j);
  }
  return admissible_b(es, d, tol);
}

template <class Real = double>
struct BUnitaryDiagonalization {
  MatX<Real> U;       // B-unitary eigenvectors, U^H B U = I
  VecX<Real> D;       // eigenvalues matching U's columns
};

/// A = U D U^{-1} with U B-unitary, through the unitary diagonalization of
/// the normal matrix B^{1/2} A B^{-1/2}. Throws NotBNormal when the
/// commutator test fails or the Schur form refuses to be diagonal.
template <class Real>
BUnitaryDiagonalization<Real> b_unitary_diagonalize(const MatX<Real>& a, const HpdMatrix<Real>& B,
                                                    const ToleranceProfile<Real>& tol = {}) {
  const auto normal = is_b_normal(a, B, tol.tau_eq);
  if (!normal.ok)
    throw NotBNormal("b_unitary_diagonalize: commutator residual " + std::to_string(double(normal.residual)));

  const MatX<Real> similar = B.sqrt() * a * B.invSqrt();
  Eigen::ComplexSchur<MatX<Real>> schur(similar, /*computeU=*/true);
  if (schur.info() != Eigen::Success) throw Error("b_unitary_diagonalize: Schur decomposition failed");

  BUnitaryDiagonalization<Real> result;
  result.U = B.invSqrt() * schur.matrixU();
  result.D = schur.matrixT().diagonal();

  const MatX<Real> u_inv = schur.matrixU().adjoint() * B.sqrt();
  const Real recon = (a - result.U * result.D.asDiagonal() * u_inv).norm();
  if (recon > Real(10) * tol.tau_eq * std::max(Real(1), a.norm()))
    throw NotBNormal("b_unitary_diagonalize: reconstruction residual " + std::to_string(double(recon)) +
                     "; input passed the commutator test but is not B-unitarily diagonalizable to tolerance");
  return result;
}

namespace detail {

/// Newton-form interpolation polynomial with p(z_i) = conj(z_i) on the given
/// nodes, evaluated at the matrix argument.
template <class Real>
MatX<Real> conjugation_polynomial_at(const MatX<Real>& a, const std::vector<Cplx<Real>>& nodes) {
  const Index n = a.rows();
  const std::size_t k = nodes.size();
  std::vector<Cplx<Real>> coeff(k);
  for (std::size_t i = 0; i < k; ++i) coeff[i] = std::conj(nodes[i]);
  for (std::size_t level = 1; level < k; ++level)
    for (std::size_t i = k - 1; i >= level; --i)
      coeff[i] = (coeff[i] - coeff[i - 1]) / (nodes[i] - nodes[i - level]);

  MatX<Real> value = coeff[0] * MatX<Real>::Identity(n, n);
  MatX<Real> basis = MatX<Real>::Identity(n, n);
  for (std::size_t i = 1; i < k; ++i) {
    basis = basis * (a - nodes[i - 1] * MatX<Real>::Identity(n, n));
    value += coeff[i] * basis;
  }
  return value;
}

template <class Real>
std::vector<Cplx<Real>> group_representatives(const EigenStructure<Real>& es) {
  std::vector<Cplx<Real>> reps;
  reps.reserve(es.groups.size());
  for (const auto& group : es.groups) {
    Cplx<Real> s(0, 0);
    for (Index i : group) s += es.lambdas(i);
    reps.push_back(s / Real(group.size()));
  }
  return reps;
}

}  // namespace detail

/// Tests A^+ = p(A) for the divided-difference polynomial interpolating
/// p(lambda) = conj(lambda) on the distinct eigenvalue representatives.
/// Throws Defective when A is not diagonalizable.
template <class Real>
bool adjoint_polynomial_check(const MatX<Real>& a, const HpdMatrix<Real>& B,
                              Real tol = ToleranceProfile<Real>{}.tau_eq) {
  const EigenStructure<Real> es = diagonalize<Real>(a);
  const MatX<Real> p_of_a = detail::conjugation_polynomial_at<Real>(a, detail::group_representatives(es));
  const Real residual = (p_of_a - b_adjoint(a, B)).norm();
  return residual <= tol * std::max(Real(1), a.norm());
}

/// The five B-normality characterizations evaluated side by side:
/// commutator, adjoint polynomial, B-unitary diagonalizability, eigenvector
/// sharing with the adjoint, and the block factorization of B^{-1} in the
/// eigenvector basis. Throws Defective when A is not diagonalizable (the
/// last four are undefined then).
template <class Real = double>
struct BNormalCharacterizations {
  PredicateResult<Real> commutator;
  PredicateResult<Real> polynomial;
  PredicateResult<Real> unitary_diagonalization;
  PredicateResult<Real> eigenvector_sharing;
  PredicateResult<Real> factor_structure;

  bool agree() const {
    const bool v = commutator.ok;
    return polynomial.ok == v && unitary_diagonalization.ok == v && eigenvector_sharing.ok == v &&
           factor_structure.ok == v;
  }
  bool verdict() const { return commutator.ok; }
};

template <class Real>
BNormalCharacterizations<Real> b_normal_characterizations(const MatX<Real>& a, const HpdMatrix<Real>& B,
                                                          const ToleranceProfile<Real>& tol = {}) {
  BNormalCharacterizations<Real> out;
  const EigenStructure<Real> es = diagonalize<Real>(a, tol);
  const MatX<Real> aplus = b_adjoint(a, B);
  const Real a_norm = std::max(Real(1), a.norm());

  out.commutator = is_b_normal(a, B, tol.tau_eq);

  const MatX<Real> p_of_a = detail::conjugation_polynomial_at<Real>(a, detail::group_representatives(es));
  const Real poly_res = (p_of_a - aplus).norm();
  out.polynomial = {poly_res <= tol.tau_eq * a_norm, poly_res};

  {
    const MatX<Real> similar = B.sqrt() * a * B.invSqrt();
    Eigen::ComplexSchur<MatX<Real>> schur(similar, /*computeU=*/true);
    if (schur.info() != Eigen::Success) throw Error("b_normal_characterizations: Schur decomposition failed");
    const MatX<Real> u = B.invSqrt() * schur.matrixU();
    const MatX<Real> u_inv = schur.matrixU().adjoint() * B.sqrt();
    const VecX<Real> diag = schur.matrixT().diagonal();
    const Real recon = (a - u * diag.asDiagonal() * u_inv).norm();
    out.unitary_diagonalization = {recon <= tol.tau_eq * a_norm, recon};
  }

  {
    Real worst = Real(0);
    const Real scale = std::max(Real(1), aplus.norm());
    for (Index i = 0; i < es.size(); ++i) {
      const VecX<Real> w = es.W.col(i);
      const Real res = (aplus * w - std::conj(es.lambdas(i)) * w).norm() / w.norm();
      worst = std::max(worst, res / scale);
    }
    out.eigenvector_sharing = {worst <= tol.tau_eq, worst};
  }

  {
    // B^{-1} = W D W^H with block-diagonal HPD D is equivalent to
    // W^H B W being block diagonal per eigenvalue group (HPD is automatic
    // by congruence).
    const MatX<Real> gram = es.W.adjoint() * B.matrix() * es.W;
    MatX<Real> off = gram;
    for (const auto& group : es.groups)
      for (Index i : group)
        for (Index j : group) off(i, j) = Cplx<Real>(0, 0);
    const Real rel = off.norm() / gram.norm();
    out.factor_structure = {rel <= tol.tau_eq, rel};
  }

  return out;
}

}  // namespace btg
