#pragma once

#include <btg/btg.hpp>

#include <cstdint>
#include <utility>

namespace btg::testing {

/// A random diagonalizable A together with a sampled admissible inner
/// product, so A is B-normal by construction. Seeds are bumped until the
/// conditioning guards hold; fully deterministic for a fixed seed.
struct BNormalInstance {
  Matrix a;
  AdmissibleB<double> b;
};

inline ToleranceProfile<double> sampled_b_profile() {
  ToleranceProfile<double> tol;
  tol.tau_recon = 1e-10;  // sampled B may reach kappa ~ 1e4
  return tol;
}

inline BNormalInstance make_b_normal_instance(Index n, std::uint64_t seed, double cond_w_max = 300.0,
                                              double cond_b_max = 1e4) {
  const ToleranceProfile<double> tol = sampled_b_profile();
  for (std::uint64_t bump = 0; bump < 256; ++bump) {
    std::mt19937_64 rng(derive_seed(seed, bump));
    const Matrix a = random_complex_gaussian<double>(n, n, rng);
    try {
      EigenStructure<double> es = diagonalize<double>(a, tol);
      if (es.condW > cond_w_max) continue;
      AdmissibleB<double> ab = sample_admissible_b(es, derive_seed(seed, 4096 + bump), tol);
      if (ab.B.conditionNumber() > cond_b_max) continue;
      return {a, std::move(ab)};
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("make_b_normal_instance: no admissible draw within 256 attempts");
}

/// A with a prescribed real spectrum and a sampled admissible B, so A is even
/// B-orthogonal (B-normal with real eigenvalues).
inline BNormalInstance make_b_orthogonal_instance(Index n, std::uint64_t seed,
                                                  double cond_w_max = 100.0, double cond_b_max = 1e4) {
  const ToleranceProfile<double> tol = sampled_b_profile();
  for (std::uint64_t bump = 0; bump < 256; ++bump) {
    std::mt19937_64 rng(derive_seed(seed, 512 + bump));
    Matrix w = random_complex_gaussian<double>(n, n, rng);
    if (condition_number<double>(w) > cond_w_max) continue;
    std::uniform_real_distribution<double> uniform(0.2, 1.8);
    VecX<double> lambdas(n);
    for (Index i = 0; i < n; ++i) lambdas(i) = Complex(uniform(rng), 0.0);
    try {
      EigenStructure<double> es = eigen_structure_from<double>(w, lambdas, tol);
      AdmissibleB<double> ab = sample_admissible_b(es, derive_seed(seed, 8192 + bump), tol);
      if (ab.B.conditionNumber() > cond_b_max) continue;
      const Matrix a = es.W * es.lambdas.asDiagonal() * es.W.inverse();
      return {a, std::move(ab)};
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("make_b_orthogonal_instance: no admissible draw within 256 attempts");
}

/// (A, M^{-1}, B) satisfying the smoothing assumption by construction:
/// B^{1/2} A B^{-1/2} has HPD Hermitian part H and M^{-1} = omega I with
/// omega = lambda_min(H)/||Atilde||_2^2 (margin factor 2).
struct ContractiveInstance {
  Matrix a;
  Matrix m_inv;
  HpdMatrix<double> B;
};

inline ContractiveInstance make_contractive_instance(Index n, std::uint64_t seed,
                                                     double skew_scale = 0.5) {
  std::mt19937_64 rng(derive_seed(seed, 1024));
  const Matrix bmat = random_hpd_matrix<double>(n, rng, 1e-2);
  HpdMatrix<double> b(bmat, sampled_b_profile());
  const Matrix g = random_complex_gaussian<double>(n, n, rng);
  const Matrix h = g * g.adjoint() / double(n) + 0.2 * Matrix::Identity(n, n);
  const Matrix k = random_complex_gaussian<double>(n, n, rng);
  const Matrix skew = skew_scale * (k - Matrix(k.adjoint())) / 2.0;
  const Matrix a_tilde = h + skew;
  const Matrix a = b.invSqrt() * a_tilde * b.sqrt();
  const double h_min = hermitian_eigenvalues(a_tilde)(0);
  const double omega = h_min / std::pow(spectral_norm<double>(a_tilde), 2.0);
  const Matrix m_inv = omega * Matrix::Identity(n, n);
  return {a, m_inv, std::move(b)};
}

}  // namespace btg::testing
