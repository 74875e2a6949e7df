#pragma once

#include <cstdint>
#include <random>

#include "btg/types.hpp"

namespace btg {

/// splitmix64 step; used to derive independent per-trial seeds from a root
/// seed so trials can be evaluated in any order.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <class Real>
Cplx<Real> standard_complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  const Real scale = Real(1) / std::sqrt(Real(2));
  return Cplx<Real>(normal(rng) * scale, normal(rng) * scale);
}

template <class Real>
MatX<Real> random_complex_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  MatX<Real> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = standard_complex_gaussian<Real>(rng);
  return m;
}

template <class Real>
VecX<Real> random_complex_vector(Index n, std::mt19937_64& rng) {
  VecX<Real> v(n);
  for (Index i = 0; i < n; ++i) v(i) = standard_complex_gaussian<Real>(rng);
  return v;
}

/// G G^H + shift * (tr(G G^H)/n) * I. The relative shift bounds the condition
/// number by roughly n/shift.
template <class Real>
MatX<Real> random_hpd_matrix(Index n, std::mt19937_64& rng, Real shift = Real(1e-2)) {
  const MatX<Real> g = random_complex_gaussian<Real>(n, n, rng);
  MatX<Real> b = g * g.adjoint();
  const Real mean_diag = b.real().trace() / Real(n);
  b += shift * mean_diag * MatX<Real>::Identity(n, n);
  return (b + MatX<Real>(b.adjoint())) / Real(2);
}

template <class Real>
MatX<Real> random_unitary(Index n, std::mt19937_64& rng) {
  const MatX<Real> g = random_complex_gaussian<Real>(n, n, rng);
  Eigen::HouseholderQR<MatX<Real>> qr(g);
  MatX<Real> q = qr.householderQ();
  return q;
}

}  // namespace btg
