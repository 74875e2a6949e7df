#pragma once

#include <optional>
#include <string>

#include "btg/types.hpp"

namespace btg::harness {

/// One of the three built-in 3x3 reference problems, with every matrix the
/// accompanying analysis displays, stored from exact ratios.
struct BuiltinExample {
  std::string name;
  Matrix A;
  Matrix M_inv;
  Matrix B;
  Index nc = 1;

  // Fixed transfer vectors the analysis works with.
  std::optional<Matrix> p_sharp, r_sharp;  // leading generalized eigenvectors (examples 1, 3)
  std::optional<Matrix> p_hat;             // eigenvector of Mhat^{-1}B for the smallest mu (example 2)

  // Eigenstructure data (example 1).
  std::optional<Matrix> v_r, v_l, d_admissible;

  // Displayed matrices and values.
  std::optional<Matrix> golden_pi;
  std::optional<Matrix> golden_e_plus_11;
  std::optional<Matrix> golden_e_south_11;
  std::optional<Matrix> golden_m_hat_inv;
  std::optional<RealVector> golden_mus;             // ascending spectrum of Mhat^{-1}B
  std::optional<double> golden_pi_b_norm;
  std::optional<double> golden_e_plus_11_b_norm;
  std::optional<double> golden_e_south_11_b_norm;
};

/// index in {1, 2, 3}.
BuiltinExample builtin_example(int index);

}  // namespace btg::harness
