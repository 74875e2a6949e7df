#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "btg/harness/examples.hpp"
#include "btg/twogrid.hpp"
#include "btg/types.hpp"

namespace btg::harness {

struct GeneratorSpec {
  std::string type = "conv-diff";
  int n = 16;
  double beta = 0.0;
  std::string scheme = "central";  // central | upwind
};

/// Declarative description of one verification problem; mirrors the JSON the
/// CLI consumes (see README for the schema).
struct ProblemSpec {
  enum class SourceKind { Builtin, Files, Generator };
  enum class BMode { Explicit, Identity, AHA, M, QA, Sampled };
  enum class MInvRule { File, Jacobi, Richardson };

  SourceKind source = SourceKind::Builtin;
  int builtin_index = 1;
  std::string a_path, m_inv_path, b_path;
  GeneratorSpec generator;

  BMode b_mode = BMode::Explicit;
  std::uint64_t sampled_seed = 0;

  MInvRule m_inv_rule = MInvRule::File;
  std::optional<double> omega;  // damping; defaults to 1/rho_est(diag(A)^{-1}A)

  Index nc = 1;
  int nu1 = 1;
  int nu2 = 1;
  std::uint64_t seed = 42;
  int trials = 200;
  ToleranceProfile<double> tol;

  static ProblemSpec from_json_text(const std::string& text, const std::string& origin = "<json>");
  static ProblemSpec from_file(const std::string& path);
};

/// A fully materialized problem: validated matrices plus the two-grid config.
struct Problem {
  std::string name;
  Matrix A;
  Matrix M_inv;
  HpdMatrix<double> B;
  TwoGridConfig<double> cfg;
  std::optional<BuiltinExample> builtin;
  std::string b_mode_name;
  std::uint64_t seed = 0;
  int trials = 0;
  ToleranceProfile<double> tol;
};

Problem load_problem(const ProblemSpec& spec);

/// 1D convection-diffusion -u'' + beta u' on (0,1), Dirichlet boundaries,
/// h = 1/(n+1), central or upwind convection stencil.
Matrix convection_diffusion_1d(int n, double beta, const std::string& scheme);

/// 1/rho_est(diag(A)^{-1} A), the spectral-radius estimate from 100 power
/// iteration steps.
double default_jacobi_omega(const Matrix& a);

}  // namespace btg::harness
