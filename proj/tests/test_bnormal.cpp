#include <doctest.h>

#include <btg/btg.hpp>

#include "btg/harness/examples.hpp"
#include "test_util.hpp"

using namespace btg;
using namespace btg::testing;

TEST_CASE("diagonalize: diagonal input, grouped doubles, defective input") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 2;
  d(2, 2) = 3;
  const auto es = diagonalize<double>(d);
  CHECK(es.groups.size() == 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(std::abs(es.lambdas(i) - Complex(double(i + 1), 0)) < 1e-12);
    // Columns of W are unit eigenvectors of a diagonal matrix: +- e_i.
    CHECK(std::abs(std::abs(es.W(i, i)) - 1.0) < 1e-12);
  }

  const auto ex1 = harness::builtin_example(1);
  const auto es1 = diagonalize<double>(ex1.A);
  REQUIRE(es1.groups.size() == 2);
  CHECK(es1.groups[0].size() == 1);
  CHECK(es1.groups[1].size() == 2);
  CHECK(std::abs(es1.lambdas(0) - Complex(0.25, 0)) < 1e-10);
  CHECK(std::abs(es1.lambdas(1) - Complex(1.5, 0)) < 1e-10);
  CHECK(std::abs(es1.lambdas(2) - Complex(1.5, 0)) < 1e-10);

  const auto ex2 = harness::builtin_example(2);
  CHECK_THROWS_AS(diagonalize<double>(ex2.A), Defective);
}

TEST_CASE("admissible_b reproduces the displayed inner product of example 1") {
  const auto ex1 = harness::builtin_example(1);
  VecX<double> lambdas(3);
  lambdas << Complex(0.25, 0), Complex(1.5, 0), Complex(1.5, 0);
  const auto es = eigen_structure_from<double>(*ex1.v_r, lambdas);
  REQUIRE(es.groups.size() == 2);
  const auto ab = admissible_b(es, *ex1.d_admissible);
  CHECK((ab.B.matrix() - ex1.B).cwiseAbs().maxCoeff() < 1e-12);
  // B reconstructs (W D W^H)^{-1}.
  CHECK((ab.B.matrix() * (es.W * ab.D * es.W.adjoint()) - Matrix::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("admissible_b: W unitary with D = I gives B = I") {
  Matrix h(4, 4);
  std::mt19937_64 rng(5);
  h = random_hpd_matrix<double>(4, rng);
  const auto es = diagonalize<double>(h);  // Hermitian with distinct eigenvalues: unitary W
  const auto ab = admissible_b(es, Matrix(Matrix::Identity(4, 4)));
  CHECK((ab.B.matrix() - Matrix::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("admissible_b rejects a D that ignores the group structure") {
  const auto ex1 = harness::builtin_example(1);
  VecX<double> lambdas(3);
  lambdas << Complex(0.25, 0), Complex(1.5, 0), Complex(1.5, 0);
  const auto es = eigen_structure_from<double>(*ex1.v_r, lambdas);
  Matrix bad = Matrix::Identity(3, 3);
  bad(0, 2) = bad(2, 0) = 0.5;  // couples the 1/4 block with the 3/2 block
  CHECK_THROWS_AS(admissible_b(es, bad), Error);
}

TEST_CASE("sample_admissible_b produces a certified HPD B that makes A B-normal") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = make_b_normal_instance(4 + Index(seed % 3), derive_seed(7, seed));
    const auto verdict = is_b_normal(inst.a, inst.b.B, 1e-9);
    CHECK(verdict.ok);
    // D respects the group partition of the eigenstructure.
    for (const auto& group : inst.b.base.groups)
      for (Index i : group)
        for (Index j = 0; j < inst.b.D.cols(); ++j) {
          bool in_group = false;
          for (Index g : group) in_group = in_group || (g == j);
          if (!in_group) CHECK(std::abs(inst.b.D(i, j)) == 0.0);
        }
  }
}

TEST_CASE("b_unitary_diagonalize") {
  std::mt19937_64 rng(11);
  const Matrix h = random_hpd_matrix<double>(5, rng);
  const HpdMatrix<double> id5 = HpdMatrix<double>::Identity(5);
  const auto classical = b_unitary_diagonalize(h, id5);
  CHECK((classical.U.adjoint() * classical.U - Matrix::Identity(5, 5)).norm() < 1e-12);
  CHECK(classical.D.imag().cwiseAbs().maxCoeff() < 1e-12);

  const auto ex1 = harness::builtin_example(1);
  const HpdMatrix<double> b1(ex1.B);
  const auto diag1 = b_unitary_diagonalize(ex1.A, b1);
  CHECK((diag1.U.adjoint() * b1.matrix() * diag1.U - Matrix::Identity(3, 3)).norm() < 1e-12);
  RealVector sorted = diag1.D.real();
  std::sort(sorted.data(), sorted.data() + sorted.size());
  CHECK(sorted(0) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(sorted(1) == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(sorted(2) == doctest::Approx(1.5).epsilon(1e-10));

  const auto inst = make_b_normal_instance(6, 13);
  const auto diag = b_unitary_diagonalize(inst.a, inst.b.B);
  Eigen::PartialPivLU<Matrix> lu(diag.U);
  const Matrix recon = diag.U * diag.D.asDiagonal() * lu.inverse();
  CHECK((recon - inst.a).norm() < 1e-10 * inst.a.norm());

  const auto ex3 = harness::builtin_example(3);
  const HpdMatrix<double> b3(ex3.B);
  CHECK_THROWS_AS(b_unitary_diagonalize(ex3.A, b3), NotBNormal);
}

TEST_CASE("adjoint_polynomial_check") {
  std::mt19937_64 rng(19);
  Matrix sym = random_complex_gaussian<double>(5, 5, rng);
  sym = ((sym + Matrix(sym.adjoint())) / 2.0).real().cast<Complex>();  // real symmetric
  const HpdMatrix<double> id5 = HpdMatrix<double>::Identity(5);
  CHECK(adjoint_polynomial_check(sym, id5));

  const auto inst = make_b_normal_instance(6, 21);
  CHECK(adjoint_polynomial_check(inst.a, inst.b.B, 1e-8));

  const auto ex3 = harness::builtin_example(3);
  const HpdMatrix<double> b3(ex3.B);
  CHECK_FALSE(adjoint_polynomial_check(ex3.A, b3));
}

TEST_CASE("the five characterizations agree on constructed and perturbed instances") {
  const ToleranceProfile<double> tol = sampled_b_profile();
  int b_normal_seen = 0, perturbed_seen = 0;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Index n = 4 + Index(seed % 4);
    const auto inst = make_b_normal_instance(n, derive_seed(400, seed));

    const auto chars = b_normal_characterizations(inst.a, inst.b.B, tol);
    CHECK(chars.agree());
    CHECK(chars.verdict());
    ++b_normal_seen;

    // Perturb the inner product multiplicatively so it stays HPD but leaves
    // the admissible set.
    std::mt19937_64 rng(derive_seed(401, seed));
    Matrix s = random_complex_gaussian<double>(n, n, rng);
    s = (s + Matrix(s.adjoint())) / 2.0;
    s /= spectral_norm<double>(s);
    const Matrix perturbed =
        inst.b.B.sqrt() * (Matrix::Identity(n, n) + 1e-3 * s) * inst.b.B.sqrt();
    const HpdMatrix<double> b_perturbed(perturbed, tol);
    const auto chars_p = b_normal_characterizations(inst.a, b_perturbed, tol);
    CHECK(chars_p.agree());
    CHECK_FALSE(chars_p.verdict());
    ++perturbed_seen;
  }
  CHECK(b_normal_seen == 15);
  CHECK(perturbed_seen == 15);
}

TEST_CASE("B-normal with real spectrum is B-orthogonal") {
  const auto inst = make_b_orthogonal_instance(6, 31);
  const auto chars = b_normal_characterizations(inst.a, inst.b.B, sampled_b_profile());
  CHECK(chars.verdict());
  CHECK(is_b_orthogonal_matrix(inst.a, inst.b.B, 1e-8).ok);
}
