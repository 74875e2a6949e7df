#include <doctest.h>

#include <btg/btg.hpp>

#include "btg/harness/examples.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace btg;
using namespace btg::testing;

namespace {

Vector unit(Index n, Index k) {
  Vector e = Vector::Zero(n);
  e(k) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("b_inner basic values and the reference B") {
  const HpdMatrix<double> id3 = HpdMatrix<double>::Identity(3);
  CHECK(std::abs(b_inner(unit(3, 0), unit(3, 0), id3) - Complex(1, 0)) == 0.0);

  const auto ex2 = harness::builtin_example(2);
  const HpdMatrix<double> b(ex2.B);
  CHECK(std::abs(b_inner(unit(3, 1), unit(3, 2), b) - Complex(-2, 0)) < 1e-15);

  CHECK_THROWS_AS(b_inner(unit(3, 0), Vector(Vector::Zero(4)), id3), DimensionMismatch);
}

TEST_CASE("b_inner matches an explicit summation loop") {
  std::mt19937_64 rng(91);
  const Matrix bmat = random_hpd_matrix<double>(5, rng);
  const HpdMatrix<double> b(bmat);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector x = random_complex_vector<double>(5, rng);
    const Vector y = random_complex_vector<double>(5, rng);
    const Complex fast = b_inner(x, y, b);
    CHECK(std::abs(fast - naive_b_inner(x, y, bmat)) < 1e-12 * (1.0 + std::abs(fast)));
    CHECK(std::abs(fast - std::conj(b_inner(y, x, b))) < 1e-12 * (1.0 + std::abs(fast)));
  }
}

TEST_CASE("b_vec_norm") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 4;
  d(1, 1) = 1;
  d(2, 2) = 1;
  const HpdMatrix<double> b(d);
  CHECK(b_vec_norm(Vector(Vector::Zero(3)), b) == 0.0);
  CHECK(b_vec_norm(unit(3, 0), b) == doctest::Approx(2.0).epsilon(1e-14));

  std::mt19937_64 rng(17);
  const Matrix bmat = random_hpd_matrix<double>(6, rng);
  const HpdMatrix<double> br(bmat);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector x = random_complex_vector<double>(6, rng);
    const double via_inner = std::sqrt(b_inner(x, x, br).real());
    CHECK(b_vec_norm(x, br) == doctest::Approx(via_inner).epsilon(1e-12));
  }
}

TEST_CASE("b_mat_norm: identity, the divergent reference operator, randomized sup") {
  const HpdMatrix<double> id4 = HpdMatrix<double>::Identity(4);
  CHECK(b_mat_norm(Matrix(Matrix::Identity(4, 4)), id4) == doctest::Approx(1.0).epsilon(1e-14));

  const auto ex3 = harness::builtin_example(3);
  const HpdMatrix<double> b3(ex3.B);
  const double expected = std::sqrt((std::sqrt(1294465.0) + 1217.0) / 1296.0);
  CHECK(b_mat_norm(*ex3.golden_e_south_11, b3) == doctest::Approx(expected).epsilon(1e-12));

  std::mt19937_64 rng(23);
  const Matrix bmat = random_hpd_matrix<double>(6, rng);
  const HpdMatrix<double> b(bmat);
  const Matrix c = random_complex_gaussian<double>(6, 6, rng);
  const double norm = b_mat_norm(c, b);
  const double lower = randomized_b_norm_lower_bound(c, bmat, 1000, 200, 7);
  CHECK(lower <= norm * (1.0 + 1e-12));
  CHECK(lower >= norm * 0.99);
}

TEST_CASE("b_adjoint special cases and algebra") {
  std::mt19937_64 rng(31);
  const Matrix a = random_complex_gaussian<double>(5, 5, rng);

  const HpdMatrix<double> id5 = HpdMatrix<double>::Identity(5);
  CHECK((b_adjoint(a, id5) - a.adjoint()).norm() < 1e-13);

  // For A HPD in its own inner product, the adjoint is A itself.
  const Matrix hpd = random_hpd_matrix<double>(5, rng);
  const HpdMatrix<double> ba(hpd);
  CHECK((b_adjoint(hpd, ba) - hpd).norm() < 1e-10 * hpd.norm());

  const Matrix bmat = random_hpd_matrix<double>(5, rng);
  const HpdMatrix<double> b(bmat);
  const Matrix c = random_complex_gaussian<double>(5, 5, rng);
  const Matrix aplus = b_adjoint(a, b);
  const Matrix cplus = b_adjoint(c, b);
  CHECK((b_adjoint(Matrix(a + c), b) - aplus - cplus).norm() < 1e-10 * (a.norm() + c.norm()));
  CHECK((b_adjoint(Matrix(a * c), b) - cplus * aplus).norm() < 1e-10 * a.norm() * c.norm());
  CHECK((b_adjoint(aplus, b) - a).norm() < 1e-10 * a.norm());

  // The adjoint reproduces the inner-product identity <Ax,y>_B = <x,A+y>_B.
  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = random_complex_vector<double>(5, rng);
    const Vector y = random_complex_vector<double>(5, rng);
    const Complex lhs = b_inner(Vector(a * x), y, b);
    const Complex rhs = b_inner(x, Vector(aplus * y), b);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("is_b_unitary") {
  const HpdMatrix<double> id3 = HpdMatrix<double>::Identity(3);
  CHECK(is_b_unitary(Matrix(Matrix::Identity(3, 3)), id3).ok);

  std::mt19937_64 rng(37);
  const Matrix bmat = random_hpd_matrix<double>(6, rng);
  const HpdMatrix<double> b(bmat);
  const Matrix q = random_unitary<double>(6, rng);
  CHECK(is_b_unitary(Matrix(b.invSqrt() * q), b).ok);
  CHECK_FALSE(is_b_unitary(Matrix(2.0 * b.invSqrt() * q), b).ok);

  // V_r D^{1/2} is B-unitary for the admissible construction of example 1.
  const auto ex1 = harness::builtin_example(1);
  const HpdMatrix<double> b1(ex1.B);
  const HpdMatrix<double> d(*ex1.d_admissible);
  CHECK(is_b_unitary(Matrix(*ex1.v_r * d.sqrt()), b1).ok);
}

TEST_CASE("is_b_normal and is_b_orthogonal_matrix on the reference problems") {
  std::mt19937_64 rng(41);
  const Matrix h = random_hpd_matrix<double>(5, rng);
  const HpdMatrix<double> id5 = HpdMatrix<double>::Identity(5);
  CHECK(is_b_normal(h, id5).ok);
  CHECK(is_b_orthogonal_matrix(h, id5).ok);

  const auto ex1 = harness::builtin_example(1);
  const HpdMatrix<double> b1(ex1.B);
  CHECK(is_b_normal(ex1.A, b1).ok);
  CHECK(is_b_orthogonal_matrix(ex1.A, b1).ok);

  const auto ex3 = harness::builtin_example(3);
  const HpdMatrix<double> b3(ex3.B);
  CHECK_FALSE(is_b_normal(ex3.A, b3).ok);
}

TEST_CASE("B-orthogonal matrices have a real spectrum") {
  const auto inst = make_b_orthogonal_instance(6, 443);
  CHECK(is_b_orthogonal_matrix(inst.a, inst.b.B, 1e-8).ok);
  Eigen::ComplexEigenSolver<Matrix> es(inst.a, false);
  CHECK(es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("norm identities: ||A||_B^2 = lambda_max(A+A) = lambda_max(AA+)") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    std::mt19937_64 rng(derive_seed(50, seed));
    const Index n = 4 + Index(seed % 5);
    const Matrix a = random_complex_gaussian<double>(n, n, rng);
    const Matrix bmat = random_hpd_matrix<double>(n, rng);
    const HpdMatrix<double> b(bmat);
    const Matrix aplus = b_adjoint(a, b);
    const double norm = b_mat_norm(a, b);
    const double left = hermitian_eigenvalues(Matrix(b.sqrt() * (aplus * a) * b.invSqrt())).maxCoeff();
    const double right = hermitian_eigenvalues(Matrix(b.sqrt() * (a * aplus) * b.invSqrt())).maxCoeff();
    CHECK(norm * norm == doctest::Approx(left).epsilon(1e-8));
    CHECK(norm * norm == doctest::Approx(right).epsilon(1e-8));
    CHECK(b_mat_norm(aplus, b) == doctest::Approx(norm).epsilon(1e-8));
  }
}

TEST_CASE("B-normal matrices: ||A||_B = rho(A)") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto inst = make_b_normal_instance(5 + Index(seed), derive_seed(60, seed));
    REQUIRE(is_b_normal(inst.a, inst.b.B, 1e-8).ok);
    CHECK(b_mat_norm(inst.a, inst.b.B) ==
          doctest::Approx(spectral_radius(inst.a)).epsilon(1e-8));
  }
}

TEST_CASE("B-orthogonal implies B-normal; real spectrum iff B-orthogonal for B-normal A") {
  const auto orth = make_b_orthogonal_instance(5, 77);
  CHECK(is_b_normal(orth.a, orth.b.B, 1e-8).ok);

  // A B-normal instance with genuinely complex eigenvalues must not be
  // B-orthogonal.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto inst = make_b_normal_instance(5, derive_seed(80, seed));
    Eigen::ComplexEigenSolver<Matrix> es(inst.a, false);
    const double max_imag = es.eigenvalues().imag().cwiseAbs().maxCoeff();
    if (max_imag < 1e-3) continue;  // complex Gaussian spectra are a.s. complex
    CHECK_FALSE(is_b_orthogonal_matrix(inst.a, inst.b.B, 1e-8).ok);
  }
}

TEST_CASE("HpdMatrix validation") {
  Matrix not_herm(2, 2);
  not_herm << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
  CHECK_THROWS_AS(HpdMatrix<double>{not_herm}, NotHpd);

  Matrix indefinite(2, 2);
  indefinite << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  CHECK_THROWS_AS(HpdMatrix<double>{indefinite}, NotHpd);

  std::mt19937_64 rng(3);
  const Matrix good = random_hpd_matrix<double>(7, rng);
  const HpdMatrix<double> b(good);
  CHECK((b.sqrt() * b.sqrt() - good).norm() < 1e-12 * good.norm());
  CHECK((b.sqrt() * b.invSqrt() - Matrix::Identity(7, 7)).norm() < 1e-12 * std::sqrt(7.0));
  const Matrix rhs = random_complex_gaussian<double>(7, 2, rng);
  CHECK((good * b.solve(rhs) - rhs).norm() < 1e-10 * rhs.norm());
}
