#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "btg/harness/examples.hpp"
#include "btg/harness/problem.hpp"
#include "btg/harness/report.hpp"
#include "btg/harness/verify.hpp"
#include "btg/io/matrix_market.hpp"
#include "test_util.hpp"

using namespace btg;
using namespace btg::harness;

TEST_CASE("matrix market: array and coordinate, real and complex, symmetry expansion") {
  {
    std::istringstream in(
        "%%MatrixMarket matrix array real general\n"
        "% comment\n"
        "2 3\n"
        "1\n2\n3\n4\n5\n6\n");
    const Matrix m = io::read_matrix_market(in);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m(0, 0) == Complex(1, 0));
    CHECK(m(1, 0) == Complex(2, 0));  // column-major order
    CHECK(m(0, 1) == Complex(3, 0));
    CHECK(m(1, 2) == Complex(6, 0));
  }
  {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate complex hermitian\n"
        "2 2 2\n"
        "1 1 3.0 0.0\n"
        "2 1 1.0 -2.0\n");
    const Matrix m = io::read_matrix_market(in);
    CHECK(m(1, 0) == Complex(1, -2));
    CHECK(m(0, 1) == Complex(1, 2));
    CHECK(m(0, 0) == Complex(3, 0));
  }
  {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real skew-symmetric\n"
        "2 2 1\n"
        "2 1 5.0\n");
    const Matrix m = io::read_matrix_market(in);
    CHECK(m(1, 0) == Complex(5, 0));
    CHECK(m(0, 1) == Complex(-5, 0));
  }
  {
    std::istringstream bad("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n");
    CHECK_THROWS_AS(io::read_matrix_market(bad), ParseError);
  }
  {
    std::istringstream bad("not a matrix market file\n");
    CHECK_THROWS_AS(io::read_matrix_market(bad), ParseError);
  }
}

TEST_CASE("matrix market write/read round trip is exact") {
  std::mt19937_64 rng(801);
  const Matrix m = random_complex_gaussian<double>(5, 3, rng);
  std::ostringstream out;
  io::write_matrix_market(out, m);
  std::istringstream in(out.str());
  const Matrix back = io::read_matrix_market(in);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

  const Matrix real_m = m.real().cast<Complex>();
  std::ostringstream out2;
  io::write_matrix_market(out2, real_m);
  CHECK(out2.str().find(" real ") != std::string::npos);
  std::istringstream in2(out2.str());
  CHECK((io::read_matrix_market(in2) - real_m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("builtin examples expose the exact displayed entries") {
  const auto ex1 = builtin_example(1);
  CHECK(ex1.A(0, 0) == Complex(7.0 / 8.0, 0));
  CHECK(ex1.B(2, 2) == Complex(7.0 / 24.0, 0));
  const auto ex2 = builtin_example(2);
  CHECK(ex2.B(1, 2) == Complex(-2, 0));
  CHECK(ex2.A(1, 2) == Complex(1, 0));
  const auto ex3 = builtin_example(3);
  CHECK(ex3.A(0, 2) == Complex(1.0 / 12.0, 0));
  CHECK(ex3.A(2, 2) == Complex(1.0 / 3.0, 0));
  CHECK_THROWS(builtin_example(0));
}

TEST_CASE("stored eigenvector data really diagonalizes the example operators") {
  for (int index : {1, 3}) {
    const auto ex = builtin_example(index);
    REQUIRE(ex.v_r.has_value());
    REQUIRE(ex.v_l.has_value());
    // A V_r = V_r Lambda and V_l^H A = Lambda V_l^H with a shared Lambda.
    const Matrix lambda_r = ex.v_r->inverse() * ex.A * *ex.v_r;
    CHECK((lambda_r - Matrix(lambda_r.diagonal().asDiagonal())).norm() < 1e-12);
    const Matrix lambda_l = ex.v_l->adjoint() * ex.A * ex.v_l->adjoint().inverse();
    CHECK((lambda_l - Matrix(lambda_l.diagonal().asDiagonal())).norm() < 1e-12);
    CHECK((lambda_r.diagonal() - lambda_l.diagonal()).norm() < 1e-12);
    // The analyzed transfer vectors are the leading columns.
    CHECK((ex.v_r->col(0) - *ex.p_sharp).norm() < 1e-14);
    CHECK((ex.v_l->col(0) - *ex.r_sharp).norm() < 1e-14);
    // Cross terms l_i^H A r_j vanish across distinct eigenvalues; inside a
    // repeated eigenspace the displayed bases need not be biorthogonal.
    const Matrix cross = ex.v_l->adjoint() * ex.A * *ex.v_r;
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j)
        if (std::abs(lambda_r(i, i) - lambda_r(j, j)) > 1e-8)
          CHECK(std::abs(cross(i, j)) < 1e-12);
  }
}

TEST_CASE("the core instantiates for float scalars") {
  using FMatrix = MatX<float>;
  ToleranceProfile<float> tol;
  tol.tau_herm = 1e-5f;
  tol.tau_eq = 1e-4f;
  tol.tau_eig = 1e-3f;
  tol.tau_recon = 1e-4f;
  tol.tau_rank = 1e-6f;
  std::mt19937_64 rng(31415);
  const FMatrix bmat = random_hpd_matrix<float>(4, rng, 1e-1f);
  const HpdMatrix<float> b(bmat, tol);
  const FMatrix a = random_complex_gaussian<float>(4, 4, rng);
  const FMatrix aplus = b_adjoint(a, b);
  CHECK((b_adjoint(aplus, b) - a).norm() < 1e-4f * a.norm());
  CHECK(b_mat_norm(a, b) > 0.0f);
  TwoGridConfig<float> cfg(a, FMatrix(0.1f * FMatrix::Identity(4, 4)), b, 1, 1, 2);
  const FMatrix p = random_complex_gaussian<float>(4, 2, rng);
  const FMatrix r = random_complex_gaussian<float>(4, 2, rng);
  const auto tp = make_transfer_pair(cfg.A, p, r, tol);
  const FMatrix e = e_south(cfg, tp, tol);
  CHECK(e.allFinite());
}

TEST_CASE("convection-diffusion generator") {
  const Matrix sym = convection_diffusion_1d(16, 0.0, "central");
  CHECK((sym - Matrix(sym.adjoint())).norm() < 1e-12 * sym.norm());

  const Matrix upwind = convection_diffusion_1d(16, 25.0, "upwind");
  CHECK((upwind - Matrix(upwind.adjoint())).norm() > 1e-3 * upwind.norm());
  for (int n : {4, 16, 33}) {
    for (double beta : {0.0, 10.0, -40.0}) {
      for (const char* scheme : {"central", "upwind"}) {
        const Matrix a = convection_diffusion_1d(n, beta, scheme);
        Eigen::JacobiSVD<Matrix> svd(a);
        CHECK(svd.singularValues()(n - 1) > 1e-12 * svd.singularValues()(0));
      }
    }
  }
  CHECK_THROWS_AS(convection_diffusion_1d(16, 0.0, "upstream"), ParseError);

  const Matrix lap = convection_diffusion_1d(32, 0.0, "central");
  const double omega = default_jacobi_omega(lap);
  CHECK(omega > 0.4);
  CHECK(omega < 0.7);  // rho(D^{-1} Laplacian) approaches 2
}

TEST_CASE("problem spec parsing and loading") {
  const std::string text = R"({
    "source": {"generator": {"type": "conv-diff", "n": 12, "beta": 6.0, "scheme": "upwind"}},
    "b_mode": "aha",
    "m_inv": {"rule": "jacobi", "omega": 0.5},
    "nc": 3, "nu1": 1, "nu2": 0, "seed": 9, "trials": 20
  })";
  const ProblemSpec spec = ProblemSpec::from_json_text(text);
  const Problem prob = load_problem(spec);
  CHECK(prob.A.rows() == 12);
  CHECK(prob.cfg.nc == 3);
  CHECK(prob.b_mode_name == "aha");
  // B = A^H A is HPD by construction; M^{-1} = 0.5 diag(A)^{-1}.
  CHECK(std::abs(prob.M_inv(0, 0) - 0.5 / prob.A(0, 0)) < 1e-15);

  CHECK_THROWS_AS(ProblemSpec::from_json_text("{\"source\": {}}"), ParseError);
  CHECK_THROWS_AS(ProblemSpec::from_json_text("not json"), ParseError);
  CHECK_THROWS_AS(
      ProblemSpec::from_json_text(R"({"source": {"builtin": 1, "generator": {"n": 4}}})"),
      ParseError);

  const std::string sampled = R"({
    "source": {"generator": {"n": 8, "beta": 4.0}},
    "b_mode": {"sampled": {"seed": 3}},
    "nc": 2, "trials": 10
  })";
  const Problem prob2 = load_problem(ProblemSpec::from_json_text(sampled));
  CHECK(is_b_normal(Matrix(prob2.M_inv * prob2.A), prob2.B, 1e-9).ok);

  // b_mode "m": B is the inverse of the (diagonal, positive) Jacobi action.
  const std::string bm = R"({
    "source": {"generator": {"n": 8, "beta": 4.0}},
    "b_mode": "m",
    "m_inv": {"rule": "jacobi", "omega": 0.6},
    "nc": 2, "trials": 5
  })";
  const Problem prob3 = load_problem(ProblemSpec::from_json_text(bm));
  CHECK((prob3.B.matrix() * prob3.M_inv - Matrix::Identity(8, 8)).norm() < 1e-12);

  // b_mode "qa": B = V Sigma V^H from the SVD of A, and B = Q A for Q = V U^H.
  const std::string qa = R"({
    "source": {"generator": {"n": 8, "beta": 4.0}},
    "b_mode": "qa",
    "m_inv": {"rule": "richardson"},
    "nc": 2, "trials": 5
  })";
  const Problem prob4 = load_problem(ProblemSpec::from_json_text(qa));
  Eigen::JacobiSVD<Matrix> svd(prob4.A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix q = svd.matrixV() * svd.matrixU().adjoint();
  CHECK((prob4.B.matrix() - q * prob4.A).norm() < 1e-10 * prob4.B.matrix().norm());
}

TEST_CASE("builtin verification runs: examples pass with the expected skips") {
  for (int index : {1, 2, 3}) {
    ProblemSpec spec;
    spec.source = ProblemSpec::SourceKind::Builtin;
    spec.builtin_index = index;
    spec.trials = 25;
    const VerificationReport report = run_verification(spec);
    CHECK(report.failed() == 0);
    CHECK(report.passed() > 5);
    if (index == 2) {
      // Defective smoothing operator: characterization suite must be skipped.
      bool found = false;
      for (const auto& c : report.checks)
        if (c.id == "bnormal.characterizations") {
          found = true;
          CHECK(c.verdict == Verdict::Skipped);
        }
      CHECK(found);
    }
    if (index == 3) {
      bool sharp_skipped = false, golden_divergent = false;
      for (const auto& c : report.checks) {
        if (c.id == "twogrid.sharp-prediction") sharp_skipped = (c.verdict == Verdict::Skipped);
        if (c.id == "golden.example3.divergent-norm") golden_divergent = (c.verdict == Verdict::Pass);
      }
      CHECK(sharp_skipped);
      CHECK(golden_divergent);
    }
  }
}

TEST_CASE("reports are deterministic and machine-readable") {
  ProblemSpec spec;
  spec.source = ProblemSpec::SourceKind::Builtin;
  spec.builtin_index = 1;
  spec.trials = 10;
  const VerificationReport r1 = run_verification(spec);
  const VerificationReport r2 = run_verification(spec);
  const std::string j1 = render_report(r1, ReportFormat::Json);
  const std::string j2 = render_report(r2, ReportFormat::Json);
  CHECK(j1 == j2);

  // JSON round-trips through a parser without loss of the check list.
  const auto parsed = nlohmann::json::parse(j1);
  CHECK(parsed.at("checks").size() == r1.checks.size());
  CHECK(parsed.at("summary").at("fail").get<int>() == 0);
  for (const auto& c : parsed.at("checks")) {
    CHECK(c.contains("check_id"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("values"));
    CHECK(c.contains("tol"));
    CHECK(c.contains("verdict"));
  }

  // CSV has one row per executed check plus the header.
  const std::string csv = render_report(r1, ReportFormat::Csv);
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == long(r1.checks.size()) + 1);

  // An empty report still renders valid output with zero rows.
  VerificationReport empty;
  empty.source = "empty";
  const std::string csv_empty = render_report(empty, ReportFormat::Csv);
  CHECK(std::count(csv_empty.begin(), csv_empty.end(), '\n') == 1);
  const auto parsed_empty = nlohmann::json::parse(render_report(empty, ReportFormat::Json));
  CHECK(parsed_empty.at("checks").empty());
}

TEST_CASE("verification of a generated nonsymmetric problem") {
  ProblemSpec spec = ProblemSpec::from_json_text(R"({
    "source": {"generator": {"type": "conv-diff", "n": 10, "beta": 8.0, "scheme": "upwind"}},
    "b_mode": "identity",
    "m_inv": {"rule": "jacobi"},
    "nc": 3, "nu1": 1, "nu2": 1, "seed": 5, "trials": 15
  })");
  const VerificationReport report = run_verification(spec);
  CHECK(report.failed() == 0);
  CHECK(report.n == 10);
  // The upwind operator is diagonalizable but M^{-1}A is not I-normal, so the
  // generalized-eigenvector construction must step aside.
  bool hat_seen = false;
  for (const auto& c : report.checks) {
    if (c.id == "twogrid.hat-prediction") {
      hat_seen = true;
      CHECK(c.verdict == Verdict::Pass);
    }
    if (c.id == "twogrid.sharp-prediction") CHECK(c.verdict == Verdict::Skipped);
  }
  CHECK(hat_seen);
}

TEST_CASE("emit_report writes files in all three formats") {
  ProblemSpec spec;
  spec.source = ProblemSpec::SourceKind::Builtin;
  spec.builtin_index = 1;
  spec.trials = 5;
  const VerificationReport report = run_verification(spec);
  for (auto format : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Text}) {
    const std::string path = "harness_test_report.out";
    emit_report(report, format, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == render_report(report, format));
    std::remove(path.c_str());
  }
  CHECK_THROWS_AS(emit_report(report, ReportFormat::Json, "/nonexistent-dir/report.json"), IoError);
  CHECK_THROWS_AS(parse_format("yaml"), ParseError);
  CHECK(parse_format("csv") == ReportFormat::Csv);
}

TEST_CASE("file-based problems round-trip through the generator and loader") {
  const Matrix a = convection_diffusion_1d(10, 5.0, "central");
  const std::string a_path = "harness_test_a.mtx";
  io::write_matrix_market(a_path, a);
  const std::string text = std::string(R"({
    "source": {"files": {"a": ")") + a_path + R"("}},
    "b_mode": "identity",
    "m_inv": {"rule": "jacobi"},
    "nc": 2, "trials": 5
  })";
  const Problem prob = load_problem(ProblemSpec::from_json_text(text));
  CHECK((prob.A - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK(prob.B.matrix().isIdentity(0.0));
  std::remove(a_path.c_str());
}
