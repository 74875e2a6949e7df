#include "btg/harness/problem.hpp"

#include <fstream>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <json.hpp>

#include "btg/bnormal.hpp"
#include "btg/io/matrix_market.hpp"
#include "btg/linalg.hpp"
#include "btg/random.hpp"

namespace btg::harness {

namespace {

using nlohmann::json;

ToleranceProfile<double> tolerances_from_json(const json& j) {
  ToleranceProfile<double> tol;
  const auto get = [&j](const char* key, double& slot) {
    if (j.contains(key)) slot = j.at(key).get<double>();
  };
  get("tau_herm", tol.tau_herm);
  get("tau_eq", tol.tau_eq);
  get("tau_eig", tol.tau_eig);
  get("tau_recon", tol.tau_recon);
  get("tau_rank", tol.tau_rank);
  get("tau_group", tol.tau_group);
  get("tau_angle", tol.tau_angle);
  get("tau_opt", tol.tau_opt);
  get("kappa_max", tol.kappa_max);
  tol.validate();
  return tol;
}

ProblemSpec::BMode parse_b_mode(const json& j, ProblemSpec& spec) {
  if (j.is_object()) {
    if (!j.contains("sampled")) throw ParseError("b_mode object form must be {\"sampled\": {\"seed\": N}}");
    spec.sampled_seed = j.at("sampled").value("seed", std::uint64_t(0));
    return ProblemSpec::BMode::Sampled;
  }
  const std::string s = j.get<std::string>();
  if (s == "explicit") return ProblemSpec::BMode::Explicit;
  if (s == "identity") return ProblemSpec::BMode::Identity;
  if (s == "aha") return ProblemSpec::BMode::AHA;
  if (s == "m") return ProblemSpec::BMode::M;
  if (s == "qa") return ProblemSpec::BMode::QA;
  throw ParseError("unknown b_mode '" + s + "' (expected explicit|identity|aha|m|qa|{sampled})");
}

std::string b_mode_name(ProblemSpec::BMode mode) {
  switch (mode) {
    case ProblemSpec::BMode::Explicit: return "explicit";
    case ProblemSpec::BMode::Identity: return "identity";
    case ProblemSpec::BMode::AHA: return "aha";
    case ProblemSpec::BMode::M: return "m";
    case ProblemSpec::BMode::QA: return "qa";
    case ProblemSpec::BMode::Sampled: return "sampled";
  }
  return "?";
}

Matrix require_square(Matrix m, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionMismatch(what + " must be square and nonempty");
  if (!all_finite(m)) throw ParseError(what + " has non-finite entries");
  return m;
}

}  // namespace

ProblemSpec ProblemSpec::from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
  try {
    ProblemSpec spec;
    if (!j.contains("source")) throw ParseError("missing 'source'");
    const json& src = j.at("source");
    const int source_count = int(src.contains("builtin")) + int(src.contains("files")) +
                             int(src.contains("generator"));
    if (source_count != 1)
      throw ParseError("'source' must contain exactly one of builtin | files | generator");
    if (src.contains("builtin")) {
      spec.source = SourceKind::Builtin;
      spec.builtin_index = src.at("builtin").get<int>();
      spec.nc = 1;
    } else if (src.contains("files")) {
      spec.source = SourceKind::Files;
      const json& f = src.at("files");
      spec.a_path = f.at("a").get<std::string>();
      if (f.contains("m_inv")) {
        spec.m_inv_path = f.at("m_inv").get<std::string>();
        spec.m_inv_rule = MInvRule::File;
      } else {
        spec.m_inv_rule = MInvRule::Jacobi;
      }
      if (f.contains("b")) spec.b_path = f.at("b").get<std::string>();
    } else if (src.contains("generator")) {
      spec.source = SourceKind::Generator;
      const json& g = src.at("generator");
      spec.generator.type = g.value("type", std::string("conv-diff"));
      spec.generator.n = g.at("n").get<int>();
      spec.generator.beta = g.value("beta", 0.0);
      spec.generator.scheme = g.value("scheme", std::string("central"));
      spec.m_inv_rule = MInvRule::Jacobi;
    } else {
      throw ParseError("'source' must contain one of builtin | files | generator");
    }

    if (j.contains("b_mode")) spec.b_mode = parse_b_mode(j.at("b_mode"), spec);
    else if (spec.source != SourceKind::Builtin && spec.b_path.empty()) spec.b_mode = BMode::Identity;

    if (j.contains("m_inv")) {
      const json& m = j.at("m_inv");
      const std::string rule = m.value("rule", std::string("file"));
      if (rule == "file") spec.m_inv_rule = MInvRule::File;
      else if (rule == "jacobi") spec.m_inv_rule = MInvRule::Jacobi;
      else if (rule == "richardson") spec.m_inv_rule = MInvRule::Richardson;
      else throw ParseError("unknown m_inv rule '" + rule + "'");
      if (m.contains("omega")) spec.omega = m.at("omega").get<double>();
    }

    if (j.contains("nc")) spec.nc = j.at("nc").get<Index>();
    spec.nu1 = j.value("nu1", 1);
    spec.nu2 = j.value("nu2", 1);
    spec.seed = j.value("seed", std::uint64_t(42));
    spec.trials = j.value("trials", 200);
    if (j.contains("tolerances")) spec.tol = tolerances_from_json(j.at("tolerances"));
    if (spec.nu1 < 0 || spec.nu2 < 0) throw ParseError("nu1/nu2 must be nonnegative");
    if (spec.trials < 1) throw ParseError("trials must be >= 1");
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

ProblemSpec ProblemSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path);
}

Matrix convection_diffusion_1d(int n, double beta, const std::string& scheme) {
  if (n < 2) throw ParseError("convection_diffusion_1d: n must be >= 2");
  if (scheme != "central" && scheme != "upwind")
    throw ParseError("convection_diffusion_1d: scheme must be 'central' or 'upwind'");
  const double h = 1.0 / double(n + 1);
  const double diff = 1.0 / (h * h);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double lower = -diff, diag = 2.0 * diff, upper = -diff;
    if (scheme == "central") {
      lower += -beta / (2.0 * h);
      upper += beta / (2.0 * h);
    } else if (beta >= 0.0) {
      lower += -beta / h;
      diag += beta / h;
    } else {
      diag += -beta / h;
      upper += beta / h;
    }
    if (i > 0) a(i, i - 1) = lower;
    a(i, i) = diag;
    if (i + 1 < n) a(i, i + 1) = upper;
  }
  return a;
}

double default_jacobi_omega(const Matrix& a) {
  const Index n = a.rows();
  Matrix d_inv_a = a;
  for (Index i = 0; i < n; ++i) {
    const Complex di = a(i, i);
    if (std::abs(di) == 0.0) throw SingularSmoother("default_jacobi_omega: zero diagonal entry");
    d_inv_a.row(i) /= di;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  Vector x = random_complex_vector<double>(n, rng);
  x /= x.norm();
  double estimate = 1.0;
  for (int step = 0; step < 100; ++step) {
    Vector y = d_inv_a * x;
    const double nrm = y.norm();
    if (nrm == 0.0) throw SingularSmoother("default_jacobi_omega: power iteration collapsed");
    estimate = nrm;
    x = y / nrm;
  }
  return 1.0 / estimate;
}

Problem load_problem(const ProblemSpec& spec) {
  spec.tol.validate();

  Matrix a, m_inv;
  std::optional<Matrix> b_explicit;
  std::optional<BuiltinExample> builtin;
  std::string name;

  switch (spec.source) {
    case ProblemSpec::SourceKind::Builtin: {
      BuiltinExample ex = builtin_example(spec.builtin_index);
      if (spec.b_mode != ProblemSpec::BMode::Explicit)
        throw ParseError("builtin examples define their own inner product; b_mode must be 'explicit'");
      a = ex.A;
      m_inv = ex.M_inv;
      b_explicit = ex.B;
      name = ex.name;
      builtin = std::move(ex);
      break;
    }
    case ProblemSpec::SourceKind::Files: {
      a = require_square(io::read_matrix_market(spec.a_path), "A");
      name = spec.a_path;
      break;
    }
    case ProblemSpec::SourceKind::Generator: {
      if (spec.generator.type != "conv-diff")
        throw ParseError("unknown generator type '" + spec.generator.type + "'");
      a = convection_diffusion_1d(spec.generator.n, spec.generator.beta, spec.generator.scheme);
      {
        Eigen::JacobiSVD<Matrix> svd(a);
        const auto& s = svd.singularValues();
        if (s(s.size() - 1) <= spec.tol.tau_rank * s(0))
          throw NearSingularA("generated matrix is singular to tolerance");
      }
      std::ostringstream os;
      os << "conv-diff(n=" << spec.generator.n << ",beta=" << spec.generator.beta << ","
         << spec.generator.scheme << ")";
      name = os.str();
      break;
    }
  }

  const Index n = a.rows();

  if (spec.source != ProblemSpec::SourceKind::Builtin) {
    switch (spec.m_inv_rule) {
      case ProblemSpec::MInvRule::File:
        if (spec.m_inv_path.empty()) throw ParseError("m_inv rule 'file' requires a path");
        m_inv = require_square(io::read_matrix_market(spec.m_inv_path), "M^{-1}");
        if (m_inv.rows() != n) throw DimensionMismatch("M^{-1} dimension does not match A");
        break;
      case ProblemSpec::MInvRule::Jacobi: {
        const double omega = spec.omega.value_or(default_jacobi_omega(a));
        m_inv = Matrix::Zero(n, n);
        for (Index i = 0; i < n; ++i) {
          if (std::abs(a(i, i)) == 0.0) throw SingularSmoother("Jacobi rule: zero diagonal in A");
          m_inv(i, i) = omega / a(i, i);
        }
        break;
      }
      case ProblemSpec::MInvRule::Richardson: {
        const double omega = spec.omega.value_or(default_jacobi_omega(a));
        m_inv = Matrix(omega * Matrix::Identity(n, n));
        break;
      }
    }
  }

  Matrix b_matrix;
  switch (spec.b_mode) {
    case ProblemSpec::BMode::Explicit: {
      if (builtin) {
        b_matrix = *b_explicit;
      } else {
        if (spec.b_path.empty()) throw ParseError("b_mode 'explicit' requires a B file");
        b_matrix = require_square(io::read_matrix_market(spec.b_path), "B");
      }
      break;
    }
    case ProblemSpec::BMode::Identity:
      b_matrix = Matrix::Identity(n, n);
      break;
    case ProblemSpec::BMode::AHA:
      b_matrix = a.adjoint() * a;
      break;
    case ProblemSpec::BMode::M: {
      Eigen::PartialPivLU<Matrix> lu(m_inv);
      b_matrix = lu.inverse();
      b_matrix = (b_matrix + Matrix(b_matrix.adjoint())) / 2.0;
      break;
    }
    case ProblemSpec::BMode::QA: {
      Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Matrix v = svd.matrixV();
      b_matrix = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
      break;
    }
    case ProblemSpec::BMode::Sampled: {
      const EigenStructure<double> es = diagonalize<double>(m_inv * a, spec.tol);
      b_matrix = sample_admissible_b(es, spec.sampled_seed, spec.tol).B.matrix();
      break;
    }
  }
  if (b_matrix.rows() != n) throw DimensionMismatch("B dimension does not match A");

  HpdMatrix<double> b(b_matrix, spec.tol);
  TwoGridConfig<double> cfg(a, m_inv, b, spec.nu1, spec.nu2, spec.nc);
  return Problem{std::move(name), std::move(a),     std::move(m_inv), std::move(b),
                 std::move(cfg),  std::move(builtin), b_mode_name(spec.b_mode), spec.seed,
                 spec.trials,     spec.tol};
}

}  // namespace btg::harness
