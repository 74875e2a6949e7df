#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "btg/harness/problem.hpp"
#include "btg/harness/report.hpp"
#include "btg/harness/verify.hpp"
#include "btg/io/matrix_market.hpp"

namespace {

int run_report(btg::harness::ProblemSpec spec, const std::string& out_path, const std::string& format_name) {
  using namespace btg::harness;
  const ReportFormat format = parse_format(format_name);
  const VerificationReport report = run_verification(spec);
  if (!out_path.empty()) {
    emit_report(report, format, out_path);
    std::cout << render_report(report, ReportFormat::Text);
    std::cout << "report written to " << out_path << "\n";
  } else {
    std::cout << render_report(report, format);
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"construct and numerically validate nonsymmetric algebraic two-grid methods in B-inner products"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run the verification pipeline on a problem spec");
  std::string problem_path, out_path, format_name = "json";
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> nu1_flag, nu2_flag, trials_flag;
  std::optional<btg::Index> nc_flag;
  std::optional<double> omega_flag;
  verify->add_option("--problem", problem_path, "problem spec JSON file")->required();
  verify->add_option("--out", out_path, "report output path (default: print to stdout)");
  verify->add_option("--format", format_name, "report format: json|csv|text")->default_str("json");
  verify->add_option("--seed", seed_flag, "override the spec's seed");
  verify->add_option("--nu1", nu1_flag, "override pre-smoothing steps");
  verify->add_option("--nu2", nu2_flag, "override post-smoothing steps");
  verify->add_option("--nc", nc_flag, "override the coarse dimension");
  verify->add_option("--trials", trials_flag, "override the optimality-sweep trial count");
  verify->add_option("--omega", omega_flag,
                     "damping for the jacobi/richardson smoother rules "
                     "(default: 1/rho_est(diag(A)^{-1}A))");

  // example -----------------------------------------------------------------
  auto* example = app.add_subcommand("example", "run a built-in reference example");
  int example_index = 1;
  std::string ex_out, ex_format = "text";
  std::optional<int> ex_nu1, ex_nu2, ex_trials;
  example->add_option("index", example_index, "example index (1, 2 or 3)")->required();
  example->add_option("--out", ex_out, "report output path");
  example->add_option("--format", ex_format, "report format: json|csv|text")->default_str("text");
  example->add_option("--nu1", ex_nu1, "pre-smoothing steps (default 1)");
  example->add_option("--nu2", ex_nu2, "post-smoothing steps (default 1)");
  example->add_option("--trials", ex_trials, "optimality-sweep trial count (default 200)");

  // generate ------------------------------------------------------------------
  auto* generate = app.add_subcommand("generate", "write a test matrix in Matrix Market format");
  std::string gen_type = "conv-diff", gen_scheme = "central", gen_out;
  int gen_n = 32;
  double gen_beta = 0.0;
  generate->add_option("--type", gen_type, "generator type (conv-diff)")->default_str("conv-diff");
  generate->add_option("--n", gen_n, "grid size")->default_val(32);
  generate->add_option("--beta", gen_beta, "convection coefficient")->default_val(0.0);
  generate->add_option("--scheme", gen_scheme, "central|upwind")->default_str("central");
  generate->add_option("--out", gen_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      btg::harness::ProblemSpec spec = btg::harness::ProblemSpec::from_file(problem_path);
      if (seed_flag) spec.seed = *seed_flag;
      if (nu1_flag) spec.nu1 = *nu1_flag;
      if (nu2_flag) spec.nu2 = *nu2_flag;
      if (nc_flag) spec.nc = *nc_flag;
      if (trials_flag) spec.trials = *trials_flag;
      if (omega_flag) spec.omega = *omega_flag;
      return run_report(std::move(spec), out_path, format_name);
    }
    if (example->parsed()) {
      btg::harness::ProblemSpec spec;
      spec.source = btg::harness::ProblemSpec::SourceKind::Builtin;
      spec.builtin_index = example_index;
      if (ex_nu1) spec.nu1 = *ex_nu1;
      if (ex_nu2) spec.nu2 = *ex_nu2;
      if (ex_trials) spec.trials = *ex_trials;
      return run_report(std::move(spec), ex_out, ex_format);
    }
    if (generate->parsed()) {
      if (gen_type != "conv-diff") throw btg::ParseError("unknown generator type '" + gen_type + "'");
      const btg::Matrix a = btg::harness::convection_diffusion_1d(gen_n, gen_beta, gen_scheme);
      btg::io::write_matrix_market(gen_out, a);
      std::cout << "wrote " << a.rows() << "x" << a.cols() << " matrix to " << gen_out << "\n";
      return 0;
    }
  } catch (const btg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const btg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const btg::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const btg::NotHpd& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const btg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
