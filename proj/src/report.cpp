#include "btg/harness/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace btg::harness {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

int VerificationReport::count(Verdict v) const {
  int k = 0;
  for (const auto& c : checks)
    if (c.verdict == v) ++k;
  return k;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw ParseError("unknown report format '" + name + "' (expected json|csv|text)");
}

namespace {

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["environment"] = {
      {"source", report.source},
      {"b_mode", report.b_mode},
      {"n", report.n},
      {"nc", report.nc},
      {"nu1", report.nu1},
      {"nu2", report.nu2},
      {"seed", report.seed},
      {"trials", report.trials},
      {"tolerances",
       {{"tau_herm", report.tol.tau_herm},
        {"tau_eq", report.tol.tau_eq},
        {"tau_eig", report.tol.tau_eig},
        {"tau_recon", report.tol.tau_recon},
        {"tau_rank", report.tol.tau_rank},
        {"tau_group", report.tol.tau_group},
        {"tau_angle", report.tol.tau_angle},
        {"tau_opt", report.tol.tau_opt},
        {"kappa_max", report.tol.kappa_max}}},
  };
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json values(nlohmann::ordered_json::value_t::object);
    for (const auto& [key, value] : c.values) values[key] = value;
    nlohmann::ordered_json record{{"check_id", c.id},
                                  {"anchor", c.anchor},
                                  {"values", std::move(values)},
                                  {"tol", c.tol},
                                  {"verdict", verdict_name(c.verdict)}};
    if (c.verdict == Verdict::Skipped) record["reason"] = c.reason;
    checks.push_back(std::move(record));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"pass", report.passed()}, {"fail", report.failed()}, {"skipped", report.skipped()}};
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string render_csv(const VerificationReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "check_id,anchor,verdict,tol,values\n";
  for (const auto& c : report.checks) {
    std::ostringstream values;
    values << std::setprecision(17);
    bool first = true;
    for (const auto& [key, value] : c.values) {
      if (!first) values << ";";
      values << key << "=" << value;
      first = false;
    }
    std::string verdict = verdict_name(c.verdict);
    if (c.verdict == Verdict::Skipped && !c.reason.empty()) verdict += "(" + c.reason + ")";
    os << csv_escape(c.id) << "," << csv_escape(c.anchor) << "," << csv_escape(verdict) << "," << c.tol
       << "," << csv_escape(values.str()) << "\n";
  }
  return os.str();
}

std::string render_text(const VerificationReport& report) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "verification of " << report.source << "  (n=" << report.n << ", nc=" << report.nc
     << ", nu1=" << report.nu1 << ", nu2=" << report.nu2 << ", b_mode=" << report.b_mode
     << ", seed=" << report.seed << ", trials=" << report.trials << ")\n";
  for (const auto& c : report.checks) {
    std::string tag;
    switch (c.verdict) {
      case Verdict::Pass: tag = "[ pass ]"; break;
      case Verdict::Fail: tag = "[ FAIL ]"; break;
      case Verdict::Skipped: tag = "[ skip ]"; break;
    }
    os << tag << " " << c.id << " : " << c.anchor << "\n";
    if (c.verdict == Verdict::Skipped && !c.reason.empty()) os << "         reason: " << c.reason << "\n";
    if (!c.values.empty()) {
      os << "        ";
      for (const auto& [key, value] : c.values) os << " " << key << "=" << value;
      os << "  (tol " << c.tol << ")\n";
    }
  }
  os << "summary: " << report.passed() << " pass, " << report.failed() << " fail, " << report.skipped()
     << " skipped\n";
  return os.str();
}

}  // namespace

std::string render_report(const VerificationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Text: return render_text(report);
  }
  throw Error("render_report: unreachable");
}

void emit_report(const VerificationReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << render_report(report, format);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace btg::harness
