#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "btg/types.hpp"

namespace btg::harness {

enum class Verdict { Pass, Fail, Skipped };

std::string verdict_name(Verdict v);

/// One executed check: a stable id, a human-readable anchor describing the
/// identity being verified, the numbers it produced, the threshold applied,
/// and the verdict (skips carry a reason).
struct CheckRecord {
  std::string id;
  std::string anchor;
  std::vector<std::pair<std::string, double>> values;
  double tol = 0.0;
  Verdict verdict = Verdict::Skipped;
  std::string reason;
};

struct VerificationReport {
  // Environment block; everything needed to reproduce the run.
  std::string source;
  std::string b_mode;
  Index n = 0;
  Index nc = 0;
  int nu1 = 0;
  int nu2 = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  ToleranceProfile<double> tol;

  std::vector<CheckRecord> checks;

  int count(Verdict v) const;
  int passed() const { return count(Verdict::Pass); }
  int failed() const { return count(Verdict::Fail); }
  int skipped() const { return count(Verdict::Skipped); }
  bool all_passed() const { return failed() == 0; }
};

enum class ReportFormat { Json, Csv, Text };

ReportFormat parse_format(const std::string& name);

/// Renders the report body. Deterministic for a fixed report: stable key
/// order, no timestamps.
std::string render_report(const VerificationReport& report, ReportFormat format);

void emit_report(const VerificationReport& report, ReportFormat format, const std::string& path);

}  // namespace btg::harness
