#pragma once

#include "btg/harness/problem.hpp"
#include "btg/harness/report.hpp"

namespace btg::harness {

/// Runs every applicable check against the problem and returns the report.
/// Individual check failures never abort the run; checks whose prerequisites
/// do not hold (defective smoother operator, inner product not admissible,
/// smoothing assumption violated, ...) are recorded as skipped with the
/// reason.
VerificationReport run_verification(const ProblemSpec& spec);

}  // namespace btg::harness
