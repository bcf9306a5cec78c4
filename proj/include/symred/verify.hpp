#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symred {

// One verification suite. `measured` is the binding measurement of the suite
// (the sub-check closest to its limit) and `bound` its acceptance bound; when
// `exceed` is set the measurement must lie strictly above the bound instead
// of at or below it (detection-style checks).
struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string detail;
  double measured = 0.0;
  double bound = 0.0;
  bool exceed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 2014;
  // replaces the deterministic residual bounds when set; statistical gates
  // (3-sigma agreement, KS detection) keep their design levels
  std::optional<double> tol;
  int samples = 100000;  // sample count for the statistical suites
};

// Criteria are numbered 1..13; unknown ids raise OutOfDomain.
CriterionResult run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionResult> run_all(const VerifyOptions& opt);

// "criterion N: PASS — <detail>; measured=…, bound=…"
std::string format_result(const CriterionResult& r);

}  // namespace symred
