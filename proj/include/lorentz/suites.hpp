// lorentzlab - verification suites
//
// Named bundles of cross-checks, shared between the command-line binary and
// the acceptance harness. Every check compares a computed quantity against
// an independent prediction - a closed form, an oracle integration, or an
// analytic bound - and decides pass/fail on its own pinned tolerance (which
// the `tol` map can override by check name). A check that throws is reported
// as a failure carrying the error text; nothing escapes run_suite except an
// unknown suite name (ContractError).
//
// Reports are deterministic functions of the options: all sampling is driven
// by `seed` through per-check generators, and wall-clock time never enters
// the report payload.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lorentz/fields.hpp"
#include "lorentz/report.hpp"

namespace lorentz {

struct SuiteOptions {
  DerivMode mode = DerivMode::dual;
  double fd_step = 1e-5;
  // RK4 resolution of the geodesic-oracle and loop-return integrations
  int ode_steps = 4096;
  // > 0 overrides the pinned per-check sample counts (points, states,
  // planes, cone directions)
  int samples = 0;
  unsigned long long seed = 2026;
  // family parameter override; 0 keeps each check's pinned c set
  double c = 0.0;
  // cosmological-constant override, honored when lambda_set
  double lambda = 0.0;
  bool lambda_set = false;
  // per-check tolerance overrides, keyed by unprefixed check name
  std::map<std::string, double> tol;
};

// The runnable suite names, in report order ("all" is accepted by run_suite
// but is not listed; it concatenates these with "<suite>/" name prefixes).
const std::vector<std::string>& suite_names();

SuiteReport run_suite(const std::string& suite, const SuiteOptions& opts);

}  // namespace lorentz
