// lorentzlab - report serialization
//
// Deterministic JSON and CSV emitters for suite reports and plain numeric
// tables. Every number is printed with 17 significant digits so values
// round-trip through text exactly; the output is a pure function of the
// data (no timestamps, locales, or pointer-order dependence). Non-finite
// values appear in JSON as the quoted strings "inf", "-inf", "nan" (bare
// tokens would not be valid JSON); CSV prints the same spellings unquoted.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lorentz {

// One named check: `pass` is decided by the check itself (some compare
// against a tolerance, some against a lower bound), the numeric triple is
// for the reader. `note` carries context - and the error text when a check
// died on an exception instead of producing a number.
struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  // echo of the effective run configuration, in fixed key order
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<CheckResult> checks;
  // console diagnostics only; never serialized, so reports stay
  // deterministic functions of (config, seed)
  double wall_seconds = 0.0;

  bool pass() const;
};

// "%.17g" rendering; non-finite values become "inf" / "-inf" / "nan".
std::string format_number(double v);

// {"schema":1,"suite":...,"pass":...,"config":{...},"checks":[{"name":...,
//  "status":"pass"|"fail","measured":...,"expected":...,"tolerance":...,
//  "note":...}, ...]}
std::string suite_report_json(const SuiteReport& report);

// RFC 4180, CRLF line ends, header
//   name,status,measured,expected,tolerance,note
// The config echo is part of the JSON form only.
std::string suite_report_csv(const SuiteReport& report);

// Column-oriented numeric table (geodesic traces, sweeps, loop samples).
struct Table {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// {"schema":1,"kind":...,"columns":[...],"rows":[[...],...]}
std::string table_json(const Table& table);

// Header row then data rows, RFC 4180 with CRLF line ends.
std::string table_csv(const Table& table);

}  // namespace lorentz
