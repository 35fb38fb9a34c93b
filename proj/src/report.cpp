// lorentzlab - report serialization (JSON / CSV emitters)

#include "lorentz/report.hpp"

#include <cmath>
#include <cstdio>

namespace lorentz {
namespace {

void append_json_string(std::string* out, const std::string& s) {
  out->push_back('"');
  for (char ch : s) {
    switch (ch) {
      case '"':
        *out += "\\\"";
        break;
      case '\\':
        *out += "\\\\";
        break;
      case '\n':
        *out += "\\n";
        break;
      case '\r':
        *out += "\\r";
        break;
      case '\t':
        *out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(ch));
          *out += buf;
        } else {
          out->push_back(ch);
        }
    }
  }
  out->push_back('"');
}

// JSON value position: finite numbers bare, non-finite quoted.
void append_json_number(std::string* out, double v) {
  if (std::isfinite(v)) {
    *out += format_number(v);
  } else {
    append_json_string(out, format_number(v));
  }
}

// CSV field per RFC 4180: quote when the text contains a comma, a quote,
// or a line break; double any embedded quotes.
void append_csv_field(std::string* out, const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    *out += s;
    return;
  }
  out->push_back('"');
  for (char ch : s) {
    if (ch == '"') out->push_back('"');
    out->push_back(ch);
  }
  out->push_back('"');
}

}  // namespace

bool SuiteReport::pass() const {
  for (const CheckResult& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string suite_report_json(const SuiteReport& report) {
  std::string out = "{\"schema\":1,\"suite\":";
  append_json_string(&out, report.suite);
  out += ",\"pass\":";
  out += report.pass() ? "true" : "false";
  out += ",\"config\":{";
  bool first = true;
  for (const auto& [key, value] : report.config_echo) {
    if (!first) out.push_back(',');
    first = false;
    append_json_string(&out, key);
    out.push_back(':');
    append_json_string(&out, value);
  }
  out += "},\"checks\":[";
  first = true;
  for (const CheckResult& c : report.checks) {
    if (!first) out.push_back(',');
    first = false;
    out += "{\"name\":";
    append_json_string(&out, c.name);
    out += ",\"status\":";
    append_json_string(&out, c.pass ? "pass" : "fail");
    out += ",\"measured\":";
    append_json_number(&out, c.measured);
    out += ",\"expected\":";
    append_json_number(&out, c.expected);
    out += ",\"tolerance\":";
    append_json_number(&out, c.tolerance);
    out += ",\"note\":";
    append_json_string(&out, c.note);
    out.push_back('}');
  }
  out += "]}";
  out.push_back('\n');
  return out;
}

std::string suite_report_csv(const SuiteReport& report) {
  std::string out = "name,status,measured,expected,tolerance,note\r\n";
  for (const CheckResult& c : report.checks) {
    append_csv_field(&out, c.name);
    out.push_back(',');
    out += c.pass ? "pass" : "fail";
    out.push_back(',');
    out += format_number(c.measured);
    out.push_back(',');
    out += format_number(c.expected);
    out.push_back(',');
    out += format_number(c.tolerance);
    out.push_back(',');
    append_csv_field(&out, c.note);
    out += "\r\n";
  }
  return out;
}

std::string table_json(const Table& table) {
  std::string out = "{\"schema\":1,\"kind\":";
  append_json_string(&out, table.kind);
  out += ",\"columns\":[";
  bool first = true;
  for (const std::string& col : table.columns) {
    if (!first) out.push_back(',');
    first = false;
    append_json_string(&out, col);
  }
  out += "],\"rows\":[";
  first = true;
  for (const std::vector<double>& row : table.rows) {
    if (!first) out.push_back(',');
    first = false;
    out.push_back('[');
    bool first_cell = true;
    for (double v : row) {
      if (!first_cell) out.push_back(',');
      first_cell = false;
      append_json_number(&out, v);
    }
    out.push_back(']');
  }
  out += "]}";
  out.push_back('\n');
  return out;
}

std::string table_csv(const Table& table) {
  std::string out;
  bool first = true;
  for (const std::string& col : table.columns) {
    if (!first) out.push_back(',');
    first = false;
    append_csv_field(&out, col);
  }
  out += "\r\n";
  for (const std::vector<double>& row : table.rows) {
    first = true;
    for (double v : row) {
      if (!first) out.push_back(',');
      first = false;
      out += format_number(v);
    }
    out += "\r\n";
  }
  return out;
}

}  // namespace lorentz
