// lorentzlab - the command-line surface: verification suites with JSON/CSV
// reports, geodesic and closed-loop exports, stretch-factor sweeps over the
// metric catalog, and leaf-graph dumps.
//
// Exit codes: 0 success / all checks pass, 1 computation or check failure,
// 2 usage or config error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lorentz/catalog.hpp"
#include "lorentz/curvature.hpp"
#include "lorentz/fields.hpp"
#include "lorentz/foliation.hpp"
#include "lorentz/gcn.hpp"
#include "lorentz/report.hpp"
#include "lorentz/smallmat.hpp"
#include "lorentz/stretch.hpp"
#include "lorentz/suites.hpp"

using namespace lorentz;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Comma-separated doubles; throws std::invalid_argument on malformed input.
std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) pos++;
    if (pos != item.size()) throw std::invalid_argument("trailing characters in '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

VecN parse_vec(const std::string& s, int dim, const char* what) {
  std::vector<double> v = parse_list(s);
  if (static_cast<int>(v.size()) != dim)
    throw std::invalid_argument(std::string(what) + " needs exactly " + std::to_string(dim) +
                                " comma-separated components, got " +
                                std::to_string(v.size()));
  VecN x(dim);
  for (int i = 0; i < dim; i++) x[i] = v[static_cast<size_t>(i)];
  return x;
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  return 2;
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "error: cannot open output path '%s'\n", path.c_str());
    return 1;
  }
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) {
    std::fprintf(stderr, "error: failed writing '%s'\n", path.c_str());
    return 1;
  }
  return 0;
}

double metric_qform(const MatN& m, const VecN& v) {
  double acc = 0.0;
  for (int i = 0; i < v.n; i++)
    for (int j = 0; j < v.n; j++) acc += m(i, j) * v[i] * v[j];
  return acc;
}

// ---- verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string mode = "dual";
  double fd_step = 1e-5;
  int ode_steps = 4096;
  int samples = 0;
  unsigned long long seed = 2026;
  double c = 0.0;
  double lambda = 0.0;
  bool lambda_set = false;
  std::vector<std::string> tol_entries;
  std::map<std::string, double> tol;
  std::string format = "json";
  std::string out;
  std::string config_path;
};

int apply_config_file(const CLI::App* sub, VerifyArgs* a) {
  std::ifstream f(a->config_path);
  if (!f) return usage_error("cannot open config file '" + a->config_path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    return usage_error("config parse failure: " + std::string(e.what()));
  }
  if (!j.is_object()) return usage_error("config root must be a JSON object");
  auto flagged = [&](const char* flag) { return sub->count(flag) > 0; };
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "suite") {
        if (!flagged("--suite")) a->suite = value.get<std::string>();
      } else if (key == "mode") {
        if (!flagged("--mode")) a->mode = value.get<std::string>();
      } else if (key == "fd-step") {
        if (!flagged("--fd-step")) a->fd_step = value.get<double>();
      } else if (key == "ode-steps") {
        if (!flagged("--ode-steps")) a->ode_steps = value.get<int>();
      } else if (key == "samples") {
        if (!flagged("--samples")) a->samples = value.get<int>();
      } else if (key == "seed") {
        if (!flagged("--seed")) a->seed = value.get<unsigned long long>();
      } else if (key == "c") {
        if (!flagged("--c")) a->c = value.get<double>();
      } else if (key == "lambda") {
        if (!flagged("--lambda")) {
          a->lambda = value.get<double>();
          a->lambda_set = true;
        }
      } else if (key == "tol") {
        if (!value.is_object()) return usage_error("config 'tol' must be an object");
        for (const auto& [name, tv] : value.items())
          if (a->tol.find(name) == a->tol.end()) a->tol[name] = tv.get<double>();
      } else if (key == "format") {
        if (!flagged("--format")) a->format = value.get<std::string>();
      } else if (key == "out") {
        if (!flagged("--out")) a->out = value.get<std::string>();
      } else {
        return usage_error("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return usage_error("config value error: " + std::string(e.what()));
  }
  return 0;
}

int run_verify(const CLI::App* sub, VerifyArgs a) {
  // flag-provided --tol entries win over config-provided ones
  for (const std::string& entry : a.tol_entries) {
    size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size())
      return usage_error("--tol expects name=value, got '" + entry + "'");
    double v = 0.0;
    try {
      size_t pos = 0;
      std::string num = entry.substr(eq + 1);
      v = std::stod(num, &pos);
      if (pos != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      return usage_error("--tol value is not a number in '" + entry + "'");
    }
    a.tol[entry.substr(0, eq)] = v;
  }
  if (!a.config_path.empty()) {
    int rc = apply_config_file(sub, &a);
    if (rc != 0) return rc;
  }

  bool known_suite = a.suite == "all";
  for (const std::string& name : suite_names()) known_suite = known_suite || a.suite == name;
  if (!known_suite) return usage_error("unknown suite '" + a.suite + "'");
  if (a.mode != "dual" && a.mode != "fd" && a.mode != "finite-difference")
    return usage_error("mode must be dual, fd, or finite-difference");
  if (a.format != "json" && a.format != "csv") return usage_error("format must be json or csv");
  if (!(a.fd_step > 0.0)) return usage_error("fd-step must be positive");
  if (a.ode_steps <= 0) return usage_error("ode-steps must be positive");
  if (a.samples < 0) return usage_error("samples must be nonnegative");
  if (a.c < 0.0) return usage_error("c must be positive (omit for the pinned defaults)");

  SuiteOptions opts;
  opts.mode = a.mode == "dual" ? DerivMode::dual : DerivMode::finite_difference;
  opts.fd_step = a.fd_step;
  opts.ode_steps = a.ode_steps;
  opts.samples = a.samples;
  opts.seed = a.seed;
  opts.c = a.c;
  opts.lambda = a.lambda;
  opts.lambda_set = a.lambda_set;
  opts.tol = a.tol;

  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  try {
    rep = run_suite(a.suite, opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  rep.wall_seconds = seconds_since(t0);

  const std::string text = a.format == "csv" ? suite_report_csv(rep) : suite_report_json(rep);
  int rc = write_output(text, a.out);
  if (rc != 0) return rc;

  int passed = 0;
  for (const CheckResult& c : rep.checks) passed += c.pass ? 1 : 0;
  std::fprintf(stderr, "verify %s: %d of %zu checks passed in %.2fs\n", rep.suite.c_str(),
               passed, rep.checks.size(), rep.wall_seconds);
  for (const CheckResult& c : rep.checks)
    if (!c.pass)
      std::fprintf(stderr, "  failed: %s (measured %s, tolerance %s)\n", c.name.c_str(),
                   format_number(c.measured).c_str(), format_number(c.tolerance).c_str());
  return rep.pass() ? 0 : 1;
}

// ---- geodesic ------------------------------------------------------------------

int run_geodesic(double c, int n, const std::string& p_str, const std::string& v_str,
                 double t_max, int steps, const std::string& mode, double fd_step,
                 const std::string& format, const std::string& out) {
  if (!(c > 0.0)) return usage_error("c must be positive");
  if (n < 3 || n > kMaxDim) return usage_error("n must be in [3, " + std::to_string(kMaxDim) + "]");
  if (!(t_max > 0.0)) return usage_error("t-max must be positive");
  if (steps <= 0) return usage_error("steps must be positive");
  VecN p(n);
  VecN v(n);
  try {
    if (!p_str.empty()) p = parse_vec(p_str, n, "--p");
    v = parse_vec(v_str, n, "--v");
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  DerivMode dmode = mode == "dual" ? DerivMode::dual : DerivMode::finite_difference;

  auto t0 = std::chrono::steady_clock::now();
  Table table;
  table.kind = "geodesic";
  table.columns = {"t"};
  for (int i = 0; i < n; i++) table.columns.push_back("x" + std::to_string(i));
  for (int i = 0; i < n; i++) table.columns.push_back("v" + std::to_string(i));
  table.columns.push_back("g_vv");
  try {
    GcnParams params{c, n, 0.0};
    MetricField g = gcn_metric(params);
    GeodesicPath path = geodesic_integrate(g, p, v, t_max, steps, dmode, fd_step);
    for (size_t i = 0; i < path.times.size(); i++) {
      std::vector<double> row;
      row.push_back(path.times[i]);
      for (int k = 0; k < n; k++) row.push_back(path.positions[i][k]);
      for (int k = 0; k < n; k++) row.push_back(path.velocities[i][k]);
      row.push_back(metric_qform(eval_value(g, path.positions[i]), path.velocities[i]));
      table.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  int rc = write_output(format == "csv" ? table_csv(table) : table_json(table), out);
  if (rc != 0) return rc;
  std::fprintf(stderr, "geodesic: %zu rows in %.2fs\n", table.rows.size(), seconds_since(t0));
  return 0;
}

// ---- ctc -----------------------------------------------------------------------

int run_ctc(double c, double p, int samples, const std::string& format, const std::string& out) {
  if (!(c > 0.0)) return usage_error("c must be positive");
  if (samples <= 0) return usage_error("samples must be positive");

  auto t0 = std::chrono::steady_clock::now();
  Table table;
  table.kind = "closed-timelike-curve";
  table.columns = {"segment", "t", "x0", "x1", "x2", "v0", "v1", "v2", "margin"};
  double min_margin = std::numeric_limits<double>::infinity();
  try {
    const GcnParams base{1.0, 3, 0.0};
    std::vector<LoopSegment> segments = closed_loop_g1(base, p);
    if (c != 1.0) {
      GcnParams target{c, 3, 0.0};
      for (LoopSegment& seg : segments) seg = pullback_loop_segment(target, seg);
    }
    double offset = 0.0;
    for (size_t s = 0; s < segments.size(); s++) {
      const LoopSegment& seg = segments[s];
      for (int i = 0; i <= samples; i++) {  // endpoints included: join rows repeat
        double t = seg.length * static_cast<double>(i) / samples;
        double pos[3];
        double vel[3];
        seg.eval(t, pos, vel);
        double a = vel[0] + pos[2] * vel[1];
        double margin = c * c * a * a - vel[1] * vel[1] - vel[2] * vel[2];
        min_margin = std::min(min_margin, margin);
        table.rows.push_back({static_cast<double>(s), offset + t, pos[0], pos[1], pos[2],
                              vel[0], vel[1], vel[2], margin});
      }
      offset += seg.length;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  int rc = write_output(format == "csv" ? table_csv(table) : table_json(table), out);
  if (rc != 0) return rc;
  std::fprintf(stderr, "ctc: %zu rows, min timelike margin %s, %.2fs\n", table.rows.size(),
               format_number(min_margin).c_str(), seconds_since(t0));
  return min_margin > 0.0 ? 0 : 1;
}

// ---- stretch-sweep --------------------------------------------------------------

int run_stretch_sweep(const std::string& metric_id, const std::string& eps_str,
                      const std::string& point_str, const std::string& format,
                      const std::string& out) {
  std::vector<double> eps_list;
  try {
    eps_list = parse_list(eps_str);
  } catch (const std::exception& e) {
    return usage_error(std::string("--eps: ") + e.what());
  }
  for (size_t i = 0; i < eps_list.size(); i++) {
    if (!(eps_list[i] > 0.0)) return usage_error("--eps entries must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      return usage_error("--eps entries must be strictly descending");
  }

  CatalogEntry entry;
  try {
    entry = catalog_entry(metric_id);
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  if (!entry.has_split)
    return usage_error("metric '" + metric_id + "' has no timelike/horizontal split; pick one "
                       "of the split catalog entries");
  VecN x = entry.anchor;
  if (!point_str.empty()) {
    try {
      x = parse_vec(point_str, entry.metric.dim, "--point");
    } catch (const std::exception& e) {
      return usage_error(e.what());
    }
  }

  auto t0 = std::chrono::steady_clock::now();
  Table table;
  table.kind = "stretch-asymptotics";
  table.columns = {"eps", "i", "j", "ric", "b_over_4eps2", "residual"};
  double worst = 0.0;
  try {
    StretchAsymptotics sw = ricci_asymptotics(entry.metric, entry.h, entry.v, x, eps_list);
    const int n = entry.metric.dim;
    for (const StretchAsymptoticsRow& row : sw.rows) {
      double inv = 1.0 / (4.0 * row.eps * row.eps);
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          double pred = sw.b(i, j) * inv;
          double resid = std::fabs(row.ric_frame(i, j) - pred);
          worst = std::max(worst, resid * row.eps * row.eps);
          table.rows.push_back({row.eps, static_cast<double>(i), static_cast<double>(j),
                                row.ric_frame(i, j), pred, resid});
        }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  int rc = write_output(format == "csv" ? table_csv(table) : table_json(table), out);
  if (rc != 0) return rc;
  std::fprintf(stderr, "stretch-sweep %s: %zu rows, worst eps^2-scaled residual %s, %.2fs\n",
               metric_id.c_str(), table.rows.size(), format_number(worst).c_str(),
               seconds_since(t0));
  return 0;
}

// ---- leaf -----------------------------------------------------------------------

int run_leaf(int k, double t, int grid_res, int ode_steps, const std::string& format,
             const std::string& out) {
  if (k <= 0) return usage_error("k must be positive");
  if (grid_res < 2) return usage_error("grid must be at least 2");
  if (ode_steps <= 0) return usage_error("steps must be positive");
  BoxDomain box;
  box.center = make_vec({0.0, 0.0});
  box.p = 1;
  box.q = 1;
  box.r_b = 1.0;
  box.r_j = 2.0;
  box.a = 1.0;
  box.c_lip = 0.0;
  if (std::fabs(t) > box.r_i())
    return usage_error("t must lie within the inner radius " + format_number(box.r_i()));

  auto t0 = std::chrono::steady_clock::now();
  Table table;
  table.kind = "leaf-graph";
  table.columns = {"z", "f"};
  double residual = 0.0;
  try {
    Distribution h = slope_wave_distribution(k);
    LeafGraph leaf = integrate_leaf(h, box, make_vec({t}), grid_res, ode_steps);
    for (size_t i = 0; i < leaf.grid.size(); i++) {
      if (!leaf.inside[i]) continue;
      table.rows.push_back({leaf.grid[i][0], leaf.values[i][0]});
    }
    residual = leaf_tangency_residual(h, leaf);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  int rc = write_output(format == "csv" ? table_csv(table) : table_json(table), out);
  if (rc != 0) return rc;
  std::fprintf(stderr, "leaf k=%d t=%s: %zu rows, tangency residual %s, %.2fs\n", k,
               format_number(t).c_str(), table.rows.size(), format_number(residual).c_str(),
               seconds_since(t0));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lorentzlab: numerical verification of a Lorentzian metric family - curvature, "
               "geodesics, closed timelike loops, energy conditions, metric stretches, and "
               "leaf convergence"};
  app.require_subcommand(1);

  // verify
  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite and emit a report");
  std::string suite_help = "all";
  for (const std::string& s : suite_names()) suite_help += ", " + s;
  verify->add_option("--suite", va.suite, "suite to run: " + suite_help);
  verify->add_option("--mode", va.mode, "derivative mode: dual, fd, finite-difference");
  verify->add_option("--fd-step", va.fd_step, "finite-difference step");
  verify->add_option("--ode-steps", va.ode_steps, "RK4 steps for geodesic checks");
  verify->add_option("--samples", va.samples, "override pinned per-check sample counts");
  verify->add_option("--seed", va.seed, "RNG seed");
  verify->add_option("--c", va.c, "family parameter c (omit for the pinned per-check sets)");
  CLI::Option* lambda_opt =
      verify->add_option("--lambda", va.lambda, "cosmological constant (omit for pinned sets)");
  verify->add_option("--tol", va.tol_entries,
                     "tolerance override name=value (check or suite name); repeatable");
  verify->add_option("--format", va.format, "report format: json or csv");
  verify->add_option("--out", va.out, "write the report to a file instead of stdout");
  verify->add_option("--config", va.config_path, "JSON config file; explicit flags win");

  // geodesic
  double gc = 1.0, gt_max = 5.0, gfd = 1e-5;
  int gn = 3, gsteps = 1024;
  std::string gp, gv, gmode = "dual", gformat = "json", gout;
  CLI::App* geodesic =
      app.add_subcommand("geodesic", "integrate a family geodesic and export the trace");
  geodesic->add_option("--c", gc, "family parameter c");
  geodesic->add_option("--n", gn, "dimension");
  geodesic->add_option("--p", gp, "start point, comma-separated (default: origin)");
  geodesic->add_option("--v", gv, "initial velocity, comma-separated")->required();
  geodesic->add_option("--t-max", gt_max, "integration horizon");
  geodesic->add_option("--steps", gsteps, "RK4 steps");
  geodesic->add_option("--mode", gmode, "derivative mode: dual, fd, finite-difference")
      ->check(CLI::IsMember({"dual", "fd", "finite-difference"}));
  geodesic->add_option("--fd-step", gfd, "finite-difference step");
  geodesic->add_option("--format", gformat, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  geodesic->add_option("--out", gout, "output path (default: stdout)");

  // ctc
  double cc = 1.0, cp = -5.0;
  int csamples = 200;
  std::string cformat = "json", cout_path;
  CLI::App* ctc = app.add_subcommand(
      "ctc", "export a closed timelike loop through (p, 0, 0) with per-sample margins");
  ctc->add_option("--c", cc, "family parameter c (loop is mapped through the rescaling chart)");
  ctc->add_option("--p", cp, "loop base point first coordinate");
  ctc->add_option("--samples", csamples, "samples per segment");
  ctc->add_option("--format", cformat, "output format")->check(CLI::IsMember({"json", "csv"}));
  ctc->add_option("--out", cout_path, "output path (default: stdout)");

  // stretch-sweep
  std::string sid, seps = "0.1,0.05,0.02,0.01", spoint, sformat = "json", sout;
  CLI::App* sweep = app.add_subcommand(
      "stretch-sweep", "Ricci asymptotics of the stretched metric over a catalog entry");
  std::string ids_help;
  for (const std::string& id : catalog_ids()) ids_help += (ids_help.empty() ? "" : ", ") + id;
  sweep->add_option("--metric", sid, "catalog metric id: " + ids_help)->required();
  sweep->add_option("--eps", seps, "stretch factors, comma-separated, strictly descending");
  sweep->add_option("--point", spoint, "evaluation point (default: the entry's anchor)");
  sweep->add_option("--format", sformat, "output format")->check(CLI::IsMember({"json", "csv"}));
  sweep->add_option("--out", sout, "output path (default: stdout)");

  // leaf
  int lk = 4, lgrid = 41, lsteps = 256;
  double lt = 0.0;
  std::string lformat = "json", lout;
  CLI::App* leaf = app.add_subcommand(
      "leaf", "integrate one leaf graph of the slope-wave family over the unit box");
  leaf->add_option("--k", lk, "family member (slope sin(k z)/k)");
  leaf->add_option("--t", lt, "vertical start offset");
  leaf->add_option("--grid", lgrid, "lattice resolution");
  leaf->add_option("--steps", lsteps, "ODE steps");
  leaf->add_option("--format", lformat, "output format")->check(CLI::IsMember({"json", "csv"}));
  leaf->add_option("--out", lout, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  va.lambda_set = lambda_opt->count() > 0;
  if (app.got_subcommand(verify)) return run_verify(verify, va);
  if (app.got_subcommand(geodesic))
    return run_geodesic(gc, gn, gp, gv, gt_max, gsteps, gmode, gfd, gformat, gout);
  if (app.got_subcommand(ctc)) return run_ctc(cc, cp, csamples, cformat, cout_path);
  if (app.got_subcommand(sweep)) return run_stretch_sweep(sid, seps, spoint, sformat, sout);
  if (app.got_subcommand(leaf)) return run_leaf(lk, lt, lgrid, lsteps, lformat, lout);
  return 2;
}
