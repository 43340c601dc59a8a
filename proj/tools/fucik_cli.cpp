// Command-line front end: solve half-eigenvalues, trace Fucik curves, run
// homogenization rate sweeps, dump nodal decompositions, and check the
// Sturm/nodal bounds on a configured grid.
//
// Exit codes: 0 success, 1 validation error (message names the offending
// field), 2 solver failure (partial outputs are written and flagged).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fucik/config.hpp"
#include "fucik/homog.hpp"
#include "fucik/io.hpp"
#include "fucik/nodal.hpp"
#include "fucik/spectrum.hpp"

namespace {

using namespace fucik;

double parse_value(const std::string& s, const std::string& field) {
  if (s == "pi") return M_PI;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("field " + field +
                                " accepts numbers or the literal \"pi\"");
  }
}

Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::plus;
  if (s == "-") return Sign::minus;
  throw std::invalid_argument("field sign must be \"+\" or \"-\"");
}

struct CommonArgs {
  std::string config_path;
  std::string const_weights;
  std::string ell_str;
  std::string t_str;
  std::string sign_str = "+";
  std::string out_dir;
  int k = 0;
  double epsilon = 1.0;
  double tol = 1e-12;
  bool has_epsilon = false;
};

// weights + domain from either --config or --const-weights/--ell
struct Problem {
  ExperimentConfig cfg;
  bool from_config = false;
};

Problem load_problem(const CommonArgs& args) {
  Problem p;
  if (!args.config_path.empty()) {
    p.cfg = load_config(args.config_path);
    p.from_config = true;
  } else if (!args.const_weights.empty()) {
    const auto comma = args.const_weights.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument(
          "field const-weights must be two comma-separated values m,n");
    const double mv =
        parse_value(args.const_weights.substr(0, comma), "const-weights");
    const double nv =
        parse_value(args.const_weights.substr(comma + 1), "const-weights");
    if (args.ell_str.empty())
      throw std::invalid_argument("field ell is required with const-weights");
    p.cfg.ell = parse_value(args.ell_str, "ell");
    p.cfg.m = PiecewiseConstantWeight::constant(mv, p.cfg.ell);
    p.cfg.n = PiecewiseConstantWeight::constant(nv, p.cfg.ell);
  } else {
    throw std::invalid_argument(
        "either field config or field const-weights is required");
  }
  if (!args.ell_str.empty()) p.cfg.ell = parse_value(args.ell_str, "ell");
  if (!args.out_dir.empty()) p.cfg.out_dir = args.out_dir;
  p.cfg.tol = args.tol;
  if (!(p.cfg.tol > 0.0))
    throw std::invalid_argument("field tol must be positive");
  return p;
}

std::filesystem::path ensure_out_dir(const std::string& out_dir) {
  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  return dir;
}

std::string out_name(const std::string& verb, int k, Sign sign,
                     const std::string& t_part, const std::string& eps_part) {
  return verb + "_" + std::to_string(k) + "_" + sign_char(sign) + "_" +
         t_part + "_" + eps_part + ".csv";
}

int cmd_solve(const CommonArgs& args) {
  if (args.k < 1) throw std::invalid_argument("field k must be >= 1");
  if (args.t_str.empty()) throw std::invalid_argument("field t is required");
  const double t = parse_value(args.t_str, "t");
  check_t_range(t);
  const Sign sign = parse_sign(args.sign_str);
  Problem p = load_problem(args);
  const ScaledWeight m(p.cfg.m, args.epsilon, p.cfg.ell);
  const ScaledWeight n(p.cfg.n, args.epsilon, p.cfg.ell);
  const auto e =
      solve_half_eigenvalue(args.k, t, sign, m, n, p.cfg.ell, p.cfg.tol);
  std::cout << "lambda = " << float_short(e.lambda) << "\n";
  std::cout << "alpha = " << float17(e.alpha()) << "  beta = "
            << float17(e.beta()) << "\n";
  if (!p.cfg.out_dir.empty()) {
    const auto dir = ensure_out_dir(p.cfg.out_dir);
    const std::string eps_part = float_short(args.epsilon);
    const auto traj =
        dir / out_name("solve", args.k, sign, float_short(t), eps_part);
    const auto nod =
        dir / out_name("nodal", args.k, sign, float_short(t), eps_part);
    write_trajectory_csv(traj, e);
    write_nodal_csv(nod, e, extract(e));
    std::cout << "wrote " << traj.string() << "\n"
              << "wrote " << nod.string() << "\n";
  }
  return 0;
}

int cmd_curve(const CommonArgs& args) {
  Problem p = load_problem(args);
  std::vector<int> ks = p.from_config ? p.cfg.k_list : std::vector<int>{};
  if (args.k >= 1) ks = {args.k};
  if (ks.empty()) throw std::invalid_argument("field k is required");
  std::vector<double> t_grid = p.from_config && p.cfg.t_list_explicit
                                   ? p.cfg.t_list
                                   : default_t_grid();
  if (!args.t_str.empty())
    throw std::invalid_argument(
        "field t is not accepted by curve (configure t_list)");
  std::sort(t_grid.begin(), t_grid.end());
  std::vector<Sign> signs = p.from_config ? p.cfg.signs
                                          : std::vector<Sign>{parse_sign(
                                                args.sign_str)};
  const auto dir = ensure_out_dir(p.cfg.out_dir);
  const ScaledWeight m(p.cfg.m, args.epsilon, p.cfg.ell);
  const ScaledWeight n(p.cfg.n, args.epsilon, p.cfg.ell);
  bool partial = false;
  for (int k : ks)
    for (Sign sign : signs) {
      const auto pts = trace_curve(k, sign, m, n, p.cfg.ell, t_grid, p.cfg.tol);
      for (const auto& pt : pts)
        if (!pt.ok) {
          std::cerr << "curve point failed (k=" << k << ", t=" << pt.t
                    << "): " << pt.error << "\n";
          partial = true;
        }
      write_curve_csv(
          dir / out_name("curve", k, sign, "all", float_short(args.epsilon)),
          k, sign, pts);
    }
  return partial ? 2 : 0;
}

nlohmann::json series_json(const RateSeries& ser) {
  nlohmann::json js;
  js["k"] = ser.k;
  js["sign"] = std::string(1, sign_char(ser.sign));
  js["t"] = ser.t;
  js["lambda_0"] = ser.lambda_0;
  js["C_emp"] = ser.c_emp;
  js["usable_rows"] = ser.usable_rows;
  js["complete"] = ser.complete;
  if (ser.slope) {
    js["slope"] = *ser.slope;
    js["intercept"] = *ser.intercept;
  }
  return js;
}

int cmd_homog(const CommonArgs& args) {
  if (args.config_path.empty())
    throw std::invalid_argument("field config is required for homog");
  Problem p = load_problem(args);
  const RateReport report = run_rate_experiment(p.cfg);
  const auto dir = ensure_out_dir(p.cfg.out_dir);
  bool partial = false;
  nlohmann::json summary;
  summary["ell"] = p.cfg.ell;
  summary["tol"] = p.cfg.tol;
  summary["m_bar"] = p.cfg.m.average();
  summary["n_bar"] = p.cfg.n.average();
  summary["series"] = nlohmann::json::array();
  for (const auto& ser : report.series) {
    write_rate_csv(dir / out_name("homog", ser.k, ser.sign, float_short(ser.t),
                                  "all"),
                   {ser});
    summary["series"].push_back(series_json(ser));
    if (!ser.complete) partial = true;
  }
  const auto k2 = check_k2_rate(report);
  summary["k2_rate"] = {{"ok", k2.ok}, {"ratio", k2.ratio}};
  summary["partial"] = partial;
  {
    std::ofstream f(dir / "summary.json", std::ios::binary);
    f << summary.dump(2) << "\n";
  }
  std::cout << "wrote " << report.series.size() << " series under "
            << dir.string() << "\n";
  if (partial) std::cerr << "some series incomplete; see summary.json\n";
  return partial ? 2 : 0;
}

int cmd_nodal(const CommonArgs& args) {
  if (args.k < 1) throw std::invalid_argument("field k must be >= 1");
  if (args.t_str.empty()) throw std::invalid_argument("field t is required");
  const double t = parse_value(args.t_str, "t");
  check_t_range(t);
  const Sign sign = parse_sign(args.sign_str);
  Problem p = load_problem(args);
  const ScaledWeight m(p.cfg.m, args.epsilon, p.cfg.ell);
  const ScaledWeight n(p.cfg.n, args.epsilon, p.cfg.ell);
  const auto e =
      solve_half_eigenvalue(args.k, t, sign, m, n, p.cfg.ell, p.cfg.tol);
  const auto d = extract(e);
  const auto dir = ensure_out_dir(p.cfg.out_dir);
  write_nodal_csv(dir / out_name("nodal", args.k, sign, float_short(t),
                                 float_short(args.epsilon)),
                  e, d);
  const auto eq = check_equal_lengths(d, args.epsilon);
  const auto pr = check_pair_lengths(d, args.epsilon, args.k, p.cfg.ell);
  const double a = std::min(m.bound_lo(), n.bound_lo());
  const double b = std::max(m.bound_hi(), n.bound_hi());
  const auto lb = check_lower_bounds(d, t, a, b, args.k, p.cfg.ell);
  std::cout << "lambda = " << float_short(e.lambda) << "\n"
            << "equal-lengths: " << (eq.ok() ? "ok" : "VIOLATED")
            << " (worst gap " << float_short(eq.worst_gap()) << ", bound "
            << float_short(eq.bound) << ")\n"
            << "pair-lengths: " << (pr.ok ? "ok" : "VIOLATED")
            << " (worst deviation " << float_short(pr.worst_deviation)
            << ", bound " << float_short(pr.bound) << ")\n"
            << "lower-bounds: " << (lb.ok() ? "ok" : "VIOLATED")
            << " (min domain " << float_short(lb.min_domain) << " vs "
            << float_short(lb.domain_bound) << ")\n";
  return 0;
}

int cmd_check_bounds(const CommonArgs& args) {
  if (args.config_path.empty())
    throw std::invalid_argument("field config is required for check-bounds");
  Problem p = load_problem(args);
  const double a = std::min(p.cfg.m.bound_lo(), p.cfg.n.bound_lo());
  const double b = std::max(p.cfg.m.bound_hi(), p.cfg.n.bound_hi());
  int violations = 0, failures = 0, instances = 0;
  for (double eps : p.cfg.epsilons())
    for (int k : p.cfg.k_list)
      for (double t : p.cfg.t_list)
        for (Sign sign : p.cfg.signs) {
          ++instances;
          const std::string tag = "k=" + std::to_string(k) +
                                  " t=" + float_short(t) + " sign=" +
                                  sign_char(sign) + " eps=" + float_short(eps);
          try {
            const ScaledWeight m(p.cfg.m, eps, p.cfg.ell);
            const ScaledWeight n(p.cfg.n, eps, p.cfg.ell);
            const auto br = bracket(k, t, sign, a, b, p.cfg.ell);
            const auto e =
                solve_half_eigenvalue(k, t, sign, m, n, p.cfg.ell, p.cfg.tol);
            const auto d = extract(e);
            const bool in_bracket =
                e.lambda >= br.lambda_lo * (1.0 - 1e-12) &&
                e.lambda <= br.lambda_hi * (1.0 + 1e-12);
            const auto eq = check_equal_lengths(d, eps);
            const auto pr = check_pair_lengths(d, eps, k, p.cfg.ell);
            const auto lb = check_lower_bounds(d, t, a, b, k, p.cfg.ell);
            const bool ok = in_bracket && eq.ok() && pr.ok && lb.ok();
            if (!ok) ++violations;
            std::cout << (ok ? "ok   " : "VIOL ") << tag << "\n";
          } catch (const SolveError& ex) {
            ++failures;
            std::cout << "FAIL " << tag << ": " << ex.what() << "\n";
          }
        }
  std::cout << instances << " instances, " << violations << " violations, "
            << failures << " solver failures\n";
  if (failures > 0) return 2;
  return violations > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Half-eigenvalues and Fucik eigencurves of -u'' = lambda (m u+ - t n u-) "
      "with piecewise-constant periodic weights: exact shooting, eigencurve "
      "tracing, homogenization rate sweeps, nodal-domain checks"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub, bool with_kts) {
    sub->add_option("--config", args.config_path,
                    "JSON experiment config file");
    sub->add_option("--const-weights", args.const_weights,
                    "constant weights m,n (e.g. 1,1)");
    sub->add_option("--ell", args.ell_str, "domain length (number or pi)");
    sub->add_option("--out", args.out_dir, "output directory");
    sub->add_option("--tol", args.tol, "solver relative tolerance");
    sub->add_option("--epsilon", args.epsilon, "weight oscillation scale")
        ->check(CLI::PositiveNumber);
    if (with_kts) {
      sub->add_option("--k", args.k, "nodal domain count k");
      sub->add_option("--t", args.t_str, "slope t (number or pi)");
      sub->add_option("--sign", args.sign_str, "branch sign + or -");
    }
  };

  auto* solve = app.add_subcommand("solve", "solve one half-eigenvalue");
  add_common(solve, true);
  auto* curve = app.add_subcommand("curve", "trace Fucik curves over a t grid");
  add_common(curve, true);
  auto* homog =
      app.add_subcommand("homog", "run an epsilon-sweep rate experiment");
  add_common(homog, false);
  auto* nodal =
      app.add_subcommand("nodal", "nodal decomposition and checks");
  add_common(nodal, true);
  auto* checkb = app.add_subcommand(
      "check-bounds", "verify bracket and nodal bounds over a config grid");
  add_common(checkb, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(args);
    if (curve->parsed()) return cmd_curve(args);
    if (homog->parsed()) return cmd_homog(args);
    if (nodal->parsed()) return cmd_nodal(args);
    if (checkb->parsed()) return cmd_check_bounds(args);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const fucik::SolveError& ex) {
    std::cerr << "solver failure: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
