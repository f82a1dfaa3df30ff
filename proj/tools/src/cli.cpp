#include "slok/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "slok/config.hpp"
#include "slok/errors.hpp"
#include "slok/functionals.hpp"
#include "slok/ineq.hpp"
#include "slok/io.hpp"
#include "slok/logmink.hpp"
#include "slok/random.hpp"
#include "slok/transport.hpp"
#include "slok/version.hpp"

namespace slok::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string out_dir = ".";
  std::string prefix;
  std::uint64_t seed = 1;
};

json meta(int M, std::uint64_t seed) {
  return json{{"tool", std::string("slok ") + kVersion}, {"grid_M", M}, {"seed", seed}};
}

std::string path_of(const Common& c, const std::string& name) {
  std::filesystem::create_directories(c.out_dir);
  return (std::filesystem::path(c.out_dir) / (c.prefix + name)).string();
}

void write_json(const std::string& path, json j) { write_file(path, j.dump(2) + "\n"); }

int measure_size(const Measure& m) {
  return std::visit([](const auto& x) { return x.size(); }, m);
}

json witness_json(const InfeasibleWitness& w) {
  return json{{"rows", w.rows}, {"cols", w.cols}, {"source_mass", w.source_mass},
              {"target_mass", w.target_mass}};
}

// ---- transport

struct TransportArgs {
  std::string mu, nu;
  std::optional<double> sinkhorn;
  std::string gauge = "unit_volume";
};

int cmd_transport(const TransportArgs& a, Common c, std::ostream& out, std::ostream& err) {
  if (c.prefix.empty()) c.prefix = "transport_";
  const Measure mu = read_measure(a.mu), nu = read_measure(a.nu);
  const auto dm = discrete(mu), dn = discrete(nu);
  const int M = measure_size(nu);
  const std::string comment = csv_comment(M, c.seed);

  if (a.sinkhorn) {
    const auto s = sinkhorn(dm, dn, *a.sinkhorn);
    out << "warning: entropic approximation with eps=" << format_double(*a.sinkhorn)
        << ", exact-value assertions are disabled\n";
    out << "K_eps = " << format_double(s.value) << "\n";
    out << "marginal error = " << format_double(s.marginal_error) << " after " << s.iterations
        << " iterations\n";
    std::ofstream f(path_of(c, "plan.csv"));
    write_plan_csv(f, s.plan, comment);
    if (!s.converged) {
      err << "sinkhorn did not reach the marginal tolerance\n";
      return no_convergence;
    }
    return ok;
  }

  Gauge gauge;
  if (a.gauge == "unit_volume")
    gauge = Gauge::unit_volume;
  else if (a.gauge == "h0_equals_1")
    gauge = Gauge::h0_equals_1;
  else
    throw InvalidInput("unknown gauge '" + a.gauge + "'");

  TransportSolution sol;
  try {
    sol = solve_plan(dm, dn);
  } catch (const Infeasible& e) {
    const auto& w = e.witness();
    err << "infeasible: " << e.what() << "\n";
    err << "witness: source points {";
    for (std::size_t k = 0; k < w.rows.size(); ++k) err << (k ? "," : "") << w.rows[k];
    err << "} with mass " << format_double(w.source_mass) << " reach only target points {";
    for (std::size_t k = 0; k < w.cols.size(); ++k) err << (k ? "," : "") << w.cols[k];
    err << "} with mass " << format_double(w.target_mass) << "\n";
    write_json(path_of(c, "witness.json"), json{{"meta", meta(M, c.seed)}, {"witness", witness_json(w)}});
    return infeasible;
  }
  const double dual_gap = std::abs(sol.plan.K - sol.duals.dual_value(dm, dn));
  out << "K = " << format_double(sol.plan.K) << "\n";
  out << "duality gap = " << format_double(dual_gap) << "\n";
  {
    std::ofstream f(path_of(c, "plan.csv"));
    write_plan_csv(f, sol.plan, comment);
  }
  json duals;
  try {
    const auto tb = duals_to_body(sol.duals, dm, dn, gauge);
    duals = json::parse(to_json(tb.duals));
    duals["volume"] = tb.volume;
  } catch (const DegenerateBody& e) {
    duals = json::parse(to_json(sol.duals));
    duals["note"] = std::string("gauge not applied: ") + e.what();
  }
  duals["meta"] = meta(M, c.seed);
  write_json(path_of(c, "duals.json"), duals);
  return ok;
}

// ---- logmink

struct LogminkArgs {
  std::string mu;
  std::string method = "f0";
};

json trace_json(const std::vector<double>& t) { return json(t); }

int cmd_logmink(const LogminkArgs& a, Common c, std::ostream& out, std::ostream& err) {
  if (c.prefix.empty()) c.prefix = "logmink_";
  if (a.method != "f0" && a.method != "fixedpoint" && a.method != "both")
    throw InvalidInput("method must be f0, fixedpoint or both");
  const Measure mu = read_measure(a.mu);
  const int M = measure_size(mu);
  const bool run_f0 = a.method != "fixedpoint";
  const bool run_fp = a.method != "f0";

  json report{{"meta", meta(M, c.seed)}, {"seed", c.seed}, {"method", a.method}};
  std::ofstream trace(path_of(c, "trace.csv"));
  CsvWriter tw(trace, csv_comment(M, c.seed), {"method", "iteration", "value"});
  bool converged = true;
  std::optional<SupportFn> body;
  std::optional<LogMinkResult> f0res;
  std::optional<FixedPointResult> fpres;

  if (const auto* atoms = std::get_if<AtomicMeasure>(&mu)) {
    if (run_fp) throw InvalidInput("the fixed-point method needs a grid density");
    f0res = minimize_F0(*atoms);
  } else {
    const auto& g = std::get<GridDensity>(mu);
    if (run_f0) {
      Rng rng(c.seed);
      f0res = minimize_F0(g, random_shape(rng).sample(g.grid));
    }
    if (run_fp) fpres = fixed_point_F(g);
  }

  if (f0res) {
    const auto& r = *f0res;
    for (std::size_t k = 0; k < r.trace.size(); ++k)
      tw.row({"f0", std::to_string(k), format_double(r.trace[k])});
    out << "minimize_F0: F0 = " << format_double(r.F0) << " iterations = " << r.iterations
        << (r.converged ? " converged" : " NOT converged") << "\n";
    out << "  gradient norm = " << format_double(r.gradient_norm)
        << " stationarity = " << format_double(r.stationarity) << "\n";
    report["f0"] = {{"F0", r.F0},
                    {"iterations", r.iterations},
                    {"converged", r.converged},
                    {"trace", trace_json(r.trace)},
                    {"residuals", {{"gradient_norm", r.gradient_norm}, {"stationarity", r.stationarity}}},
                    {"body", json::parse(to_json(r.h))}};
    converged = converged && r.converged;
    body = r.h;
  }
  if (fpres) {
    const auto& r = *fpres;
    for (std::size_t k = 0; k < r.trace.size(); ++k)
      tw.row({"fixedpoint", std::to_string(k), format_double(r.trace[k])});
    out << "fixed_point_F: F = " << format_double(r.F) << " F0 = " << format_double(r.F0)
        << " iterations = " << r.iterations << (r.converged ? " converged" : " NOT converged") << "\n";
    report["fixedpoint"] = {{"F", r.F},
                            {"F0", r.F0},
                            {"Ent_m", r.ent_m},
                            {"iterations", r.iterations},
                            {"converged", r.converged},
                            {"trace", trace_json(r.trace)},
                            {"body", json::parse(to_json(r.h))},
                            {"nu", json::parse(to_json(r.nu))}};
    converged = converged && r.converged;
    if (!body) body = r.h;
  }
  if (f0res && fpres) {
    const int n = 2;
    const double d0 = std::abs(f0res->F0 - fpres->F0);
    const double mf = f0res->F0 + std::log(unit_ball_volume(n)) / n;
    out << "comparison: |F0(f0) - F0(fixedpoint)| = " << format_double(d0)
        << (d0 <= 1e-4 ? " (agree within 1e-4)" : " (DISAGREE beyond 1e-4)") << "\n";
    out << "  F(fixedpoint) = " << format_double(fpres->F) << " vs min F0 + log|B|/n = " << format_double(mf)
        << " difference " << format_double(std::abs(fpres->F - mf)) << "\n";
    report["comparison"] = {{"F0_difference", d0}, {"F_identity_difference", std::abs(fpres->F - mf)}};
  }

  if (const auto* g = std::get_if<GridDensity>(&mu); g && f0res) {
    double dev = 0.0;
    for (double v : g->rho) dev = std::max(dev, std::abs(v - 1.0));
    const auto& h = f0res->h;
    const double spread = h.max_value() - h.min_value();
    if (dev <= 1e-12 && f0res->converged && spread <= 1e-5)
      out << "Firey: the uniform measure is the cone measure of the ball of volume one"
          << " (max deviation " << format_double(spread) << ")\n";
  }
  if (body && body->regime() == Regime::polytope) {
    out << "body: polytope with " << body->pair_count() << " facet pairs\n";
    for (int i = 0; i < body->size(); ++i) {
      out << "  normal (";
      for (int k = 0; k < body->dim(); ++k) out << (k ? ", " : "") << format_double(body->direction(i)[k] + 0.0);
      out << ") h = " << format_double(body->value(i)) << "\n";
    }
  }

  json bj = json::parse(to_json(*body));
  bj["meta"] = meta(M, c.seed);
  write_json(path_of(c, "body.json"), bj);
  write_json(path_of(c, "report.json"), report);
  if (!converged) {
    err << "solver did not converge; best iterate written\n";
    return no_convergence;
  }
  return ok;
}

// ---- verify

struct VerifyArgs {
  std::string suite = "all";
  int count = 100;
  int M = 180;
  int jobs = 1;
  double R = 10.0;
  std::string h;
};

Margin constant_case(Suite s, const DirectionGrid& grid) {
  const SupportFn ball = ball_support(grid);
  switch (s) {
    case Suite::entropy_transport: return verify_entropy_transport(uniform_density(grid));
    case Suite::leblog: return verify_leblog(ball);
    case Suite::trace: return verify_trace(ball);
    case Suite::trfh: return verify_trfh(ball, ball);
    case Suite::trfh_polytope: {
      const SupportFn box = box_support({1.0, 1.0, 1.0});
      return verify_trfh(box, box);
    }
    case Suite::trfh2:
    case Suite::trfh2_explore: return verify_trfh2(ball, ball);
    case Suite::gage: return verify_gage(ball);
    case Suite::bonnesen: return verify_bonnesen(ball);
    case Suite::santalo: return verify_santalo(ball);
  }
  return {};
}

json counterexample(double R, std::ostream& out) {
  const auto rep = rectangle_counterexample(R);
  out << "counterexample R = " << format_double(R) << ": LHS = " << format_double(rep.lhs)
      << " RHS = " << format_double(rep.rhs) << " verdict " << (rep.violated ? "violated" : "holds") << "\n";
  return json{{"R", R}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"violated", rep.violated}};
}

int cmd_verify(const VerifyArgs& a, Common c, std::ostream& out, std::ostream& err) {
  if (c.prefix.empty()) c.prefix = "verify_";
  if (a.count < 1) throw InvalidInput("count must be positive");
  if (!a.h.empty() && a.h != "const") throw InvalidInput("--h accepts only 'const'");
  std::vector<Suite> suites;
  bool with_counterexample = false;
  if (a.suite == "all") {
    suites = all_suites();
    with_counterexample = true;
  } else if (a.suite == "counterexample") {
    with_counterexample = true;
  } else {
    Suite s;
    if (!parse_suite(a.suite, s)) throw InvalidInput("unknown suite '" + a.suite + "'");
    suites.push_back(s);
  }
  const DirectionGrid grid = make_circle_grid(a.M);

  json summary{{"meta", meta(a.M, c.seed)}, {"suites", json::array()}};
  bool all_pass = true;
  for (Suite s : suites) {
    const std::string name = suite_name(s);
    json js{{"suite", name}};
    if (a.h == "const") {
      const Margin m = constant_case(s, grid);
      out << name << ": constant h margin = " << format_double(m.value);
      if (m.equality && m.constant) out << " (equality case, h constant)";
      if (!m.note.empty()) out << " note: " << m.note;
      out << "\n";
      const bool pass = m.pass() && m.consistent();
      js.update({{"margin", m.value}, {"equality", m.equality}, {"constant", m.constant}, {"pass", pass}});
      all_pass = all_pass && pass;
    } else {
      const auto res = run_sweep(s, a.count, c.seed, a.M, a.jobs);
      std::ofstream f(path_of(c, name + ".csv"));
      CsvWriter w(f, csv_comment(a.M, c.seed), {"index", "seed", "margin", "asserted", "pass"});
      int failed = 0;
      for (const auto& r : res.rows) {
        w.row({std::to_string(r.index), std::to_string(r.seed), format_double(r.margin),
               r.asserted ? "1" : "0", r.pass ? "1" : "0"});
        if (!r.pass) {
          ++failed;
          err << name << ": violation at instance " << r.index << " seed " << r.seed << " margin "
              << format_double(r.margin) << "\n";
        }
      }
      const bool asserted = std::any_of(res.rows.begin(), res.rows.end(), [](const SweepRow& r) { return r.asserted; });
      out << name << ": " << a.count << " instances, "
          << (asserted ? "min margin " + format_double(res.min_margin) : std::string("logged only"))
          << ", " << (res.pass ? "pass" : std::to_string(failed) + " violations") << "\n";
      js.update({{"count", a.count}, {"asserted", asserted}, {"min_margin", asserted ? json(res.min_margin) : json()},
                 {"violations", failed}, {"pass", res.pass}});
      all_pass = all_pass && res.pass;
    }
    summary["suites"].push_back(js);
  }
  if (with_counterexample) summary["counterexample"] = counterexample(a.R, out);
  summary["pass"] = all_pass;
  write_json(path_of(c, "summary.json"), summary);
  return all_pass ? ok : violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"slok: symmetric log-Minkowski transport toolkit", "slok"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  common.seed = seed_from_env(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", common.out_dir, "directory for output files");
    sub->add_option("--prefix", common.prefix, "output file name prefix");
    sub->add_option("--seed", common.seed, "random seed (default SLOK_SEED or 1)");
  };

  TransportArgs ta;
  auto* tr = app.add_subcommand("transport", "exact or entropic transport between two measures");
  tr->add_option("--mu", ta.mu, "source measure JSON")->required();
  tr->add_option("--nu", ta.nu, "target measure JSON")->required();
  tr->add_option("--sinkhorn", ta.sinkhorn, "entropic regularization instead of the exact LP");
  tr->add_option("--gauge", ta.gauge, "unit_volume or h0_equals_1");
  add_common(tr);

  LogminkArgs la;
  auto* lm = app.add_subcommand("logmink", "solve the even log-Minkowski problem");
  lm->add_option("--mu", la.mu, "cone measure JSON")->required();
  lm->add_option("--method", la.method, "f0, fixedpoint or both");
  add_common(lm);

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify", "randomized inequality sweeps");
  vf->set_help_flag("--help", "print this help message and exit");
  vf->add_option("--suite", va.suite, "suite name, counterexample or all");
  vf->add_option("--count", va.count, "instances per suite");
  vf->add_option("--M", va.M, "circle grid size");
  vf->add_option("--jobs", va.jobs, "worker threads");
  vf->add_option("--R", va.R, "rectangle aspect for the counterexample");
  vf->add_option("--h", va.h, "'const' runs the constant support function only");
  add_common(vf);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (tr->parsed()) return cmd_transport(ta, common, out, err);
    if (lm->parsed()) return cmd_logmink(la, common, out, err);
    if (vf->parsed()) return cmd_verify(va, common, out, err);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return infeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace slok::cli
