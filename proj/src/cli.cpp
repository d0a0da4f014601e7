#include "sfdd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "sfdd/csv.hpp"
#include "sfdd/dtd.hpp"
#include "sfdd/errors.hpp"
#include "sfdd/geometry.hpp"
#include "sfdd/kernels.hpp"
#include "sfdd/schwarz.hpp"
#include "sfdd/verify.hpp"

namespace sfdd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GeometryOpts {
  double m = 0.0, R = 0.0, theta1 = 0.0, theta2 = 0.0;
  bool has_mr = false, has_angles = false;

  void attach(CLI::App* cmd) {
    auto* om = cmd->add_option("--m", m, "center offset of disc 2");
    auto* oR = cmd->add_option("--R", R, "radius of disc 2");
    auto* o1 = cmd->add_option("--theta1", theta1, "intersection angle seen from disc 1");
    auto* o2 = cmd->add_option("--theta2", theta2, "intersection angle seen from disc 2");
    om->needs(oR);
    oR->needs(om);
    o1->needs(o2);
    o2->needs(o1);
    om->excludes(o1);
    cmd->callback([this, om, o1]() {
      has_mr = om->count() > 0;
      has_angles = o1->count() > 0;
    });
  }

  DiscPair resolve() const {
    if (has_mr == has_angles)
      throw std::domain_error("give exactly one of --m/--R or --theta1/--theta2");
    return has_mr ? DiscPair::from_discs(m, R) : DiscPair::from_angles(theta1, theta2);
  }

  std::string echo() const {
    std::ostringstream os;
    if (has_mr)
      os << "--m " << fmt_g9(m) << " --R " << fmt_g9(R);
    else
      os << "--theta1 " << fmt_g9(theta1) << " --theta2 " << fmt_g9(theta2);
    return os.str();
  }
};

// Flat key=value option file, keys mirroring the long flags without the
// leading dashes; '#' starts a comment. Values from the file are injected
// as ordinary flags unless the same flag is given on the command line.
std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read config file: " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(is, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      tokens.push_back("--" + trim(line));
    else
      tokens.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
  }
  return tokens;
}

std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;

  auto flag_name = [](const std::string& tok) {
    const size_t eq = tok.find('=');
    return eq == std::string::npos ? tok : tok.substr(0, eq);
  };
  std::vector<std::string> out;
  out.push_back(args.empty() ? std::string() : args[0]);  // subcommand name
  for (const std::string& tok : config_tokens(path)) {
    const std::string name = flag_name(tok);
    bool overridden = false;
    for (size_t i = 1; i < args.size(); ++i)
      if (args[i] == name || args[i].rfind(name + "=", 0) == 0) overridden = true;
    if (!overridden) out.push_back(tok);
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

void emit(const CsvTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    table.write(std::cout);
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  table.write(os);
}

CsvTable make_table(const std::string& experiment, const std::string& config_echo) {
  CsvTable t;
  t.add_comment(std::string("tool: ") + kToolVersion);
  t.add_comment("experiment: " + experiment);
  t.add_comment("config: " + config_echo);
  return t;
}

// ----------------------------------------------------------------- geometry

int cmd_geometry(const GeometryOpts& geo, int n1, int n2, const std::string& out) {
  const DiscPair pair = geo.resolve();
  std::ostringstream echo;
  echo << "geometry " << geo.echo();
  if (n1 > 0) echo << " --n1 " << n1 << " --n2 " << n2;
  CsvTable t = make_table("geometry", echo.str());

  std::vector<std::string> header = {"theta1_star_rad", "theta2_star_rad", "m",
                                     "R",               "C1",              "degenerate"};
  std::vector<double> row = {pair.theta1_star(), pair.theta2_star(), pair.m(), pair.R(),
                             pair.contraction(), pair.degenerate() ? 1.0 : 0.0};
  if (n1 > 0) {
    const SnappedScenario s = snap_to_grids(pair.theta1_star(), pair.theta2_star(), n1, n2);
    header.insert(header.end(),
                  {"theta1_int_rad", "theta2_int_rad", "ell1", "ell2", "C1_int"});
    row.insert(row.end(),
               {s.theta1_int, s.theta2_int, static_cast<double>(s.ell1),
                static_cast<double>(s.ell2), contraction_exact(s.theta1_int, s.theta2_int)});
  }
  t.set_header(header);
  t.add_row_values(row);
  emit(t, out);
  return 0;
}

// ------------------------------------------------------------ epsilon-table

int cmd_epsilon_table(const std::vector<int>& Ns, const std::string& out) {
  std::ostringstream echo;
  echo << "epsilon-table --N";
  for (int N : Ns) echo << " " << N;
  CsvTable t = make_table("epsilon-table", echo.str());
  t.set_header({"N", "r_star", "epsilon", "bound"});
  for (int N : Ns) {
    const double r = positivity_radius_theory(N);
    t.add_row_values({static_cast<double>(N), r, epsilon_quadrature(N, r), epsilon_bound(N)});
  }
  emit(t, out);
  return 0;
}

// -------------------------------------------------------------- kernel-scan

int cmd_kernel_scan(int n_min, int n_max, const std::string& out) {
  if (n_min < 4 || n_max > 200 || n_min > n_max)
    throw std::domain_error("kernel-scan: N range must lie within [4, 200]");
  std::ostringstream echo;
  echo << "kernel-scan --N-min " << n_min << " --N-max " << n_max;
  CsvTable t = make_table("kernel-scan", echo.str());
  t.add_comment("scan: angle_steps=8N radius_tol=1e-5");
  t.set_header({"N", "delta_th", "delta_num", "inv_delta_th", "inv_delta_num", "q", "flag"});
  for (int N = n_min; N <= n_max; ++N) {
    const double dth = 1.0 - positivity_radius_theory(N);
    try {
      const PositivityReport rep = positivity_radius_numeric(N, 8 * N, 1e-5);
      t.add_row({fmt_g9(N), fmt_g9(rep.delta_theory), fmt_g9(rep.delta_numeric),
                 fmt_g9(1.0 / rep.delta_theory), fmt_g9(1.0 / rep.delta_numeric),
                 fmt_g9(rep.q), "ok"});
    } catch (const resolution_error&) {
      t.add_row({fmt_g9(N), fmt_g9(dth), "nan", fmt_g9(1.0 / dth), "nan", "nan",
                 "resolution"});
    }
  }
  emit(t, out);
  return 0;
}

// -------------------------------------------------------------- dtd-profile

int cmd_dtd_profile(const GeometryOpts& geo, const std::string& variant, int N, int samples,
                    bool grid_only, int n1_opt, int n2_opt, double n2_factor,
                    const std::string& out) {
  const DiscPair pair = geo.resolve();
  std::ostringstream echo;
  echo << "dtd-profile " << geo.echo() << " --variant " << variant << " --N " << N
       << " --samples " << samples;
  if (grid_only) echo << " --grid-only";
  CsvTable t = make_table("dtd-profile", echo.str());
  t.set_header({"theta_tilde_rad", "value", "in_B1_plus", "is_grid_node"});

  auto one = [](double) { return 1.0; };
  auto add_profile_rows = [&](const DtDProfile& prof, std::optional<int> order) {
    auto flag_plus = [&](double tt) {
      if (!order) return 1.0;  // exact solve: the kernel is positive everywhere
      const PolarPoint p = gamma2_to_b1_polar(pair, tt);
      return p.r <= positivity_radius_theory(*order) ? 1.0 : 0.0;
    };
    const double lo = pair.theta2_star(), hi = kTwoPi - pair.theta2_star();
    if (prof.endpoints)
      t.add_row_values({lo, prof.endpoints->first, 0.0, 0.0});
    for (size_t i = 0; i < prof.thetas.size(); ++i)
      t.add_row_values({prof.thetas[i], prof.values[i], flag_plus(prof.thetas[i]),
                        !prof.grid_marks.empty() && prof.grid_marks[i] ? 1.0 : 0.0});
    if (prof.endpoints)
      t.add_row_values({hi, prof.endpoints->second, 0.0, 0.0});
  };

  if (variant == "exact") {
    add_profile_rows(dtd_exact_profile(pair, one, samples), std::nullopt);
  } else if (variant == "projection") {
    add_profile_rows(dtd_projection_profile(pair, N, one, samples), N);
  } else if (variant == "interpolation") {
    const int n1 = n1_opt > 0 ? n1_opt : 2 * (N + 1);
    const int n2 = n2_opt > 0 ? n2_opt : matched_n2(pair.R(), n1, n2_factor);
    const SnappedScenario s =
        snap_to_grids(pair.theta1_star(), pair.theta2_star(), n1, n2);
    t.add_comment("snapped: theta1_int=" + fmt_g9(s.theta1_int) +
                  " theta2_int=" + fmt_g9(s.theta2_int) + " ell1=" + std::to_string(s.ell1) +
                  " ell2=" + std::to_string(s.ell2) + " n1=" + std::to_string(n1) +
                  " n2=" + std::to_string(n2));
    const DtDProfile prof = interp_bound_profile(s, samples, grid_only);
    const double rstar = positivity_radius_theory(n1 / 2 - 1);
    for (size_t i = 0; i < prof.thetas.size(); ++i) {
      const PolarPoint p = gamma2_to_b1_polar(s.base, prof.thetas[i]);
      t.add_row_values({prof.thetas[i], prof.values[i], p.r <= rstar ? 1.0 : 0.0,
                        prof.grid_marks[i] ? 1.0 : 0.0});
    }
  } else {
    throw std::domain_error("dtd-profile: unknown variant " + variant);
  }
  emit(t, out);
  return 0;
}

// -------------------------------------------------------- contraction-sweep

int cmd_contraction_sweep(double R, const std::vector<int>& Ns, double t1_min, double t1_max,
                          int steps, double n2_factor, const std::string& out) {
  if (!(R >= 1.0)) throw std::domain_error("contraction-sweep: R must be >= 1");
  const double hard_max = R == 1.0 ? 0.5 * kPi : kPi;
  if (!(t1_min > 0.0 && t1_max < hard_max && t1_min < t1_max))
    throw std::domain_error("contraction-sweep: theta1 grid outside the admissible range");

  std::ostringstream echo;
  echo << "contraction-sweep --R " << fmt_g9(R) << " --N";
  for (int N : Ns) echo << " " << N;
  echo << " --theta1-min " << fmt_g9(t1_min) << " --theta1-max " << fmt_g9(t1_max)
       << " --theta1-steps " << steps << " --n2-factor " << fmt_g9(n2_factor);
  CsvTable t = make_table("contraction-sweep", echo.str());

  std::vector<std::string> header = {"theta1_star_rad", "C_continuous"};
  for (int N : Ns) {
    header.push_back("theta1_int_N" + std::to_string(N));
    header.push_back("C_bound_N" + std::to_string(N));
    header.push_back("flag_N" + std::to_string(N));
  }
  t.set_header(header);

  for (int i = 0; i < steps; ++i) {
    const double t1 = t1_min + (t1_max - t1_min) * i / (steps - 1);
    const double oracle =
        R == 1.0 ? contraction_symmetric(t1) : contraction_unequal(t1, R);
    std::vector<std::string> row = {fmt_g9(t1), fmt_g9(oracle)};
    for (int N : Ns) {
      const int n1 = 2 * (N + 1);
      const int n2 = R == 1.0 && n2_factor == 1.0 ? n1 : matched_n2(R, n1, n2_factor);
      const double t2 = R == 1.0 ? kPi - t1 : kPi - std::asin(std::sin(t1) / R);
      try {
        const SnappedScenario s = snap_to_grids(t1, t2, n1, n2);
        row.push_back(fmt_g9(s.theta1_int));
        row.push_back(fmt_g9(interp_contraction_bound(s)));
        row.push_back("ok");
      } catch (const infeasible_error&) {
        row.push_back("nan");
        row.push_back("nan");
        row.push_back("infeasible");
      }
    }
    t.add_row(row);
  }
  emit(t, out);
  return 0;
}

// -------------------------------------------------------------- schwarz-run

int cmd_schwarz_run(const GeometryOpts& geo, const std::string& variant,
                    const std::string& mode, int N, int n1_opt, int n2_opt, double n2_factor,
                    double tol, int max_sweeps, int samples, const std::string& g_kind,
                    double x0, double y0, const std::string& out) {
  const DiscPair pair = geo.resolve();
  SchwarzConfig config{pair};
  if (variant == "exact")
    config.variant = SolveVariant::exact;
  else if (variant == "projection")
    config.variant = SolveVariant::projection;
  else if (variant == "interpolation")
    config.variant = SolveVariant::interpolation;
  else
    throw std::domain_error("schwarz-run: unknown variant " + variant);
  if (mode == "additive")
    config.mode = SweepMode::additive;
  else if (mode == "multiplicative")
    config.mode = SweepMode::multiplicative;
  else
    throw std::domain_error("schwarz-run: unknown mode " + mode);
  config.N = N;
  config.tol = tol;
  config.max_sweeps = max_sweeps;
  config.trace_samples = samples;

  std::ostringstream echo;
  echo << "schwarz-run " << geo.echo() << " --variant " << variant << " --mode " << mode
       << " --N " << N << " --tol " << fmt_g9(tol) << " --max-sweeps " << max_sweeps
       << " --samples " << samples << " --g-kind " << g_kind;
  CsvTable t = make_table("schwarz-run", echo.str());

  double bound = pair.contraction();
  if (config.mode == SweepMode::multiplicative) bound *= bound;
  if (config.variant == SolveVariant::interpolation) {
    const int n1 = n1_opt > 0 ? n1_opt : 2 * (N + 1);
    const int n2 = n2_opt > 0 ? n2_opt : matched_n2(pair.R(), n1, n2_factor);
    config.snapped = snap_to_grids(pair.theta1_star(), pair.theta2_star(), n1, n2);
    bound = interp_contraction_bound(*config.snapped);
    if (config.mode == SweepMode::multiplicative) bound *= bound;
    t.add_comment("snapped: theta1_int=" + fmt_g9(config.snapped->theta1_int) +
                  " theta2_int=" + fmt_g9(config.snapped->theta2_int) +
                  " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2));
  }

  ManufacturedSolution oracle = manufactured_harmonic_polynomial(2);
  if (g_kind.rfind("poly", 0) == 0)
    oracle = manufactured_harmonic_polynomial(std::stoi(g_kind.substr(4)));
  else if (g_kind == "log")
    oracle = manufactured_log_source(x0, y0, pair);
  else
    throw std::domain_error("schwarz-run: unknown --g-kind " + g_kind);

  const OmegaBoundaryData g = boundary_data(oracle, pair);
  const IterationTrace trace = run(config, g, &oracle);

  t.add_comment("bound: " + fmt_g9(bound));
  t.add_comment("converged: " + std::string(trace.converged ? "yes" : "no"));
  try {
    t.add_comment("observed_rate: " + fmt_g9(observed_rate(trace)));
  } catch (const insufficient_data_error&) {
    t.add_comment("observed_rate: nan");
  }
  t.set_header({"sweep", "update_gamma2", "update_gamma1", "update_max", "ratio",
                "oracle_error"});
  for (size_t i = 0; i < trace.update_max.size(); ++i) {
    t.add_row({fmt_g9(static_cast<double>(i + 1)), fmt_g9(trace.update_gamma2[i]),
               fmt_g9(trace.update_gamma1[i]), fmt_g9(trace.update_max[i]),
               i > 0 ? fmt_g9(trace.ratios[i - 1]) : "nan",
               trace.manufactured_error.empty() ? "nan"
                                                : fmt_g9(trace.manufactured_error[i + 1])});
  }
  emit(t, out);
  return trace.converged ? 0 : 3;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  const std::vector<CheckResult> results = verify_suite(suite, seed);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Schwarz iteration on two overlapping discs with exact, Fourier-projection"
               " and Fourier-interpolation subdomain solvers"};
  app.require_subcommand(1);

  std::string out, config_path;
  auto add_common = [&out, &config_path](CLI::App* cmd) {
    cmd->add_option("--out", out, "output CSV path (default: stdout)");
    cmd->add_option("--config", config_path,
                    "flat key=value option file; flags take precedence");
  };

  // geometry
  auto* geometry = app.add_subcommand("geometry", "angles, centers and contraction constants");
  GeometryOpts geo_geometry;
  geo_geometry.attach(geometry);
  int geo_n1 = 0, geo_n2 = 0;
  geometry->add_option("--n1", geo_n1, "grid nodes on disc 1 (enables snapping)");
  geometry->add_option("--n2", geo_n2, "grid nodes on disc 2");
  add_common(geometry);

  // epsilon-table
  auto* eps = app.add_subcommand("epsilon-table", "kernel-tail integrals and their bound");
  std::vector<int> eps_N = {5, 10, 20, 30, 40, 60, 80};
  eps->add_option("--N", eps_N, "truncation orders");
  add_common(eps);

  // kernel-scan
  auto* scan = app.add_subcommand("kernel-scan", "positivity radius: theory vs scan");
  int scan_min = 4, scan_max = 100;
  scan->add_option("--N-min", scan_min, "first order");
  scan->add_option("--N-max", scan_max, "last order");
  add_common(scan);

  // dtd-profile
  auto* prof = app.add_subcommand("dtd-profile", "disc-to-disc map profiles along Gamma2");
  GeometryOpts geo_prof;
  geo_prof.attach(prof);
  std::string prof_variant = "exact";
  int prof_N = 25, prof_samples = 401, prof_n1 = 0, prof_n2 = 0;
  double prof_factor = 1.0;
  bool prof_grid_only = false;
  prof->add_option("--variant", prof_variant, "exact | projection | interpolation");
  prof->add_option("--N", prof_N, "truncation order");
  prof->add_option("--samples", prof_samples, "profile samples");
  prof->add_option("--n1", prof_n1, "override disc-1 node count");
  prof->add_option("--n2", prof_n2, "override disc-2 node count");
  prof->add_option("--n2-factor", prof_factor, "n2 ~ factor * R * n1");
  prof->add_flag("--grid-only", prof_grid_only, "restrict samples to the disc-2 grid");
  add_common(prof);

  // contraction-sweep
  auto* sweep = app.add_subcommand("contraction-sweep",
                                   "interpolation-variant contraction bound over theta1");
  double sweep_R = 1.0, sweep_min = 0.1, sweep_max = 0.5 * kPi - 0.1, sweep_factor = 1.0;
  std::vector<int> sweep_N = {40};
  int sweep_steps = 25;
  sweep->add_option("--R", sweep_R, "radius of disc 2");
  sweep->add_option("--N", sweep_N, "truncation orders");
  sweep->add_option("--theta1-min", sweep_min, "grid start");
  sweep->add_option("--theta1-max", sweep_max, "grid end");
  sweep->add_option("--theta1-steps", sweep_steps, "grid size");
  sweep->add_option("--n2-factor", sweep_factor, "n2 ~ factor * R * n1");
  add_common(sweep);

  // schwarz-run
  auto* srun = app.add_subcommand("schwarz-run", "run the alternating iteration");
  GeometryOpts geo_run;
  geo_run.attach(srun);
  std::string run_variant = "exact", run_mode = "additive", run_g = "poly2";
  int run_N = 20, run_n1 = 0, run_n2 = 0, run_sweeps = 60, run_samples = 101;
  double run_tol = 1e-8, run_factor = 1.0, run_x0 = 3.0, run_y0 = 1.0;
  srun->add_option("--variant", run_variant, "exact | projection | interpolation");
  srun->add_option("--mode", run_mode, "additive | multiplicative");
  srun->add_option("--N", run_N, "truncation order");
  srun->add_option("--n1", run_n1, "override disc-1 node count");
  srun->add_option("--n2", run_n2, "override disc-2 node count");
  srun->add_option("--n2-factor", run_factor, "n2 ~ factor * R * n1");
  srun->add_option("--tol", run_tol, "interface update tolerance");
  srun->add_option("--max-sweeps", run_sweeps, "sweep budget");
  srun->add_option("--samples", run_samples, "interface trace samples");
  srun->add_option("--g-kind", run_g, "boundary data: poly0..poly6 | log");
  srun->add_option("--x0", run_x0, "log-source x");
  srun->add_option("--y0", run_y0, "log-source y");
  add_common(srun);

  // verify
  auto* verify = app.add_subcommand("verify", "run the module invariant suites");
  std::string verify_suite_name = "all";
  std::uint64_t verify_seed = 12345;
  verify->add_option("suite", verify_suite_name, "kernels | fourier | dtd | schwarz | all");
  verify->add_option("--seed", verify_seed, "seed for randomized test vectors");

  std::vector<std::string> effective;
  try {
    effective = apply_config_file(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<std::string> reversed(effective.rbegin(), effective.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (geometry->parsed()) return cmd_geometry(geo_geometry, geo_n1, geo_n2, out);
    if (eps->parsed()) return cmd_epsilon_table(eps_N, out);
    if (scan->parsed()) return cmd_kernel_scan(scan_min, scan_max, out);
    if (prof->parsed())
      return cmd_dtd_profile(geo_prof, prof_variant, prof_N, prof_samples, prof_grid_only,
                             prof_n1, prof_n2, prof_factor, out);
    if (sweep->parsed())
      return cmd_contraction_sweep(sweep_R, sweep_N, sweep_min, sweep_max, sweep_steps,
                                   sweep_factor, out);
    if (srun->parsed())
      return cmd_schwarz_run(geo_run, run_variant, run_mode, run_N, run_n1, run_n2,
                             run_factor, run_tol, run_sweeps, run_samples, run_g, run_x0,
                             run_y0, out);
    if (verify->parsed()) return cmd_verify(verify_suite_name, verify_seed);
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace sfdd
