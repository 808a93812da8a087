#include "swerect/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "swerect/algebra.hpp"
#include "swerect/boundary.hpp"
#include "swerect/config.hpp"
#include "swerect/csv.hpp"
#include "swerect/elliptic.hpp"
#include "swerect/error.hpp"
#include "swerect/evolve.hpp"
#include "swerect/spatial_operator.hpp"

namespace swerect::cli {

namespace {

namespace fs = std::filesystem;

std::string row_text(const ConstraintRow& r) {
  std::ostringstream os;
  os << std::setprecision(10) << "(" << r(0) << ", " << r(1) << ", " << r(2) << ") . (u, v, phi) = 0";
  return os.str();
}

void print_catalog(std::ostream& out, const BoundarySpec& spec, const char* title) {
  out << title << (spec.derived ? " [derived by symmetry]" : "") << ":\n";
  for (Side s : kSides) {
    out << "  " << std::left << std::setw(6) << to_string(s) << std::right;
    if (spec.count(s) == 0) {
      out << "  (none)\n";
      continue;
    }
    out << "  " << row_text(spec.on(s)[0]) << "\n";
    for (std::size_t k = 1; k < spec.count(s); ++k) out << "          " << row_text(spec.on(s)[k]) << "\n";
  }
}

fs::path output_directory(const std::string& out_root, const ConfigDocument& doc) {
  fs::path dir = fs::path(out_root) / doc.output.dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::IoError, "cannot create output directory " + dir.string());
  return dir;
}

int cmd_classify(double u0, double v0, double phi0, double g, double f, std::ostream& out) {
  const PhysicalConstants p = validate_params(u0, v0, phi0, g, f);
  const Regime r = classify(p);
  const KappaValue k = kappa(p);
  out << "regime: " << to_string(r) << "\n";
  out << std::setprecision(12) << (k.kind == KappaKind::Kappa0 ? "kappa0: " : "kappa1: ") << k.value << "\n";
  print_catalog(out, bc_catalog(r, p), "boundary conditions");
  print_catalog(out, adjoint_bc_catalog(r, p), "adjoint boundary conditions");
  return kExitOk;
}

int cmd_verify_algebra(const ConfigDocument& doc, double tol, std::ostream& out) {
  const PhysicalConstants p = constants_of(doc);
  const DiagnosticReport d = verify_diagonalization(p, tol);
  const IncomingCountReport c = incoming_count_check(p, d.regime);
  out << std::setprecision(6) << std::scientific;
  out << "regime: " << to_string(d.regime) << "\n";
  out << "congruence residual x: " << d.congruence_x << "\n";
  out << "congruence residual y: " << d.congruence_y << "\n";
  if (d.similarity) out << "similarity residual:   " << *d.similarity << "\n";
  out << "tolerance:             " << tol << "\n";
  out << "diagonalization: " << (d.pass ? "PASS" : "FAIL") << "\n";
  out << "rows per side (W,E,S,N): expected " << c.expected[0] << "," << c.expected[1] << "," << c.expected[2]
      << "," << c.expected[3] << " actual " << c.actual[0] << "," << c.actual[1] << "," << c.actual[2] << ","
      << c.actual[3] << "\n";
  out << "incoming counts: " << (c.pass ? "PASS" : "FAIL") << "\n";
  return d.pass && c.pass ? kExitOk : kExitFailed;
}

int cmd_probe(const ConfigDocument& doc, std::size_t samples, std::uint64_t seed, std::ostream& out) {
  const PhysicalConstants p = constants_of(doc);
  const ProbeReport r = positivity_probe(p, classify(p), grid_of(doc), samples, seed);
  out << std::setprecision(6) << std::scientific;
  out << "regime: " << to_string(r.regime) << "\n";
  out << "samples: " << r.samples << "\n";
  out << "min Rayleigh quotient: " << r.min_quotient << "\n";
  out << "max Rayleigh quotient: " << r.max_quotient << "\n";
  out << "bound: " << r.bound << "\n";
  out << "positivity: " << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? kExitOk : kExitFailed;
}

double theta_error(const ThetaField& a, const ThetaField& b) {
  ThetaField d(a.grid());
  d.theta1() = a.theta1() - b.theta1();
  d.theta2() = a.theta2() - b.theta2();
  return theta_norm(d);
}

int cmd_solve_elliptic(const ConfigDocument& doc, bool mms, const std::string& out_root, std::ostream& out) {
  const PhysicalConstants p = constants_of(doc);
  const EllipticCoeffs c = swe_elliptic_block(p);
  const Grid grid = grid_of(doc);
  const fs::path dir = output_directory(out_root, doc);
  const int prec = doc.output.precision;
  out << std::setprecision(6) << std::scientific;
  out << "coefficients: alpha1=" << c.alpha1 << " alpha2=" << c.alpha2 << " beta1=" << c.beta1
      << " beta2=" << c.beta2 << "\n";
  if (mms) {
    const ManufacturedTheta m = manufactured_in_V(c, grid.L1, grid.L2);
    const std::vector<Grid> grids = {grid, Grid::make(grid.L1, grid.L2, 2 * grid.nx - 1, 2 * grid.ny - 1)};
    std::vector<double> errs;
    for (const Grid& g : grids) {
      const ThetaField exact = sample_theta(g, m.value);
      const ThetaField sol = solve_T(sample_theta(g, m.forcing), c);
      errs.push_back(theta_error(sol, exact));
      out << "n=" << g.nx << "x" << g.ny << " L2 error: " << errs.back() << "\n";
      if (&g == &grids.front()) write_theta_csv(sol, dir / "theta.csv", prec);
    }
    const double order = std::log2(errs[0] / errs[1]);
    const double zero = solve_T(ThetaField(grid), c).max_abs();
    out << "observed order: " << std::fixed << std::setprecision(3) << order << "\n" << std::scientific;
    out << "solve_T(0) max: " << zero << "\n";
    const bool pass = order >= 1.0 && zero <= 1e-12;
    out << "elliptic mms: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitOk : kExitFailed;
  }
  const double cx = 0.5 * grid.L1, cy = 0.5 * grid.L2, r = 0.25 * std::min(grid.L1, grid.L2);
  const ThetaField F = sample_theta(grid, [=](double x, double y) {
    const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (r * r);
    const double w = d2 < 1.0 ? std::pow(1.0 - d2, 3) : 0.0;
    return Eigen::Vector2d(w, -0.5 * w);
  });
  const ThetaField sol = solve_T(F, c);
  const NeumannReport n = neumann_residuals(sol, c);
  const NeumannReport mid = neumann_residuals(sol, c, 0.1);
  write_theta_csv(sol, dir / "theta.csv", prec);
  out << "max |theta|: " << sol.max_abs() << "\n";
  out << "normal-derivative residuals: east " << n.east << " north " << n.north << " west " << n.west
      << " south " << n.south << "\n";
  out << "away from corners: east " << mid.east << " north " << mid.north << " west " << mid.west << " south "
      << mid.south << "\n";
  out << "wrote " << (dir / "theta.csv").string() << "\n";
  return kExitOk;
}

int cmd_run(const ConfigDocument& doc, const std::string& out_root, std::ostream& out) {
  const RunConfig cfg = make_run_config(doc);
  const RunResult r = run(cfg);
  const fs::path dir = output_directory(out_root, doc);
  const int prec = doc.output.precision;
  write_energy_csv(r.log, dir / "energy.csv", prec);
  write_field_csv(r.final_state, dir / "final.csv", prec);
  for (const Snapshot& s : r.snapshots) {
    std::ostringstream name;
    name << "snapshot_" << std::setw(6) << std::setfill('0') << s.step << ".csv";
    write_field_csv(s.state, dir / name.str(), prec);
  }
  out << "regime: " << to_string(classify(cfg.p)) << "\n";
  out << "steps: " << r.steps << " dt: " << std::setprecision(6) << std::scientific << r.dt << "\n";
  out << "energy: " << r.log.entries().front().energy << " -> " << r.log.entries().back().energy << "\n";
  out << "wrote " << (dir / "energy.csv").string() << "\n";
  const bool free_decay = !cfg.forcing && cfg.boundary_data.homogeneous();
  if (free_decay) {
    const ContractionReport c = contraction_check(r.log, 1e-12);
    out << "contraction: " << (c.pass ? "PASS" : "FAIL") << " (max growth " << c.max_violation << ")\n";
    return c.pass ? kExitOk : kExitFailed;
  }
  return kExitOk;
}

int cmd_mms(const ConfigDocument& doc, std::size_t levels, std::ostream& out) {
  const PhysicalConstants p = constants_of(doc);
  const Regime regime = classify(p);
  const MmsReport r = mms_convergence(trig_packet(), p, regime, refinement_sequence(grid_of(doc), levels),
                                      doc.run.t_end, doc.run.cfl);
  out << "regime: " << to_string(regime) << "\n";
  out << std::setw(8) << "n" << std::setw(16) << "h" << std::setw(16) << "error" << std::setw(10) << "order\n";
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const MmsLevel& l = r.levels[k];
    out << std::setw(8) << l.n << std::setw(16) << std::scientific << std::setprecision(6) << l.h
        << std::setw(16) << l.error;
    if (k > 0) out << std::setw(9) << std::fixed << std::setprecision(3) << r.orders[k - 1];
    out << "\n";
  }
  if (levels < 2) return kExitOk;
  const bool pass = r.observed_order >= 0.8 && r.observed_order <= 1.3;
  out << "observed order: " << std::fixed << std::setprecision(3) << r.observed_order << " "
      << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linearized shallow water equations on a rectangle: regimes, boundary conditions, solvers"};
  app.require_subcommand(1);
  std::string out_root = ".";
  app.add_option("--out", out_root, "Directory that output paths are relative to");

  double u0 = 0, v0 = 0, phi0 = 0, g = 0, f = 0;
  auto* classify_cmd = app.add_subcommand("classify", "Print regime, kappa and boundary-condition tables");
  classify_cmd->add_option("--u0", u0)->required();
  classify_cmd->add_option("--v0", v0)->required();
  classify_cmd->add_option("--phi0", phi0)->required();
  classify_cmd->add_option("--g", g)->required();
  classify_cmd->add_option("--f", f);

  std::string config;
  double tol = 1e-10;
  auto* verify_cmd = app.add_subcommand("verify-algebra", "Check diagonalization identities and row counts");
  verify_cmd->add_option("--config", config)->required();
  verify_cmd->add_option("--tol", tol);

  std::size_t samples = 200;
  std::uint64_t seed = 0;
  auto* probe_cmd = app.add_subcommand("probe-positivity", "Minimum discrete Rayleigh quotient of A_h");
  probe_cmd->add_option("--config", config)->required();
  probe_cmd->add_option("--samples", samples);
  auto* seed_opt = probe_cmd->add_option("--seed", seed);

  bool mms = false;
  auto* elliptic_cmd = app.add_subcommand("solve-elliptic", "Solve the elliptic subsystem (MixedSubcritical)");
  elliptic_cmd->add_option("--config", config)->required();
  elliptic_cmd->add_flag("--mms", mms, "Manufactured-solution check");

  auto* run_cmd = app.add_subcommand("run", "Time integration with CSV outputs");
  run_cmd->add_option("--config", config)->required();

  std::size_t levels = 3;
  auto* mms_cmd = app.add_subcommand("mms-convergence", "Manufactured-solution convergence table");
  mms_cmd->add_option("--config", config)->required();
  mms_cmd->add_option("--levels", levels)->check(CLI::Range(1, 8));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(u0, v0, phi0, g, f, out);
    const ConfigDocument doc = load_config(config);
    if (*verify_cmd) return cmd_verify_algebra(doc, tol, out);
    if (*probe_cmd) return cmd_probe(doc, samples, seed_opt->count() ? seed : doc.run.seed, out);
    if (*elliptic_cmd) return cmd_solve_elliptic(doc, mms, out_root, out);
    if (*run_cmd) return cmd_run(doc, out_root, out);
    if (*mms_cmd) return cmd_mms(doc, levels, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitUsage : kExitFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace swerect::cli
