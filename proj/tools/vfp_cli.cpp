// Batch driver for the Vlasov-Fokker-Planck solver.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vfp/collision.hpp"
#include "vfp/diagnostics.hpp"
#include "vfp/driver.hpp"
#include "vfp/error.hpp"
#include "vfp/io.hpp"
#include "vfp/parallel.hpp"
#include "vfp/rkc.hpp"
#include "vfp/scenario.hpp"

namespace fs = std::filesystem;
using namespace vfp;

namespace {

struct RunArgs {
  std::string scenario;
  std::string config;
  std::optional<double> t_end, dt, tol, nu, vmax;
  std::optional<int> nx, nv, order, cadence;
  std::optional<std::string> integrator, splitting;
  std::vector<std::string> set;
  std::string out = "out";
  std::string restart;
  int threads = 1;
  bool strict = false;
  double strict_tol = 1e-10;
};

Scenario build_scenario(const RunArgs& a) {
  Scenario sc;
  if (!a.config.empty()) {
    sc = load_scenario(a.config);
  } else {
    sc = builtin_scenario(a.scenario.empty() ? "hom-relax" : a.scenario);
  }
  if (!a.config.empty() && !a.scenario.empty()) {
    throw Error(ErrorKind::InvalidConfig, "--scenario and --config are exclusive");
  }
  if (a.t_end) sc.t_end = *a.t_end;
  if (a.dt) {
    sc.dt = *a.dt;
    sc.adaptive = false;
  }
  if (a.tol) {
    sc.tol = *a.tol;
    sc.adaptive = true;
  }
  if (a.nu) sc.nu = *a.nu;
  if (a.vmax) sc.v_max = *a.vmax;
  if (a.nx) sc.nx = *a.nx;
  if (a.nv) sc.nv = *a.nv;
  if (a.order) sc.order = *a.order;
  if (a.cadence) sc.cadence = *a.cadence;
  if (a.integrator) apply_setting(sc, "integrator", *a.integrator);
  if (a.splitting) apply_setting(sc, "splitting", *a.splitting);
  for (const std::string& kv : a.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "--set expects key=value, got '" + kv + "'");
    apply_setting(sc, kv.substr(0, eq), kv.substr(eq + 1));
  }
  sc.validate();
  return sc;
}

void write_records(const fs::path& path, const std::vector<StepRecord>& recs) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path.string());
  out << "t,dt,stages,err,accepted,rhs_evals,wall\n";
  for (const StepRecord& r : recs) {
    out << format_real(r.t) << ',' << format_real(r.dt) << ',' << r.stages << ',' << format_real(r.err) << ','
        << (r.accepted ? 1 : 0) << ',' << r.rhs_evals << ',' << format_real(r.wall) << '\n';
  }
  if (!out) throw Error(ErrorKind::IoFailure, "write to " + path.string() + " failed");
}

// Largest |Q(t) - Q(0)| / |Q(0)| over the series.
double max_rel_dev(const DiagSeries& s, double DiagRow::*field) {
  if (s.rows.empty()) return 0.0;
  const double q0 = s.rows.front().*field;
  const double scale = std::abs(q0) > 0.0 ? std::abs(q0) : 1.0;
  double m = 0.0;
  for (const DiagRow& r : s.rows) m = std::max(m, std::abs(r.*field - q0) / scale);
  return m;
}

int cmd_run(const RunArgs& a) {
  set_thread_count(a.threads);
  const Scenario sc = build_scenario(a);
  RunOptions opt;
  if (!a.restart.empty()) opt.initial = read_snapshot(a.restart);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  // Rows are streamed so that a failed run still leaves its history behind.
  std::ofstream series(dir / "series.csv");
  if (!series) throw Error(ErrorKind::IoFailure, "cannot open " + (dir / "series.csv").string());
  series << series_header(sc.dims == 2 ? 2 : 1) << '\n';
  opt.on_row = [&](const DiagRow& r) {
    series << format_real(r.t) << ',' << format_real(r.mass) << ',' << format_real(r.momentum_x);
    if (sc.dims == 2) series << ',' << format_real(r.momentum_y);
    series << ',' << format_real(r.e_kin) << ',' << format_real(r.e_elec) << ',' << format_real(r.e_tot) << ','
           << format_real(r.entropy) << ',' << format_real(r.l2_maxwellian) << ',' << format_real(r.dt) << ','
           << r.stages << ',' << r.nrhs << '\n';
  };
  const RunResult res = run(sc, opt);
  series.close();
  if (!series) throw Error(ErrorKind::IoFailure, "write to series.csv failed");
  write_records(dir / "steps.csv", res.records);
  write_snapshot(dir / "final.snap", res.state, sc.dims == 0 ? nullptr : &res.field);
  write_plotspec(dir / "plotspec.txt", "series.csv", res.series.velocity_dims, sc.dims != 0);
  {
    std::ofstream cfg(dir / "scenario.cfg");
    cfg << format_scenario(sc);
  }
  std::printf("scenario=%s t=%.6g steps=%lld rejected=%lld rhs_evals=%lld max_dt=%.6g wall=%.3fs\n",
              sc.name.c_str(), res.state.time, static_cast<long long>(res.accepted),
              static_cast<long long>(res.rejected), static_cast<long long>(res.rhs_evals), res.max_dt, res.wall);
  if (!a.strict) return 0;
  bool ok = std::abs(res.state.time - sc.t_end) <= 1e-9 * std::max(1.0, sc.t_end);
  const double dm = max_rel_dev(res.series, &DiagRow::mass);
  std::printf("monitor mass=%.3e", dm);
  ok = ok && dm <= a.strict_tol;
  if (sc.splitting == Splitting::Homogeneous || sc.splitting == Splitting::SlRk2Rkc) {
    const double de = max_rel_dev(res.series, &DiagRow::e_tot);
    std::printf(" e_tot=%.3e", de);
    ok = ok && de <= a.strict_tol;
  }
  std::printf(" -> %s\n", ok ? "ok" : "violated");
  return ok ? 0 : 3;
}

struct StabArgs {
  std::string method = "rkc2";
  int s = 5;
  std::optional<double> eta;
  std::string out = "stability";
  int nre = 400;
  int nim = 201;
};

int cmd_stability(const StabArgs& a) {
  const Method m = parse_method(a.method);
  if (m == Method::Rk2) throw Error(ErrorKind::InvalidConfig, "stability scans cover rkc1 and rkc2");
  const RkcCoeffs c = make_coeffs(m, a.s, a.eta.value_or(default_eta(m)));
  const double left = -c.stability_length - 5.0;
  StabilityScan scan;
  const double him = std::max(5.0, 0.1 * c.stability_length);
  for (int i = 0; i < a.nre; ++i) {
    const double re = left + (1.0 - left) * i / (a.nre - 1);
    for (int j = 0; j < a.nim; ++j) {
      const double im = -him + 2.0 * him * j / (a.nim - 1);
      scan.re.push_back(re);
      scan.im.push_back(im);
      scan.abs_r.push_back(std::abs(stability_function(c, std::complex<double>(re, im))));
    }
  }
  const int ntrace = 4001;
  for (int i = 0; i < ntrace; ++i) {
    const double z = left + (1.0 - left) * i / (ntrace - 1);
    scan.trace_z.push_back(z);
    scan.trace_r.push_back(stability_function(c, z));
  }
  write_stability(a.out + "_scan.csv", a.out + "_trace.csv", scan);
  std::printf("method=%s s=%d eta=%.6g w0=%.17g stability_length=%.10g c_eta=%.10g\n",
              std::string(to_string(m)).c_str(), c.s, c.eta, c.w0, c.stability_length, c.c_eta);
  return 0;
}

struct EigArgs {
  int nv = 512;
  double vmax = 12.0;
  double nu = 0.5;
  double T = 1.88;
  double u = 0.0;
  std::string out = "frozen.mat";
};

int cmd_eigenexport(const EigArgs& a) {
  const VelocityGrid grid(a.vmax, a.nv, 1);
  const DenseMatrix m = assemble_frozen_operator(1.0, a.u, a.T, a.nu, grid);
  write_matrix(a.out, m, a.nv);
  const GershgorinBounds g = gershgorin_bounds(m);
  std::printf("rows=%zu max_real=%.10g min_real=%.10g max_radius=%.10g imag_bound=%.10g\n", m.rows, g.max_real,
              g.min_real, g.max_radius, bendixson_imag_bound(m));
  return 0;
}

struct CoeffArgs {
  std::string method = "rkc2";
  int s = 5;
  std::optional<double> eta;
};

int cmd_coeffs(const CoeffArgs& a) {
  const Method m = parse_method(a.method);
  if (m == Method::Rk2) throw Error(ErrorKind::InvalidConfig, "coefficient tables exist for rkc1 and rkc2");
  const RkcCoeffs c = make_coeffs(m, a.s, a.eta.value_or(default_eta(m)));
  std::printf("method %s\ns %d\neta %s\nw0 %s\nw1 %s\nw2 %s\nstability_length %s\nc_eta %s\n",
              std::string(to_string(m)).c_str(), c.s, format_real(c.eta).c_str(), format_real(c.w0).c_str(),
              format_real(c.w1).c_str(), format_real(c.w2).c_str(), format_real(c.stability_length).c_str(),
              format_real(c.c_eta).c_str());
  std::printf("l,mu,nu,kappa,a,b,c\n");
  for (int l = 0; l <= c.s; ++l) {
    const auto L = static_cast<std::size_t>(l);
    auto at = [L](const std::vector<double>& v) { return format_real(L < v.size() ? v[L] : 0.0); };
    std::printf("%d,%s,%s,%s,%s,%s,%s\n", l, at(c.mu).c_str(), at(c.nu).c_str(), at(c.kappa).c_str(),
                at(c.a).c_str(), at(c.b).c_str(), at(c.c).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vlasov-Fokker-Planck solver with Runge-Kutta-Chebyshev collisions"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "Run a named scenario or a config file");
  run_cmd->add_option("--scenario", ra.scenario, "Built-in scenario name");
  run_cmd->add_option("--config", ra.config, "key = value scenario file");
  run_cmd->add_option("--t-end", ra.t_end, "Final time");
  run_cmd->add_option("--dt", ra.dt, "Fixed time step (disables adaptivity)");
  run_cmd->add_option("--tol", ra.tol, "Adaptive tolerance (enables adaptivity)");
  run_cmd->add_option("--nu", ra.nu, "Collision rate");
  run_cmd->add_option("--nx", ra.nx, "Spatial points");
  run_cmd->add_option("--nv", ra.nv, "Velocity cells per axis");
  run_cmd->add_option("--vmax", ra.vmax, "Velocity half-width");
  run_cmd->add_option("--integrator", ra.integrator, "rkc1, rkc2 or rk2");
  run_cmd->add_option("--splitting", ra.splitting, "homogeneous, sl-rkc, sl-rk2-rkc, strang-2dv");
  run_cmd->add_option("--order", ra.order, "Collision order, 2 or 4");
  run_cmd->add_option("--out", ra.out, "Output directory");
  run_cmd->add_option("--cadence", ra.cadence, "Accepted steps per diagnostics row");
  run_cmd->add_option("--threads", ra.threads, "Worker threads (1 = bitwise deterministic)");
  run_cmd->add_option("--set", ra.set, "Extra key=value scenario settings");
  run_cmd->add_option("--restart", ra.restart, "Start from a snapshot file");
  run_cmd->add_flag("--strict", ra.strict, "Exit nonzero when invariant monitors exceed --strict-tol");
  run_cmd->add_option("--strict-tol", ra.strict_tol, "Relative deviation threshold for --strict");

  StabArgs sa;
  auto* stab_cmd = app.add_subcommand("stability", "Scan |R(z)| of an RKC method");
  stab_cmd->add_option("--method", sa.method, "rkc1 or rkc2");
  stab_cmd->add_option("-s,--stages", sa.s, "Stage count");
  stab_cmd->add_option("--eta", sa.eta, "Damping parameter");
  stab_cmd->add_option("--out", sa.out, "Output prefix");
  stab_cmd->add_option("--nre", sa.nre, "Real-axis samples");
  stab_cmd->add_option("--nim", sa.nim, "Imaginary-axis samples");

  EigArgs ea;
  auto* eig_cmd = app.add_subcommand("eigenexport", "Write the frozen collision matrix");
  eig_cmd->add_option("--nv", ea.nv, "Velocity cells");
  eig_cmd->add_option("--vmax", ea.vmax, "Velocity half-width");
  eig_cmd->add_option("--nu", ea.nu, "Collision rate");
  eig_cmd->add_option("--T", ea.T, "Frozen temperature");
  eig_cmd->add_option("--u", ea.u, "Frozen mean velocity");
  eig_cmd->add_option("--out", ea.out, "Matrix file");

  CoeffArgs ca;
  auto* coeff_cmd = app.add_subcommand("coeffs", "Print an RKC coefficient table");
  coeff_cmd->add_option("--method", ca.method, "rkc1 or rkc2");
  coeff_cmd->add_option("-s,--stages", ca.s, "Stage count");
  coeff_cmd->add_option("--eta", ca.eta, "Damping parameter");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return cmd_run(ra);
    if (*stab_cmd) return cmd_stability(sa);
    if (*eig_cmd) return cmd_eigenexport(ea);
    if (*coeff_cmd) return cmd_coeffs(ca);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: IoFailure: %s\n", e.what());
    return 2;
  }
  return 1;
}
