#include "vfp/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "vfp/collision.hpp"
#include "vfp/error.hpp"
#include "vfp/parallel.hpp"

namespace vfp {

namespace {

// The fourth-order drift stencil is not symmetrizable: part of its spectrum
// sits off the real axis by about nu * v_max / dv, outside the thin RKC
// region unless the stage count is raised accordingly.
double collision_bound(const VelocityGrid& vg, double nu, int order, double T, double advection) {
  const double drift = order == 4 ? 2.0 * stiffness_ratio(order) * nu * vg.v_max() : 0.0;
  return spectral_bound(vg, nu * stiffness_ratio(order), T, advection + drift);
}

}  // namespace

void collision_rhs(const PhaseGrid& grid, int order, double nu, std::span<const double> drift,
                   std::span<const double> f, std::span<double> out) {
  const std::size_t m = grid.column_size();
  const VelocityGrid& vg = grid.velocity();
  parallel_for(grid.columns(), [&](std::size_t begin, std::size_t end) {
    CollisionWorkspace ws;
    for (std::size_t i = begin; i < end; ++i) {
      const double d = drift.empty() ? 0.0 : drift[i];
      auto o = out.subspan(i * m, m);
      collision_apply(f.subspan(i * m, m), vg, order, o, d, ws);
      for (double& x : o) x *= nu;
    }
  });
}

double max_temperature(const DistState& f) {
  double t = 0.0;
  for (std::size_t i = 0; i < f.grid.columns(); ++i) {
    t = std::max(t, staggered_moments(f.column(i), f.grid.velocity()).T);
  }
  return t;
}

StepContext::StepContext(const Scenario& sc)
    : sc_(sc),
      grid_(sc.grid()),
      cache_(sc.integrator == Method::Rk2 ? Method::Rkc2 : sc.integrator, sc.eta),
      c_eta_(sc.integrator == Method::Rk2 ? 1.0 : asymptotic_c_eta(sc.integrator, sc.eta)) {
  if (!grid_.homogeneous()) plan_ = std::make_unique<SpectralPlan>(grid_);
}

SubstepInfo StepContext::collide(DistState& f, std::span<const double> drift, double h, double advection_scale,
                                 bool estimate) {
  SubstepInfo info;
  if (sc_.nu == 0.0) return info;
  const std::size_t n = f.values.size();
  const Rhs rhs = [&](double, std::span<const double> y, std::span<double> out) {
    collision_rhs(grid_, sc_.order, sc_.nu, drift, y, out);
  };
  y1_.resize(n);
  est_.resize(n);
  if (sc_.integrator == Method::Rk2) {
    info.evals = rk2_step(f.values, f.time, h, rhs, y1_, k1_, k2_);
    info.stages = 2;
    if (estimate) {
      for (std::size_t i = 0; i < n; ++i) est_[i] = h * (k2_[i] - k1_[i]);
    }
  } else {
    const double lambda = collision_bound(grid_.velocity(), sc_.nu, sc_.order, max_temperature(f), advection_scale);
    info.stages = sc_.stages > 0 ? sc_.stages : stage_select(h, lambda, c_eta_);
    const RkcCoeffs& c = cache_.get(info.stages);
    if (estimate) {
      q0_.resize(n);
      q1_.resize(n);
      rhs(f.time, f.values, q0_);
      info.evals = 1 + rkc_step(c, f.values, f.time, h, rhs, y1_, ws_, q0_);
      rhs(f.time + h, y1_, q1_);
      ++info.evals;
      rkc_error_estimate(f.values, y1_, q0_, q1_, h, est_);
    } else {
      info.evals = rkc_step(c, f.values, f.time, h, rhs, y1_, ws_);
    }
  }
  if (estimate) info.err = error_norm(est_, f.values, sc_.tol);
  f.values.swap(y1_);
  return info;
}

namespace {

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

SubstepInfo step_sl_rkc(StepContext& ctx, DistState& f, FieldState& e, double h, bool estimate) {
  const double t0 = f.time;
  const double nu = ctx.scenario().nu;
  advect_x(f, 0.5 * h, ctx.plan());
  FieldState mid = poisson_field(f, ctx.plan());
  SubstepInfo info;
  if (nu > 0.0) {
    std::vector<double> drift(mid.values.size());
    for (std::size_t i = 0; i < drift.size(); ++i) drift[i] = mid.values[i] / nu;
    info = ctx.collide(f, drift, h, max_abs(mid.values), estimate);
  } else {
    advect_v_sl(f, mid.values, h);
  }
  advect_x(f, 0.5 * h, ctx.plan());
  f.time = t0 + h;
  e = poisson_field(f, ctx.plan());
  return info;
}

SubstepInfo step_sl_rk2_rkc(StepContext& ctx, DistState& f, FieldState& e, double h, bool estimate) {
  const double t0 = f.time;
  advect_x(f, 0.5 * h, ctx.plan());
  // Fixed-step runs sub-cycle the velocity stage so that |E| h / dv stays
  // below the upwind-RK2 limit; every sub-step conserves energy on its own.
  const double reach = h * max_abs(e.values) / (ctx.scenario().cfl * ctx.grid().velocity().dv());
  const int cycles = std::max(1, static_cast<int>(std::ceil(reach)));
  for (int c = 0; c < cycles; ++c) rk2_vlasov_stage(f, e, h / cycles);
  f.time = t0 + 0.5 * h;
  SubstepInfo info = ctx.collide(f, {}, h, 0.0, estimate);
  advect_x(f, 0.5 * h, ctx.plan());
  f.time = t0 + h;
  e.time = f.time;
  return info;
}

SubstepInfo step_strang_2dv(StepContext& ctx, DistState& f, FieldState& e, double h, bool estimate) {
  const double t0 = f.time;
  advect_x(f, 0.5 * h, ctx.plan());
  const FieldState mid = poisson_field(f, ctx.plan());
  advect_v_sl(f, mid.values, 0.5 * h);
  SubstepInfo info = ctx.collide(f, {}, h, 0.0, estimate);
  advect_v_sl(f, mid.values, 0.5 * h);
  advect_x(f, 0.5 * h, ctx.plan());
  f.time = t0 + h;
  e = poisson_field(f, ctx.plan());
  return info;
}

namespace {

using Clock = std::chrono::steady_clock;

class Emitter {
 public:
  Emitter(RunResult& res, const RunOptions& opt, int cadence) : res_(res), opt_(opt), cadence_(cadence) {}

  void emit(const DistState& f, const FieldState& e, double dt, int stages, std::int64_t nrhs) {
    DiagRow row = diagnose(f, e.values, res_.m_ref);
    row.dt = dt;
    row.stages = stages;
    row.nrhs = nrhs;
    res_.series.rows.push_back(row);
    if (opt_.on_row) opt_.on_row(row);
    since_ = 0;
  }

  void accepted(const DistState& f, const FieldState& e, double dt, int stages, std::int64_t nrhs) {
    last_dt_ = dt;
    last_stages_ = stages;
    last_nrhs_ = nrhs;
    if (opt_.on_step) opt_.on_step(f, e);
    if (++since_ >= cadence_) emit(f, e, dt, stages, nrhs);
  }

  void finish(const DistState& f, const FieldState& e) {
    if (since_ > 0) emit(f, e, last_dt_, last_stages_, last_nrhs_);
  }

 private:
  RunResult& res_;
  const RunOptions& opt_;
  int cadence_;
  int since_ = 0;
  double last_dt_ = 0.0;
  int last_stages_ = 0;
  std::int64_t last_nrhs_ = 0;
};

void check_state(const DistState& f) {
  if (!all_finite(f.values)) {
    raise(ErrorKind::NonFiniteState, "distribution became non-finite at t = " + std::to_string(f.time));
  }
}

void run_homogeneous(const Scenario& sc, RunResult& res, Emitter& em) {
  DistState& f = res.state;
  const VelocityGrid& vg = f.grid.velocity();
  const Rhs rhs = [&](double, std::span<const double> y, std::span<double> out) {
    CollisionWorkspace ws;
    collision_apply(y, vg, sc.order, out, 0.0, ws);
    for (double& x : out) x *= sc.nu;
  };
  AdvanceOptions opt;
  opt.method = sc.integrator;
  opt.eta = sc.eta;
  opt.fixed_stages = sc.stages;
  opt.lambda_max = collision_bound(vg, sc.nu, sc.order, staggered_moments(f.values, vg).T, 0.0);
  const double t0 = f.time;
  std::int64_t nrhs = 0;
  if (sc.adaptive) {
    ControllerConfig cfg;
    cfg.tol = sc.tol;
    cfg.dt0 = sc.dt0;
    if (sc.dt_max > 0.0) cfg.dt_max = sc.dt_max;
    StepController ctl(cfg);
    opt.on_accept = [&](const StepRecord& rec, std::span<const double> y) {
      std::copy(y.begin(), y.end(), f.values.begin());
      f.time = rec.t;
      check_state(f);
      em.accepted(f, res.field, rec.dt, rec.stages, ctl.rhs_evals());
    };
    std::vector<double> y = f.values;
    res.records = adaptive_advance(ctl, y, t0, sc.t_end, rhs, opt);
    res.accepted = ctl.accepted();
    res.rejected = ctl.rejected();
    res.rhs_evals = ctl.rhs_evals();
  } else {
    const auto start = Clock::now();
    auto last = start;
    opt.on_accept = [&](const StepRecord& rec, std::span<const double> y) {
      std::copy(y.begin(), y.end(), f.values.begin());
      f.time = rec.t;
      check_state(f);
      nrhs += rec.stages;
      StepRecord r = rec;
      r.rhs_evals = rec.stages;
      const auto now = Clock::now();
      r.wall = std::chrono::duration<double>(now - last).count();
      last = now;
      res.records.push_back(r);
      em.accepted(f, res.field, rec.dt, rec.stages, nrhs);
    };
    std::vector<double> y = f.values;
    if (sc.t_end > t0) res.rhs_evals = fixed_advance(y, t0, sc.t_end, sc.dt, rhs, opt);
    res.accepted = static_cast<std::int64_t>(res.records.size());
  }
}

void run_split(const Scenario& sc, RunResult& res, Emitter& em) {
  DistState& f = res.state;
  FieldState& e = res.field;
  StepContext ctx(sc);
  auto step = [&](double h, bool estimate) {
    switch (sc.splitting) {
      case Splitting::SlRkc: return step_sl_rkc(ctx, f, e, h, estimate);
      case Splitting::SlRk2Rkc: return step_sl_rk2_rkc(ctx, f, e, h, estimate);
      case Splitting::Strang2dv: return step_strang_2dv(ctx, f, e, h, estimate);
      case Splitting::Homogeneous: break;
    }
    raise(ErrorKind::InvalidConfig, "split driver called for a homogeneous scenario");
  };
  // Collisionless runs have no estimator; they use the fixed step.
  const bool adaptive = sc.adaptive && sc.nu > 0.0;
  ControllerConfig cfg;
  cfg.tol = sc.tol;
  cfg.dt0 = sc.dt0;
  if (sc.dt_max > 0.0) cfg.dt_max = sc.dt_max;
  StepController ctl(cfg, sc.integrator == Method::Rk2 ? 0.5 : 1.0 / 3.0);
  const double slack = 1e-12 * std::max(1.0, std::abs(sc.t_end));
  const double dv = f.grid.velocity().dv();

  while (f.time < sc.t_end - slack) {
    const auto start = Clock::now();
    double h;
    if (adaptive) {
      h = ctl.dt();
      if (sc.splitting == Splitting::SlRk2Rkc) {
        const double emax = max_abs(e.values);
        if (emax > 0.0) h = std::min(h, sc.cfl * dv / emax);
      }
    } else {
      h = sc.dt;
    }
    h = std::min(h, sc.t_end - f.time);
    StepRecord rec;
    rec.dt = h;
    if (adaptive) {
      const DistState f_saved = f;
      const FieldState e_saved = e;
      const SubstepInfo info = step(h, true);
      rec.stages = info.stages;
      rec.err = info.err;
      rec.rhs_evals = info.evals;
      ctl.add_evals(info.evals);
      rec.accepted = ctl.update(info.err, h);
      if (!rec.accepted) {
        f = f_saved;
        e = e_saved;
      }
    } else {
      const SubstepInfo info = step(h, false);
      rec.stages = info.stages;
      rec.rhs_evals = info.evals;
      rec.accepted = true;
      ++res.accepted;
      res.rhs_evals += info.evals;
    }
    rec.t = f.time;
    rec.wall = std::chrono::duration<double>(Clock::now() - start).count();
    res.records.push_back(rec);
    if (rec.accepted) {
      check_state(f);
      em.accepted(f, e, h, rec.stages, adaptive ? ctl.rhs_evals() : res.rhs_evals);
    }
  }
  if (adaptive) {
    res.accepted = ctl.accepted();
    res.rejected = ctl.rejected();
    res.rhs_evals = ctl.rhs_evals();
  }
}

}  // namespace

RunResult run(const Scenario& sc, const RunOptions& opt) {
  sc.validate();
  const auto start = Clock::now();
  const PhaseGrid grid = sc.grid();
  RunResult res{{}, {}, DistState(grid), {}, {}, 0, 0, 0, 0.0, 0.0};
  res.series.velocity_dims = grid.velocity().dims();
  bool have_field = false;
  if (opt.initial) {
    if (!(opt.initial->f.grid == grid)) raise(ErrorKind::InvalidConfig, "initial snapshot grid differs from scenario");
    res.state = opt.initial->f;
    if (opt.initial->e && sc.splitting == Splitting::SlRk2Rkc) {
      res.field = *opt.initial->e;
      have_field = true;
    }
  } else {
    res.state = sample_on_grid(grid, sc.initializer());
  }
  if (!grid.homogeneous() && !have_field) {
    const SpectralPlan plan(grid);
    res.field = poisson_field(res.state, plan);
  }
  res.m_ref = reference_maxwellian(res.state);

  Emitter em(res, opt, sc.cadence);
  em.emit(res.state, res.field, 0.0, 0, 0);
  // Losing positive density in a column mid-run means the stepping went unstable.
  try {
    if (grid.homogeneous()) {
      run_homogeneous(sc, res, em);
    } else {
      run_split(sc, res, em);
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::DegenerateDensity) throw;
    raise(ErrorKind::NonFiniteState,
          "solution blew up after t = " + std::to_string(res.state.time) + " (" + err.what() + ")");
  }
  em.finish(res.state, res.field);
  for (const StepRecord& r : res.records) {
    if (r.accepted) res.max_dt = std::max(res.max_dt, r.dt);
  }
  res.wall = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

}  // namespace vfp
