#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "vfp/error.hpp"
#include "vfp/rkc.hpp"

namespace vfp {

double error_norm(std::span<const double> est, std::span<const double> y0, double tol) {
  if (est.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double r = est[i] / (tol * (1.0 + std::abs(y0[i])));
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(est.size()));
}

void rkc_error_estimate(std::span<const double> y0, std::span<const double> y1, std::span<const double> q0,
                        std::span<const double> q1, double dt, std::span<double> est) {
  for (std::size_t i = 0; i < y0.size(); ++i) {
    est[i] = (12.0 * (y0[i] - y1[i]) + 6.0 * dt * (q0[i] + q1[i])) / 15.0;
  }
}

StepController::StepController(ControllerConfig cfg, double order_exponent)
    : cfg_(cfg), exponent_(order_exponent), dt_(cfg.dt0) {
  if (!(cfg_.tol > 0.0)) raise(ErrorKind::InvalidConfig, "tolerance must be positive");
  if (!(cfg_.dt0 > 0.0)) raise(ErrorKind::InvalidConfig, "initial step must be positive");
  dt_ = std::min(dt_, cfg_.dt_max);
}

bool StepController::update(double err, double h) {
  const bool ok = std::isfinite(err) && err <= 1.0;
  if (ok) {
    ++accepted_;
  } else {
    ++rejected_;
  }
  double factor;
  if (!std::isfinite(err)) {
    factor = cfg_.min_factor;
  } else if (err == 0.0) {
    factor = cfg_.max_factor;
  } else {
    factor = std::clamp(cfg_.safety * std::pow(err, -exponent_), cfg_.min_factor, cfg_.max_factor);
  }
  double next = std::min(h * factor, cfg_.dt_max);
  if (next < cfg_.dt_min) {
    if (++underflow_ >= cfg_.max_underflow) {
      raise(ErrorKind::StepUnderflow, "step size fell below " + std::to_string(cfg_.dt_min) + " " +
                                          std::to_string(underflow_) + " consecutive times");
    }
    next = cfg_.dt_min;
  } else {
    underflow_ = 0;
  }
  dt_ = next;
  return ok;
}

std::vector<StepRecord> adaptive_advance(StepController& ctl, std::vector<double>& y, double t0, double t_end,
                                         const Rhs& rhs, const AdvanceOptions& opt) {
  std::vector<StepRecord> out;
  if (opt.method == Method::Rk2) ctl.set_exponent(0.5);
  const std::size_t n = y.size();
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end));
  double t = t0;
  std::vector<double> y1(n), q0(n), q1(n), est(n), k1, k2;
  bool have_q0 = false;
  RkcWorkspace ws;
  CoeffCache cache(opt.method == Method::Rk2 ? Method::Rkc2 : opt.method, opt.eta);
  const double c_eta = opt.method == Method::Rk2 ? 1.0 : asymptotic_c_eta(opt.method, opt.eta);

  while (t < t_end - slack) {
    const auto start = std::chrono::steady_clock::now();
    const double h = std::min(ctl.dt(), t_end - t);
    StepRecord rec;
    rec.dt = h;
    int evals = 0;
    if (opt.method == Method::Rk2) {
      evals = rk2_step(y, t, h, rhs, y1, k1, k2);
      for (std::size_t i = 0; i < n; ++i) est[i] = h * (k2[i] - k1[i]);
      rec.stages = 2;
    } else {
      const int s = opt.fixed_stages > 0 ? opt.fixed_stages : stage_select(h, opt.lambda_max, c_eta);
      rec.stages = s;
      if (!have_q0) {
        rhs(t, y, q0);
        ++evals;
        have_q0 = true;
      }
      evals += rkc_step(cache.get(s), y, t, h, rhs, y1, ws, q0);
      rhs(t + h, y1, q1);
      ++evals;
      rkc_error_estimate(y, y1, q0, q1, h, est);
    }
    rec.err = error_norm(est, y, ctl.config().tol);
    rec.rhs_evals = evals;
    ctl.add_evals(evals);
    rec.accepted = ctl.update(rec.err, h);
    if (rec.accepted) {
      y.swap(y1);
      t += h;
      if (opt.method != Method::Rk2) q0.swap(q1);
    }
    rec.t = t;
    rec.wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(rec);
    if (rec.accepted && opt.on_accept) opt.on_accept(rec, y);
  }
  return out;
}

std::int64_t fixed_advance(std::vector<double>& y, double t0, double t_end, double dt, const Rhs& rhs,
                           const AdvanceOptions& opt) {
  if (!(dt > 0.0)) raise(ErrorKind::InvalidConfig, "time step must be positive");
  const std::size_t n = y.size();
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end));
  std::vector<double> y1(n), k1, k2;
  RkcWorkspace ws;
  CoeffCache cache(opt.method == Method::Rk2 ? Method::Rkc2 : opt.method, opt.eta);
  const double c_eta = opt.method == Method::Rk2 ? 1.0 : asymptotic_c_eta(opt.method, opt.eta);
  std::int64_t evals = 0;
  double t = t0;
  while (t < t_end - slack) {
    const double h = std::min(dt, t_end - t);
    StepRecord rec;
    rec.dt = h;
    if (opt.method == Method::Rk2) {
      evals += rk2_step(y, t, h, rhs, y1, k1, k2);
      rec.stages = 2;
    } else {
      const int s = opt.fixed_stages > 0 ? opt.fixed_stages : stage_select(h, opt.lambda_max, c_eta);
      rec.stages = s;
      evals += rkc_step(cache.get(s), y, t, h, rhs, y1, ws);
    }
    y.swap(y1);
    t += h;
    rec.t = t;
    rec.accepted = true;
    if (opt.on_accept) opt.on_accept(rec, y);
  }
  return evals;
}

}  // namespace vfp
