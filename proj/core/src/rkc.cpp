#include <algorithm>
#include <cmath>
#include <string>

#include "vfp/error.hpp"
#include "vfp/rkc.hpp"

namespace vfp {

namespace {

void check_finite(std::span<const double> y, int stage, double t) {
  if (!all_finite(y)) {
    raise(ErrorKind::NonFiniteState,
          "stage " + std::to_string(stage) + " became non-finite at t = " + std::to_string(t));
  }
}

}  // namespace

int rkc_step(const RkcCoeffs& c, std::span<const double> y0, double t, double dt, const Rhs& rhs,
             std::span<double> y1, RkcWorkspace& ws, std::span<const double> q0) {
  if (c.s < 2) raise(ErrorKind::BadStageCount, "stage count must be at least 2");
  const std::size_t n = y0.size();
  int evals = 0;
  if (q0.empty()) {
    ws.q0.resize(n);
    rhs(t, y0, ws.q0);
    ++evals;
    q0 = ws.q0;
  }
  ws.k_prev2.assign(y0.begin(), y0.end());
  ws.k_prev.resize(n);
  ws.k_cur.resize(n);
  ws.q.resize(n);
  const bool second = c.method == Method::Rkc2;

  const double m1 = c.mu[1] * dt;
  for (std::size_t i = 0; i < n; ++i) ws.k_prev[i] = y0[i] + m1 * q0[i];
  check_finite(ws.k_prev, 1, t);

  for (int l = 2; l <= c.s; ++l) {
    const auto L = static_cast<std::size_t>(l);
    rhs(t + c.c[L - 1] * dt, ws.k_prev, ws.q);
    ++evals;
    const double mu = c.mu[L] * dt;
    const double nu = c.nu[L];
    const double ka = c.kappa[L];
    if (second) {
      const double corr = c.a[L - 1] * mu;
      for (std::size_t i = 0; i < n; ++i) {
        const double base = y0[i];
        ws.k_cur[i] = base + ka * (ws.k_prev2[i] - base) + nu * (ws.k_prev[i] - base) + mu * ws.q[i] - corr * q0[i];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        ws.k_cur[i] = ws.k_prev2[i] + nu * (ws.k_prev[i] - ws.k_prev2[i]) + mu * ws.q[i];
      }
    }
    check_finite(ws.k_cur, l, t);
    std::swap(ws.k_prev2, ws.k_prev);
    std::swap(ws.k_prev, ws.k_cur);
  }
  std::copy(ws.k_prev.begin(), ws.k_prev.end(), y1.begin());
  return evals;
}

int rk2_step(std::span<const double> y0, double t, double dt, const Rhs& rhs, std::span<double> y1,
             std::vector<double>& k1, std::vector<double>& k2) {
  const std::size_t n = y0.size();
  k1.resize(n);
  k2.resize(n);
  rhs(t, y0, k1);
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = y0[i] + 0.5 * dt * k1[i];
  rhs(t + 0.5 * dt, mid, k2);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + dt * k2[i];
  check_finite(y1, 2, t);
  return 2;
}

double spectral_bound(const VelocityGrid& grid, double nu, double T, double advection_scale) {
  if (nu < 0.0 || !std::isfinite(nu)) raise(ErrorKind::InvalidConfig, "collision rate must be >= 0");
  if (nu == 0.0 && advection_scale == 0.0) return 0.0;
  if (nu > 0.0 && !(T > 0.0)) raise(ErrorKind::DegenerateDensity, "temperature must be positive");
  const double dv = grid.dv();
  const double diffusion = nu > 0.0 ? grid.dims() * 4.0 * nu * T / (dv * dv) : 0.0;
  return 1.05 * (diffusion + std::abs(advection_scale) / dv);
}

int stage_select(double dt, double lambda_max, double c_eta) {
  if (!(c_eta > 0.0)) raise(ErrorKind::InvalidConfig, "C_eta must be positive");
  const double x = std::max(0.0, dt * lambda_max);
  const double s = std::round(std::sqrt((x + 1.5) / c_eta) + 0.5);
  return static_cast<int>(std::clamp(s, 2.0, 5000.0));
}

const RkcCoeffs& CoeffCache::get(int s) {
  auto it = cache_.find(s);
  if (it == cache_.end()) it = cache_.emplace(s, make_coeffs(method_, s, eta_)).first;
  return it->second;
}

}  // namespace vfp
