#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vfp/mesh.hpp"

namespace vfp {

enum class Method { Rkc1, Rkc2, Rk2 };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view name);
double default_eta(Method m) noexcept;

/// T_s(x), T_s'(x), T_s''(x) by the three-term recurrences.
template <class X>
struct ChebValues {
  X t;
  X dt;
  X d2t;
};

template <class X>
ChebValues<X> cheb_eval(int s, X x) {
  X t0 = X(1), t1 = x;
  X d0 = X(0), d1 = X(1);
  X e0 = X(0), e1 = X(0);
  if (s == 0) return {t0, d0, e0};
  for (int j = 2; j <= s; ++j) {
    const X t2 = X(2) * x * t1 - t0;
    const X d2 = X(2) * t1 + X(2) * x * d1 - d0;
    const X e2 = X(4) * d1 + X(2) * x * e1 - e0;
    t0 = t1;
    t1 = t2;
    d0 = d1;
    d1 = d2;
    e0 = e1;
    e1 = e2;
  }
  return {t1, d1, e1};
}

/// Per-(method, s, eta) coefficient table. Arrays are indexed by stage l = 0..s;
/// unused leading entries are zero.
struct RkcCoeffs {
  Method method = Method::Rkc2;
  int s = 2;
  double eta = 0.0;
  double w0 = 1.0;
  double w1 = 0.0;  // T_s(w0) / T_s'(w0)
  double w2 = 0.0;  // T_s'(w0) / T_s''(w0), RKC2 only
  std::vector<double> mu;
  std::vector<double> nu;
  std::vector<double> kappa;
  std::vector<double> a;  // RKC2 only
  std::vector<double> b;  // RKC2 only
  std::vector<double> c;  // stage abscissae, c[s] == 1
  /// Length of the real stability interval, (1 + w0)/w1 or (1 + w0)/w2.
  double stability_length = 0.0;
  /// stability_length / s^2.
  double c_eta = 0.0;
};

RkcCoeffs rkc1_coeffs(int s, double eta = 0.05);
RkcCoeffs rkc2_coeffs(int s, double eta = 0.15);
RkcCoeffs make_coeffs(Method m, int s, double eta);

/// C_eta used for stage selection: beta/s^2 of the method evaluated at a large
/// reference stage count, where it has settled to its asymptotic value.
double asymptotic_c_eta(Method m, double eta);

/// R(z) of the method with the given table.
std::complex<double> stability_function(const RkcCoeffs& c, std::complex<double> z);
double stability_function(const RkcCoeffs& c, double z);
double stability_function(Method m, int s, double eta, double z);

/// rhs(t, y, out): out = F(t, y).
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> out)>;

/// Caller-owned stage storage, resized on demand.
struct RkcWorkspace {
  std::vector<double> k_prev2;
  std::vector<double> k_prev;
  std::vector<double> k_cur;
  std::vector<double> q0;
  std::vector<double> q;
};

/// One RKC step y0 -> y1 over [t, t + dt]. When `q0` is non-empty it is taken
/// as F(t, y0) and not recomputed. Returns the number of rhs evaluations.
/// Throws NonFiniteState when a stage is not finite.
int rkc_step(const RkcCoeffs& c, std::span<const double> y0, double t, double dt, const Rhs& rhs,
             std::span<double> y1, RkcWorkspace& ws, std::span<const double> q0 = {});

/// Explicit midpoint step. On return `k1`, `k2` hold the two stage slopes
/// (for the Euler-difference estimate dt*(k2 - k1)). Returns 2.
int rk2_step(std::span<const double> y0, double t, double dt, const Rhs& rhs, std::span<double> y1,
             std::vector<double>& k1, std::vector<double>& k2);

/// 1.05 * (d * 4 nu T / dv^2 + advection_scale / dv); zero when nu == 0 and
/// there is no advection.
double spectral_bound(const VelocityGrid& grid, double nu, double T, double advection_scale = 0.0);

/// s = round(sqrt((dt*lambda + 1.5)/C) + 0.5), at least 2.
int stage_select(double dt, double lambda_max, double c_eta);

/// Memoized coefficient tables keyed by stage count.
class CoeffCache {
 public:
  CoeffCache(Method m, double eta) : method_(m), eta_(eta) {}
  const RkcCoeffs& get(int s);
  Method method() const noexcept { return method_; }
  double eta() const noexcept { return eta_; }

 private:
  Method method_;
  double eta_;
  std::map<int, RkcCoeffs> cache_;
};

struct ControllerConfig {
  double tol = 1e-6;
  double dt0 = 1e-3;
  double dt_min = 1e-10;
  double dt_max = std::numeric_limits<double>::infinity();
  double safety = 0.8;
  double min_factor = 0.1;
  double max_factor = 10.0;
  int max_underflow = 10;
};

struct StepRecord {
  double t = 0.0;  // time at the end of the step when accepted, start time otherwise
  double dt = 0.0;
  int stages = 0;
  double err = 0.0;
  bool accepted = false;
  std::int64_t rhs_evals = 0;  // evaluations spent on this attempt
  double wall = 0.0;           // seconds
};

/// RMS over nodes of est / (tol * (1 + |y0|)).
double error_norm(std::span<const double> est, std::span<const double> y0, double tol);

/// (1/15)[12(y0 - y1) + 6 dt (q0 + q1)], written into `est`.
void rkc_error_estimate(std::span<const double> y0, std::span<const double> y1, std::span<const double> q0,
                        std::span<const double> q1, double dt, std::span<double> est);

/// Step-size bookkeeping shared by the homogeneous loop and the split drivers.
class StepController {
 public:
  explicit StepController(ControllerConfig cfg, double order_exponent = 1.0 / 3.0);

  double dt() const noexcept { return dt_; }
  const ControllerConfig& config() const noexcept { return cfg_; }
  std::int64_t accepted() const noexcept { return accepted_; }
  std::int64_t rejected() const noexcept { return rejected_; }
  std::int64_t rhs_evals() const noexcept { return rhs_evals_; }
  void add_evals(std::int64_t n) noexcept { rhs_evals_ += n; }

  /// Records the outcome of an attempt of size h with error measure err and
  /// returns true when it is accepted. The next proposal is h scaled by the
  /// clamped factor. Throws StepUnderflow after too many consecutive proposals
  /// below dt_min.
  bool update(double err, double h);
  void set_exponent(double e) noexcept { exponent_ = e; }

 private:
  ControllerConfig cfg_;
  double exponent_;
  double dt_;
  std::int64_t accepted_ = 0;
  std::int64_t rejected_ = 0;
  std::int64_t rhs_evals_ = 0;
  int underflow_ = 0;
};

struct AdvanceOptions {
  Method method = Method::Rkc2;
  double eta = 0.15;
  /// lambda_max for stage selection; ignored for RK2.
  double lambda_max = 0.0;
  /// Fixed stage count (0 = select from lambda_max each step).
  int fixed_stages = 0;
  /// Called after every accepted step with the new state.
  std::function<void(const StepRecord&, std::span<const double>)> on_accept;
};

/// Adaptive integration of y' = rhs(t, y) from t0 to t_end. y is updated in
/// place. Returns every attempt, accepted or not.
std::vector<StepRecord> adaptive_advance(StepController& ctl, std::vector<double>& y, double t0, double t_end,
                                         const Rhs& rhs, const AdvanceOptions& opt);

/// Fixed-step integration with s chosen per step by stage_select (or fixed).
/// Returns the number of rhs evaluations.
std::int64_t fixed_advance(std::vector<double>& y, double t0, double t_end, double dt, const Rhs& rhs,
                           const AdvanceOptions& opt);

}  // namespace vfp
