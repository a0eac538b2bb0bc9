#include <cmath>
#include <string>

#include "vfp/error.hpp"
#include "vfp/rkc.hpp"

namespace vfp {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Rkc1: return "rkc1";
    case Method::Rkc2: return "rkc2";
    case Method::Rk2: return "rk2";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "rkc1") return Method::Rkc1;
  if (name == "rkc2" || name == "rkc") return Method::Rkc2;
  if (name == "rk2") return Method::Rk2;
  raise(ErrorKind::InvalidConfig, "unknown integrator '" + std::string(name) + "'");
}

double default_eta(Method m) noexcept { return m == Method::Rkc1 ? 0.05 : 0.15; }

namespace {

void check_stages(int s) {
  if (s < 2) raise(ErrorKind::BadStageCount, "stage count must be at least 2, got " + std::to_string(s));
}

void check_eta(double eta) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) raise(ErrorKind::InvalidConfig, "damping must be finite and >= 0");
}

}  // namespace

RkcCoeffs rkc1_coeffs(int s, double eta) {
  check_stages(s);
  check_eta(eta);
  RkcCoeffs c;
  c.method = Method::Rkc1;
  c.s = s;
  c.eta = eta;
  c.w0 = 1.0 + eta / (static_cast<double>(s) * s);
  const auto top = cheb_eval(s, c.w0);
  c.w1 = top.t / top.dt;
  const std::size_t n = static_cast<std::size_t>(s) + 1;
  c.mu.assign(n, 0.0);
  c.nu.assign(n, 0.0);
  c.kappa.assign(n, 0.0);
  c.c.assign(n, 0.0);
  std::vector<double> t(n);
  std::vector<double> dt(n);
  for (int l = 0; l <= s; ++l) {
    const auto v = cheb_eval(l, c.w0);
    t[l] = v.t;
    dt[l] = v.dt;
  }
  c.mu[1] = c.w1 / c.w0;
  for (int l = 2; l <= s; ++l) {
    c.mu[l] = 2.0 * c.w1 * t[l - 1] / t[l];
    c.nu[l] = 2.0 * c.w0 * t[l - 1] / t[l];
    c.kappa[l] = 1.0 - c.nu[l];
  }
  for (int l = 1; l <= s; ++l) c.c[l] = c.w1 * dt[l] / t[l];
  c.stability_length = (1.0 + c.w0) / c.w1;
  c.c_eta = c.stability_length / (static_cast<double>(s) * s);
  return c;
}

RkcCoeffs rkc2_coeffs(int s, double eta) {
  check_stages(s);
  check_eta(eta);
  RkcCoeffs c;
  c.method = Method::Rkc2;
  c.s = s;
  c.eta = eta;
  c.w0 = 1.0 + eta / (static_cast<double>(s) * s);
  const auto top = cheb_eval(s, c.w0);
  c.w1 = top.t / top.dt;
  c.w2 = top.dt / top.d2t;
  const std::size_t n = static_cast<std::size_t>(s) + 1;
  c.mu.assign(n, 0.0);
  c.nu.assign(n, 0.0);
  c.kappa.assign(n, 0.0);
  c.a.assign(n, 0.0);
  c.b.assign(n, 0.0);
  c.c.assign(n, 0.0);
  std::vector<double> t(n);
  std::vector<double> dt(n);
  for (int l = 0; l <= s; ++l) {
    const auto v = cheb_eval(l, c.w0);
    t[l] = v.t;
    dt[l] = v.dt;
    if (l >= 2) c.b[l] = v.d2t / (v.dt * v.dt);
  }
  c.b[0] = c.b[2];
  c.b[1] = c.b[2];
  for (int l = 0; l <= s; ++l) c.a[l] = 1.0 - c.b[l] * t[l];
  c.mu[1] = c.b[1] * c.w2;
  for (int l = 2; l <= s; ++l) {
    c.mu[l] = 2.0 * c.b[l] * c.w2 / c.b[l - 1];
    c.nu[l] = 2.0 * c.b[l] * c.w0 / c.b[l - 1];
    c.kappa[l] = -c.b[l] / c.b[l - 2];
  }
  for (int l = 1; l <= s; ++l) c.c[l] = c.b[l] * c.w2 * dt[l];
  c.stability_length = (1.0 + c.w0) / c.w2;
  c.c_eta = c.stability_length / (static_cast<double>(s) * s);
  return c;
}

RkcCoeffs make_coeffs(Method m, int s, double eta) {
  switch (m) {
    case Method::Rkc1: return rkc1_coeffs(s, eta);
    case Method::Rkc2: return rkc2_coeffs(s, eta);
    case Method::Rk2: break;
  }
  raise(ErrorKind::InvalidConfig, "rk2 has no Chebyshev coefficients");
}

double asymptotic_c_eta(Method m, double eta) { return make_coeffs(m, 100, eta).c_eta; }

std::complex<double> stability_function(const RkcCoeffs& c, std::complex<double> z) {
  if (c.method == Method::Rkc1) {
    const auto num = cheb_eval(c.s, std::complex<double>(c.w0) + c.w1 * z);
    return num.t / cheb_eval(c.s, c.w0).t;
  }
  const auto v = cheb_eval(c.s, std::complex<double>(c.w0) + c.w2 * z);
  return c.a[static_cast<std::size_t>(c.s)] + c.b[static_cast<std::size_t>(c.s)] * v.t;
}

double stability_function(const RkcCoeffs& c, double z) {
  return stability_function(c, std::complex<double>(z, 0.0)).real();
}

double stability_function(Method m, int s, double eta, double z) {
  if (m == Method::Rk2) return 1.0 + z + 0.5 * z * z;
  return stability_function(make_coeffs(m, s, eta), z);
}

}  // namespace vfp
