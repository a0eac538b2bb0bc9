#include "vfp/transport.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "vfp/collision.hpp"
#include "vfp/error.hpp"
#include "vfp/parallel.hpp"

namespace vfp {

struct SpectralPlan::Impl {
  std::size_t nx = 0;
  std::size_t m = 0;
  double* real_many = nullptr;
  fftw_complex* cplx_many = nullptr;
  double* real_one = nullptr;
  fftw_complex* cplx_one = nullptr;
  fftw_plan fwd_many = nullptr;
  fftw_plan bwd_many = nullptr;
  fftw_plan fwd_one = nullptr;
  fftw_plan bwd_one = nullptr;

  ~Impl() {
    for (fftw_plan p : {fwd_many, bwd_many, fwd_one, bwd_one}) {
      if (p) fftw_destroy_plan(p);
    }
    fftw_free(real_many);
    fftw_free(cplx_many);
    fftw_free(real_one);
    fftw_free(cplx_one);
  }
};

SpectralPlan::SpectralPlan(const PhaseGrid& grid) : grid_(grid), modes_(0), impl_(std::make_unique<Impl>()) {
  if (grid.homogeneous()) raise(ErrorKind::BadCount, "spectral plan needs a spatial axis");
  Impl& p = *impl_;
  p.nx = grid.space().size();
  p.m = grid.column_size();
  modes_ = p.nx / 2 + 1;
  p.real_many = fftw_alloc_real(p.nx * p.m);
  p.cplx_many = fftw_alloc_complex(modes_ * p.m);
  p.real_one = fftw_alloc_real(p.nx);
  p.cplx_one = fftw_alloc_complex(modes_);
  const int n[1] = {static_cast<int>(p.nx)};
  const int howmany = static_cast<int>(p.m);
  const int stride = static_cast<int>(p.m);
  p.fwd_many = fftw_plan_many_dft_r2c(1, n, howmany, p.real_many, nullptr, stride, 1, p.cplx_many, nullptr, stride, 1,
                                      FFTW_ESTIMATE);
  p.bwd_many = fftw_plan_many_dft_c2r(1, n, howmany, p.cplx_many, nullptr, stride, 1, p.real_many, nullptr, stride, 1,
                                      FFTW_ESTIMATE);
  p.fwd_one = fftw_plan_dft_r2c_1d(n[0], p.real_one, p.cplx_one, FFTW_ESTIMATE);
  p.bwd_one = fftw_plan_dft_c2r_1d(n[0], p.cplx_one, p.real_one, FFTW_ESTIMATE);
  if (!p.fwd_many || !p.bwd_many || !p.fwd_one || !p.bwd_one) {
    raise(ErrorKind::InvalidConfig, "FFTW could not create the transform plans");
  }
}

SpectralPlan::~SpectralPlan() = default;

double SpectralPlan::wavenumber(std::size_t m) const noexcept {
  return grid_.space().fundamental_wavenumber() * static_cast<double>(m);
}

void SpectralPlan::forward(std::span<const double> field, std::span<std::complex<double>> out) const {
  Impl& p = *impl_;
  std::memcpy(p.real_one, field.data(), p.nx * sizeof(double));
  fftw_execute(p.fwd_one);
  for (std::size_t k = 0; k < modes_; ++k) out[k] = {p.cplx_one[k][0], p.cplx_one[k][1]};
}

void SpectralPlan::backward(std::span<const std::complex<double>> in, std::span<double> field) const {
  Impl& p = *impl_;
  for (std::size_t k = 0; k < modes_; ++k) {
    p.cplx_one[k][0] = in[k].real();
    p.cplx_one[k][1] = in[k].imag();
  }
  fftw_execute(p.bwd_one);
  const double scale = 1.0 / static_cast<double>(p.nx);
  for (std::size_t i = 0; i < p.nx; ++i) field[i] = p.real_one[i] * scale;
}

void SpectralPlan::forward_all(std::span<const double> f, std::vector<std::complex<double>>& out) const {
  Impl& p = *impl_;
  std::memcpy(p.real_many, f.data(), p.nx * p.m * sizeof(double));
  fftw_execute(p.fwd_many);
  out.resize(modes_ * p.m);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {p.cplx_many[k][0], p.cplx_many[k][1]};
}

void SpectralPlan::backward_all(const std::vector<std::complex<double>>& in, std::span<double> f) const {
  Impl& p = *impl_;
  for (std::size_t k = 0; k < in.size(); ++k) {
    p.cplx_many[k][0] = in[k].real();
    p.cplx_many[k][1] = in[k].imag();
  }
  fftw_execute(p.bwd_many);
  const double scale = 1.0 / static_cast<double>(p.nx);
  for (std::size_t k = 0; k < p.nx * p.m; ++k) f[k] = p.real_many[k] * scale;
}

namespace {

// v_x of flat velocity index j.
inline double vx_of(const VelocityGrid& vg, std::size_t j) {
  return vg.node(vg.dims() == 2 ? j / vg.axis_size() : j);
}

bool has_nyquist(std::size_t nx, std::size_t m) { return nx % 2 == 0 && m == nx / 2; }

}  // namespace

void advect_x(DistState& f, double dt, const SpectralPlan& plan) {
  if (!(f.grid == plan.grid())) raise(ErrorKind::BadCount, "state and plan grids differ");
  const VelocityGrid& vg = f.grid.velocity();
  const std::size_t nx = f.grid.space().size();
  const std::size_t m = f.grid.column_size();
  std::vector<std::complex<double>> hat;
  plan.forward_all(f.values, hat);
  for (std::size_t k = 1; k < plan.modes(); ++k) {
    const double kk = plan.wavenumber(k);
    const bool nyq = has_nyquist(nx, k);
    for (std::size_t j = 0; j < m; ++j) {
      const double phase = -kk * vx_of(vg, j) * dt;
      std::complex<double>& c = hat[k * m + j];
      if (nyq) {
        c *= std::cos(phase);
      } else {
        c *= std::complex<double>(std::cos(phase), std::sin(phase));
      }
    }
  }
  plan.backward_all(hat, f.values);
  f.time += dt;
}

std::vector<double> density(const DistState& f) {
  const double w = f.grid.velocity().cell_volume();
  std::vector<double> n(f.grid.columns());
  for (std::size_t i = 0; i < n.size(); ++i) {
    double acc = 0.0;
    for (double x : f.column(i)) acc += x;
    n[i] = w * acc;
  }
  return n;
}

std::vector<double> current(const DistState& f) {
  const VelocityGrid& vg = f.grid.velocity();
  const double w = vg.cell_volume();
  std::vector<double> out(f.grid.columns());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto col = f.column(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < col.size(); ++j) acc += vx_of(vg, j) * col[j];
    out[i] = w * acc;
  }
  return out;
}

FieldState poisson_field(const DistState& f, const SpectralPlan& plan) {
  const std::size_t nx = f.grid.space().size();
  std::vector<double> rho = density(f);
  for (double& r : rho) r -= 1.0;
  std::vector<std::complex<double>> hat(plan.modes());
  plan.forward(rho, hat);
  hat[0] = 0.0;
  for (std::size_t k = 1; k < plan.modes(); ++k) {
    if (has_nyquist(nx, k)) {
      hat[k] = 0.0;
    } else {
      hat[k] /= std::complex<double>(0.0, plan.wavenumber(k));
    }
  }
  FieldState e;
  e.values.resize(nx);
  e.time = f.time;
  plan.backward(hat, e.values);
  return e;
}

std::vector<double> spectral_dx(std::span<const double> field, const SpectralPlan& plan) {
  const std::size_t nx = field.size();
  std::vector<std::complex<double>> hat(plan.modes());
  plan.forward(field, hat);
  hat[0] = 0.0;
  for (std::size_t k = 1; k < plan.modes(); ++k) {
    hat[k] = has_nyquist(nx, k) ? std::complex<double>(0.0) : hat[k] * std::complex<double>(0.0, plan.wavenumber(k));
  }
  std::vector<double> out(nx);
  plan.backward(hat, out);
  return out;
}

FieldState ampere_update(const FieldState& e, const DistState& f_mid, double dt) {
  const std::vector<double> j = current(f_mid);
  if (j.size() != e.values.size()) raise(ErrorKind::BadCount, "field size does not match the spatial grid");
  FieldState out;
  out.values.resize(j.size());
  out.time = e.time + dt;
  for (std::size_t i = 0; i < j.size(); ++i) out.values[i] = e.values[i] - dt * j[i];
  return out;
}

void upwind_dv(const double* f, std::size_t count, std::size_t stride, double dv, double direction, double* out) {
  if (count < 7) raise(ErrorKind::StencilTooSmall, "upwind derivative needs at least 7 velocity nodes");
  const std::size_t n = count - 1;
  const double inv = 1.0 / (6.0 * dv);
  auto F = [&](std::size_t j) { return f[j * stride]; };
  auto low = [&](std::size_t j) { return (F(j - 2) - 6.0 * F(j - 1) + 3.0 * F(j) + 2.0 * F(j + 1)) * inv; };
  auto high = [&](std::size_t j) { return (-2.0 * F(j - 1) - 3.0 * F(j) + 6.0 * F(j + 1) - F(j + 2)) * inv; };
  // Outflow edge: one-sided cubic. Inflow edge: same upwind stencil with f = 0 beyond v_max;
  // the downwind one-sided cubic there is strongly non-normal and blows up long collisionless runs.
  if (direction >= 0.0) {
    out[0] = (3.0 * F(0) + 2.0 * F(1)) * inv;
    out[stride] = (-6.0 * F(0) + 3.0 * F(1) + 2.0 * F(2)) * inv;
    for (std::size_t j = 2; j < n; ++j) out[j * stride] = low(j);
    out[n * stride] = (11.0 * F(n) - 18.0 * F(n - 1) + 9.0 * F(n - 2) - 2.0 * F(n - 3)) * inv;
  } else {
    out[0] = (-11.0 * F(0) + 18.0 * F(1) - 9.0 * F(2) + 2.0 * F(3)) * inv;
    for (std::size_t j = 1; j + 1 < n; ++j) out[j * stride] = high(j);
    out[(n - 1) * stride] = (-2.0 * F(n - 2) - 3.0 * F(n - 1) + 6.0 * F(n)) * inv;
    out[n * stride] = (-3.0 * F(n) - 2.0 * F(n - 1)) * inv;
  }
}

std::vector<double> upwind_dv(std::span<const double> f, double dv, double direction) {
  std::vector<double> out(f.size());
  upwind_dv(f.data(), f.size(), 1, dv, direction, out.data());
  return out;
}

namespace {

// out = -E_i D_v f in every column (derivative along v_x).
void vlasov_force(const DistState& f, std::span<const double> e, std::span<double> out) {
  const VelocityGrid& vg = f.grid.velocity();
  const std::size_t na = vg.axis_size();
  const std::size_t m = f.grid.column_size();
  const std::size_t lines = vg.dims() == 2 ? na : 1;
  const std::size_t stride = vg.dims() == 2 ? na : 1;
  parallel_for(f.grid.columns(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* col = f.values.data() + i * m;
      double* o = out.data() + i * m;
      for (std::size_t l = 0; l < lines; ++l) upwind_dv(col + l, na, stride, vg.dv(), e[i], o + l);
      for (std::size_t j = 0; j < m; ++j) o[j] *= -e[i];
    }
  });
}

void require_finite(const DistState& f) {
  if (!all_finite(f.values)) {
    raise(ErrorKind::NonFiniteState, "distribution became non-finite at t = " + std::to_string(f.time));
  }
}

}  // namespace

void rk2_vlasov_stage(DistState& f, FieldState& e, double dt) {
  const std::size_t n = f.values.size();
  std::vector<double> k(n);
  vlasov_force(f, e.values, k);
  DistState mid(f.grid, f.time + 0.5 * dt);
  for (std::size_t q = 0; q < n; ++q) mid.values[q] = f.values[q] + 0.5 * dt * k[q];
  FieldState next = ampere_update(e, mid, dt);
  std::vector<double> avg(e.values.size());
  for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = 0.5 * (e.values[i] + next.values[i]);
  vlasov_force(mid, avg, k);
  for (std::size_t q = 0; q < n; ++q) f.values[q] += dt * k[q];
  f.time += dt;
  e = std::move(next);
  require_finite(f);
}

void rk2_vlasov_full(DistState& f, FieldState& e, double dt, double nu, const SpectralPlan& plan) {
  const VelocityGrid& vg = f.grid.velocity();
  const std::size_t n = f.values.size();
  const std::size_t m = f.grid.column_size();
  const std::size_t nx = f.grid.space().size();
  std::vector<std::complex<double>> hat;
  auto rhs = [&](const DistState& g, std::span<const double> field, std::vector<double>& out) {
    out.assign(n, 0.0);
    vlasov_force(g, field, out);
    plan.forward_all(g.values, hat);
    for (std::size_t k = 0; k < plan.modes(); ++k) {
      const std::complex<double> ik(0.0, has_nyquist(nx, k) ? 0.0 : plan.wavenumber(k));
      for (std::size_t j = 0; j < m; ++j) hat[k * m + j] *= ik;
    }
    std::vector<double> dx(n);
    plan.backward_all(hat, dx);
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] -= vx_of(vg, j) * dx[i * m + j];
    }
    if (nu > 0.0) {
      std::vector<double> q(m);
      CollisionWorkspace ws;
      for (std::size_t i = 0; i < nx; ++i) {
        collision_apply(g.column(i), vg, 2, q, 0.0, ws);
        for (std::size_t j = 0; j < m; ++j) out[i * m + j] += nu * q[j];
      }
    }
  };
  std::vector<double> k;
  rhs(f, e.values, k);
  DistState mid(f.grid, f.time + 0.5 * dt);
  for (std::size_t q = 0; q < n; ++q) mid.values[q] = f.values[q] + 0.5 * dt * k[q];
  FieldState next = ampere_update(e, mid, dt);
  std::vector<double> avg(e.values.size());
  for (std::size_t i = 0; i < avg.size(); ++i) avg[i] = 0.5 * (e.values[i] + next.values[i]);
  rhs(mid, avg, k);
  for (std::size_t q = 0; q < n; ++q) f.values[q] += dt * k[q];
  f.time += dt;
  e = std::move(next);
  require_finite(f);
}

}  // namespace vfp
