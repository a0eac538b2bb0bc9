#include "spline.hpp"

#include <cmath>
#include <string>

#include "vfp/error.hpp"
#include "vfp/parallel.hpp"
#include "vfp/transport.hpp"

namespace vfp {
namespace detail {

namespace {

// Solves (c_{k-1} + 4 c_k + c_{k+1})/6 = d_k on k = 0..n-1 with c_{-1} = c_n = 0.
void solve_tridiag(const double* d, std::size_t n, std::size_t stride, double* c, std::vector<double>& cp) {
  cp.resize(n);
  const double a = 1.0 / 6.0;
  const double b = 4.0 / 6.0;
  cp[0] = a / b;
  c[0] = d[0] / b;
  for (std::size_t k = 1; k < n; ++k) {
    const double m = b - a * cp[k - 1];
    cp[k] = a / m;
    c[k] = (d[k * stride] - a * c[k - 1]) / m;
  }
  for (std::size_t k = n - 1; k-- > 0;) c[k] -= cp[k] * c[k + 1];
}

}  // namespace

void spline_coeffs_zero(const double* f, std::size_t n, std::size_t stride, std::vector<double>& c,
                        std::vector<double>& scratch) {
  c.resize(n);
  solve_tridiag(f, n, stride, c.data(), scratch);
}

void spline_coeffs_periodic(const double* f, std::size_t n, std::size_t stride, std::vector<double>& c,
                            std::vector<double>& scratch) {
  // Cyclic system via Sherman-Morrison: A = T + u v^T with corner entries 1/6.
  const double a = 1.0 / 6.0;
  const double b = 4.0 / 6.0;
  const double gamma = -b;
  std::vector<double> diag(n, b);
  diag[0] = b - gamma;
  diag[n - 1] = b - a * a / gamma;
  std::vector<double> rhs(n), u(n, 0.0), x(n), z(n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = f[k * stride];
  u[0] = gamma;
  u[n - 1] = a;
  auto thomas = [&](const std::vector<double>& d, std::vector<double>& out) {
    scratch.resize(n);
    scratch[0] = a / diag[0];
    out[0] = d[0] / diag[0];
    for (std::size_t k = 1; k < n; ++k) {
      const double m = diag[k] - a * scratch[k - 1];
      scratch[k] = a / m;
      out[k] = (d[k] - a * out[k - 1]) / m;
    }
    for (std::size_t k = n - 1; k-- > 0;) out[k] -= scratch[k] * out[k + 1];
  };
  thomas(rhs, x);
  thomas(u, z);
  const double vx = x[0] + (a / gamma) * x[n - 1];
  const double vz = z[0] + (a / gamma) * z[n - 1];
  const double factor = vx / (1.0 + vz);
  c.resize(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = x[k] - factor * z[k];
}

double spline_eval_zero(const std::vector<double>& c, double p) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  const double fl = std::floor(p);
  const auto k0 = static_cast<std::ptrdiff_t>(fl);
  if (k0 < -2 || k0 > n) return 0.0;
  double w[4];
  bspline_weights(p - fl, w);
  double acc = 0.0;
  for (int q = 0; q < 4; ++q) {
    const std::ptrdiff_t k = k0 - 1 + q;
    if (k >= 0 && k < n) acc += w[q] * c[static_cast<std::size_t>(k)];
  }
  return acc;
}

double spline_eval_periodic(const std::vector<double>& c, double p) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  const double fl = std::floor(p);
  const auto k0 = static_cast<std::ptrdiff_t>(fl);
  double w[4];
  bspline_weights(p - fl, w);
  double acc = 0.0;
  for (int q = 0; q < 4; ++q) {
    std::ptrdiff_t k = (k0 - 1 + q) % n;
    if (k < 0) k += n;
    acc += w[q] * c[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace detail

void advect_x_sl(DistState& f, double dt) {
  const SpatialGrid& sg = f.grid.space();
  const VelocityGrid& vg = f.grid.velocity();
  const std::size_t nx = sg.size();
  const std::size_t m = f.grid.column_size();
  const std::size_t na = vg.axis_size();
  std::vector<double> src = f.values;
  parallel_for(m, [&](std::size_t begin, std::size_t end) {
    std::vector<double> c, scratch;
    for (std::size_t j = begin; j < end; ++j) {
      const double v = vg.node(vg.dims() == 2 ? j / na : j);
      detail::spline_coeffs_periodic(src.data() + j, nx, m, c, scratch);
      const double shift = v * dt / sg.dx();
      for (std::size_t i = 0; i < nx; ++i) {
        f.values[i * m + j] = detail::spline_eval_periodic(c, static_cast<double>(i) - shift);
      }
    }
  });
  f.time += dt;
}

void advect_v_sl(DistState& f, std::span<const double> e, double dt) {
  const VelocityGrid& vg = f.grid.velocity();
  const std::size_t cols = f.grid.columns();
  if (e.size() != cols) raise(ErrorKind::BadCount, "field size does not match the spatial grid");
  for (std::size_t i = 0; i < cols; ++i) {
    if (!(std::abs(e[i] * dt) < 2.0 * vg.v_max())) {
      raise(ErrorKind::DisplacementTooLarge,
            "velocity displacement " + std::to_string(e[i] * dt) + " exceeds the domain width");
    }
  }
  const std::size_t na = vg.axis_size();
  const std::size_t lines = vg.dims() == 2 ? na : 1;
  const std::size_t stride = vg.dims() == 2 ? na : 1;
  parallel_for(cols, [&](std::size_t begin, std::size_t end) {
    std::vector<double> c, scratch;
    for (std::size_t i = begin; i < end; ++i) {
      if (e[i] == 0.0) continue;
      const double shift = e[i] * dt / vg.dv();
      auto col = f.column(i);
      for (std::size_t l = 0; l < lines; ++l) {
        double* line = col.data() + l;
        detail::spline_coeffs_zero(line, na, stride, c, scratch);
        for (std::size_t j = 0; j < na; ++j) {
          line[j * stride] = detail::spline_eval_zero(c, static_cast<double>(j) - shift);
        }
      }
    }
  });
}

}  // namespace vfp
