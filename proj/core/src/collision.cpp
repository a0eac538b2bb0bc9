#include "vfp/collision.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vfp/error.hpp"

namespace vfp {

namespace {

void check_column(std::span<const double> f, const VelocityGrid& grid) {
  if (f.size() != grid.size()) {
    raise(ErrorKind::BadCount, "velocity column has " + std::to_string(f.size()) + " values, grid expects " +
                                   std::to_string(grid.size()));
  }
}

void check_moments(double n, double T) {
  if (!(n > 0.0) || !std::isfinite(n)) raise(ErrorKind::DegenerateDensity, "density " + std::to_string(n));
  if (!(T > 0.0) || !std::isfinite(T)) raise(ErrorKind::DegenerateDensity, "temperature " + std::to_string(T));
}

// Four-point interface value, falling back to the average next to the edges.
inline double breve_value(std::span<const double> f, std::size_t j, std::size_t cells) {
  if (j == 0 || j + 1 == cells) return 0.5 * (f[j] + f[j + 1]);
  return (-f[j - 1] + 9.0 * f[j] + 9.0 * f[j + 1] - f[j + 2]) / 16.0;
}

}  // namespace

StaggeredMoments staggered_moments(std::span<const double> f, const VelocityGrid& grid) {
  check_column(f, grid);
  if (grid.dims() == 2) return staggered_moments_2d(f, grid);
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const double dv = grid.dv();
  double sum = 0.0;
  for (double x : f) sum += x;
  StaggeredMoments m;
  m.n = dv * sum;
  if (!(m.n > 0.0)) raise(ErrorKind::DegenerateDensity, "density " + std::to_string(m.n));
  double mom = 0.0;
  for (std::size_t j = 0; j < cells; ++j) mom += grid.midpoint(j) * 0.5 * (f[j] + f[j + 1]);
  m.u = dv * mom / m.n;
  double var = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double w = grid.midpoint(j) - m.u;
    var += w * w * 0.5 * (f[j] + f[j + 1]);
  }
  m.T = dv * var / m.n;
  check_moments(m.n, m.T);
  return m;
}

StaggeredMoments breve_moments(std::span<const double> f, const VelocityGrid& grid) {
  check_column(f, grid);
  if (grid.dims() != 1) raise(ErrorKind::BadCount, "fourth-order moments need one velocity dimension");
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const double dv = grid.dv();
  double sum = 0.0;
  for (double x : f) sum += x;
  StaggeredMoments m;
  m.n = dv * sum;
  if (!(m.n > 0.0)) raise(ErrorKind::DegenerateDensity, "density " + std::to_string(m.n));
  double mom = 0.0;
  for (std::size_t j = 0; j < cells; ++j) mom += grid.midpoint(j) * breve_value(f, j, cells);
  m.u = dv * mom / m.n;
  double var = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double w = grid.midpoint(j) - m.u;
    var += w * w * breve_value(f, j, cells);
  }
  m.T = dv * var / m.n;
  check_moments(m.n, m.T);
  return m;
}

std::vector<double> discrete_maxwellian(double n, double u, double T, const VelocityGrid& grid, double uy) {
  check_moments(n, T);
  std::vector<double> out(grid.size());
  const std::size_t na = grid.axis_size();
  if (grid.dims() == 1) {
    const double c = n / std::sqrt(2.0 * std::numbers::pi * T);
    for (std::size_t j = 0; j < na; ++j) {
      const double w = grid.node(j) - u;
      out[j] = c * std::exp(-w * w / (2.0 * T));
    }
    return out;
  }
  const double c = n / (2.0 * std::numbers::pi * T);
  for (std::size_t jx = 0; jx < na; ++jx) {
    const double wx = grid.node(jx) - u;
    for (std::size_t jy = 0; jy < na; ++jy) {
      const double wy = grid.node(jy) - uy;
      out[jx * na + jy] = c * std::exp(-(wx * wx + wy * wy) / (2.0 * T));
    }
  }
  return out;
}

double q2_flux(std::span<const double> f, const VelocityGrid& grid, std::size_t j, double u, double T) {
  return 0.5 * (f[j] + f[j + 1]) * (grid.midpoint(j) - u) + (T / grid.dv()) * (f[j + 1] - f[j]);
}

void q2_apply(std::span<const double> f, const VelocityGrid& grid, std::span<double> out, double drift) {
  if (grid.dims() == 2) {
    q2d_apply(f, grid, out, drift, 0.0);
    return;
  }
  const StaggeredMoments m = staggered_moments(f, grid);
  const double u = m.u + drift;
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const double inv = 1.0 / grid.dv();
  double left = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double right = q2_flux(f, grid, j, u, m.T);
    out[j] = (right - left) * inv;
    left = right;
  }
  out[cells] = -left * inv;
}

std::vector<double> q2_apply(std::span<const double> f, const VelocityGrid& grid, double drift) {
  std::vector<double> out(f.size());
  q2_apply(f, grid, out, drift);
  return out;
}

std::vector<double> interface_maxwellian(std::span<const double> f, const VelocityGrid& grid,
                                         std::optional<std::span<const double>> M) {
  if (grid.dims() != 1) raise(ErrorKind::BadCount, "L2 form is implemented for one velocity dimension");
  const StaggeredMoments m = staggered_moments(f, grid);
  std::vector<double> own;
  std::span<const double> mw;
  if (M) {
    mw = *M;
    check_column(mw, grid);
  } else {
    own = discrete_maxwellian(m.n, m.u, m.T, grid);
    mw = own;
  }
  for (double x : mw) {
    if (!(x > 0.0)) raise(ErrorKind::DegenerateDensity, "reference Maxwellian has a non-positive node");
  }
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> out(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const double a = f[j + 1] * mw[j];
    const double b = f[j] * mw[j + 1];
    const double den = a - b;
    if (std::abs(den) <= 8.0 * eps * (std::abs(a) + std::abs(b))) {
      raise(ErrorKind::EquilibriumSingularity,
            "f is proportional to M across interface " + std::to_string(j) + "+1/2");
    }
    const double flux = q2_flux(f, grid, j, m.u, m.T);
    out[j] = (grid.dv() / m.T) * flux * mw[j] * mw[j + 1] / den;
  }
  return out;
}

std::vector<double> q2_l2form(std::span<const double> f, const VelocityGrid& grid,
                              std::optional<std::span<const double>> M) {
  const StaggeredMoments m = staggered_moments(f, grid);
  std::vector<double> own;
  std::span<const double> mw;
  if (M) {
    mw = *M;
  } else {
    own = discrete_maxwellian(m.n, m.u, m.T, grid);
    mw = own;
  }
  const std::vector<double> mt = interface_maxwellian(f, grid, mw);
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const double dv = grid.dv();
  std::vector<double> out(f.size());
  double left = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    const double right = (m.T / dv) * mt[j] * (f[j + 1] / mw[j + 1] - f[j] / mw[j]);
    out[j] = (right - left) / dv;
    left = right;
  }
  out[cells] = -left / dv;
  return out;
}

double entropy_pairing(std::span<const double> f, const VelocityGrid& grid, std::span<const double> M) {
  check_column(M, grid);
  const std::vector<double> q = q2_apply(f, grid);
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!(M[j] > 0.0)) raise(ErrorKind::DegenerateDensity, "reference Maxwellian has a non-positive node");
    acc += q[j] * f[j] / M[j];
  }
  return grid.dv() * acc;
}

void q4_apply(std::span<const double> f, const VelocityGrid& grid, std::span<double> out, double drift,
              CollisionWorkspace& ws) {
  if (grid.dims() != 1) raise(ErrorKind::BadCount, "fourth-order operator needs one velocity dimension");
  if (grid.cells() < 8) raise(ErrorKind::StencilTooSmall, "fourth-order operator needs N_v >= 8");
  check_column(f, grid);
  const StaggeredMoments mb = breve_moments(f, grid);
  const StaggeredMoments m2 = staggered_moments(f, grid);
  const std::size_t cells = static_cast<std::size_t>(grid.cells());
  const double dv = grid.dv();
  const double ub = mb.u + drift;
  const double u2 = m2.u + drift;

  // flux2 is padded by two zero interfaces on each side: index k + 2 holds F2_{k+1/2}.
  ws.flux2.assign(cells + 4, 0.0);
  for (std::size_t k = 0; k < cells; ++k) ws.flux2[k + 2] = q2_flux(f, grid, k, u2, m2.T);

  ws.flux4.assign(cells, 0.0);
  for (std::size_t k = 0; k < cells; ++k) {
    double fl;
    if (k == 0 || k + 1 == cells) {
      fl = q2_flux(f, grid, k, ub, mb.T);
    } else {
      const double grad = (f[k - 1] - 27.0 * f[k] + 27.0 * f[k + 1] - f[k + 2]) / (24.0 * dv);
      fl = (grid.midpoint(k) - ub) * breve_value(f, k, cells) + mb.T * grad;
    }
    const double* p = &ws.flux2[k + 2];
    const double bracket = p[1] - 2.0 * p[0] + p[-1];
    ws.flux4[k] = fl - bracket / 24.0;
  }
  double left = 0.0;
  for (std::size_t j = 0; j < cells; ++j) {
    out[j] = (ws.flux4[j] - left) / dv;
    left = ws.flux4[j];
  }
  out[cells] = -left / dv;
}

std::vector<double> q4_apply(std::span<const double> f, const VelocityGrid& grid, double drift) {
  CollisionWorkspace ws;
  std::vector<double> out(f.size());
  q4_apply(f, grid, out, drift, ws);
  return out;
}

double stiffness_ratio(int order) noexcept { return order == 4 ? 4.0 / 3.0 : 1.0; }

void collision_apply(std::span<const double> f, const VelocityGrid& grid, int order, std::span<double> out,
                     double drift, CollisionWorkspace& ws) {
  if (grid.dims() == 2) {
    if (order != 2) raise(ErrorKind::InvalidConfig, "two velocity dimensions support order 2 only");
    q2d_apply(f, grid, out, drift, 0.0);
  } else if (order == 4) {
    q4_apply(f, grid, out, drift, ws);
  } else if (order == 2) {
    q2_apply(f, grid, out, drift);
  } else {
    raise(ErrorKind::InvalidConfig, "collision order must be 2 or 4");
  }
}

}  // namespace vfp
