#include <cmath>
#include <string>

#include "vfp/collision.hpp"
#include "vfp/error.hpp"

namespace vfp {

StaggeredMoments staggered_moments_2d(std::span<const double> f, const VelocityGrid& grid) {
  if (grid.dims() != 2) raise(ErrorKind::BadCount, "expected a two-dimensional velocity grid");
  if (f.size() != grid.size()) raise(ErrorKind::BadCount, "velocity block size does not match the grid");
  const std::size_t na = grid.axis_size();
  const std::size_t cells = na - 1;
  const double w = grid.cell_volume();
  double sum = 0.0;
  for (double x : f) sum += x;
  StaggeredMoments m;
  m.n = w * sum;
  if (!(m.n > 0.0)) raise(ErrorKind::DegenerateDensity, "density " + std::to_string(m.n));

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t ix = 0; ix < na; ++ix) {
    for (std::size_t iy = 0; iy < na; ++iy) {
      const double c = f[ix * na + iy];
      if (ix < cells) mx += grid.midpoint(ix) * 0.5 * (c + f[(ix + 1) * na + iy]);
      if (iy < cells) my += grid.midpoint(iy) * 0.5 * (c + f[ix * na + iy + 1]);
    }
  }
  m.u = w * mx / m.n;
  m.uy = w * my / m.n;

  double var = 0.0;
  for (std::size_t ix = 0; ix < na; ++ix) {
    for (std::size_t iy = 0; iy < na; ++iy) {
      const double c = f[ix * na + iy];
      if (ix < cells) {
        const double d = grid.midpoint(ix) - m.u;
        var += d * d * 0.5 * (c + f[(ix + 1) * na + iy]);
      }
      if (iy < cells) {
        const double d = grid.midpoint(iy) - m.uy;
        var += d * d * 0.5 * (c + f[ix * na + iy + 1]);
      }
    }
  }
  m.T = w * var / (2.0 * m.n);
  if (!(m.T > 0.0) || !std::isfinite(m.T)) raise(ErrorKind::DegenerateDensity, "temperature " + std::to_string(m.T));
  return m;
}

void q2d_apply(std::span<const double> f, const VelocityGrid& grid, std::span<double> out, double drift_x,
               double drift_y) {
  const StaggeredMoments m = staggered_moments_2d(f, grid);
  const std::size_t na = grid.axis_size();
  const std::size_t cells = na - 1;
  const double dv = grid.dv();
  const double inv = 1.0 / dv;
  const double diff = m.T / dv;
  const double ux = m.u + drift_x;
  const double uy = m.uy + drift_y;

  // Axis y (contiguous): flux through j+1/2 within each row.
  for (std::size_t ix = 0; ix < na; ++ix) {
    const double* row = f.data() + ix * na;
    double* q = out.data() + ix * na;
    double left = 0.0;
    for (std::size_t iy = 0; iy < cells; ++iy) {
      const double right = 0.5 * (row[iy] + row[iy + 1]) * (grid.midpoint(iy) - uy) + diff * (row[iy + 1] - row[iy]);
      q[iy] = (right - left) * inv;
      left = right;
    }
    q[cells] = -left * inv;
  }
  // Axis x: flux between consecutive rows, accumulated onto the y part.
  std::vector<double> left(na, 0.0);
  for (std::size_t ix = 0; ix < na; ++ix) {
    double* q = out.data() + ix * na;
    if (ix < cells) {
      const double* a = f.data() + ix * na;
      const double* b = a + na;
      const double vm = grid.midpoint(ix) - ux;
      for (std::size_t iy = 0; iy < na; ++iy) {
        const double right = 0.5 * (a[iy] + b[iy]) * vm + diff * (b[iy] - a[iy]);
        q[iy] += (right - left[iy]) * inv;
        left[iy] = right;
      }
    } else {
      for (std::size_t iy = 0; iy < na; ++iy) q[iy] += -left[iy] * inv;
    }
  }
}

std::vector<double> q2d_apply(std::span<const double> f, const VelocityGrid& grid, double drift_x, double drift_y) {
  std::vector<double> out(f.size());
  q2d_apply(f, grid, out, drift_x, drift_y);
  return out;
}

}  // namespace vfp
