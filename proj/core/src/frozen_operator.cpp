#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vfp/collision.hpp"
#include "vfp/error.hpp"

namespace vfp {

DenseMatrix assemble_frozen_operator(double n, double u, double T, double nu, const VelocityGrid& grid) {
  if (!(n > 0.0) || !(T > 0.0)) raise(ErrorKind::DegenerateDensity, "frozen coefficients need n > 0 and T > 0");
  if (grid.dims() != 1) raise(ErrorKind::BadCount, "frozen operator is assembled for one velocity dimension");
  const std::size_t na = grid.axis_size();
  const std::size_t cells = na - 1;
  const double dv = grid.dv();
  DenseMatrix a(na, na);
  // F_{k+1/2} = lo_k f_k + hi_k f_{k+1}; Q_j = (F_{j+1/2} - F_{j-1/2}) / dv.
  for (std::size_t k = 0; k < cells; ++k) {
    const double drift = 0.5 * (grid.midpoint(k) - u);
    const double lo = (drift - T / dv) * nu / dv;
    const double hi = (drift + T / dv) * nu / dv;
    a(k, k) += lo;
    a(k, k + 1) += hi;
    a(k + 1, k) -= lo;
    a(k + 1, k + 1) -= hi;
  }
  return a;
}

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
  std::vector<double> y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    const double* row = a.data.data() + i * a.cols;
    for (std::size_t j = 0; j < a.cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

GershgorinBounds gershgorin_bounds(const DenseMatrix& a) {
  GershgorinBounds g;
  g.max_real = -std::numeric_limits<double>::infinity();
  g.min_real = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < a.cols; ++j) {
    double radius = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i != j) radius += std::abs(a(i, j));
    }
    const double c = a(j, j);
    g.max_real = std::max(g.max_real, c + radius);
    g.min_real = std::min(g.min_real, c - radius);
    g.max_radius = std::max(g.max_radius, radius);
    g.spectral_radius = std::max(g.spectral_radius, std::abs(c) + radius);
  }
  return g;
}

double bendixson_imag_bound(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) row += 0.5 * std::abs(a(i, j) - a(j, i));
    best = std::max(best, row);
  }
  return best;
}

double power_iteration(const DenseMatrix& a, int iterations) {
  std::vector<double> x(a.cols);
  // Alternating start so the highest-frequency mode is present from step one.
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + 1e-3 * static_cast<double>(i));
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> y = matvec(a, x);
    double ny = 0.0;
    double nx = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      ny += y[i] * y[i];
      nx += x[i] * x[i];
    }
    ny = std::sqrt(ny);
    nx = std::sqrt(nx);
    if (ny == 0.0) return 0.0;
    estimate = ny / nx;
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] / ny;
  }
  return estimate;
}

}  // namespace vfp
