#include "vfp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vfp/collision.hpp"
#include "vfp/error.hpp"

namespace vfp {

Invariants invariants(const DistState& f, std::span<const double> e) {
  const VelocityGrid& vg = f.grid.velocity();
  const std::size_t na = vg.axis_size();
  const std::size_t m = f.grid.column_size();
  double mass = 0.0, px = 0.0, py = 0.0, kin = 0.0;
  for (std::size_t i = 0; i < f.grid.columns(); ++i) {
    const auto col = f.column(i);
    for (std::size_t j = 0; j < m; ++j) {
      const double vx = vg.node(vg.dims() == 2 ? j / na : j);
      const double vy = vg.dims() == 2 ? vg.node(j % na) : 0.0;
      mass += col[j];
      px += vx * col[j];
      py += vy * col[j];
      kin += 0.5 * (vx * vx + vy * vy) * col[j];
    }
  }
  const double w = f.grid.cell_volume();
  Invariants out;
  out.mass = w * mass;
  out.momentum_x = w * px;
  out.momentum_y = w * py;
  out.kinetic = w * kin;
  if (!f.grid.homogeneous() && !e.empty()) out.electric = electric_energy(e, f.grid.space().dx());
  out.total = out.kinetic + out.electric;
  return out;
}

double electric_energy(std::span<const double> e, double dx) {
  double acc = 0.0;
  for (double x : e) acc += x * x;
  return 0.5 * dx * acc;
}

std::vector<double> reference_maxwellian(const DistState& f) {
  const VelocityGrid& vg = f.grid.velocity();
  if (f.grid.homogeneous()) {
    const StaggeredMoments m = staggered_moments(f.values, vg);
    return discrete_maxwellian(m.n, m.u, m.T, vg, m.uy);
  }
  const Invariants inv = invariants(f);
  const double length = f.grid.space().length();
  if (!(inv.mass > 0.0)) raise(ErrorKind::DegenerateDensity, "total mass " + std::to_string(inv.mass));
  const double n = inv.mass / length;
  const double ux = inv.momentum_x / inv.mass;
  const double uy = inv.momentum_y / inv.mass;
  const double T = (2.0 * inv.kinetic / inv.mass - ux * ux - uy * uy) / vg.dims();
  return discrete_maxwellian(n, ux, T, vg, uy);
}

namespace {

void check_reference(std::span<const double> m_ref, const DistState& f) {
  if (m_ref.size() != f.grid.column_size()) raise(ErrorKind::BadCount, "reference Maxwellian size mismatch");
  for (double x : m_ref) {
    if (!(x > 0.0)) raise(ErrorKind::DegenerateDensity, "reference Maxwellian has a non-positive node");
  }
}

double spatial_weight(const DistState& f) { return f.grid.homogeneous() ? 1.0 : f.grid.space().dx(); }

}  // namespace

double entropy(const DistState& f, std::span<const double> m_ref) {
  check_reference(m_ref, f);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.grid.columns(); ++i) {
    const auto col = f.column(i);
    for (std::size_t j = 0; j < col.size(); ++j) acc += col[j] * col[j] / m_ref[j];
  }
  return spatial_weight(f) * f.grid.velocity().cell_volume() * acc;
}

double l2_distance(const DistState& f, std::span<const double> m_ref) {
  if (m_ref.size() != f.grid.column_size()) raise(ErrorKind::BadCount, "reference Maxwellian size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.grid.columns(); ++i) {
    const auto col = f.column(i);
    for (std::size_t j = 0; j < col.size(); ++j) {
      const double d = col[j] - m_ref[j];
      acc += d * d;
    }
  }
  return std::sqrt(spatial_weight(f) * f.grid.velocity().cell_volume() * acc);
}

double fit_damping(std::span<const double> t, std::span<const double> energy, double t_lo, double t_hi,
                   RateKind kind, FitMethod method) {
  if (t.size() != energy.size()) raise(ErrorKind::BadCount, "time and energy series differ in length");
  std::vector<double> xs, ys;
  if (method == FitMethod::LogLinear) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] >= t_lo && t[i] <= t_hi && energy[i] > 0.0) {
        xs.push_back(t[i]);
        ys.push_back(std::log(energy[i]));
      }
    }
  } else {
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      if (t[i] < t_lo || t[i] > t_hi) continue;
      if (!(energy[i] > energy[i - 1] && energy[i] >= energy[i + 1])) continue;
      if (!(energy[i - 1] > 0.0 && energy[i + 1] > 0.0)) continue;
      // Parabola through the three log values around the sample maximum.
      const double y0 = std::log(energy[i - 1]), y1 = std::log(energy[i]), y2 = std::log(energy[i + 1]);
      const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
      const double d0 = (y1 - y0) / h0, d1 = (y2 - y1) / h1;
      const double a = (d1 - d0) / (h0 + h1);
      double tp = t[i], yp = y1;
      if (a < 0.0) {
        const double b = d0 + a * h0;  // slope at t[i]
        const double shift = std::clamp(-b / (2.0 * a), -h0, h1);
        tp = t[i] + shift;
        yp = y1 + b * shift + a * shift * shift;
      }
      xs.push_back(tp);
      ys.push_back(yp);
    }
  }
  const std::size_t need = method == FitMethod::Peaks ? 4 : 2;
  if (xs.size() < need) {
    raise(ErrorKind::TooFewPeaks, std::to_string(xs.size()) + " usable points in [" + std::to_string(t_lo) + ", " +
                                      std::to_string(t_hi) + "]");
  }
  const double nx = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= nx;
  my /= nx;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (!(sxx > 0.0)) raise(ErrorKind::TooFewPeaks, "fit points share one time stamp");
  const double slope = sxy / sxx;
  return kind == RateKind::Field ? 0.5 * slope : slope;
}

std::vector<double> DiagSeries::column(double DiagRow::*field) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const DiagRow& r : rows) out.push_back(r.*field);
  return out;
}

DiagRow diagnose(const DistState& f, std::span<const double> e, std::span<const double> m_ref) {
  const Invariants inv = invariants(f, e);
  DiagRow row;
  row.t = f.time;
  row.mass = inv.mass;
  row.momentum_x = inv.momentum_x;
  row.momentum_y = inv.momentum_y;
  row.e_kin = inv.kinetic;
  row.e_elec = inv.electric;
  row.e_tot = inv.total;
  row.entropy = entropy(f, m_ref);
  row.l2_maxwellian = l2_distance(f, m_ref);
  return row;
}

}  // namespace vfp
