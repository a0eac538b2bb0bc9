#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vfp/mesh.hpp"

namespace vfp {

struct Invariants {
  double mass = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
  double kinetic = 0.0;
  double electric = 0.0;
  double total = 0.0;
};

/// Node quadrature with weight dx * dv^d. Homogeneous grids drop dx and the
/// field; `e` may be empty.
Invariants invariants(const DistState& f, std::span<const double> e = {});

/// Electric energy (dx/2) sum_i E_i^2.
double electric_energy(std::span<const double> e, double dx);

/// Maxwellian in velocity matched to f. Homogeneous grids use the staggered
/// moments; otherwise the global node moments of the spatial average.
std::vector<double> reference_maxwellian(const DistState& f);

/// dv sum_j f_j^2 / M_j, summed over columns with weight dx when spatial.
/// Throws DegenerateDensity when M has a non-positive node.
double entropy(const DistState& f, std::span<const double> m_ref);

/// sqrt(dx dv sum (f - M)^2) with the same weights as `entropy`.
double l2_distance(const DistState& f, std::span<const double> m_ref);

enum class RateKind { Field, Energy };

enum class FitMethod {
  Peaks,     // local maxima with parabolic refinement
  LogLinear  // every sample inside the window
};

/// Exponential rate of an electric-energy series inside [t_lo, t_hi]: the
/// least-squares slope of log(energy) at its local maxima. RateKind::Field
/// halves the slope so that it compares with field-amplitude rates.
/// Throws TooFewPeaks when fewer than 4 maxima fall in the window.
double fit_damping(std::span<const double> t, std::span<const double> energy, double t_lo, double t_hi,
                   RateKind kind = RateKind::Field, FitMethod method = FitMethod::Peaks);

struct DiagRow {
  double t = 0.0;
  double mass = 0.0;
  double momentum_x = 0.0;
  double momentum_y = 0.0;
  double e_kin = 0.0;
  double e_elec = 0.0;
  double e_tot = 0.0;
  double entropy = 0.0;
  double l2_maxwellian = 0.0;
  double dt = 0.0;
  int stages = 0;
  std::int64_t nrhs = 0;
};

struct DiagSeries {
  int velocity_dims = 1;
  std::vector<DiagRow> rows;

  std::vector<double> column(double DiagRow::*field) const;
};

/// One diagnostics row for the given state; dt/stages/nrhs are left to the caller.
DiagRow diagnose(const DistState& f, std::span<const double> e, std::span<const double> m_ref);

}  // namespace vfp
