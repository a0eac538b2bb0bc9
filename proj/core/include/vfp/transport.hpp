#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "vfp/mesh.hpp"

namespace vfp {

/// FFTW plans for the periodic x-axis of one phase grid: a batched transform
/// over all velocity nodes and a single transform for fields.
class SpectralPlan {
 public:
  explicit SpectralPlan(const PhaseGrid& grid);
  ~SpectralPlan();
  SpectralPlan(const SpectralPlan&) = delete;
  SpectralPlan& operator=(const SpectralPlan&) = delete;

  const PhaseGrid& grid() const noexcept { return grid_; }
  /// Signed wavenumber of mode m in the half-spectrum (m = 0..N_x/2).
  double wavenumber(std::size_t m) const noexcept;
  std::size_t modes() const noexcept { return modes_; }

  /// Forward transform of one spatial field into `modes()` coefficients.
  void forward(std::span<const double> field, std::span<std::complex<double>> out) const;
  /// Inverse transform including the 1/N_x normalization.
  void backward(std::span<const std::complex<double>> in, std::span<double> field) const;

  /// Batched forward/backward over every velocity node of a phase-space array.
  void forward_all(std::span<const double> f, std::vector<std::complex<double>>& out) const;
  void backward_all(const std::vector<std::complex<double>>& in, std::span<double> f) const;

 private:
  struct Impl;
  PhaseGrid grid_;
  std::size_t modes_;
  std::unique_ptr<Impl> impl_;
};

/// Exact x-transport f(x - v dt) by phase shifts of every Fourier mode. The
/// Nyquist mode is multiplied by the real part of its phase factor.
void advect_x(DistState& f, double dt, const SpectralPlan& plan);

/// Periodic cubic-spline semi-Lagrangian x-transport (cross-check path).
void advect_x_sl(DistState& f, double dt);

/// Spatial density n_i = sum_j f_ij times the velocity cell volume.
std::vector<double> density(const DistState& f);
/// Current J_i = sum_j v_x,j f_ij times the velocity cell volume.
std::vector<double> current(const DistState& f);

/// Field with zero mean solving dE/dx = n - 1 spectrally.
FieldState poisson_field(const DistState& f, const SpectralPlan& plan);

/// Spectral derivative of a periodic field (Nyquist mode dropped).
std::vector<double> spectral_dx(std::span<const double> field, const SpectralPlan& plan);

/// E^{n+1}_i = E^n_i - dt * J_i with J from `f_mid`.
FieldState ampere_update(const FieldState& e, const DistState& f_mid, double dt);

/// Third-order upwind derivative along a strided velocity line of N_v + 1
/// values. Positive `direction` uses the stencil biased towards lower indices.
/// Throws StencilTooSmall for fewer than 7 nodes.
void upwind_dv(const double* f, std::size_t count, std::size_t stride, double dv, double direction, double* out);
std::vector<double> upwind_dv(std::span<const double> f, double dv, double direction);

/// Energy-conserving explicit-midpoint advance of df/dt + E df/dv = 0 coupled
/// to the Ampere update. On return `f` and `e` hold the new state.
void rk2_vlasov_stage(DistState& f, FieldState& e, double dt);

/// Full-equation variant: F = -v D_x f - E D_v f + nu Q(f) with spectral D_x
/// and the second-order collision operator.
void rk2_vlasov_full(DistState& f, FieldState& e, double dt, double nu, const SpectralPlan& plan);

/// Cubic B-spline shift f(v - E_i dt) along v_x in each column, zero outside
/// the velocity domain. Throws DisplacementTooLarge when |E dt| >= 2 v_max.
void advect_v_sl(DistState& f, std::span<const double> e, double dt);

}  // namespace vfp
