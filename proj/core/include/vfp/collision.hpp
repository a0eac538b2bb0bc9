#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vfp/mesh.hpp"

namespace vfp {

/// Density, mean velocity and temperature of one velocity column.
/// `uy` is only meaningful for two velocity dimensions.
struct StaggeredMoments {
  double n = 0.0;
  double u = 0.0;
  double uy = 0.0;
  double T = 0.0;
};

/// Moments built from interface averages f_{j+1/2} = (f_j + f_{j+1})/2 over the
/// interior interfaces. Throws DegenerateDensity when n <= 0 or T <= 0.
StaggeredMoments staggered_moments(std::span<const double> f, const VelocityGrid& grid);

/// Same as staggered_moments but with the four-point interface value
/// (-f_{j-1} + 9f_j + 9f_{j+1} - f_{j+2})/16. The two interfaces next to each
/// boundary use the plain average.
StaggeredMoments breve_moments(std::span<const double> f, const VelocityGrid& grid);

/// Appendix-style 2D moments with a single isotropic temperature:
/// 2nT = sum over both axes of (v_{k+1/2} - u_k)^2 f_{k+1/2}.
StaggeredMoments staggered_moments_2d(std::span<const double> f, const VelocityGrid& grid);

/// M_j = n / sqrt(2 pi T) exp(-(v_j - u)^2 / 2T), or the 2D product form with
/// normalization n / (2 pi T) when grid.dims() == 2.
std::vector<double> discrete_maxwellian(double n, double u, double T, const VelocityGrid& grid,
                                        double uy = 0.0);

/// Scratch for the fourth-order operator; one per worker.
struct CollisionWorkspace {
  std::vector<double> flux2;
  std::vector<double> flux4;
};

/// Second-order flux-form operator with zero flux at both boundary interfaces.
/// `drift` is added to the staggered mean velocity in the drift term only.
void q2_apply(std::span<const double> f, const VelocityGrid& grid, std::span<double> out,
              double drift = 0.0);
std::vector<double> q2_apply(std::span<const double> f, const VelocityGrid& grid, double drift = 0.0);

/// Interface flux F_{j+1/2} for j = 0..N-1 with frozen (u, T). Shared by the
/// operator, the frozen matrix and the L2 form.
double q2_flux(std::span<const double> f, const VelocityGrid& grid, std::size_t j, double u, double T);

/// Interface Maxwellian M~_{j+1/2} (j = 0..N-1) that makes the L2 form equal to
/// the flux form. M defaults to the discrete Maxwellian of f's staggered
/// moments. Throws EquilibriumSingularity when f_{j+1}M_j - f_jM_{j+1}
/// vanishes relative to its terms.
std::vector<double> interface_maxwellian(std::span<const double> f, const VelocityGrid& grid,
                                         std::optional<std::span<const double>> M = std::nullopt);

/// Operator assembled from G_{j+1/2} = (T/dv) M~_{j+1/2} ((f/M)_{j+1} - (f/M)_j).
std::vector<double> q2_l2form(std::span<const double> f, const VelocityGrid& grid,
                              std::optional<std::span<const double>> M = std::nullopt);

/// dv * sum_j Q_j f_j / M_j with Q the flux-form operator.
double entropy_pairing(std::span<const double> f, const VelocityGrid& grid, std::span<const double> M);

/// Fourth-order operator: finite-volume part with four-point interface values
/// and the (1,-27,27,-1)/24 gradient, minus 1/24 of the second difference of
/// the second-order operator. Throws StencilTooSmall for N_v < 8.
void q4_apply(std::span<const double> f, const VelocityGrid& grid, std::span<double> out,
              double drift, CollisionWorkspace& ws);
std::vector<double> q4_apply(std::span<const double> f, const VelocityGrid& grid, double drift = 0.0);

/// 2D operator: sum of the two axis stencils with the shared temperature.
void q2d_apply(std::span<const double> f, const VelocityGrid& grid, std::span<double> out,
               double drift_x = 0.0, double drift_y = 0.0);
std::vector<double> q2d_apply(std::span<const double> f, const VelocityGrid& grid, double drift_x = 0.0,
                              double drift_y = 0.0);

/// Largest diffusion eigenvalue of the order-`order` stencil relative to the
/// second-order one (4/3 for order 4: symbols 16/3 vs 4 at the grid scale).
double stiffness_ratio(int order) noexcept;

/// Dispatch on velocity dimension and order (2 or 4; order 4 is 1D only).
void collision_apply(std::span<const double> f, const VelocityGrid& grid, int order, std::span<double> out,
                     double drift, CollisionWorkspace& ws);

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Linear operator A with A f = nu Q(f) for frozen (u, T) on a 1D velocity grid.
DenseMatrix assemble_frozen_operator(double n, double u, double T, double nu, const VelocityGrid& grid);

std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x);

struct GershgorinBounds {
  double max_real = 0.0;    // largest disc right edge
  double min_real = 0.0;    // leftmost disc edge
  double max_radius = 0.0;  // largest disc radius
  double spectral_radius = 0.0;
};

/// Column discs: centre a_jj, radius sum_{i != j} |a_ij|.
GershgorinBounds gershgorin_bounds(const DenseMatrix& a);

/// Bound on |Im lambda| from the skew part (A - A^T)/2 (infinity norm).
double bendixson_imag_bound(const DenseMatrix& a);

/// Dominant-eigenvalue magnitude by power iteration (deterministic start).
double power_iteration(const DenseMatrix& a, int iterations = 2000);

}  // namespace vfp
