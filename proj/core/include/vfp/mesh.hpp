#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace vfp {

/// Uniform velocity mesh on [-v_max, v_max] with N_v cells per axis.
///
/// Nodes include both endpoints, v_j = -v_max + j*dv for j = 0..N_v, so each
/// axis carries N_v + 1 values. In 2D the mesh is the tensor product of two
/// identical axes, stored with v_y fastest.
class VelocityGrid {
 public:
  static constexpr int kMinCells = 8;

  VelocityGrid(double v_max, int cells, int dims = 1);

  double v_max() const noexcept { return v_max_; }
  int cells() const noexcept { return cells_; }
  int dims() const noexcept { return dims_; }
  double dv() const noexcept { return dv_; }

  std::size_t axis_size() const noexcept { return static_cast<std::size_t>(cells_) + 1; }
  std::size_t size() const noexcept { return dims_ == 1 ? axis_size() : axis_size() * axis_size(); }

  double node(std::size_t j) const noexcept { return -v_max_ + static_cast<double>(j) * dv_; }
  /// Interface coordinate v_{j+1/2}.
  double midpoint(std::size_t j) const noexcept { return -v_max_ + (static_cast<double>(j) + 0.5) * dv_; }
  /// Nearest node index of a coordinate (clamped to the mesh).
  std::size_t index_of(double v) const noexcept;
  /// Quadrature weight of one velocity cell (dv or dv^2).
  double cell_volume() const noexcept { return dims_ == 1 ? dv_ : dv_ * dv_; }

  std::vector<double> nodes() const;

  friend bool operator==(const VelocityGrid&, const VelocityGrid&) = default;

 private:
  double v_max_;
  int cells_;
  int dims_;
  double dv_;
};

/// Periodic mesh x_i = i*dx on [0, L).
class SpatialGrid {
 public:
  static constexpr int kMinPoints = 4;

  SpatialGrid(double length, int points);

  double length() const noexcept { return length_; }
  int points() const noexcept { return points_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_); }
  double dx() const noexcept { return dx_; }
  double node(std::size_t i) const noexcept { return static_cast<double>(i) * dx_; }
  double fundamental_wavenumber() const noexcept;
  /// Periodic index arithmetic.
  std::size_t wrap(std::ptrdiff_t i) const noexcept;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  double length_;
  int points_;
  double dx_;
};

/// Phase-space mesh. A missing spatial axis means a space-homogeneous run.
///
/// Storage is row-major: one contiguous velocity column per spatial node.
class PhaseGrid {
 public:
  PhaseGrid(std::optional<SpatialGrid> space, VelocityGrid velocity);

  bool homogeneous() const noexcept { return !space_.has_value(); }
  /// 0 for homogeneous runs, otherwise the number of velocity dimensions.
  int mode() const noexcept { return space_ ? velocity_.dims() : 0; }

  const VelocityGrid& velocity() const noexcept { return velocity_; }
  const SpatialGrid& space() const;
  const std::optional<SpatialGrid>& maybe_space() const noexcept { return space_; }

  std::size_t columns() const noexcept { return space_ ? space_->size() : 1; }
  std::size_t column_size() const noexcept { return velocity_.size(); }
  std::size_t size() const noexcept { return columns() * column_size(); }
  /// dx (or 1 when homogeneous) times the velocity cell volume.
  double cell_volume() const noexcept;

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

 private:
  std::optional<SpatialGrid> space_;
  VelocityGrid velocity_;
};

/// dims: 0 = velocity only (1D), 1 = 1dx-1dv, 2 = 1dx-2dv. L and N_x are
/// ignored for dims == 0.
PhaseGrid build_phase_grid(double length, int nx, double v_max, int nv, int dims);

struct DistState {
  PhaseGrid grid;
  std::vector<double> values;
  double time = 0.0;

  explicit DistState(PhaseGrid g, double t = 0.0);

  std::span<double> column(std::size_t i);
  std::span<const double> column(std::size_t i) const;
};

struct FieldState {
  std::vector<double> values;
  double time = 0.0;
};

/// Initial datum f(x, v_x, v_y); v_y is 0 for one velocity dimension and x is
/// 0 for homogeneous grids.
using Initializer = std::function<double(double x, double vx, double vy)>;

DistState sample_on_grid(const PhaseGrid& grid, const Initializer& init);

/// Periodic shift by whole cells in x: result(i) = f(i - cells).
DistState shift_x(const DistState& f, std::ptrdiff_t cells);

bool all_finite(std::span<const double> values) noexcept;

}  // namespace vfp
