#include "vfp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vfp/error.hpp"

namespace vfp {

VelocityGrid::VelocityGrid(double v_max, int cells, int dims)
    : v_max_(v_max), cells_(cells), dims_(dims), dv_(0.0) {
  if (!(v_max > 0.0) || !std::isfinite(v_max)) {
    raise(ErrorKind::NonPositiveExtent, "v_max must be positive, got " + std::to_string(v_max));
  }
  if (cells < kMinCells) {
    raise(ErrorKind::BadCount, "N_v must be at least " + std::to_string(kMinCells) + ", got " +
                                   std::to_string(cells));
  }
  if (dims != 1 && dims != 2) {
    raise(ErrorKind::BadCount, "velocity dimension must be 1 or 2, got " + std::to_string(dims));
  }
  dv_ = 2.0 * v_max / static_cast<double>(cells);
}

std::size_t VelocityGrid::index_of(double v) const noexcept {
  const double r = std::round((v + v_max_) / dv_);
  if (!(r > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(r), static_cast<std::size_t>(cells_));
}

std::vector<double> VelocityGrid::nodes() const {
  std::vector<double> out(axis_size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = node(j);
  return out;
}

SpatialGrid::SpatialGrid(double length, int points) : length_(length), points_(points), dx_(0.0) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    raise(ErrorKind::NonPositiveExtent, "L must be positive, got " + std::to_string(length));
  }
  if (points < kMinPoints) {
    raise(ErrorKind::BadCount, "N_x must be at least " + std::to_string(kMinPoints) + ", got " +
                                   std::to_string(points));
  }
  dx_ = length / static_cast<double>(points);
}

double SpatialGrid::fundamental_wavenumber() const noexcept { return 2.0 * std::numbers::pi / length_; }

std::size_t SpatialGrid::wrap(std::ptrdiff_t i) const noexcept {
  const auto n = static_cast<std::ptrdiff_t>(points_);
  auto r = i % n;
  if (r < 0) r += n;
  return static_cast<std::size_t>(r);
}

PhaseGrid::PhaseGrid(std::optional<SpatialGrid> space, VelocityGrid velocity)
    : space_(std::move(space)), velocity_(velocity) {}

const SpatialGrid& PhaseGrid::space() const {
  if (!space_) raise(ErrorKind::BadCount, "grid has no spatial axis");
  return *space_;
}

double PhaseGrid::cell_volume() const noexcept {
  return (space_ ? space_->dx() : 1.0) * velocity_.cell_volume();
}

PhaseGrid build_phase_grid(double length, int nx, double v_max, int nv, int dims) {
  if (dims < 0 || dims > 2) raise(ErrorKind::BadCount, "dims must be 0, 1 or 2");
  if (dims == 0) return PhaseGrid(std::nullopt, VelocityGrid(v_max, nv, 1));
  // Validate the velocity extent first so that a zero v_max reports the extent
  // error even when the spatial inputs are fine.
  VelocityGrid velocity(v_max, nv, dims);
  return PhaseGrid(SpatialGrid(length, nx), velocity);
}

DistState::DistState(PhaseGrid g, double t) : grid(std::move(g)), values(grid.size(), 0.0), time(t) {}

std::span<double> DistState::column(std::size_t i) {
  const std::size_t m = grid.column_size();
  return std::span<double>(values).subspan(i * m, m);
}

std::span<const double> DistState::column(std::size_t i) const {
  const std::size_t m = grid.column_size();
  return std::span<const double>(values).subspan(i * m, m);
}

DistState sample_on_grid(const PhaseGrid& grid, const Initializer& init) {
  DistState out(grid, 0.0);
  const VelocityGrid& vg = grid.velocity();
  const std::size_t na = vg.axis_size();
  for (std::size_t i = 0; i < grid.columns(); ++i) {
    const double x = grid.homogeneous() ? 0.0 : grid.space().node(i);
    auto col = out.column(i);
    if (vg.dims() == 1) {
      for (std::size_t j = 0; j < na; ++j) col[j] = init(x, vg.node(j), 0.0);
    } else {
      for (std::size_t jx = 0; jx < na; ++jx) {
        for (std::size_t jy = 0; jy < na; ++jy) col[jx * na + jy] = init(x, vg.node(jx), vg.node(jy));
      }
    }
  }
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    if (!std::isfinite(out.values[k])) {
      raise(ErrorKind::NonFiniteSample, "initializer returned a non-finite value at flat index " +
                                            std::to_string(k));
    }
  }
  return out;
}

DistState shift_x(const DistState& f, std::ptrdiff_t cells) {
  DistState out(f.grid, f.time);
  if (f.grid.homogeneous()) {
    out.values = f.values;
    return out;
  }
  const SpatialGrid& sg = f.grid.space();
  for (std::size_t i = 0; i < sg.size(); ++i) {
    const auto src = f.column(sg.wrap(static_cast<std::ptrdiff_t>(i) - cells));
    std::copy(src.begin(), src.end(), out.column(i).begin());
  }
  return out;
}

bool all_finite(std::span<const double> values) noexcept {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace vfp
