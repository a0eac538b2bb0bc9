#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfp/collision.hpp"
#include "vfp/diagnostics.hpp"
#include "vfp/mesh.hpp"

namespace vfp {

/// Header of the series CSV for one or two velocity dimensions.
std::string series_header(int velocity_dims);

/// Writes the series as CSV with 17 significant digits. Throws IoFailure.
void write_series(const std::filesystem::path& path, const DiagSeries& series);
DiagSeries read_series(const std::filesystem::path& path);

struct Snapshot {
  DistState f;
  std::optional<FieldState> e;
};

/// Text snapshot: a `vfp-snapshot` header line with the grid descriptor, the
/// values in storage order, then an optional `E` block.
void write_snapshot(const std::filesystem::path& path, const DistState& f, const FieldState* e = nullptr);
Snapshot read_snapshot(const std::filesystem::path& path);

/// First line "N_v rows cols", then one row per line.
void write_matrix(const std::filesystem::path& path, const DenseMatrix& a, int nv);
DenseMatrix read_matrix(const std::filesystem::path& path, int* nv = nullptr);

/// (re_z, im_z, abs_R) grid scan and a real-axis trace (z, R).
struct StabilityScan {
  std::vector<double> re, im, abs_r;
  std::vector<double> trace_z, trace_r;
};
void write_stability(const std::filesystem::path& scan_path, const std::filesystem::path& trace_path,
                     const StabilityScan& scan);

/// Companion text file naming the series columns worth plotting.
void write_plotspec(const std::filesystem::path& path, const std::string& series_file, int velocity_dims,
                    bool spatial);

/// Shortest-round-trip-safe decimal (17 significant digits).
std::string format_real(double x);

}  // namespace vfp
