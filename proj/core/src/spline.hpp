#pragma once

#include <cstddef>
#include <vector>

namespace vfp::detail {

// Cubic B-spline weights for the four coefficients k0-1..k0+2 around a point
// at fractional offset u in [0, 1) from node k0.
inline void bspline_weights(double u, double w[4]) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double m = 1.0 - u;
  w[0] = m * m * m / 6.0;
  w[1] = (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0;
  w[2] = (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0;
  w[3] = u3 / 6.0;
}

// Interpolating coefficients on nodes 0..n-1 with zero coefficients outside.
void spline_coeffs_zero(const double* f, std::size_t n, std::size_t stride, std::vector<double>& c,
                        std::vector<double>& scratch);

// Interpolating coefficients on a periodic line of n nodes.
void spline_coeffs_periodic(const double* f, std::size_t n, std::size_t stride, std::vector<double>& c,
                            std::vector<double>& scratch);

// Spline value at index coordinate p; coefficients outside [0, n) are zero.
double spline_eval_zero(const std::vector<double>& c, double p);

// Spline value at index coordinate p on the periodic line.
double spline_eval_periodic(const std::vector<double>& c, double p);

}  // namespace vfp::detail
