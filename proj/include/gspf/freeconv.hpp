#pragma once

#include <vector>

namespace gspf {

// Free additive convolution of the standard normal law with the radius-2
// semicircle law, evaluated on the line Im(z) = eta via subordination.
// density[i] = -Im G(x[i] + i eta) / pi, clamped at zero; cdf is its
// running trapezoid integral (cdf[0] = 0).
struct FreeConvolutionTable {
  double eta = 0.0;
  std::vector<double> x;
  std::vector<double> density;
  std::vector<double> cdf;

  double mass() const { return cdf.empty() ? 0.0 : cdf.back(); }

  // Smoothed distribution function: the table density integrated against
  // the Cauchy(eta) kernel. Strictly increasing, positive everywhere, and
  // valid far outside the grid, where it decays like eta / (pi * distance).
  double cdf_at(double point) const;
};

FreeConvolutionTable normal_semicircle_free_convolution(double eta = 1e-3,
                                                        int grid_points = 4001,
                                                        double lo = -6.0,
                                                        double hi = 6.0);

}  // namespace gspf
