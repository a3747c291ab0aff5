#include "gspf/freeconv.hpp"

#include <cmath>
#include <complex>

#include "gspf/csvio.hpp"
#include "gspf/errors.hpp"
#include "gspf/faddeeva.hpp"

namespace gspf {
namespace {

using cplx = std::complex<double>;

// h(w) = 1/G(w) - w for the radius-2 semicircle: (sqrt(w^2 - 4) - w) / 2
// with the square root branch aligned to w so that G ~ 1/w at infinity.
cplx h_semicircle(cplx w) {
  cplx s = std::sqrt(w * w - 4.0);
  if (s.real() * w.real() + s.imag() * w.imag() < 0.0) s = -s;
  return 0.5 * (s - w);
}

cplx h_gaussian(cplx w) { return 1.0 / gaussian_cauchy_transform(w) - w; }

}  // namespace

double FreeConvolutionTable::cdf_at(double point) const {
  // Both h maps send the upper half plane into itself, so density is the
  // target law smoothed by Cauchy(eta); integrating it against the exact
  // Cauchy kernel keeps the result monotone with no seam at the grid edge.
  const size_t m = x.size();
  const double h = (x.back() - x.front()) / static_cast<double>(m - 1);
  double acc = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double weight = (i == 0 || i + 1 == m) ? 0.5 * h : h;
    acc += weight * density[i] * (0.5 + std::atan((point - x[i]) / eta) / M_PI);
  }
  return acc;
}

FreeConvolutionTable normal_semicircle_free_convolution(double eta, int grid_points,
                                                        double lo, double hi) {
  if (!(eta > 0.0)) throw ParamError("eta must be positive");
  if (grid_points < 2) throw ParamError("need at least two grid points");
  if (!(lo < hi)) throw ParamError("grid interval is empty");

  FreeConvolutionTable tab;
  tab.eta = eta;
  tab.x.resize(static_cast<size_t>(grid_points));
  tab.density.resize(static_cast<size_t>(grid_points));
  tab.cdf.resize(static_cast<size_t>(grid_points));

  const double step = (hi - lo) / (grid_points - 1);
  cplx omega1(lo, eta);
  for (int i = 0; i < grid_points; ++i) {
    const double xi = lo + i * step;
    tab.x[static_cast<size_t>(i)] = xi;
    const cplx z(xi, eta);
    if (i == 0) omega1 = z;
    bool converged = false;
    for (int it = 0; it < 2000; ++it) {
      const cplx omega2 = z + h_gaussian(omega1);
      const cplx next = z + h_semicircle(omega2);
      const double change = std::abs(next - omega1);
      omega1 = next;
      if (change <= 1e-10 * std::max(1.0, std::abs(next))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("free convolution fixed point stalled at grid point x = " +
                           fmt17(xi));
    const cplx g = gaussian_cauchy_transform(omega1);
    tab.density[static_cast<size_t>(i)] = std::max(0.0, -g.imag() / M_PI);
  }

  tab.cdf[0] = 0.0;
  for (int i = 1; i < grid_points; ++i)
    tab.cdf[static_cast<size_t>(i)] =
        tab.cdf[static_cast<size_t>(i - 1)] +
        0.5 * step *
            (tab.density[static_cast<size_t>(i - 1)] + tab.density[static_cast<size_t>(i)]);
  return tab;
}

}  // namespace gspf
