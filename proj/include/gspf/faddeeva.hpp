#pragma once

#include <complex>

namespace gspf {

// w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0, via a 64-term rational
// expansion. Relative accuracy is near machine precision on the closed
// upper half plane.
std::complex<double> faddeeva_w(std::complex<double> z);

// Cauchy transform of the standard normal law, G(z) = E[1/(z - X)],
// valid for Im(z) > 0.
std::complex<double> gaussian_cauchy_transform(std::complex<double> z);

}  // namespace gspf
