#include "gspf/faddeeva.hpp"

#include <cmath>
#include <vector>

namespace gspf {
namespace {

// Weideman's rational expansion: sample exp(-t^2)(L^2+t^2) on the tangent
// grid, take the real DFT, and keep the first N nonconstant coefficients.
constexpr int kTerms = 64;

std::vector<double> weideman_coefficients() {
  const int m = 2 * kTerms;
  const int m2 = 2 * m;
  const double ell = std::sqrt(kTerms / std::sqrt(2.0));
  std::vector<double> v(m2, 0.0);
  for (int k = -m + 1; k <= m - 1; ++k) {
    const double theta = k * M_PI / m;
    const double t = ell * std::tan(0.5 * theta);
    v[static_cast<size_t>(k + m)] = std::exp(-t * t) * (ell * ell + t * t);
  }
  // fftshift then real part of the forward DFT, frequencies 1..N.
  std::vector<double> a(static_cast<size_t>(kTerms) + 1, 0.0);
  for (int freq = 1; freq <= kTerms; ++freq) {
    double acc = 0.0;
    for (int j = 0; j < m2; ++j) {
      const int src = (j + m) % m2;
      acc += v[static_cast<size_t>(src)] * std::cos(2.0 * M_PI * j * freq / m2);
    }
    a[static_cast<size_t>(freq)] = acc / m2;
  }
  return a;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  static const std::vector<double> a = weideman_coefficients();
  static const double ell = std::sqrt(kTerms / std::sqrt(2.0));
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> den = ell - iz;
  const std::complex<double> big_z = (ell + iz) / den;
  std::complex<double> p(a[kTerms], 0.0);
  for (int mdx = kTerms - 1; mdx >= 1; --mdx) p = p * big_z + a[static_cast<size_t>(mdx)];
  return 2.0 * p / (den * den) + (1.0 / std::sqrt(M_PI)) / den;
}

std::complex<double> gaussian_cauchy_transform(std::complex<double> z) {
  const std::complex<double> w = faddeeva_w(z / std::sqrt(2.0));
  return std::complex<double>(0.0, -1.0) * std::sqrt(M_PI / 2.0) * w;
}

}  // namespace gspf
