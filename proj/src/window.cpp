#include "gspf/window.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "gspf/errors.hpp"

namespace gspf {

namespace {

double alt_sum(const std::vector<double>& a) {
  double even = 0.0, odd = 0.0;
  for (size_t k = 0; k < a.size(); ++k) (k % 2 == 0 ? even : odd) += a[k];
  return even - odd;
}

}  // namespace

CosineWindow::CosineWindow(std::vector<double> coeffs) : a_(std::move(coeffs)) {
  if (a_.empty()) throw ParamError("cosine window needs at least one coefficient");
  double scale = 0.0;
  for (double c : a_) scale += std::abs(c);
  if (scale == 0.0) throw ParamError("cosine window coefficients are all zero");
  double r = alt_sum(a_);
  if (std::abs(r) > 1e-12 * scale)
    throw ParamError("cosine window violates the continuity constraint "
                     "(alternating coefficient sum must vanish)");
  for (int pass = 0; pass < 4 && r != 0.0; ++pass) {
    a_[0] -= r;
    r = alt_sum(a_);
  }
}

double CosineWindow::operator()(double t) const {
  if (!(t >= 0.0 && t < 1.0)) return 0.0;
  const double u = 2.0 * std::numbers::pi * (t - 0.5);
  double s = 0.0;
  for (size_t k = 0; k < a_.size(); ++k) s += a_[k] * std::cos(static_cast<double>(k) * u);
  return s;
}

double CosineWindow::alternating_sum() const { return alt_sum(a_); }

CosineWindow make_hann() { return CosineWindow({0.5, 0.5}); }

CosineWindow make_blackman() { return CosineWindow({0.42, 0.5, 0.08}); }

double translate_constant(const CosineWindow& w, int R) {
  const auto& a = w.coeffs();
  double tail = 0.0;
  for (size_t k = 1; k < a.size(); ++k) tail += a[k] * a[k];
  return R * a[0] * a[0] + 0.5 * R * tail;
}

double translate_identity_check(const CosineWindow& w, int R) {
  if (R <= 2 * w.terms())
    throw ParamError("translate identity needs R > 2K (got R = " + std::to_string(R) +
                     ", K = " + std::to_string(w.terms()) + ")");
  const int grid = 4001;
  double lo = 0.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / grid;
    double g = 0.0;
    for (int m = -R; m <= R; ++m) {
      const double q = w(t - static_cast<double>(m) / R);
      g += q * q;
    }
    if (i == 0) {
      lo = hi = g;
    } else {
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    sum += g;
  }
  const double mean = sum / grid;
  if (hi - lo > 1e-12 * std::max(1.0, hi))
    throw NumericalError("translate squares failed to sum to a constant");
  return mean;
}

}  // namespace gspf
