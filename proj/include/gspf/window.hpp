#pragma once

#include <vector>

namespace gspf {

// Cosine-sum window q(t) = sum_k a_k cos(2*pi*k*(t - 1/2)) on [0, 1), zero
// elsewhere. Continuity at the support edges requires the alternating
// coefficient sum to vanish; construction validates and repairs it.
class CosineWindow {
 public:
  explicit CosineWindow(std::vector<double> coeffs);

  int terms() const { return static_cast<int>(a_.size()) - 1; }  // K
  const std::vector<double>& coeffs() const { return a_; }
  double operator()(double t) const;

  // sum_k (-1)^k a_k, grouped as (even terms) - (odd terms) so that the
  // stock windows cancel exactly in binary arithmetic.
  double alternating_sum() const;

 private:
  std::vector<double> a_;
};

CosineWindow make_hann();
CosineWindow make_blackman();

// R a_0^2 + (R/2) sum_{k>=1} a_k^2: the constant value of
// sum_m |q(t - m/R)|^2 when R > 2K.
double translate_constant(const CosineWindow& w, int R);

// Evaluates sum_m |q(t - m/R)|^2 on a dense t-grid, checks flatness to
// 1e-12 relative, and returns the measured constant.
double translate_identity_check(const CosineWindow& w, int R);

}  // namespace gspf
