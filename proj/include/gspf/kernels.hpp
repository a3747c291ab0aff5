#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gspf/sparse.hpp"
#include "gspf/warping.hpp"
#include "gspf/window.hpp"

namespace gspf {

class KernelNode {
 public:
  virtual ~KernelNode() = default;
  virtual double eval(double lambda) const = 0;
  virtual const char* tag() const = 0;
};

// Immutable spectral kernel: a composition tree over cosine-sum windows,
// warps, scaling complements, and Chebyshev approximants. Evaluation is
// pure; copies share nodes.
class Kernel {
 public:
  Kernel();  // identically zero
  explicit Kernel(std::shared_ptr<const KernelNode> node) : node_(std::move(node)) {}

  double operator()(double lambda) const { return node_->eval(lambda); }
  const char* tag() const { return node_->tag(); }
  const std::shared_ptr<const KernelNode>& node() const { return node_; }

 private:
  std::shared_ptr<const KernelNode> node_;
};

double eval_kernel(const Kernel& kernel, double lambda);

// q(scale * (lambda - center) + 1): the window's [0,1) support becomes
// [center - 1/scale, center).
Kernel cosine_base_kernel(const CosineWindow& window, double center, double scale);

Kernel warped_kernel(const Kernel& base, const WarpingFunction& warp);

// base(log(lambda)), hard zero below eps.
Kernel log_floor_kernel(const Kernel& base, double eps);

Kernel scaled_kernel(const Kernel& base, double factor);

// Bandpass shape for octave tilings: rises from 0 to amplitude over
// [rise_edge, 2*rise_edge], falls back to 0 over [fall_edge, 2*fall_edge];
// an edge of zero pins that side at amplitude. One band's fall and the next
// band's rise over a shared zone square-sum to amplitude^2.
Kernel octave_band_kernel(double rise_edge, double fall_edge, double amplitude);

// sqrt(frame_constant - sum of squared members), radicand clamped at zero.
// Construction samples [check_lo, check_hi] and refuses radicands below
// -1e-9 * frame_constant: the members then exceed the frame constant and
// the bank is mis-specified.
Kernel scaling_complement_kernel(std::vector<Kernel> members, double frame_constant,
                                 double check_lo, double check_hi);

// Chebyshev series of the kernel on [lo, hi] by collocation at order+1
// Chebyshev points, stored with the leading coefficient doubled (evaluation
// halves it). Evaluable pointwise and as a matrix polynomial.
Kernel chebyshev_fit(const Kernel& kernel, double lo, double hi, int order);

// kernel(A) f for a ChebyshevApprox kernel, through the three-term
// recurrence on the interval-shifted operator; one spmv per degree.
std::vector<double> apply_chebyshev(const Kernel& cheb, const SparseSym& a,
                                    const std::vector<double>& f);

// custom marks hand-assembled banks (the baseline stand-ins); they carry no
// rebuild recipe and cannot be serialized.
enum class BankKind { uniform, warped, log_wavelet, adapted_wavelet, custom };

struct FilterBank {
  std::vector<Kernel> kernels;
  double lambda_upper = 0.0;
  double frame_constant = 0.0;

  // Construction recipe: enough to rebuild the bank deterministically,
  // which is how serialization round-trips table-backed warps bit-exactly.
  BankKind kind = BankKind::uniform;
  std::vector<double> window_coeffs;
  int overlap = 0;  // R
  double gamma = 0.0;
  double eps = 0.0;
  std::string warp_descriptor = "identity";

  int size() const { return static_cast<int>(kernels.size()); }
  // G(lambda), the sum of squared kernel responses.
  double response(double lambda) const;
};

// M translates of the window over [0, gamma] with overlap R; the squared
// responses sum to translate_constant(window, R) everywhere on [0, gamma].
FilterBank uniform_translates(const CosineWindow& window, double gamma, int m_filters,
                              int overlap);

// Pullback of a uniform bank through a warp mapping [0, lambda_upper] into
// [0, gamma]; the range condition is checked at the endpoints and on a grid.
FilterBank warp_bank(const FilterBank& bank, const WarpingFunction& warp,
                     double lambda_upper);

// M kernels on [0, lambda_max]: M-1 translates pulled back through log
// (zero below eps, default lambda_max * 1e-4) plus a scaling complement
// that restores the constant below the lowest wavelet.
FilterBank log_wavelet_bank(const CosineWindow& window, double lambda_max, int m_filters,
                            int overlap, double eps = 0.0);

// Wavelet bank warped to a spectral estimate: translates pulled back
// through log(warp0(lambda)). warp0 must fix lambda_upper (normalized) and
// be nondecreasing; warp0 = identity reproduces log_wavelet_bank.
FilterBank spectrum_adapted_wavelet_bank(const CosineWindow& window,
                                         const WarpingFunction& warp0,
                                         double lambda_upper, int m_filters, int overlap,
                                         double eps = 0.0);

// Line-oriented text format: window coefficients, M, R, gamma,
// lambda_upper, eps, warp descriptor, and per-kernel type tags. Loading
// rebuilds the bank from the recipe and cross-checks the tags.
void save_bank(const std::string& path, const FilterBank& bank);
FilterBank load_bank(const std::string& path);

}  // namespace gspf
