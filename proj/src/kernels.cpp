#include "gspf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "gspf/csvio.hpp"
#include "gspf/errors.hpp"

namespace gspf {

namespace {

class ZeroNode final : public KernelNode {
 public:
  double eval(double) const override { return 0.0; }
  const char* tag() const override { return "zero"; }
};

class CosineBaseNode final : public KernelNode {
 public:
  CosineBaseNode(CosineWindow window, double center, double scale)
      : window_(std::move(window)), center_(center), scale_(scale) {}

  double eval(double lambda) const override {
    return window_(scale_ * (lambda - center_) + 1.0);
  }
  const char* tag() const override { return "cosine-base"; }

 private:
  CosineWindow window_;
  double center_;
  double scale_;
};

class WarpedNode final : public KernelNode {
 public:
  WarpedNode(Kernel base, WarpingFunction warp)
      : base_(std::move(base)), warp_(std::move(warp)) {}

  double eval(double lambda) const override { return base_(warp_(lambda)); }
  const char* tag() const override { return "warped"; }

 private:
  Kernel base_;
  WarpingFunction warp_;
};

class LogFloorNode final : public KernelNode {
 public:
  LogFloorNode(Kernel base, double eps) : base_(std::move(base)), eps_(eps) {}

  double eval(double lambda) const override {
    if (lambda < eps_) return 0.0;
    return base_(std::log(lambda));
  }
  const char* tag() const override { return "log-warped"; }

 private:
  Kernel base_;
  double eps_;
};

class OctaveBandNode final : public KernelNode {
 public:
  OctaveBandNode(double rise_edge, double fall_edge, double amplitude)
      : rise_(rise_edge), fall_(fall_edge), amp_(amplitude) {}

  double eval(double lambda) const override {
    return amp_ * edge_factor(lambda, rise_, false) * edge_factor(lambda, fall_, true);
  }
  const char* tag() const override { return "octave-band"; }

 private:
  // Smoothstep-graded quarter turn: the rising and falling factors over one
  // shared zone [edge, 2*edge] square-sum to one.
  static double edge_factor(double lambda, double edge, bool falling) {
    if (edge == 0.0) return 1.0;
    const double x = lambda / edge - 1.0;
    if (x <= 0.0) return falling ? 1.0 : 0.0;
    if (x >= 1.0) return falling ? 0.0 : 1.0;
    const double turn = 0.5 * std::numbers::pi * (x * x * (3.0 - 2.0 * x));
    return falling ? std::cos(turn) : std::sin(turn);
  }

  double rise_;
  double fall_;
  double amp_;
};

class ScalingComplementNode final : public KernelNode {
 public:
  ScalingComplementNode(std::vector<Kernel> members, double frame_constant)
      : members_(std::move(members)), frame_constant_(frame_constant) {}

  double eval(double lambda) const override {
    double sum = 0.0;
    for (const Kernel& k : members_) {
      double v = k(lambda);
      sum += v * v;
    }
    // Rounding can push the member sum a few ulp past the constant where the
    // complement vanishes; clamping keeps the radicand admissible.
    return std::sqrt(std::max(0.0, frame_constant_ - sum));
  }
  const char* tag() const override { return "scaling-complement"; }

 private:
  std::vector<Kernel> members_;
  double frame_constant_;
};

class ScaledNode final : public KernelNode {
 public:
  ScaledNode(Kernel base, double factor) : base_(std::move(base)), factor_(factor) {}

  double eval(double lambda) const override { return factor_ * base_(lambda); }
  const char* tag() const override { return "scaled"; }

 private:
  Kernel base_;
  double factor_;
};

class ChebyshevApproxNode final : public KernelNode {
 public:
  ChebyshevApproxNode(std::vector<double> coeffs, double lo, double hi)
      : coeffs_(std::move(coeffs)), lo_(lo), hi_(hi) {}

  double eval(double lambda) const override {
    double y = (2.0 * lambda - lo_ - hi_) / (hi_ - lo_);
    double b1 = 0.0;
    double b2 = 0.0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 1; --k) {
      double next = 2.0 * y * b1 - b2 + coeffs_[k];
      b2 = b1;
      b1 = next;
    }
    return y * b1 - b2 + 0.5 * coeffs_[0];
  }
  const char* tag() const override { return "chebyshev"; }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  std::vector<double> coeffs_;  // leading entry stored doubled
  double lo_;
  double hi_;
};

std::string fmt_at(double lambda, double value) {
  return " at lambda = " + fmt17(lambda) + " (value " + fmt17(value) + ")";
}

// Translates of the window rescaled so m_filters of them tile [0, gamma]
// with overlap R. Shared by every bank constructor; callers validate.
std::vector<Kernel> translate_layer(const CosineWindow& window, double gamma,
                                    int m_filters, int overlap) {
  double denom = static_cast<double>(m_filters + 1 - overlap);
  double scale = denom / (overlap * gamma);
  std::vector<Kernel> kernels;
  kernels.reserve(m_filters);
  for (int m = 1; m <= m_filters; ++m) {
    double center = m * gamma / denom;
    kernels.push_back(cosine_base_kernel(window, center, scale));
  }
  return kernels;
}

void check_translate_params(const char* op, const char* m_name, const CosineWindow& window,
                            double gamma, int m_filters, int overlap) {
  if (!(gamma > 0.0))
    throw ParamError(std::string(op) + " requires gamma > 0; got gamma = " + fmt17(gamma));
  if (!(overlap > 2))
    throw ParamError(std::string(op) + " requires 2 < R <= " + std::string(m_name) +
                     "; got R = " + std::to_string(overlap));
  if (!(overlap <= m_filters))
    throw ParamError(std::string(op) + " requires 2 < R <= " + std::string(m_name) +
                     "; got R = " + std::to_string(overlap) + " against " +
                     std::string(m_name) + " = " + std::to_string(m_filters));
  if (!(window.terms() * 2 < overlap))
    throw ParamError(std::string(op) + " requires K < R/2; got K = " +
                     std::to_string(window.terms()) + ", R = " + std::to_string(overlap));
}

double resolve_eps(const char* op, double eps, double lambda_upper) {
  if (eps == 0.0) return lambda_upper * 1e-4;
  if (!(eps > 0.0))
    throw ParamError(std::string(op) + " requires eps > 0; got eps = " + fmt17(eps));
  if (!(eps < lambda_upper))
    throw ParamError(std::string(op) + " requires eps < lambda_upper; got eps = " +
                     fmt17(eps) + ", lambda_upper = " + fmt17(lambda_upper));
  return eps;
}

}  // namespace

Kernel::Kernel() : node_(std::make_shared<ZeroNode>()) {}

double eval_kernel(const Kernel& kernel, double lambda) { return kernel(lambda); }

Kernel cosine_base_kernel(const CosineWindow& window, double center, double scale) {
  if (!(scale > 0.0))
    throw ParamError("cosine base kernel requires scale > 0; got scale = " + fmt17(scale));
  return Kernel(std::make_shared<CosineBaseNode>(window, center, scale));
}

Kernel warped_kernel(const Kernel& base, const WarpingFunction& warp) {
  return Kernel(std::make_shared<WarpedNode>(base, warp));
}

Kernel log_floor_kernel(const Kernel& base, double eps) {
  if (!(eps > 0.0))
    throw ParamError("log floor kernel requires eps > 0; got eps = " + fmt17(eps));
  return Kernel(std::make_shared<LogFloorNode>(base, eps));
}

Kernel scaled_kernel(const Kernel& base, double factor) {
  return Kernel(std::make_shared<ScaledNode>(base, factor));
}

Kernel octave_band_kernel(double rise_edge, double fall_edge, double amplitude) {
  if (rise_edge < 0.0 || fall_edge < 0.0)
    throw ParamError("octave band requires nonnegative edges; got rise = " +
                     fmt17(rise_edge) + ", fall = " + fmt17(fall_edge));
  if (rise_edge > 0.0 && fall_edge > 0.0 && fall_edge < 2.0 * rise_edge)
    throw ParamError("octave band fall edge starts inside the rise zone: rise = " +
                     fmt17(rise_edge) + ", fall = " + fmt17(fall_edge));
  if (!(amplitude > 0.0))
    throw ParamError("octave band requires amplitude > 0; got " + fmt17(amplitude));
  return Kernel(std::make_shared<OctaveBandNode>(rise_edge, fall_edge, amplitude));
}

Kernel scaling_complement_kernel(std::vector<Kernel> members, double frame_constant,
                                 double check_lo, double check_hi) {
  if (!(frame_constant > 0.0))
    throw ParamError("scaling complement requires a positive frame constant; got " +
                     fmt17(frame_constant));
  if (!(check_hi > check_lo))
    throw ParamError("scaling complement check interval is empty: [" + fmt17(check_lo) +
                     ", " + fmt17(check_hi) + "]");
  const int grid = 1000;
  for (int i = 0; i < grid; ++i) {
    double x = check_lo + (check_hi - check_lo) * i / (grid - 1);
    double sum = 0.0;
    for (const Kernel& k : members) {
      double v = k(x);
      sum += v * v;
    }
    if (frame_constant - sum < -1e-9 * frame_constant)
      throw NumericalError("wavelet kernels exceed the frame constant" + fmt_at(x, sum));
  }
  return Kernel(
      std::make_shared<ScalingComplementNode>(std::move(members), frame_constant));
}

Kernel chebyshev_fit(const Kernel& kernel, double lo, double hi, int order) {
  if (!(order >= 1))
    throw ParamError("chebyshev fit requires order >= 1; got " + std::to_string(order));
  if (!(hi > lo))
    throw ParamError("chebyshev fit interval is empty: [" + fmt17(lo) + ", " + fmt17(hi) +
                     "]");
  const int points = order + 1;
  std::vector<double> samples(points);
  for (int j = 0; j < points; ++j) {
    double x = std::cos(M_PI * (j + 0.5) / points);
    samples[j] = kernel(0.5 * (lo + hi) + 0.5 * (hi - lo) * x);
  }
  std::vector<double> coeffs(points);
  for (int k = 0; k < points; ++k) {
    double acc = 0.0;
    for (int j = 0; j < points; ++j) acc += samples[j] * std::cos(M_PI * k * (j + 0.5) / points);
    coeffs[k] = 2.0 * acc / points;
  }
  return Kernel(std::make_shared<ChebyshevApproxNode>(std::move(coeffs), lo, hi));
}

std::vector<double> apply_chebyshev(const Kernel& cheb, const SparseSym& a,
                                    const std::vector<double>& f) {
  const auto* node = dynamic_cast<const ChebyshevApproxNode*>(cheb.node().get());
  if (node == nullptr)
    throw ParamError("apply_chebyshev needs a chebyshev kernel; got tag '" +
                     std::string(cheb.tag()) + "'");
  if (static_cast<int>(f.size()) != a.n)
    throw ParamError("apply_chebyshev: signal length " + std::to_string(f.size()) +
                     " does not match matrix order " + std::to_string(a.n));
  const std::vector<double>& c = node->coeffs();
  const double lo = node->lo();
  const double hi = node->hi();
  const double alpha = 2.0 / (hi - lo);
  const double beta = (hi + lo) / (hi - lo);
  auto shifted = [&](const std::vector<double>& v) {
    std::vector<double> y = spmv(a, v);
    for (int i = 0; i < a.n; ++i) y[i] = alpha * y[i] - beta * v[i];
    return y;
  };

  std::vector<double> t0 = f;
  std::vector<double> out(a.n);
  for (int i = 0; i < a.n; ++i) out[i] = 0.5 * c[0] * t0[i];
  if (c.size() == 1) return out;

  std::vector<double> t1 = shifted(f);
  for (int i = 0; i < a.n; ++i) out[i] += c[1] * t1[i];
  for (std::size_t k = 2; k < c.size(); ++k) {
    std::vector<double> t2 = shifted(t1);
    for (int i = 0; i < a.n; ++i) {
      t2[i] = 2.0 * t2[i] - t0[i];
      out[i] += c[k] * t2[i];
    }
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return out;
}

double FilterBank::response(double lambda) const {
  double sum = 0.0;
  for (const Kernel& k : kernels) {
    double v = k(lambda);
    sum += v * v;
  }
  return sum;
}

FilterBank uniform_translates(const CosineWindow& window, double gamma, int m_filters,
                              int overlap) {
  check_translate_params("uniform translates", "M", window, gamma, m_filters, overlap);
  FilterBank bank;
  bank.kernels = translate_layer(window, gamma, m_filters, overlap);
  bank.lambda_upper = gamma;
  bank.frame_constant = translate_constant(window, overlap);
  bank.kind = BankKind::uniform;
  bank.window_coeffs = window.coeffs();
  bank.overlap = overlap;
  bank.gamma = gamma;
  return bank;
}

FilterBank warp_bank(const FilterBank& bank, const WarpingFunction& warp,
                     double lambda_upper) {
  if (bank.kind != BankKind::uniform)
    throw ParamError("warp_bank expects a uniform translate bank");
  if (!(lambda_upper > 0.0))
    throw ParamError("warp_bank requires lambda_upper > 0; got " + fmt17(lambda_upper));
  const double tol = 1e-9 * bank.gamma;
  const int grid = 1000;
  for (int i = 0; i < grid; ++i) {
    double x = lambda_upper * i / (grid - 1);
    double v = warp(x);
    if (v < -tol || v > bank.gamma + tol)
      throw ParamError("warp must map [0, lambda_upper] into [0, " + fmt17(bank.gamma) +
                       "]; warp(" + fmt17(x) + ") = " + fmt17(v));
  }
  FilterBank out;
  out.kernels.reserve(bank.kernels.size());
  for (const Kernel& k : bank.kernels) out.kernels.push_back(warped_kernel(k, warp));
  out.lambda_upper = lambda_upper;
  out.frame_constant = bank.frame_constant;
  out.kind = BankKind::warped;
  out.window_coeffs = bank.window_coeffs;
  out.overlap = bank.overlap;
  out.gamma = bank.gamma;
  out.warp_descriptor = warp.descriptor();
  return out;
}

FilterBank log_wavelet_bank(const CosineWindow& window, double lambda_max, int m_filters,
                            int overlap, double eps) {
  if (!(lambda_max > 1.0))
    throw ParamError("log wavelet bank requires lambda_max > 1; got " + fmt17(lambda_max));
  double gamma = std::log(lambda_max);
  check_translate_params("log wavelet bank", "M - 1", window, gamma, m_filters - 1, overlap);
  eps = resolve_eps("log wavelet bank", eps, lambda_max);

  FilterBank bank;
  std::vector<Kernel> translates = translate_layer(window, gamma, m_filters - 1, overlap);
  std::vector<Kernel> wavelets;
  wavelets.reserve(translates.size());
  for (const Kernel& t : translates) wavelets.push_back(log_floor_kernel(t, eps));
  double constant = translate_constant(window, overlap);
  bank.kernels.push_back(
      scaling_complement_kernel(wavelets, constant, 0.0, lambda_max));
  for (Kernel& w : wavelets) bank.kernels.push_back(std::move(w));
  bank.lambda_upper = lambda_max;
  bank.frame_constant = constant;
  bank.kind = BankKind::log_wavelet;
  bank.window_coeffs = window.coeffs();
  bank.overlap = overlap;
  bank.gamma = gamma;
  bank.eps = eps;
  return bank;
}

FilterBank spectrum_adapted_wavelet_bank(const CosineWindow& window,
                                         const WarpingFunction& warp0,
                                         double lambda_upper, int m_filters, int overlap,
                                         double eps) {
  if (!(lambda_upper > 1.0))
    throw ParamError("adapted wavelet bank requires lambda_upper > 1; got " +
                     fmt17(lambda_upper));
  double gamma = std::log(lambda_upper);
  check_translate_params("adapted wavelet bank", "M - 1", window, gamma, m_filters - 1,
                         overlap);
  eps = resolve_eps("adapted wavelet bank", eps, lambda_upper);
  double at_top = warp0(lambda_upper);
  if (std::abs(at_top - lambda_upper) > 1e-9 * lambda_upper)
    throw ParamError("adapted wavelet bank requires warp0(lambda_upper) = lambda_upper; got " +
                     fmt17(at_top) + " against " + fmt17(lambda_upper));
  // Interpolated warps can wobble by a few ulps inside flat CDF regions, so
  // decreases are measured against the running maximum with a relative slack.
  const int grid = 1000;
  const double slack = 1e-12 * lambda_upper;
  double running_max = warp0(0.0);
  for (int i = 1; i < grid; ++i) {
    double x = lambda_upper * i / (grid - 1);
    double v = warp0(x);
    if (v < running_max - slack)
      throw ParamError("adapted wavelet bank requires a nondecreasing warp; warp0(" +
                       fmt17(x) + ") = " + fmt17(v) + " drops below " + fmt17(running_max));
    running_max = std::max(running_max, v);
  }

  FilterBank bank;
  std::vector<Kernel> translates = translate_layer(window, gamma, m_filters - 1, overlap);
  std::vector<Kernel> wavelets;
  wavelets.reserve(translates.size());
  for (const Kernel& t : translates)
    wavelets.push_back(warped_kernel(log_floor_kernel(t, eps), warp0));
  double constant = translate_constant(window, overlap);
  bank.kernels.push_back(
      scaling_complement_kernel(wavelets, constant, 0.0, lambda_upper));
  for (Kernel& w : wavelets) bank.kernels.push_back(std::move(w));
  bank.lambda_upper = lambda_upper;
  bank.frame_constant = constant;
  bank.kind = BankKind::adapted_wavelet;
  bank.window_coeffs = window.coeffs();
  bank.overlap = overlap;
  bank.gamma = gamma;
  bank.eps = eps;
  bank.warp_descriptor = warp0.descriptor();
  return bank;
}

namespace {

const char* kind_name(BankKind kind) {
  switch (kind) {
    case BankKind::uniform: return "uniform";
    case BankKind::warped: return "warped";
    case BankKind::log_wavelet: return "log-wavelet";
    case BankKind::adapted_wavelet: return "adapted-wavelet";
    case BankKind::custom: return "custom";
  }
  return "uniform";
}

BankKind kind_from_name(const std::string& name) {
  if (name == "uniform") return BankKind::uniform;
  if (name == "warped") return BankKind::warped;
  if (name == "log-wavelet") return BankKind::log_wavelet;
  if (name == "adapted-wavelet") return BankKind::adapted_wavelet;
  throw DataError("bank file: unknown kind '" + name + "'");
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size())
    throw DataError("bank file: bad number '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end != begin + tok.size())
    throw DataError("bank file: bad integer '" + tok + "'");
  return static_cast<int>(v);
}

// The file stores one "key values..." line per field; order is fixed.
std::vector<std::string> field_line(const std::vector<std::string>& lines, std::size_t index,
                                    const std::string& key) {
  if (index >= lines.size())
    throw DataError("bank file: missing '" + key + "' line");
  std::vector<std::string> tokens = split_tokens(lines[index]);
  if (tokens.empty() || tokens[0] != key)
    throw DataError("bank file: expected '" + key + "' on line " +
                    std::to_string(index + 1));
  tokens.erase(tokens.begin());
  return tokens;
}

}  // namespace

void save_bank(const std::string& path, const FilterBank& bank) {
  if (bank.kind == BankKind::custom)
    throw ParamError("custom banks carry no rebuild recipe and cannot be saved");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "gspf-bank v1\n";
  out << "kind " << kind_name(bank.kind) << "\n";
  out << "window";
  for (double a : bank.window_coeffs) out << ' ' << fmt17(a);
  out << "\n";
  out << "M " << bank.size() << "\n";
  out << "R " << bank.overlap << "\n";
  out << "gamma " << fmt17(bank.gamma) << "\n";
  out << "lambda_upper " << fmt17(bank.lambda_upper) << "\n";
  out << "eps " << fmt17(bank.eps) << "\n";
  out << "warp " << bank.warp_descriptor << "\n";
  out << "kernels";
  for (const Kernel& k : bank.kernels) out << ' ' << k.tag();
  out << "\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

FilterBank load_bank(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.empty() || lines[0] != "gspf-bank v1")
    throw DataError("bank file: missing 'gspf-bank v1' header");

  BankKind kind = [&] {
    std::vector<std::string> t = field_line(lines, 1, "kind");
    if (t.size() != 1) throw DataError("bank file: kind takes one value");
    return kind_from_name(t[0]);
  }();
  std::vector<std::string> window_tokens = field_line(lines, 2, "window");
  std::vector<double> window_coeffs;
  window_coeffs.reserve(window_tokens.size());
  for (const std::string& t : window_tokens) window_coeffs.push_back(parse_double(t));
  auto scalar = [&](std::size_t index, const char* key) {
    std::vector<std::string> t = field_line(lines, index, key);
    if (t.size() != 1)
      throw DataError("bank file: '" + std::string(key) + "' takes one value");
    return t[0];
  };
  int m_filters = parse_int(scalar(3, "M"));
  int overlap = parse_int(scalar(4, "R"));
  double gamma = parse_double(scalar(5, "gamma"));
  double lambda_upper = parse_double(scalar(6, "lambda_upper"));
  double eps = parse_double(scalar(7, "eps"));
  std::vector<std::string> warp_tokens = field_line(lines, 8, "warp");
  std::string warp_descriptor;
  for (std::size_t i = 0; i < warp_tokens.size(); ++i) {
    if (i > 0) warp_descriptor += ' ';
    warp_descriptor += warp_tokens[i];
  }
  std::vector<std::string> tags = field_line(lines, 9, "kernels");

  FilterBank bank;
  try {
    CosineWindow window{window_coeffs};
    switch (kind) {
      case BankKind::uniform:
        bank = uniform_translates(window, gamma, m_filters, overlap);
        break;
      case BankKind::warped:
        bank = warp_bank(uniform_translates(window, gamma, m_filters, overlap),
                         WarpingFunction::from_descriptor(warp_descriptor), lambda_upper);
        break;
      case BankKind::log_wavelet:
        bank = log_wavelet_bank(window, lambda_upper, m_filters, overlap, eps);
        break;
      case BankKind::adapted_wavelet:
        bank = spectrum_adapted_wavelet_bank(
            window, WarpingFunction::from_descriptor(warp_descriptor), lambda_upper,
            m_filters, overlap, eps);
        break;
      case BankKind::custom:
        throw DataError("bank file: custom banks carry no rebuild recipe");
    }
  } catch (const ParamError& e) {
    throw DataError("bank file: recipe does not rebuild: " + std::string(e.what()));
  }
  if (tags.size() != bank.kernels.size())
    throw DataError("bank file: " + std::to_string(tags.size()) + " kernel tags for " +
                    std::to_string(bank.kernels.size()) + " kernels");
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] != bank.kernels[i].tag())
      throw DataError("bank file: kernel " + std::to_string(i + 1) + " tag '" + tags[i] +
                      "' does not match rebuilt '" + bank.kernels[i].tag() + "'");
  }
  return bank;
}

}  // namespace gspf
