#include "gspf/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blas_decl.hpp"
#include "gspf/errors.hpp"
#include "gspf/window.hpp"

namespace gspf {

namespace {

std::vector<double> gemv(const DenseMatrix& a, const std::vector<double>& x, char trans,
                         double alpha = 1.0) {
  const int m = a.rows();
  const int n = a.cols();
  std::vector<double> y(trans == 'N' ? m : n, 0.0);
  if (m == 0 || n == 0) return y;
  const int one = 1;
  const double beta = 0.0;
  dgemv_(&trans, &m, &n, &alpha, a.data(), &m, x.data(), &one, &beta, y.data(), &one);
  return y;
}

// c = alpha * op(a) * op(b); op per transa/transb ('N' or 'T').
DenseMatrix gemm(const DenseMatrix& a, const DenseMatrix& b, char transa, char transb,
                 double alpha = 1.0) {
  const int m = transa == 'N' ? a.rows() : a.cols();
  const int k = transa == 'N' ? a.cols() : a.rows();
  const int n = transb == 'N' ? b.cols() : b.rows();
  DenseMatrix c(m, n);
  if (m == 0 || n == 0 || k == 0) return c;
  const double beta = 0.0;
  const int lda = a.rows();
  const int ldb = b.rows();
  dgemm_(&transa, &transb, &m, &n, &k, &alpha, a.data(), &lda, b.data(), &ldb, &beta,
         c.data(), &m);
  return c;
}

std::vector<double> kernel_on_spectrum(const EigenDecomposition& eig, const Kernel& kernel) {
  std::vector<double> d(eig.eigenvalues.size());
  for (std::size_t l = 0; l < d.size(); ++l) d[l] = kernel(eig.eigenvalues[l]);
  return d;
}

void check_signal(const EigenDecomposition& eig, const Signal& f, const char* op) {
  if (f.n() != eig.n())
    throw ParamError(std::string(op) + ": signal length " + std::to_string(f.n()) +
                     " does not match graph size " + std::to_string(eig.n()));
}

// Atoms for every (vertex, filter) pair as columns, filter-major. Column
// m*N + i holds sqrt(N) g_m(L) delta_i.
DenseMatrix materialize_atoms(const EigenDecomposition& eig, const FilterBank& bank) {
  const int n = eig.n();
  const int m_filters = bank.size();
  DenseMatrix atoms(n, n * m_filters);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int m = 0; m < m_filters; ++m) {
    const std::vector<double> d = kernel_on_spectrum(eig, bank.kernels[m]);
    DenseMatrix scaled = eig.eigenvectors;
    for (int l = 0; l < n; ++l) {
      double* col = scaled.col(l);
      for (int i = 0; i < n; ++i) col[i] *= d[l];
    }
    const DenseMatrix block = gemm(scaled, eig.eigenvectors, 'N', 'T', root_n);
    for (int i = 0; i < n; ++i) {
      const double* src = block.col(i);
      double* dst = atoms.col(m * n + i);
      std::copy(src, src + n, dst);
    }
  }
  return atoms;
}

constexpr int kCoherenceCap = 20000;

struct CoherencePack {
  bool applicable = true;
  int zero_norm_atoms = 0;
  std::map<int, double> values;
};

CoherencePack coherence_values(const EigenDecomposition& eig, const FilterBank& bank,
                               const std::vector<int>& ks) {
  const int n = eig.n();
  const long total = static_cast<long>(n) * bank.size();
  if (total > kCoherenceCap)
    throw ParamError("cumulative coherence materializes all N*M atoms; N*M = " +
                     std::to_string(total) + " exceeds the cap " +
                     std::to_string(kCoherenceCap));
  if (total < 2) throw ParamError("cumulative coherence needs at least two atoms");
  int kmax = 0;
  for (int k : ks) {
    if (k < 1 || k >= total)
      throw ParamError("cumulative coherence needs 1 <= k < N*M; got k = " +
                       std::to_string(k) + " with N*M = " + std::to_string(total));
    kmax = std::max(kmax, k);
  }

  DenseMatrix atoms = materialize_atoms(eig, bank);
  const int nm = static_cast<int>(total);
  std::vector<double> norms(nm);
  double max_norm = 0.0;
  for (int p = 0; p < nm; ++p) {
    const double* col = atoms.col(p);
    double sq = 0.0;
    for (int i = 0; i < n; ++i) sq += col[i] * col[i];
    norms[p] = std::sqrt(sq);
    max_norm = std::max(max_norm, norms[p]);
  }
  CoherencePack pack;
  for (int p = 0; p < nm; ++p)
    if (norms[p] <= 1e-9 * max_norm) ++pack.zero_norm_atoms;
  if (pack.zero_norm_atoms > 0) {
    pack.applicable = false;
    return pack;
  }
  for (int p = 0; p < nm; ++p) {
    double* col = atoms.col(p);
    for (int i = 0; i < n; ++i) col[i] /= norms[p];
  }

  std::map<int, double> best;
  for (int k : ks) best[k] = 0.0;
  const int chunk = 512;
  std::vector<double> row(nm);
  std::vector<double> prefix(kmax + 1, 0.0);
  for (int c0 = 0; c0 < nm; c0 += chunk) {
    const int width = std::min(chunk, nm - c0);
    DenseMatrix part(n, width);
    for (int j = 0; j < width; ++j) {
      const double* src = atoms.col(c0 + j);
      std::copy(src, src + n, part.col(j));
    }
    const DenseMatrix gram = gemm(atoms, part, 'T', 'N');
    for (int j = 0; j < width; ++j) {
      const int self = c0 + j;
      const double* col = gram.col(j);
      int count = 0;
      for (int q = 0; q < nm; ++q) {
        if (q == self) continue;
        row[count++] = std::min(std::abs(col[q]), 1.0);
      }
      std::partial_sort(row.begin(), row.begin() + kmax, row.begin() + count,
                        std::greater<double>());
      for (int t = 0; t < kmax; ++t) prefix[t + 1] = prefix[t] + row[t];
      for (auto& [k, value] : best) value = std::max(value, prefix[k]);
    }
  }
  pack.values = std::move(best);
  return pack;
}

}  // namespace

Signal filter_signal(const EigenDecomposition& eig, const Kernel& kernel, const Signal& f) {
  check_signal(eig, f, "filter_signal");
  std::vector<double> fhat = gemv(eig.eigenvectors, f.values, 'T');
  const std::vector<double> d = kernel_on_spectrum(eig, kernel);
  for (int l = 0; l < eig.n(); ++l) fhat[l] *= d[l];
  return Signal{gemv(eig.eigenvectors, fhat, 'N')};
}

Signal translate_atom(const EigenDecomposition& eig, const Kernel& kernel, int vertex) {
  const int n = eig.n();
  if (vertex < 0 || vertex >= n)
    throw ParamError("translate_atom: vertex " + std::to_string(vertex) +
                     " outside [0, " + std::to_string(n) + ")");
  const std::vector<double> d = kernel_on_spectrum(eig, kernel);
  std::vector<double> w(n);
  for (int l = 0; l < n; ++l) w[l] = d[l] * eig.eigenvectors(vertex, l);
  return Signal{gemv(eig.eigenvectors, w, 'N', std::sqrt(static_cast<double>(n)))};
}

DenseMatrix analyze(const EigenDecomposition& eig, const FilterBank& bank, const Signal& f) {
  check_signal(eig, f, "analyze");
  const int n = eig.n();
  const int m_filters = bank.size();
  if (m_filters == 0) return DenseMatrix(n, 0);
  const std::vector<double> fhat = gemv(eig.eigenvectors, f.values, 'T');
  DenseMatrix chat(n, m_filters);
  for (int m = 0; m < m_filters; ++m) {
    const std::vector<double> d = kernel_on_spectrum(eig, bank.kernels[m]);
    double* col = chat.col(m);
    for (int l = 0; l < n; ++l) col[l] = d[l] * fhat[l];
  }
  return gemm(eig.eigenvectors, chat, 'N', 'N', std::sqrt(static_cast<double>(n)));
}

Signal synthesize(const EigenDecomposition& eig, const FilterBank& bank,
                  const DenseMatrix& coefficients) {
  const int n = eig.n();
  const int m_filters = bank.size();
  if (coefficients.rows() != n || coefficients.cols() != m_filters)
    throw ParamError("synthesize: coefficient matrix is " +
                     std::to_string(coefficients.rows()) + "x" +
                     std::to_string(coefficients.cols()) + ", expected " +
                     std::to_string(n) + "x" + std::to_string(m_filters));
  const FrameBounds bounds = frame_bounds(eig, bank);
  if (!(bounds.a > 0.0))
    throw NumericalError("synthesize: lower frame bound is zero on this spectrum");
  const DenseMatrix chat = gemm(eig.eigenvectors, coefficients, 'T', 'N');
  std::vector<double> shat(n, 0.0);
  for (int m = 0; m < m_filters; ++m) {
    const std::vector<double> d = kernel_on_spectrum(eig, bank.kernels[m]);
    const double* col = chat.col(m);
    for (int l = 0; l < n; ++l) shat[l] += d[l] * col[l];
  }
  const double alpha = std::sqrt(static_cast<double>(n)) / bounds.a;
  return Signal{gemv(eig.eigenvectors, shat, 'N', alpha)};
}

FrameBounds frame_bounds(const EigenDecomposition& eig, const FilterBank& bank) {
  const int n = eig.n();
  FrameBounds bounds;
  if (n == 0) return bounds;
  double lo = bank.response(eig.eigenvalues[0]);
  double hi = lo;
  for (int l = 1; l < n; ++l) {
    const double g = bank.response(eig.eigenvalues[l]);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  bounds.a = n * lo;
  bounds.b = n * hi;
  return bounds;
}

AtomNormStats atom_norm_stats(const EigenDecomposition& eig, const FilterBank& bank) {
  const int n = eig.n();
  const int m_filters = bank.size();
  AtomNormStats stats;
  stats.norms.reserve(static_cast<std::size_t>(n) * m_filters);
  DenseMatrix usq = eig.eigenvectors;
  for (int l = 0; l < n; ++l) {
    double* col = usq.col(l);
    for (int i = 0; i < n; ++i) col[i] *= col[i];
  }
  for (int m = 0; m < m_filters; ++m) {
    std::vector<double> w = kernel_on_spectrum(eig, bank.kernels[m]);
    for (double& v : w) v *= v;
    const std::vector<double> sq = gemv(usq, w, 'N', static_cast<double>(n));
    for (int i = 0; i < n; ++i) stats.norms.push_back(std::sqrt(std::max(0.0, sq[i])));
  }
  if (stats.norms.empty()) return stats;
  double mean = 0.0;
  double max_norm = 0.0;
  for (double v : stats.norms) {
    mean += v;
    max_norm = std::max(max_norm, v);
  }
  mean /= static_cast<double>(stats.norms.size());
  double var = 0.0;
  for (double v : stats.norms) var += (v - mean) * (v - mean);
  stats.sigma = std::sqrt(var / static_cast<double>(stats.norms.size()));
  for (double v : stats.norms)
    if (v <= 1e-9 * max_norm) ++stats.zero_count;
  return stats;
}

CoherenceResult cumulative_coherence(const EigenDecomposition& eig, const FilterBank& bank,
                                     int k) {
  const CoherencePack pack = coherence_values(eig, bank, {k});
  CoherenceResult result;
  result.applicable = pack.applicable;
  result.zero_norm_atoms = pack.zero_norm_atoms;
  if (pack.applicable) result.value = pack.values.at(k);
  return result;
}

FrameReport frame_report(const EigenDecomposition& eig, const FilterBank& bank,
                         const std::vector<int>& coherence_ks, double tight_tol) {
  FrameReport report;
  const FrameBounds bounds = frame_bounds(eig, bank);
  report.a = bounds.a;
  report.b = bounds.b;
  report.tight = std::abs(bounds.b - bounds.a) <= tight_tol * bounds.b;
  AtomNormStats stats = atom_norm_stats(eig, bank);
  report.atom_norms = std::move(stats.norms);
  report.sigma_norms = stats.sigma;
  report.zero_norm_atoms = stats.zero_count;
  report.coherence_applicable = stats.zero_count == 0;
  if (!coherence_ks.empty() && report.coherence_applicable) {
    CoherencePack pack = coherence_values(eig, bank, coherence_ks);
    report.coherence_applicable = pack.applicable;
    report.coherence = std::move(pack.values);
  }
  return report;
}

namespace {

// Log-spaced dilations of one bandpass bump plus a linear-domain lowpass.
// Adjacent bumps overlap by half a support, so the response ripples: this
// baseline is deliberately not tight. Everything is rescaled so the response
// peaks at the same constant the tight banks hold.
FilterBank sgwt_style_bank(const CosineWindow& window, double lambda_upper, int m_filters,
                           double target) {
  const double gamma = std::log(lambda_upper);
  const double eps = lambda_upper * 1e-4;
  const double h = gamma / (m_filters - 2);
  FilterBank bank;
  bank.kernels.push_back(cosine_base_kernel(window, 1.0, 0.5));
  for (int j = 1; j < m_filters; ++j)
    bank.kernels.push_back(
        log_floor_kernel(cosine_base_kernel(window, j * h, 0.5 / h), eps));

  double peak = 0.0;
  for (int i = 0; i <= 10000; ++i)
    peak = std::max(peak, bank.response(lambda_upper * i / 10000.0));
  const double factor = std::sqrt(target / peak);
  for (Kernel& k : bank.kernels) k = scaled_kernel(k, factor);

  bank.lambda_upper = lambda_upper;
  bank.frame_constant = target;
  bank.kind = BankKind::custom;
  bank.window_coeffs = window.coeffs();
  bank.overlap = 2;
  bank.gamma = gamma;
  bank.eps = eps;
  return bank;
}

// Dyadic octave bands with half-crossfades between adjacent octaves: the
// scaling kernel holds the constant below the lowest zone, band j hands off
// to band j+1 inside [lambda_upper/2^(M-j-1), lambda_upper/2^(M-j-2)], and
// the top band holds through lambda_upper. The squared responses tile
// [0, lambda_upper] exactly, so the bank is tight.
FilterBank meyer_style_bank(double lambda_upper, int m_filters, double target) {
  const double amp = std::sqrt(target);
  auto edge = [&](int j) { return std::ldexp(lambda_upper, j - m_filters); };
  FilterBank bank;
  bank.kernels.reserve(m_filters);
  bank.kernels.push_back(octave_band_kernel(0.0, edge(1), amp));
  for (int j = 1; j <= m_filters - 2; ++j)
    bank.kernels.push_back(octave_band_kernel(edge(j), edge(j + 1), amp));
  bank.kernels.push_back(octave_band_kernel(edge(m_filters - 1), 0.0, amp));
  bank.lambda_upper = lambda_upper;
  bank.frame_constant = target;
  bank.kind = BankKind::custom;
  bank.overlap = 2;
  bank.gamma = lambda_upper;
  return bank;
}

}  // namespace

std::vector<FilterBank> baseline_banks(double lambda_upper, double d_max, int m_filters,
                                       const WarpingFunction& spectral_warp, int overlap) {
  if (!(lambda_upper > 1.0))
    throw ParamError("baseline banks require lambda_upper > 1; got " +
                     std::to_string(lambda_upper));
  if (overlap <= 2)
    throw ParamError("baseline banks require 2 < R; got R = " + std::to_string(overlap));
  if (m_filters < overlap + 1)
    throw ParamError("baseline banks require M >= R + 1; got M = " +
                     std::to_string(m_filters) + ", R = " + std::to_string(overlap));
  const CosineWindow window = make_hann();
  const double target = translate_constant(window, overlap);

  std::vector<FilterBank> banks;
  banks.reserve(5);
  banks.push_back(sgwt_style_bank(window, lambda_upper, m_filters, target));
  banks.push_back(meyer_style_bank(lambda_upper, m_filters, target));
  {
    // Octave bands pulled back through the arccos law; on a ring this lines
    // the handoffs up with classical dyadic wavelet bands.
    const WarpingFunction arc = degree_warp(lambda_upper, d_max);
    FilterBank deg = meyer_style_bank(lambda_upper, m_filters, target);
    for (Kernel& k : deg.kernels) k = warped_kernel(k, arc);
    deg.warp_descriptor = arc.descriptor();
    banks.push_back(std::move(deg));
  }
  banks.push_back(log_wavelet_bank(window, lambda_upper, m_filters, overlap));
  banks.push_back(
      spectrum_adapted_wavelet_bank(window, spectral_warp, lambda_upper, m_filters, overlap));
  return banks;
}

const std::vector<std::string>& baseline_bank_labels() {
  static const std::vector<std::string> labels = {
      "sgwt-style (simplified)", "meyer-like (simplified)", "degree-adapted",
      "log-warped", "spectrum-adapted"};
  return labels;
}

}  // namespace gspf
