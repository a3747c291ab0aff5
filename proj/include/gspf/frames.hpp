#pragma once

#include <map>
#include <string>
#include <vector>

#include "gspf/dense.hpp"
#include "gspf/eigh.hpp"
#include "gspf/kernels.hpp"
#include "gspf/warping.hpp"

namespace gspf {

struct Signal {
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
};

// Spectral filtering: f_out = sum_l fhat(l) g(lambda_l) u_l.
Signal filter_signal(const EigenDecomposition& eig, const Kernel& kernel, const Signal& f);

// Atom localized at a vertex: sqrt(N) * g(L) delta_i.
Signal translate_atom(const EigenDecomposition& eig, const Kernel& kernel, int vertex);

// Analysis coefficients c(i, m) = <f, atom(i, m)>, as an N x M matrix.
// Computed as M filterings scaled by sqrt(N), not N*M inner products.
DenseMatrix analyze(const EigenDecomposition& eig, const FilterBank& bank, const Signal& f);

// Adjoint of analyze scaled by the lower frame bound: (1/A) sum c(i,m) atom(i,m).
// Inverts analyze exactly when the bank is tight.
Signal synthesize(const EigenDecomposition& eig, const FilterBank& bank,
                  const DenseMatrix& coefficients);

struct FrameBounds {
  double a = 0.0;
  double b = 0.0;
};

// A = N * min G, B = N * max G over the actual discrete spectrum.
FrameBounds frame_bounds(const EigenDecomposition& eig, const FilterBank& bank);

struct AtomNormStats {
  std::vector<double> norms;  // filter-major: index m*N + i
  double sigma = 0.0;         // population standard deviation
  int zero_count = 0;         // norms at or below 1e-9 of the largest
};

AtomNormStats atom_norm_stats(const EigenDecomposition& eig, const FilterBank& bank);

// A zero-norm atom makes the coherence undefined (applicable = false),
// mirroring a table entry of "N/A".
struct CoherenceResult {
  bool applicable = true;
  double value = 0.0;
  int zero_norm_atoms = 0;
};

// Exact cumulative coherence mu1(k): for each unit-normalized atom, the top-k
// sum of absolute correlations with the other atoms, maximized over atoms.
// Materializes the full atom set; refuses N*M > 20000.
CoherenceResult cumulative_coherence(const EigenDecomposition& eig, const FilterBank& bank,
                                     int k);

struct FrameReport {
  double a = 0.0;
  double b = 0.0;
  bool tight = false;
  std::vector<double> atom_norms;
  double sigma_norms = 0.0;
  int zero_norm_atoms = 0;
  bool coherence_applicable = true;
  std::map<int, double> coherence;  // empty when not applicable
};

FrameReport frame_report(const EigenDecomposition& eig, const FilterBank& bank,
                         const std::vector<int>& coherence_ks, double tight_tol = 1e-9);

// Five constructions for side-by-side comparison, in label order:
// sgwt-style (simplified, not tight), meyer-like (simplified), degree-adapted,
// log-warped, spectrum-adapted. spectral_warp feeds the last one and must fix
// lambda_upper. The first three are BankKind::custom.
std::vector<FilterBank> baseline_banks(double lambda_upper, double d_max, int m_filters,
                                       const WarpingFunction& spectral_warp,
                                       int overlap = 3);
const std::vector<std::string>& baseline_bank_labels();

}  // namespace gspf
