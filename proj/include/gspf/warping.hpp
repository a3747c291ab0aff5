#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gspf/sparse.hpp"

namespace gspf {

class WarpNode {
 public:
  virtual ~WarpNode() = default;
  virtual double eval(double t) const = 0;
  virtual void describe(std::vector<std::string>& out) const = 0;
};

// Immutable nondecreasing map from spectral position to warped position.
// Built from spectral CDF estimates or closed-form random-graph laws.
// descriptor() is a single-line token string; from_descriptor round-trips
// it bit-exactly (table-backed variants are rebuilt deterministically).
class WarpingFunction {
 public:
  WarpingFunction();  // identity
  explicit WarpingFunction(std::shared_ptr<const WarpNode> node) : node_(std::move(node)) {}

  double operator()(double t) const { return node_->eval(t); }
  const std::shared_ptr<const WarpNode>& node() const { return node_; }
  std::string descriptor() const;
  static WarpingFunction from_descriptor(const std::string& text);

 private:
  std::shared_ptr<const WarpNode> node_;
};

enum class CdfProvenance { exact_spectrum, subsampled, inertia_sliced, random_graph_law };

struct CdfEstimate {
  CdfProvenance provenance = CdfProvenance::exact_spectrum;
  std::vector<double> x;      // ascending
  std::vector<double> value;  // nondecreasing in [0,1]; first 0, last 1
  // Slicing diagnostics, empty otherwise: counts as factored (unclamped)
  // and the shifts actually used after collision nudges. The two endpoint
  // entries are assigned, not factored. Not serialized.
  std::vector<int> raw_counts;
  std::vector<double> shifts_used;
};

// Knots (lambda_l, l/(N-1)); repeated eigenvalues collapse to the highest
// index. First point forced to (0, 0); repeated zero eigenvalue is refused
// since the graph is then disconnected.
CdfEstimate exact_cdf_points(const std::vector<double>& eigenvalues);
// Subsampled variant: keep_indices selects the knots and must be ascending,
// in range, and contain both 0 and N-1.
CdfEstimate exact_cdf_points(const std::vector<double>& eigenvalues,
                             const std::vector<int>& keep_indices);

// Eigenvalue counting by LDL^T inertia at Q-1 interior shifts on a uniform
// grid over [0, lambda_upper]; endpoints assigned without factorization.
// Symbolic analysis runs once. A shift that collides with an eigenvalue
// (perturbed or near-zero pivot) is nudged by +1e-8 * lambda_upper, at most
// three times before giving up.
CdfEstimate sliced_cdf(const SparseSym& laplacian_matrix, double lambda_upper, int q_slices);

enum class InterpolationMethod { linear, monotone_cubic };

// Knot-exact interpolant, clamped to the end values outside the knot range.
// monotone_cubic uses Fritsch-Carlson slope limiting, so nondecreasing data
// yields a nondecreasing interpolant with no overshoot.
WarpingFunction interpolate(const CdfEstimate& points, InterpolationMethod method);

// Limiting spectral CDF of random r-regular graphs (McKay's law).
WarpingFunction mckay_cdf(int r);

// arccos warp driven by the maximum degree: lambda -> c * acos(1 - lambda/d_max)
// with c chosen so lambda_upper maps to itself. Needs d_max > lambda_upper/2
// to keep the arccos argument inside [-1, 1].
WarpingFunction degree_warp(double lambda_upper, double d_max);

// Limiting CDF of normalized Laplacian eigenvalues of G(n, p): a semicircle
// of radius 2*sqrt((1-p)/(p*n)) centered at 1.
WarpingFunction er_normalized_cdf(int n, double p);

struct ErCombinatorialInfo {
  double lambda_upper = 0.0;  // resolved domain edge
  double clamped_mass = 0.0;  // normalized CDF mass cut off at z = 0
  double table_mass = 0.0;    // trapezoid integral of the unscaled density
};

// Limiting CDF of combinatorial Laplacian eigenvalues of G(n, p): the free
// additive convolution of a standard normal with a semicircle, recentered
// to p*n with scale sqrt(p*n*(1-p)). The small positive tail mass below
// z = 0 is clamped off so the warp starts at exactly 0; the value is
// normalized to exactly 1 at lambda_upper (default p*n + 4*sqrt(p*n*(1-p))).
WarpingFunction er_combinatorial_cdf(int n, double p, double eta = 1e-3,
                                     int grid_points = 4001, double lambda_upper = 0.0,
                                     ErCombinatorialInfo* info = nullptr);

// Affine post-composition making the range exactly [0, target_gamma].
WarpingFunction normalize_warp(const WarpingFunction& w, double lambda_upper,
                               double target_gamma);

// Two-column CSV (x, value) with a provenance header line. Raw counts and
// shifts are in-memory diagnostics and do not survive the round trip.
void save_cdf(const std::string& path, const CdfEstimate& estimate);
CdfEstimate load_cdf(const std::string& path);

}  // namespace gspf
