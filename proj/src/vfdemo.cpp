#include "gspf/vfdemo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gspf/eigh.hpp"
#include "gspf/errors.hpp"
#include "gspf/rng.hpp"
#include "gspf/warping.hpp"
#include "gspf/window.hpp"

namespace gspf {

namespace {

constexpr int kClusters = 5;
constexpr int kRestarts = 50;
constexpr int kMaxIters = 100;

double row_dist2(const DenseMatrix& x, int i, const std::vector<double>& center) {
  double s = 0.0;
  for (int j = 0; j < x.cols(); ++j) {
    const double d = x(i, j) - center[static_cast<std::size_t>(j)];
    s += d * d;
  }
  return s;
}

// Lloyd iterations from random distinct seeds; an emptied cluster is reseeded
// on the point farthest from its current center, so all k stay populated.
double kmeans_once(const DenseMatrix& x, Rng& rng, std::vector<int>& assign) {
  const int n = x.rows();
  const int d = x.cols();
  std::vector<std::vector<double>> centers(kClusters, std::vector<double>(d, 0.0));
  std::vector<int> picked;
  while (static_cast<int>(picked.size()) < kClusters) {
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (std::find(picked.begin(), picked.end(), i) == picked.end()) picked.push_back(i);
  }
  for (int c = 0; c < kClusters; ++c)
    for (int j = 0; j < d; ++j) centers[c][j] = x(picked[c], j);

  assign.assign(n, -1);
  std::vector<int> counts(kClusters, 0);
  for (int iter = 0; iter < kMaxIters; ++iter) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = row_dist2(x, i, centers[0]);
      for (int c = 1; c < kClusters; ++c) {
        const double dist = row_dist2(x, i, centers[c]);
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::fill(counts.begin(), counts.end(), 0);
    for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      ++counts[assign[i]];
      for (int j = 0; j < d; ++j) centers[assign[i]][j] += x(i, j);
    }
    for (int c = 0; c < kClusters; ++c) {
      if (counts[c] > 0) {
        for (double& v : centers[c]) v /= counts[c];
        continue;
      }
      int far = 0;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        const double dist = row_dist2(x, i, centers[assign[i]]);
        if (dist > far_d && counts[assign[i]] > 1) {
          far_d = dist;
          far = i;
        }
      }
      --counts[assign[far]];
      assign[far] = c;
      counts[c] = 1;
      for (int j = 0; j < d; ++j) centers[c][j] = x(far, j);
    }
  }
  double sse = 0.0;
  for (int i = 0; i < n; ++i) sse += row_dist2(x, i, centers[assign[i]]);
  return sse;
}

std::vector<int> spectral_clusters(const EigenDecomposition& eig, std::uint64_t seed) {
  const int n = eig.n();
  DenseMatrix embed(n, kClusters);
  for (int j = 0; j < kClusters; ++j) {
    const double* src = eig.eigenvectors.col(j + 1);
    std::copy(src, src + n, embed.col(j));
  }
  Rng rng(seed);
  std::vector<int> best;
  double best_sse = 0.0;
  std::vector<int> current;
  for (int r = 0; r < kRestarts; ++r) {
    const double sse = kmeans_once(embed, rng, current);
    if (r == 0 || sse < best_sse) {
      best_sse = sse;
      best = current;
    }
  }
  // Relabel so cluster ids follow the smallest member index of each cluster.
  std::vector<int> first(kClusters, n);
  for (int i = 0; i < n; ++i) first[best[i]] = std::min(first[best[i]], i);
  std::vector<int> order(kClusters);
  for (int c = 0; c < kClusters; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return first[a] < first[b]; });
  std::vector<int> relabel(kClusters, 0);
  for (int rank = 0; rank < kClusters; ++rank) relabel[order[rank]] = rank;
  for (int& c : best) c = relabel[c];
  return best;
}

}  // namespace

std::vector<DemoBand> demo_bands() {
  return {{0.06, 0.08, -1}, {0.3, 0.5, -1}, {3.2, 3.7, -1}, {4.6, 5.0, -1}, {6.0, 6.6, -1}};
}

VertexFrequencyResult vertex_frequency_demo(const Graph& graph, int m_filters, int overlap,
                                            int q_slices, const std::vector<DemoBand>& bands,
                                            std::uint64_t seed) {
  const int n = graph.n();
  if (n < 6)
    throw ParamError("vertex-frequency demo needs at least 6 vertices; got " +
                     std::to_string(n));
  if (bands.empty()) throw ParamError("vertex-frequency demo needs at least one band");

  const Laplacian lap = laplacian(graph);
  const EigenDecomposition eig = dense_eigh(lap.matrix);
  const double lambda_max = eig.eigenvalues.back();
  if (eig.eigenvalues[1] <= 1e-9 * std::max(1.0, lambda_max))
    throw ParamError("vertex-frequency demo needs a connected graph");

  VertexFrequencyResult result;
  result.clusters = spectral_clusters(eig, seed);

  result.signal.values.assign(n, 0.0);
  std::vector<double> component(n);
  for (std::size_t j = 0; j < bands.size(); ++j) {
    const DemoBand& band = bands[j];
    if (!(band.lo < band.hi))
      throw ParamError("band " + std::to_string(j) + " is empty: [" +
                       std::to_string(band.lo) + ", " + std::to_string(band.hi) + "]");
    const int cluster = band.cluster < 0 ? static_cast<int>(j) % kClusters : band.cluster;
    if (cluster >= kClusters)
      throw ParamError("band " + std::to_string(j) + " names cluster " +
                       std::to_string(cluster) + "; only " + std::to_string(kClusters) +
                       " clusters exist");
    std::fill(component.begin(), component.end(), 0.0);
    int hits = 0;
    for (int l = 0; l < n; ++l) {
      if (eig.eigenvalues[l] < band.lo || eig.eigenvalues[l] > band.hi) continue;
      ++hits;
      const double* u = eig.eigenvectors.col(l);
      for (int i = 0; i < n; ++i)
        if (result.clusters[i] == cluster) component[i] += u[i];
    }
    if (hits == 0)
      throw DataError("no eigenvalues inside band [" + std::to_string(band.lo) + ", " +
                      std::to_string(band.hi) + "]");
    double peak = 0.0;
    for (double v : component) peak = std::max(peak, std::abs(v));
    if (peak == 0.0)
      throw NumericalError("band [" + std::to_string(band.lo) + ", " +
                           std::to_string(band.hi) + "] vanishes on cluster " +
                           std::to_string(cluster));
    for (int i = 0; i < n; ++i) result.signal.values[i] += component[i] / peak;
  }

  const WarpingFunction warp = normalize_warp(
      interpolate(sliced_cdf(lap.matrix, lambda_max, q_slices),
                  InterpolationMethod::monotone_cubic),
      lambda_max, lambda_max);
  result.bank = warp_bank(uniform_translates(make_hann(), lambda_max, m_filters, overlap),
                          warp, lambda_max);

  const FrameBounds bounds = frame_bounds(eig, result.bank);
  result.frame_lower = bounds.a;
  result.frame_upper = bounds.b;

  const DenseMatrix c = analyze(eig, result.bank, result.signal);
  result.coefficients = DenseMatrix(n, m_filters);
  result.filter_energy.assign(m_filters, 0.0);
  double total = 0.0;
  for (int m = 0; m < m_filters; ++m) {
    const double* src = c.col(m);
    double* dst = result.coefficients.col(m);
    double e = 0.0;
    for (int i = 0; i < n; ++i) {
      dst[i] = std::abs(src[i]);
      e += src[i] * src[i];
    }
    result.filter_energy[m] = e;
    total += e;
  }
  double norm2 = 0.0;
  for (double v : result.signal.values) norm2 += v * v;
  result.energy_ratio = total / (bounds.a * norm2);
  for (double& e : result.filter_energy) e /= total;
  return result;
}

}  // namespace gspf
