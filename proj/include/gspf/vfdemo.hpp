#pragma once

#include <cstdint>
#include <vector>

#include "gspf/dense.hpp"
#include "gspf/frames.hpp"
#include "gspf/graph.hpp"
#include "gspf/kernels.hpp"

namespace gspf {

// Half-open in spirit, inclusive in arithmetic: eigenvalues with
// lo <= lambda <= hi belong to the band. cluster picks which spectral
// cluster carries the band's component; -1 means "band j uses cluster j".
struct DemoBand {
  double lo = 0.0;
  double hi = 0.0;
  int cluster = -1;
};

// The five bands the demo signal mixes by default.
std::vector<DemoBand> demo_bands();

struct VertexFrequencyResult {
  std::vector<int> clusters;          // per vertex, in [0, 5)
  Signal signal;                      // sum_j f_j / ||f_j||_inf
  FilterBank bank;                    // warped uniform translates
  DenseMatrix coefficients;           // |<f, T_i g_m>|, N x M
  double frame_lower = 0.0;
  double frame_upper = 0.0;
  double energy_ratio = 0.0;          // sum c^2 / (A ||f||^2), 1 for tight banks
  std::vector<double> filter_energy;  // per-filter share of sum c^2, sums to 1
};

// End-to-end vertex-frequency pipeline: cluster the graph spectrally
// (k-means over the first five nontrivial eigenvectors, 50 seeded restarts),
// synthesize a signal that pairs each cluster with a spectral band, build an
// M-filter bank warped by the sliced-CDF estimate, and analyze. The graph
// must be connected and have at least 6 vertices; every band must contain
// an eigenvalue.
VertexFrequencyResult vertex_frequency_demo(const Graph& graph, int m_filters, int overlap,
                                            int q_slices, const std::vector<DemoBand>& bands,
                                            std::uint64_t seed);

}  // namespace gspf
