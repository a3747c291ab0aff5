#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gspf/sparse.hpp"

namespace gspf {

struct Edge {
  int u = 0, v = 0;  // u < v after construction
  double w = 1.0;
};

// Undirected weighted graph: nonnegative weights, no self loops, each edge
// stored once with u < v, sorted lexicographically.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<double> degrees() const;
  double max_degree() const;
  SparseSym adjacency() const;
  int component_count() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

enum class LaplacianKind { combinatorial, normalized };

struct Laplacian {
  LaplacianKind kind = LaplacianKind::combinatorial;
  SparseSym matrix;
  std::vector<double> degrees;
};

// combinatorial: D - W. normalized: I - D^{-1/2} W D^{-1/2}, where vertices
// of degree zero contribute an all-zero row instead of a unit diagonal.
Laplacian laplacian(const Graph& g, LaplacianKind kind = LaplacianKind::combinatorial);

Graph build_path(int n);
Graph build_ring(int n);
// Star of center_degree leaves on vertex 0 plus a path tail carrying the
// remaining vertices, attached at the hub.
Graph build_comet(int n, int center_degree);
// Vertices uniform in the unit square; W_ij = exp(-dist^2 / (2 sigma^2))
// when dist <= threshold. Redraws the whole placement until the graph is
// connected. Optionally reports the accepted coordinates.
Graph build_sensor(int n, std::uint64_t seed, double threshold = 0.3, double sigma = 0.1,
                   std::vector<std::array<double, 2>>* coords = nullptr);
// Configuration model with full restart on self loops or repeated edges.
Graph build_random_regular(int n, int r, std::uint64_t seed);
Graph build_erdos_renyi(int n, double p, std::uint64_t seed);

enum class GraphFileFormat { autodetect, edge_list, matrix_market };

// Edge list: "i j [w]" per line, 0-based, '#' comments, weight defaults to 1.
// Matrix Market: coordinate real/pattern symmetric. Asymmetric or repeated
// entries are merged by max with a warning; self loops are dropped with a
// warning.
Graph load_graph(const std::string& path,
                 GraphFileFormat format = GraphFileFormat::autodetect,
                 std::vector<std::string>* warnings = nullptr);

}  // namespace gspf
