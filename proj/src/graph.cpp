#include "gspf/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "gspf/errors.hpp"
#include "gspf/rng.hpp"

namespace gspf {

namespace {

int count_components(int n, const std::vector<Edge>& edges) {
  std::vector<int> head(n + 1, 0);
  for (const Edge& e : edges) {
    ++head[e.u + 1];
    ++head[e.v + 1];
  }
  for (int i = 0; i < n; ++i) head[i + 1] += head[i];
  std::vector<int> nbr(2 * edges.size());
  std::vector<int> next(head.begin(), head.end() - 1);
  for (const Edge& e : edges) {
    nbr[next[e.u]++] = e.v;
    nbr[next[e.v]++] = e.u;
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  int components = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int p = head[v]; p < head[v + 1]; ++p)
        if (!seen[nbr[p]]) {
          seen[nbr[p]] = 1;
          stack.push_back(nbr[p]);
        }
    }
  }
  return components;
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw ParamError("graph needs at least one vertex");
  for (Edge& e : edges_) {
    if (e.u == e.v) throw ParamError("self loops are not allowed");
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ParamError("edge endpoint out of range");
    if (!(e.w >= 0.0)) throw ParamError("edge weights must be nonnegative");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw ParamError("duplicate edge in graph construction");
}

std::vector<double> Graph::degrees() const {
  std::vector<double> d(n_, 0.0);
  for (const Edge& e : edges_) {
    d[e.u] += e.w;
    d[e.v] += e.w;
  }
  return d;
}

double Graph::max_degree() const {
  double m = 0.0;
  for (double d : degrees()) m = std::max(m, d);
  return m;
}

SparseSym Graph::adjacency() const {
  std::vector<std::tuple<int, int, double>> t;
  t.reserve(edges_.size());
  for (const Edge& e : edges_) t.emplace_back(e.v, e.u, e.w);
  return SparseSym::from_triplets(n_, t);
}

int Graph::component_count() const { return count_components(n_, edges_); }

Laplacian laplacian(const Graph& g, LaplacianKind kind) {
  const int n = g.n();
  Laplacian lap;
  lap.kind = kind;
  lap.degrees = g.degrees();
  std::vector<std::tuple<int, int, double>> t;
  t.reserve(g.edges().size() + n);
  if (kind == LaplacianKind::combinatorial) {
    for (int i = 0; i < n; ++i) t.emplace_back(i, i, lap.degrees[i]);
    for (const Edge& e : g.edges()) t.emplace_back(e.v, e.u, -e.w);
  } else {
    for (int i = 0; i < n; ++i) t.emplace_back(i, i, lap.degrees[i] > 0.0 ? 1.0 : 0.0);
    for (const Edge& e : g.edges())
      t.emplace_back(e.v, e.u, -e.w / std::sqrt(lap.degrees[e.u] * lap.degrees[e.v]));
  }
  lap.matrix = SparseSym::from_triplets(n, t);
  return lap;
}

Graph build_path(int n) {
  if (n < 2) throw ParamError("path graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph build_ring(int n) {
  if (n < 3) throw ParamError("ring graph needs n >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({0, n - 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph build_comet(int n, int center_degree) {
  if (n < 2) throw ParamError("comet graph needs n >= 2");
  if (center_degree < 1 || center_degree >= n)
    throw ParamError("comet center degree must satisfy 1 <= center_degree < n");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int i = 1; i <= center_degree; ++i) edges.push_back({0, i, 1.0});
  if (center_degree + 1 < n) edges.push_back({0, center_degree + 1, 1.0});
  for (int i = center_degree + 1; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph build_sensor(int n, std::uint64_t seed, double threshold, double sigma,
                   std::vector<std::array<double, 2>>* coords) {
  if (n < 2) throw ParamError("sensor graph needs n >= 2");
  if (!(threshold > 0.0) || !(sigma > 0.0))
    throw ParamError("sensor graph needs positive threshold and sigma");
  Rng rng(seed);
  const int budget = 200;
  for (int attempt = 0; attempt < budget; ++attempt) {
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double dx = pts[i][0] - pts[j][0];
        const double dy = pts[i][1] - pts[j][1];
        const double dist2 = dx * dx + dy * dy;
        if (dist2 <= threshold * threshold)
          edges.push_back({i, j, std::exp(-dist2 / (2.0 * sigma * sigma))});
      }
    if (count_components(n, edges) == 1) {
      if (coords) *coords = std::move(pts);
      return Graph(n, std::move(edges));
    }
  }
  throw NumericalError("sensor graph stayed disconnected after 200 placements; "
                       "increase threshold or n");
}

Graph build_random_regular(int n, int r, std::uint64_t seed) {
  if (r < 3 || r >= n) throw ParamError("random regular graph needs 3 <= r < n");
  if ((static_cast<long long>(n) * r) % 2 != 0)
    throw ParamError("random regular graph needs n*r even");
  Rng rng(seed);
  std::vector<int> stubs(static_cast<size_t>(n) * r);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < r; ++k) stubs[static_cast<size_t>(v) * r + k] = v;
  const int budget = 10000;
  for (int attempt = 0; attempt < budget; ++attempt) {
    rng.shuffle(stubs);
    std::unordered_set<long long> used;
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    bool simple = true;
    for (size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int u = stubs[k], v = stubs[k + 1];
      if (u == v) {
        simple = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!used.insert(static_cast<long long>(u) * n + v).second) {
        simple = false;
        break;
      }
      edges.push_back({u, v, 1.0});
    }
    if (simple) return Graph(n, std::move(edges));
  }
  throw NumericalError("configuration model kept producing self loops or repeated edges");
}

Graph build_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 2) throw ParamError("random graph needs n >= 2");
  if (!(p > 0.0) || !(p < 1.0)) throw ParamError("edge probability must lie in (0, 1)");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

namespace {

struct PairAccum {
  // Merged weight per unordered pair; tracks whether inputs disagreed.
  std::map<std::pair<int, int>, double> w;
  int merged_conflicts = 0;
  int dropped_loops = 0;

  void add(int i, int j, double weight, const std::string& where, int line) {
    if (i < 0 || j < 0) throw DataError(where + ":" + std::to_string(line) + ": negative vertex index");
    if (weight < 0.0) throw DataError(where + ":" + std::to_string(line) + ": negative edge weight");
    if (i == j) {
      ++dropped_loops;
      return;
    }
    if (i > j) std::swap(i, j);
    auto [it, inserted] = w.try_emplace({i, j}, weight);
    if (!inserted && it->second != weight) {
      it->second = std::max(it->second, weight);
      ++merged_conflicts;
    }
  }

  Graph finish(int n, std::vector<std::string>* warnings, const std::string& where) const {
    if (warnings) {
      if (dropped_loops > 0)
        warnings->push_back(where + ": dropped " + std::to_string(dropped_loops) + " self loop(s)");
      if (merged_conflicts > 0)
        warnings->push_back(where + ": merged " + std::to_string(merged_conflicts) +
                            " conflicting entr(ies) by max weight");
    }
    std::vector<Edge> edges;
    edges.reserve(w.size());
    for (const auto& [pair, weight] : w)
      if (weight > 0.0) edges.push_back({pair.first, pair.second, weight});
    if (n < 1) throw DataError(where + ": no vertices found");
    return Graph(n, std::move(edges));
  }
};

bool blank_or_comment(const std::string& line, char comment) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == comment;
  }
  return true;
}

Graph parse_edge_list(std::istream& in, const std::string& where,
                      std::vector<std::string>* warnings) {
  PairAccum acc;
  int max_index = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '#')) continue;
    std::istringstream ss(line);
    long long i, j;
    double weight = 1.0;
    if (!(ss >> i >> j))
      throw DataError(where + ":" + std::to_string(lineno) + ": expected 'i j [w]'");
    if (!(ss >> weight)) weight = 1.0;
    std::string extra;
    if (ss >> extra)
      throw DataError(where + ":" + std::to_string(lineno) + ": trailing tokens after 'i j w'");
    acc.add(static_cast<int>(i), static_cast<int>(j), weight, where, lineno);
    max_index = std::max(max_index, static_cast<int>(std::max(i, j)));
  }
  return acc.finish(max_index + 1, warnings, where);
}

Graph parse_matrix_market(std::istream& in, const std::string& where,
                          std::vector<std::string>* warnings) {
  std::string banner;
  if (!std::getline(in, banner)) throw DataError(where + ": empty file");
  std::istringstream bs(banner);
  std::string tag, object, format, field, symmetry;
  bs >> tag >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix" ||
      lower(format) != "coordinate")
    throw DataError(where + ":1: expected a Matrix Market coordinate header");
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "pattern" && field != "integer")
    throw DataError(where + ":1: unsupported field '" + field + "' (want real or pattern)");
  if (symmetry != "symmetric")
    throw DataError(where + ":1: unsupported symmetry '" + symmetry + "' (want symmetric)");

  std::string line;
  int lineno = 1;
  long long rows = 0, cols = 0, nnz = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '%')) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz))
      throw DataError(where + ":" + std::to_string(lineno) + ": expected 'rows cols nnz'");
    break;
  }
  if (rows != cols) throw DataError(where + ": matrix is not square");

  PairAccum acc;
  long long read = 0;
  while (read < nnz && std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '%')) continue;
    std::istringstream ss(line);
    long long i, j;
    double weight = 1.0;
    if (!(ss >> i >> j))
      throw DataError(where + ":" + std::to_string(lineno) + ": expected 'i j [value]'");
    if (field != "pattern" && !(ss >> weight))
      throw DataError(where + ":" + std::to_string(lineno) + ": missing value");
    if (i < 1 || j < 1 || i > rows || j > rows)
      throw DataError(where + ":" + std::to_string(lineno) + ": index out of range");
    acc.add(static_cast<int>(i - 1), static_cast<int>(j - 1), weight, where, lineno);
    ++read;
  }
  if (read < nnz)
    throw DataError(where + ": expected " + std::to_string(nnz) + " entries, found " +
                    std::to_string(read));
  return acc.finish(static_cast<int>(rows), warnings, where);
}

}  // namespace

Graph load_graph(const std::string& path, GraphFileFormat format,
                 std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  if (format == GraphFileFormat::autodetect) {
    if (in.peek() == '%' || (path.size() > 4 && path.substr(path.size() - 4) == ".mtx"))
      format = GraphFileFormat::matrix_market;
    else
      format = GraphFileFormat::edge_list;
  }
  return format == GraphFileFormat::matrix_market ? parse_matrix_market(in, path, warnings)
                                                  : parse_edge_list(in, path, warnings);
}

}  // namespace gspf
