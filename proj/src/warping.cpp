#include "gspf/warping.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gspf/csvio.hpp"
#include "gspf/errors.hpp"
#include "gspf/freeconv.hpp"
#include "gspf/ldl.hpp"

namespace gspf {
namespace {

struct IdentityNode final : WarpNode {
  double eval(double t) const override { return t; }
  void describe(std::vector<std::string>& out) const override { out.push_back("identity"); }
};

struct AffineNode final : WarpNode {
  double a = 1.0, b = 0.0;  // t -> a*t + b
  double eval(double t) const override { return a * t + b; }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("affine");
    out.push_back(fmt17(a));
    out.push_back(fmt17(b));
  }
};

// x[i] <= t < x[i+1]; callers handle t outside the knot range.
size_t knot_interval(const std::vector<double>& x, double t) {
  return static_cast<size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin()) - 1;
}

struct PiecewiseLinearNode final : WarpNode {
  std::vector<double> x, y;
  double eval(double t) const override {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    const size_t i = knot_interval(x, t);
    return y[i] + (t - x[i]) * (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("linear");
    out.push_back(std::to_string(x.size()));
    for (size_t i = 0; i < x.size(); ++i) {
      out.push_back(fmt17(x[i]));
      out.push_back(fmt17(y[i]));
    }
  }
};

struct MonotoneCubicNode final : WarpNode {
  std::vector<double> x, y, d;
  double eval(double t) const override {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    const size_t i = knot_interval(x, t);
    const double h = x[i + 1] - x[i];
    const double s = (t - x[i]) / h;
    const double oms = 1.0 - s;
    const double h00 = (1.0 + 2.0 * s) * oms * oms;
    const double h10 = s * oms * oms;
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * y[i] + h * h10 * d[i] + h01 * y[i + 1] + h * h11 * d[i + 1];
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("pchip");
    out.push_back(std::to_string(x.size()));
    for (size_t i = 0; i < x.size(); ++i) {
      out.push_back(fmt17(x[i]));
      out.push_back(fmt17(y[i]));
      out.push_back(fmt17(d[i]));
    }
  }
};

struct McKayNode final : WarpNode {
  int r = 3;
  double eval(double z) const override {
    const double rr = r;
    const double root = 2.0 * std::sqrt(rr - 1.0);
    if (z <= rr - root) return 0.0;
    if (z >= rr + root) return 1.0;
    const double u = z - rr;
    // A point one ulp inside the support can round the radicand negative;
    // s = 0 is fine since atan(+-inf) is well defined.
    const double s = std::sqrt(std::max(0.0, 4.0 * (rr - 1.0) - u * u));
    const double arc = std::asin(std::clamp(u / root, -1.0, 1.0));
    return 0.5 + (rr / (2.0 * M_PI)) * arc -
           ((rr - 2.0) / (2.0 * M_PI)) * std::atan((rr - 2.0) * u / (rr * s));
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("mckay");
    out.push_back(std::to_string(r));
  }
};

struct DegreeWarpNode final : WarpNode {
  double lambda_upper = 1.0;
  double d_max = 1.0;
  double eval(double z) const override {
    const double c = lambda_upper / std::acos(1.0 - lambda_upper / d_max);
    return c * std::acos(std::clamp(1.0 - z / d_max, -1.0, 1.0));
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("degree");
    out.push_back(fmt17(lambda_upper));
    out.push_back(fmt17(d_max));
  }
};

struct ErNormalizedNode final : WarpNode {
  int n = 2;
  double p = 0.5;
  double eval(double z) const override {
    // Branch on the support endpoints in z units so they map to exactly 0
    // and 1, then clamp the rescaled coordinate against ulp spill.
    const double half_width = 2.0 * std::sqrt((1.0 - p) / (p * n));
    if (z <= 1.0 - half_width) return 0.0;
    if (z >= 1.0 + half_width) return 1.0;
    const double u =
        std::clamp(std::sqrt(p * n / (1.0 - p)) * (z - 1.0), -2.0, 2.0);
    return 0.5 + u * std::sqrt(4.0 - u * u) / (4.0 * M_PI) + std::asin(0.5 * u) / M_PI;
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("er-norm");
    out.push_back(std::to_string(n));
    out.push_back(fmt17(p));
  }
};

struct ErCombinatorialNode final : WarpNode {
  int n = 2;
  double p = 0.5, eta = 1e-3;
  int grid = 4001;
  double lo = -6.0, hi = 6.0;
  double lambda_upper = 0.0;
  std::shared_ptr<const FreeConvolutionTable> table;
  double center = 0.0, scale = 1.0;
  double f0 = 0.0, fup = 1.0;  // smoothed CDF at z = 0 and z = lambda_upper

  double eval(double z) const override {
    const double raw = table->cdf_at((z - center) / scale);
    return std::max(0.0, (raw - f0) / (fup - f0));
  }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("er-comb");
    out.push_back(std::to_string(n));
    out.push_back(fmt17(p));
    out.push_back(fmt17(eta));
    out.push_back(std::to_string(grid));
    out.push_back(fmt17(lo));
    out.push_back(fmt17(hi));
    out.push_back(fmt17(lambda_upper));
  }
};

struct CompositeNode final : WarpNode {
  std::shared_ptr<const WarpNode> outer, inner;
  double eval(double t) const override { return outer->eval(inner->eval(t)); }
  void describe(std::vector<std::string>& out) const override {
    out.push_back("compose");
    outer->describe(out);
    inner->describe(out);
  }
};

std::shared_ptr<ErCombinatorialNode> build_er_combinatorial(int n, double p, double eta,
                                                            int grid_points,
                                                            double lambda_upper) {
  if (n < 2) throw ParamError("n must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw ParamError("p must lie in (0, 1)");
  auto node = std::make_shared<ErCombinatorialNode>();
  node->n = n;
  node->p = p;
  node->eta = eta;
  node->grid = grid_points;
  node->center = p * n;
  node->scale = std::sqrt(p * n * (1.0 - p));
  node->lambda_upper =
      lambda_upper > 0.0 ? lambda_upper : node->center + 4.0 * node->scale;
  node->table = std::make_shared<FreeConvolutionTable>(
      normal_semicircle_free_convolution(eta, grid_points, node->lo, node->hi));
  node->f0 = node->table->cdf_at((0.0 - node->center) / node->scale);
  node->fup = node->table->cdf_at((node->lambda_upper - node->center) / node->scale);
  return node;
}

const char* provenance_tag(CdfProvenance p) {
  switch (p) {
    case CdfProvenance::exact_spectrum: return "exact-spectrum";
    case CdfProvenance::subsampled: return "subsampled";
    case CdfProvenance::inertia_sliced: return "inertia-sliced";
    case CdfProvenance::random_graph_law: return "random-graph-law";
  }
  return "exact-spectrum";
}

// Shared validation for both exact_cdf_points overloads. Returns the
// collapse tolerance.
double check_eigenvalue_list(const std::vector<double>& ev) {
  if (ev.size() < 2) throw ParamError("need at least two eigenvalues");
  for (size_t i = 0; i + 1 < ev.size(); ++i)
    if (ev[i + 1] < ev[i]) throw ParamError("eigenvalues must be ascending");
  const double lmax = ev.back();
  const double tol = 1e-9 * std::max(1.0, lmax);
  if (std::abs(ev.front()) > tol) throw ParamError("first eigenvalue must be zero");
  if (ev[1] - ev[0] <= tol)
    throw DataError("repeated zero eigenvalue: the graph is disconnected");
  if (!(lmax > 0.0)) throw ParamError("largest eigenvalue must be positive");
  return tol;
}

std::vector<double> fritsch_carlson_slopes(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> delta(n - 1), d(n);
  for (size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = delta[0];
  d[n - 1] = delta[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) d[i] = 0.5 * (delta[i - 1] + delta[i]);
  for (size_t i = 0; i + 1 < n; ++i)
    if (delta[i] == 0.0) d[i] = d[i + 1] = 0.0;
  // Pull (alpha, beta) back inside the circle of radius 3; shrinking keeps
  // every earlier interval inside, so one sweep suffices.
  for (size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) continue;
    const double alpha = d[i] / delta[i];
    const double beta = d[i + 1] / delta[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d[i] = tau * alpha * delta[i];
      d[i + 1] = tau * beta * delta[i];
    }
  }
  return d;
}

double take_double(const std::vector<std::string>& tok, size_t& pos) {
  if (pos >= tok.size()) throw DataError("truncated warp descriptor");
  const std::string& s = tok[pos++];
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw DataError("bad number in warp descriptor: '" + s + "'");
  return v;
}

int take_int(const std::vector<std::string>& tok, size_t& pos) {
  if (pos >= tok.size()) throw DataError("truncated warp descriptor");
  const std::string& s = tok[pos++];
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty())
    throw DataError("bad integer in warp descriptor: '" + s + "'");
  return static_cast<int>(v);
}

std::shared_ptr<const WarpNode> parse_node(const std::vector<std::string>& tok, size_t& pos) {
  if (pos >= tok.size()) throw DataError("truncated warp descriptor");
  const std::string tag = tok[pos++];
  if (tag == "identity") return std::make_shared<IdentityNode>();
  if (tag == "affine") {
    auto node = std::make_shared<AffineNode>();
    node->a = take_double(tok, pos);
    node->b = take_double(tok, pos);
    return node;
  }
  if (tag == "linear" || tag == "pchip") {
    const int k = take_int(tok, pos);
    if (k < 2) throw DataError("warp descriptor needs at least two knots");
    std::vector<double> x(static_cast<size_t>(k)), y(static_cast<size_t>(k)),
        d(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
      x[static_cast<size_t>(i)] = take_double(tok, pos);
      y[static_cast<size_t>(i)] = take_double(tok, pos);
      if (tag == "pchip") d[static_cast<size_t>(i)] = take_double(tok, pos);
    }
    for (int i = 0; i + 1 < k; ++i)
      if (x[static_cast<size_t>(i + 1)] <= x[static_cast<size_t>(i)])
        throw DataError("warp descriptor knots must be ascending");
    if (tag == "linear") {
      auto node = std::make_shared<PiecewiseLinearNode>();
      node->x = std::move(x);
      node->y = std::move(y);
      return node;
    }
    auto node = std::make_shared<MonotoneCubicNode>();
    node->x = std::move(x);
    node->y = std::move(y);
    node->d = std::move(d);
    return node;
  }
  if (tag == "mckay") {
    auto node = std::make_shared<McKayNode>();
    node->r = take_int(tok, pos);
    if (node->r < 3) throw DataError("mckay descriptor needs r >= 3");
    return node;
  }
  if (tag == "degree") {
    const double lup = take_double(tok, pos);
    const double dmax = take_double(tok, pos);
    if (!(lup > 0.0) || !(dmax > 0.5 * lup)) throw DataError("bad degree warp descriptor");
    auto node = std::make_shared<DegreeWarpNode>();
    node->lambda_upper = lup;
    node->d_max = dmax;
    return node;
  }
  if (tag == "er-norm") {
    const int n = take_int(tok, pos);
    const double p = take_double(tok, pos);
    if (n < 2 || !(p > 0.0 && p < 1.0)) throw DataError("bad er-norm descriptor");
    auto node = std::make_shared<ErNormalizedNode>();
    node->n = n;
    node->p = p;
    return node;
  }
  if (tag == "er-comb") {
    const int n = take_int(tok, pos);
    const double p = take_double(tok, pos);
    const double eta = take_double(tok, pos);
    const int grid = take_int(tok, pos);
    const double lo = take_double(tok, pos);
    const double hi = take_double(tok, pos);
    const double lup = take_double(tok, pos);
    if (lo != -6.0 || hi != 6.0) throw DataError("unsupported er-comb grid interval");
    return build_er_combinatorial(n, p, eta, grid, lup);
  }
  if (tag == "compose") {
    auto node = std::make_shared<CompositeNode>();
    node->outer = parse_node(tok, pos);
    node->inner = parse_node(tok, pos);
    return node;
  }
  throw DataError("unrecognized warp descriptor tag: '" + tag + "'");
}

}  // namespace

WarpingFunction::WarpingFunction() : node_(std::make_shared<IdentityNode>()) {}

std::string WarpingFunction::descriptor() const {
  std::vector<std::string> tokens;
  node_->describe(tokens);
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

WarpingFunction WarpingFunction::from_descriptor(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string t;
  while (in >> t) tokens.push_back(t);
  size_t pos = 0;
  auto node = parse_node(tokens, pos);
  if (pos != tokens.size()) throw DataError("trailing tokens in warp descriptor");
  return WarpingFunction(std::move(node));
}

CdfEstimate exact_cdf_points(const std::vector<double>& eigenvalues) {
  const double tol = check_eigenvalue_list(eigenvalues);
  const size_t n = eigenvalues.size();
  CdfEstimate est;
  est.provenance = CdfProvenance::exact_spectrum;
  for (size_t l = 0; l < n; ++l) {
    if (l + 1 < n && eigenvalues[l + 1] - eigenvalues[l] <= tol) continue;
    est.x.push_back(est.x.empty() ? 0.0 : eigenvalues[l]);
    est.value.push_back(static_cast<double>(l) / static_cast<double>(n - 1));
  }
  return est;
}

CdfEstimate exact_cdf_points(const std::vector<double>& eigenvalues,
                             const std::vector<int>& keep_indices) {
  const double tol = check_eigenvalue_list(eigenvalues);
  const int n = static_cast<int>(eigenvalues.size());
  if (keep_indices.size() < 2) throw ParamError("need at least two subsample indices");
  for (size_t i = 0; i < keep_indices.size(); ++i) {
    if (keep_indices[i] < 0 || keep_indices[i] >= n)
      throw ParamError("subsample index out of range");
    if (i > 0 && keep_indices[i] <= keep_indices[i - 1])
      throw ParamError("subsample indices must be strictly ascending");
  }
  if (keep_indices.front() != 0 || keep_indices.back() != n - 1)
    throw ParamError("subsample indices must include 0 and N-1");
  CdfEstimate est;
  est.provenance = CdfProvenance::subsampled;
  for (size_t i = 0; i < keep_indices.size(); ++i) {
    const int l = keep_indices[i];
    if (i + 1 < keep_indices.size() &&
        eigenvalues[static_cast<size_t>(keep_indices[i + 1])] -
                eigenvalues[static_cast<size_t>(l)] <=
            tol)
      continue;
    est.x.push_back(est.x.empty() ? 0.0 : eigenvalues[static_cast<size_t>(l)]);
    est.value.push_back(static_cast<double>(l) / static_cast<double>(n - 1));
  }
  return est;
}

CdfEstimate sliced_cdf(const SparseSym& laplacian_matrix, double lambda_upper, int q_slices) {
  const int n = laplacian_matrix.n;
  if (n < 2) throw ParamError("matrix must be at least 2 x 2");
  if (!(lambda_upper > 0.0)) throw ParamError("lambda_upper must be positive");
  if (q_slices < 2) throw ParamError("need at least two slices");

  const LdlSymbolic symbolic = ldl_analyze(laplacian_matrix);
  const double pivot_floor = 1e-9 * std::max(1.0, max_abs(laplacian_matrix));

  CdfEstimate est;
  est.provenance = CdfProvenance::inertia_sliced;
  est.x.resize(static_cast<size_t>(q_slices) + 1);
  est.value.resize(static_cast<size_t>(q_slices) + 1);
  est.raw_counts.resize(static_cast<size_t>(q_slices) + 1);
  est.shifts_used.resize(static_cast<size_t>(q_slices) + 1);

  est.x[0] = 0.0;
  est.value[0] = 0.0;
  est.raw_counts[0] = 0;
  est.shifts_used[0] = 0.0;
  est.x[static_cast<size_t>(q_slices)] = lambda_upper;
  est.value[static_cast<size_t>(q_slices)] = 1.0;
  est.raw_counts[static_cast<size_t>(q_slices)] = n - 1;
  est.shifts_used[static_cast<size_t>(q_slices)] = lambda_upper;

  for (int q = 1; q < q_slices; ++q) {
    const double grid_shift = q * lambda_upper / q_slices;
    double shift = grid_shift;
    int count = 0;
    for (int attempt = 0;; ++attempt) {
      const LdlFactorization f = ldl_factorize(laplacian_matrix, symbolic, shift);
      if (f.num_perturbed_pivots == 0 && f.min_abs_pivot > pivot_floor) {
        count = f.negative_pivots();
        break;
      }
      if (attempt == 3)
        throw NumericalError("slicing shift " + fmt17(grid_shift) +
                             " still sits on an eigenvalue after three nudges");
      shift += 1e-8 * lambda_upper;
    }
    est.x[static_cast<size_t>(q)] = grid_shift;
    est.value[static_cast<size_t>(q)] =
        static_cast<double>(std::min(count, n - 1)) / static_cast<double>(n - 1);
    est.raw_counts[static_cast<size_t>(q)] = count;
    est.shifts_used[static_cast<size_t>(q)] = shift;
  }
  return est;
}

WarpingFunction interpolate(const CdfEstimate& points, InterpolationMethod method) {
  const size_t k = points.x.size();
  if (k != points.value.size()) throw ParamError("mismatched knot arrays");
  if (k < 2) throw ParamError("need at least two knots");
  for (size_t i = 0; i + 1 < k; ++i) {
    if (points.x[i + 1] <= points.x[i]) throw DataError("knot positions must be ascending");
    if (points.value[i + 1] < points.value[i])
      throw DataError("knot values must be nondecreasing");
  }
  if (method == InterpolationMethod::linear) {
    auto node = std::make_shared<PiecewiseLinearNode>();
    node->x = points.x;
    node->y = points.value;
    return WarpingFunction(node);
  }
  auto node = std::make_shared<MonotoneCubicNode>();
  node->x = points.x;
  node->y = points.value;
  node->d = fritsch_carlson_slopes(points.x, points.value);
  return WarpingFunction(node);
}

WarpingFunction mckay_cdf(int r) {
  if (r < 3) throw ParamError("r must be at least 3");
  auto node = std::make_shared<McKayNode>();
  node->r = r;
  return WarpingFunction(node);
}

WarpingFunction degree_warp(double lambda_upper, double d_max) {
  if (!(lambda_upper > 0.0))
    throw ParamError("degree warp requires lambda_upper > 0; got " + fmt17(lambda_upper));
  if (!(d_max > 0.5 * lambda_upper))
    throw ParamError("degree warp requires d_max > lambda_upper/2; got d_max = " +
                     fmt17(d_max) + ", lambda_upper = " + fmt17(lambda_upper));
  auto node = std::make_shared<DegreeWarpNode>();
  node->lambda_upper = lambda_upper;
  node->d_max = d_max;
  return WarpingFunction(node);
}

WarpingFunction er_normalized_cdf(int n, double p) {
  if (n < 2) throw ParamError("n must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw ParamError("p must lie in (0, 1)");
  auto node = std::make_shared<ErNormalizedNode>();
  node->n = n;
  node->p = p;
  return WarpingFunction(node);
}

WarpingFunction er_combinatorial_cdf(int n, double p, double eta, int grid_points,
                                     double lambda_upper, ErCombinatorialInfo* info) {
  auto node = build_er_combinatorial(n, p, eta, grid_points, lambda_upper);
  if (info) {
    info->lambda_upper = node->lambda_upper;
    info->clamped_mass = node->f0 / node->fup;
    info->table_mass = node->table->mass();
  }
  return WarpingFunction(node);
}

WarpingFunction normalize_warp(const WarpingFunction& w, double lambda_upper,
                               double target_gamma) {
  if (!(lambda_upper > 0.0)) throw ParamError("lambda_upper must be positive");
  if (!(target_gamma > 0.0)) throw ParamError("target_gamma must be positive");
  const double w0 = w(0.0);
  const double wu = w(lambda_upper);
  if (!(wu > w0)) throw ParamError("warp must increase over [0, lambda_upper]");
  auto affine = std::make_shared<AffineNode>();
  affine->a = target_gamma / (wu - w0);
  affine->b = -affine->a * w0;
  auto node = std::make_shared<CompositeNode>();
  node->outer = affine;
  node->inner = w.node();
  return WarpingFunction(node);
}

void save_cdf(const std::string& path, const CdfEstimate& estimate) {
  CsvTable table;
  table.comments.push_back(std::string("provenance: ") + provenance_tag(estimate.provenance));
  table.columns = {"x", "value"};
  for (size_t i = 0; i < estimate.x.size(); ++i)
    table.rows.push_back({estimate.x[i], estimate.value[i]});
  write_csv(path, table);
}

CdfEstimate load_cdf(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.columns != std::vector<std::string>{"x", "value"})
    throw DataError(path + ": expected columns x,value");
  CdfEstimate est;
  bool have_provenance = false;
  for (const std::string& c : table.comments) {
    const std::string key = "provenance: ";
    if (c.rfind(key, 0) != 0) continue;
    const std::string tag = c.substr(key.size());
    if (tag == "exact-spectrum") est.provenance = CdfProvenance::exact_spectrum;
    else if (tag == "subsampled") est.provenance = CdfProvenance::subsampled;
    else if (tag == "inertia-sliced") est.provenance = CdfProvenance::inertia_sliced;
    else if (tag == "random-graph-law") est.provenance = CdfProvenance::random_graph_law;
    else throw DataError(path + ": unknown provenance '" + tag + "'");
    have_provenance = true;
  }
  if (!have_provenance) throw DataError(path + ": missing provenance header");
  for (const auto& row : table.rows) {
    est.x.push_back(row[0]);
    est.value.push_back(row[1]);
  }
  if (est.x.size() < 2) throw DataError(path + ": need at least two knots");
  for (size_t i = 0; i + 1 < est.x.size(); ++i) {
    if (est.x[i + 1] <= est.x[i]) throw DataError(path + ": knot positions must be ascending");
    if (est.value[i + 1] < est.value[i])
      throw DataError(path + ": knot values must be nondecreasing");
  }
  if (est.value.front() != 0.0 || est.value.back() != 1.0)
    throw DataError(path + ": values must start at 0 and end at 1");
  return est;
}

}  // namespace gspf
