#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gspf/csvio.hpp"
#include "gspf/eigh.hpp"
#include "gspf/errors.hpp"
#include "gspf/frames.hpp"
#include "gspf/graph.hpp"
#include "gspf/kernels.hpp"
#include "gspf/reproduce.hpp"
#include "gspf/vfdemo.hpp"
#include "gspf/warping.hpp"
#include "gspf/window.hpp"

namespace {

using namespace gspf;

std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw ParamError(what + ": expected an integer, got '" + text + "'");
  }
  if (pos != text.size())
    throw ParamError(what + ": expected an integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ParamError(what + ": expected a number, got '" + text + "'");
  }
  if (pos != text.size())
    throw ParamError(what + ": expected a number, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    if (at == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, at - start));
    start = at + 1;
  }
}

struct GraphSource {
  Graph graph;
  std::vector<std::array<double, 2>> coords;  // empty when no layout is known
};

std::vector<std::array<double, 2>> load_xy(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) return {};
  std::vector<std::array<double, 2>> coords;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    double x = 0.0, y = 0.0;
    if (!(ss >> x >> y)) {
      std::fprintf(stderr, "gspf: ignoring layout file %s (bad line)\n", path.c_str());
      return {};
    }
    coords.push_back({x, y});
  }
  if (static_cast<int>(coords.size()) != n) {
    std::fprintf(stderr, "gspf: ignoring layout file %s (%zu points for %d vertices)\n",
                 path.c_str(), coords.size(), n);
    return {};
  }
  return coords;
}

// Generator specs "kind:args" or a graph file path. A sibling ".xy" file
// next to a graph file supplies the plot layout.
GraphSource resolve_graph(const std::string& spec) {
  if (spec.empty()) throw ParamError("a graph spec is required here (--graph)");
  const std::size_t colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? "" : spec.substr(0, colon);
  const bool generator = kind == "path" || kind == "ring" || kind == "comet" ||
                         kind == "sensor" || kind == "regular" || kind == "erdos";
  GraphSource src;
  if (generator) {
    const std::vector<std::string> args = split(spec.substr(colon + 1), ',');
    auto want = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi)
        throw ParamError("graph spec '" + spec + "': wrong number of arguments");
    };
    if (kind == "path") {
      want(1, 1);
      src.graph = build_path(parse_int(args[0], spec));
    } else if (kind == "ring") {
      want(1, 1);
      src.graph = build_ring(parse_int(args[0], spec));
    } else if (kind == "comet") {
      want(2, 2);
      src.graph = build_comet(parse_int(args[0], spec), parse_int(args[1], spec));
    } else if (kind == "sensor") {
      want(2, 4);
      const int n = parse_int(args[0], spec);
      const int seed = parse_int(args[1], spec);
      const double threshold = args.size() > 2 ? parse_double(args[2], spec) : 0.3;
      const double sigma = args.size() > 3 ? parse_double(args[3], spec) : 0.1;
      src.graph = build_sensor(n, static_cast<std::uint64_t>(seed), threshold, sigma,
                               &src.coords);
    } else if (kind == "regular") {
      want(3, 3);
      src.graph = build_random_regular(parse_int(args[0], spec), parse_int(args[1], spec),
                                       static_cast<std::uint64_t>(parse_int(args[2], spec)));
    } else {
      want(3, 3);
      src.graph = build_erdos_renyi(parse_int(args[0], spec), parse_double(args[1], spec),
                                    static_cast<std::uint64_t>(parse_int(args[2], spec)));
    }
    return src;
  }
  std::vector<std::string> warnings;
  src.graph = load_graph(spec, GraphFileFormat::autodetect, &warnings);
  for (const std::string& w : warnings) std::fprintf(stderr, "gspf: %s\n", w.c_str());
  const std::filesystem::path xy = std::filesystem::path(spec).replace_extension(".xy");
  src.coords = load_xy(xy.string(), src.graph.n());
  return src;
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

void write_grid(const std::string& path, const std::vector<std::string>& comments,
                const std::vector<std::string>& columns,
                const std::function<std::vector<double>(double)>& row, double hi) {
  CsvTable t;
  t.comments = comments;
  t.columns = columns;
  t.rows.reserve(1001);
  for (int i = 0; i <= 1000; ++i) {
    const double x = hi * i / 1000.0;
    std::vector<double> r = {x};
    for (double v : row(x)) r.push_back(v);
    t.rows.push_back(std::move(r));
  }
  write_csv(path, t);
}

CosineWindow window_by_name(const std::string& name) {
  if (name == "hann") return make_hann();
  if (name == "blackman") return make_blackman();
  throw ParamError("unknown window: " + name + " (expected hann or blackman)");
}

// ---------------------------------------------------------------------------
// design

struct DesignOpts {
  std::string graph;
  std::string window = "hann";
  int m_filters = 8;
  int r_overlap = 3;
  std::string warp = "none";
  double lambda_upper = 0.0;
  double eps = 0.0;
  int q_slices = 20;
  std::string out = "gspf-out";
  std::uint64_t seed = 1;
};

int run_design(const DesignOpts& o) {
  const CosineWindow window = window_by_name(o.window);
  std::optional<GraphSource> src;
  std::optional<EigenDecomposition> eig;
  if (!o.graph.empty()) {
    src = resolve_graph(o.graph);
    eig = dense_eigh(laplacian(src->graph).matrix);
  }
  const double lu = o.lambda_upper > 0.0
                        ? o.lambda_upper
                        : (eig ? eig->eigenvalues.back() : 0.0);
  if (lu <= 0.0)
    throw ParamError("design needs --graph or a positive --lambda-upper to fix the "
                     "spectral range");

  FilterBank bank;
  if (o.warp == "none") {
    bank = uniform_translates(window, lu, o.m_filters, o.r_overlap);
  } else if (o.warp == "log") {
    bank = log_wavelet_bank(window, lu, o.m_filters, o.r_overlap, o.eps);
  } else if (o.warp == "degree") {
    if (!src) throw ParamError("--warp degree needs --graph for the maximum degree");
    bank = warp_bank(uniform_translates(window, lu, o.m_filters, o.r_overlap),
                     degree_warp(lu, src->graph.max_degree()), lu);
  } else if (o.warp.rfind("mckay:r=", 0) == 0) {
    const int r = parse_int(o.warp.substr(8), "--warp mckay");
    bank = spectrum_adapted_wavelet_bank(window, normalize_warp(mckay_cdf(r), lu, lu), lu,
                                         o.m_filters, o.r_overlap, o.eps);
  } else if (o.warp == "spectrum") {
    if (!eig) throw ParamError("--warp spectrum needs --graph for the dense spectrum");
    const WarpingFunction w0 = normalize_warp(
        interpolate(exact_cdf_points(eig->eigenvalues), InterpolationMethod::monotone_cubic),
        lu, lu);
    bank = spectrum_adapted_wavelet_bank(window, w0, lu, o.m_filters, o.r_overlap, o.eps);
  } else if (o.warp == "sliced") {
    if (!src) throw ParamError("--warp sliced needs --graph for the Laplacian");
    const CdfEstimate est = sliced_cdf(laplacian(src->graph).matrix, lu, o.q_slices);
    const WarpingFunction w0 =
        normalize_warp(interpolate(est, InterpolationMethod::monotone_cubic), lu, lu);
    bank = spectrum_adapted_wavelet_bank(window, w0, lu, o.m_filters, o.r_overlap, o.eps);
  } else {
    throw ParamError("unknown warp kind: " + o.warp +
                     " (expected none, log, degree, mckay:r=K, spectrum, sliced)");
  }

  const std::string canonical = "design|graph=" + o.graph + "|window=" + o.window +
                                "|M=" + std::to_string(o.m_filters) +
                                "|R=" + std::to_string(o.r_overlap) + "|warp=" + o.warp +
                                "|lambda-upper=" + fmt17(o.lambda_upper) +
                                "|eps=" + fmt17(o.eps) + "|Q=" + std::to_string(o.q_slices) +
                                "|seed=" + std::to_string(o.seed);
  const std::vector<std::string> comments = {"gspf design",
                                             "config-hash " + config_hash(canonical)};
  ensure_dir(o.out);
  save_bank(o.out + "/bank.json", bank);
  for (int m = 0; m < bank.size(); ++m) {
    char name[32];
    std::snprintf(name, sizeof name, "/kernel_%02d.csv", m + 1);
    const Kernel& k = bank.kernels[m];
    write_grid(o.out + name, comments, {"lambda", "value"},
               [&](double x) { return std::vector<double>{k(x)}; }, lu);
  }
  write_grid(o.out + "/response.csv", comments, {"lambda", "response"},
             [&](double x) { return std::vector<double>{bank.response(x)}; }, lu);

  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = lu * i / 1000.0;
    worst = std::max(worst, std::abs(bank.response(x) - bank.frame_constant));
  }
  const bool grid_tight = worst <= 1e-9 * bank.frame_constant;
  std::printf("lambda_upper: %s (%s)\n", fmtg(lu).c_str(),
              o.lambda_upper > 0.0 ? "given" : "graph spectrum");
  std::printf("frame constant: %s\n", fmtg(bank.frame_constant).c_str());
  std::printf("response: max |G - C| = %s on 1001 grid points (%s)\n", fmtg(worst).c_str(),
              grid_tight ? "tight" : "not tight");
  if (eig) {
    const FrameBounds fb = frame_bounds(*eig, bank);
    const double gap = std::abs(fb.b - fb.a) / fb.b;
    std::printf("spectrum check: A = %s, B = %s, relative gap %s (%s)\n",
                fmtg(fb.a).c_str(), fmtg(fb.b).c_str(), fmtg(gap).c_str(),
                gap <= 1e-9 ? "tight" : "not tight");
  }
  std::printf("wrote bank.json, %d kernel grids, response.csv to %s\n", bank.size(),
              o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// cdf

struct CdfOpts {
  std::string graph;
  std::string method = "exact";
  int q_slices = 20;
  double lambda_upper = 0.0;
  std::string out = "gspf-out";
  std::uint64_t seed = 1;
};

int run_cdf(const CdfOpts& o) {
  const GraphSource src = resolve_graph(o.graph);
  CdfEstimate est;
  if (o.method == "exact" || o.method == "subsample") {
    const EigenDecomposition eig = dense_eigh(laplacian(src.graph).matrix);
    if (o.method == "exact") {
      est = exact_cdf_points(eig.eigenvalues);
    } else {
      if (o.q_slices < 2) throw ParamError("subsampling needs --Q of at least 2");
      const int n = src.graph.n();
      std::vector<int> keep;
      keep.reserve(o.q_slices + 1);
      for (int k = 0; k <= o.q_slices; ++k) {
        const int idx = static_cast<int>(
            std::lround(static_cast<double>(k) * (n - 1) / o.q_slices));
        if (keep.empty() || idx != keep.back()) keep.push_back(idx);
      }
      est = exact_cdf_points(eig.eigenvalues, keep);
    }
  } else if (o.method == "sliced") {
    double lu = o.lambda_upper;
    if (lu <= 0.0) {
      const EigenDecomposition eig = dense_eigh(laplacian(src.graph).matrix);
      lu = eig.eigenvalues.back();
    }
    est = sliced_cdf(laplacian(src.graph).matrix, lu, o.q_slices);
  } else {
    throw ParamError("unknown cdf method: " + o.method +
                     " (expected exact, subsample, sliced)");
  }

  const std::string canonical = "cdf|graph=" + o.graph + "|method=" + o.method +
                                "|Q=" + std::to_string(o.q_slices) +
                                "|lambda-upper=" + fmt17(o.lambda_upper) +
                                "|seed=" + std::to_string(o.seed);
  const std::vector<std::string> comments = {"gspf cdf",
                                             "config-hash " + config_hash(canonical)};
  ensure_dir(o.out);
  save_cdf(o.out + "/cdf.csv", est);
  {
    CsvTable t;
    t.comments = comments;
    const bool sliced = !est.raw_counts.empty();
    t.columns = sliced ? std::vector<std::string>{"x", "value", "raw_count", "shift"}
                       : std::vector<std::string>{"x", "value"};
    for (std::size_t i = 0; i < est.x.size(); ++i) {
      std::vector<double> row = {est.x[i], est.value[i]};
      if (sliced) {
        row.push_back(static_cast<double>(est.raw_counts[i]));
        row.push_back(est.shifts_used[i]);
      }
      t.rows.push_back(std::move(row));
    }
    write_csv(o.out + "/knots.csv", t);
  }
  const WarpingFunction w = interpolate(est, InterpolationMethod::monotone_cubic);
  write_grid(o.out + "/warp.csv", comments, {"lambda", "warp"},
             [&](double x) { return std::vector<double>{w(x)}; }, est.x.back());

  std::printf("knots: %zu (first (%s, %s), last (%s, %s))\n", est.x.size(),
              fmtg(est.x.front()).c_str(), fmtg(est.value.front()).c_str(),
              fmtg(est.x.back()).c_str(), fmtg(est.value.back()).c_str());
  std::printf("wrote cdf.csv, knots.csv, warp.csv to %s\n", o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
  std::string graph;
  bool demo = false;
  std::vector<std::string> bands;
  int m_filters = 15;
  int r_overlap = 3;
  int q_slices = 20;
  std::string signal;
  std::string bank;
  std::string out = "gspf-out";
  std::uint64_t seed = 1;
};

std::vector<DemoBand> parse_bands(const std::vector<std::string>& specs) {
  std::vector<DemoBand> bands;
  for (const std::string& s : specs) {
    const std::vector<std::string> parts = split(s, ':');
    if (parts.size() < 2 || parts.size() > 3)
      throw ParamError("band spec '" + s + "': expected lo:hi or lo:hi:cluster");
    DemoBand b;
    b.lo = parse_double(parts[0], "band " + s);
    b.hi = parse_double(parts[1], "band " + s);
    if (parts.size() == 3) b.cluster = parse_int(parts[2], "band " + s);
    bands.push_back(b);
  }
  return bands;
}

Signal read_signal(const std::string& path, int n) {
  const CsvTable t = read_csv(path);
  int col = t.columns.size() == 1 ? 0 : -1;
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    if (t.columns[j] == "value") col = static_cast<int>(j);
  if (col < 0) throw DataError("signal file " + path + " has no value column");
  if (static_cast<int>(t.rows.size()) != n)
    throw DataError("signal file " + path + " carries " + std::to_string(t.rows.size()) +
                    " values for a graph on " + std::to_string(n) + " vertices");
  Signal f;
  f.values.reserve(t.rows.size());
  for (const std::vector<double>& row : t.rows) f.values.push_back(row[col]);
  return f;
}

// Per-filter coefficient maps, one file per filter, with layout columns when
// coordinates are known.
void write_filter_maps(const std::string& out, const std::vector<std::string>& comments,
                       const DenseMatrix& coefficients,
                       const std::vector<std::array<double, 2>>& coords) {
  const bool xy = static_cast<int>(coords.size()) == coefficients.rows();
  for (int m = 0; m < coefficients.cols(); ++m) {
    char name[32];
    std::snprintf(name, sizeof name, "/filter_%02d.csv", m + 1);
    CsvTable t;
    t.comments = comments;
    t.columns = xy ? std::vector<std::string>{"vertex", "x", "y", "value"}
                   : std::vector<std::string>{"vertex", "value"};
    for (int i = 0; i < coefficients.rows(); ++i) {
      if (xy)
        t.rows.push_back({static_cast<double>(i), coords[i][0], coords[i][1],
                          coefficients(i, m)});
      else
        t.rows.push_back({static_cast<double>(i), coefficients(i, m)});
    }
    write_csv(out + name, t);
  }
}

void write_coefficients(const std::string& path, const std::vector<std::string>& comments,
                        const DenseMatrix& coefficients) {
  CsvTable t;
  t.comments = comments;
  t.columns = {"vertex", "filter", "value"};
  for (int m = 0; m < coefficients.cols(); ++m)
    for (int i = 0; i < coefficients.rows(); ++i)
      t.rows.push_back({static_cast<double>(i), static_cast<double>(m),
                        coefficients(i, m)});
  write_csv(path, t);
}

int run_analyze(const AnalyzeOpts& o) {
  if (o.demo && (!o.signal.empty() || !o.bank.empty()))
    throw ParamError("--demo synthesizes its own signal and bank; drop --signal/--bank");
  if (!o.demo && (o.signal.empty() || o.bank.empty()))
    throw ParamError("analyze needs --demo, or --signal and --bank together");

  const GraphSource src = resolve_graph(o.graph);
  std::string bands_key;
  for (const std::string& s : o.bands) bands_key += s + ",";
  const std::string canonical =
      "analyze|graph=" + o.graph + "|demo=" + (o.demo ? "1" : "0") +
      "|bands=" + bands_key + "|M=" + std::to_string(o.m_filters) +
      "|R=" + std::to_string(o.r_overlap) + "|Q=" + std::to_string(o.q_slices) +
      "|signal=" + o.signal + "|bank=" + o.bank + "|seed=" + std::to_string(o.seed);
  const std::vector<std::string> comments = {"gspf analyze",
                                             "config-hash " + config_hash(canonical),
                                             "seed " + std::to_string(o.seed)};
  ensure_dir(o.out);

  if (o.demo) {
    const std::vector<DemoBand> bands = o.bands.empty() ? demo_bands() : parse_bands(o.bands);
    const VertexFrequencyResult demo =
        vertex_frequency_demo(src.graph, o.m_filters, o.r_overlap, o.q_slices, bands, o.seed);
    const bool xy = static_cast<int>(src.coords.size()) == src.graph.n();
    {
      CsvTable t;
      t.comments = comments;
      t.columns = xy ? std::vector<std::string>{"vertex", "x", "y", "cluster"}
                     : std::vector<std::string>{"vertex", "cluster"};
      for (int i = 0; i < src.graph.n(); ++i) {
        if (xy)
          t.rows.push_back({static_cast<double>(i), src.coords[i][0], src.coords[i][1],
                            static_cast<double>(demo.clusters[i])});
        else
          t.rows.push_back({static_cast<double>(i), static_cast<double>(demo.clusters[i])});
      }
      write_csv(o.out + "/clusters.csv", t);
    }
    {
      CsvTable t;
      t.comments = comments;
      t.columns = xy ? std::vector<std::string>{"vertex", "x", "y", "value"}
                     : std::vector<std::string>{"vertex", "value"};
      for (int i = 0; i < src.graph.n(); ++i) {
        if (xy)
          t.rows.push_back({static_cast<double>(i), src.coords[i][0], src.coords[i][1],
                            demo.signal.values[i]});
        else
          t.rows.push_back({static_cast<double>(i), demo.signal.values[i]});
      }
      write_csv(o.out + "/signal.csv", t);
    }
    {
      CsvTable t;
      t.comments = comments;
      t.columns = {"filter", "energy_share"};
      for (std::size_t m = 0; m < demo.filter_energy.size(); ++m)
        t.rows.push_back({static_cast<double>(m), demo.filter_energy[m]});
      write_csv(o.out + "/energy.csv", t);
    }
    write_coefficients(o.out + "/coefficients.csv", comments, demo.coefficients);
    write_filter_maps(o.out, comments, demo.coefficients, src.coords);
    save_bank(o.out + "/bank.json", demo.bank);

    const double gap = std::abs(demo.frame_upper - demo.frame_lower) / demo.frame_upper;
    std::vector<int> sizes(5, 0);
    for (int c : demo.clusters) ++sizes[c];
    std::printf("frame bounds: A = %s, B = %s (relative gap %s, %s)\n",
                fmtg(demo.frame_lower).c_str(), fmtg(demo.frame_upper).c_str(),
                fmtg(gap).c_str(), gap <= 1e-9 ? "tight" : "not tight");
    std::printf("energy ratio: %.17g\n", demo.energy_ratio);
    int quiet = 0;
    for (double share : demo.filter_energy) quiet += share < 0.01 ? 1 : 0;
    std::printf("filters below 1%% energy: %d of %zu\n", quiet, demo.filter_energy.size());
    std::printf("cluster sizes: %d %d %d %d %d\n", sizes[0], sizes[1], sizes[2], sizes[3],
                sizes[4]);
    std::printf("wrote clusters.csv, signal.csv, coefficients.csv, energy.csv, bank.json, "
                "%d filter maps to %s\n",
                o.m_filters, o.out.c_str());
    return 0;
  }

  const Signal f = read_signal(o.signal, src.graph.n());
  const FilterBank bank = load_bank(o.bank);
  const EigenDecomposition eig = dense_eigh(laplacian(src.graph).matrix);
  const DenseMatrix coefficients = analyze(eig, bank, f);
  write_coefficients(o.out + "/coefficients.csv", comments, coefficients);
  write_filter_maps(o.out, comments, coefficients, src.coords);

  const FrameBounds fb = frame_bounds(eig, bank);
  double norm2 = 0.0;
  for (double v : f.values) norm2 += v * v;
  double energy = 0.0;
  const double* data = coefficients.data();
  const std::size_t total =
      static_cast<std::size_t>(coefficients.rows()) * coefficients.cols();
  for (std::size_t i = 0; i < total; ++i) energy += data[i] * data[i];
  const double gap = std::abs(fb.b - fb.a) / fb.b;
  std::printf("frame bounds: A = %s, B = %s (relative gap %s, %s)\n", fmtg(fb.a).c_str(),
              fmtg(fb.b).c_str(), fmtg(gap).c_str(), gap <= 1e-9 ? "tight" : "not tight");
  std::printf("energy ratio: %.17g\n", energy / (fb.a * norm2));
  std::printf("wrote coefficients.csv, %d filter maps to %s\n", bank.size(), o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceOpts {
  std::string suite;
  std::string data = ".";
  std::string out = "gspf-out";
};

int run_reproduce(const ReproduceOpts& o) {
  const std::vector<int>& criteria = suite_criteria(o.suite);
  const std::string canonical = "reproduce|suite=" + o.suite + "|data=" + o.data;
  ensure_dir(o.out);
  CsvTable report;
  report.comments = {"gspf reproduce", "config-hash " + config_hash(canonical)};
  report.columns = {"criterion", "pass", "seconds"};
  bool all_pass = true;
  for (int index : criteria) {
    const CriterionResult res = run_criterion(index, o.data, o.out);
    all_pass = all_pass && res.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", res.pass ? "PASS" : "FAIL",
                res.index, res.name.c_str(), res.detail.c_str(), res.seconds);
    if (!res.notes.empty()) std::printf("     note: %s\n", res.notes.c_str());
    std::fflush(stdout);
    report.comments.push_back("criterion " + std::to_string(res.index) + " (" + res.name +
                              "): " + (res.pass ? "PASS" : "FAIL") + "; " + res.detail);
    report.rows.push_back({static_cast<double>(res.index), res.pass ? 1.0 : 0.0,
                           res.seconds});
  }
  write_csv(o.out + "/report.csv", report);
  std::printf("%s: %zu criteria, report.csv in %s\n", all_pass ? "PASS" : "FAIL",
              criteria.size(), o.out.c_str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrum-adapted tight graph wavelet and vertex-frequency frames"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a config file (flags win)");
  app.allow_config_extras(false);

  static const char* kGraphHelp =
      "path:N, ring:N, comet:N,HUB, sensor:N,SEED[,THRESH[,SIGMA]], regular:N,R,SEED, "
      "erdos:N,P,SEED, or a graph file (edge list or Matrix Market)";

  DesignOpts d;
  CLI::App* design = app.add_subcommand("design", "build a filter bank, emit kernel grids");
  design->configurable(true)->fallthrough();
  design->add_option("--graph", d.graph, kGraphHelp);
  design->add_option("--window", d.window, "cosine-sum window")
      ->check(CLI::IsMember({"hann", "blackman"}));
  design->add_option("--M", d.m_filters, "number of filters");
  design->add_option("--R", d.r_overlap, "translate overlap");
  design->add_option("--warp", d.warp, "none, log, degree, mckay:r=K, spectrum, sliced");
  design->add_option("--lambda-upper", d.lambda_upper,
                     "spectral range; overrides the graph spectrum");
  design->add_option("--eps", d.eps, "log-domain floor (0 picks the default)");
  design->add_option("--Q", d.q_slices, "slices for --warp sliced");
  design->add_option("--out", d.out, "output directory");
  design->add_option("--seed", d.seed, "recorded in CSV provenance");

  CdfOpts c;
  CLI::App* cdf = app.add_subcommand("cdf", "estimate the spectral CDF, emit a warp");
  cdf->configurable(true)->fallthrough();
  cdf->add_option("--graph", c.graph, kGraphHelp)->required();
  cdf->add_option("--method", c.method, "exact, subsample, sliced");
  cdf->add_option("--Q", c.q_slices, "slice or subsample count");
  cdf->add_option("--lambda-upper", c.lambda_upper,
                  "spectral range for --method sliced; skips the eigensolve");
  cdf->add_option("--out", c.out, "output directory");
  cdf->add_option("--seed", c.seed, "recorded in CSV provenance");

  AnalyzeOpts a;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "expand a signal against a frame, emit coefficients");
  analyze_cmd->configurable(true)->fallthrough();
  analyze_cmd->add_option("--graph", a.graph, kGraphHelp)->required();
  analyze_cmd->add_flag("--demo", a.demo,
                        "clustered band-mix signal and sliced-CDF bank, end to end");
  analyze_cmd->add_option("--band", a.bands, "demo band lo:hi[:cluster], repeatable");
  analyze_cmd->add_option("--M", a.m_filters, "demo filter count");
  analyze_cmd->add_option("--R", a.r_overlap, "demo translate overlap");
  analyze_cmd->add_option("--Q", a.q_slices, "demo CDF slices");
  analyze_cmd->add_option("--signal", a.signal, "signal CSV (value column)");
  analyze_cmd->add_option("--bank", a.bank, "bank file from design");
  analyze_cmd->add_option("--out", a.out, "output directory");
  analyze_cmd->add_option("--seed", a.seed, "demo clustering seed");

  ReproduceOpts r;
  CLI::App* reproduce =
      app.add_subcommand("reproduce", "run reproduction suites, emit a pass/fail report");
  reproduce->fallthrough();
  reproduce->add_option("suite", r.suite, "figures, table1, random-graphs, all")
      ->required();
  reproduce->add_option("--data", r.data, "directory holding bundled graph fixtures");
  reproduce->add_option("--out", r.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (design->parsed()) return run_design(d);
    if (cdf->parsed()) return run_cdf(c);
    if (analyze_cmd->parsed()) return run_analyze(a);
    if (reproduce->parsed()) return run_reproduce(r);
  } catch (const ParamError& e) {
    std::fprintf(stderr, "gspf: %s\n", e.what());
    return 2;
  } catch (const DataError& e) {
    std::fprintf(stderr, "gspf: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "gspf: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "gspf: %s\n", e.what());
    return 4;
  }
  return 0;
}
