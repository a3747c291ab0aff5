#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "gspf/csvio.hpp"
#include "gspf/eigh.hpp"
#include "gspf/errors.hpp"
#include "gspf/faddeeva.hpp"
#include "gspf/freeconv.hpp"
#include "gspf/graph.hpp"
#include "gspf/ldl.hpp"
#include "gspf/rng.hpp"
#include "gspf/warping.hpp"

using namespace gspf;

namespace {

std::vector<double> path_spectrum(int n) {
  std::vector<double> ev(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l)
    ev[static_cast<size_t>(l)] = 2.0 - 2.0 * std::cos(M_PI * l / n);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> ring_spectrum(int n) {
  std::vector<double> ev(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    ev[static_cast<size_t>(k)] = 2.0 - 2.0 * std::cos(2.0 * M_PI * k / n);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, eps, 40);
}

double ks_distance(std::vector<double> sample, const WarpingFunction& w) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (size_t i = 0; i < sample.size(); ++i) {
    const double f = w(sample[i]);
    worst = std::max(worst, std::abs(f - static_cast<double>(i) / n));
    worst = std::max(worst, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return worst;
}

void check_nondecreasing(const WarpingFunction& w, double lo, double hi) {
  double prev = w(lo);
  double worst = 0.0;
  for (int i = 1; i < 10000; ++i) {
    const double v = w(lo + (hi - lo) * i / 9999.0);
    worst = std::min(worst, v - prev);
    prev = v;
  }
  CHECK(worst >= -1e-12);
}

void check_roundtrip(const WarpingFunction& w, double lo, double hi) {
  const std::string d = w.descriptor();
  const WarpingFunction back = WarpingFunction::from_descriptor(d);
  CHECK(back.descriptor() == d);
  for (int i = 0; i <= 200; ++i) {
    const double t = lo + (hi - lo) * i / 200.0;
    CHECK(back(t) == w(t));
  }
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("tmp_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("faddeeva function matches axis closed forms") {
  CHECK(std::abs(faddeeva_w({0.0, 0.0}) - std::complex<double>(1.0, 0.0)) <= 1e-14);
  for (int i = 0; i <= 40; ++i) {
    const double x = -5.0 + 0.25 * i;
    const auto w = faddeeva_w({x, 0.0});
    CHECK(std::abs(w.real() - std::exp(-x * x)) <= 1e-13);
    const auto wm = faddeeva_w({-x, 0.0});
    CHECK(std::abs(wm.imag() + w.imag()) <= 1e-13);
  }
  for (double y : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0}) {
    const double exact = std::exp(y * y) * std::erfc(y);
    const auto w = faddeeva_w({0.0, y});
    CHECK(std::abs(w.real() - exact) <= 1e-12 * exact);
    CHECK(std::abs(w.imag()) <= 1e-14);
  }
}

TEST_CASE("gaussian cauchy transform recovers the density and the far field") {
  const double eta = 1e-3;
  for (double x : {-2.0, -1.0, 0.0, 0.7, 1.5}) {
    const auto g = gaussian_cauchy_transform({x, eta});
    const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    CHECK(std::abs(-g.imag() / M_PI - phi) <= 2e-3);
  }
  const std::complex<double> far(0.0, 50.0);
  CHECK(std::abs(gaussian_cauchy_transform(far) * far - 1.0) <= 1e-3);
  CHECK(std::abs(gaussian_cauchy_transform({0.0, 2.0}).real()) <= 1e-15);
}

TEST_CASE("free convolution of normal and semicircle") {
  const FreeConvolutionTable tab = normal_semicircle_free_convolution();
  REQUIRE(tab.x.size() == 4001);

  for (double rho : tab.density) CHECK(rho >= 0.0);
  CHECK(tab.mass() == doctest::Approx(1.0).epsilon(1e-3));

  // Both input laws are symmetric, so the convolution is too.
  const size_t m = tab.x.size();
  for (size_t i = 0; i < m; ++i) {
    CHECK(std::abs(tab.density[i] - tab.density[m - 1 - i]) <= 1e-8);
    CHECK(std::abs((tab.cdf[i] + tab.cdf[m - 1 - i]) / tab.mass() - 1.0) <= 1e-4);
  }

  // Free additive convolution adds variances: 1 (normal) + 1 (semicircle).
  double second_moment = 0.0;
  const double h = tab.x[1] - tab.x[0];
  for (size_t i = 0; i < m; ++i) {
    const double wgt = (i == 0 || i + 1 == m) ? 0.5 * h : h;
    second_moment += wgt * tab.x[i] * tab.x[i] * tab.density[i];
  }
  CHECK(second_moment == doctest::Approx(2.0).epsilon(0.01));

  // Smoothed CDF: strictly increasing far beyond the grid, tiny but positive
  // in the deep left tail, saturating at the table mass on the right.
  double prev = tab.cdf_at(-15.0);
  CHECK(prev > 0.0);
  for (int i = 1; i <= 200; ++i) {
    const double v = tab.cdf_at(-15.0 + 23.0 * i / 200.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(std::abs(tab.cdf_at(40.0) - tab.mass()) <= 1e-3);

  const FreeConvolutionTable again = normal_semicircle_free_convolution();
  CHECK(again.density == tab.density);
}

TEST_CASE("exact cdf points follow the collapse rule") {
  const CdfEstimate simple = exact_cdf_points({0.0, 1.0, 2.0, 3.0});
  CHECK(simple.provenance == CdfProvenance::exact_spectrum);
  CHECK(simple.x == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(simple.value == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});

  const CdfEstimate ring4 = exact_cdf_points({0.0, 2.0, 2.0, 4.0});
  CHECK(ring4.x == std::vector<double>{0.0, 2.0, 4.0});
  CHECK(ring4.value == std::vector<double>{0.0, 2.0 / 3.0, 1.0});

  const CdfEstimate pair = exact_cdf_points({0.0, 7.5});
  CHECK(pair.x == std::vector<double>{0.0, 7.5});
  CHECK(pair.value == std::vector<double>{0.0, 1.0});

  // A tiny solver residue at the bottom is forced onto (0, 0).
  const CdfEstimate nudged = exact_cdf_points({-1e-12, 1.0, 2.5});
  CHECK(nudged.x.front() == 0.0);
  CHECK(nudged.value.front() == 0.0);

  CHECK_THROWS_AS(exact_cdf_points({0.0, 0.0, 2.0}), DataError);
  CHECK_THROWS_AS(exact_cdf_points({0.0, 2.0, 1.0}), ParamError);
  CHECK_THROWS_AS(exact_cdf_points({1.0, 2.0, 3.0}), ParamError);
  CHECK_THROWS_AS(exact_cdf_points({0.0}), ParamError);
  CHECK_THROWS_AS(exact_cdf_points({0.0, 0.0}), DataError);
}

TEST_CASE("subsampled cdf points keep the chosen indices") {
  const std::vector<double> ev = path_spectrum(64);
  std::vector<int> keep;
  for (int i = 0; i < 64; i += 9) keep.push_back(i);
  REQUIRE(keep.back() == 63);
  const CdfEstimate est = exact_cdf_points(ev, keep);
  CHECK(est.provenance == CdfProvenance::subsampled);
  REQUIRE(est.x.size() == 8);
  for (size_t i = 0; i < keep.size(); ++i) {
    CHECK(est.value[i] == keep[i] / 63.0);
    if (i > 0) CHECK(est.x[i] == ev[static_cast<size_t>(keep[i])]);
  }
  CHECK(est.x.front() == 0.0);

  CHECK_THROWS_AS(exact_cdf_points(ev, {0, 9, 18}), ParamError);       // missing top
  CHECK_THROWS_AS(exact_cdf_points(ev, {9, 18, 63}), ParamError);      // missing bottom
  CHECK_THROWS_AS(exact_cdf_points(ev, {0, 18, 9, 63}), ParamError);   // out of order
  CHECK_THROWS_AS(exact_cdf_points(ev, {0, 9, 64}), ParamError);       // out of range
  CHECK_THROWS_AS(exact_cdf_points(ev, {0}), ParamError);
}

TEST_CASE("linear interpolation hits every knot exactly") {
  const std::vector<double> ev = path_spectrum(64);
  const WarpingFunction w = interpolate(exact_cdf_points(ev), InterpolationMethod::linear);
  for (int l = 0; l < 64; ++l) CHECK(w(ev[static_cast<size_t>(l)]) == l / 63.0);
  CHECK(w(-1.0) == 0.0);
  CHECK(w(ev.back() + 5.0) == 1.0);

  // Two knots give the affine map through them.
  CdfEstimate two;
  two.x = {0.0, 8.0};
  two.value = {0.0, 1.0};
  const WarpingFunction affine = interpolate(two, InterpolationMethod::linear);
  CHECK(affine(2.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(affine(6.0) == doctest::Approx(0.75).epsilon(1e-15));

  CdfEstimate bad;
  bad.x = {0.0, 1.0, 2.0};
  bad.value = {0.0, 0.8, 0.5};
  CHECK_THROWS_AS(interpolate(bad, InterpolationMethod::linear), DataError);
  bad.value = {0.0, 0.5, 1.0};
  bad.x = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(interpolate(bad, InterpolationMethod::monotone_cubic), DataError);
  CdfEstimate lone;
  lone.x = {0.0};
  lone.value = {0.0};
  CHECK_THROWS_AS(interpolate(lone, InterpolationMethod::linear), ParamError);
}

TEST_CASE("monotone cubic interpolant of the ring cdf matches the arccos law") {
  const std::vector<double> ev = ring_spectrum(3000);
  const WarpingFunction w =
      interpolate(exact_cdf_points(ev), InterpolationMethod::monotone_cubic);
  double sup = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double lam = 4.0 * i / 2000.0;
    const double exact = std::acos(1.0 - 0.5 * lam) / M_PI;
    sup = std::max(sup, std::abs(w(lam) - exact));
  }
  CHECK(sup <= 0.01);
  check_nondecreasing(w, 0.0, 4.0);
}

TEST_CASE("monotone cubic never overshoots its knots") {
  Rng rng(314);
  CdfEstimate est;
  double x = 0.0, v = 0.0;
  est.x.push_back(x);
  est.value.push_back(v);
  for (int i = 0; i < 14; ++i) {
    x += 0.05 + rng.uniform();
    // quantize so some intervals are exactly flat
    v += std::floor(3.0 * rng.uniform()) / 10.0;
    est.x.push_back(x);
    est.value.push_back(std::min(v, 1.0));
  }
  est.value.back() = 1.0;
  const WarpingFunction w = interpolate(est, InterpolationMethod::monotone_cubic);
  for (size_t i = 0; i + 1 < est.x.size(); ++i) {
    for (int j = 0; j <= 100; ++j) {
      const double t = est.x[i] + (est.x[i + 1] - est.x[i]) * j / 100.0;
      const double y = w(t);
      CHECK(y >= est.value[i] - 1e-12);
      CHECK(y <= est.value[i + 1] + 1e-12);
    }
  }
  check_nondecreasing(w, est.x.front(), est.x.back());

  // The serialized slopes sit inside the Fritsch-Carlson region.
  std::vector<std::string> tok;
  {
    std::string d = w.descriptor();
    size_t pos = 0;
    while (pos < d.size()) {
      size_t next = d.find(' ', pos);
      if (next == std::string::npos) next = d.size();
      tok.push_back(d.substr(pos, next - pos));
      pos = next + 1;
    }
  }
  REQUIRE(tok[0] == "pchip");
  const size_t k = est.x.size();
  std::vector<double> xs(k), ys(k), ds(k);
  for (size_t i = 0; i < k; ++i) {
    xs[i] = std::strtod(tok[2 + 3 * i].c_str(), nullptr);
    ys[i] = std::strtod(tok[3 + 3 * i].c_str(), nullptr);
    ds[i] = std::strtod(tok[4 + 3 * i].c_str(), nullptr);
  }
  for (size_t i = 0; i + 1 < k; ++i) {
    const double delta = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (delta == 0.0) {
      CHECK(ds[i] == 0.0);
      CHECK(ds[i + 1] == 0.0);
    } else {
      const double alpha = ds[i] / delta;
      const double beta = ds[i + 1] / delta;
      CHECK(alpha >= 0.0);
      CHECK(beta >= 0.0);
      CHECK(alpha * alpha + beta * beta <= 9.0 + 1e-9);
    }
  }
}

TEST_CASE("sliced cdf matches closed-form counts on the path") {
  const Graph g = build_path(64);
  const SparseSym l = laplacian(g).matrix;
  const CdfEstimate est = sliced_cdf(l, 4.0, 8);
  CHECK(est.provenance == CdfProvenance::inertia_sliced);
  REQUIRE(est.x.size() == 9);
  CHECK(est.raw_counts.front() == 0);
  CHECK(est.raw_counts.back() == 63);
  CHECK(est.value.front() == 0.0);
  CHECK(est.value.back() == 1.0);

  const std::vector<double> ev = path_spectrum(64);
  for (int q = 1; q < 8; ++q) {
    const double shift = est.shifts_used[static_cast<size_t>(q)];
    int below = 0;
    for (double lam : ev)
      if (lam < shift) ++below;
    CHECK(est.raw_counts[static_cast<size_t>(q)] == below);
    CHECK(est.value[static_cast<size_t>(q)] == below / 63.0);
    CHECK(est.x[static_cast<size_t>(q)] == q * 0.5);
  }

  // Shift 2.0 is an eigenvalue, and shift 1.0 zeroes the very first pivot
  // (the endpoint has degree 1, so it equals 1 - s) with no eigenvalue
  // nearby. Both zero pivots are cleared by a single nudge.
  for (int q = 1; q < 8; ++q) {
    const double grid_shift = q * 0.5;
    if (q == 2 || q == 4)
      CHECK(est.shifts_used[static_cast<size_t>(q)] == grid_shift + 4e-8);
    else
      CHECK(est.shifts_used[static_cast<size_t>(q)] == grid_shift);
  }

  const CdfEstimate again = sliced_cdf(l, 4.0, 8);
  CHECK(again.value == est.value);
  CHECK(again.shifts_used == est.shifts_used);
}

TEST_CASE("sliced cdf agrees with dense counts") {
  const Graph sensor = build_sensor(64, 1);
  const SparseSym ls = laplacian(sensor).matrix;
  const double lam_up = estimate_lambda_upper(ls, LambdaUpperMethod::anderson_morley);

  const CdfEstimate two = sliced_cdf(ls, lam_up, 2);
  REQUIRE(two.x.size() == 3);
  const EigenDecomposition es = dense_eigh(ls);
  int below_mid = 0;
  for (double lam : es.eigenvalues)
    if (lam < two.shifts_used[1]) ++below_mid;
  CHECK(two.raw_counts[1] == below_mid);

  const Graph comet = build_comet(64, 31);
  const SparseSym lc = laplacian(comet).matrix;
  const double lam_up_c = estimate_lambda_upper(lc, LambdaUpperMethod::anderson_morley);
  const CdfEstimate sliced = sliced_cdf(lc, lam_up_c, 20);
  const EigenDecomposition ec = dense_eigh(lc);
  for (int q = 1; q < 20; ++q) {
    int below = 0;
    for (double lam : ec.eigenvalues)
      if (lam < sliced.shifts_used[static_cast<size_t>(q)]) ++below;
    CHECK(sliced.raw_counts[static_cast<size_t>(q)] == below);
  }

  // A grid reaching past lambda_max clamps interior values at 1.
  const CdfEstimate wide = sliced_cdf(laplacian(build_path(4)).matrix, 10.0, 5);
  CHECK(wide.raw_counts[3] == 4);
  CHECK(wide.value[3] == 1.0);

  CHECK_THROWS_AS(sliced_cdf(ls, lam_up, 1), ParamError);
  CHECK_THROWS_AS(sliced_cdf(ls, 0.0, 4), ParamError);
}

TEST_CASE("mckay law: closed form against quadrature and a sampled graph") {
  for (int r : {3, 4, 5}) {
    const WarpingFunction w = mckay_cdf(r);
    CHECK(w(static_cast<double>(r)) == 0.5);
    const double root = 2.0 * std::sqrt(r - 1.0);
    CHECK(w(r - root) == 0.0);
    CHECK(w(r + root) == 1.0);
    CHECK(w(0.0) == 0.0);
    check_nondecreasing(w, 0.0, 2.0 * r);

    // Integrate the density with the square roots substituted away:
    // s = r + root*sin(theta).
    const double rr = r;
    auto integrand = [rr, root](double theta) {
      const double sin_t = std::sin(theta);
      const double cos_t = std::cos(theta);
      const double rho2 = root * root;
      return rr * rho2 * cos_t * cos_t / (2.0 * M_PI * (rr * rr - rho2 * sin_t * sin_t));
    };
    const double total = integrate(integrand, -0.5 * M_PI, 0.5 * M_PI, 1e-10);
    CHECK(std::abs(total - 1.0) <= 1e-8);
    for (int i = 1; i < 24; ++i) {
      const double z = r - root + 2.0 * root * i / 24.0;
      const double theta_z = std::asin((z - rr) / root);
      const double integral = integrate(integrand, -0.5 * M_PI, theta_z, 1e-9);
      CHECK(std::abs(w(z) - integral) <= 1e-6);
    }
  }

  const Graph g = build_random_regular(3000, 3, 7);
  const EigenDecomposition e = dense_eigh(laplacian(g).matrix);
  CHECK(ks_distance(e.eigenvalues, mckay_cdf(3)) <= 0.05);
}

TEST_CASE("er normalized law: closed form against quadrature and a sampled graph") {
  const int n = 3000;
  const double p = 0.05;
  const WarpingFunction w = er_normalized_cdf(n, p);
  const double half_width = 2.0 * std::sqrt((1.0 - p) / (p * n));
  CHECK(w(1.0) == 0.5);
  CHECK(w(1.0 - half_width) == 0.0);
  CHECK(w(1.0 + half_width) == 1.0);
  check_nondecreasing(w, 0.0, 2.0);

  // Semicircle density in rescaled units x = c (z - 1), then x = 2 sin(theta).
  auto integrand = [](double theta) {
    const double c = std::cos(theta);
    return (2.0 / M_PI) * c * c;
  };
  for (int i = 1; i < 24; ++i) {
    const double z = 1.0 - half_width + 2.0 * half_width * i / 24.0;
    const double big_x = std::sqrt(p * n / (1.0 - p)) * (z - 1.0);
    const double integral =
        integrate(integrand, -0.5 * M_PI, std::asin(0.5 * big_x), 1e-9);
    CHECK(std::abs(w(z) - integral) <= 1e-6);
  }

  const Graph g = build_erdos_renyi(n, p, 11);
  const EigenDecomposition e = dense_eigh(laplacian(g, LaplacianKind::normalized).matrix);
  CHECK(ks_distance(e.eigenvalues, w) <= 0.05);

  CHECK_THROWS_AS(er_normalized_cdf(1, 0.5), ParamError);
  CHECK_THROWS_AS(er_normalized_cdf(100, 0.0), ParamError);
  CHECK_THROWS_AS(er_normalized_cdf(100, 1.0), ParamError);
}

TEST_CASE("er combinatorial law: clamped at zero, exactly one at the top") {
  ErCombinatorialInfo info;
  const WarpingFunction w = er_combinatorial_cdf(3000, 0.05, 1e-3, 4001, 0.0, &info);
  CHECK(info.lambda_upper == doctest::Approx(197.75).epsilon(1e-4));
  CHECK(info.table_mass == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(info.clamped_mass > 0.0);
  CHECK(info.clamped_mass < 5e-3);

  CHECK(w(0.0) == 0.0);
  CHECK(w(-3.0) == 0.0);
  CHECK(w(info.lambda_upper) == 1.0);
  CHECK(w(150.0) == doctest::Approx(0.5).epsilon(0.01));
  check_nondecreasing(w, 0.0, info.lambda_upper);

  CHECK_THROWS_AS(er_combinatorial_cdf(1, 0.5), ParamError);
  CHECK_THROWS_AS(er_combinatorial_cdf(100, -0.1), ParamError);
}

TEST_CASE("normalize warp rescales the range exactly") {
  const WarpingFunction ident = normalize_warp(WarpingFunction(), 4.0, 4.0);
  for (int i = 0; i <= 40; ++i) {
    const double t = 4.0 * i / 40.0;
    CHECK(ident(t) == t);
  }

  const WarpingFunction mk = normalize_warp(mckay_cdf(3), 6.0, 6.0);
  CHECK(mk(3.0) == 3.0);
  CHECK(mk(0.0) == 0.0);
  CHECK(mk(6.0) == 6.0);

  CdfEstimate est;
  est.x = {0.0, 1.0, 2.0};
  est.value = {0.2, 0.5, 0.9};
  const WarpingFunction stretched =
      interpolate(est, InterpolationMethod::linear);
  const WarpingFunction scaled = normalize_warp(stretched, 2.0, 12.0);
  CHECK(scaled(0.0) == 0.0);
  CHECK(std::abs(scaled(2.0) - 12.0) <= 1e-12);
  CHECK(scaled(1.0) == doctest::Approx(12.0 * 0.3 / 0.7).epsilon(1e-14));

  CdfEstimate flat;
  flat.x = {0.0, 4.0};
  flat.value = {0.3, 0.3};
  const WarpingFunction constant = interpolate(flat, InterpolationMethod::linear);
  CHECK_THROWS_AS(normalize_warp(constant, 4.0, 1.0), ParamError);
  CHECK_THROWS_AS(normalize_warp(WarpingFunction(), -1.0, 1.0), ParamError);
  CHECK_THROWS_AS(normalize_warp(WarpingFunction(), 1.0, 0.0), ParamError);
}

TEST_CASE("warp descriptors round-trip bit-exactly") {
  check_roundtrip(WarpingFunction(), 0.0, 5.0);
  check_roundtrip(mckay_cdf(4), 0.0, 8.0);
  check_roundtrip(er_normalized_cdf(3000, 0.05), 0.0, 2.0);
  check_roundtrip(normalize_warp(mckay_cdf(3), 6.0, 1.0), 0.0, 6.0);

  const std::vector<double> ev = path_spectrum(16);
  const CdfEstimate est = exact_cdf_points(ev);
  check_roundtrip(interpolate(est, InterpolationMethod::linear), 0.0, 4.0);
  check_roundtrip(interpolate(est, InterpolationMethod::monotone_cubic), 0.0, 4.0);

  ErCombinatorialInfo info;
  const WarpingFunction er = er_combinatorial_cdf(400, 0.1, 1e-3, 801, 0.0, &info);
  check_roundtrip(er, 0.0, info.lambda_upper);

  CHECK_THROWS_AS(WarpingFunction::from_descriptor("spline 3 0 0 1 1 2 2"), DataError);
  CHECK_THROWS_AS(WarpingFunction::from_descriptor("affine 1.0"), DataError);
  CHECK_THROWS_AS(WarpingFunction::from_descriptor("mckay 2"), DataError);
  CHECK_THROWS_AS(WarpingFunction::from_descriptor("identity identity"), DataError);
  CHECK_THROWS_AS(WarpingFunction::from_descriptor("linear 2 0 zero 1 1"), DataError);
}

TEST_CASE("cdf estimates survive the csv round trip") {
  const Graph g = build_path(32);
  const CdfEstimate est = sliced_cdf(laplacian(g).matrix, 4.0, 6);
  TempFile f("cdf_roundtrip.csv");
  save_cdf(f.path, est);
  const CdfEstimate back = load_cdf(f.path);
  CHECK(back.provenance == CdfProvenance::inertia_sliced);
  CHECK(back.x == est.x);
  CHECK(back.value == est.value);
  CHECK(back.raw_counts.empty());

  const CdfEstimate exact = exact_cdf_points(path_spectrum(8));
  TempFile f2("cdf_exact.csv");
  save_cdf(f2.path, exact);
  CHECK(load_cdf(f2.path).provenance == CdfProvenance::exact_spectrum);

  TempFile bad("cdf_bad.csv");
  {
    CsvTable t;
    t.columns = {"x", "value"};
    t.rows = {{0.0, 0.0}, {1.0, 1.0}};
    write_csv(bad.path, t);
  }
  CHECK_THROWS_AS(load_cdf(bad.path), DataError);  // no provenance line

  TempFile bad2("cdf_bad2.csv");
  {
    CsvTable t;
    t.comments = {"provenance: exact-spectrum"};
    t.columns = {"x", "value"};
    t.rows = {{0.0, 0.0}, {1.0, 0.6}, {2.0, 0.5}, {3.0, 1.0}};
    write_csv(bad2.path, t);
  }
  CHECK_THROWS_AS(load_cdf(bad2.path), DataError);  // values dip
}
