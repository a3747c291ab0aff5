#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "gspf/eigh.hpp"
#include "gspf/errors.hpp"
#include "gspf/graph.hpp"
#include "gspf/ldl.hpp"
#include "gspf/rng.hpp"
#include "gspf/sparse.hpp"

using namespace gspf;

namespace {

SparseSym identity(int n) {
  std::vector<std::tuple<int, int, double>> t;
  for (int i = 0; i < n; ++i) t.emplace_back(i, i, 1.0);
  return SparseSym::from_triplets(n, t);
}

SparseSym shifted(const SparseSym& a, double s) {
  std::vector<std::tuple<int, int, double>> t;
  std::vector<char> has_diag(a.n, 0);
  for (int c = 0; c < a.n; ++c)
    for (int p = a.colptr[c]; p < a.colptr[c + 1]; ++p) {
      double v = a.vals[p];
      if (a.rows[p] == c) {
        v -= s;
        has_diag[c] = 1;
      }
      t.emplace_back(a.rows[p], c, v);
    }
  for (int c = 0; c < a.n; ++c)
    if (!has_diag[c]) t.emplace_back(c, c, -s);
  return SparseSym::from_triplets(a.n, t);
}

// Random sparse symmetric matrix: Erdos-Renyi pattern, values in [-1, 1],
// diagonal present with probability 0.9.
SparseSym random_sparse(int n, double density, Rng& rng) {
  std::vector<std::tuple<int, int, double>> t;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < density) t.emplace_back(j, i, 2.0 * rng.uniform() - 1.0);
  for (int i = 0; i < n; ++i)
    if (rng.uniform() < 0.9) t.emplace_back(i, i, 4.0 * rng.uniform() - 2.0);
  return SparseSym::from_triplets(n, t);
}

// Same pattern but diagonally dominant, so pivot-free elimination cannot grow.
SparseSym random_dominant(int n, double density, Rng& rng) {
  std::vector<std::tuple<int, int, double>> t;
  std::vector<double> rowsum(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < density) {
        const double v = 2.0 * rng.uniform() - 1.0;
        t.emplace_back(j, i, v);
        rowsum[i] += std::abs(v);
        rowsum[j] += std::abs(v);
      }
  for (int i = 0; i < n; ++i) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    t.emplace_back(i, i, sign * (rowsum[i] + 0.1 + rng.uniform()));
  }
  return SparseSym::from_triplets(n, t);
}

// P (A - shift I) P^T = L D L^T unwound back to the original ordering.
DenseMatrix reconstruct(const LdlFactorization& f) {
  const int n = f.n;
  DenseMatrix l(n, n);
  for (int i = 0; i < n; ++i) l(i, i) = 1.0;
  for (int j = 0; j < n; ++j)
    for (int p = f.lp[j]; p < f.lp[j + 1]; ++p) l(f.li[p], j) = f.lx[p];
  DenseMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k <= std::min(i, j); ++k) s += l(i, k) * f.d[k] * l(j, k);
      out(f.perm[i], f.perm[j]) = s + (i == j ? f.shift : 0.0);
    }
  return out;
}

int count_below(const std::vector<double>& eigenvalues, double s) {
  int c = 0;
  for (double v : eigenvalues)
    if (v < s) ++c;
  return c;
}

}  // namespace

TEST_CASE("spmv agrees with the dense product") {
  {
    const SparseSym a = identity(5);
    const std::vector<double> x = {1, -2, 3, 0.5, 4};
    CHECK(spmv(a, x) == x);
  }
  {
    const SparseSym l = laplacian(build_path(64)).matrix;
    const std::vector<double> ones(64, 1.0);
    for (double v : spmv(l, ones)) CHECK(std::abs(v) <= 1e-14);
  }
  {
    Rng rng(77);
    const SparseSym a = random_sparse(50, 0.2, rng);
    std::vector<double> x(50);
    for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
    const DenseMatrix ad = to_dense(a);
    const std::vector<double> y = spmv(a, x);
    for (int i = 0; i < 50; ++i) {
      double want = 0.0;
      for (int j = 0; j < 50; ++j) want += ad(i, j) * x[j];
      CHECK(std::abs(y[i] - want) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(spmv(identity(3), {1.0, 2.0}), ParamError);
}

TEST_CASE("dense_eigh on small matrices") {
  {
    std::vector<std::tuple<int, int, double>> t = {{0, 0, 3.0}, {1, 1, 1.0}, {2, 2, 2.0}};
    const auto e = dense_eigh(SparseSym::from_triplets(3, t));
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(e.eigenvalues[2] == doctest::Approx(3.0));
  }
  {
    DenseMatrix a(2, 2);
    a(0, 1) = a(1, 0) = 1.0;
    const auto e = dense_eigh(a);
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int l = 0; l < 2; ++l) {
      CHECK(std::abs(std::abs(e.eigenvectors(0, l)) - inv_sqrt2) <= 1e-12);
      CHECK(std::abs(std::abs(e.eigenvectors(1, l)) - inv_sqrt2) <= 1e-12);
    }
    CHECK(e.eigenvectors(0, 0) * e.eigenvectors(1, 0) < 0.0);  // (1, -1) direction
    CHECK(e.eigenvectors(0, 1) * e.eigenvectors(1, 1) > 0.0);  // (1, 1) direction
  }
  {
    DenseMatrix a(2, 3);
    CHECK_THROWS_AS(dense_eigh(a), ParamError);
    DenseMatrix b(5, 5);
    CHECK_THROWS_AS(dense_eigh(b, 4), ParamError);
  }
}

TEST_CASE("dense_eigh invariants on a sensor graph") {
  const SparseSym l = laplacian(build_sensor(64, 2)).matrix;
  const auto e = dense_eigh(l);
  for (int i = 1; i < 64; ++i) CHECK(e.eigenvalues[i - 1] <= e.eigenvalues[i]);

  // U^T U = I
  for (int i = 0; i < 64; ++i)
    for (int j = i; j < 64; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 64; ++k) dot += e.eigenvectors(k, i) * e.eigenvectors(k, j);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-9);
    }

  // A u = lambda u
  const double norm_bound = std::max(std::abs(e.eigenvalues.front()), e.eigenvalues.back());
  for (int j = 0; j < 64; ++j) {
    std::vector<double> u(64);
    for (int k = 0; k < 64; ++k) u[k] = e.eigenvectors(k, j);
    const std::vector<double> au = spmv(l, u);
    for (int k = 0; k < 64; ++k)
      CHECK(std::abs(au[k] - e.eigenvalues[j] * u[k]) <= 1e-8 * std::max(1.0, norm_bound));
  }
}

TEST_CASE("ldl factorization basics") {
  {
    const auto f = ldl_factorize(identity(6));
    for (double d : f.d) CHECK(d == 1.0);
    CHECK(f.lp[6] == 0);  // L = I
    CHECK(f.num_perturbed_pivots == 0);
    CHECK(f.min_abs_pivot == 1.0);
  }
  {
    std::vector<std::tuple<int, int, double>> t = {{0, 0, -2.0}, {1, 1, 3.0}};
    const auto f = ldl_factorize(SparseSym::from_triplets(2, t));
    std::vector<double> d = f.d;
    std::sort(d.begin(), d.end());
    CHECK(d[0] == -2.0);
    CHECK(d[1] == 3.0);
    CHECK(f.negative_pivots() == 1);
  }
  {
    // path-3 Laplacian shifted by 0.5: spectrum {0, 1, 3}, one value below
    const SparseSym l = laplacian(build_path(3)).matrix;
    for (Ordering ord : {Ordering::natural, Ordering::min_degree}) {
      const auto f = ldl_factorize(l, 0.5, ord);
      CHECK(f.negative_pivots() == 1);
    }
  }
}

TEST_CASE("ldl reconstructs its input") {
  // Instances mirror what the factorization is actually asked to handle:
  // shifted graph Laplacians (generic shifts keep pivots well scaled) and
  // diagonally dominant matrices of either sign pattern. Unstructured
  // indefinite input can exhibit unbounded element growth without
  // Bunch-Kaufman pivoting, which this factorization deliberately omits.
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(199));
    SparseSym a;
    if (trial % 2 == 0) {
      const Graph g = build_erdos_renyi(n, std::min(0.9, 4.0 / n), rng.next_u64());
      const double lmax = estimate_lambda_upper(laplacian(g).matrix, LambdaUpperMethod::power);
      a = shifted(laplacian(g).matrix, rng.uniform() * lmax);
    } else {
      a = random_dominant(n, 3.0 / n, rng);
    }
    const auto f = ldl_factorize(a, 0.0,
                                 trial % 4 < 2 ? Ordering::min_degree : Ordering::natural);
    const DenseMatrix back = reconstruct(f);
    const DenseMatrix ad = to_dense(a);
    const double scale = std::max(1e-30, max_abs(a));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(back(i, j) - ad(i, j)) / scale);
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("ldl reconstruction honors the shift") {
  const SparseSym l = laplacian(build_comet(20, 6)).matrix;
  const auto f = ldl_factorize(l, 1.25);
  const DenseMatrix back = reconstruct(f);
  const DenseMatrix ld = to_dense(l);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) CHECK(std::abs(back(i, j) - ld(i, j)) <= 1e-10);
}

TEST_CASE("inertia counts eigenvalues strictly below the shift") {
  {
    // path-64 minus 2I: 2 - 2cos(pi l / 64) < 2 exactly for l = 0..31, and
    // l = 32 lands exactly on the shift, exercising the zero-pivot path.
    const SparseSym l = laplacian(build_path(64)).matrix;
    for (Ordering ord : {Ordering::natural, Ordering::min_degree}) {
      const auto f = ldl_factorize(l, 2.0, ord);
      CHECK(f.negative_pivots() == 32);
      CHECK(f.num_perturbed_pivots == 1);
      CHECK(f.min_abs_pivot == 0.0);
    }
    CHECK(inertia_below(shifted(l, 2.0)) == 32);
  }
  {
    const SparseSym l = laplacian(build_comet(64, 30)).matrix;
    CHECK(ldl_factorize(l, 1e-9).negative_pivots() == 1);
  }
  {
    const SparseSym l = laplacian(build_sensor(64, 5)).matrix;
    CHECK(ldl_factorize(l, -1e-9).negative_pivots() == 0);
    CHECK(inertia_below(l) == 0);
  }
}

TEST_CASE("inertia agrees with dense counts across graphs, shifts, orderings") {
  const std::vector<Graph> graphs = {build_path(50), build_ring(33), build_comet(40, 10),
                                     build_sensor(48, 7), build_erdos_renyi(60, 0.1, 3)};
  Rng rng(99);
  for (const Graph& g : graphs) {
    const SparseSym l = laplacian(g).matrix;
    const auto e = dense_eigh(l);
    const double top = e.eigenvalues.back();
    const LdlSymbolic sym_md = ldl_analyze(l, Ordering::min_degree);
    const LdlSymbolic sym_nat = ldl_analyze(l, Ordering::natural);
    int tested = 0;
    while (tested < 20) {
      const double s = rng.uniform() * top * 1.05;
      double gap = 1e300;
      for (double v : e.eigenvalues) gap = std::min(gap, std::abs(v - s));
      if (gap <= 1e-9) continue;
      ++tested;
      const int want = count_below(e.eigenvalues, s);
      CHECK(ldl_factorize(l, sym_md, s).negative_pivots() == want);
      CHECK(ldl_factorize(l, sym_nat, s).negative_pivots() == want);
    }
  }
}

TEST_CASE("min-degree order is a permutation and analysis is reusable") {
  const SparseSym l = laplacian(build_comet(64, 30)).matrix;
  std::vector<int> order = min_degree_order(l);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 64; ++i) CHECK(sorted[i] == i);

  // shifts keep clear of comet eigenvalues (1.0 is a leaf mode)
  const auto e = dense_eigh(l);
  const LdlSymbolic sym = ldl_analyze(l);
  for (double s : {0.1, 0.5, 1.3, 2.5, 17.0})
    CHECK(ldl_factorize(l, sym, s).negative_pivots() == count_below(e.eigenvalues, s));
}

TEST_CASE("lambda upper bounds") {
  const SparseSym p64 = laplacian(build_path(64)).matrix;
  CHECK(estimate_lambda_upper(p64, LambdaUpperMethod::anderson_morley) == 4.0);

  const SparseSym reg = laplacian(build_random_regular(30, 4, 1)).matrix;
  CHECK(estimate_lambda_upper(reg, LambdaUpperMethod::anderson_morley) == 8.0);

  for (const Graph& g : {build_path(64), build_ring(40), build_comet(64, 30),
                         build_sensor(64, 9)}) {
    const SparseSym l = laplacian(g).matrix;
    const double top = dense_eigh(l).eigenvalues.back();
    CHECK(estimate_lambda_upper(l, LambdaUpperMethod::anderson_morley) >= top - 1e-9);
    CHECK(estimate_lambda_upper(l, LambdaUpperMethod::power) >= top - 1e-9);
  }
}
