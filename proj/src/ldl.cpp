#include "gspf/ldl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gspf/errors.hpp"

namespace gspf {

std::vector<int> min_degree_order(const SparseSym& a) {
  const int n = a.n;
  std::vector<std::vector<int>> adj(n);
  for (int c = 0; c < n; ++c)
    for (int p = a.colptr[c]; p < a.colptr[c + 1]; ++p) {
      const int r = a.rows[p];
      if (r != c) {
        adj[c].push_back(r);
        adj[r].push_back(c);
      }
    }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());

  std::vector<char> alive(n, 1);
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());

  std::vector<int> order;
  order.reserve(n);
  std::vector<int> nv, merged;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v] && (best < 0 || deg[v] < deg[best])) best = v;
    alive[best] = 0;
    order.push_back(best);

    nv.clear();
    for (int u : adj[best])
      if (alive[u]) nv.push_back(u);
    // Eliminating best turns its neighborhood into a clique.
    for (int u : nv) {
      auto& au = adj[u];
      merged.clear();
      size_t i = 0, j = 0;
      while (i < au.size() && j < nv.size()) {
        int x;
        if (au[i] < nv[j])
          x = au[i++];
        else if (nv[j] < au[i])
          x = nv[j++];
        else {
          x = au[i];
          ++i;
          ++j;
        }
        if (x != u && alive[x]) merged.push_back(x);
      }
      for (; i < au.size(); ++i)
        if (au[i] != u && alive[au[i]]) merged.push_back(au[i]);
      for (; j < nv.size(); ++j)
        if (nv[j] != u && alive[nv[j]]) merged.push_back(nv[j]);
      au = merged;
      deg[u] = static_cast<int>(au.size());
    }
    adj[best].clear();
    adj[best].shrink_to_fit();
  }
  return order;
}

LdlSymbolic ldl_analyze(const SparseSym& a, Ordering ordering) {
  const int n = a.n;
  LdlSymbolic s;
  s.n = n;
  if (ordering == Ordering::min_degree) {
    s.perm = min_degree_order(a);
  } else {
    s.perm.resize(n);
    std::iota(s.perm.begin(), s.perm.end(), 0);
  }
  s.iperm.resize(n);
  for (int k = 0; k < n; ++k) s.iperm[s.perm[k]] = k;

  // Distribute stored entries into the strict upper triangle of the
  // permuted matrix, remembering where each value came from.
  s.diag_src.assign(n, -1);
  std::vector<int> cnt(n, 0);
  for (int c = 0; c < n; ++c)
    for (int p = a.colptr[c]; p < a.colptr[c + 1]; ++p) {
      const int pi = s.iperm[a.rows[p]];
      const int qi = s.iperm[c];
      if (pi == qi)
        s.diag_src[pi] = p;
      else
        ++cnt[std::max(pi, qi)];
    }
  s.up.assign(n + 1, 0);
  for (int k = 0; k < n; ++k) s.up[k + 1] = s.up[k] + cnt[k];
  s.ui.assign(s.up[n], 0);
  s.usrc.assign(s.up[n], -1);
  std::vector<int> next(s.up.begin(), s.up.end() - 1);
  for (int c = 0; c < n; ++c)
    for (int p = a.colptr[c]; p < a.colptr[c + 1]; ++p) {
      const int pi = s.iperm[a.rows[p]];
      const int qi = s.iperm[c];
      if (pi == qi) continue;
      const int slot = next[std::max(pi, qi)]++;
      s.ui[slot] = std::min(pi, qi);
      s.usrc[slot] = p;
    }

  // Elimination tree and per-column nonzero counts of L.
  s.parent.assign(n, -1);
  std::vector<int> lnz(n, 0), flag(n, -1);
  for (int k = 0; k < n; ++k) {
    flag[k] = k;
    for (int p = s.up[k]; p < s.up[k + 1]; ++p) {
      for (int i = s.ui[p]; flag[i] != k; i = s.parent[i]) {
        if (s.parent[i] < 0) s.parent[i] = k;
        ++lnz[i];
        flag[i] = k;
      }
    }
  }
  s.lp.assign(n + 1, 0);
  for (int k = 0; k < n; ++k) s.lp[k + 1] = s.lp[k] + lnz[k];
  return s;
}

LdlFactorization ldl_factorize(const SparseSym& a, const LdlSymbolic& symbolic,
                               double shift) {
  if (a.n != symbolic.n)
    throw ParamError("ldl_factorize: symbolic analysis is for a different matrix size");
  const int n = a.n;
  LdlFactorization f;
  f.n = n;
  f.shift = shift;
  f.perm = symbolic.perm;
  f.lp = symbolic.lp;
  f.li.assign(symbolic.lnz(), 0);
  f.lx.assign(symbolic.lnz(), 0.0);
  f.d.assign(n, 0.0);

  double scale = std::max(max_abs(a), std::abs(shift));
  if (scale == 0.0) scale = 1.0;
  const double eps_pivot = 1e-12 * scale;

  f.min_abs_pivot = n > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  std::vector<double> y(n, 0.0);
  std::vector<int> pattern(n), flag(n, -1), lnext(symbolic.lp.begin(),
                                                  symbolic.lp.end() - 1);
  for (int k = 0; k < n; ++k) {
    // Scatter the upper part of column k and collect its nonzero pattern
    // in topological order by walking the elimination tree. The pattern
    // array doubles as the stack: scratch grows from the front, the final
    // ordering from the back, and the two never meet.
    int top = n;
    flag[k] = k;
    for (int p = symbolic.up[k]; p < symbolic.up[k + 1]; ++p) {
      int i = symbolic.ui[p];
      y[i] = a.vals[symbolic.usrc[p]];
      int len = 0;
      for (; flag[i] != k; i = symbolic.parent[i]) {
        pattern[len++] = i;
        flag[i] = k;
      }
      while (len > 0) pattern[--top] = pattern[--len];
    }
    double dk = (symbolic.diag_src[k] >= 0 ? a.vals[symbolic.diag_src[k]] : 0.0) - shift;
    for (; top < n; ++top) {
      const int i = pattern[top];
      const double yi = y[i];
      y[i] = 0.0;
      const int p2 = lnext[i];
      for (int p = symbolic.lp[i]; p < p2; ++p) y[f.li[p]] -= f.lx[p] * yi;
      const double lki = yi / f.d[i];
      dk -= lki * yi;
      f.li[p2] = k;
      f.lx[p2] = lki;
      ++lnext[i];
    }
    f.min_abs_pivot = std::min(f.min_abs_pivot, std::abs(dk));
    if (dk == 0.0) {
      dk = eps_pivot;
      ++f.num_perturbed_pivots;
    }
    f.d[k] = dk;
  }
  return f;
}

LdlFactorization ldl_factorize(const SparseSym& a, double shift, Ordering ordering) {
  return ldl_factorize(a, ldl_analyze(a, ordering), shift);
}

int LdlFactorization::negative_pivots() const {
  int count = 0;
  for (double dk : d)
    if (dk < 0.0) ++count;
  return count;
}

int inertia_below(const SparseSym& a, Ordering ordering) {
  return ldl_factorize(a, 0.0, ordering).negative_pivots();
}

}  // namespace gspf
