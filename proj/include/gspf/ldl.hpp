#pragma once

#include <vector>

#include "gspf/sparse.hpp"

namespace gspf {

enum class Ordering { natural, min_degree };

// Greedy minimum-degree elimination order on the pattern of a.
// order[k] = original vertex eliminated at step k. Ties break to the
// smallest vertex index, so the result is deterministic.
std::vector<int> min_degree_order(const SparseSym& a);

// Symbolic analysis: permutation, elimination tree, and the column counts
// of the factor. Reusable across numeric factorizations that share the
// pattern (only values or the diagonal shift change).
struct LdlSymbolic {
  int n = 0;
  std::vector<int> perm;   // perm[k] = original index of permuted row k
  std::vector<int> iperm;  // inverse of perm
  // Strict upper triangle of the permuted matrix, CSC by column, with a
  // map back into the value array of the source matrix.
  std::vector<int> up, ui, usrc;
  std::vector<int> diag_src;  // per column: index into vals, or -1 if absent
  std::vector<int> parent;    // elimination tree
  std::vector<int> lp;        // column pointers of L's strict lower part
  int lnz() const { return lp.empty() ? 0 : lp.back(); }
};

LdlSymbolic ldl_analyze(const SparseSym& a, Ordering ordering = Ordering::min_degree);

// P (A - shift*I) P^T = L diag(d) L^T with L unit lower triangular.
// L's unit diagonal is implicit; lp/li/lx hold the strict lower part.
struct LdlFactorization {
  int n = 0;
  double shift = 0.0;
  std::vector<int> perm;
  std::vector<int> lp, li;
  std::vector<double> lx;
  std::vector<double> d;
  // Exactly-zero pivots are replaced by +1e-12 * max(|A|_max, |shift|) and
  // counted here; min_abs_pivot records the smallest |pivot| seen before
  // any replacement, so a zero pivot leaves it at 0.
  int num_perturbed_pivots = 0;
  double min_abs_pivot = 0.0;
  int negative_pivots() const;
};

LdlFactorization ldl_factorize(const SparseSym& a, const LdlSymbolic& symbolic,
                               double shift = 0.0);
LdlFactorization ldl_factorize(const SparseSym& a, double shift = 0.0,
                               Ordering ordering = Ordering::min_degree);

// Count of eigenvalues of a strictly below zero, by Sylvester's law on the
// pivot signs. Shift the matrix (or pass shift to ldl_factorize) to count
// below an arbitrary threshold.
int inertia_below(const SparseSym& a, Ordering ordering = Ordering::min_degree);

}  // namespace gspf
