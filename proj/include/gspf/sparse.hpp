#pragma once

#include <tuple>
#include <vector>

#include "gspf/dense.hpp"

namespace gspf {

// Symmetric sparse matrix, lower triangle stored in compressed-sparse-column
// form. Row indices sorted within each column, no duplicates.
struct SparseSym {
  int n = 0;
  std::vector<int> colptr;  // size n+1
  std::vector<int> rows;    // row >= column
  std::vector<double> vals;

  // Entries may arrive in any (i, j) order; each unordered pair at most once.
  static SparseSym from_triplets(int n, const std::vector<std::tuple<int, int, double>>& entries);

  int nnz() const { return static_cast<int>(rows.size()); }
};

std::vector<double> spmv(const SparseSym& a, const std::vector<double>& x);
DenseMatrix to_dense(const SparseSym& a);
double max_abs(const SparseSym& a);

enum class LambdaUpperMethod { power, anderson_morley };

// power: Rayleigh-quotient estimate inflated by 1%.
// anderson_morley: max over stored off-diagonal entries (i, j) of d_i + d_j,
// reading d from the diagonal; intended for Laplacian-like input.
double estimate_lambda_upper(const SparseSym& a, LambdaUpperMethod method);

}  // namespace gspf
