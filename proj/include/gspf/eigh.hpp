#pragma once

#include <vector>

#include "gspf/dense.hpp"
#include "gspf/sparse.hpp"

namespace gspf {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // column l is u_l, orthonormal

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

// Full symmetric eigendecomposition (divide-and-conquer reduction). The cap
// keeps desk-scale runs desk-scale; raise it explicitly if you mean it.
EigenDecomposition dense_eigh(const DenseMatrix& a, int cap = 4000);
EigenDecomposition dense_eigh(const SparseSym& a, int cap = 4000);

}  // namespace gspf
