#include "gspf/eigh.hpp"

#include <lapacke.h>

#include <string>

#include "gspf/errors.hpp"

namespace gspf {

EigenDecomposition dense_eigh(const DenseMatrix& a, int cap) {
  const int n = a.rows();
  if (n != a.cols()) throw ParamError("dense_eigh expects a square matrix");
  if (n > cap)
    throw ParamError("dense_eigh: n = " + std::to_string(n) + " exceeds cap " +
                     std::to_string(cap));
  EigenDecomposition e;
  e.eigenvectors = a;
  e.eigenvalues.assign(n, 0.0);
  if (n == 0) return e;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         e.eigenvectors.data(), n, e.eigenvalues.data());
  if (info != 0)
    throw NumericalError("symmetric eigensolver failed to converge (info = " +
                         std::to_string(info) + ")");
  return e;
}

EigenDecomposition dense_eigh(const SparseSym& a, int cap) { return dense_eigh(to_dense(a), cap); }

}  // namespace gspf
