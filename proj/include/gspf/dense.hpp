#pragma once

#include <cstddef>
#include <vector>

namespace gspf {

// Column-major dense matrix (LAPACK layout).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(j) * r_ + i]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(j) * r_ + i]; }

  int rows() const { return r_; }
  int cols() const { return c_; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  double* col(int j) { return a_.data() + static_cast<std::size_t>(j) * r_; }
  const double* col(int j) const { return a_.data() + static_cast<std::size_t>(j) * r_; }

 private:
  int r_ = 0, c_ = 0;
  std::vector<double> a_;
};

}  // namespace gspf
