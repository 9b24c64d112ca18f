#pragma once

// Dense integer matrices and the Smith normal form with its transforms.

#include <vector>

#include "eisq/arith.hpp"

namespace eisq::lattice {

using arith::Int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  Int operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  IntMatrix operator*(const IntMatrix& o) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

/// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ..., s_i >= 0.
struct Smith {
  IntMatrix U, S, V;
  int rank = 0;
  std::vector<Int> diagonal() const;
};

Smith smith_normal_form(const IntMatrix& A);

/// Basis of {x in Z^n : A x = 0}, one vector per entry.
std::vector<std::vector<Int>> integer_kernel(const IntMatrix& A);

}  // namespace eisq::lattice
