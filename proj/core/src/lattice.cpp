#include "eisq/lattice.hpp"

#include <cstdlib>
#include <utility>

#include "eisq/errors.hpp"

namespace eisq::lattice {

using arith::checked_add;
using arith::checked_mul;

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    EISQ_REQUIRE(static_cast<int>(rows[i].size()) == cols, "ragged matrix rows");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  EISQ_REQUIRE(cols_ == o.rows_, "matrix shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) out(i, j) = checked_add(out(i, j), checked_mul(a, o(k, j)));
    }
  return out;
}

std::vector<Int> Smith::diagonal() const {
  std::vector<Int> d;
  for (int i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

struct Work {
  IntMatrix A, U, V;

  void swap_rows(int a, int b) {
    for (int j = 0; j < A.cols(); ++j) std::swap(A(a, j), A(b, j));
    for (int j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
  }
  void swap_cols(int a, int b) {
    for (int i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
    for (int i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
  // row a += k * row b
  void add_row(int a, int b, Int k) {
    for (int j = 0; j < A.cols(); ++j) A(a, j) = checked_add(A(a, j), checked_mul(k, A(b, j)));
    for (int j = 0; j < U.cols(); ++j) U(a, j) = checked_add(U(a, j), checked_mul(k, U(b, j)));
  }
  // col a += k * col b
  void add_col(int a, int b, Int k) {
    for (int i = 0; i < A.rows(); ++i) A(i, a) = checked_add(A(i, a), checked_mul(k, A(i, b)));
    for (int i = 0; i < V.rows(); ++i) V(i, a) = checked_add(V(i, a), checked_mul(k, V(i, b)));
  }
  void negate_row(int a) {
    for (int j = 0; j < A.cols(); ++j) A(a, j) = -A(a, j);
    for (int j = 0; j < U.cols(); ++j) U(a, j) = -U(a, j);
  }
};

}  // namespace

Smith smith_normal_form(const IntMatrix& input) {
  const int m = input.rows();
  const int n = input.cols();
  Work w{input, IntMatrix::identity(m), IntMatrix::identity(n)};
  int rank = 0;
  for (int t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (w.A(i, j) != 0 && (bi < 0 || std::llabs(w.A(i, j)) < std::llabs(w.A(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      if (bi != t) w.swap_rows(t, bi);
      if (bj != t) w.swap_cols(t, bj);
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        const Int q = w.A(i, t) / w.A(t, t);
        if (q != 0) w.add_row(i, t, -q);
        if (w.A(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        const Int q = w.A(t, j) / w.A(t, t);
        if (q != 0) w.add_col(j, t, -q);
        if (w.A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (w.A(i, j) % w.A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad >= 0) {
        w.add_row(t, bad, 1);
        continue;
      }
      if (w.A(t, t) < 0) w.negate_row(t);
      rank = t + 1;
      break;
    }
    if (rank != t + 1) break;
  }
  Smith s{w.U, w.A, w.V, rank};
  EISQ_CHECK(s.U * input * s.V == s.S, "Smith normal form transform check failed");
  return s;
}

std::vector<std::vector<Int>> integer_kernel(const IntMatrix& A) {
  const Smith s = smith_normal_form(A);
  std::vector<std::vector<Int>> out;
  for (int j = s.rank; j < A.cols(); ++j) {
    std::vector<Int> v(A.cols());
    for (int i = 0; i < A.cols(); ++i) v[i] = s.V(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace eisq::lattice
