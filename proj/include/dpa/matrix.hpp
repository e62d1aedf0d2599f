#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <utility>
#include <vector>

#include "dpa/field.hpp"

namespace dpa {

// Dense row-major matrix over a coefficient field F. Sizes may be zero in
// either dimension; empty products follow the empty-sum convention.
template <FieldType F>
class Matrix {
 public:
  using Elem = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)),
        rows_(rows),
        cols_(cols),
        data_(rows * cols, field_.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.field_.one();
    return m;
  }

  static Matrix scalar(F field, std::size_t n, const Elem& c) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
  }

  // Row-major literal; every inner list must have the same length.
  static Matrix from_rows(F field,
                          std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw SizeMismatch("ragged matrix literal");
      std::size_t j = 0;
      for (std::int64_t v : row) m.at(i, j++) = m.field_.from_int(v);
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elem& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const Elem& e : data_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!field_.eq(at(i, j), i == j ? field_.one() : field_.zero())) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix s(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) s.at(i, j) = at(r0 + i, c0 + j);
    return s;
  }

  void paste(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw SizeMismatch("paste out of bounds");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (!a.field_.same(b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_)
      return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.field_.eq(a.data_[k], b.data_[k])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? " " : "") << field_.to_string(at(i, j));
    }
    os << "]";
    return os.str();
  }

 private:
  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

template <FieldType F>
void check_same_field(const Matrix<F>& a, const Matrix<F>& b) {
  if (!a.field().same(b.field())) throw FieldMismatch("matrices over different fields");
}

template <FieldType F>
Matrix<F> add(const Matrix<F>& a, const Matrix<F>& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeMismatch("add: shape");
  Matrix<F> r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = a.field().add(a.at(i, j), b.at(i, j));
  return r;
}

template <FieldType F>
Matrix<F> sub(const Matrix<F>& a, const Matrix<F>& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw SizeMismatch("sub: shape");
  Matrix<F> r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = a.field().sub(a.at(i, j), b.at(i, j));
  return r;
}

template <FieldType F>
Matrix<F> neg(const Matrix<F>& a) {
  Matrix<F> r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.field().neg(a.at(i, j));
  return r;
}

template <FieldType F>
Matrix<F> scale(const typename F::Element& c, const Matrix<F>& a) {
  Matrix<F> r(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.field().mul(c, a.at(i, j));
  return r;
}

// Serial reference kernels. Kept deliberately naive; the test suite checks
// the parallel kernels against these on every run.
namespace reference {

template <FieldType F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) {
  check_same_field(a, b);
  if (a.cols() != b.rows()) throw SizeMismatch("multiply: inner dimensions");
  Matrix<F> r(a.field(), a.rows(), b.cols());
  const F& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      typename F::Element acc = f.zero();
      for (std::size_t k = 0; k < a.cols(); ++k)
        acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = acc;
    }
  return r;
}

}  // namespace reference

// OpenMP kernels. Exact arithmetic makes the row partition order-independent,
// so parallel and serial results are identical, not merely close.
namespace kernels {

inline constexpr std::size_t parallel_cell_threshold = 16384;

template <FieldType F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) {
  check_same_field(a, b);
  if (a.cols() != b.rows()) throw SizeMismatch("multiply: inner dimensions");
  Matrix<F> r(a.field(), a.rows(), b.cols());
  const F& f = a.field();
  const std::size_t n = a.rows(), m = b.cols(), kk = a.cols();
  auto row_product = [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) {
      typename F::Element acc = f.zero();
      for (std::size_t k = 0; k < kk; ++k)
        acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = acc;
    }
  };
  if (n * m * (kk + 1) >= parallel_cell_threshold && n > 1) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) row_product(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) row_product(i);
  }
  return r;
}

}  // namespace kernels

template <FieldType F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
  return kernels::multiply(a, b);
}

// Stacks blocks vertically; all blocks must share the column count.
template <FieldType F>
Matrix<F> vstack(const F& field, const std::vector<Matrix<F>>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw SizeMismatch("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix<F> r(field, rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    r.paste(off, 0, b);
    off += b.rows();
  }
  return r;
}

// Lays blocks side by side; all blocks must share the row count.
template <FieldType F>
Matrix<F> hstack(const F& field, const std::vector<Matrix<F>>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw SizeMismatch("hstack: row mismatch");
    cols += b.cols();
  }
  Matrix<F> r(field, rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    r.paste(0, off, b);
    off += b.cols();
  }
  return r;
}

// Block diagonal sum.
template <FieldType F>
Matrix<F> block_diag(const F& field, const std::vector<Matrix<F>>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<F> r(field, rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    r.paste(ro, co, b);
    ro += b.rows();
    co += b.cols();
  }
  return r;
}

}  // namespace dpa
