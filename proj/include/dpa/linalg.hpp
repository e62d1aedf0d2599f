#pragma once

#include <optional>
#include <vector>

#include "dpa/matrix.hpp"

namespace dpa {

template <FieldType F>
struct RrefResult {
  Matrix<F> r;                      // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per pivot row, ascending
  std::size_t rank;
};

namespace reference {

// Textbook Gauss-Jordan elimination, serial. Pivot selection scans columns
// left to right and rows top to bottom for the first nonzero entry.
template <FieldType F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    typename F::Element piv_inv = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols(); ++j)
      m.at(row, j) = f.mul(piv_inv, m.at(row, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m.at(i, col))) continue;
      typename F::Element factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  std::size_t rank = pivots.size();
  return RrefResult<F>{std::move(m), std::move(pivots), rank};
}

}  // namespace reference

namespace kernels {

// Gauss-Jordan with the same deterministic pivot rule as the reference; the
// elimination of the non-pivot rows is data-parallel because each row update
// reads only itself and the (already normalized) pivot row.
template <FieldType F>
RrefResult<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  const bool parallel = m.rows() * m.cols() >= parallel_cell_threshold && m.rows() > 1;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    typename F::Element piv_inv = f.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols(); ++j)
      m.at(row, j) = f.mul(piv_inv, m.at(row, j));
    auto eliminate = [&](std::size_t i) {
      if (i == row || f.is_zero(m.at(i, col))) return;
      typename F::Element factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(row, j)));
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (std::size_t i = 0; i < m.rows(); ++i) eliminate(i);
    } else {
      for (std::size_t i = 0; i < m.rows(); ++i) eliminate(i);
    }
    pivots.push_back(col);
    ++row;
  }
  std::size_t rank = pivots.size();
  return RrefResult<F>{std::move(m), std::move(pivots), rank};
}

}  // namespace kernels

template <FieldType F>
RrefResult<F> rref(const Matrix<F>& m) {
  return kernels::rref(m);
}

template <FieldType F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank;
}

// Basis of the right kernel {x : m x = 0} as matrix columns. The basis is the
// standard one read off the rref: one column per free variable, in ascending
// free-column order, with the free variable set to 1.
template <FieldType F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  RrefResult<F> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<F> k(f, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t fc = free_cols[j];
    k.at(fc, j) = f.one();
    for (std::size_t pr = 0; pr < e.pivots.size(); ++pr)
      k.at(e.pivots[pr], j) = f.neg(e.r.at(pr, fc));
  }
  return k;
}

// Solves a x = b columnwise; returns the solution with all free variables
// set to zero, or nullopt when the system is inconsistent.
template <FieldType F>
std::optional<Matrix<F>> solve_right(const Matrix<F>& a, const Matrix<F>& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows()) throw SizeMismatch("solve_right: row mismatch");
  const F& f = a.field();
  Matrix<F> aug = hstack(f, {a, b}, a.rows());
  RrefResult<F> e = rref(aug);
  for (std::size_t c : e.pivots)
    if (c >= a.cols()) return std::nullopt;
  Matrix<F> x(f, a.cols(), b.cols());
  for (std::size_t pr = 0; pr < e.pivots.size(); ++pr)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(e.pivots[pr], j) = e.r.at(pr, a.cols() + j);
  return x;
}

// Inverse of a square matrix, or nullopt if singular.
template <FieldType F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw SizeMismatch("inverse: not square");
  auto x = solve_right(a, Matrix<F>::identity(a.field(), a.rows()));
  return x;
}

// Incremental row-echelon container for membership and independence tests
// against a growing span.
template <FieldType F>
class RowSpan {
 public:
  explicit RowSpan(F field, std::size_t dim) : field_(std::move(field)), dim_(dim) {}

  std::size_t size() const { return rows_.size(); }

  // Reduces v against the span; inserts the residue if nonzero. Returns true
  // when v enlarged the span (i.e. was independent).
  bool insert(std::vector<typename F::Element> v) {
    if (!reduce(v)) return false;
    std::size_t p = pivot_of(v);
    normalize(v, p);
    for (auto& r : rows_) reduce_row_by(r, v, p);
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    return true;
  }

  bool contains(std::vector<typename F::Element> v) const { return !reduce(v); }

  void insert_columns_of(const Matrix<F>& m) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<typename F::Element> v(dim_, field_.zero());
      for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, j);
      insert(std::move(v));
    }
  }

 private:
  // Returns true if a nonzero residue remains in v.
  bool reduce(std::vector<typename F::Element>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto& c = v[pivots_[k]];
      if (field_.is_zero(c)) continue;
      typename F::Element factor = c;
      for (std::size_t j = 0; j < dim_; ++j)
        v[j] = field_.sub(v[j], field_.mul(factor, rows_[k][j]));
    }
    for (const auto& e : v)
      if (!field_.is_zero(e)) return true;
    return false;
  }

  std::size_t pivot_of(const std::vector<typename F::Element>& v) const {
    for (std::size_t j = 0; j < dim_; ++j)
      if (!field_.is_zero(v[j])) return j;
    throw SizeMismatch("pivot of zero vector");
  }

  void normalize(std::vector<typename F::Element>& v, std::size_t p) const {
    typename F::Element s = field_.inv(v[p]);
    for (auto& e : v) e = field_.mul(s, e);
  }

  void reduce_row_by(std::vector<typename F::Element>& r,
                     const std::vector<typename F::Element>& v, std::size_t p) const {
    if (field_.is_zero(r[p])) return;
    typename F::Element factor = r[p];
    for (std::size_t j = 0; j < dim_; ++j)
      r[j] = field_.sub(r[j], field_.mul(factor, v[j]));
  }

  F field_;
  std::size_t dim_;
  std::vector<std::vector<typename F::Element>> rows_;
  std::vector<std::size_t> pivots_;
};

template <FieldType F>
struct CokernelData {
  Matrix<F> projection;  // c : K^n -> K^k, c m = 0
  Matrix<F> section;     // s : K^k -> K^n, c s = id
};

// Cokernel of m : K^r -> K^n presented as a projection onto a standard-basis
// complement of the column space. The complement takes basis vectors e_j in
// ascending index order, greedily skipping those already dependent.
template <FieldType F>
CokernelData<F> cokernel_projection(const Matrix<F>& m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  RrefResult<F> colspace = rref(m.transpose());
  RowSpan<F> span(f, n);
  std::vector<std::vector<typename F::Element>> basis_cols;
  for (std::size_t pr = 0; pr < colspace.rank; ++pr) {
    std::vector<typename F::Element> v(n, f.zero());
    for (std::size_t j = 0; j < n; ++j) v[j] = colspace.r.at(pr, j);
    span.insert(v);
    basis_cols.push_back(std::move(v));
  }
  std::vector<std::size_t> complement;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<typename F::Element> e(n, f.zero());
    e[j] = f.one();
    if (span.insert(std::move(e))) complement.push_back(j);
  }
  const std::size_t r = basis_cols.size();
  const std::size_t k = complement.size();
  // Change of basis [colspace basis | complement]; the projection reads off
  // the complement coordinates.
  Matrix<F> basis(f, n, n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) basis.at(i, j) = basis_cols[j][i];
  for (std::size_t j = 0; j < k; ++j) basis.at(complement[j], r + j) = f.one();
  auto binv = inverse(basis);
  if (!binv) throw SingularMatrix("cokernel basis not invertible");
  Matrix<F> c = binv->submatrix(r, 0, k, n);
  Matrix<F> s(f, n, k);
  for (std::size_t j = 0; j < k; ++j) s.at(complement[j], j) = f.one();
  return CokernelData<F>{std::move(c), std::move(s)};
}

// Flattens a matrix row-major into a column vector.
template <FieldType F>
std::vector<typename F::Element> vec_of(const Matrix<F>& m) {
  std::vector<typename F::Element> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

template <FieldType F>
Matrix<F> mat_of(const F& f, const std::vector<typename F::Element>& v,
                 std::size_t rows, std::size_t cols, std::size_t offset = 0) {
  Matrix<F> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = v[offset + i * cols + j];
  return m;
}

}  // namespace dpa
