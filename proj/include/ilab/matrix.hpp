#pragma once

// Dense row-major matrices over an exact field, plus the elimination kernels
// (rref, rank, kernel basis, kernel containment) the rest of ilab consumes.
//
// Prime fields use plain Gauss-Jordan. Rational matrices go through
// fraction-free (Bareiss) forward elimination on integer rows before the
// back-substitution, which keeps intermediate coefficients bounded by minors.

#include <ilab/field.hpp>

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace ilab {

template <ExactField K>
using Vector = std::vector<K>;

template <ExactField K>
class Matrix {
 public:
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, K::from_int(field, 0)) {}

  /// Builds a matrix from explicit rows; every entry must belong to `field`.
  static Matrix from_rows(const FieldSpec& field, std::size_t cols, const std::vector<Vector<K>>& rows) {
    Matrix m(field, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
  }

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<K> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const K> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void append_row(std::span<const K> r) {
    if (r.size() != cols_)
      throw InputError("row of length " + std::to_string(r.size()) + " appended to matrix with " +
                       std::to_string(cols_) + " columns");
    for (const K& x : r) check_entry(x);
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  /// [this; below]
  Matrix stacked(const Matrix& below) const {
    if (below.cols_ != cols_) throw InputError("column mismatch when stacking matrices");
    if (!(below.field_ == field_)) throw InputError("mixed field specs when stacking matrices");
    Matrix m = *this;
    m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
    m.rows_ += below.rows_;
    return m;
  }

  Vector<K> apply(std::span<const K> v) const {
    if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
    Vector<K> out(rows_, K::from_int(field_, 0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Throws InputError if any entry carries a different field spec.
  void validate() const {
    for (const K& x : data_) check_entry(x);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  static Matrix identity(const FieldSpec& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K::from_int(field, 1);
    return m;
  }

 private:
  void check_entry(const K& x) const {
    if constexpr (std::same_as<K, Fp>) {
      // An unbound zero (modulus 0) is compatible with every prime field.
      if (x.modulus() != 0 && !(x.spec() == field_))
        throw InputError("mixed field specs: entry in " + x.spec().name() + ", matrix over " + field_.name());
    } else if (field_.is_prime_field()) {
      throw InputError("rational entry in matrix over " + field_.name());
    }
  }

  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<K> data_;
};

template <ExactField K>
struct RowEchelon {
  Matrix<K> matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

namespace detail {

template <ExactField K>
RowEchelon<K> gauss_jordan(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const K inv = m(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

inline RowEchelon<Rational> bareiss_rref(const Matrix<Rational>& in) {
  const std::size_t rows = in.rows(), cols = in.cols();
  // Scale each row to integers by the lcm of its denominators.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), in(i, j).value().get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& q = in(i, j).value();
      a[i][j] = q.get_num() * (l / q.get_den());
    }
  }

  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class t = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }

  // Back-substitution over Q on the integer echelon form.
  std::vector<std::vector<mpq_class>> q(r, std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < r; ++i) {
    const mpz_class& lead = a[i][pivots[i]];
    for (std::size_t j = pivots[i]; j < cols; ++j) {
      q[i][j] = mpq_class(a[i][j], lead);
      q[i][j].canonicalize();
    }
  }
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t pc = pivots[i];
    for (std::size_t h = 0; h < i; ++h) {
      if (q[h][pc] == 0) continue;
      const mpq_class factor = q[h][pc];
      for (std::size_t j = pc; j < cols; ++j)
        if (q[i][j] != 0) q[h][j] -= factor * q[i][j];
    }
  }

  Matrix<Rational> out(in.field(), rows, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rational(q[i][j]);
  return {std::move(out), r, std::move(pivots)};
}

}  // namespace detail

/// Unique reduced row-echelon form with rank and pivot columns.
template <ExactField K>
RowEchelon<K> rref(const Matrix<K>& m) {
  m.validate();
  if constexpr (std::same_as<K, Rational>) return detail::bareiss_rref(m);
  else return detail::gauss_jordan(m);
}

template <ExactField K>
std::size_t rank(const Matrix<K>& m) {
  return rref(m).rank;
}

/// Basis of the right null space, one vector per free column in increasing
/// column order; each has a 1 in its free column.
template <ExactField K>
std::vector<Vector<K>> kernel_basis(const Matrix<K>& m) {
  const auto ech = rref(m);
  const FieldSpec& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<Vector<K>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<K> v(m.cols(), K::from_int(f, 0));
    v[free] = K::from_int(f, 1);
    for (std::size_t i = 0; i < ech.rank; ++i) v[ech.pivot_cols[i]] = -ech.matrix(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// True iff ker(a) ⊆ ker(b), decided by rank(a) == rank([a; b]).
template <ExactField K>
bool kernel_contained(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols())
    throw InputError("kernel containment needs equal column counts (" + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.cols()) + ")");
  return rank(a) == rank(a.stacked(b));
}

}  // namespace ilab
