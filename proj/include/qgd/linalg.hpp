#pragma once

// Dense exact linear algebra over a field K. Matrices are small (tens of
// rows at most in practice) so everything is plain row-major storage and
// Gauss-Jordan elimination.

#include "qgd/field.hpp"

#include <cassert>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qgd {

template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = K{1};
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  K& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const K& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!qgd::is_zero(v)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<K> column(int c) const {
    std::vector<K> v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_column(int c, const std::vector<K>& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Matrix columns(const std::vector<int>& idx) const {
    Matrix out(rows_, static_cast<int>(idx.size()));
    for (int j = 0; j < static_cast<int>(idx.size()); ++j)
      for (int r = 0; r < rows_; ++r) out(r, j) = (*this)(r, idx[j]);
    return out;
  }

  Matrix rows_of(const std::vector<int>& idx) const {
    Matrix out(static_cast<int>(idx.size()), cols_);
    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
      for (int c = 0; c < cols_; ++c) out(i, c) = (*this)(idx[i], c);
    return out;
  }

  void set_block(int r0, int c0, const Matrix& b) {
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix out(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::logic_error("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (qgd::is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::logic_error("matrix sum: shape mismatch");
    for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::logic_error("matrix difference: shape mismatch");
    for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const K& s, Matrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    assert(static_cast<int>(v.size()) == cols_);
    std::vector<K> out(rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (!qgd::is_zero(v[c])) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (int r = 0; r < rows_; ++r) {
      if (r) os << "; ";
      for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << to_string((*this)(r, c));
    }
    os << ']';
    return os.str();
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Matrix<K> hstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw std::logic_error("hstack: row mismatch");
  Matrix<K> out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.cols()) throw std::logic_error("vstack: column mismatch");
  Matrix<K> out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

/// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<int> rref(Matrix<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!is_zero(m(r, col))) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    K inv = K{1} / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      K f = m(r, col);
      for (int c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
int rank(Matrix<K> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of the null space {x : m x = 0}, as the columns of the result.
template <class K>
Matrix<K> kernel(Matrix<K> m) {
  const int n = m.cols();
  auto piv = rref(m);
  std::vector<bool> is_piv(n, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  Matrix<K> out(n, static_cast<int>(free.size()));
  for (int j = 0; j < static_cast<int>(free.size()); ++j) {
    out(free[j], j) = K{1};
    for (int i = 0; i < static_cast<int>(piv.size()); ++i) out(piv[i], j) = -m(i, free[j]);
  }
  return out;
}

/// A basis of the column space, chosen among the columns of m (leftmost
/// independent ones).
template <class K>
Matrix<K> image(const Matrix<K>& m) {
  Matrix<K> r = m;
  auto piv = rref(r);
  return m.columns(piv);
}

/// Solves a x = b for every column of b; nullopt if inconsistent.
template <class K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw std::logic_error("solve: shape mismatch");
  Matrix<K> aug = hstack(a, b);
  auto piv = rref(aug);
  const int n = a.cols();
  Matrix<K> x(n, b.cols());
  for (int i = 0; i < static_cast<int>(piv.size()); ++i) {
    if (piv[i] >= n) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(i, n + j);
  }
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Matrix<K>::identity(a.rows()));
}

/// Quotient of K^n by the column span of `sub`: the chosen complement is
/// spanned by standard basis vectors, and `projection` maps K^n onto
/// coordinates in that complement (its kernel is exactly span(sub)).
template <class K>
struct Quotient {
  std::vector<int> kept;       // standard basis indices representing the quotient
  Matrix<K> projection;        // kept.size() x n
  int dim() const { return static_cast<int>(kept.size()); }
};

template <class K>
Quotient<K> quotient(const Matrix<K>& sub, int n) {
  Matrix<K> s = sub.transpose();  // rows span the subspace
  if (s.rows() == 0) s = Matrix<K>(0, n);
  // Pivot at the rightmost coordinates so that representatives of the
  // quotient are the earliest standard vectors.
  Matrix<K> rev(s.rows(), n);
  for (int r = 0; r < s.rows(); ++r)
    for (int c = 0; c < n; ++c) rev(r, c) = s(r, n - 1 - c);
  auto piv = rref(rev);
  std::vector<bool> is_piv(n, false);
  for (int p : piv) is_piv[n - 1 - p] = true;
  Quotient<K> q;
  for (int c = 0; c < n; ++c)
    if (!is_piv[c]) q.kept.push_back(c);
  // P w = (w - sum_k w[p_k] row_k)[kept]
  q.projection = Matrix<K>(q.dim(), n);
  for (int i = 0; i < q.dim(); ++i) q.projection(i, q.kept[i]) = K{1};
  for (int k = 0; k < static_cast<int>(piv.size()); ++k) {
    int pc = n - 1 - piv[k];
    for (int i = 0; i < q.dim(); ++i) {
      int c = q.kept[i];
      const K& v = rev(k, n - 1 - c);
      if (!is_zero(v)) q.projection(i, pc) -= v;
    }
  }
  return q;
}

/// Column-reduced basis of the span of the columns of m (canonical: the
/// transpose of the reduced row echelon form). Two matrices span the same
/// subspace iff their canonical bases are equal.
template <class K>
Matrix<K> canonical_basis(const Matrix<K>& m) {
  Matrix<K> t = m.transpose();
  auto piv = rref(t);
  return t.block(0, 0, static_cast<int>(piv.size()), t.cols()).transpose();
}

template <class K>
Matrix<K> direct_sum(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

}  // namespace qgd
