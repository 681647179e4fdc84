#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jumploci/polynomial.hpp"

namespace jumploci {

/// (cohomological, internal) degree attached to a row or column.
struct Bidegree {
  int coh = 0;
  int internal = 0;
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// Dense matrix over k with exact rank.
template <class Field>
class ScalarMatrix {
 public:
  using Scalar = typename Field::Scalar;

  ScalarMatrix(const Field& k, size_t rows, size_t cols)
      : k_(k), rows_(rows), cols_(cols), data_(rows * cols, k.zero()) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  size_t rank() const {
    auto a = data_;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
      size_t piv = r;
      while (piv < rows_ && is_zero(a[piv * cols_ + c])) ++piv;
      if (piv == rows_) continue;
      if (piv != r)
        for (size_t j = 0; j < cols_; ++j) std::swap(a[piv * cols_ + j], a[r * cols_ + j]);
      Scalar inv = inverse(a[r * cols_ + c]);
      for (size_t i = r + 1; i < rows_; ++i) {
        if (is_zero(a[i * cols_ + c])) continue;
        Scalar m = a[i * cols_ + c] * inv;
        for (size_t j = c; j < cols_; ++j) a[i * cols_ + j] = a[i * cols_ + j] - m * a[r * cols_ + j];
      }
      ++r;
    }
    return r;
  }

 private:
  Field k_;
  size_t rows_, cols_;
  std::vector<Scalar> data_;
};

/// Matrix of polynomials, stored densely (zero entries are empty term lists).
/// Row and column degrees are optional bookkeeping; an entry at (i, j) of a
/// homogeneous map has degree colDegree(j) - rowDegree(i) in whichever
/// grading the caller tracks.
template <class Field>
class PolyMatrix {
 public:
  using P = Poly<Field>;

  PolyMatrix() = default;
  PolyMatrix(RingTag tag, size_t rows, size_t cols)
      : tag_(tag), rows_(rows), cols_(cols), data_(rows * cols, P(tag)), rowDeg_(rows), colDeg_(cols) {}
  PolyMatrix(RingTag tag, std::vector<Bidegree> rowDeg, std::vector<Bidegree> colDeg)
      : tag_(tag),
        rows_(rowDeg.size()),
        cols_(colDeg.size()),
        data_(rows_ * cols_, P(tag)),
        rowDeg_(std::move(rowDeg)),
        colDeg_(std::move(colDeg)) {}

  static PolyMatrix identity(const PolyRing<Field>& ring, const std::vector<Bidegree>& degs) {
    PolyMatrix m(ring.tag(), degs, degs);
    for (size_t i = 0; i < degs.size(); ++i) m(i, i) = ring.one();
    return m;
  }

  RingTag tag() const { return tag_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  P& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const P& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Bidegree>& rowDegrees() const { return rowDeg_; }
  const std::vector<Bidegree>& colDegrees() const { return colDeg_; }
  void setRowDegrees(std::vector<Bidegree> d) {
    if (d.size() != rows_) throw std::invalid_argument("row degree count mismatch");
    rowDeg_ = std::move(d);
  }
  void setColDegrees(std::vector<Bidegree> d) {
    if (d.size() != cols_) throw std::invalid_argument("column degree count mismatch");
    colDeg_ = std::move(d);
  }

  bool is_zero() const {
    for (auto& p : data_)
      if (!p.is_zero()) return false;
    return true;
  }
  size_t nonzeros() const {
    size_t n = 0;
    for (auto& p : data_) n += !p.is_zero();
    return n;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(tag_, colDeg_, rowDeg_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
    if (!(a.tag_ == b.tag_)) throw RingMismatch();
    PolyMatrix c(a.tag_, a.rowDeg_, b.colDeg_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const P& x = a(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          const P& y = b(k, j);
          if (!y.is_zero()) c(i, j) += x * y;
        }
      }
    return c;
  }
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    same_shape(a, b);
    PolyMatrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    same_shape(a, b);
    PolyMatrix c = a;
    for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }
  PolyMatrix operator-() const {
    PolyMatrix c = *this;
    for (auto& p : c.data_) p = -p;
    return c;
  }
  PolyMatrix scaled(const P& s) const {
    PolyMatrix c = *this;
    for (auto& p : c.data_)
      if (!p.is_zero()) p = p * s;
    return c;
  }
  /// Entrywise equality; degrees are not compared.
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  PolyMatrix submatrix(const std::vector<size_t>& rs, const std::vector<size_t>& cs) const {
    std::vector<Bidegree> rd, cd;
    for (auto r : rs) rd.push_back(rowDeg_[r]);
    for (auto c : cs) cd.push_back(colDeg_[c]);
    PolyMatrix m(tag_, rd, cd);
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
    return m;
  }
  PolyMatrix columns(const std::vector<size_t>& cs) const {
    std::vector<size_t> rs(rows_);
    for (size_t i = 0; i < rows_; ++i) rs[i] = i;
    return submatrix(rs, cs);
  }

  static PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row counts differ");
    auto cd = a.colDeg_;
    cd.insert(cd.end(), b.colDeg_.begin(), b.colDeg_.end());
    PolyMatrix m(a.tag_, a.rowDeg_, cd);
    for (size_t i = 0; i < a.rows_; ++i) {
      for (size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }
  static PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
    auto rd = a.rowDeg_;
    rd.insert(rd.end(), b.rowDeg_.begin(), b.rowDeg_.end());
    auto cd = a.colDeg_;
    cd.insert(cd.end(), b.colDeg_.begin(), b.colDeg_.end());
    PolyMatrix m(a.tag_, rd, cd);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  /// Entries reduced modulo the irrelevant ideal, i.e. their constant terms.
  PolyMatrix constant_part() const {
    PolyMatrix m(tag_, rowDeg_, colDeg_);
    for (size_t i = 0; i < data_.size(); ++i) {
      const P& p = data_[i];
      if (p.has_constant_term()) m.data_[i] = P::constant(tag_, p.terms().back().coef);
    }
    return m;
  }
  bool entries_in_irrelevant_ideal() const {
    for (auto& p : data_)
      if (p.has_constant_term()) return false;
    return true;
  }

  ScalarMatrix<Field> evaluate(std::span<const typename Field::Scalar> point, const Field& k) const {
    if (point.size() != tag_.nvars)
      throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                  " coordinates, ring has " + std::to_string(tag_.nvars) + " variables");
    ScalarMatrix<Field> s(k, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j).evaluate(point, k);
    return s;
  }

  /// Every nonzero entry (i, j) homogeneous of degree colDegree(j).internal -
  /// rowDegree(i).internal with respect to the given weights (ring weights if
  /// empty).
  bool internally_homogeneous(std::span<const int> weights, int shift = 0) const {
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) {
        const P& p = (*this)(i, j);
        if (p.is_zero()) continue;
        int want = colDeg_[j].internal - rowDeg_[i].internal + shift;
        if (weights.empty()) {
          if (!p.is_homogeneous() || p.degree() != want) return false;
        } else {
          if (!p.is_homogeneous(weights) || p.degree_in(weights) != want) return false;
        }
      }
    return true;
  }

 private:
  static void same_shape(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
    if (!(a.tag_ == b.tag_)) throw RingMismatch();
  }

  RingTag tag_{};
  size_t rows_ = 0, cols_ = 0;
  std::vector<P> data_;
  std::vector<Bidegree> rowDeg_, colDeg_;
};

}  // namespace jumploci
