#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <map>
#include <optional>
#include <vector>

#include "locind/scalar.hpp"

namespace locind {

// ---------------------------------------------------------------------------
// Dense matrix over an arbitrary ring S (exact rationals, complex doubles,
// cyclotomic numbers, or operator-valued entries).  Field-only algorithms
// (rank, inverse, det) are member templates instantiated only where used.
// ---------------------------------------------------------------------------
template <class S>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ScalarLike<S>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const S& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!ScalarLike<S>::is_zero(v)) return false;
    return true;
  }

  Mat operator-() const {
    Mat r = *this;
    for (auto& v : r.a_) v = -v;
    return r;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      fail_validation("matrix addition shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }

  friend Mat operator-(const Mat& x, const Mat& y) { return x + (-y); }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_) fail_validation("matrix product shape mismatch");
    Mat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const S& v = x.at(i, k);
        if (ScalarLike<S>::is_zero(v)) continue;
        for (int j = 0; j < y.cols_; ++j) r.at(i, j) += v * y.at(k, j);
      }
    return r;
  }

  Mat scaled(const S& c) const {
    Mat r = *this;
    for (auto& v : r.a_) v = v * c;
    return r;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }

  S trace() const {
    S t{};
    int n = rows_ < cols_ ? rows_ : cols_;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
  }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // embed into the top-left of a larger zero matrix
  Mat padded(int rows, int cols) const {
    if (rows < rows_ || cols < cols_) fail_validation("padded: shrinking pad");
    Mat r(rows, cols);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    return r;
  }

  // --- field-only algorithms ---

  int rank_exact() const {
    Mat m = *this;
    int rank = 0;
    for (int col = 0; col < m.cols_ && rank < m.rows_; ++col) {
      int piv = -1;
      for (int r = rank; r < m.rows_; ++r)
        if (!ScalarLike<S>::is_zero(m.at(r, col))) { piv = r; break; }
      if (piv < 0) continue;
      for (int j = 0; j < m.cols_; ++j) std::swap(m.at(piv, j), m.at(rank, j));
      S inv = ScalarLike<S>::inv(m.at(rank, col));
      for (int j = col; j < m.cols_; ++j) m.at(rank, j) = m.at(rank, j) * inv;
      for (int r = 0; r < m.rows_; ++r) {
        if (r == rank || ScalarLike<S>::is_zero(m.at(r, col))) continue;
        S f = m.at(r, col);
        for (int j = col; j < m.cols_; ++j)
          m.at(r, j) = m.at(r, j) - f * m.at(rank, j);
      }
      ++rank;
    }
    return rank;
  }

  std::optional<Mat> inverse() const {
    if (rows_ != cols_) fail_validation("inverse of non-square matrix");
    Mat m = *this;
    Mat inv = identity(rows_);
    for (int col = 0; col < cols_; ++col) {
      int piv = -1;
      for (int r = col; r < rows_; ++r)
        if (!ScalarLike<S>::is_zero(m.at(r, col))) { piv = r; break; }
      if (piv < 0) return std::nullopt;
      for (int j = 0; j < cols_; ++j) {
        std::swap(m.at(piv, j), m.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
      S f = ScalarLike<S>::inv(m.at(col, col));
      for (int j = 0; j < cols_; ++j) {
        m.at(col, j) = m.at(col, j) * f;
        inv.at(col, j) = inv.at(col, j) * f;
      }
      for (int r = 0; r < rows_; ++r) {
        if (r == col || ScalarLike<S>::is_zero(m.at(r, col))) continue;
        S g = m.at(r, col);
        for (int j = 0; j < cols_; ++j) {
          m.at(r, j) = m.at(r, j) - g * m.at(col, j);
          inv.at(r, j) = inv.at(r, j) - g * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  S det() const {
    if (rows_ != cols_) fail_validation("determinant of non-square matrix");
    Mat m = *this;
    S d = ScalarLike<S>::one();
    for (int col = 0; col < cols_; ++col) {
      int piv = -1;
      for (int r = col; r < rows_; ++r)
        if (!ScalarLike<S>::is_zero(m.at(r, col))) { piv = r; break; }
      if (piv < 0) return S{};
      if (piv != col) {
        for (int j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(col, j));
        d = -d;
      }
      d = d * m.at(col, col);
      S f = ScalarLike<S>::inv(m.at(col, col));
      for (int r = col + 1; r < rows_; ++r) {
        if (ScalarLike<S>::is_zero(m.at(r, col))) continue;
        S g = m.at(r, col) * f;
        for (int j = col; j < cols_; ++j)
          m.at(r, j) = m.at(r, j) - g * m.at(col, j);
      }
    }
    return d;
  }

 private:
  int rows_, cols_;
  std::vector<S> a_;
};

template <class S>
Mat<S> block2x2(const Mat<S>& a, const Mat<S>& b, const Mat<S>& c,
                const Mat<S>& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    fail_validation("block2x2: inconsistent block shapes");
  Mat<S> r(a.rows() + c.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) r.at(a.rows() + i, j) = c.at(i, j);
    for (int j = 0; j < d.cols(); ++j)
      r.at(a.rows() + i, a.cols() + j) = d.at(i, j);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Incremental sparse rank over an exact field: columns are eliminated against
// previously stored pivot columns.  The workhorse for boundary-matrix ranks.
// An optional cancellation hook is polled between columns.
// ---------------------------------------------------------------------------
template <class S>
class SparseRankAccum {
 public:
  using Col = std::map<int, S>;

  explicit SparseRankAccum(const bool* cancel_flag = nullptr)
      : cancel_(cancel_flag) {}

  void add_column(Col col) {
    if (cancel_ && *cancel_) fail_validation("rank computation cancelled");
    while (!col.empty()) {
      auto top = col.rbegin();
      int row = top->first;
      auto piv = pivots_.find(row);
      if (piv == pivots_.end()) {
        S inv = ScalarLike<S>::inv(top->second);
        Col norm;
        for (const auto& [r, v] : col) norm[r] = v * inv;
        pivots_.emplace(row, std::move(norm));
        ++rank_;
        return;
      }
      S f = top->second;
      for (const auto& [r, v] : piv->second) {
        auto it = col.find(r);
        S nv = (it == col.end() ? S{} : it->second) - f * v;
        if (ScalarLike<S>::is_zero(nv)) {
          if (it != col.end()) col.erase(it);
        } else {
          col[r] = nv;
        }
      }
    }
  }

  int rank() const { return rank_; }

 private:
  std::map<int, Col> pivots_;
  int rank_ = 0;
  const bool* cancel_;
};

// ---------------------------------------------------------------------------
// Float-mode rank via SVD with a pinned cutoff and an ambiguity band that is
// reported as an error instead of silently guessing.
// ---------------------------------------------------------------------------
inline constexpr double kSvdRankCutoff = 1e-9;
inline constexpr double kSvdAmbiguityLow = 1e-12;

inline int svd_rank(const Mat<Cplx>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e(i, j) = m.at(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    double s = sv(i);
    if (s >= kSvdAmbiguityLow && s <= kSvdRankCutoff)
      fail_validation(
          "ambiguous float rank: singular value " + std::to_string(s) +
          " inside [" + std::to_string(kSvdAmbiguityLow) + ", " +
          std::to_string(kSvdRankCutoff) + "]; use rational mode");
    if (s > kSvdRankCutoff) ++rank;
  }
  return rank;
}

}  // namespace locind
