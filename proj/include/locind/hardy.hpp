#pragma once

#include "locind/laurent.hpp"
#include "locind/matrix.hpp"

namespace locind {

// ---------------------------------------------------------------------------
// Operators on the semi-infinite sequence space spanned by e_0, e_1, ...
// represented exactly as
//
//     op = toeplitz(symbol) + corner
//
// where toeplitz(a)[i][j] = a_{i-j} and the corner is a finite matrix in the
// top-left block.  This class of operators is closed under products because
// the Toeplitz cross term is a finite matrix:
//
//     toeplitz(a) * toeplitz(b) = toeplitz(ab) - hankel(a) * hankel(b~)
//
// with hankel(a)[i][j] = a_{i+j+1} and b~(z) = b(1/z).  Working without a
// truncation boundary is what lets corner traces see the winding number;
// square cutoffs of these operators always trace to zero.
// ---------------------------------------------------------------------------
class HardyOp {
 public:
  LaurentPoly symbol;
  Mat<Rat> corner{0, 0};

  HardyOp() = default;
  explicit HardyOp(LaurentPoly s) : symbol(std::move(s)) {}
  HardyOp(LaurentPoly s, Mat<Rat> c)
      : symbol(std::move(s)), corner(std::move(c)) {
    trim();
  }

  static HardyOp identity() { return HardyOp(LaurentPoly::one()); }
  static HardyOp from_corner(Mat<Rat> c) {
    return HardyOp(LaurentPoly::zero(), std::move(c));
  }
  // orthogonal projection onto e_0..e_{k-1}
  static HardyOp basis_projection(int k) {
    return from_corner(Mat<Rat>::identity(k));
  }

  bool is_zero() const { return symbol.is_zero() && corner.is_zero(); }
  // "smoothing" = no symbol part: the operator lives in a finite corner
  bool is_smoothing() const { return symbol.is_zero(); }

  Rat entry(int i, int j) const {
    Rat v = symbol.coeff(i - j);
    if (i < corner.rows() && j < corner.cols()) v += corner.at(i, j);
    return v;
  }

  // top-left k-by-k cutoff
  Mat<Rat> truncate(int k) const {
    Mat<Rat> out = Mat<Rat>::zero(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out.at(i, j) = entry(i, j);
    return out;
  }

  // trace is defined only when there is no symbol part
  Rat trace() const {
    if (!is_smoothing())
      fail_validation(
          "trace requested for an operator with a symbol part; only "
          "corner (smoothing) operators have a trace");
    return corner.trace();
  }

  HardyOp operator-() const { return HardyOp(-symbol, -corner); }

  friend HardyOp operator+(const HardyOp& x, const HardyOp& y) {
    int r = std::max(x.corner.rows(), y.corner.rows());
    int c = std::max(x.corner.cols(), y.corner.cols());
    return HardyOp(x.symbol + y.symbol,
                   x.corner.padded(r, c) + y.corner.padded(r, c));
  }
  friend HardyOp operator-(const HardyOp& x, const HardyOp& y) {
    return x + (-y);
  }

  friend HardyOp operator*(const HardyOp& x, const HardyOp& y) {
    // toeplitz*toeplitz: symbol product minus the hankel cross term
    HardyOp out(x.symbol * y.symbol);
    Mat<Rat> cross = hankel_product(x.symbol, y.symbol);
    Mat<Rat> acc = -cross;
    acc = corner_sum(acc, toeplitz_times_corner(x.symbol, y.corner));
    acc = corner_sum(acc, corner_times_toeplitz(x.corner, y.symbol));
    if (x.corner.cols() > 0 && y.corner.rows() > 0) {
      int inner = std::max(x.corner.cols(), y.corner.rows());
      acc = corner_sum(acc, x.corner.padded(x.corner.rows(), inner) *
                                y.corner.padded(inner, y.corner.cols()));
    }
    out.corner = acc;
    out.trim();
    return out;
  }

  HardyOp scaled(const Rat& c) const {
    HardyOp out(symbol.scaled(c), corner.scaled(c));
    out.trim();
    return out;
  }

  friend bool operator==(const HardyOp& x, const HardyOp& y) {
    return (x - y).is_zero();
  }
  friend bool operator!=(const HardyOp& x, const HardyOp& y) {
    return !(x == y);
  }

 private:
  void trim() {
    int r = corner.rows(), c = corner.cols();
    auto row_zero = [&](int i) {
      for (int j = 0; j < c; ++j)
        if (!corner.at(i, j).is_zero()) return false;
      return true;
    };
    auto col_zero = [&](int j) {
      for (int i = 0; i < r; ++i)
        if (!corner.at(i, j).is_zero()) return false;
      return true;
    };
    while (r > 0 && row_zero(r - 1)) --r;
    while (c > 0 && col_zero(c - 1)) --c;
    if (r == corner.rows() && c == corner.cols()) return;
    Mat<Rat> cut = Mat<Rat>::zero(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) cut.at(i, j) = corner.at(i, j);
    corner = std::move(cut);
  }

  static Mat<Rat> corner_sum(const Mat<Rat>& a, const Mat<Rat>& b) {
    int r = std::max(a.rows(), b.rows());
    int c = std::max(a.cols(), b.cols());
    return a.padded(r, c) + b.padded(r, c);
  }

  // hankel(a) * hankel(b~): entry (i,j) = sum_k a_{i+k+1} * b_{-(k+j+1)}
  static Mat<Rat> hankel_product(const LaurentPoly& a, const LaurentPoly& b) {
    int rows = std::max(0, a.max_power());
    int cols = std::max(0, -b.min_power());
    Mat<Rat> out = Mat<Rat>::zero(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Rat acc;
        for (int k = 0; i + k + 1 <= a.max_power(); ++k)
          acc += a.coeff(i + k + 1) * b.coeff(-(k + j + 1));
        out.at(i, j) = acc;
      }
    return out;
  }

  // rows reach corner rows + positive bandwidth of the symbol
  static Mat<Rat> toeplitz_times_corner(const LaurentPoly& a,
                                        const Mat<Rat>& k) {
    if (k.rows() == 0 || k.cols() == 0 || a.is_zero())
      return Mat<Rat>::zero(0, 0);
    int rows = k.rows() + std::max(0, a.max_power());
    Mat<Rat> out = Mat<Rat>::zero(rows, k.cols());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < k.cols(); ++j) {
        Rat acc;
        for (int t = 0; t < k.rows(); ++t) acc += a.coeff(i - t) * k.at(t, j);
        out.at(i, j) = acc;
      }
    return out;
  }

  static Mat<Rat> corner_times_toeplitz(const Mat<Rat>& k,
                                        const LaurentPoly& b) {
    if (k.rows() == 0 || k.cols() == 0 || b.is_zero())
      return Mat<Rat>::zero(0, 0);
    int cols = k.cols() + std::max(0, -b.min_power());
    Mat<Rat> out = Mat<Rat>::zero(k.rows(), cols);
    for (int i = 0; i < k.rows(); ++i)
      for (int j = 0; j < cols; ++j) {
        Rat acc;
        for (int t = 0; t < k.cols(); ++t) acc += k.at(i, t) * b.coeff(t - j);
        out.at(i, j) = acc;
      }
    return out;
  }
};

template <>
struct ScalarLike<HardyOp> {
  static HardyOp zero() { return HardyOp(); }
  static HardyOp one() { return HardyOp::identity(); }
  static bool is_zero(const HardyOp& v) { return v.is_zero(); }
  static HardyOp inv(const HardyOp&) {
    fail_internal("generic inversion is not defined for sequence operators");
  }
  static HardyOp from_rat(const Rat& v) {
    return HardyOp::identity().scaled(v);
  }
  static double abs(const HardyOp&) {
    fail_internal("no scalar norm for sequence operators");
  }
  static bool is_exact() { return true; }
};

inline HardyOp operator*(const Rat& c, const HardyOp& x) { return x.scaled(c); }

}  // namespace locind
