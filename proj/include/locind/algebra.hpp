#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "locind/matrix.hpp"
#include "locind/scalar.hpp"
#include "locind/space.hpp"

namespace locind {

// One matrix unit e_{row,col} inside a named block of a multi-matrix algebra.
struct AlgebraUnit {
  int block = 0;
  int row = 0;
  int col = 0;
  friend bool operator==(const AlgebraUnit&, const AlgebraUnit&) = default;
  friend auto operator<=>(const AlgebraUnit&, const AlgebraUnit&) = default;
};

class FiniteAlgebra;
using AlgPtr = std::shared_ptr<const FiniteAlgebra>;

// ---------------------------------------------------------------------------
// Finite-dimensional semisimple algebra: a direct sum of matrix blocks.
// When a space is attached, each block index is a (fiber, point) pair laid
// out fiber-major, and matrix units inherit a propagation distance from the
// space metric -- the kernel-operator picture used for localization.
// ---------------------------------------------------------------------------
class FiniteAlgebra {
 public:
  std::vector<int> block_sizes;
  SpacePtr space;      // optional
  int fiber_dim = 1;   // per-point fiber size when a space is attached
  std::string label;

  static AlgPtr matrix_algebra(int k, const std::string& label = "");
  static AlgPtr direct_sum(const std::vector<int>& ks,
                           const std::string& label = "");
  static AlgPtr scalars() { return matrix_algebra(1, "C"); }
  static AlgPtr two_scalars() { return direct_sum({1, 1}, "C+C"); }
  // full kernel-operator algebra on a finite space with a fiber dimension
  static AlgPtr kernel_algebra(SpacePtr space, int fiber_dim = 1);
  // M_k(base): every block size multiplies by k; space metadata carries over
  static AlgPtr matrix_over(const AlgPtr& base, int k);

  int block_count() const { return int(block_sizes.size()); }
  int block_size(int b) const { return block_sizes[size_t(b)]; }
  bool has_space() const { return space != nullptr; }

  // dimension as a vector space: sum of squared block sizes
  long element_dim() const {
    long d = 0;
    for (int k : block_sizes) d += long(k) * k;
    return d;
  }

  std::vector<AlgebraUnit> unit_basis() const {
    std::vector<AlgebraUnit> units;
    for (int b = 0; b < block_count(); ++b)
      for (int i = 0; i < block_size(b); ++i)
        for (int j = 0; j < block_size(b); ++j)
          units.push_back(AlgebraUnit{b, i, j});
    return units;
  }

  // which space point a block index refers to (block sizes are multiples of
  // the point count, fiber-major, so reduction mod n_points is exact)
  int point_of(int index) const {
    return index % space->n_points;
  }

  Radius unit_propagation(const AlgebraUnit& u) const {
    if (!has_space()) return Radius::finite(BigRat(0));
    return space->pair_radius(point_of(u.row), point_of(u.col));
  }

  void validate() const;
};

// ---------------------------------------------------------------------------
// Algebra element with scalar entries of type S, stored blockwise dense.
// ---------------------------------------------------------------------------
template <class S>
struct AlgElem {
  AlgPtr alg;
  std::vector<Mat<S>> blocks;

  static AlgElem zero(AlgPtr a) {
    AlgElem v;
    v.alg = std::move(a);
    for (int b = 0; b < v.alg->block_count(); ++b) {
      int k = v.alg->block_size(b);
      v.blocks.push_back(Mat<S>::zero(k, k));
    }
    return v;
  }

  static AlgElem one(AlgPtr a) {
    AlgElem v = zero(std::move(a));
    for (auto& blk : v.blocks) blk = Mat<S>::identity(blk.rows());
    return v;
  }

  static AlgElem unit(AlgPtr a, const AlgebraUnit& u, S value) {
    AlgElem v = zero(std::move(a));
    v.blocks[size_t(u.block)].at(u.row, u.col) = std::move(value);
    return v;
  }

  // diagonal 0/1 idempotent given per-block membership flags
  static AlgElem diagonal_idempotent(
      AlgPtr a, const std::vector<std::vector<char>>& side) {
    AlgElem v = zero(std::move(a));
    require(side.size() == v.blocks.size(),
            "idempotent side data must cover every block");
    for (size_t b = 0; b < v.blocks.size(); ++b) {
      require(int(side[b].size()) == v.blocks[b].rows(),
              "idempotent side data has wrong length");
      for (int i = 0; i < v.blocks[b].rows(); ++i)
        if (side[b][size_t(i)]) v.blocks[b].at(i, i) = ScalarLike<S>::one();
    }
    return v;
  }

  bool is_zero() const {
    for (const auto& blk : blocks)
      if (!blk.is_zero()) return false;
    return true;
  }

  long nnz() const {
    long n = 0;
    for (const auto& blk : blocks)
      for (int i = 0; i < blk.rows(); ++i)
        for (int j = 0; j < blk.cols(); ++j)
          if (!ScalarLike<S>::is_zero(blk.at(i, j))) ++n;
    return n;
  }

  S trace() const {
    S t = ScalarLike<S>::zero();
    for (const auto& blk : blocks) t = t + blk.trace();
    return t;
  }

  Radius propagation() const {
    if (!alg->has_space())
      fail_validation("propagation needs an algebra with a space attached");
    Radius best = Radius::finite(BigRat(0));
    for (int b = 0; b < alg->block_count(); ++b)
      for (int i = 0; i < blocks[size_t(b)].rows(); ++i)
        for (int j = 0; j < blocks[size_t(b)].cols(); ++j) {
          if (ScalarLike<S>::is_zero(blocks[size_t(b)].at(i, j))) continue;
          Radius r = alg->unit_propagation(AlgebraUnit{b, i, j});
          if (!radius_le(r, best)) best = r;
        }
    return best;
  }

  AlgElem operator-() const {
    AlgElem v = *this;
    for (auto& blk : v.blocks) blk = -blk;
    return v;
  }
  friend AlgElem operator+(AlgElem x, const AlgElem& y) {
    x.check_same(y);
    for (size_t b = 0; b < x.blocks.size(); ++b)
      x.blocks[b] = x.blocks[b] + y.blocks[b];
    return x;
  }
  friend AlgElem operator-(AlgElem x, const AlgElem& y) { return x + (-y); }
  friend AlgElem operator*(const AlgElem& x, const AlgElem& y) {
    x.check_same(y);
    AlgElem v = x;
    for (size_t b = 0; b < x.blocks.size(); ++b)
      v.blocks[b] = x.blocks[b] * y.blocks[b];
    return v;
  }
  AlgElem scaled(const S& c) const {
    AlgElem v = *this;
    for (auto& blk : v.blocks) blk = blk.scaled(c);
    return v;
  }
  friend bool operator==(const AlgElem& x, const AlgElem& y) {
    return x.blocks == y.blocks;
  }

  // total order so factor tuples can key maps deterministically
  friend bool operator<(const AlgElem& x, const AlgElem& y) {
    for (size_t b = 0; b < x.blocks.size(); ++b) {
      const auto& xb = x.blocks[b];
      const auto& yb = y.blocks[b];
      for (int i = 0; i < xb.rows(); ++i)
        for (int j = 0; j < xb.cols(); ++j) {
          const S& a = xb.at(i, j);
          const S& c = yb.at(i, j);
          if (scalar_order_less(a, c)) return true;
          if (scalar_order_less(c, a)) return false;
        }
    }
    return false;
  }

 private:
  void check_same(const AlgElem& o) const {
    if (alg.get() != o.alg.get())
      fail_internal("mixed algebra elements in one expression");
  }
};

// embed a finite 2x2-of-corners block matrix as one element of the kernel /
// truncated-operator algebra (single block of size 2K, fiber-major layout)
template <class S>
AlgElem<S> flatten_block2_corner(AlgPtr alg, const Mat<S>& a00,
                                 const Mat<S>& a01, const Mat<S>& a10,
                                 const Mat<S>& a11) {
  AlgElem<S> v = AlgElem<S>::zero(std::move(alg));
  require(v.alg->block_count() == 1, "flattening expects a single block");
  int k = v.alg->block_size(0) / 2;
  auto put = [&](const Mat<S>& m, int roff, int coff) {
    require(m.rows() <= k && m.cols() <= k, "corner exceeds the truncation");
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        v.blocks[0].at(roff + i, coff + j) = m.at(i, j);
  };
  put(a00, 0, 0);
  put(a01, 0, k);
  put(a10, k, 0);
  put(a11, k, k);
  return v;
}

}  // namespace locind
