#pragma once

#include <memory>
#include <string>
#include <vector>

#include "locind/scalar.hpp"

namespace locind {

// A nonnegative length that may be the explicit "infinite" sentinel used for
// distances between connected components.
struct Radius {
  bool infinite = false;
  BigRat value = BigRat(0);

  static Radius inf() { return Radius{true, BigRat(0)}; }
  static Radius finite(BigRat v) { return Radius{false, std::move(v)}; }

  friend bool operator==(const Radius& a, const Radius& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.value == b.value;
  }

  // a <= b with the sentinel on top
  friend bool radius_le(const Radius& a, const Radius& b) {
    if (b.infinite) return true;
    if (a.infinite) return false;
    return a.value <= b.value;
  }

  double to_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : value.get_d();
  }
};

// ---------------------------------------------------------------------------
// Finite metric space with optional simplicial structure.  Distances are
// exact rationals in the space's own unit ("1" for graph hop counts, "pi"
// for circle arc lengths), so support predicates and scan grids are exact.
// Immutable after construction.
// ---------------------------------------------------------------------------
class FinitePointSpace {
 public:
  int n_points = 0;
  std::string label;
  std::string unit = "1";
  std::vector<BigRat> metric_;      // row-major n*n, finite distances
  std::vector<char> disconnected_;  // row-major n*n sentinel flags
  std::vector<std::vector<int>> maximal_simplices;  // sorted vertex lists

  const BigRat& dist(int i, int j) const {
    return metric_[size_t(i) * n_points + j];
  }
  bool pair_disconnected(int i, int j) const {
    return disconnected_[size_t(i) * n_points + j] != 0;
  }
  Radius pair_radius(int i, int j) const {
    return pair_disconnected(i, j) ? Radius::inf() : Radius::finite(dist(i, j));
  }

  bool has_simplices() const { return !maximal_simplices.empty(); }

  // does the set of tuple entries span a face of some maximal simplex?
  bool tuple_in_some_simplex(const std::vector<int>& tuple) const;

  // largest finite distance (0 for a single point)
  BigRat max_finite_distance() const;

  // largest pairwise distance within a single maximal simplex
  BigRat max_simplex_diameter() const;

  // distinct finite nonzero distances, descending; {0} if there are none
  std::vector<BigRat> distance_grid() const;

  void validate() const;
};

using SpacePtr = std::shared_ptr<const FinitePointSpace>;

// n uniform points on the unit circle, arc-length metric (unit: pi),
// simplicial structure = the cycle-graph edges.  n < 3 is an error.
SpacePtr circle_space(int n);

// Simplicial complex given by maximal simplices; metric = graph distance on
// the 1-skeleton, disconnected pairs get the infinity sentinel.  Empty input
// or non-contiguous vertex numbering is an error.
SpacePtr simplicial_space(const std::vector<std::vector<int>>& maximal);

SpacePtr single_point_space();

// max pairwise distance within the tuple (0 for constant tuples);
// empty tuples and out-of-range indices are errors
Radius tuple_support_radius(const FinitePointSpace& space,
                            const std::vector<int>& tuple);

// The diagonal-neighborhood membership predicate.  With an infinite radius
// every tuple is allowed (the non-localized complex).  At finite radius a
// tuple is allowed iff all pairwise distances are <= eps and, when the space
// carries simplices, the tuple spans a face of one of them.
bool tuple_allowed(const FinitePointSpace& space, const std::vector<int>& tuple,
                   const Radius& eps);

// Independent simplicial (co)homology oracle over the rationals, computed
// from the face lattice of the maximal simplices -- used as the reference
// answer for localized cochain complexes and kernel-algebra experiments.
std::vector<int> simplicial_cohomology_ranks(const FinitePointSpace& space,
                                             int max_degree);

}  // namespace locind
