#include "locind/alexander_spanier.hpp"

#include <algorithm>

#include "locind/errors.hpp"

namespace locind {

namespace {

// depth-first tuple enumeration with prefix pruning: a prefix that already
// violates the radius or the simplex condition cannot be completed
void enumerate_tuples(const FinitePointSpace& space, int length,
                      const Radius& eps, long budget,
                      std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
  if (int(current.size()) == length) {
    if (long(out.size()) >= budget)
      fail_budget("tuple basis exceeds budget of " + std::to_string(budget) +
                  " elements");
    out.push_back(current);
    return;
  }
  for (int p = 0; p < space.n_points; ++p) {
    if (!eps.infinite) {
      bool fits = true;
      for (int prev : current) {
        if (space.pair_disconnected(prev, p) ||
            !(space.dist(prev, p) <= eps.value)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
    }
    current.push_back(p);
    bool span_ok = eps.infinite || !space.has_simplices() ||
                   current.size() < 2 || space.tuple_in_some_simplex(current);
    if (span_ok) enumerate_tuples(space, length, eps, budget, current, out);
    current.pop_back();
  }
}

template <class S>
int coboundary_rank(const FinitePointSpace& space,
                    const std::vector<std::vector<int>>& domain_basis,
                    const std::map<std::vector<int>, int>& target_index,
                    const Radius& eps, const bool* cancel) {
  if constexpr (std::is_same_v<S, Rat>) {
    SparseRankAccum<Rat> accum(cancel);
    for (const auto& tuple : domain_basis) {
      auto df = coboundary(space, ASCochain<Rat>::indicator(
                                      int(tuple.size()) - 1, tuple, Rat(1)),
                           eps);
      SparseRankAccum<Rat>::Col col;
      for (const auto& [t, v] : df.coeffs) col[target_index.at(t)] = v;
      accum.add_column(col);
    }
    return accum.rank();
  } else {
    int rows = int(target_index.size());
    int cols = int(domain_basis.size());
    if (rows > 4000 || cols > 4000)
      fail_budget("float-mode rank needs a dense " + std::to_string(rows) +
                  "x" + std::to_string(cols) +
                  " decomposition; use rational scalars");
    Mat<Cplx> dmat = Mat<Cplx>::zero(rows, cols);
    for (int c = 0; c < cols; ++c) {
      auto df = coboundary(space,
                           ASCochain<Cplx>::indicator(
                               int(domain_basis[c].size()) - 1,
                               domain_basis[c], Cplx(1.0, 0.0)),
                           eps);
      for (const auto& [t, v] : df.coeffs) dmat.at(target_index.at(t), c) = v;
    }
    return svd_rank(dmat);
  }
}

}  // namespace

std::vector<std::vector<int>> allowed_tuple_basis(const FinitePointSpace& space,
                                                  int degree,
                                                  const Radius& eps,
                                                  long budget) {
  require(degree >= 0, "tuple degree must be nonnegative");
  if (eps.infinite) {
    // quick overflow-safe budget check for the unrestricted n^(q+1) count
    long count = 1;
    for (int k = 0; k <= degree; ++k) {
      if (count > budget / space.n_points + 1) count = budget + 1;
      else count *= space.n_points;
    }
    if (count > budget)
      fail_budget("tuple basis exceeds budget of " + std::to_string(budget) +
                  " elements");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  current.reserve(degree + 1);
  enumerate_tuples(space, degree + 1, eps, budget, current, out);
  return out;
}

CohomologyProfile as_cohomology(const FinitePointSpace& space, int max_degree,
                                const Radius& eps, ScalarKind kind,
                                long budget, const bool* cancel) {
  require(max_degree >= 0, "max_degree must be nonnegative");
  space.validate();

  // bases for degrees 0..max_degree+1 (one above for the outgoing rank)
  std::vector<std::vector<std::vector<int>>> bases;
  long used = 0;
  for (int q = 0; q <= max_degree + 1; ++q) {
    bases.push_back(allowed_tuple_basis(space, q, eps, budget - used));
    used += long(bases.back().size());
  }

  std::vector<std::map<std::vector<int>, int>> index(bases.size());
  for (size_t q = 0; q < bases.size(); ++q)
    for (size_t k = 0; k < bases[q].size(); ++k)
      index[q][bases[q][k]] = int(k);

  std::vector<int> d_rank(max_degree + 1, 0);
  for (int q = 0; q <= max_degree; ++q) {
    if (bases[q].empty() || bases[q + 1].empty()) continue;
    d_rank[q] = (kind == ScalarKind::rational)
                    ? coboundary_rank<Rat>(space, bases[q], index[q + 1], eps,
                                           cancel)
                    : coboundary_rank<Cplx>(space, bases[q], index[q + 1], eps,
                                            cancel);
  }

  CohomologyProfile profile;
  for (int q = 0; q <= max_degree; ++q) {
    profile.dims.push_back(int(bases[q].size()));
    int incoming = (q == 0) ? 0 : d_rank[q - 1];
    profile.ranks.push_back(int(bases[q].size()) - incoming - d_rank[q]);
  }
  return profile;
}

CohomologyScan localized_cohomology_scan(const FinitePointSpace& space,
                                         int max_degree, ScalarKind kind,
                                         long budget, const bool* cancel) {
  CohomologyScan scan;
  for (const BigRat& eps : space.distance_grid()) {
    ScanStage stage;
    stage.eps = eps;
    stage.profile = as_cohomology(space, max_degree, Radius::finite(eps), kind,
                                  budget, cancel);
    scan.stages.push_back(std::move(stage));
  }
  size_t n = scan.stages.size();
  scan.stabilized =
      n == 1 || (n >= 2 && scan.stages[n - 1].profile.ranks ==
                               scan.stages[n - 2].profile.ranks);
  scan.final_ranks = scan.stages.back().profile.ranks;
  return scan;
}

}  // namespace locind
