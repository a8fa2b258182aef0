#pragma once

#include <map>
#include <vector>

#include "locind/matrix.hpp"
#include "locind/scalar.hpp"
#include "locind/space.hpp"

namespace locind {

inline constexpr long kDefaultBasisBudget = 2'000'000;

// ---------------------------------------------------------------------------
// Sparse cochain on (q+1)-tuples of points.  The degree is carried explicitly
// so that the zero cochain still knows where it lives.
// ---------------------------------------------------------------------------
template <class S>
struct ASCochain {
  int degree = 0;
  std::map<std::vector<int>, S> coeffs;

  static ASCochain indicator(int degree, std::vector<int> tuple, S value) {
    ASCochain f;
    f.degree = degree;
    f.coeffs.emplace(std::move(tuple), std::move(value));
    return f;
  }

  void add(const std::vector<int>& tuple, const S& value) {
    auto [it, fresh] = coeffs.try_emplace(tuple, value);
    if (!fresh) it->second = it->second + value;
  }

  void prune_zeros() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = ScalarLike<S>::is_zero(it->second) ? coeffs.erase(it) : ++it;
  }

  bool is_zero() const {
    for (const auto& [t, v] : coeffs)
      if (!ScalarLike<S>::is_zero(v)) return false;
    return true;
  }
};

// All tuples of length q+1 admitted at radius eps, lexicographic.  Prefix
// pruning keeps localized enumerations small; `budget` caps the output size.
std::vector<std::vector<int>> allowed_tuple_basis(const FinitePointSpace& space,
                                                  int degree,
                                                  const Radius& eps,
                                                  long budget);

// ---------------------------------------------------------------------------
// Coboundary.  The free map sums signed face evaluations over every tuple of
// the ambient space; the localized map is the same sum restricted to tuples
// admitted at eps.  Faces of admitted tuples are admitted, so the restricted
// map squares to zero degreewise.
// ---------------------------------------------------------------------------
template <class S>
ASCochain<S> coboundary(const FinitePointSpace& space, const ASCochain<S>& f,
                        const Radius& eps) {
  ASCochain<S> out;
  out.degree = f.degree + 1;
  S one = ScalarLike<S>::one();
  for (const auto& [tuple, value] : f.coeffs) {
    if (ScalarLike<S>::is_zero(value)) continue;
    for (size_t pos = 0; pos <= tuple.size(); ++pos) {
      S signed_value = (pos % 2 == 0) ? one * value : -(one * value);
      std::vector<int> grown(tuple.size() + 1);
      std::copy(tuple.begin(), tuple.begin() + pos, grown.begin());
      std::copy(tuple.begin() + pos, tuple.end(), grown.begin() + pos + 1);
      for (int p = 0; p < space.n_points; ++p) {
        grown[pos] = p;
        if (!eps.infinite && !tuple_allowed(space, grown, eps)) continue;
        out.add(grown, signed_value);
      }
    }
  }
  out.prune_zeros();
  return out;
}

template <class S>
ASCochain<S> free_coboundary(const FinitePointSpace& space,
                             const ASCochain<S>& f) {
  return coboundary(space, f, Radius::inf());
}

// Signed average over all orderings of each tuple.  The 1/(q+1)! factor wants
// exact scalars once the factorial outgrows double precision.
template <class S>
ASCochain<S> antisymmetrize(const ASCochain<S>& f,
                            long budget = kDefaultBasisBudget) {
  int q = f.degree;
  if (!ScalarLike<S>::is_exact() && q >= 13)
    fail_validation(
        "antisymmetrization in float mode is unreliable for degree >= 13; "
        "use rational scalars");
  long factorial = 1;
  for (int k = 2; k <= q + 1; ++k) {
    factorial *= k;
    if (factorial > budget)
      fail_budget("antisymmetrization over " + std::to_string(q + 1) +
                  "! orderings exceeds the work budget");
  }
  if (factorial * long(f.coeffs.size()) > budget)
    fail_budget("antisymmetrization term count exceeds the work budget");

  S norm = ScalarLike<S>::inv(
      ScalarLike<S>::from_rat(Rat(BigRat(factorial))));
  ASCochain<S> out;
  out.degree = q;
  std::vector<int> perm(q + 1);
  for (const auto& [tuple, value] : f.coeffs) {
    for (size_t k = 0; k < perm.size(); ++k) perm[k] = int(k);
    do {
      int inversions = 0;
      for (size_t a = 0; a < perm.size(); ++a)
        for (size_t b = a + 1; b < perm.size(); ++b)
          if (perm[a] > perm[b]) ++inversions;
      std::vector<int> permuted(perm.size());
      for (size_t k = 0; k < perm.size(); ++k) permuted[k] = tuple[perm[k]];
      S term = value * norm;
      out.add(permuted, (inversions % 2 == 0) ? term : -term);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  out.prune_zeros();
  return out;
}

// ---------------------------------------------------------------------------
// Cohomology of the (localized) tuple complex.
// ---------------------------------------------------------------------------
struct CohomologyProfile {
  std::vector<int> dims;   // dim C^q for q = 0..max_degree
  std::vector<int> ranks;  // cohomology ranks for q = 0..max_degree
};

CohomologyProfile as_cohomology(const FinitePointSpace& space, int max_degree,
                                const Radius& eps, ScalarKind kind,
                                long budget = kDefaultBasisBudget,
                                const bool* cancel = nullptr);

struct ScanStage {
  BigRat eps;  // finite by construction (scan runs over realized distances)
  CohomologyProfile profile;
};

struct CohomologyScan {
  std::vector<ScanStage> stages;  // radii descending
  bool stabilized = false;        // single stage, or final two stages agree
  std::vector<int> final_ranks;
};

CohomologyScan localized_cohomology_scan(const FinitePointSpace& space,
                                         int max_degree, ScalarKind kind,
                                         long budget = kDefaultBasisBudget,
                                         const bool* cancel = nullptr);

}  // namespace locind
