#pragma once

#include <optional>
#include <string>
#include <vector>

#include "locind/algebra.hpp"
#include "locind/tensor_chain.hpp"

namespace locind {

// ---------------------------------------------------------------------------
// Homology of tensor-power complexes over a finite algebra, computed on the
// matrix-unit basis.  Three variants share the machinery:
//   hochschild      -- full tensor basis, boundary with the wrap-around face
//   cyclic_bprime   -- signed-rotation-invariant vectors, bar boundary
//   cyclic_quotient -- rotation-orbit representatives, full boundary
// The two cyclic variants are two presentations of the same complex and must
// produce identical boundary matrices.
// ---------------------------------------------------------------------------

enum class HomologyVariant { hochschild, cyclic_bprime, cyclic_quotient };

const char* homology_variant_name(HomologyVariant v);
HomologyVariant homology_variant_from_name(const std::string& name);

struct HomologyOptions {
  HomologyVariant variant = HomologyVariant::cyclic_bprime;
  int degree_lo = 0;
  int degree_hi = 2;
  // keep only basis tensors whose combined factor propagation stays within
  // eps; sum mode adds the factor propagations, max mode takes the largest
  std::optional<Radius> epsilon;
  SupportMode support_mode = SupportMode::sum;
  // separable localization: keep only tensors compatible with the 0/1
  // diagonal idempotent described by per-block membership flags
  std::optional<std::vector<std::vector<char>>> sring_side;
  ScalarKind kind = ScalarKind::rational;
  long budget = kDefaultBasisBudget;
  const bool* cancel = nullptr;
};

struct HomologyResult {
  HomologyVariant variant;
  int degree_lo = 0;
  int degree_hi = 0;
  std::vector<long> dims;   // basis size per degree in [lo, hi]
  std::vector<int> ranks;   // homology rank per degree in [lo, hi]
};

HomologyResult homology_ranks(const AlgPtr& alg, const HomologyOptions& opt);

// ---------------------------------------------------------------------------
// Localized kernel-algebra experiment: Hochschild ranks of the kernel algebra
// of a space under a grid of support radii, compared against the simplicial
// cohomology oracle.  The selected radius is twice the maximal simplex
// diameter -- wide enough for one composition of adjacent kernels, narrow
// enough not to reconnect distant simplices.
// ---------------------------------------------------------------------------
struct LocalHochschildReport {
  std::string space_label;
  int max_degree = 0;
  SupportMode mode = SupportMode::sum;
  std::vector<BigRat> grid;
  std::vector<std::vector<int>> ranks_at;  // homology ranks per grid radius
  BigRat selected_eps;
  std::vector<int> selected_ranks;
  std::vector<int> oracle_ranks;
  bool matches_oracle = false;
};

LocalHochschildReport local_hochschild_experiment(
    const SpacePtr& space, int max_degree,
    std::vector<BigRat> grid = {}, SupportMode mode = SupportMode::sum,
    long budget = kDefaultBasisBudget, const bool* cancel = nullptr);

}  // namespace locind
