#pragma once

#include <string>
#include <vector>

#include "locind/alexander_spanier.hpp"
#include "locind/operator_model.hpp"
#include "locind/tensor_chain.hpp"

namespace locind {

// ---------------------------------------------------------------------------
// Kernel on a finite space with a matrix fiber attached to every point.
// Entries are stored fiber-major: global index = fiber * n_points + point,
// the same layout the kernel algebras use, so elements move back and forth.
// ---------------------------------------------------------------------------
template <class S>
struct PositionKernel {
  SpacePtr space;
  int fiber = 1;
  std::shared_ptr<const CycloContext> ctx;  // null on the float route
  Mat<S> m;

  const S& entry(int a, int x, int b, int y) const {
    return m.at(a * space->n_points + x, b * space->n_points + y);
  }
  // fiber-by-fiber block between two points
  Mat<S> point_block(int x, int y) const {
    Mat<S> blk(fiber, fiber);
    for (int a = 0; a < fiber; ++a)
      for (int b = 0; b < fiber; ++b) blk.at(a, b) = entry(a, x, b, y);
    return blk;
  }
};

// the doubled remainder R of a rational model, transported to the position
// basis on the circle with exactly as many points as the truncation window
PositionKernel<Cyclo> remainder_position_kernel(const OperatorModel& model);
PositionKernel<Cplx> remainder_position_kernel_float(const OperatorModel& model);

// the constant cochain phi = 1 on all (q+1)-tuples
ASCochain<Rat> constant_cochain(const FinitePointSpace& space, int q);

// ---------------------------------------------------------------------------
// The pairing: tau(phi) = sum over (q+1)-tuples of
// tr(R(x0,x1) R(x1,x2) ... R(xq,x0)) phi(x0,...,xq), counting measure, trace
// over the fiber indices.  q must be even; phi must live on the same space.
// ---------------------------------------------------------------------------
Cyclo tau_pairing(const PositionKernel<Cyclo>& R, const SpacePtr& phi_space,
                  const ASCochain<Rat>& phi, int q);
Cplx tau_pairing(const PositionKernel<Cplx>& R, const SpacePtr& phi_space,
                 const ASCochain<Rat>& phi, int q);

// ---------------------------------------------------------------------------
// Full pipeline report for one model and one cochain.
// ---------------------------------------------------------------------------
struct IndexReport {
  std::string model_descriptor;
  ScalarKind kind = ScalarKind::rational;
  int q = 0;
  std::string tau_value;
  std::string residue_trace_value;
  long oracle_index = 0;     // rectangular shift-compression oracle
  long classical_index = 0;  // opposite sign convention
  bool tau_equals_residue_trace = false;
  bool tau_equals_oracle = false;
  bool phi_was_antisymmetrized = false;
  Radius phi_support = Radius::finite(BigRat(0));
  Radius chain_support = Radius::finite(BigRat(0));
  bool support_compatible = false;
  // convention flags, recorded in every report
  std::string measure = "counting";
  std::string support_mode = "sum";
  std::string trace_convention = "tr(S0^2) - tr(S1^2)";
  std::string index_sign_convention = "classical index = -winding";
};

IndexReport index_class(const OperatorModel& model, const ASCochain<Rat>& phi,
                        long budget = kDefaultBasisBudget);

// raw pairing report: phi is paired verbatim, no antisymmetrization and no
// oracle comparison attached
struct PairReport {
  std::string model_descriptor;
  ScalarKind kind = ScalarKind::rational;
  int q = 0;
  std::string tau_value;
  Radius phi_support = Radius::finite(BigRat(0));
  Radius chain_support = Radius::finite(BigRat(0));
  bool support_compatible = false;
  std::string measure = "counting";
  std::string support_mode = "sum";
};

PairReport pair_value(const OperatorModel& model, const ASCochain<Rat>& phi,
                      int q);

// ---------------------------------------------------------------------------
// Cycle property: pairing against coboundaries of random cochains vanishes.
// ---------------------------------------------------------------------------
struct CycleCheckReport {
  int q = 0;
  int trials = 0;
  unsigned long seed = 0;
  bool exact_zero = false;  // every pairing vanished exactly (rational route)
  double max_abs = 0.0;
};

CycleCheckReport as_cycle_check(const PositionKernel<Cyclo>& R, int q,
                                int trials, unsigned long seed = 1,
                                const Radius& psi_support = Radius::inf(),
                                long budget = kDefaultBasisBudget);
CycleCheckReport as_cycle_check(const PositionKernel<Cplx>& R, int q,
                                int trials, unsigned long seed = 1,
                                const Radius& psi_support = Radius::inf(),
                                long budget = kDefaultBasisBudget);

// ---------------------------------------------------------------------------
// Diagonal restriction of a chain over a kernel algebra: the functional
//   phi -> sum over tuples of tr(f0(x0,x1) f1(x1,x2) ... fr(xr,x0)) phi(...)
// ---------------------------------------------------------------------------
template <class S>
struct DiagonalRestriction {
  TensorChain<S> chain;
  SpacePtr space;
  int fiber = 1;

  // pairing with a cochain of the chain's degree
  S apply(const ASCochain<Rat>& phi) const;
  // pairing with the constant cochain 1 collapses to a matrix trace
  S apply_constant() const;
};

DiagonalRestriction<Cyclo> restrict_to_diagonal(TensorChain<Cyclo> c);
DiagonalRestriction<Cplx> restrict_to_diagonal(TensorChain<Cplx> c);
DiagonalRestriction<Rat> restrict_to_diagonal(TensorChain<Rat> c);

// kernel-algebra view of a position kernel and the position-diagonal
// idempotent of its second fiber slot, ready for separable reduction
AlgElem<Cyclo> kernel_algebra_element(const PositionKernel<Cyclo>& k,
                                      const AlgPtr& alg);
SeparableContext<Cyclo> position_separable_context(
    const PositionKernel<Cyclo>& k, const AlgPtr& alg);

// ---------------------------------------------------------------------------
// Conjecture probe: side-by-side numbers for the symbol route and the
// remainder route.  No equality is asserted anywhere; the q = 0 row reduces
// to trace identities and is the only row the acceptance gate reads.
// ---------------------------------------------------------------------------
struct ProbeRow {
  int q = 0;
  std::string sigma_winding;  // symbol-side invariant (degree independent)
  std::string sigma_chain;    // diagonal restriction of the symbol-side odd
                              // chain against phi = 1 ("" when undefined)
  std::string residue_tau;    // tau against phi = 1 at degree 2q
  std::string residue_chain;  // cyclic-route value, 1/q! normalization inside
  bool q0_equal = false;      // winding == residue tau; only set at q = 0
};

struct ProbeReport {
  std::string model_descriptor;
  std::string label = "conjecture probe (no equality asserted)";
  std::vector<ProbeRow> rows;
};

ProbeReport conjecture_probe(const OperatorModel& model, int q_max);

std::string model_descriptor(const OperatorModel& model);

}  // namespace locind
