#pragma once

#include <optional>

#include "locind/cyclotomic.hpp"
#include "locind/hardy.hpp"
#include "locind/laurent.hpp"
#include "locind/matrix.hpp"

namespace locind {

// ---------------------------------------------------------------------------
// 2x2 block matrices over an arbitrary ring element type E (sequence
// operators, finite matrices).  Only ring operations are used.
// ---------------------------------------------------------------------------
template <class E>
struct Block2 {
  E a, b, c, d;  // [[a, b], [c, d]]

  friend Block2 operator+(const Block2& x, const Block2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Block2 operator-(const Block2& x, const Block2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Block2 operator*(const Block2& x, const Block2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Block2& x, const Block2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

// ---------------------------------------------------------------------------
// The connecting construction.  Given an operator A and an approximate
// inverse B, form the remainders S0 = 1 - AB, S1 = 1 - BA and the invertible
// double
//
//     L = [[S0, -(1+S0)A], [B, S1]],    L^-1 = [[S0, (1+S0)A], [-B, S1]],
//
// conjugate the projection diag(1,0) to P = L diag(1,0) L^-1, and subtract
// the reference projection e = diag(0,1):  R = P - e.  Every displayed
// identity (two-sided inverse, idempotence, the closed block form of R, and
// the quadratic relation R^2 = R - (eR + Re)) holds in any ring; the
// construction verifies each one and treats a mismatch as an internal error.
// ---------------------------------------------------------------------------
template <class E>
struct ConnectingData {
  E S0, S1;
  Block2<E> L, Linv, P, e, R;
};

template <class E>
ConnectingData<E> connecting_construction(const E& A, const E& B,
                                          const E& one, const E& zero) {
  ConnectingData<E> out;
  out.S0 = one - A * B;
  out.S1 = one - B * A;
  const E& S0 = out.S0;
  const E& S1 = out.S1;
  E corrected = (one + S0) * A;  // (1+S0)A, the corrected numerator

  out.L = Block2<E>{S0, zero - corrected, B, S1};
  out.Linv = Block2<E>{S0, corrected, zero - B, S1};
  Block2<E> id2{one, zero, zero, one};
  check_internal(out.L * out.Linv == id2 && out.Linv * out.L == id2,
                 "closed-form inverse of the connecting operator failed");

  // P = L diag(1,0) L^-1 collapses to column-times-row of the outer factors
  out.P = Block2<E>{S0 * S0, S0 * corrected, B * S0, B * corrected};
  check_internal(out.P * out.P == out.P,
                 "conjugated projection is not idempotent");

  out.e = Block2<E>{zero, zero, zero, one};
  out.R = out.P - out.e;
  Block2<E> closed{S0 * S0, S0 * corrected, S1 * B, zero - S1 * S1};
  check_internal(out.R == closed,
                 "difference projection does not match its closed block form");

  Block2<E> lhs = out.R * out.R;
  Block2<E> rhs = out.R - (out.e * out.R + out.R * out.e);
  check_internal(lhs == rhs,
                 "quadratic relation for the difference projection failed");
  return out;
}

// ---------------------------------------------------------------------------
// Operator model for a Laurent symbol: the Toeplitz operator, a parametrix,
// and enough bookkeeping to run the connecting construction exactly.
// ---------------------------------------------------------------------------
struct OperatorModel {
  LaurentPoly symbol;
  int K = 8;               // finite-section / kernel truncation size
  ScalarKind kind = ScalarKind::rational;
  std::optional<int> winding;  // exponent for monomial symbols
  HardyOp A, B;
  bool exact_parametrix = false;
};

OperatorModel make_operator_model(const LaurentPoly& symbol, int K,
                                  ScalarKind kind);

// connecting construction at the sequence-operator level; for exact models
// the remainders are certified smoothing (pure corner) or it is an error
ConnectingData<HardyOp> hardy_connecting(const OperatorModel& model);

// tr(S0^2) - tr(S1^2); requires smoothing remainders
Rat residue_trace(const ConnectingData<HardyOp>& data);

// the same construction run entirely inside M_K: remainders are recomputed
// from the truncated operators, so all identities hold and the doubled
// operator has an honest determinant
struct FiniteSectionDiagnostics {
  int K = 0;
  Rat det_L;
  Rat trace_P;
  Rat trace_R;
};
FiniteSectionDiagnostics finite_section_diagnostics(const OperatorModel& model);

// index = dim ker - dim coker via rank-nullity
int fredholm_index_of(const Mat<Rat>& m);

// Independent index oracle: compress the shift power to a K x (K+w)
// rectangle and read the index off rank-nullity.  Requires 2|w| < K.
int rect_shift_index(int w, int K);

// ---------------------------------------------------------------------------
// Position-space kernels.  A corner matrix M acting on the first K basis
// vectors transports to a kernel on the N-point circle by the exact discrete
// Fourier pair
//
//     kernel(x, y) = (1/N) * sum_{j,k} zeta^(xj - yk) M[j][k]
//
// with zeta the primitive N-th root inside the cyclotomic field.  No square
// roots appear because the two transform factors are folded into one 1/N.
// Traces are preserved.  Requires N >= corner size.
// ---------------------------------------------------------------------------
Mat<Cyclo> corner_to_position_kernel(
    const Mat<Rat>& corner, int n_points,
    const std::shared_ptr<const CycloContext>& ctx);
Mat<Cplx> corner_to_position_kernel_float(const Mat<Rat>& corner,
                                          int n_points);

}  // namespace locind
