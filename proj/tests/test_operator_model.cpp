// Sequence-operator algebra, the connecting construction, residue traces,
// finite-section diagnostics, and the rectangular index oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "locind/errors.hpp"
#include "locind/operator_model.hpp"

using namespace locind;

namespace {

LaurentPoly mono(int w, long num = 1, long den = 1) {
  return LaurentPoly::monomial(w, Rat(BigRat(num, den)));
}

HardyOp random_op(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  LaurentPoly sym;
  for (int k = -2; k <= 2; ++k) {
    Rat c(BigRat(coeff(rng)));
    if (!c.is_zero() && coeff(rng) > 0) sym.coeffs[k] = c;
  }
  Mat<Rat> corner = Mat<Rat>::zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) corner.at(i, j) = Rat(BigRat(coeff(rng)));
  return HardyOp(sym, corner);
}

Mat<Rat> top_left(const Mat<Rat>& m, int k) {
  Mat<Rat> out = Mat<Rat>::zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

}  // namespace

TEST_CASE("shift times co-shift leaves a rank-one hole") {
  HardyOp shift(LaurentPoly::monomial(1, Rat(1)));      // e_j -> e_{j+1}
  HardyOp coshift(LaurentPoly::monomial(-1, Rat(1)));   // e_j -> e_{j-1}
  HardyOp left = coshift * shift;
  CHECK(left == HardyOp::identity());
  HardyOp right = shift * coshift;
  CHECK(right == HardyOp::identity() - HardyOp::basis_projection(1));
  CHECK((HardyOp::identity() - right).trace() == Rat(1));
}

TEST_CASE("operator products match deep finite sections") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    HardyOp x = random_op(rng);
    HardyOp y = random_op(rng);
    HardyOp xy = x * y;
    int k = 6, pad = 16;
    // interior entries of the product agree with a padded finite section
    CHECK(top_left(xy.truncate(k + pad), k) ==
          top_left(x.truncate(k + pad) * y.truncate(k + pad), k));
    // associativity in the operator algebra itself
    HardyOp z = random_op(rng);
    CHECK((x * y) * z == x * (y * z));
    CHECK((x + y) * z == x * z + y * z);
  }
}

TEST_CASE("monomial models: remainders are corner projections") {
  for (int w = -3; w <= 3; ++w) {
    auto model = make_operator_model(mono(w), 8, ScalarKind::rational);
    auto data = hardy_connecting(model);
    CHECK(data.S0.is_smoothing());
    CHECK(data.S1.is_smoothing());
    if (w > 0) {
      CHECK(data.S0 == HardyOp::basis_projection(w));
      CHECK(data.S1.is_zero());
    } else if (w < 0) {
      CHECK(data.S0.is_zero());
      CHECK(data.S1 == HardyOp::basis_projection(-w));
    } else {
      CHECK(data.S0.is_zero());
      CHECK(data.S1.is_zero());
    }
    CHECK(residue_trace(data) == Rat(BigRat(w)));
    // block trace of R agrees with the remainder formula
    Rat block_trace = data.R.a.trace() + data.R.d.trace();
    CHECK(block_trace == Rat(BigRat(w)));
  }
  // the scalar in front of the monomial does not move the trace
  auto scaled = make_operator_model(mono(2, 3, 2), 8, ScalarKind::rational);
  CHECK(residue_trace(hardy_connecting(scaled)) == Rat(2));
}

TEST_CASE("finite sections: unit determinant and vanishing trace") {
  for (int w = -3; w <= 3; ++w) {
    auto model = make_operator_model(mono(w), 8, ScalarKind::rational);
    auto diag = finite_section_diagnostics(model);
    CHECK(diag.det_L == Rat(1));
    CHECK(diag.trace_P == Rat(8));
    CHECK(diag.trace_R == Rat(0));  // square cutoffs cannot see the winding
  }
}

TEST_CASE("rectangular index oracle") {
  for (int w = -3; w <= 3; ++w) {
    CHECK(rect_shift_index(w, 8) == w);
    auto model = make_operator_model(mono(w), 8, ScalarKind::rational);
    CHECK(Rat(BigRat(rect_shift_index(w, 8))) ==
          residue_trace(hardy_connecting(model)));
  }
  CHECK_THROWS_AS(rect_shift_index(4, 8), Error);

  // the w = +1 rectangle is the full-rank map from K+1 space to K space
  Mat<Rat> m = Mat<Rat>::zero(4, 5);
  for (int i = 0; i < 4; ++i) m.at(i, i + 1) = Rat(1);
  CHECK(fredholm_index_of(m) == 1);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(make_operator_model(LaurentPoly::zero(), 8,
                                      ScalarKind::rational),
                  Error);
  // bandwidth 3 needs K > 6
  CHECK_THROWS_AS(make_operator_model(mono(3), 6, ScalarKind::rational),
                  Error);
  // multi-term symbols have no exact parametrix
  LaurentPoly multi = mono(1) + mono(0, 3);
  CHECK_THROWS_AS(make_operator_model(multi, 16, ScalarKind::rational),
                  Error);
  // float path accepts them but refuses the exact residue trace
  auto fmodel = make_operator_model(multi, 16, ScalarKind::floating);
  CHECK_FALSE(fmodel.exact_parametrix);
  auto fdata = hardy_connecting(fmodel);
  CHECK_THROWS_AS(residue_trace(fdata), Error);
  // a symbol vanishing on the circle is rejected outright
  LaurentPoly vanishing = mono(1) + mono(0, -1);  // z - 1
  CHECK_THROWS_AS(make_operator_model(vanishing, 16, ScalarKind::floating),
                  Error);
}

TEST_CASE("position kernels preserve traces exactly") {
  auto ctx = CycloContext::for_circle(8);
  Mat<Rat> proj1 = Mat<Rat>::identity(1);
  auto k1 = corner_to_position_kernel(proj1, 8, ctx);
  // rank-one projection spreads to the constant kernel 1/8
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      CHECK(k1.at(x, y) == Cyclo::from_rat(ctx, Rat(BigRat(1, 8))));
  Cyclo tr = Cyclo::zero();
  for (int x = 0; x < 8; ++x) tr += k1.at(x, x);
  CHECK(tr.as_bigrat() == BigRat(1));

  Mat<Rat> proj2 = Mat<Rat>::identity(2);
  auto k2 = corner_to_position_kernel(proj2, 8, ctx);
  Cyclo tr2 = Cyclo::zero();
  for (int x = 0; x < 8; ++x) tr2 += k2.at(x, x);
  CHECK(tr2.as_bigrat() == BigRat(2));

  auto f2 = corner_to_position_kernel_float(proj2, 8);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y)
      CHECK(std::abs(f2.at(x, y) - k2.at(x, y).to_complex()) < 1e-12);

  CHECK_THROWS_AS(corner_to_position_kernel(Mat<Rat>::identity(9), 8, ctx),
                  Error);
}
