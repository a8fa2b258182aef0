#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "locind/errors.hpp"
#include "locind/index_pairing.hpp"

using namespace locind;

namespace {

OperatorModel monomial_model(int w, ScalarKind kind = ScalarKind::rational,
                             int K = 8, Rat c = Rat(1)) {
  return make_operator_model(LaurentPoly::monomial(w, c), K, kind);
}

// sparse random cochain on arbitrary tuples of the space
ASCochain<Rat> random_cochain(const FinitePointSpace& space, int degree,
                              int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> point(0, space.n_points - 1);
  std::uniform_int_distribution<int> numer(-9, 9);
  std::uniform_int_distribution<int> denom(1, 4);
  ASCochain<Rat> f;
  f.degree = degree;
  for (int t = 0; t < terms; ++t) {
    std::vector<int> tuple(size_t(degree) + 1);
    for (auto& x : tuple) x = point(rng);
    int nu = numer(rng);
    if (nu == 0) nu = 1;
    BigRat c(nu, denom(rng));
    c.canonicalize();
    f.add(tuple, Rat(c));
  }
  f.prune_zeros();
  return f;
}

Cyclo rat_value(const std::shared_ptr<const CycloContext>& ctx, long v) {
  return Cyclo::from_rat(ctx, Rat(v));
}

AlgElem<Rat> random_kernel_elem(const AlgPtr& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3);
  AlgElem<Rat> v = AlgElem<Rat>::zero(alg);
  for (auto& blk : v.blocks)
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) blk.at(i, j) = Rat(num(rng));
  return v;
}

TensorChain<Rat> random_kernel_chain(const AlgPtr& alg, int degree, int terms,
                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-2, 2);
  TensorChain<Rat> c = TensorChain<Rat>::zero(alg, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<AlgElem<Rat>> f;
    for (int i = 0; i <= degree; ++i) f.push_back(random_kernel_elem(alg, rng));
    c.add_term(Rat(num(rng)), std::move(f));
  }
  return c;
}

}  // namespace

TEST_CASE("degree-zero pairing against the constant cochain is the trace") {
  for (int w = -3; w <= 3; ++w) {
    auto model = monomial_model(w);
    auto R = remainder_position_kernel(model);
    auto phi = constant_cochain(*R.space, 0);
    Cyclo tau = tau_pairing(R, R.space, phi, 0);
    CHECK(tau == rat_value(R.ctx, w));

    Rat rt = residue_trace(hardy_connecting(model));
    CHECK(tau == Cyclo::from_rat(R.ctx, rt));
    CHECK(rect_shift_index(w, model.K) == w);
  }

  // symbol coefficient does not move the trace
  auto scaled = monomial_model(2, ScalarKind::rational, 8, Rat::of(5, 3));
  auto R = remainder_position_kernel(scaled);
  CHECK(tau_pairing(R, R.space, constant_cochain(*R.space, 0), 0) ==
        rat_value(R.ctx, 2));
}

TEST_CASE("degree-zero pairing, float route") {
  for (int w : {-2, 1, 3}) {
    auto model = monomial_model(w, ScalarKind::floating);
    auto R = remainder_position_kernel_float(model);
    Cplx tau = tau_pairing(R, R.space, constant_cochain(*R.space, 0), 0);
    CHECK(std::abs(tau - Cplx(double(w), 0.0)) <= 1e-9);
  }
}

TEST_CASE("zero kernel pairs to zero for every cochain") {
  auto model = monomial_model(0);  // u = 1: exact parametrix, zero remainder
  auto R = remainder_position_kernel(model);
  CHECK(R.m.is_zero());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    auto phi = random_cochain(*R.space, 2, 6, rng);
    CHECK(tau_pairing(R, R.space, phi, 2).is_zero());
  }
}

TEST_CASE("pairing is linear in the cochain") {
  auto R = remainder_position_kernel(monomial_model(1));
  std::mt19937_64 rng(12);
  Rat a = Rat::of(3, 2), b = Rat(-2);
  for (int t = 0; t < 4; ++t) {
    auto f = random_cochain(*R.space, 2, 5, rng);
    auto g = random_cochain(*R.space, 2, 5, rng);
    ASCochain<Rat> mix;
    mix.degree = 2;
    for (const auto& [tuple, v] : f.coeffs) mix.add(tuple, a * v);
    for (const auto& [tuple, v] : g.coeffs) mix.add(tuple, b * v);
    Cyclo lhs = tau_pairing(R, R.space, mix, 2);
    Cyclo rhs = Cyclo::from_rat(R.ctx, a) * tau_pairing(R, R.space, f, 2) +
                Cyclo::from_rat(R.ctx, b) * tau_pairing(R, R.space, g, 2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pairing rejects bad degrees, spaces, and tuples") {
  auto R = remainder_position_kernel(monomial_model(1));
  auto phi0 = constant_cochain(*R.space, 0);

  ASCochain<Rat> odd = ASCochain<Rat>::indicator(1, {0, 1}, Rat(1));
  CHECK_THROWS_AS(tau_pairing(R, R.space, odd, 1), Error);
  try {
    tau_pairing(R, R.space, odd, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
  }

  CHECK_THROWS_AS(tau_pairing(R, R.space, phi0, 2), Error);  // degree mismatch

  auto other = circle_space(6);
  CHECK_THROWS_AS(tau_pairing(R, other, phi0, 0), Error);  // space mismatch

  ASCochain<Rat> out_of_range = ASCochain<Rat>::indicator(0, {9}, Rat(1));
  CHECK_THROWS_AS(tau_pairing(R, R.space, out_of_range, 0), Error);

  PositionKernel<Cyclo> bad;
  bad.space = R.space;
  bad.fiber = 2;
  bad.ctx = R.ctx;
  bad.m = Mat<Cyclo>(5, 5);
  CHECK_THROWS_AS(tau_pairing(bad, bad.space, phi0, 0), Error);
}

TEST_CASE("cycle property: coboundaries pair to exactly zero") {
  // shift by one, the acceptance-scale configuration
  auto R = remainder_position_kernel(monomial_model(1));
  auto rep = as_cycle_check(R, 2, 50, 1);
  CHECK(rep.exact_zero);
  CHECK(rep.max_abs == 0.0);
  CHECK(rep.q == 2);
  CHECK(rep.trials == 50);

  // other windings, fewer trials
  for (int w : {-1, 2}) {
    auto r = as_cycle_check(remainder_position_kernel(monomial_model(w)), 2,
                            10, 7);
    CHECK(r.exact_zero);
  }

  // degree 4 spot check
  auto deep = as_cycle_check(R, 4, 3, 5);
  CHECK(deep.exact_zero);

  CHECK_THROWS_AS(as_cycle_check(R, 3, 5, 1), Error);
  CHECK_THROWS_AS(as_cycle_check(R, 0, 5, 1), Error);
}

TEST_CASE("cycle property holds to rounding in float mode") {
  auto R = remainder_position_kernel_float(monomial_model(1, ScalarKind::floating));
  auto rep = as_cycle_check(R, 2, 20, 1);
  CHECK(rep.max_abs <= 1e-9);
}

TEST_CASE("kernels without off-diagonal reach pair coboundaries to zero") {
  PositionKernel<Cyclo> k;
  k.space = circle_space(8);
  k.fiber = 1;
  k.ctx = CycloContext::for_circle(8);
  k.m = Mat<Cyclo>(8, 8);
  for (int x = 0; x < 8; ++x)
    k.m.at(x, x) = Cyclo::zeta(k.ctx, x) + rat_value(k.ctx, x - 3);
  auto rep = as_cycle_check(k, 2, 10, 2);
  CHECK(rep.exact_zero);
}

TEST_CASE("diagonal restriction at degree zero sums the kernel diagonal") {
  auto space = circle_space(5);
  auto alg = FiniteAlgebra::kernel_algebra(space, 1);
  std::mt19937_64 rng(21);
  auto f = random_kernel_elem(alg, rng);
  TensorChain<Rat> c = TensorChain<Rat>::zero(alg, 0);
  Rat coeff = Rat::of(7, 2);
  c.add_term(coeff, {f});

  auto functional = restrict_to_diagonal(c);
  auto phi = random_cochain(*space, 0, 4, rng);
  Rat expect;
  for (const auto& [tuple, v] : phi.coeffs)
    expect += coeff * f.blocks[0].at(tuple[0], tuple[0]) * v;
  CHECK(functional.apply(phi) == expect);

  // degree mismatch at application time
  CHECK_THROWS_AS(functional.apply(constant_cochain(*space, 1)), Error);

  // the zero chain is the zero functional
  auto zero = restrict_to_diagonal(TensorChain<Rat>::zero(alg, 2));
  CHECK(zero.apply(constant_cochain(*space, 2)).is_zero());
  CHECK(zero.apply_constant().is_zero());
}

TEST_CASE("constant-cochain restriction equals the full-matrix trace") {
  auto space = circle_space(4);
  auto alg = FiniteAlgebra::kernel_algebra(space, 2);
  std::mt19937_64 rng(22);
  auto c = random_kernel_chain(alg, 2, 3, rng);
  auto functional = restrict_to_diagonal(c);
  CHECK(functional.apply(constant_cochain(*space, 2)) ==
        functional.apply_constant());
}

TEST_CASE("separable normal form leaves the diagonal restriction unchanged") {
  auto space = circle_space(4);
  auto alg = FiniteAlgebra::kernel_algebra(space, 2);
  int n = space->n_points;
  std::vector<std::vector<char>> side(1, std::vector<char>(size_t(2 * n), 0));
  for (int x = 0; x < n; ++x) side[0][size_t(n + x)] = 1;
  auto e = AlgElem<Rat>::diagonal_idempotent(alg, side);
  auto ctx = SeparableContext<Rat>::make(e, AlgElem<Rat>::one(alg));

  std::mt19937_64 rng(23);
  for (int t = 0; t < 3; ++t) {
    auto c = random_kernel_chain(alg, 2, 2, rng);
    auto nf = s_normal_form(c, ctx);
    auto phi = random_cochain(*space, 2, 6, rng);
    CHECK(restrict_to_diagonal(nf).apply(phi) ==
          restrict_to_diagonal(c).apply(phi));
    CHECK(restrict_to_diagonal(nf).apply_constant() ==
          restrict_to_diagonal(c).apply_constant());
  }
}

TEST_CASE("cyclic-level and pairing-level residue routes agree") {
  for (int w : {1, -2}) {
    auto model = monomial_model(w);
    auto R = remainder_position_kernel(model);
    auto alg = FiniteAlgebra::kernel_algebra(R.space, 2);
    auto Rm = AlgMat<Cyclo>::from_elem(kernel_algebra_element(R, alg));
    auto sep = position_separable_context(R, alg);

    std::mt19937_64 rng(31);
    for (int q = 0; q <= 1; ++q) {
      auto functional = restrict_to_diagonal(chern_residue(Rm, sep, q));
      auto phi = random_cochain(*R.space, 2 * q, 5, rng);
      // 1/q! = 1 in this range; the normalization is inside the chain
      CHECK(functional.apply(phi) == tau_pairing(R, R.space, phi, 2 * q));
      CHECK(functional.apply_constant() ==
            tau_pairing(R, R.space, constant_cochain(*R.space, 2 * q), 2 * q));
    }
  }

  // q = 2 carries the 1/2! normalization; check against the kernel power
  auto R = remainder_position_kernel(monomial_model(1));
  auto alg = FiniteAlgebra::kernel_algebra(R.space, 2);
  auto Rm = AlgMat<Cyclo>::from_elem(kernel_algebra_element(R, alg));
  auto sep = position_separable_context(R, alg);
  Mat<Cyclo> p5 = R.m * R.m * R.m * R.m * R.m;
  CHECK(restrict_to_diagonal(chern_residue(Rm, sep, 2)).apply_constant() ==
        p5.trace().scaled(BigRat(1, 2)));
}

TEST_CASE("pairing is invariant under simultaneous relabeling") {
  auto R = remainder_position_kernel(monomial_model(1));
  int n = R.space->n_points;
  std::mt19937_64 rng(41);
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);

  PositionKernel<Cyclo> moved;
  moved.space = R.space;
  moved.fiber = R.fiber;
  moved.ctx = R.ctx;
  moved.m = Mat<Cyclo>(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          moved.m.at(a * n + perm[size_t(x)], b * n + perm[size_t(y)]) =
              R.m.at(a * n + x, b * n + y);

  for (int t = 0; t < 4; ++t) {
    auto phi = random_cochain(*R.space, 2, 6, rng);
    ASCochain<Rat> phi_moved;
    phi_moved.degree = 2;
    for (const auto& [tuple, v] : phi.coeffs) {
      std::vector<int> mapped(tuple.size());
      for (size_t i = 0; i < tuple.size(); ++i)
        mapped[i] = perm[size_t(tuple[i])];
      phi_moved.add(mapped, v);
    }
    CHECK(tau_pairing(moved, moved.space, phi_moved, 2) ==
          tau_pairing(R, R.space, phi, 2));
  }
}

TEST_CASE("index reports: shift models against the constant cochain") {
  auto space = circle_space(8);
  auto phi = constant_cochain(*space, 0);

  auto rep = index_class(monomial_model(1), phi);
  CHECK(rep.tau_value == "1");
  CHECK(rep.oracle_index == 1);
  CHECK(rep.classical_index == -1);
  CHECK(rep.tau_equals_oracle);
  CHECK(rep.tau_equals_residue_trace);
  CHECK(rep.residue_trace_value == "1");
  CHECK_FALSE(rep.phi_was_antisymmetrized);
  CHECK(rep.q == 0);
  CHECK(rep.measure == "counting");
  CHECK(rep.support_mode == "sum");
  CHECK_FALSE(rep.phi_support.infinite);
  CHECK(rep.phi_support.value == 0);
  // transported kernels are dense: the locality bound fails and is flagged
  CHECK_FALSE(rep.support_compatible);

  CHECK(index_class(monomial_model(2), phi).tau_value == "2");
  CHECK(index_class(monomial_model(2), phi).oracle_index == 2);
  CHECK(index_class(monomial_model(-1), phi).tau_value == "-1");

  auto trivial = index_class(monomial_model(0), phi);
  CHECK(trivial.tau_value == "0");
  CHECK(trivial.oracle_index == 0);
  CHECK(trivial.classical_index == 0);
  CHECK(trivial.tau_equals_oracle);

  ASCochain<Rat> odd = ASCochain<Rat>::indicator(1, {0, 1}, Rat(1));
  CHECK_THROWS_AS(index_class(monomial_model(1), odd), Error);
}

TEST_CASE("index reports: non-antisymmetric input is projected and flagged") {
  auto model = monomial_model(1);
  ASCochain<Rat> phi = ASCochain<Rat>::indicator(2, {0, 1, 2}, Rat(1));
  auto rep = index_class(model, phi);
  CHECK(rep.phi_was_antisymmetrized);
  CHECK(rep.q == 2);

  // already antisymmetric input passes through unflagged
  auto anti = antisymmetrize(phi);
  auto rep2 = index_class(model, anti);
  CHECK_FALSE(rep2.phi_was_antisymmetrized);
  CHECK(rep2.tau_value == rep.tau_value);
}

TEST_CASE("index reports in float mode") {
  auto rep = index_class(monomial_model(1, ScalarKind::floating),
                         constant_cochain(*circle_space(8), 0));
  CHECK(rep.kind == ScalarKind::floating);
  CHECK(rep.tau_equals_oracle);
  CHECK(rep.tau_equals_residue_trace);
  CHECK(rep.oracle_index == 1);
}

TEST_CASE("conjecture probe: q = 0 trace identities and labeled columns") {
  auto rep = conjecture_probe(monomial_model(1), 1);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.label.find("conjecture probe") != std::string::npos);
  CHECK(rep.rows[0].q == 0);
  CHECK(rep.rows[0].q0_equal);
  CHECK(rep.rows[0].sigma_winding == "1");
  CHECK(rep.rows[0].residue_tau == "1");
  CHECK(rep.rows[0].residue_chain == "1");
  CHECK(rep.rows[0].sigma_chain.empty());
  // tr(R^3) stays at the winding; the symbol-side chain does not match it,
  // which is exactly what the probe records without asserting
  CHECK(rep.rows[1].residue_tau == "1");
  CHECK(rep.rows[1].residue_chain == "1");
  CHECK(rep.rows[1].sigma_chain == "16");

  auto flat = conjecture_probe(monomial_model(0), 1);
  CHECK(flat.rows[0].q0_equal);
  CHECK(flat.rows[0].residue_tau == "0");
  CHECK(flat.rows[1].residue_chain == "0");
  CHECK(flat.rows[1].sigma_chain == "0");

  auto doub = conjecture_probe(monomial_model(2), 0);
  CHECK(doub.rows[0].q0_equal);
  CHECK(doub.rows[0].residue_tau == "2");

  CHECK_THROWS_AS(conjecture_probe(monomial_model(1, ScalarKind::floating), 0),
                  Error);
  CHECK_THROWS_AS(conjecture_probe(monomial_model(1), 4), Error);
  CHECK_THROWS_AS(conjecture_probe(monomial_model(1), -1), Error);
}

TEST_CASE("constant cochain size and budget refusal") {
  CHECK(constant_cochain(*circle_space(8), 2).coeffs.size() == 512);
  try {
    constant_cochain(*circle_space(8), 8);
    FAIL("expected a budget refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::budget);
    CHECK(std::string(e.what()).find("134217728") != std::string::npos);
  }
}

TEST_CASE("approximate parametrices cannot be transported") {
  LaurentPoly sym;
  sym.coeffs[0] = Rat(4);
  sym.coeffs[1] = Rat(1);
  auto model = make_operator_model(sym, 16, ScalarKind::floating);
  CHECK_THROWS_AS(remainder_position_kernel_float(model), Error);
  CHECK_THROWS_AS(conjecture_probe(model, 0), Error);
}
