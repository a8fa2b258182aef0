#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "locind/homology.hpp"
#include "locind/operator_model.hpp"
#include "locind/tensor_chain.hpp"

using namespace locind;

namespace {

AlgElem<Rat> random_elem(const AlgPtr& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  AlgElem<Rat> v = AlgElem<Rat>::zero(alg);
  for (auto& blk : v.blocks)
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) blk.at(i, j) = Rat(num(rng));
  return v;
}

TensorChain<Rat> random_chain(const AlgPtr& alg, int degree, int terms,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3);
  TensorChain<Rat> c = TensorChain<Rat>::zero(alg, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<AlgElem<Rat>> f;
    for (int i = 0; i <= degree; ++i) f.push_back(random_elem(alg, rng));
    c.add_term(Rat(num(rng)), std::move(f));
  }
  return c;
}

std::vector<int> hochschild_of(const AlgPtr& alg, int hi) {
  HomologyOptions opt;
  opt.variant = HomologyVariant::hochschild;
  opt.degree_hi = hi;
  return homology_ranks(alg, opt).ranks;
}

}  // namespace

TEST_CASE("algebra elements: arithmetic, trace, propagation") {
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  auto one = AlgElem<Rat>::one(m2);
  auto u01 = AlgElem<Rat>::unit(m2, {0, 0, 1}, Rat(1));
  auto u10 = AlgElem<Rat>::unit(m2, {0, 1, 0}, Rat(1));
  CHECK((u01 * u10).trace() == Rat(1));
  CHECK((u10 * u01).trace() == Rat(1));
  CHECK((u01 * u01).is_zero());
  CHECK(u01 * one == u01);
  CHECK(one * u01 == u01);
  CHECK(u01.nnz() == 1);
  CHECK_THROWS_AS(u01.propagation(), Error);  // no space attached

  auto tri = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto ker = FiniteAlgebra::kernel_algebra(tri, 1);
  CHECK(ker->element_dim() == 9);
  auto k01 = AlgElem<Rat>::unit(ker, {0, 0, 1}, Rat(1));
  CHECK(k01.propagation() == Radius::finite(BigRat(1)));
  CHECK(AlgElem<Rat>::one(ker).propagation() == Radius::finite(BigRat(0)));

  // fiber-major layout: the point of an index survives matrix_over
  auto ker2 = FiniteAlgebra::matrix_over(ker, 2);
  CHECK(ker2->block_size(0) == 6);
  CHECK(ker2->point_of(4) == 1);
  auto w = AlgElem<Rat>::unit(ker2, {0, 0, 4}, Rat(1));
  CHECK(w.propagation() == Radius::finite(BigRat(1)));

  auto sum = FiniteAlgebra::two_scalars();
  CHECK(sum->block_count() == 2);
  CHECK(AlgElem<Rat>::one(sum).trace() == Rat(2));
}

TEST_CASE("boundary operators square to zero and are rotation compatible") {
  std::mt19937_64 rng(2024);
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  auto cc = FiniteAlgebra::two_scalars();
  for (int trial = 0; trial < 12; ++trial) {
    const AlgPtr& alg = trial % 2 ? m2 : cc;
    int degree = 2 + int(rng() % 3);  // 2..4
    TensorChain<Rat> c = random_chain(alg, degree, 3, rng);
    CHECK(hochschild_b(hochschild_b(c)).is_zero());
    CHECK(bar_bprime(bar_bprime(c)).is_zero());

    // bar boundary of the rotation-averaged chain equals the averaged full
    // boundary: b' N = N b with N = (degree+1) * the averaging projection
    TensorChain<Rat> lhs =
        bar_bprime(cyclic_symmetrize(c).scaled_rat(BigRat(degree + 1)));
    TensorChain<Rat> rhs =
        cyclic_symmetrize(hochschild_b(c)).scaled_rat(BigRat(degree));
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("cyclic symmetrization: projection onto signed-rotation invariants") {
  std::mt19937_64 rng(77);
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  for (int trial = 0; trial < 8; ++trial) {
    int degree = 1 + int(rng() % 4);
    TensorChain<Rat> c = random_chain(m2, degree, 2, rng);
    TensorChain<Rat> sym = cyclic_symmetrize(c);
    CHECK((lambda_rotate(sym) - sym).is_zero());              // invariance
    CHECK((cyclic_symmetrize(sym) - sym).is_zero());          // idempotent
    // the bar boundary of an invariant chain stays invariant
    TensorChain<Rat> bs = bar_bprime(sym);
    CHECK((lambda_rotate(bs) - bs).is_zero());
  }
  // odd-degree rotation has sign -1, so symmetric tensors average away
  auto f = random_elem(m2, rng);
  TensorChain<Rat> ff = TensorChain<Rat>::zero(m2, 1);
  ff.add_term(Rat(1), {f, f});
  CHECK(cyclic_symmetrize(ff).is_zero());
}

TEST_CASE("hochschild ranks collapse matrix factors") {
  CHECK(hochschild_of(FiniteAlgebra::scalars(), 2) ==
        std::vector<int>{1, 0, 0});
  CHECK(hochschild_of(FiniteAlgebra::two_scalars(), 2) ==
        std::vector<int>{2, 0, 0});
  CHECK(hochschild_of(FiniteAlgebra::matrix_algebra(2), 2) ==
        std::vector<int>{1, 0, 0});
  CHECK(hochschild_of(
            FiniteAlgebra::matrix_over(FiniteAlgebra::two_scalars(), 2), 2) ==
        std::vector<int>{2, 0, 0});
}

TEST_CASE("cyclic ranks of the scalars alternate") {
  for (HomologyVariant v :
       {HomologyVariant::cyclic_bprime, HomologyVariant::cyclic_quotient}) {
    HomologyOptions opt;
    opt.variant = v;
    opt.degree_hi = 2;
    HomologyResult r = homology_ranks(FiniteAlgebra::scalars(), opt);
    CHECK(r.ranks == std::vector<int>{1, 0, 1});
    CHECK(r.dims == std::vector<long>{1, 0, 1});  // odd orbits die
  }
}

TEST_CASE("the two cyclic presentations agree") {
  for (const AlgPtr& alg :
       {FiniteAlgebra::matrix_algebra(2), FiniteAlgebra::two_scalars()}) {
    HomologyOptions opt;
    opt.degree_hi = 3;
    opt.variant = HomologyVariant::cyclic_bprime;
    HomologyResult a = homology_ranks(alg, opt);
    opt.variant = HomologyVariant::cyclic_quotient;
    HomologyResult b = homology_ranks(alg, opt);
    CHECK(a.dims == b.dims);
    CHECK(a.ranks == b.ranks);
  }
}

TEST_CASE("tensor basis budget refusal names the dimension count") {
  HomologyOptions opt;
  opt.variant = HomologyVariant::hochschild;
  opt.degree_hi = 4;
  try {
    homology_ranks(FiniteAlgebra::matrix_algebra(5), opt);
    FAIL("budget refusal expected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::budget);
    CHECK(std::string(e.what()).find("9765625") != std::string::npos);
  }
}

TEST_CASE("even chains of idempotents are closed") {
  auto sc = FiniteAlgebra::scalars();
  // a nontrivial rational idempotent matrix
  AlgMat<Rat> p = AlgMat<Rat>::zero(sc, 2);
  p.at(0, 0) = AlgElem<Rat>::unit(sc, {0, 0, 0}, Rat(3));
  p.at(0, 1) = AlgElem<Rat>::unit(sc, {0, 0, 0}, Rat(-6));
  p.at(1, 0) = AlgElem<Rat>::unit(sc, {0, 0, 0}, Rat(1));
  p.at(1, 1) = AlgElem<Rat>::unit(sc, {0, 0, 0}, Rat(-2));
  REQUIRE(p.is_idempotent());

  // degree 0: the trace
  TensorChain<Rat> ch0 = chern_even(p, 0);
  auto coords = ch0.expand_coordinates();
  REQUIRE(coords.size() == 1);
  CHECK(coords.begin()->second == Rat(1));  // tr p = 3 - 2 = 1

  for (int q : {1, 2}) {
    TensorChain<Rat> ch = chern_even(p, q);
    CHECK(bar_bprime(ch).is_zero());
    CHECK(cyclic_symmetrize(hochschild_b(ch)).is_zero());
    CHECK((lambda_rotate(ch) - ch).is_zero());  // the chain itself is cyclic
  }

  // the same data as a matrix inside M_2 rather than over the scalars
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  AlgElem<Rat> pe = AlgElem<Rat>::zero(m2);
  pe.blocks[0].at(0, 0) = Rat(3);
  pe.blocks[0].at(0, 1) = Rat(-6);
  pe.blocks[0].at(1, 0) = Rat(1);
  pe.blocks[0].at(1, 1) = Rat(-2);
  AlgMat<Rat> pm = AlgMat<Rat>::from_elem(pe);
  REQUIRE(pm.is_idempotent());
  for (int q : {1, 2}) {
    TensorChain<Rat> ch = chern_even(pm, q);
    CHECK(bar_bprime(ch).is_zero());
    CHECK(cyclic_symmetrize(hochschild_b(ch)).is_zero());
  }

  AlgMat<Rat> bad = AlgMat<Rat>::one(sc, 2);
  bad.at(0, 1) = AlgElem<Rat>::unit(sc, {0, 0, 0}, Rat(1));
  CHECK_THROWS_AS(chern_even(bad, 1), Error);
}

TEST_CASE("odd chains of invertibles are closed") {
  auto sc = FiniteAlgebra::scalars();
  auto scalar = [&](long num, long den) {
    return AlgElem<Rat>::unit(sc, {0, 0, 0}, Rat::of(num, den));
  };

  // 1x1 example: u = 2 gives the single tensor (-1/2) (x) 1
  AlgMat<Rat> two = AlgMat<Rat>::zero(sc, 1);
  two.at(0, 0) = scalar(2, 1);
  TensorChain<Rat> ch = chern_odd(two, 1);
  auto coords = ch.expand_coordinates();
  REQUIRE(coords.size() == 1);
  CHECK(coords.begin()->second == Rat::of(-1, 2));

  // u = 1 has no reduced content at all
  CHECK(chern_odd(AlgMat<Rat>::one(sc, 1), 1).is_zero());

  AlgMat<Rat> u = AlgMat<Rat>::one(sc, 2);
  u.at(0, 1) = scalar(1, 1);
  AlgMat<Rat> uinv = u.inverse();
  CHECK(uinv * u == AlgMat<Rat>::one(sc, 2));
  for (int q : {1, 2}) {
    TensorChain<Rat> chq = chern_odd(u, q);
    CHECK(cyclic_symmetrize(hochschild_b(chq)).is_zero());
    CHECK((lambda_rotate(chq) - chq).is_zero());
  }

  AlgMat<Rat> sing = AlgMat<Rat>::zero(sc, 2);
  sing.at(0, 0) = scalar(1, 1);
  CHECK_THROWS_AS(chern_odd(sing, 1), Error);
  CHECK_THROWS_AS(chern_odd(u, 0), Error);
}

TEST_CASE("separable normal form: projection identities") {
  std::mt19937_64 rng(4096);
  auto m2 = FiniteAlgebra::matrix_algebra(2);
  auto e = AlgElem<Rat>::diagonal_idempotent(m2, {{1, 0}});
  auto ctx = SeparableContext<Rat>::make(e, AlgElem<Rat>::one(m2));

  for (int trial = 0; trial < 6; ++trial) {
    int degree = 1 + int(rng() % 3);
    TensorChain<Rat> c = random_chain(m2, degree, 2, rng);
    TensorChain<Rat> nf = s_normal_form(c, ctx);
    CHECK((s_normal_form(nf, ctx) - nf).is_zero());  // idempotent

    // the idempotent slides across tensor slots, including the wrap-around
    auto x = random_elem(m2, rng);
    auto y = random_elem(m2, rng);
    TensorChain<Rat> inner = TensorChain<Rat>::zero(m2, 1);
    inner.add_term(Rat(1), {x * e, y});
    inner.add_term(Rat(-1), {x, e * y});
    CHECK(s_normal_form(inner, ctx).is_zero());
    TensorChain<Rat> wrap = TensorChain<Rat>::zero(m2, 1);
    wrap.add_term(Rat(1), {e * x, y});
    wrap.add_term(Rat(-1), {x, y * e});
    CHECK(s_normal_form(wrap, ctx).is_zero());
  }

  // unit tensors either survive verbatim or vanish, by junction parity
  auto u01 = AlgElem<Rat>::unit(m2, {0, 0, 1}, Rat(1));
  auto u10 = AlgElem<Rat>::unit(m2, {0, 1, 0}, Rat(1));
  auto u00 = AlgElem<Rat>::unit(m2, {0, 0, 0}, Rat(1));
  TensorChain<Rat> good = TensorChain<Rat>::zero(m2, 1);
  good.add_term(Rat(1), {u01, u10});
  TensorChain<Rat> nfg = s_normal_form(good, ctx);
  CHECK((nfg - good).is_zero());
  TensorChain<Rat> badt = TensorChain<Rat>::zero(m2, 1);
  badt.add_term(Rat(1), {u00, u01});
  CHECK(s_normal_form(badt, ctx).is_zero());

  // a non-idempotent context is refused
  auto n = AlgElem<Rat>::unit(m2, {0, 0, 1}, Rat(1));
  CHECK_THROWS_AS(SeparableContext<Rat>::make(n, AlgElem<Rat>::one(m2)),
                  Error);
}

TEST_CASE("residue chains: the quadratic identity kills the bar boundary") {
  std::mt19937_64 rng(515);
  auto m4 = FiniteAlgebra::matrix_algebra(4);
  std::uniform_int_distribution<long> num(-3, 3);

  for (int trial = 0; trial < 4; ++trial) {
    // generic remainder data from the connecting construction over 2x2 blocks
    Mat<Rat> A(2, 2), B(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        A.at(i, j) = Rat(num(rng));
        B.at(i, j) = Rat(num(rng));
      }
    auto data = connecting_construction<Mat<Rat>>(A, B, Mat<Rat>::identity(2),
                                                  Mat<Rat>::zero(2, 2));
    AlgElem<Rat> R = AlgElem<Rat>::zero(m4);
    AlgElem<Rat> e = AlgElem<Rat>::diagonal_idempotent(m4, {{0, 0, 1, 1}});
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        R.blocks[0].at(i, j) = data.R.a.at(i, j);
        R.blocks[0].at(i, j + 2) = data.R.b.at(i, j);
        R.blocks[0].at(i + 2, j) = data.R.c.at(i, j);
        R.blocks[0].at(i + 2, j + 2) = data.R.d.at(i, j);
      }
    auto ctx = SeparableContext<Rat>::make(e, AlgElem<Rat>::one(m4));
    REQUIRE(R * R == R - (e * R + R * e));

    AlgMat<Rat> Rm = AlgMat<Rat>::from_elem(R);
    for (int q = 1; q <= (trial == 0 ? 2 : 1); ++q) {
      TensorChain<Rat> ch = chern_residue(Rm, ctx, q);
      // the bar boundary reduces to zero in normal form ...
      CHECK(s_normal_form(bar_bprime(ch), ctx).is_zero(80'000'000));
      // ... and so does the rotation-averaged full boundary
      CHECK(s_normal_form(cyclic_symmetrize(hochschild_b(ch)), ctx)
                .is_zero(80'000'000));
    }

    // keep the test honest: generically eR != 0, so the reduction is not a
    // triviality, and the raw unaveraged boundary does survive normal form
    if (!(e * R).is_zero()) {
      TensorChain<Rat> raw =
          s_normal_form(hochschild_b(chern_residue(Rm, ctx, 1)), ctx);
      CHECK(!raw.is_zero());
    }
  }

  // a matrix violating the quadratic identity is refused
  AlgMat<Rat> bad = AlgMat<Rat>::from_elem(AlgElem<Rat>::one(m4));
  auto e = AlgElem<Rat>::diagonal_idempotent(m4, {{0, 0, 1, 1}});
  auto ctx = SeparableContext<Rat>::make(e, AlgElem<Rat>::one(m4));
  CHECK_THROWS_AS(chern_residue(bad, ctx, 1), Error);
}

TEST_CASE("chain support radii over a kernel algebra") {
  auto tri = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto ker = FiniteAlgebra::kernel_algebra(tri, 1);
  auto k01 = AlgElem<Rat>::unit(ker, {0, 0, 1}, Rat(1));
  auto k12 = AlgElem<Rat>::unit(ker, {0, 1, 2}, Rat(1));
  auto kd = AlgElem<Rat>::unit(ker, {0, 2, 2}, Rat(1));

  TensorChain<Rat> c = TensorChain<Rat>::zero(ker, 1);
  c.add_term(Rat(1), {k01, k12});
  CHECK(chain_support_radius(c) == Radius::finite(BigRat(2)));
  CHECK(chain_support_radius(c, SupportMode::max) ==
        Radius::finite(BigRat(1)));

  TensorChain<Rat> diag = TensorChain<Rat>::zero(ker, 1);
  diag.add_term(Rat(5), {kd, kd});
  CHECK(chain_support_radius(diag) == Radius::finite(BigRat(0)));

  // boundaries never increase the summed reach
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    TensorChain<Rat> r = random_chain(ker, 2 + int(rng() % 2), 3, rng);
    Radius before = chain_support_radius(r);
    CHECK(radius_le(chain_support_radius(bar_bprime(r)), before));
    CHECK(radius_le(chain_support_radius(hochschild_b(r)), before));
  }

  TensorChain<Rat> plain =
      TensorChain<Rat>::zero(FiniteAlgebra::matrix_algebra(2), 0);
  CHECK_THROWS_AS(chain_support_radius(plain), Error);
}

TEST_CASE("localized kernel homology sees the underlying space") {
  // 3-cycle: the localized window reproduces circle cohomology
  auto tri = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  LocalHochschildReport rep = local_hochschild_experiment(tri, 1);
  CHECK(rep.grid == std::vector<BigRat>{BigRat(0), BigRat(1), BigRat(2),
                                        BigRat(3)});
  REQUIRE(rep.ranks_at.size() == 4);
  CHECK(rep.ranks_at[0] == std::vector<int>{3, 0});
  CHECK(rep.ranks_at[1] == std::vector<int>{3, 0});
  CHECK(rep.ranks_at[2] == std::vector<int>{1, 1});
  CHECK(rep.ranks_at[3] == std::vector<int>{1, 0});
  CHECK(rep.selected_eps == BigRat(2));
  CHECK(rep.selected_ranks == std::vector<int>{1, 1});
  CHECK(rep.oracle_ranks == std::vector<int>{1, 1});
  CHECK(rep.matches_oracle);

  // one point and two disconnected points
  LocalHochschildReport pt = local_hochschild_experiment(single_point_space(), 1);
  CHECK(pt.selected_ranks == std::vector<int>{1, 0});
  CHECK(pt.matches_oracle);
  LocalHochschildReport two =
      local_hochschild_experiment(simplicial_space({{0}, {1}}), 1);
  CHECK(two.selected_ranks == std::vector<int>{2, 0});
  CHECK(two.matches_oracle);

  CHECK_THROWS_AS(local_hochschild_experiment(tri, 3), Error);
}
