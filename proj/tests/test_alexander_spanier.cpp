// Tuple-complex cochains: coboundary, localization, antisymmetrization,
// cohomology ranks, and the radius scan.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "locind/alexander_spanier.hpp"
#include "locind/errors.hpp"
#include "locind/space.hpp"

using namespace locind;

namespace {

ASCochain<Rat> random_cochain(const FinitePointSpace& space, int degree,
                              const Radius& eps, std::mt19937_64& rng) {
  auto basis = allowed_tuple_basis(space, degree, eps, kDefaultBasisBudget);
  REQUIRE(!basis.empty());
  std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  ASCochain<Rat> f;
  f.degree = degree;
  for (int k = 0; k < 6; ++k) {
    BigRat v(num(rng), den(rng));
    v.canonicalize();
    f.add(basis[pick(rng)], Rat(v));
  }
  f.prune_zeros();
  return f;
}

}  // namespace

TEST_CASE("tuple basis enumeration") {
  auto c3 = circle_space(3);
  CHECK(allowed_tuple_basis(*c3, 0, Radius::inf(), 1000).size() == 3);
  CHECK(allowed_tuple_basis(*c3, 1, Radius::inf(), 1000).size() == 9);
  CHECK(allowed_tuple_basis(*c3, 2, Radius::inf(), 1000).size() == 27);
  CHECK(allowed_tuple_basis(*c3, 3, Radius::inf(), 1000).size() == 81);

  auto triangle = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  Radius eps1 = Radius::finite(BigRat(1));
  CHECK(allowed_tuple_basis(*triangle, 1, eps1, 1000).size() == 9);
  CHECK(allowed_tuple_basis(*triangle, 2, eps1, 1000).size() == 21);
  CHECK(allowed_tuple_basis(*triangle, 3, eps1, 1000).size() == 45);
  Radius eps0 = Radius::finite(BigRat(0));
  CHECK(allowed_tuple_basis(*triangle, 1, eps0, 1000).size() == 3);

  auto tetra =
      simplicial_space({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(allowed_tuple_basis(*tetra, 1, eps1, 1000).size() == 16);
  CHECK(allowed_tuple_basis(*tetra, 2, eps1, 1000).size() == 64);
  CHECK(allowed_tuple_basis(*tetra, 3, eps1, 1000).size() == 232);

  CHECK_THROWS_AS(allowed_tuple_basis(*c3, 2, Radius::inf(), 10), Error);
}

TEST_CASE("free coboundary can grow support") {
  auto c3 = circle_space(3);
  // f supported on the diagonal pair (0,0); its free coboundary reaches
  // tuples of positive radius such as (0,1,0)
  auto f = ASCochain<Rat>::indicator(1, {0, 0}, Rat(1));
  auto df = free_coboundary(*c3, f);
  auto it = df.coeffs.find({0, 1, 0});
  REQUIRE(it != df.coeffs.end());
  CHECK(it->second == Rat(-1));
  CHECK(tuple_support_radius(*c3, {0, 1, 0}).value == BigRat(2, 3));
}

TEST_CASE("localized coboundary preserves the support constraint") {
  auto triangle = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  Radius eps = Radius::finite(BigRat(1));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_cochain(*triangle, 1, eps, rng);
    auto df = coboundary(*triangle, f, eps);
    for (const auto& [tuple, v] : df.coeffs) {
      CHECK(tuple_allowed(*triangle, tuple, eps));
    }
  }
}

TEST_CASE("coboundary squares to zero") {
  auto triangle = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto c4 = circle_space(4);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Radius eps = (trial % 2 == 0) ? Radius::finite(BigRat(1)) : Radius::inf();
    const FinitePointSpace& space = (trial % 3 == 0) ? *c4 : *triangle;
    Radius use_eps = (&space == c4.get() && !eps.infinite)
                         ? Radius::finite(BigRat(1, 2))
                         : eps;
    int degree = trial % 2;
    auto f = random_cochain(space, degree, use_eps, rng);
    auto ddf = coboundary(space, coboundary(space, f, use_eps), use_eps);
    CHECK(ddf.is_zero());
  }
}

TEST_CASE("antisymmetrize is a projection annihilating repeats") {
  auto c3 = circle_space(3);
  (void)c3;
  auto f = ASCochain<Rat>::indicator(1, {0, 1}, Rat(1));
  auto alt = antisymmetrize(f);
  REQUIRE(alt.coeffs.size() == 2);
  CHECK(alt.coeffs.at({0, 1}) == Rat(BigRat(1, 2)));
  CHECK(alt.coeffs.at({1, 0}) == Rat(BigRat(-1, 2)));
  auto alt2 = antisymmetrize(alt);
  CHECK(alt2.coeffs == alt.coeffs);

  // tuples with a repeated entry are killed
  auto rep = ASCochain<Rat>::indicator(1, {2, 2}, Rat(5));
  CHECK(antisymmetrize(rep).is_zero());

  // float mode refuses degrees where 1/(q+1)! is numerically meaningless
  ASCochain<Cplx> high;
  high.degree = 13;
  high.coeffs[{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}] =
      Cplx(1.0, 0.0);
  CHECK_THROWS_AS(antisymmetrize(high), Error);
}

TEST_CASE("non-localized cohomology of small spaces is trivial") {
  auto c3 = circle_space(3);
  auto profile = as_cohomology(*c3, 2, Radius::inf(), ScalarKind::rational);
  CHECK(profile.dims == std::vector<int>{3, 9, 27});
  CHECK(profile.ranks == std::vector<int>{1, 0, 0});

  auto triangle = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto tp = as_cohomology(*triangle, 2, Radius::inf(), ScalarKind::rational);
  CHECK(tp.ranks == std::vector<int>{1, 0, 0});

  // float path agrees on this small case
  auto fp = as_cohomology(*c3, 1, Radius::inf(), ScalarKind::floating);
  CHECK(fp.ranks == std::vector<int>{1, 0});
}

TEST_CASE("localized cohomology sees the circle") {
  auto triangle = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto profile =
      as_cohomology(*triangle, 1, Radius::finite(BigRat(1)),
                    ScalarKind::rational);
  CHECK(profile.dims == std::vector<int>{3, 9});
  CHECK(profile.ranks == std::vector<int>{1, 1});
  CHECK(profile.ranks ==
        std::vector<int>(simplicial_cohomology_ranks(*triangle, 1)));

  auto tetra =
      simplicial_space({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto tprofile = as_cohomology(*tetra, 2, Radius::finite(BigRat(1)),
                                ScalarKind::rational);
  CHECK(tprofile.ranks == std::vector<int>{1, 0, 1});
  CHECK(tprofile.ranks ==
        std::vector<int>(simplicial_cohomology_ranks(*tetra, 2)));

  // radius 0 only retains the diagonal: one class per point in degree 0
  auto zero = as_cohomology(*triangle, 1, Radius::finite(BigRat(0)),
                            ScalarKind::rational);
  CHECK(zero.ranks == std::vector<int>{3, 0});
}

TEST_CASE("radius scan and stabilization") {
  auto triangle = simplicial_space({{0, 1}, {1, 2}, {0, 2}});
  auto scan = localized_cohomology_scan(*triangle, 1, ScalarKind::rational);
  REQUIRE(scan.stages.size() == 1);
  CHECK(scan.stages[0].eps == BigRat(1));
  CHECK(scan.stabilized);
  CHECK(scan.final_ranks == std::vector<int>{1, 1});

  auto c8 = circle_space(8);
  auto cscan = localized_cohomology_scan(*c8, 1, ScalarKind::rational);
  CHECK(cscan.stages.size() == 4);  // distances 1, 3/4, 1/2, 1/4
  CHECK(cscan.stabilized);
  CHECK(cscan.final_ranks == std::vector<int>{1, 1});

  auto tetra =
      simplicial_space({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto tscan = localized_cohomology_scan(*tetra, 2, ScalarKind::rational);
  CHECK(tscan.stabilized);
  CHECK(tscan.final_ranks == std::vector<int>{1, 0, 1});
}
