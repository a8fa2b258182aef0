#include "locind/index_pairing.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "locind/errors.hpp"

namespace locind {

namespace {

constexpr double kFloatMatchTol = 1e-6;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cplx_to_string(const Cplx& z) {
  return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

// exact values print as Gaussian rationals whenever they are one; genuinely
// irrational cyclotomic values fall back to a complex approximation
std::string cyclo_to_string(const Cyclo& v) {
  if (auto g = v.as_gaussian()) return g->to_string();
  return "~" + cplx_to_string(v.to_complex());
}

// scalar-specific multiplication by a Gaussian-rational cochain value
template <class S>
S rat_times(const Rat& v, const S& x) {
  return ScalarLike<S>::from_rat(v) * x;
}
template <>
Cyclo rat_times<Cyclo>(const Rat& v, const Cyclo& x) {
  if (v.is_zero() || x.is_zero()) return Cyclo();
  return Cyclo::from_rat(x.context(), v) * x;
}

struct RemainderCorners {
  Mat<Rat> blocks[4];  // 2x2 block layout, row-major: a b c d
};

// the four blocks of the doubled remainder as finite corner matrices
RemainderCorners smoothing_corners(const OperatorModel& model) {
  auto data = hardy_connecting(model);
  const HardyOp* ops[4] = {&data.R.a, &data.R.b, &data.R.c, &data.R.d};
  RemainderCorners out;
  for (int i = 0; i < 4; ++i) {
    if (!ops[i]->is_smoothing())
      fail_validation(
          "position transport needs smoothing remainder blocks; the "
          "parametrix only inverts the symbol approximately");
    if (ops[i]->corner.rows() > model.K || ops[i]->corner.cols() > model.K)
      fail_validation(
          "remainder corner outgrows the truncation window; increase K");
    out.blocks[i] = ops[i]->corner;
  }
  return out;
}

template <class S>
void place_block(Mat<S>& m, int n, int a, int b, const Mat<S>& blk) {
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) m.at(a * n + x, b * n + y) = blk.at(x, y);
}

template <class S>
void tau_check_inputs(const PositionKernel<S>& R, const SpacePtr& phi_space,
                      const ASCochain<Rat>& phi, int q) {
  if (q < 0 || q % 2 != 0)
    fail_validation("pairing degree must be even (got " + std::to_string(q) +
                    ")");
  if (phi.degree != q)
    fail_validation("cochain degree " + std::to_string(phi.degree) +
                    " does not match the pairing degree " + std::to_string(q));
  if (!R.space || !phi_space)
    fail_validation("pairing needs a space on both sides");
  if (phi_space->n_points != R.space->n_points)
    fail_validation("cochain space (" + std::to_string(phi_space->n_points) +
                    " points) does not match the kernel space (" +
                    std::to_string(R.space->n_points) + " points)");
  if (R.m.rows() != R.fiber * R.space->n_points || R.m.cols() != R.m.rows())
    fail_validation("kernel matrix shape does not match fiber times points");
}

template <class S>
void check_tuple(const std::vector<int>& t, int arity, int n) {
  if (int(t.size()) != arity)
    fail_validation("cochain tuple of arity " + std::to_string(t.size()) +
                    " where " + std::to_string(arity) + " was expected");
  for (int x : t)
    if (x < 0 || x >= n)
      fail_validation("cochain tuple references a point outside the space");
}

// trace of R(x0,x1) R(x1,x2) ... R(xq,x0) over the fiber indices
template <class S>
S tuple_trace(const PositionKernel<S>& R, const std::vector<int>& t) {
  Mat<S> prod = R.point_block(t[0], t[t.size() > 1 ? 1 : 0]);
  for (size_t i = 1; i < t.size(); ++i)
    prod = prod * R.point_block(t[i], t[(i + 1) % t.size()]);
  return prod.trace();
}

Cplx pairwise_sum(const std::vector<Cplx>& v, size_t lo, size_t hi) {
  if (hi == lo) return Cplx(0.0, 0.0);
  if (hi - lo <= 8) {
    Cplx s(0.0, 0.0);
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

// largest pairwise reach of points the kernel actually couples
template <class S>
Radius kernel_reach(const PositionKernel<S>& R) {
  Radius best = Radius::finite(BigRat(0));
  int n = R.space->n_points;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool nz = false;
      for (int a = 0; a < R.fiber && !nz; ++a)
        for (int b = 0; b < R.fiber && !nz; ++b)
          if (!ScalarLike<S>::is_zero(R.entry(a, x, b, y))) nz = true;
      if (!nz) continue;
      Radius r = R.space->pair_radius(x, y);
      if (!radius_le(r, best)) best = r;
    }
  return best;
}

Radius cochain_reach(const FinitePointSpace& space, const ASCochain<Rat>& f) {
  Radius best = Radius::finite(BigRat(0));
  for (const auto& [t, v] : f.coeffs) {
    if (v.is_zero()) continue;
    Radius r = tuple_support_radius(space, t);
    if (!radius_le(r, best)) best = r;
  }
  return best;
}

bool cochains_equal(const ASCochain<Rat>& a, const ASCochain<Rat>& b) {
  if (a.degree != b.degree) return false;
  ASCochain<Rat> x = a, y = b;
  x.prune_zeros();
  y.prune_zeros();
  return x.coeffs == y.coeffs;
}

template <class S>
CycleCheckReport cycle_check_impl(const PositionKernel<S>& R, int q,
                                  int trials, unsigned long seed,
                                  const Radius& psi_support, long budget) {
  if (q < 2 || q % 2 != 0)
    fail_validation("cycle check needs an even degree of at least 2");
  require(trials >= 1, "cycle check needs at least one trial");
  CycleCheckReport rep;
  rep.q = q;
  rep.trials = trials;
  rep.seed = seed;
  rep.exact_zero = true;
  rep.max_abs = 0.0;

  const FinitePointSpace& space = *R.space;
  auto basis = allowed_tuple_basis(space, q - 1, psi_support, budget);
  if (basis.empty()) return rep;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> nterms(1, 6);
  std::uniform_int_distribution<int> numer(-9, 9);
  std::uniform_int_distribution<int> denom(1, 4);
  for (int t = 0; t < trials; ++t) {
    ASCochain<Rat> psi;
    psi.degree = q - 1;
    int m = nterms(rng);
    for (int k = 0; k < m; ++k) {
      int nu = numer(rng);
      if (nu == 0) nu = 1;
      BigRat c(nu, denom(rng));
      c.canonicalize();
      psi.add(basis[pick(rng)], Rat(c));
    }
    psi.prune_zeros();
    // the complex is the alternating one: project onto it before d
    ASCochain<Rat> alt = antisymmetrize(psi, budget);
    ASCochain<Rat> dpsi = free_coboundary(space, alt);
    S val = tau_pairing(R, R.space, dpsi, q);
    if (!ScalarLike<S>::is_zero(val)) rep.exact_zero = false;
    rep.max_abs = std::max(rep.max_abs, ScalarLike<S>::abs(val));
  }
  return rep;
}

template <class S>
void check_kernel_algebra_shape(const PositionKernel<S>& k,
                                const AlgPtr& alg) {
  if (!alg || !alg->has_space() || alg->block_count() != 1 ||
      alg->space->n_points != k.space->n_points ||
      alg->block_size(0) != k.fiber * k.space->n_points)
    fail_validation("kernel algebra does not match the position kernel shape");
}

// the odd chain of a diagonal invertible over a context-carrying scalar; the
// factor pattern and constant mirror the generic odd Chern chain, which is
// unavailable here because this scalar has no global unit
TensorChain<Cyclo> diagonal_odd_chain(const AlgElem<Cyclo>& u,
                                      const AlgElem<Cyclo>& uinv,
                                      const AlgElem<Cyclo>& one, int q) {
  check_internal(q >= 1, "odd chain starts at q = 1");
  check_internal(uinv * u == one && u * uinv == one,
                 "diagonal representative must be invertible");
  AlgMat<Cyclo> x = AlgMat<Cyclo>::from_elem(uinv - one);
  AlgMat<Cyclo> y = AlgMat<Cyclo>::from_elem(u - one);
  std::vector<const AlgMat<Cyclo>*> ms;
  for (int i = 0; i < q; ++i) {
    ms.push_back(&x);
    ms.push_back(&y);
  }
  BigRat c(1);
  for (int i = 2; i <= q - 1; ++i) c *= i;      // (q-1)!
  for (int i = 2; i <= 2 * q - 1; ++i) c /= i;  // / (2q-1)!
  if (q % 2 == 0) c = -c;                       // (-1)^{q-1}
  return contract_cyclic(ms).scaled_rat(c).normalized();
}

}  // namespace

PositionKernel<Cyclo> remainder_position_kernel(const OperatorModel& model) {
  require(model.K >= 3, "position transport needs at least 3 circle points");
  RemainderCorners c = smoothing_corners(model);
  int n = model.K;
  PositionKernel<Cyclo> out;
  out.space = circle_space(n);
  out.fiber = 2;
  out.ctx = CycloContext::for_circle(n);
  out.m = Mat<Cyclo>(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      place_block(out.m, n, a, b,
                  corner_to_position_kernel(c.blocks[a * 2 + b], n, out.ctx));
  return out;
}

PositionKernel<Cplx> remainder_position_kernel_float(
    const OperatorModel& model) {
  require(model.K >= 3, "position transport needs at least 3 circle points");
  RemainderCorners c = smoothing_corners(model);
  int n = model.K;
  PositionKernel<Cplx> out;
  out.space = circle_space(n);
  out.fiber = 2;
  out.m = Mat<Cplx>(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      place_block(out.m, n, a, b,
                  corner_to_position_kernel_float(c.blocks[a * 2 + b], n));
  return out;
}

ASCochain<Rat> constant_cochain(const FinitePointSpace& space, int q) {
  require(q >= 0, "cochain degree must be nonnegative");
  double size = 1.0;
  for (int i = 0; i <= q; ++i) size *= space.n_points;
  if (size > double(kDefaultBasisBudget)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f", size);
    fail_budget("constant cochain at degree " + std::to_string(q) + " has " +
                buf + " entries, over the budget of " +
                std::to_string(kDefaultBasisBudget));
  }
  ASCochain<Rat> out;
  out.degree = q;
  std::vector<int> t(size_t(q) + 1, 0);
  for (;;) {
    out.coeffs.emplace(t, Rat(1));
    int p = 0;
    while (p <= q && ++t[size_t(p)] == space.n_points) t[size_t(p++)] = 0;
    if (p > q) break;
  }
  return out;
}

Cyclo tau_pairing(const PositionKernel<Cyclo>& R, const SpacePtr& phi_space,
                  const ASCochain<Rat>& phi, int q) {
  tau_check_inputs(R, phi_space, phi, q);
  int n = R.space->n_points;
  Cyclo acc;
  for (const auto& [t, v] : phi.coeffs) {
    if (v.is_zero()) continue;
    check_tuple<Cyclo>(t, q + 1, n);
    Cyclo tr = tuple_trace(R, t);
    if (tr.is_zero()) continue;
    acc += rat_times(v, tr);
  }
  return acc;
}

Cplx tau_pairing(const PositionKernel<Cplx>& R, const SpacePtr& phi_space,
                 const ASCochain<Rat>& phi, int q) {
  tau_check_inputs(R, phi_space, phi, q);
  int n = R.space->n_points;
  std::vector<Cplx> terms;
  terms.reserve(phi.coeffs.size());
  for (const auto& [t, v] : phi.coeffs) {
    if (v.is_zero()) continue;
    check_tuple<Cplx>(t, q + 1, n);
    terms.push_back(tuple_trace(R, t) * v.to_complex());
  }
  return pairwise_sum(terms, 0, terms.size());
}

IndexReport index_class(const OperatorModel& model, const ASCochain<Rat>& phi,
                        long budget) {
  IndexReport rep;
  rep.model_descriptor = model_descriptor(model);
  rep.kind = model.kind;
  int q = phi.degree;
  if (q % 2 != 0)
    fail_validation("index pairing needs an even cochain degree (got " +
                    std::to_string(q) + ")");
  rep.q = q;

  ASCochain<Rat> psi = antisymmetrize(phi, budget);
  rep.phi_was_antisymmetrized = !cochains_equal(psi, phi);

  auto data = hardy_connecting(model);
  Rat rtrace = residue_trace(data);
  rep.residue_trace_value = rtrace.to_string();
  check_internal(model.winding.has_value(),
                 "smoothing remainders without a recorded winding");
  rep.oracle_index = rect_shift_index(*model.winding, model.K);
  rep.classical_index = -rep.oracle_index;

  if (model.kind == ScalarKind::rational) {
    PositionKernel<Cyclo> R = remainder_position_kernel(model);
    Cyclo tau = tau_pairing(R, R.space, psi, q);
    rep.tau_value = cyclo_to_string(tau);
    rep.tau_equals_residue_trace = (tau == Cyclo::from_rat(R.ctx, rtrace));
    rep.tau_equals_oracle =
        (tau == Cyclo::from_rat(R.ctx, Rat(long(rep.oracle_index))));
    rep.phi_support = cochain_reach(*R.space, psi);
    Radius reach = kernel_reach(R);
    Radius chain = Radius::finite(BigRat(0));
    for (int i = 0; i <= q; ++i) chain = radius_add(chain, reach);
    rep.chain_support = chain;
    rep.support_compatible = radius_le(rep.chain_support, rep.phi_support);
  } else {
    PositionKernel<Cplx> R = remainder_position_kernel_float(model);
    Cplx tau = tau_pairing(R, R.space, psi, q);
    rep.tau_value = cplx_to_string(tau);
    rep.tau_equals_residue_trace =
        std::abs(tau - rtrace.to_complex()) <= kFloatMatchTol;
    rep.tau_equals_oracle =
        std::abs(tau - Cplx(double(rep.oracle_index), 0.0)) <= kFloatMatchTol;
    rep.phi_support = cochain_reach(*R.space, psi);
    Radius reach = kernel_reach(R);
    Radius chain = Radius::finite(BigRat(0));
    for (int i = 0; i <= q; ++i) chain = radius_add(chain, reach);
    rep.chain_support = chain;
    rep.support_compatible = radius_le(rep.chain_support, rep.phi_support);
  }
  return rep;
}

PairReport pair_value(const OperatorModel& model, const ASCochain<Rat>& phi,
                      int q) {
  PairReport rep;
  rep.model_descriptor = model_descriptor(model);
  rep.kind = model.kind;
  rep.q = q;
  auto finish = [&](const auto& R) {
    rep.phi_support = cochain_reach(*R.space, phi);
    Radius reach = kernel_reach(R);
    Radius chain = Radius::finite(BigRat(0));
    for (int i = 0; i <= q; ++i) chain = radius_add(chain, reach);
    rep.chain_support = chain;
    rep.support_compatible = radius_le(rep.chain_support, rep.phi_support);
  };
  if (model.kind == ScalarKind::rational) {
    PositionKernel<Cyclo> R = remainder_position_kernel(model);
    rep.tau_value = cyclo_to_string(tau_pairing(R, R.space, phi, q));
    finish(R);
  } else {
    PositionKernel<Cplx> R = remainder_position_kernel_float(model);
    rep.tau_value = cplx_to_string(tau_pairing(R, R.space, phi, q));
    finish(R);
  }
  return rep;
}

CycleCheckReport as_cycle_check(const PositionKernel<Cyclo>& R, int q,
                                int trials, unsigned long seed,
                                const Radius& psi_support, long budget) {
  return cycle_check_impl(R, q, trials, seed, psi_support, budget);
}

CycleCheckReport as_cycle_check(const PositionKernel<Cplx>& R, int q,
                                int trials, unsigned long seed,
                                const Radius& psi_support, long budget) {
  return cycle_check_impl(R, q, trials, seed, psi_support, budget);
}

template <class S>
S DiagonalRestriction<S>::apply(const ASCochain<Rat>& phi) const {
  if (phi.degree != chain.degree)
    fail_validation("cochain degree " + std::to_string(phi.degree) +
                    " does not match the chain degree " +
                    std::to_string(chain.degree));
  int n = space->n_points;
  auto fiber_block = [&](const AlgElem<S>& f, int x, int y) {
    Mat<S> blk(fiber, fiber);
    for (int a = 0; a < fiber; ++a)
      for (int b = 0; b < fiber; ++b)
        blk.at(a, b) = f.blocks[0].at(a * n + x, b * n + y);
    return blk;
  };
  S acc = ScalarLike<S>::zero();
  for (const auto& [t, v] : phi.coeffs) {
    if (v.is_zero()) continue;
    check_tuple<S>(t, chain.degree + 1, n);
    for (const auto& term : chain.terms) {
      Mat<S> prod =
          fiber_block(term.factors[0], t[0], t[t.size() > 1 ? 1 : 0]);
      for (size_t i = 1; i < t.size(); ++i)
        prod = prod * fiber_block(term.factors[i], t[i],
                                  t[(i + 1) % t.size()]);
      S tr = prod.trace();
      if (ScalarLike<S>::is_zero(tr)) continue;
      acc = acc + term.coeff * rat_times(v, tr);
    }
  }
  return acc;
}

// summing the fiber-block traces over every tuple composes the kernels, so
// the constant cochain collapses to a full-matrix product trace
template <class S>
S DiagonalRestriction<S>::apply_constant() const {
  S acc = ScalarLike<S>::zero();
  for (const auto& term : chain.terms) {
    Mat<S> prod = term.factors[0].blocks[0];
    for (size_t i = 1; i < term.factors.size(); ++i)
      prod = prod * term.factors[i].blocks[0];
    S tr = prod.trace();
    if (ScalarLike<S>::is_zero(tr)) continue;
    acc = acc + term.coeff * tr;
  }
  return acc;
}

template struct DiagonalRestriction<Rat>;
template struct DiagonalRestriction<Cyclo>;
template struct DiagonalRestriction<Cplx>;

namespace {

template <class S>
DiagonalRestriction<S> make_restriction(TensorChain<S> c) {
  if (!c.alg || !c.alg->has_space())
    fail_validation("diagonal restriction needs a kernel algebra over a space");
  if (c.alg->block_count() != 1)
    fail_validation("diagonal restriction needs a single-block kernel algebra");
  DiagonalRestriction<S> d;
  d.space = c.alg->space;
  d.fiber = c.alg->block_size(0) / d.space->n_points;
  d.chain = c.normalized();
  return d;
}

}  // namespace

DiagonalRestriction<Cyclo> restrict_to_diagonal(TensorChain<Cyclo> c) {
  return make_restriction(std::move(c));
}
DiagonalRestriction<Cplx> restrict_to_diagonal(TensorChain<Cplx> c) {
  return make_restriction(std::move(c));
}
DiagonalRestriction<Rat> restrict_to_diagonal(TensorChain<Rat> c) {
  return make_restriction(std::move(c));
}

AlgElem<Cyclo> kernel_algebra_element(const PositionKernel<Cyclo>& k,
                                      const AlgPtr& alg) {
  check_kernel_algebra_shape(k, alg);
  AlgElem<Cyclo> v = AlgElem<Cyclo>::zero(alg);
  v.blocks[0] = k.m;
  return v;
}

SeparableContext<Cyclo> position_separable_context(
    const PositionKernel<Cyclo>& k, const AlgPtr& alg) {
  check_kernel_algebra_shape(k, alg);
  if (!k.ctx)
    fail_validation("separable context needs the exact cyclotomic kernel");
  if (k.fiber != 2)
    fail_validation("separable reduction expects the doubled kernel (fiber 2)");
  int n = k.space->n_points;
  Cyclo one = Cyclo::from_rat(k.ctx, Rat(1));
  AlgElem<Cyclo> e = AlgElem<Cyclo>::zero(alg);
  for (int x = 0; x < n; ++x) e.blocks[0].at(n + x, n + x) = one;
  AlgElem<Cyclo> unit = AlgElem<Cyclo>::zero(alg);
  for (int i = 0; i < 2 * n; ++i) unit.blocks[0].at(i, i) = one;
  return SeparableContext<Cyclo>::make(std::move(e), unit);
}

std::string model_descriptor(const OperatorModel& model) {
  return "toeplitz[" + model.symbol.to_string() +
         "] K=" + std::to_string(model.K) +
         " scalars=" + scalar_kind_name(model.kind);
}

ProbeReport conjecture_probe(const OperatorModel& model, int q_max) {
  require(q_max >= 0, "probe degree cap must be nonnegative");
  require(q_max <= 3, "probe degree cap above 3 exceeds the desk-scale budget");
  if (model.kind != ScalarKind::rational)
    fail_validation(
        "conjecture probe runs on exact rational models only; float models "
        "have no exact remainder kernel");
  auto mono = model.symbol.as_monomial();
  if (!mono)
    fail_validation(
        "conjecture probe needs a monomial symbol with an exact parametrix");
  int w = mono->first;
  Rat coeff = mono->second;

  ProbeReport rep;
  rep.model_descriptor = model_descriptor(model);

  PositionKernel<Cyclo> R = remainder_position_kernel(model);
  int n = R.space->n_points;
  const auto& ctx = R.ctx;
  long step = ctx->conductor / n;

  AlgPtr doubled = FiniteAlgebra::kernel_algebra(R.space, 2);
  AlgMat<Cyclo> Rm = AlgMat<Cyclo>::from_elem(kernel_algebra_element(R, doubled));
  SeparableContext<Cyclo> sep = position_separable_context(R, doubled);

  // diagonal multiplication operator carrying the symbol's circle values
  AlgPtr scalar_kernels = FiniteAlgebra::kernel_algebra(R.space, 1);
  AlgElem<Cyclo> u = AlgElem<Cyclo>::zero(scalar_kernels);
  AlgElem<Cyclo> uinv = AlgElem<Cyclo>::zero(scalar_kernels);
  AlgElem<Cyclo> one1 = AlgElem<Cyclo>::zero(scalar_kernels);
  for (int x = 0; x < n; ++x) {
    u.blocks[0].at(x, x) =
        Cyclo::from_rat(ctx, coeff) * Cyclo::zeta(ctx, step * w * x);
    uinv.blocks[0].at(x, x) =
        Cyclo::from_rat(ctx, coeff.inv()) * Cyclo::zeta(ctx, -step * w * x);
    one1.blocks[0].at(x, x) = Cyclo::from_rat(ctx, Rat(1));
  }

  Mat<Cyclo> power = R.m;  // odd kernel powers, extended two at a time
  for (int q = 0; q <= q_max; ++q) {
    if (q > 0) power = power * R.m * R.m;
    ProbeRow row;
    row.q = q;
    row.sigma_winding = std::to_string(w);
    Cyclo rtau = power.trace();
    row.residue_tau = cyclo_to_string(rtau);
    row.residue_chain = cyclo_to_string(
        restrict_to_diagonal(chern_residue(Rm, sep, q)).apply_constant());
    if (q == 0) {
      row.q0_equal = (rtau == Cyclo::from_rat(ctx, Rat(long(w))));
    } else {
      row.sigma_chain = cyclo_to_string(
          restrict_to_diagonal(diagonal_odd_chain(u, uinv, one1, q))
              .apply_constant());
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace locind
