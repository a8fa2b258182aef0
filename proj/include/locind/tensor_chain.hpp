#pragma once

#include <map>
#include <vector>

#include "locind/alexander_spanier.hpp"
#include "locind/algebra.hpp"
#include "locind/cyclotomic.hpp"

namespace locind {

// coefficient scaling by exact rationals, uniform across scalar types
template <class S>
struct ChainScalar;
template <>
struct ChainScalar<Rat> {
  static Rat mul_rat(const Rat& v, const BigRat& q) { return v * Rat(q); }
};
template <>
struct ChainScalar<Cplx> {
  static Cplx mul_rat(const Cplx& v, const BigRat& q) { return v * q.get_d(); }
};
template <>
struct ChainScalar<Cyclo> {
  static Cyclo mul_rat(const Cyclo& v, const BigRat& q) { return v.scaled(q); }
};

// ---------------------------------------------------------------------------
// Formal sum of elementary tensors f_0 (x) f_1 (x) ... (x) f_r with scalar
// coefficients; degree r chains have r+1 factors.  The empty chain of degree
// -1 is the sentinel boundary of degree-0 chains.
// ---------------------------------------------------------------------------
template <class S>
struct TensorChain {
  struct Term {
    S coeff;
    std::vector<AlgElem<S>> factors;
  };

  AlgPtr alg;
  int degree = 0;
  std::vector<Term> terms;

  static TensorChain zero(AlgPtr a, int degree) {
    TensorChain c;
    c.alg = std::move(a);
    c.degree = degree;
    return c;
  }

  void add_term(S coeff, std::vector<AlgElem<S>> factors) {
    check_internal(int(factors.size()) == degree + 1,
                   "tensor term arity must match the chain degree");
    terms.push_back(Term{std::move(coeff), std::move(factors)});
  }

  bool empty() const { return terms.empty(); }

  // merge terms with identical factor tuples, drop zero terms
  TensorChain normalized() const {
    TensorChain out = zero(alg, degree);
    std::map<std::vector<AlgElem<S>>, S> acc;
    for (const auto& t : terms) {
      if (ScalarLike<S>::is_zero(t.coeff)) continue;
      bool dead = false;
      for (const auto& f : t.factors)
        if (f.is_zero()) { dead = true; break; }
      if (dead) continue;
      auto [it, fresh] = acc.emplace(t.factors, t.coeff);
      if (!fresh) it->second += t.coeff;
    }
    for (auto& [factors, coeff] : acc) {
      if (ScalarLike<S>::is_zero(coeff)) continue;
      out.terms.push_back(Term{std::move(coeff), factors});
    }
    return out;
  }

  TensorChain operator-() const {
    TensorChain c = *this;
    for (auto& t : c.terms) t.coeff = -t.coeff;
    return c;
  }
  friend TensorChain operator+(TensorChain x, const TensorChain& y) {
    if (x.alg.get() != y.alg.get() || x.degree != y.degree)
      fail_internal("tensor chain addition mismatch");
    for (const auto& t : y.terms) x.terms.push_back(t);
    return x;
  }
  friend TensorChain operator-(TensorChain x, const TensorChain& y) {
    return std::move(x) + (-y);
  }
  TensorChain scaled_rat(const BigRat& q) const {
    TensorChain c = *this;
    if (q == 0) c.terms.clear();
    for (auto& t : c.terms) t.coeff = ChainScalar<S>::mul_rat(t.coeff, q);
    return c;
  }

  // expansion in the coordinate basis: one entry id per factor.  The budget
  // bounds the number of elementary products formed.
  std::map<std::vector<long>, S> expand_coordinates(
      long budget = kDefaultBasisBudget) const {
    std::vector<long> offsets(size_t(alg->block_count()) + 1, 0);
    for (int b = 0; b < alg->block_count(); ++b)
      offsets[size_t(b) + 1] =
          offsets[size_t(b)] + long(alg->block_size(b)) * alg->block_size(b);

    std::map<std::vector<long>, S> acc;
    long spent = 0;
    for (const auto& t : terms) {
      // nonzero coordinates of each factor
      std::vector<std::vector<std::pair<long, S>>> coords;
      long cost = 1;
      for (const auto& f : t.factors) {
        std::vector<std::pair<long, S>> cs;
        for (int b = 0; b < alg->block_count(); ++b) {
          int k = alg->block_size(b);
          for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
              const S& v = f.blocks[size_t(b)].at(i, j);
              if (!ScalarLike<S>::is_zero(v))
                cs.push_back({offsets[size_t(b)] + long(i) * k + j, v});
            }
        }
        cost *= long(cs.size());
        if (cost == 0) break;
        coords.push_back(std::move(cs));
      }
      if (coords.size() != t.factors.size() || cost == 0) continue;
      spent += cost;
      if (spent > budget)
        fail_budget("tensor chain expansion exceeds the budget of " +
                    std::to_string(budget) + " elementary products");
      // odometer over the factor coordinates
      std::vector<size_t> idx(coords.size(), 0);
      for (;;) {
        std::vector<long> key(coords.size());
        S v = t.coeff;
        for (size_t p = 0; p < coords.size(); ++p) {
          key[p] = coords[p][idx[p]].first;
          v = v * coords[p][idx[p]].second;
        }
        auto [it, fresh] = acc.emplace(std::move(key), v);
        if (!fresh) it->second += v;
        size_t p = 0;
        while (p < idx.size() && ++idx[p] == coords[p].size()) idx[p++] = 0;
        if (p == idx.size()) break;
      }
    }
    for (auto it = acc.begin(); it != acc.end();)
      it = ScalarLike<S>::is_zero(it->second) ? acc.erase(it) : std::next(it);
    return acc;
  }

  bool is_zero(long budget = kDefaultBasisBudget) const {
    TensorChain n = normalized();
    if (n.empty()) return true;
    return n.expand_coordinates(budget).empty();
  }

  // largest coordinate magnitude, for float-mode tolerance checks
  double max_abs_coordinate(long budget = kDefaultBasisBudget) const {
    double m = 0.0;
    for (const auto& [key, v] : expand_coordinates(budget))
      m = std::max(m, ScalarLike<S>::abs(v));
    return m;
  }
};

// --- simplicial-style operators -------------------------------------------

// sum of the inner face maps: merge adjacent factors with alternating signs
template <class S>
TensorChain<S> bar_bprime(const TensorChain<S>& c) {
  TensorChain<S> out = TensorChain<S>::zero(c.alg, c.degree - 1);
  if (c.degree <= 0) return out;  // boundary of degree 0 is the empty chain
  for (const auto& t : c.terms) {
    for (int s = 0; s + 1 <= c.degree; ++s) {
      std::vector<AlgElem<S>> f;
      f.reserve(size_t(c.degree));
      for (int i = 0; i < s; ++i) f.push_back(t.factors[size_t(i)]);
      f.push_back(t.factors[size_t(s)] * t.factors[size_t(s) + 1]);
      for (int i = s + 2; i <= c.degree; ++i) f.push_back(t.factors[size_t(i)]);
      S coeff = (s % 2 == 0) ? t.coeff : -t.coeff;
      out.add_term(std::move(coeff), std::move(f));
    }
  }
  return out.normalized();
}

// full boundary: inner faces plus the wrap-around face with sign (-1)^r
template <class S>
TensorChain<S> hochschild_b(const TensorChain<S>& c) {
  TensorChain<S> out = bar_bprime(c);
  if (c.degree <= 0) return out;
  for (const auto& t : c.terms) {
    std::vector<AlgElem<S>> f;
    f.reserve(size_t(c.degree));
    f.push_back(t.factors[size_t(c.degree)] * t.factors[0]);
    for (int i = 1; i < c.degree; ++i) f.push_back(t.factors[size_t(i)]);
    S coeff = (c.degree % 2 == 0) ? t.coeff : -t.coeff;
    out.add_term(std::move(coeff), std::move(f));
  }
  return out.normalized();
}

// signed cyclic rotation: f_0 (x) ... (x) f_r -> (-1)^r f_r (x) f_0 (x) ...
template <class S>
TensorChain<S> lambda_rotate(const TensorChain<S>& c) {
  TensorChain<S> out = TensorChain<S>::zero(c.alg, c.degree);
  for (const auto& t : c.terms) {
    std::vector<AlgElem<S>> f;
    f.reserve(t.factors.size());
    f.push_back(t.factors.back());
    for (size_t i = 0; i + 1 < t.factors.size(); ++i) f.push_back(t.factors[i]);
    S coeff = (c.degree % 2 == 0) ? t.coeff : -t.coeff;
    out.add_term(std::move(coeff), std::move(f));
  }
  return out;
}

// averaging projection onto signed-rotation-invariant chains
template <class S>
TensorChain<S> cyclic_symmetrize(const TensorChain<S>& c) {
  TensorChain<S> sum = c;
  TensorChain<S> rot = c;
  for (int j = 1; j <= c.degree; ++j) {
    rot = lambda_rotate(rot);
    sum = sum + rot;
  }
  return sum.scaled_rat(BigRat(1, c.degree + 1)).normalized();
}

// --- matrices over the algebra ---------------------------------------------

template <class S>
struct AlgMat {
  AlgPtr alg;
  int n = 0;
  std::vector<AlgElem<S>> entries;  // row-major

  static AlgMat zero(AlgPtr a, int n) {
    AlgMat m;
    m.alg = a;
    m.n = n;
    m.entries.assign(size_t(n) * n, AlgElem<S>::zero(a));
    return m;
  }
  static AlgMat one(AlgPtr a, int n) {
    AlgMat m = zero(a, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = AlgElem<S>::one(a);
    return m;
  }
  static AlgMat from_elem(AlgElem<S> e) {
    AlgMat m;
    m.alg = e.alg;
    m.n = 1;
    m.entries.push_back(std::move(e));
    return m;
  }

  AlgElem<S>& at(int i, int j) { return entries[size_t(i) * n + j]; }
  const AlgElem<S>& at(int i, int j) const { return entries[size_t(i) * n + j]; }

  AlgMat operator-() const {
    AlgMat m = *this;
    for (auto& e : m.entries) e = -e;
    return m;
  }
  friend AlgMat operator+(AlgMat x, const AlgMat& y) {
    x.check_same(y);
    for (size_t i = 0; i < x.entries.size(); ++i)
      x.entries[i] = x.entries[i] + y.entries[i];
    return x;
  }
  friend AlgMat operator-(AlgMat x, const AlgMat& y) { return x + (-y); }
  friend AlgMat operator*(const AlgMat& x, const AlgMat& y) {
    x.check_same(y);
    AlgMat r = zero(x.alg, x.n);
    for (int i = 0; i < x.n; ++i)
      for (int k = 0; k < x.n; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < x.n; ++j)
          r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
      }
    return r;
  }
  friend bool operator==(const AlgMat& x, const AlgMat& y) {
    return x.n == y.n && x.entries == y.entries;
  }

  bool is_idempotent() const { return (*this) * (*this) == *this; }

  // collapse one algebra block into a plain matrix of size n * k_b
  Mat<S> flatten_block(int b) const {
    int k = alg->block_size(b);
    Mat<S> m(n * k, n * k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c)
            m.at(i * k + r, j * k + c) = at(i, j).blocks[size_t(b)].at(r, c);
    return m;
  }

  void unflatten_block(int b, const Mat<S>& m) {
    int k = alg->block_size(b);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c)
            at(i, j).blocks[size_t(b)].at(r, c) = m.at(i * k + r, j * k + c);
  }

  // inverse computed blockwise through the flattened representation
  AlgMat inverse() const {
    AlgMat r = zero(alg, n);
    for (int b = 0; b < alg->block_count(); ++b) {
      auto inv = flatten_block(b).inverse();
      if (!inv)
        fail_validation("matrix over the algebra is not invertible");
      r.unflatten_block(b, *inv);
    }
    return r;
  }

 private:
  void check_same(const AlgMat& o) const {
    if (alg.get() != o.alg.get() || n != o.n)
      fail_internal("mixed matrix-over-algebra shapes");
  }
};

// scalar 1 for a chain coefficient; for context-carrying scalars the unit is
// recovered from a nonzero factor entry
template <class S>
S chain_one_coeff(const AlgElem<S>&) {
  return ScalarLike<S>::one();
}
template <>
inline Cyclo chain_one_coeff<Cyclo>(const AlgElem<Cyclo>& sample) {
  for (const auto& blk : sample.blocks)
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j)
        if (!blk.at(i, j).is_zero())
          return Cyclo::from_rat(blk.at(i, j).context(), Rat(1));
  fail_internal("cannot recover a unit coefficient from a zero element");
}

// generalized trace: contract a tensor power of a matrix over the algebra
// along cyclically matched matrix indices
template <class S>
TensorChain<S> contract_cyclic(const std::vector<const AlgMat<S>*>& ms) {
  check_internal(!ms.empty(), "contraction needs at least one factor");
  int arity = int(ms.size());
  int n = ms[0]->n;
  TensorChain<S> out = TensorChain<S>::zero(ms[0]->alg, arity - 1);
  std::vector<int> idx(size_t(arity), 0);
  for (;;) {
    std::vector<AlgElem<S>> f;
    f.reserve(size_t(arity));
    bool dead = false;
    for (int p = 0; p < arity; ++p) {
      const AlgElem<S>& e = ms[size_t(p)]->at(idx[size_t(p)],
                                              idx[size_t((p + 1) % arity)]);
      if (e.is_zero()) { dead = true; break; }
      f.push_back(e);
    }
    if (!dead) {
      S unit = chain_one_coeff<S>(f[0]);  // read before f is moved from
      out.add_term(std::move(unit), std::move(f));
    }
    int p = 0;
    while (p < arity && ++idx[size_t(p)] == n) idx[size_t(p++)] = 0;
    if (p == arity) break;
  }
  return out.normalized();
}

// --- separable localization -------------------------------------------------

// idempotent e plus its complement; chains are reduced by inserting the
// orthogonal decomposition 1 = e + (1-e) across every tensor slot
template <class S>
struct SeparableContext {
  AlgElem<S> e;      // the idempotent
  AlgElem<S> ce;     // its complement 1 - e
  static SeparableContext make(AlgElem<S> e, const AlgElem<S>& one) {
    if (!(e * e == e))
      fail_validation("separable context needs an idempotent element");
    SeparableContext ctx{e, one - e};
    return ctx;
  }
};

template <class S>
TensorChain<S> s_normal_form(const TensorChain<S>& c,
                             const SeparableContext<S>& ctx) {
  TensorChain<S> out = TensorChain<S>::zero(c.alg, c.degree);
  int slots = c.degree + 1;
  for (const auto& t : c.terms) {
    for (long mask = 0; mask < (1L << slots); ++mask) {
      auto proj = [&](int slot) -> const AlgElem<S>& {
        return (mask >> (slot % slots)) & 1 ? ctx.e : ctx.ce;
      };
      std::vector<AlgElem<S>> f;
      f.reserve(size_t(slots));
      bool dead = false;
      for (int p = 0; p < slots; ++p) {
        // factor p sits between the projections at slots p-1 and p
        AlgElem<S> g =
            proj((p + slots - 1) % slots) * t.factors[size_t(p)] * proj(p);
        if (g.is_zero()) { dead = true; break; }
        f.push_back(std::move(g));
      }
      if (!dead) out.add_term(t.coeff, std::move(f));
    }
  }
  return out.normalized();
}

// --- Chern-type chains -------------------------------------------------------

// even-degree chain of an idempotent matrix: degree 2q, scaled by 1/q!
template <class S>
TensorChain<S> chern_even(const AlgMat<S>& p, int q) {
  require(q >= 0, "even chain needs q >= 0");
  if (!p.is_idempotent())
    fail_validation("even chain input must be idempotent");
  std::vector<const AlgMat<S>*> ms(size_t(2 * q + 1), &p);
  BigRat inv_fact(1);
  for (int i = 2; i <= q; ++i) inv_fact /= i;
  return contract_cyclic(ms).scaled_rat(inv_fact).normalized();
}

// odd-degree chain of an invertible matrix: degree 2q-1, alternating
// (u^{-1} - 1) and (u - 1) factors
template <class S>
TensorChain<S> chern_odd(const AlgMat<S>& u, int q) {
  require(q >= 1, "odd chain needs q >= 1");
  AlgMat<S> uinv = u.inverse();
  AlgMat<S> x = uinv - AlgMat<S>::one(u.alg, u.n);
  AlgMat<S> y = u - AlgMat<S>::one(u.alg, u.n);
  std::vector<const AlgMat<S>*> ms;
  for (int i = 0; i < q; ++i) {
    ms.push_back(&x);
    ms.push_back(&y);
  }
  BigRat c(1);
  for (int i = 2; i <= q - 1; ++i) c *= i;          // (q-1)!
  for (int i = 2; i <= 2 * q - 1; ++i) c /= i;      // / (2q-1)!
  if (q % 2 == 0) c = -c;                           // (-1)^{q-1}
  return contract_cyclic(ms).scaled_rat(c).normalized();
}

// residue chain of a remainder matrix R satisfying R^2 = R - (eR + Re),
// reduced to the separable normal form
template <class S>
TensorChain<S> chern_residue(const AlgMat<S>& R, const SeparableContext<S>& ctx,
                             int q) {
  require(q >= 0, "residue chain needs q >= 0");
  AlgMat<S> E = AlgMat<S>::zero(R.alg, R.n);
  for (int i = 0; i < R.n; ++i) E.at(i, i) = ctx.e;
  if (!(R * R == R - (E * R + R * E)))
    fail_validation(
        "residue chain input must satisfy the quadratic remainder identity");
  std::vector<const AlgMat<S>*> ms(size_t(2 * q + 1), &R);
  BigRat inv_fact(1);
  for (int i = 2; i <= q; ++i) inv_fact /= i;
  return s_normal_form(contract_cyclic(ms).scaled_rat(inv_fact), ctx)
      .normalized();
}

// --- support of a chain over a kernel algebra -------------------------------

enum class SupportMode { sum, max };
inline const char* support_mode_name(SupportMode m) {
  return m == SupportMode::sum ? "sum" : "max";
}

inline Radius radius_add(const Radius& a, const Radius& b) {
  if (a.infinite || b.infinite) return Radius::inf();
  return Radius::finite(a.value + b.value);
}

// reach of a chain: per term, combine the factor propagations (sum mode by
// default -- composition of kernels can move that far); max over terms
template <class S>
Radius chain_support_radius(const TensorChain<S>& c,
                            SupportMode mode = SupportMode::sum) {
  if (!c.alg->has_space())
    fail_validation("chain support needs an algebra with a space attached");
  Radius best = Radius::finite(BigRat(0));
  for (const auto& t : c.terms) {
    Radius r = Radius::finite(BigRat(0));
    for (const auto& f : t.factors) {
      Radius p = f.propagation();
      r = mode == SupportMode::sum ? radius_add(r, p)
                                   : (radius_le(p, r) ? r : p);
    }
    if (!radius_le(r, best)) best = r;
  }
  return best;
}

}  // namespace locind
