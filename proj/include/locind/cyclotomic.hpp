#pragma once

#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "locind/scalar.hpp"

namespace locind {

// ---------------------------------------------------------------------------
// Exact arithmetic in the cyclotomic field Q(zeta_M).  Elements are rational
// coordinate vectors in the power basis 1, x, ..., x^{deg-1} modulo the M-th
// cyclotomic polynomial.  Used for exact discrete Fourier transforms on circle
// spaces; M is always a multiple of 4 so that i = zeta^{M/4} lives here and
// Gaussian rationals embed.
// ---------------------------------------------------------------------------

namespace poly {

using Poly = std::vector<BigRat>;  // coefficient list, low degree first

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, BigRat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// division by a monic polynomial; returns {quotient, remainder}
inline std::pair<Poly, Poly> divmod_monic(Poly num, const Poly& den) {
  Poly q;
  if (den.empty() || den.back() != 1)
    fail_internal("divmod_monic: divisor must be monic");
  if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, BigRat(0));
  while (num.size() >= den.size()) {
    BigRat lead = num.back();
    size_t shift = num.size() - den.size();
    q[shift] = lead;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= lead * den[i];
    trim(num);
    if (!num.empty() && num.size() >= den.size() && num.back() == 0) trim(num);
  }
  trim(q);
  return {q, num};
}

// M-th cyclotomic polynomial: (x^M - 1) / prod of Phi_d over proper divisors d
Poly cyclotomic(int M);

}  // namespace poly

class CycloContext {
 public:
  int conductor = 0;  // M, a multiple of 4
  int degree = 0;     // deg Phi_M
  poly::Poly phi;
  std::vector<std::vector<BigRat>> zpow;  // x^j mod Phi_M, j in [0, M)

  static std::shared_ptr<const CycloContext> make(int M);

  // context for exact DFT on an N-point circle: M = lcm(4, N)
  static std::shared_ptr<const CycloContext> for_circle(int N) {
    return make(static_cast<int>(std::lcm(4, N)));
  }
};

class Cyclo {
 public:
  Cyclo() = default;  // exact zero, no context

  static Cyclo zero() { return Cyclo(); }

  static Cyclo from_coords(std::shared_ptr<const CycloContext> ctx,
                           std::vector<BigRat> c) {
    Cyclo v;
    v.ctx_ = std::move(ctx);
    c.resize(v.ctx_->degree, BigRat(0));
    v.c_ = std::move(c);
    v.drop_if_zero();
    return v;
  }

  static Cyclo from_rat(const std::shared_ptr<const CycloContext>& ctx,
                        const Rat& r) {
    std::vector<BigRat> c(ctx->degree, BigRat(0));
    c[0] = r.re;
    Cyclo v = from_coords(ctx, std::move(c));
    if (r.im != 0) {
      Cyclo iz = zeta(ctx, ctx->conductor / 4);
      Cyclo imag = iz.scaled(r.im);
      v = v + imag;
    }
    return v;
  }

  static Cyclo zeta(const std::shared_ptr<const CycloContext>& ctx, long k) {
    long M = ctx->conductor;
    long j = ((k % M) + M) % M;
    return from_coords(ctx, ctx->zpow[static_cast<size_t>(j)]);
  }

  bool is_zero() const { return ctx_ == nullptr; }
  const std::shared_ptr<const CycloContext>& context() const { return ctx_; }

  Cyclo operator-() const {
    if (is_zero()) return *this;
    Cyclo v = *this;
    for (auto& x : v.c_) x = -x;
    return v;
  }

  friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    a.check_same(b);
    Cyclo v = a;
    for (int i = 0; i < a.ctx_->degree; ++i) v.c_[i] += b.c_[i];
    v.drop_if_zero();
    return v;
  }

  friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero() || b.is_zero()) return Cyclo();
    a.check_same(b);
    const auto& ctx = *a.ctx_;
    poly::Poly prod = poly::mul(a.c_, b.c_);
    poly::Poly rem = poly::divmod_monic(std::move(prod), ctx.phi).second;
    return from_coords(a.ctx_, std::move(rem));
  }

  Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
  Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
  Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }

  Cyclo scaled(const BigRat& r) const {
    if (is_zero() || r == 0) return Cyclo();
    Cyclo v = *this;
    for (auto& x : v.c_) x *= r;
    return v;
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.is_zero() || b.is_zero()) return false;
    a.check_same(b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  friend bool operator<(const Cyclo& a, const Cyclo& b) {
    if (a.is_zero() != b.is_zero()) return a.is_zero();
    if (a.is_zero()) return false;
    a.check_same(b);
    for (int i = 0; i < a.ctx_->degree; ++i) {
      int c = cmp(a.c_[i], b.c_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  // rational iff all power-basis coordinates above the constant vanish
  std::optional<BigRat> as_bigrat() const {
    if (is_zero()) return BigRat(0);
    for (int i = 1; i < ctx_->degree; ++i)
      if (c_[i] != 0) return std::nullopt;
    return c_[0];
  }

  // Gaussian rational iff the value equals c0 + c_{M/4} * zeta^{M/4}
  std::optional<Rat> as_gaussian() const {
    if (is_zero()) return Rat();
    int q = ctx_->conductor / 4;
    if (q >= ctx_->degree) return std::nullopt;
    Rat cand(c_[0], c_[q]);
    if (*this == from_rat(ctx_, cand)) return cand;
    return std::nullopt;
  }

  Cplx to_complex() const {
    if (is_zero()) return Cplx(0.0, 0.0);
    Cplx z(0.0, 0.0);
    double step = 2.0 * 3.14159265358979323846 / ctx_->conductor;
    for (int i = 0; i < ctx_->degree; ++i) {
      if (c_[i] == 0) continue;
      z += c_[i].get_d() * Cplx(std::cos(step * i), std::sin(step * i));
    }
    return z;
  }

 private:
  std::shared_ptr<const CycloContext> ctx_;
  std::vector<BigRat> c_;

  void check_same(const Cyclo& o) const {
    if (ctx_->conductor != o.ctx_->conductor)
      fail_internal("mixed cyclotomic contexts");
  }
  void drop_if_zero() {
    for (const auto& x : c_)
      if (x != 0) return;
    ctx_.reset();
    c_.clear();
  }
};

template <>
struct ScalarLike<Cyclo> {
  static Cyclo zero() { return Cyclo(); }
  static bool is_zero(const Cyclo& v) { return v.is_zero(); }
  static Cyclo from_rat(const Rat&) {
    fail_internal("cyclotomic scalar needs a context for embedding");
  }
  static double abs(const Cyclo& v) { return std::abs(v.to_complex()); }
  static bool is_exact() { return true; }
};

}  // namespace locind
