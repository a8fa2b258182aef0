#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>

#include "locind/errors.hpp"

namespace locind {

using BigRat = mpq_class;
using Cplx = std::complex<double>;

inline std::string bigrat_to_string(const BigRat& q) {
  return q.get_str();
}

// Parses "p", "p/q", or a JSON-style decimal that happens to be dyadic-exact.
BigRat bigrat_from_string(const std::string& s);

inline BigRat bigrat_from_double(double d) {
  // doubles are dyadic rationals; mpq_class converts exactly
  BigRat q(d);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Rat: exact Gaussian rational a + b*i, a and b arbitrary-precision rationals.
// The exact coefficient scalar of the whole artifact.
// ---------------------------------------------------------------------------
struct Rat {
  BigRat re;
  BigRat im;

  Rat() : re(0), im(0) {}
  Rat(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  Rat(const BigRat& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Rat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}
  static Rat i() { return Rat(BigRat(0), BigRat(1)); }
  static Rat of(long num, long den) { return Rat(BigRat(num, den)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  Rat operator-() const { return Rat(-re, -im); }
  Rat& operator+=(const Rat& o) { re += o.re; im += o.im; return *this; }
  Rat& operator-=(const Rat& o) { re -= o.re; im -= o.im; return *this; }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

  Rat inv() const {
    if (is_zero()) fail_validation("division by zero scalar");
    BigRat n = re * re + im * im;
    return Rat(re / n, -im / n);
  }
  friend Rat operator/(const Rat& a, const Rat& b) { return a * b.inv(); }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  // total order for canonical map keys (not the field order)
  friend bool operator<(const Rat& a, const Rat& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return cmp(a.im, b.im) < 0;
  }

  Cplx to_complex() const { return Cplx(re.get_d(), im.get_d()); }
  double abs() const { return std::abs(to_complex()); }

  std::string to_string() const {
    if (im == 0) return bigrat_to_string(re);
    return bigrat_to_string(re) + (cmp(im, BigRat(0)) >= 0 ? "+" : "") +
           bigrat_to_string(im) + "i";
  }
};

// ---------------------------------------------------------------------------
// Scalar traits used by the generic matrix / chain code.
// ---------------------------------------------------------------------------
template <class S>
struct ScalarLike;

template <>
struct ScalarLike<Rat> {
  static Rat zero() { return Rat(); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& v) { return v.is_zero(); }
  static Rat inv(const Rat& v) { return v.inv(); }
  static Rat from_rat(const Rat& v) { return v; }
  static double abs(const Rat& v) { return v.abs(); }
  static bool is_exact() { return true; }
};

template <>
struct ScalarLike<Cplx> {
  static Cplx zero() { return Cplx(0.0, 0.0); }
  static Cplx one() { return Cplx(1.0, 0.0); }
  static bool is_zero(const Cplx& v) { return v == Cplx(0.0, 0.0); }
  static Cplx inv(const Cplx& v) {
    if (v == Cplx(0.0, 0.0)) fail_validation("division by zero scalar");
    return Cplx(1.0, 0.0) / v;
  }
  static Cplx from_rat(const Rat& v) { return v.to_complex(); }
  static double abs(const Cplx& v) { return std::abs(v); }
  static bool is_exact() { return false; }
};

// canonical ordering used for map keys; complex doubles (no built-in <)
// compare lexicographically by (re, im)
template <class S>
bool scalar_order_less(const S& a, const S& b) {
  return a < b;
}
inline bool scalar_order_less(const Cplx& a, const Cplx& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

enum class ScalarKind { rational, floating };

inline const char* scalar_kind_name(ScalarKind k) {
  return k == ScalarKind::rational ? "rational" : "float";
}

}  // namespace locind
