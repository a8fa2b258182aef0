#pragma once

#include <map>
#include <optional>
#include <string>

#include "locind/scalar.hpp"

namespace locind {

// Laurent polynomial over the Gaussian rationals, sparse in the exponent.
struct LaurentPoly {
  std::map<int, Rat> coeffs;  // exponent -> coefficient, zeros pruned

  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return monomial(0, Rat(1)); }
  static LaurentPoly monomial(int power, Rat c) {
    LaurentPoly p;
    if (!c.is_zero()) p.coeffs[power] = std::move(c);
    return p;
  }

  bool is_zero() const { return coeffs.empty(); }
  Rat coeff(int power) const {
    auto it = coeffs.find(power);
    return it == coeffs.end() ? Rat() : it->second;
  }
  int min_power() const { return is_zero() ? 0 : coeffs.begin()->first; }
  int max_power() const { return is_zero() ? 0 : coeffs.rbegin()->first; }

  void prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = it->second.is_zero() ? coeffs.erase(it) : ++it;
  }

  // single-term symbols c * z^w get exact treatment downstream
  std::optional<std::pair<int, Rat>> as_monomial() const {
    if (coeffs.size() != 1) return std::nullopt;
    return std::make_pair(coeffs.begin()->first, coeffs.begin()->second);
  }

  LaurentPoly operator-() const {
    LaurentPoly out(*this);
    for (auto& [k, c] : out.coeffs) c = -c;
    return out;
  }
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a);
    for (const auto& [k, c] : b.coeffs) {
      auto [it, fresh] = out.coeffs.try_emplace(k, c);
      if (!fresh) it->second += c;
    }
    out.prune();
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return a + (-b);
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ka, ca] : a.coeffs)
      for (const auto& [kb, cb] : b.coeffs) {
        auto [it, fresh] = out.coeffs.try_emplace(ka + kb, ca * cb);
        if (!fresh) it->second += ca * cb;
      }
    out.prune();
    return out;
  }
  LaurentPoly scaled(const Rat& c) const {
    LaurentPoly out;
    for (const auto& [k, v] : coeffs) {
      Rat cv = v * c;
      if (!cv.is_zero()) out.coeffs[k] = cv;
    }
    return out;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs == b.coeffs;
  }

  // z -> 1/z, used by the cross-term correction in operator products
  LaurentPoly flipped() const {
    LaurentPoly out;
    for (const auto& [k, c] : coeffs) out.coeffs[-k] = c;
    return out;
  }

  Cplx eval(const Cplx& z) const {
    Cplx acc(0.0, 0.0);
    for (const auto& [k, c] : coeffs) acc += c.to_complex() * std::pow(z, k);
    return acc;
  }

  double sup_norm_on_circle(int samples) const {
    double best = 0.0;
    for (int s = 0; s < samples; ++s) {
      double theta = 2.0 * 3.14159265358979323846 * s / samples;
      best = std::max(best, std::abs(eval(std::polar(1.0, theta))));
    }
    return best;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [k, c] : coeffs) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      if (k != 0) s += "*z^" + std::to_string(k);
    }
    return s;
  }
};

}  // namespace locind
