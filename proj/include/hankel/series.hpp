#pragma once

// Dense univariate polynomials over Z or Q and truncated power series over Q.

#include "hankel/bigint.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hankel {

inline constexpr long kNegInfDegree = std::numeric_limits<long>::min();

/// Coefficients stored lowest degree first, trailing zeros trimmed.
template <typename Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Polynomial monomial(const Coeff& a, std::size_t degree) {
    std::vector<Coeff> c(degree + 1);
    c[degree] = a;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return c_.empty() ? kNegInfDegree : static_cast<long>(c_.size()) - 1; }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }

  /// Order of vanishing at 0 (index of the first nonzero coefficient).
  std::size_t valuation() const {
    std::size_t s = 0;
    while (s < c_.size() && c_[s] == 0) ++s;
    return s;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<Coeff> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Polynomial(std::move(r));
  }
  Polynomial operator-(const Polynomial& o) const {
    std::vector<Coeff> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const {
    std::vector<Coeff> r(c_);
    for (auto& v : r) v = -v;
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Coeff> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial scaled(const Coeff& a) const {
    std::vector<Coeff> r(c_);
    for (auto& v : r) v *= a;
    return Polynomial(std::move(r));
  }

  /// p(x^k).
  Polynomial compose_power(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Coeff> r((c_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
    return Polynomial(std::move(r));
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Rational(c_[i]);
    return acc;
  }

  /// Sum of absolute values of coefficients with index >= from.
  Rational abs_sum(std::size_t from = 0) const {
    Rational s = 0;
    for (std::size_t i = from; i < c_.size(); ++i) s += abs(Rational(c_[i]));
    return s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      std::string coef = Coeff(c_[i]).get_str();
      bool neg = coef[0] == '-';
      if (neg) coef.erase(0, 1);
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (i == 0 || coef != "1") s += coef;
      if (i >= 1) s += (i == 0 || coef != "1") ? "*x" : "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Coeff> c_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
  return RatPoly(std::move(c));
}

/// Integer polynomial equal to p; throws if a coefficient is not integral.
inline IntPoly to_integer(const RatPoly& p) {
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) {
    if (q.get_den() != 1) throw InternalError("polynomial coefficient " + q.get_str() + " is not integral");
    c.push_back(q.get_num());
  }
  return IntPoly(std::move(c));
}

/// Quotient and remainder over Q.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& num, const RatPoly& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dd = d.size() - 1;
  if (rem.size() < d.size()) return {RatPoly{}, num};
  std::vector<Rational> quot(rem.size() - dd);
  for (std::size_t i = quot.size(); i-- > 0;) {
    Rational q = rem[i + dd] / d[dd];
    quot[i] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= q * d[j];
  }
  rem.resize(dd);
  return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
}

/// Exact quotient num / den in Z[x]; any remainder or non-integral quotient
/// coefficient is a consistency failure.
inline IntPoly divexact(const IntPoly& num, const IntPoly& den) {
  auto [q, r] = divmod(to_rational(num), to_rational(den));
  if (!r.is_zero()) throw InternalError("inexact polynomial division: remainder " + r.to_string());
  return to_integer(q);
}

/// Truncated power series c_0 + c_1 z + ... + c_{N-1} z^{N-1} + O(z^N).
class RatSeries {
 public:
  RatSeries() = default;
  explicit RatSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}
  explicit RatSeries(std::size_t order) : c_(order) {}

  template <typename T>
  static RatSeries from_terms(std::span<const T> terms) {
    std::vector<Rational> c;
    c.reserve(terms.size());
    for (const auto& t : terms) c.emplace_back(static_cast<long>(t));
    return RatSeries(std::move(c));
  }
  template <typename Coeff>
  static RatSeries from_poly(const Polynomial<Coeff>& p, std::size_t order) {
    RatSeries s(order);
    for (std::size_t i = 0; i < order && i < p.coeffs().size(); ++i) s.c_[i] = Rational(p.coeffs()[i]);
    return s;
  }

  std::size_t order() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_.at(i); }
  Rational& operator[](std::size_t i) { return c_.at(i); }
  const std::vector<Rational>& coeffs() const { return c_; }

  RatSeries truncated(std::size_t order) const {
    std::vector<Rational> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order, c_.size())));
    return RatSeries(std::move(c));
  }

  RatSeries operator+(const RatSeries& o) const {
    RatSeries r(std::min(order(), o.order()));
    for (std::size_t i = 0; i < r.order(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  RatSeries operator-(const RatSeries& o) const {
    RatSeries r(std::min(order(), o.order()));
    for (std::size_t i = 0; i < r.order(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  RatSeries operator*(const RatSeries& o) const {
    RatSeries r(std::min(order(), o.order()));
    for (std::size_t i = 0; i < r.order(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; i + j < r.order(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    return r;
  }

  /// 1/f to the same order; requires c_0 != 0.
  RatSeries reciprocal() const {
    if (c_.empty()) return {};
    if (c_[0] == 0) throw DomainError("series reciprocal: constant term is zero");
    RatSeries r(order());
    const Rational inv0 = 1 / c_[0];
    r.c_[0] = inv0;
    for (std::size_t n = 1; n < order(); ++n) {
      Rational acc = 0;
      for (std::size_t j = 1; j <= n; ++j)
        if (c_[j] != 0) acc += c_[j] * r.c_[n - j];
      r.c_[n] = -acc * inv0;
    }
    return r;
  }

  /// f(z^k), kept at the same order.
  RatSeries compose_power(std::size_t k) const {
    RatSeries r(order());
    for (std::size_t i = 0; i * k < order(); ++i) r.c_[i * k] = c_[i];
    return r;
  }

  friend bool operator==(const RatSeries&, const RatSeries&) = default;

 private:
  std::vector<Rational> c_;
};

/// P/Q as a series to the requested order; Q(0) != 0.
template <typename Coeff>
RatSeries series_of_ratio(const Polynomial<Coeff>& p, const Polynomial<Coeff>& q, std::size_t order) {
  return RatSeries::from_poly(p, order) * RatSeries::from_poly(q, order).reciprocal();
}

}  // namespace hankel
