#pragma once

// [k-1/k] Pade approximants of exact rational power series and the check of
//   f(z) - P(z)/Q(z) = (H_{k+1}/H_k) z^{2k} + O(z^{2k+1}).

#include "hankel/bigint.hpp"
#include "hankel/linalg.hpp"
#include "hankel/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hankel {

namespace detail {

inline Integer common_denominator(const std::vector<Rational>& v, std::size_t from, std::size_t to) {
  Integer d = 1;
  for (std::size_t i = from; i < to && i < v.size(); ++i) d = lcm(d, v[i].get_den());
  return d;
}

// Fraction-free forward elimination on [M | rhs] followed by rational back
// substitution. Throws DegenerateOrderError when M is singular.
inline std::vector<Rational> solve_exact(IntMatrix m, std::vector<Integer> rhs, std::size_t order_for_error) {
  const std::size_t n = m.rows();
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) throw DegenerateOrderError("linear system is singular", order_for_error);
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
      std::swap(rhs[k], rhs[p]);
    }
    const Integer pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Integer lead = m(i, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * pivot - lead * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      rhs[i] = rhs[i] * pivot - lead * rhs[k];
      mpz_divexact(rhs[i].get_mpz_t(), rhs[i].get_mpz_t(), prev.get_mpz_t());
      m(i, k) = 0;
    }
    prev = pivot;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(rhs[i]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(m(i, j)) * x[j];
    x[i] = acc / Rational(m(i, i));
  }
  return x;
}

}  // namespace detail

/// Determinant of the k x k matrix with entry (i, j) = c_{i+j}.
inline Rational hankel_of_series(const RatSeries& f, std::size_t k) {
  if (k == 0) return 1;
  if (f.order() < 2 * k - 1) throw LengthError("hankel_of_series: series order too small", 2 * k - 1);
  const Integer den = detail::common_denominator(f.coeffs(), 0, 2 * k - 1);
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Rational scaled = f[i + j] * Rational(den);
      m(i, j) = scaled.get_num();
    }
  return make_rational(det_exact(m), pow_int(den, k));
}

struct PadeApproximant {
  std::size_t k = 0;
  RatPoly P;       // deg <= k-1
  RatPoly Q;       // deg <= k, Q(0) = 1
  Rational h;      // coefficient of z^{2k} in f - P/Q
  Rational H_k;
  Rational H_k1;   // H_{k+1}
  bool degenerate = false;  // h == 0: the error starts at z^{2k+1} or later

  /// P and Q scaled by the lcm of all coefficient denominators; Q(0) > 0.
  std::pair<IntPoly, IntPoly> integer_cleared() const {
    Integer d = 1;
    for (const auto& c : P.coeffs()) d = lcm(d, c.get_den());
    for (const auto& c : Q.coeffs()) d = lcm(d, c.get_den());
    return {to_integer(P.scaled(Rational(d))), to_integer(Q.scaled(Rational(d)))};
  }
};

/// [k-1/k] approximant with Q(0) = 1. Requires order >= 2k+2 and H_k != 0.
inline PadeApproximant pade(const RatSeries& f, std::size_t k) {
  if (k == 0) throw PreconditionError("pade: k must be at least 1");
  if (f.order() < 2 * k + 2) throw LengthError("pade: series order too small", 2 * k + 2);
  PadeApproximant ap;
  ap.k = k;
  ap.H_k = hankel_of_series(f, k);
  if (ap.H_k == 0) throw DegenerateOrderError("pade: H_" + std::to_string(k) + " = 0, the [k-1/k] approximant does not exist", k);
  ap.H_k1 = hankel_of_series(f, k + 1);

  // Contact conditions on z^k .. z^{2k-1}: sum_{j=1..k} q_j c_{k+r-j} = -c_{k+r}.
  const Integer den = detail::common_denominator(f.coeffs(), 0, 2 * k);
  IntMatrix m(k, k);
  std::vector<Integer> rhs(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 1; j <= k; ++j) {
      Rational v = f[k + r - j] * Rational(den);
      m(r, j - 1) = v.get_num();
    }
    Rational v = -f[k + r] * Rational(den);
    rhs[r] = v.get_num();
  }
  const std::vector<Rational> q = detail::solve_exact(std::move(m), std::move(rhs), k);
  std::vector<Rational> qc(k + 1);
  qc[0] = 1;
  for (std::size_t j = 1; j <= k; ++j) qc[j] = q[j - 1];
  ap.Q = RatPoly(qc);

  std::vector<Rational> pc(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) pc[i] += qc[j] * f[i - j];
  ap.P = RatPoly(pc);

  const RatSeries err = f.truncated(2 * k + 1) - series_of_ratio(ap.P, ap.Q, 2 * k + 1);
  ap.h = err[2 * k];
  ap.degenerate = ap.h == 0;
  if (ap.h != ap.H_k1 / ap.H_k)
    throw InternalError("pade: leading error coefficient " + ap.h.get_str() + " differs from H_{k+1}/H_k = " + Rational(ap.H_k1 / ap.H_k).get_str());
  return ap;
}

struct ErrorExpansionReport {
  std::size_t k = 0;
  std::vector<Rational> coefficients;  // z^0 .. z^{2k} of f - P/Q
  bool contact_ok = false;             // z^0 .. z^{2k-1} vanish
  std::optional<Rational> expected_h;  // H_{k+1}/H_k when H_k != 0
  std::optional<bool> leading_ok;
  std::optional<std::size_t> first_nonzero_below_2k;
  bool pass() const { return contact_ok && leading_ok.value_or(true); }
};

/// Expand f - P/Q exactly through z^{2k} and compare with the Hankel ratio.
inline ErrorExpansionReport verify_error_expansion(const RatSeries& f, const PadeApproximant& ap) {
  const std::size_t k = ap.k;
  if (f.order() < 2 * k + 2) throw LengthError("verify_error_expansion: series order too small", 2 * k + 2);
  ErrorExpansionReport rep;
  rep.k = k;
  const RatSeries err = f.truncated(2 * k + 1) - series_of_ratio(ap.P, ap.Q, 2 * k + 1);
  rep.coefficients = err.coeffs();
  rep.contact_ok = true;
  for (std::size_t i = 0; i < 2 * k; ++i)
    if (err[i] != 0) {
      rep.contact_ok = false;
      rep.first_nonzero_below_2k = i;
      break;
    }
  const Rational hk = hankel_of_series(f, k);
  if (hk != 0) {
    rep.expected_h = hankel_of_series(f, k + 1) / hk;
    rep.leading_ok = err[2 * k] == *rep.expected_h;
  }
  return rep;
}

}  // namespace hankel
