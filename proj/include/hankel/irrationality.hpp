#pragma once

// Rational approximations to xi = f(1/b) built from Pade approximants and the
// iterated functional equation, rigorous error brackets, and the exponent
// bound calculators.

#include "hankel/bigint.hpp"
#include "hankel/linalg.hpp"
#include "hankel/pade.hpp"
#include "hankel/sequences.hpp"
#include "hankel/series.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hankel {

// ---------------------------------------------------------------------------
// Functional equation iteration.

/// Coefficients of the unique power series solution of f = A/B + C f(x^k).
/// Needs C(0) != 1 so that f_0 is determined.
inline RatSeries series_from_equation(const FunctionalEquation& fe, std::size_t order) {
  fe.validate();
  if (fe.C[0] == 1) throw PreconditionError("series_from_equation: C(0) = 1 leaves f(0) undetermined");
  const RatSeries g = series_of_ratio(fe.A, fe.B, order);
  RatSeries f(order);
  if (order == 0) return f;
  f[0] = g[0] / (1 - Rational(fe.C[0]));
  for (std::size_t n = 1; n < order; ++n) {
    Rational acc = g[n];
    const auto& c = fe.C.coeffs();
    for (std::size_t i = 0; i < c.size() && i <= n; ++i)
      if (c[i] != 0 && (n - i) % fe.k == 0) acc += Rational(c[i]) * f[(n - i) / fe.k];
    f[n] = acc;
  }
  return f;
}

struct IteratedEquation {
  std::size_t m = 0;
  std::size_t k = 2;
  IntPoly A;  // A_m
  IntPoly B;  // B_m = prod_{j<m} B(x^{k^j})
  IntPoly C;  // C_m = prod_{j<m} C(x^{k^j})
};

inline unsigned long checked_pow(std::size_t k, std::size_t m) {
  unsigned long r = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (r > (1ul << 40) / k) throw DomainError("k^m too large for this computation");
    r *= k;
  }
  return r;
}

/// f = A_m/B_m + C_m f(x^{k^m}). The identity is re-checked coefficientwise
/// through `check_order` (0 skips the series check; degree bounds always run).
inline IteratedEquation iterate_equation(const FunctionalEquation& fe, std::size_t m, std::size_t check_order = 256) {
  fe.validate();
  if (m == 0) throw PreconditionError("iterate_equation: m must be at least 1");
  const std::size_t k = fe.k;
  const unsigned long km = checked_pow(k, m);

  IteratedEquation it;
  it.m = m;
  it.k = k;
  std::vector<IntPoly> Bj, Cj;  // B(x^{k^j}), C(x^{k^j})
  IntPoly Bm{1}, Cm{1};
  for (std::size_t j = 0; j < m; ++j) {
    const unsigned long kj = checked_pow(k, j);
    Bj.push_back(fe.B.compose_power(kj));
    Cj.push_back(fe.C.compose_power(kj));
    Bm = Bm * Bj.back();
    Cm = Cm * Cj.back();
  }
  IntPoly Am;
  IntPoly Cprefix{1};  // prod_{i<j} C(x^{k^i})
  for (std::size_t j = 0; j < m; ++j) {
    const IntPoly Aj = fe.A.compose_power(checked_pow(k, j));
    Am = Am + Cprefix * Aj * divexact(Bm, Bj[j]);
    Cprefix = Cprefix * Cj[j];
  }
  it.A = std::move(Am);
  it.B = std::move(Bm);
  it.C = std::move(Cm);

  const long a = fe.alpha(), be = fe.beta(), ga = fe.gamma();
  auto over = [&](const IntPoly& p, long bound) { return !p.is_zero() && p.degree() > bound; };
  if (over(it.A, (a + be + ga) * static_cast<long>(km))) throw InternalError("iterate_equation: deg A_m exceeds (alpha+beta+gamma) k^m");
  if (over(it.B, be * static_cast<long>(km))) throw InternalError("iterate_equation: deg B_m exceeds beta k^m");
  if (over(it.C, ga * static_cast<long>(km))) throw InternalError("iterate_equation: deg C_m exceeds gamma k^m");

  if (check_order > 0) {
    const RatSeries f = series_from_equation(fe, check_order);
    const RatSeries rhs = series_of_ratio(it.A, it.B, check_order) + RatSeries::from_poly(it.C, check_order) * f.compose_power(km);
    if (!(rhs == f)) throw InternalError("iterate_equation: iterated identity fails coefficientwise");
  }
  return it;
}

// ---------------------------------------------------------------------------
// Convergents p_{l,m} / q_{l,m}.

inline std::size_t y_index(const FunctionalEquation& fe, std::size_t l) {
  return static_cast<std::size_t>(fe.alpha() + fe.beta() + fe.gamma()) + l;
}

enum class SandwichStatus { NotComputed, NotApplicable, Pass, Fail };

inline const char* sandwich_status_name(SandwichStatus s) {
  switch (s) {
    case SandwichStatus::NotComputed: return "not-computed";
    case SandwichStatus::NotApplicable: return "not-applicable";
    case SandwichStatus::Pass: return "pass";
    case SandwichStatus::Fail: return "fail";
  }
  return "unknown";
}

struct ApproximationRecord {
  std::size_t l = 0;
  std::size_t m = 0;
  Integer b;
  std::size_t N = 0;  // Y_l k^m
  IntPoly P_lm;
  IntPoly Q_lm;
  Integer p;  // unreduced, the primary pair
  Integer q;
  Integer p_reduced;
  Integer q_reduced;

  // Filled by error_bracket.
  std::size_t E = 0;  // 2l k^m + s (k^m - 1)/(k - 1)
  std::optional<Rational> err_lo;
  std::optional<Rational> err_hi;
  std::size_t tail_at = 0;
  std::size_t m0 = 0;
  Rational sandwich_lo;
  Rational sandwich_hi;
  SandwichStatus sandwich = SandwichStatus::NotComputed;

  /// q / b^N = Q_{l,m}(1/b).
  Rational denominator_ratio() const { return make_rational(q, pow_int(b, N)); }
};

/// p = b^N P_{l,m}(1/b), q = b^N Q_{l,m}(1/b) with N = Y_l k^m, where
///   P_{l,m} = A_m Q_l(x^{k^m}) + B_m C_m P_l(x^{k^m}),  Q_{l,m} = B_m Q_l(x^{k^m})
/// and P_l, Q_l are the integer-cleared approximant polynomials.
inline ApproximationRecord build_convergent(const FunctionalEquation& fe, const PadeApproximant& ap, std::size_t m, const Integer& b,
                                            const IteratedEquation* pre_iterated = nullptr) {
  if (b < 2) throw PreconditionError("build_convergent: base must be at least 2");
  if (m == 0) throw PreconditionError("build_convergent: m must be at least 1");
  if (ap.h == 0) throw PreconditionError("build_convergent: approximant has h = 0");
  const IteratedEquation it = pre_iterated ? *pre_iterated : iterate_equation(fe, m, 0);
  if (it.m != m || it.k != fe.k) throw PreconditionError("build_convergent: iterated equation does not match m");

  const unsigned long km = checked_pow(fe.k, m);
  const auto [Pl, Ql] = ap.integer_cleared();
  const IntPoly Plk = Pl.compose_power(km), Qlk = Ql.compose_power(km);

  ApproximationRecord rec;
  rec.l = ap.k;
  rec.m = m;
  rec.b = b;
  rec.N = y_index(fe, ap.k) * km;
  rec.P_lm = it.A * Qlk + it.B * it.C * Plk;
  rec.Q_lm = it.B * Qlk;
  if (rec.P_lm.degree() > static_cast<long>(rec.N)) throw InternalError("build_convergent: deg P_{l,m} exceeds Y_l k^m");
  if (rec.Q_lm.degree() > (fe.beta() + static_cast<long>(ap.k)) * static_cast<long>(km))
    throw InternalError("build_convergent: deg Q_{l,m} exceeds (beta+l) k^m");

  // b^N * poly(1/b) = sum c_i b^{N-i}, Horner starting from c_0.
  auto scaled_eval = [&](const IntPoly& poly) {
    Integer acc = 0;
    for (std::size_t i = 0; i <= rec.N; ++i) acc = acc * b + poly[i];
    return acc;
  };
  rec.p = scaled_eval(rec.P_lm);
  rec.q = scaled_eval(rec.Q_lm);
  if (rec.q == 0) throw DomainError("build_convergent: Q_{l,m}(1/b) = 0");
  if (rec.q < 0) {
    rec.p = -rec.p;
    rec.q = -rec.q;
  }
  const Integer g = gcd(rec.p, rec.q);
  rec.p_reduced = rec.p / g;
  rec.q_reduced = rec.q / g;
  return rec;
}

struct ComposedErrorCheck {
  bool identity_holds = false;  // f - P_{l,m}/Q_{l,m} == C_m (f - P_l/Q_l)(x^{k^m})
  bool valuation_ok = false;    // first nonzero coefficient sits at E with value h * lowest(C_m)
  std::size_t order = 0;
};

/// Series-level consistency of a convergent with the composed Pade error.
inline ComposedErrorCheck composed_error_check(const FunctionalEquation& fe, const PadeApproximant& ap, const ApproximationRecord& rec,
                                               std::size_t order) {
  const RatSeries f = series_from_equation(fe, order);
  const unsigned long km = checked_pow(fe.k, rec.m);
  const IteratedEquation it = iterate_equation(fe, rec.m, 0);
  const RatSeries lhs = f - series_of_ratio(rec.P_lm, rec.Q_lm, order);
  const RatSeries inner = f - series_of_ratio(ap.P, ap.Q, order);
  const RatSeries rhs = RatSeries::from_poly(it.C, order) * inner.compose_power(km);
  ComposedErrorCheck out;
  out.order = order;
  out.identity_holds = lhs == rhs;
  const std::size_t E = 2 * ap.k * km + it.C.valuation();
  if (E < order) {
    out.valuation_ok = lhs[E] == ap.h * Rational(it.C[it.C.valuation()]);
    for (std::size_t i = 0; i < E && out.valuation_ok; ++i) out.valuation_ok = lhs[i] == 0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enclosures of xi = f(1/b).

struct XiEnclosure {
  Rational lo;
  Rational hi;
  std::size_t tail_at = 0;
  Rational width() const { return hi - lo; }
};

/// Largest |term| the tail bound may assume; the coding is finite so this is
/// a true bound for the whole infinite sequence.
inline Term term_bound(const SequenceSpec& spec) {
  switch (spec.kind) {
    case SequenceKind::PaperfoldingClosed:
    case SequenceKind::PaperfoldingMorphic:
    case SequenceKind::ThueMorsePm1:
    case SequenceKind::Cantor: return 1;
    case SequenceKind::CustomMorphic: {
      Term mx = 0;
      for (const auto& [c, v] : spec.custom->coding) mx = std::max<Term>(mx, v < 0 ? -v : v);
      return mx;
    }
  }
  return 0;
}

/// lo = sum_{i<t} f_i b^{-i}, hi = lo + b^{-t} b/(b-1). Terms must be 0 or 1.
inline XiEnclosure xi_enclosure(std::span<const Term> terms, const Integer& b, std::size_t tail_at) {
  if (b < 2) throw PreconditionError("xi_enclosure: base must be at least 2");
  if (tail_at == 0) throw PreconditionError("xi_enclosure: tail_at must be at least 1");
  if (terms.size() < tail_at) throw LengthError("xi_enclosure: prefix too short", tail_at);
  Integer num = 0;
  for (std::size_t i = 0; i < tail_at; ++i) {
    if (terms[i] != 0 && terms[i] != 1) throw DomainError("xi_enclosure: term outside {0,1} at index " + std::to_string(i));
    num = num * b + terms[i];
  }
  const Integer scale = pow_int(b, tail_at - 1);
  XiEnclosure x;
  x.tail_at = tail_at;
  x.lo = make_rational(num, scale);
  x.hi = x.lo + make_rational(1, scale * (b - 1));
  return x;
}

/// Keeps the tightest enclosure per base. Any stored enclosure stays valid,
/// so readers never see a wrong interval while another thread refines.
class XiEnclosureCache {
 public:
  explicit XiEnclosureCache(SequenceSpec spec) : prefixes_(std::move(spec)) {}

  XiEnclosure get(const Integer& b, std::size_t tail_at) const {
    const std::string key = b.get_str();
    {
      std::lock_guard lock(mu_);
      auto it = best_.find(key);
      if (it != best_.end() && it->second.tail_at >= tail_at) return it->second;
    }
    const Sequence terms = prefixes_.get(tail_at);
    XiEnclosure x = xi_enclosure(terms, b, tail_at);
    std::lock_guard lock(mu_);
    auto& slot = best_[key];
    if (slot.tail_at < x.tail_at) slot = x;
    return slot;
  }
  const PrefixCache& prefixes() const { return prefixes_; }

 private:
  PrefixCache prefixes_;
  mutable std::mutex mu_;
  mutable std::map<std::string, XiEnclosure> best_;
};

// ---------------------------------------------------------------------------
// The threshold m0(l).

struct ThresholdInfo {
  std::size_t m0 = 0;
  Rational c_bound;            // c(l) valid for 0 < y <= 2^{-k^{m0}}
  std::size_t exact_order = 0; // error-series coefficients used exactly
};

/// Upper bound for sup |R(y)| / y^{2l+1} on 0 < y <= ymax, where
///   f(y) - P_l(y)/Q_l(y) = h y^{2l} + R(y).
/// With W = fQ - P, the numerator of R is sum_{i>2l} (w_i - h q_{i-2l}) y^i;
/// coefficients below `order` are exact, the rest are bounded by
/// T ||Q||_1 + |h| max|q_j| with T bounding |f_i|. Returns nullopt when the
/// lower bound 1 - sum_{j>=1} |q_j| ymax^j for |Q| is not positive.
inline std::optional<Rational> remainder_constant(std::span<const Term> terms, Term T, const PadeApproximant& ap, const Rational& ymax,
                                                  std::size_t order) {
  const std::size_t l = ap.k;
  if (order <= 2 * l + 1) throw PreconditionError("remainder_constant: order must exceed 2l+1");
  if (terms.size() < order) throw LengthError("remainder_constant: prefix too short", order);
  const auto& q = ap.Q.coeffs();
  Rational qmax = 0;
  for (const auto& c : q) qmax = std::max(qmax, Rational(abs(c)));
  const Rational K = Rational(T) * ap.Q.abs_sum() + abs(ap.h) * qmax;

  Rational num = 0, ypow = 1;
  for (std::size_t i = 2 * l + 1; i < order; ++i) {
    Rational w = 0;
    for (std::size_t j = 0; j < q.size() && j <= i; ++j) w += q[j] * Rational(terms[i - j]);
    const Rational n_i = w - ap.h * ap.Q[i - 2 * l];
    num += abs(n_i) * ypow;
    ypow *= ymax;
  }
  num += K * ypow / (1 - ymax);

  Rational den = 1, yj = 1;
  for (std::size_t j = 1; j < q.size(); ++j) {
    yj *= ymax;
    den -= abs(q[j]) * yj;
  }
  if (den <= 0) return std::nullopt;
  return num / den;
}

/// Least m with c(l; 2^{-k^m}) 2^{-k^m} <= |h|/2.
inline ThresholdInfo threshold_m0(const PrefixCache& seq, const FunctionalEquation& fe, const PadeApproximant& ap,
                                  std::size_t extra_order = 64, std::size_t m_limit = 24) {
  if (ap.h == 0) throw PreconditionError("threshold_m0: approximant has h = 0");
  const std::size_t order = 2 * ap.k + 1 + extra_order;
  const Sequence terms = seq.get(order);
  const Term T = term_bound(seq.spec());
  for (std::size_t m = 1; m <= m_limit; ++m) {
    const unsigned long km = checked_pow(fe.k, m);
    const Rational y = make_rational(1, pow_int(2, km));
    const auto c = remainder_constant(terms, T, ap, y, order);
    if (c && *c * y <= abs(ap.h) / 2) return {m, *c, order};
  }
  throw PrecisionExhausted("threshold_m0: no m <= " + std::to_string(m_limit) + " satisfies the threshold");
}

// ---------------------------------------------------------------------------
// Error brackets.

struct BracketOptions {
  std::size_t guard = 16;     // require width <= err_lo / b^guard
  std::size_t max_tail = 0;   // 0: 8E + 4096
  std::size_t extra_order = 64;
};

/// Brackets |xi - p/q| exactly and compares it with
///   [ |h|/2 zeta^m b^{-E},  3 |h| eta^m b^{-E} ],   E = 2l k^m + s (k^m-1)/(k-1).
/// Below m0 the comparison is recorded as not applicable.
inline void error_bracket(ApproximationRecord& rec, const FunctionalEquation& fe, const PadeApproximant& ap, const XiEnclosureCache& xi,
                          const std::optional<ThresholdInfo>& threshold = std::nullopt, const BracketOptions& opt = {}) {
  if (ap.h == 0) throw PreconditionError("error_bracket: h = 0, the lower error bound does not exist");
  if (ap.k != rec.l) throw PreconditionError("error_bracket: approximant order does not match the record");
  const unsigned long km = checked_pow(fe.k, rec.m);
  rec.E = 2 * rec.l * km + fe.s() * (km - 1) / (fe.k - 1);
  const Rational xE = make_rational(1, pow_int(rec.b, rec.E));
  const Rational zeta = fe.zeta(rec.b);
  const Rational eta(fe.eta());
  rec.sandwich_lo = abs(ap.h) / 2 * pow_rat(zeta, rec.m) * xE;
  rec.sandwich_hi = 3 * abs(ap.h) * pow_rat(eta, rec.m) * xE;

  const Rational r = make_rational(rec.p, rec.q);
  const std::size_t max_tail = opt.max_tail ? opt.max_tail : 8 * rec.E + 4096;
  std::size_t t = rec.E + opt.guard + 8;
  const Rational guard = make_rational(1, pow_int(rec.b, opt.guard));
  for (;;) {
    if (t > max_tail)
      throw PrecisionExhausted("error_bracket: |xi - p/q| not separated from 0 with tail_at <= " + std::to_string(max_tail) +
                               "; raise the tail limit");
    const XiEnclosure x = xi.get(rec.b, t);
    std::optional<Rational> lo, hi;
    if (r < x.lo) {
      lo = x.lo - r;
      hi = x.hi - r;
    } else if (r > x.hi) {
      lo = r - x.hi;
      hi = r - x.lo;
    }
    if (lo && x.width() <= *lo * guard) {
      rec.err_lo = *lo;
      rec.err_hi = *hi;
      rec.tail_at = x.tail_at;
      break;
    }
    t += t / 2 + 16;
  }

  const ThresholdInfo th = threshold ? *threshold : threshold_m0(xi.prefixes(), fe, ap, opt.extra_order);
  rec.m0 = th.m0;
  if (rec.m < th.m0)
    rec.sandwich = SandwichStatus::NotApplicable;
  else
    rec.sandwich = (*rec.err_lo >= rec.sandwich_lo && *rec.err_hi <= rec.sandwich_hi) ? SandwichStatus::Pass : SandwichStatus::Fail;
}

// ---------------------------------------------------------------------------
// Effective exponents.

struct EffectiveExponent {
  double value = 0;  // -log(err_mid)/log q
  double lo = 0;     // rigorous: -log(err_hi)/log q rounded down
  double hi = 0;     // rigorous: -log(err_lo)/log q rounded up
};

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// -log(x)/log(q) with x converted and every step rounded in direction `rnd`
// for the final result.
inline double neg_log_ratio(const Rational& x, const Integer& q, mpfr_rnd_t rnd, mpfr_prec_t prec) {
  const bool up = rnd == MPFR_RNDU;
  // Result up: numerator -log x up (x down, log down), denominator log q down.
  const mpfr_rnd_t num_rnd = up ? MPFR_RNDD : MPFR_RNDU;
  const mpfr_rnd_t den_rnd = up ? MPFR_RNDD : MPFR_RNDU;
  Mpfr a(prec), lq(prec);
  mpfr_set_q(a.get(), x.get_mpq_t(), num_rnd);
  mpfr_log(a.get(), a.get(), num_rnd);
  mpfr_neg(a.get(), a.get(), MPFR_RNDN);
  mpfr_set_z(lq.get(), q.get_mpz_t(), den_rnd);
  mpfr_log(lq.get(), lq.get(), den_rnd);
  mpfr_div(a.get(), a.get(), lq.get(), rnd);
  return mpfr_get_d(a.get(), rnd);
}

}  // namespace detail

inline EffectiveExponent effective_exponent(const Rational& err_lo, const Rational& err_hi, const Integer& q, mpfr_prec_t prec = 160) {
  if (err_lo <= 0) throw PreconditionError("effective_exponent: err_lo must be positive");
  if (err_hi < err_lo) throw PreconditionError("effective_exponent: err_hi < err_lo");
  if (q < 2) throw PreconditionError("effective_exponent: q must be at least 2");
  EffectiveExponent out;
  out.lo = detail::neg_log_ratio(err_hi, q, MPFR_RNDD, prec);
  out.hi = detail::neg_log_ratio(err_lo, q, MPFR_RNDU, prec);
  out.value = detail::neg_log_ratio((err_lo + err_hi) / 2, q, MPFR_RNDN, prec);
  return out;
}

inline EffectiveExponent effective_exponent(const ApproximationRecord& rec) {
  if (!rec.err_lo || !rec.err_hi) throw PreconditionError("effective_exponent: record has no error bracket");
  return effective_exponent(*rec.err_lo, *rec.err_hi, rec.q);
}

/// Realized range of q_{l,m} / b^{Y_l k^m} and of log q_{m+1} / log q_m.
struct DenominatorProfile {
  Rational ratio_min;
  Rational ratio_max;
  double growth_min = 0;
  double growth_max = 0;
};

inline DenominatorProfile denominator_profile(std::span<const ApproximationRecord> recs) {
  if (recs.empty()) throw PreconditionError("denominator_profile: no records");
  DenominatorProfile d;
  d.ratio_min = d.ratio_max = recs.front().denominator_ratio();
  for (const auto& r : recs) {
    d.ratio_min = std::min(d.ratio_min, r.denominator_ratio());
    d.ratio_max = std::max(d.ratio_max, r.denominator_ratio());
  }
  bool first = true;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (recs[i - 1].q < 2) continue;
    long e0 = 0, e1 = 0;
    const double m0 = mpz_get_d_2exp(&e0, recs[i - 1].q.get_mpz_t());
    const double m1 = mpz_get_d_2exp(&e1, recs[i].q.get_mpz_t());
    const double g = (std::log2(m1) + static_cast<double>(e1)) / (std::log2(m0) + static_cast<double>(e0));
    d.growth_min = first ? g : std::min(d.growth_min, g);
    d.growth_max = first ? g : std::max(d.growth_max, g);
    first = false;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Exponent bounds. All arithmetic here is exact.

struct Lemma3Result {
  Rational value;
  std::string note;
};

/// mu <= (1+rho) theta / delta.
inline Lemma3Result lemma3_bound(const Rational& rho, const Rational& delta, const Rational& theta) {
  if (delta <= 0) throw DomainError("lemma3_bound: delta must be positive");
  if (delta > rho) throw PreconditionError("lemma3_bound: requires delta <= rho");
  if (theta < 1) throw PreconditionError("lemma3_bound: requires theta >= 1");
  Lemma3Result r{(1 + rho) * theta / delta, {}};
  if (theta == 1) r.note = "theta = 1 taken as the limiting case";
  return r;
}

enum class Certification { VerifiedDirect, Theorem };

inline const char* certification_name(Certification c) { return c == Certification::VerifiedDirect ? "verified-direct" : "theorem"; }

struct ExponentBound {
  bool merged = false;
  std::size_t l = 0;  // single-l bound
  std::size_t L = 0;  // merged window [k^{L-1}, k^L - 1]
  Rational rho;
  Rational delta;
  Rational factor;  // theta for single l, 1 + eps k(k+1) when merged
  std::optional<Rational> epsilon;
  Rational mu_bound;
  bool floor_applies = false;  // mu >= 2 holds for every irrational anyway
  Certification certification = Certification::VerifiedDirect;
  std::size_t admissible_count = 0;
};

namespace detail {

inline BitMatrix hankel_bits(std::span<const Term> seq, std::size_t n) {
  if (seq.size() < 2 * n - 1) throw LengthError("hankel_bits: prefix too short", 2 * n - 1);
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (seq[i + j] & 1) m.set(i, j, true);
  return m;
}

}  // namespace detail

inline constexpr std::size_t kDirectCertifyLimit = 1100;
inline constexpr std::size_t kExactCertifyLimit = 200;

/// Certifies H_l H_{l+1} != 0: odd determinants (GF(2)) or nonzero exact
/// determinants when l+1 <= direct_limit; otherwise for paperfolding with
/// l = 1 mod 10 the period-10 parity theorem. Throws DependencyError when
/// neither applies.
inline Certification certify_pair(const PrefixCache& seq, std::size_t l, std::size_t direct_limit = kDirectCertifyLimit) {
  if (l == 0) throw PreconditionError("certify_pair: l must be at least 1");
  const bool paperfolding =
      seq.spec().kind == SequenceKind::PaperfoldingClosed || seq.spec().kind == SequenceKind::PaperfoldingMorphic;
  if (l + 1 <= direct_limit) {
    const Sequence terms = seq.get(2 * l + 1);
    bool ok = true;
    for (std::size_t n : {l, l + 1}) {
      if (det_mod2(detail::hankel_bits(terms, n))) continue;
      if (n <= kExactCertifyLimit && det_exact(hankel_block(terms, 0, n, n)) != 0) continue;
      ok = false;
    }
    if (ok) return Certification::VerifiedDirect;
    if (!(paperfolding && l % 10 == 1))
      throw DependencyError("certify_pair: H_" + std::to_string(l) + " H_" + std::to_string(l + 1) + " could not be certified nonzero");
  }
  if (paperfolding && l % 10 == 1) return Certification::Theorem;
  throw DependencyError("certify_pair: no certification route for l = " + std::to_string(l));
}

/// mu(f(1/b)) <= k rho_l / (delta_l - 1) with rho_l = (2l+gamma)/Y_l and
/// delta_l = 2l/Y_l; computed as lemma3_bound(rho-1, delta-1, k).
inline ExponentBound theorem1_single_l_bound(const FunctionalEquation& fe, std::size_t l, Certification cert) {
  fe.validate();
  const long Y = static_cast<long>(y_index(fe, l));
  ExponentBound eb;
  eb.l = l;
  eb.rho = Rational(2 * static_cast<long>(l) + fe.gamma(), Y);
  eb.delta = Rational(2 * static_cast<long>(l), Y);
  eb.rho.canonicalize();
  eb.delta.canonicalize();
  if (eb.delta <= 1) {
    const long need = fe.alpha() + fe.beta() + fe.gamma() + 1;
    throw PreconditionError("theorem1_single_l_bound: delta_l <= 1 for l = " + std::to_string(l) +
                            "; the bound needs l >= " + std::to_string(need));
  }
  eb.factor = Rational(static_cast<long>(fe.k));
  eb.mu_bound = lemma3_bound(eb.rho - 1, eb.delta - 1, eb.factor).value;
  eb.floor_applies = eb.mu_bound < 2;
  eb.certification = cert;
  return eb;
}

inline ExponentBound theorem1_single_l_bound(const FunctionalEquation& fe, std::size_t l, const PrefixCache& seq) {
  return theorem1_single_l_bound(fe, l, certify_pair(seq, l));
}

struct Lemma4Result {
  Rational analytic;      // 1 + (k+1) R / k^{L-1}
  Rational empirical_max; // sup of a_{j+1}/a_j over j >= j0
  std::size_t j0 = 0;     // ratios past j0 stay below the analytic bound
  bool holds = false;
  std::size_t terms = 0;
};

/// Merged sequence {a k^m : a in A, m >= 0} listed up to k^{L-1+horizon}.
inline Lemma4Result lemma4_ratio(const std::vector<Integer>& A, std::size_t k, std::size_t L, const Integer& R, std::size_t horizon = 12) {
  if (k < 2 || L == 0) throw PreconditionError("lemma4_ratio: need k >= 2 and L >= 1");
  if (A.empty()) throw PreconditionError("lemma4_ratio: A is empty");
  const Integer lo = pow_int(Integer(static_cast<unsigned long>(k)), L - 1);
  const Integer hi = lo * static_cast<unsigned long>(k) - 1;
  for (const auto& a : A)
    if (a < lo || a > hi) throw PreconditionError("lemma4_ratio: " + a.get_str() + " lies outside [k^{L-1}, k^L - 1]");
  std::vector<Integer> sorted = A;
  std::sort(sorted.begin(), sorted.end());
  for (Integer n = lo; n <= hi; ++n) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), n - R);
    if (it == sorted.end() || *it > n + R) throw PreconditionError("lemma4_ratio: covering fails, " + n.get_str() + " is not within R of A");
  }
  Lemma4Result out;
  out.analytic = 1 + Rational(Integer(static_cast<unsigned long>(k + 1)) * R, lo);
  out.analytic.canonicalize();

  const Integer limit = lo * pow_int(Integer(static_cast<unsigned long>(k)), horizon);
  std::set<Integer> merged;
  for (const auto& a : sorted)
    for (Integer v = a; v <= limit; v *= static_cast<unsigned long>(k)) merged.insert(v);
  const std::vector<Integer> seq(merged.begin(), merged.end());
  out.terms = seq.size();
  if (seq.size() < 2) throw PreconditionError("lemma4_ratio: horizon too short for a ratio");
  std::vector<Rational> ratios;
  for (std::size_t j = 0; j + 1 < seq.size(); ++j) ratios.push_back(make_rational(seq[j + 1], seq[j]));
  // j0: first index after the last ratio that reaches the analytic bound.
  std::size_t j0 = 0;
  for (std::size_t j = 0; j < ratios.size(); ++j)
    if (ratios[j] >= out.analytic) j0 = j + 1;
  out.j0 = j0;
  out.holds = j0 < ratios.size();
  if (out.holds) {
    out.empirical_max = ratios[j0];
    for (std::size_t j = j0; j < ratios.size(); ++j) out.empirical_max = std::max(out.empirical_max, ratios[j]);
  }
  return out;
}

struct MergedOptions {
  std::function<bool(std::size_t)> admissible = [](std::size_t l) { return l % 10 == 1; };
  std::size_t direct_limit = kDirectCertifyLimit;
};

/// mu <= (rho/(delta-1)) (1 + eps k(k+1)), rho at l = k^L, delta at l = k^{L-1},
/// eps = (largest gap between consecutive admissible l in the window) / k^{L-1}.
inline ExponentBound merged_bound(const FunctionalEquation& fe, std::size_t L, const PrefixCache& seq, const MergedOptions& opt = {}) {
  fe.validate();
  if (L == 0) throw PreconditionError("merged_bound: L must be at least 1");
  const std::size_t klo = checked_pow(fe.k, L - 1), khi = klo * fe.k;
  std::vector<std::size_t> adm;
  for (std::size_t l = klo; l < khi; ++l)
    if (opt.admissible(l)) adm.push_back(l);
  if (adm.empty()) throw PreconditionError("merged_bound: no admissible l in [" + std::to_string(klo) + ", " + std::to_string(khi - 1) + "]");

  ExponentBound eb;
  eb.merged = true;
  eb.L = L;
  eb.admissible_count = adm.size();
  eb.rho = Rational(2 * static_cast<long>(khi) + fe.gamma(), static_cast<long>(y_index(fe, khi)));
  eb.delta = Rational(2 * static_cast<long>(klo), static_cast<long>(y_index(fe, klo)));
  eb.rho.canonicalize();
  eb.delta.canonicalize();
  if (eb.delta <= 1) throw PreconditionError("merged_bound: delta at l = k^{L-1} does not exceed 1");

  std::size_t gap = adm.size() == 1 ? khi - klo : 0;
  for (std::size_t i = 1; i < adm.size(); ++i) gap = std::max(gap, adm[i] - adm[i - 1]);
  eb.epsilon = Rational(static_cast<long>(gap), static_cast<long>(klo));
  eb.epsilon->canonicalize();
  eb.factor = 1 + *eb.epsilon * Rational(static_cast<long>(fe.k * (fe.k + 1)));
  eb.mu_bound = eb.rho / (eb.delta - 1) * eb.factor;
  eb.floor_applies = eb.mu_bound < 2;

  eb.certification = Certification::VerifiedDirect;
  for (std::size_t l : adm)
    if (certify_pair(seq, l, opt.direct_limit) == Certification::Theorem) eb.certification = Certification::Theorem;
  return eb;
}

}  // namespace hankel
