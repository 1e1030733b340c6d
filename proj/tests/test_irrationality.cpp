#include "hankel/irrationality.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hankel;

namespace {

const FunctionalEquation& fe() {
  static const FunctionalEquation f = FunctionalEquation::paperfolding();
  return f;
}

PadeApproximant pade_at(std::size_t l) {
  const Sequence f = paperfolding_closed(2 * l + 3);
  return pade(RatSeries::from_terms(std::span<const Term>(f)), l);
}

PrefixCache& pf_cache() {
  static PrefixCache c(SequenceSpec::paperfolding());
  return c;
}

Rational frac(long a, long b) { return make_rational(a, b); }

Rational two_pow(long e) { return e >= 0 ? Rational(pow_int(2, e)) : make_rational(1, pow_int(2, -e)); }

}  // namespace

TEST(Iterate, DepthOneIsTheEquation) {
  const IteratedEquation it = iterate_equation(fe(), 1);
  EXPECT_EQ(it.A, fe().A);
  EXPECT_EQ(it.B, fe().B);
  EXPECT_EQ(it.C, fe().C);
}

TEST(Iterate, DepthTwoExplicit) {
  const IteratedEquation it = iterate_equation(fe(), 2);
  const IntPoly one_x4{1, 0, 0, 0, -1};
  const IntPoly one_x8 = one_x4.compose_power(2);
  EXPECT_EQ(it.B, one_x4 * one_x8);
  EXPECT_EQ(it.C, IntPoly::monomial(Integer(1), 3));
  EXPECT_EQ(it.A, one_x8 + IntPoly::monomial(Integer(1), 1) * one_x4);
}

TEST(Iterate, DegreeBoundsAndSeriesIdentity) {
  EXPECT_EQ(iterate_equation(fe(), 5, 0).B.degree(), 124);
  for (std::size_t m = 1; m <= 6; ++m) {
    const std::size_t km = std::size_t{1} << m;
    const IteratedEquation it = iterate_equation(fe(), m, 2 * static_cast<std::size_t>(4 * (km - 1)));
    EXPECT_LE(it.A.degree(), static_cast<long>(5 * km));
    EXPECT_LE(it.B.degree(), static_cast<long>(4 * km));
    EXPECT_LE(it.C.degree(), static_cast<long>(km));
  }
  EXPECT_THROW(iterate_equation(fe(), 0), PreconditionError);
}

TEST(Iterate, SolutionSeriesIsPaperfolding) {
  const RatSeries f = series_from_equation(fe(), 500);
  const Sequence p = paperfolding_closed(500);
  for (std::size_t i = 0; i < 500; ++i) EXPECT_EQ(f[i], p[i]) << i;
}

TEST(Convergent, LowOrderExactValues) {
  // l = 1: P_1 = 1, Q_1 = 1 - x, Y_1 = 6, N = 24; computed independently.
  const ApproximationRecord r = build_convergent(fe(), pade_at(1), 2, 2);
  EXPECT_EQ(r.N, 24u);
  EXPECT_EQ(r.p, Integer("24998400"));
  EXPECT_EQ(r.q, Integer("14688000"));
  EXPECT_EQ(gcd(r.p_reduced, r.q_reduced), 1);
  EXPECT_EQ(make_rational(r.p_reduced, r.q_reduced), make_rational(r.p, r.q));
}

TEST(Convergent, DegreesAndIntegrality) {
  const PadeApproximant ap = pade_at(11);
  const ApproximationRecord r = build_convergent(fe(), ap, 3, 2);
  EXPECT_EQ(r.N, 128u);
  EXPECT_LE(r.Q_lm.degree(), 120);
  EXPECT_LE(r.P_lm.degree(), 128);
  EXPECT_GT(r.q, 0);
  EXPECT_EQ(make_rational(r.q, pow_int(2, 128)), to_rational(r.Q_lm).eval(frac(1, 2)));
  EXPECT_EQ(make_rational(r.p, pow_int(2, 128)), to_rational(r.P_lm).eval(frac(1, 2)));
}

TEST(Convergent, ComposedErrorMatchesSeries) {
  for (std::size_t l : {1u, 2u, 11u}) {
    const PadeApproximant ap = pade_at(l);
    for (std::size_t m : {1u, 2u}) {
      const ApproximationRecord r = build_convergent(fe(), ap, m, 2);
      const std::size_t E = 2 * l * (std::size_t{1} << m) + (std::size_t{1} << m) - 1;
      const ComposedErrorCheck c = composed_error_check(fe(), ap, r, E + 6);
      EXPECT_TRUE(c.identity_holds) << l << "," << m;
      EXPECT_TRUE(c.valuation_ok) << l << "," << m;
    }
  }
}

TEST(Convergent, Preconditions) {
  const PadeApproximant ap = pade_at(2);
  EXPECT_THROW(build_convergent(fe(), ap, 1, 1), PreconditionError);
  EXPECT_THROW(build_convergent(fe(), ap, 0, 2), PreconditionError);
  PadeApproximant flat = ap;
  flat.h = 0;
  EXPECT_THROW(build_convergent(fe(), flat, 1, 2), PreconditionError);
}

TEST(Xi, Enclosures) {
  const Sequence f = paperfolding_closed(64);
  const XiEnclosure e4 = xi_enclosure(f, 2, 4);
  EXPECT_EQ(e4.lo, frac(13, 8));
  EXPECT_EQ(e4.hi, frac(14, 8));
  const XiEnclosure e1 = xi_enclosure(f, 2, 1);
  EXPECT_EQ(e1.lo, 1);
  EXPECT_EQ(e1.hi, 2);
  for (std::size_t t = 1; t < 40; ++t) {
    const XiEnclosure a = xi_enclosure(f, 3, t), b = xi_enclosure(f, 3, t + 1);
    EXPECT_EQ(b.width() * 3, a.width());
    EXPECT_GE(b.lo, a.lo);
    EXPECT_LE(b.hi, a.hi);
  }
  const Sequence t = thue_morse_closed(8);
  EXPECT_THROW(xi_enclosure(t, 2, 4), DomainError);
  EXPECT_THROW(xi_enclosure(f, 2, 0), PreconditionError);
  EXPECT_THROW(xi_enclosure(f, 2, 65), LengthError);
}

TEST(Xi, CacheKeepsTighterEnclosure) {
  XiEnclosureCache cache(SequenceSpec::paperfolding());
  const XiEnclosure a = cache.get(2, 200);
  const XiEnclosure b = cache.get(2, 50);
  EXPECT_EQ(b.tail_at, 200u);
  EXPECT_EQ(a.lo, b.lo);
}

TEST(Threshold, RemainderConstant) {
  const PadeApproximant ap = pade_at(11);
  const Sequence f = paperfolding_closed(200);
  const auto c_small = remainder_constant(f, 1, ap, frac(1, 256), 100);
  ASSERT_TRUE(c_small.has_value());
  const auto c_big = remainder_constant(f, 1, ap, frac(1, 16), 100);
  ASSERT_TRUE(c_big.has_value());
  EXPECT_LE(*c_small, *c_big);
  // Brute-force check of the bound at a few sample points.
  const RatPoly fpoly(std::vector<Rational>(f.begin(), f.end()));
  for (long d : {256, 1024, 4096}) {
    const Rational y(1, d);
    const Rational xi_lo = fpoly.eval(y);
    const Rational xi_hi = xi_lo + pow_rat(y, 200) / (1 - y);
    const Rational approx = ap.P.eval(y) / ap.Q.eval(y) + ap.h * pow_rat(y, 22);
    const Rational a = abs(xi_lo - approx), b = abs(xi_hi - approx);
    EXPECT_LE(std::max(a, b), *c_small * pow_rat(y, 23)) << d;
  }
  EXPECT_THROW(remainder_constant(f, 1, ap, frac(1, 4), 20), PreconditionError);
}

TEST(Bracket, LowOrderSandwich) {
  const PadeApproximant ap = pade_at(1);
  XiEnclosureCache xi(SequenceSpec::paperfolding());
  ApproximationRecord r = build_convergent(fe(), ap, 2, 2);
  error_bracket(r, fe(), ap, xi);
  EXPECT_EQ(r.E, 11u);
  EXPECT_EQ(r.sandwich_lo, two_pow(-12));
  EXPECT_EQ(r.sandwich_hi, 3 * two_pow(-11));
  ASSERT_TRUE(r.err_lo && r.err_hi);
  EXPECT_GE(*r.err_lo, two_pow(-12));
  EXPECT_LE(*r.err_hi, 3 * two_pow(-11));
  EXPECT_EQ(r.sandwich, SandwichStatus::Pass);
  EXPECT_LE(*r.err_hi - *r.err_lo, *r.err_lo / 65536);
}

TEST(Bracket, OrderElevenDepthSix) {
  const PadeApproximant ap = pade_at(11);
  XiEnclosureCache xi(SequenceSpec::paperfolding());
  ApproximationRecord r = build_convergent(fe(), ap, 6, 2);
  error_bracket(r, fe(), ap, xi);
  EXPECT_EQ(r.E, 1471u);
  EXPECT_EQ(r.sandwich_lo, frac(191, 78) * two_pow(-1471));
  EXPECT_EQ(r.sandwich, SandwichStatus::Pass);
  EXPECT_GE(r.m0, 1u);
}

TEST(Bracket, ThresholdReportsNotApplicable) {
  const PadeApproximant ap = pade_at(11);
  XiEnclosureCache xi(SequenceSpec::paperfolding());
  ApproximationRecord r = build_convergent(fe(), ap, 2, 2);
  ThresholdInfo th = threshold_m0(pf_cache(), fe(), ap);
  th.m0 = 3;  // pretend the threshold sits higher
  error_bracket(r, fe(), ap, xi, th);
  EXPECT_EQ(r.sandwich, SandwichStatus::NotApplicable);
}

TEST(Bracket, PrecisionExhaustion) {
  const PadeApproximant ap = pade_at(11);
  XiEnclosureCache xi(SequenceSpec::paperfolding());
  ApproximationRecord r = build_convergent(fe(), ap, 4, 2);
  BracketOptions opt;
  opt.max_tail = 100;
  EXPECT_THROW(error_bracket(r, fe(), ap, xi, std::nullopt, opt), PrecisionExhausted);
}

TEST(Bracket, RefusesZeroH) {
  PadeApproximant ap = pade_at(2);
  XiEnclosureCache xi(SequenceSpec::paperfolding());
  ApproximationRecord r = build_convergent(fe(), ap, 1, 2);
  ap.h = 0;
  EXPECT_THROW(error_bracket(r, fe(), ap, xi), PreconditionError);
}

TEST(Exponent, PerfectSquareCase) {
  const Integer q = 1000003;
  const Rational e = make_rational(1, q * q);
  const EffectiveExponent ee = effective_exponent(e, e, q);
  EXPECT_NEAR(ee.value, 2.0, 1e-12);
  EXPECT_LE(ee.lo, 2.0);
  EXPECT_GE(ee.hi, 2.0);
  EXPECT_LT(ee.hi - ee.lo, 1e-12);
  EXPECT_THROW(effective_exponent(Rational(0), e, q), PreconditionError);
  EXPECT_THROW(effective_exponent(e, e, Integer(1)), PreconditionError);
}

TEST(Exponent, ApproachesBandAsDepthGrows) {
  const PadeApproximant ap = pade_at(11);
  XiEnclosureCache xi(SequenceSpec::paperfolding());
  double prev = 0;
  for (std::size_t m = 2; m <= 7; ++m) {
    ApproximationRecord r = build_convergent(fe(), ap, m, 2);
    error_bracket(r, fe(), ap, xi);
    const EffectiveExponent ee = effective_exponent(r);
    EXPECT_GT(ee.value, prev);
    EXPECT_LE(ee.lo, ee.value);
    EXPECT_GE(ee.hi, ee.value);
    prev = ee.value;
  }
  EXPECT_GT(prev, 1.375 - 0.05);
  EXPECT_LT(prev, 1.4375 + 0.05);
}

TEST(Exponent, DenominatorProfile) {
  const PadeApproximant ap = pade_at(11);
  std::vector<ApproximationRecord> recs;
  for (std::size_t m = 2; m <= 6; ++m) recs.push_back(build_convergent(fe(), ap, m, 2));
  const DenominatorProfile d = denominator_profile(recs);
  EXPECT_GT(d.ratio_min, 0);
  EXPECT_LT(d.ratio_max / d.ratio_min, 2);
  EXPECT_GT(d.growth_min, 1.5);
  EXPECT_LT(d.growth_max, 2.5);
}

TEST(Lemma3, Examples) {
  EXPECT_EQ(lemma3_bound(1, 1, 1).value, 2);
  EXPECT_FALSE(lemma3_bound(1, 1, 1).note.empty());
  EXPECT_EQ(lemma3_bound(frac(7, 16), frac(6, 16), 2).value, frac(23, 3));
  EXPECT_EQ(lemma3_bound(frac(1, 2), frac(2, 5), frac(11, 10)).value, frac(33, 8));
  EXPECT_THROW(lemma3_bound(1, 0, 2), DomainError);
  EXPECT_THROW(lemma3_bound(frac(1, 2), 1, 2), PreconditionError);
  EXPECT_THROW(lemma3_bound(1, 1, frac(1, 2)), PreconditionError);
}

TEST(Theorem1, SingleOrderBounds) {
  const ExponentBound b11 = theorem1_single_l_bound(fe(), 11, pf_cache());
  EXPECT_EQ(b11.rho, frac(23, 16));
  EXPECT_EQ(b11.delta, frac(22, 16));
  EXPECT_EQ(b11.mu_bound, frac(23, 3));
  EXPECT_EQ(b11.certification, Certification::VerifiedDirect);
  EXPECT_EQ(theorem1_single_l_bound(fe(), 21, pf_cache()).mu_bound, frac(43, 8));
  EXPECT_THROW(theorem1_single_l_bound(fe(), 5, Certification::VerifiedDirect), PreconditionError);
  EXPECT_NO_THROW(theorem1_single_l_bound(fe(), 6, Certification::VerifiedDirect));
}

TEST(Theorem1, LadderDecreasesTowardTwoK) {
  Rational prev = 1000;
  for (std::size_t l = 11; l <= 101; l += 10) {
    const Rational mu = theorem1_single_l_bound(fe(), l, pf_cache()).mu_bound;
    EXPECT_LT(mu, prev) << l;
    EXPECT_GT(mu, 4) << l;
    prev = mu;
  }
}

TEST(Certify, Routes) {
  EXPECT_EQ(certify_pair(pf_cache(), 11), Certification::VerifiedDirect);
  EXPECT_EQ(certify_pair(pf_cache(), 4001, 100), Certification::Theorem);
  PrefixCache tm(*SequenceSpec::from_name("thue-morse-pm1"));
  EXPECT_EQ(certify_pair(tm, 20), Certification::VerifiedDirect);  // exact determinants are nonzero
  EXPECT_THROW(certify_pair(tm, 4001, 100), DependencyError);
}

TEST(Lemma4, Examples) {
  const auto r1 = lemma4_ratio({17, 21, 25, 29}, 2, 5, 4);
  EXPECT_EQ(r1.analytic, frac(7, 4));
  EXPECT_EQ(r1.empirical_max, frac(21, 17));
  EXPECT_TRUE(r1.holds);

  std::vector<Integer> all;
  for (int i = 16; i <= 31; ++i) all.push_back(i);
  const auto r2 = lemma4_ratio(all, 2, 5, 1);
  EXPECT_EQ(r2.analytic, frac(19, 16));
  EXPECT_EQ(r2.empirical_max, frac(17, 16));

  const auto r3 = lemma4_ratio({16}, 2, 5, 16);
  EXPECT_EQ(r3.analytic, 4);
  EXPECT_EQ(r3.empirical_max, 2);
  EXPECT_TRUE(r3.holds);
}

TEST(Lemma4, CoveringAndRange) {
  try {
    lemma4_ratio({17, 29}, 2, 5, 4);
    FAIL() << "expected a covering failure";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("22"), std::string::npos) << e.what();
  }
  EXPECT_THROW(lemma4_ratio({40}, 2, 5, 40), PreconditionError);
}

TEST(Merged, WindowTen) {
  const ExponentBound b = merged_bound(fe(), 10, pf_cache());
  EXPECT_EQ(*b.epsilon, frac(10, 512));
  EXPECT_EQ(b.rho, frac(2049, 1029));
  EXPECT_EQ(b.delta, frac(1024, 517));
  const Rational want = frac(2049, 1029) / (frac(1024, 517) - 1) * (1 + frac(60, 512));
  EXPECT_EQ(b.mu_bound, want);
  EXPECT_NEAR(b.mu_bound.get_d(), 2.2685, 1e-3);
  EXPECT_EQ(b.certification, Certification::VerifiedDirect);
  EXPECT_EQ(b.admissible_count, 51u);
}

TEST(Merged, WindowThirteenAndMonotonicity) {
  const ExponentBound b13 = merged_bound(fe(), 13, pf_cache());
  EXPECT_NEAR(b13.mu_bound.get_d(), 2.033, 0.001);
  EXPECT_EQ(b13.certification, Certification::Theorem);
  Rational prev = 100;
  for (std::size_t L = 8; L <= 13; ++L) {
    const Rational mu = merged_bound(fe(), L, pf_cache()).mu_bound;
    EXPECT_LT(mu, prev) << L;
    prev = mu;
  }
}

TEST(Merged, Errors) {
  MergedOptions none;
  none.admissible = [](std::size_t) { return false; };
  EXPECT_THROW(merged_bound(fe(), 10, pf_cache(), none), PreconditionError);
  EXPECT_THROW(merged_bound(fe(), 3, pf_cache()), PreconditionError);  // delta at l = 4 is below 1
}
