#include "hankel/sequences.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace hankel;

namespace {

std::string digits(const Sequence& s) {
  std::string out;
  for (Term t : s) out += static_cast<char>('0' + t);
  return out;
}

}  // namespace

TEST(Paperfolding, KnownPrefix) {
  EXPECT_EQ(digits(paperfolding_closed(15)), "110110011100100");
  EXPECT_EQ(digits(morphic_prefix(paperfolding_morphism(), 15)), "110110011100100");
}

TEST(Paperfolding, ClosedMatchesMorphicTo10000) {
  EXPECT_EQ(paperfolding_closed(10000), morphic_prefix(paperfolding_morphism(), 10000));
}

TEST(Paperfolding, FoldingRules) {
  const Sequence f = paperfolding_closed(4001);
  for (std::size_t n = 0; 4 * n + 2 < f.size(); ++n) {
    EXPECT_EQ(f[4 * n], 1);
    EXPECT_EQ(f[4 * n + 2], 0);
  }
  for (std::size_t n = 0; 2 * n + 1 < f.size(); ++n) EXPECT_EQ(f[2 * n + 1], f[n]);
}

TEST(ThueMorse, PlusMinusOne) {
  EXPECT_EQ(thue_morse_closed(4), (Sequence{1, -1, -1, 1}));
  EXPECT_EQ(thue_morse_closed(10000), morphic_prefix(thue_morse_morphism(), 10000));
  const Sequence t = thue_morse_closed(2000);
  for (std::size_t n = 0; 2 * n + 1 < t.size(); ++n) {
    EXPECT_EQ(t[2 * n], t[n]);
    EXPECT_EQ(t[2 * n + 1], -t[n]);
  }
}

TEST(Cantor, Prefix) {
  EXPECT_EQ(digits(cantor_closed(9)), "101000101");
  EXPECT_EQ(cantor_closed(6561), morphic_prefix(cantor_morphism(), 6561));
}

TEST(Morphic, ZeroLengthPrefix) { EXPECT_TRUE(morphic_prefix(paperfolding_morphism(), 0).empty()); }

TEST(Morphic, RejectsBadSpecs) {
  MorphicSpec s = paperfolding_morphism();
  s.seed = 'z';
  EXPECT_THROW(s.validate(), PreconditionError);

  s = paperfolding_morphism();
  s.morphism['a'] = "ba";  // a is not a prefix of its own image
  EXPECT_THROW(s.validate(), PreconditionError);

  s = paperfolding_morphism();
  s.coding.erase('c');
  EXPECT_THROW(s.validate(), PreconditionError);

  s = paperfolding_morphism();
  s.morphism['b'] = "";
  EXPECT_THROW(s.validate(), PreconditionError);

  s = paperfolding_morphism();
  s.morphism['a'] = "a";
  EXPECT_THROW(s.validate(), PreconditionError);
}

TEST(SequenceSpec, Names) {
  EXPECT_EQ(SequenceSpec::from_name("paperfolding")->kind, SequenceKind::PaperfoldingClosed);
  EXPECT_EQ(SequenceSpec::from_name("thue-morse")->kind, SequenceKind::ThueMorsePm1);
  EXPECT_FALSE(SequenceSpec::from_name("fibonacci").has_value());
  EXPECT_EQ(prefix(*SequenceSpec::from_name("paperfolding-morphic"), 100), paperfolding_closed(100));
  EXPECT_EQ(prefix(SequenceSpec::custom_morphic(thue_morse_morphism()), 64), thue_morse_closed(64));
}

TEST(PrefixCache, ConsistentAcrossThreads) {
  PrefixCache cache(SequenceSpec::paperfolding());
  const Sequence want = paperfolding_closed(5000);
  std::vector<std::thread> ts;
  std::vector<bool> ok(4);
  for (std::size_t t = 0; t < 4; ++t)
    ts.emplace_back([&, t] {
      const std::size_t n = 1000 * (t + 1) + 7;
      const Sequence got = cache.get(n);
      ok[t] = std::equal(got.begin(), got.end(), want.begin());
    });
  for (auto& th : ts) th.join();
  for (bool b : ok) EXPECT_TRUE(b);
}

TEST(FunctionalEquation, PaperfoldingParameters) {
  const auto fe = FunctionalEquation::paperfolding();
  EXPECT_EQ(fe.alpha(), 0);
  EXPECT_EQ(fe.beta(), 4);
  EXPECT_EQ(fe.gamma(), 1);
  EXPECT_EQ(fe.s(), 1u);
  EXPECT_EQ(fe.eta(), 1);
  EXPECT_EQ(fe.zeta(2), 1);
  EXPECT_EQ(fe.zeta(7), 1);
}

TEST(FunctionalEquation, HoldsForPaperfoldingTo4096) {
  const auto r = check_functional_equation(SequenceSpec::paperfolding(), FunctionalEquation::paperfolding(), 4096);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.first_mismatch.has_value());
}

TEST(FunctionalEquation, FailsForOtherSequences) {
  const auto r = check_functional_equation(*SequenceSpec::from_name("thue-morse-pm1"), FunctionalEquation::paperfolding(), 64);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.first_mismatch, 1u);  // t_1 = -1, rhs gives 0 + t_0 = 1
}

TEST(FunctionalEquation, Preconditions) {
  FunctionalEquation bad{IntPoly{1}, IntPoly{0, 1}, IntPoly{0, 1}, 2};
  EXPECT_THROW(check_functional_equation(SequenceSpec::paperfolding(), bad, 16), PreconditionError);
  EXPECT_THROW(check_functional_equation(SequenceSpec::paperfolding(), FunctionalEquation::paperfolding(), 0), PreconditionError);
  const Sequence shortp = paperfolding_closed(8);
  EXPECT_THROW(check_functional_equation(std::span<const Term>(shortp), FunctionalEquation::paperfolding(), 16), LengthError);
  FunctionalEquation vanishing{IntPoly{1}, IntPoly{1}, IntPoly{-1, 2}, 2};  // C(1/2) = 0
  EXPECT_THROW(vanishing.zeta(2), DomainError);
}
