#include "hankel/linalg.hpp"
#include "hankel/sequences.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace hankel;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int lo = -1, int hi = 1) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(DetExact, SmallKnownValues) {
  EXPECT_EQ(det_exact(IntMatrix(0, 0)), 1);
  EXPECT_EQ(det_exact(IntMatrix{{5}}), 5);
  EXPECT_EQ(det_exact(IntMatrix{{1, 2}, {3, 4}}), -2);
  EXPECT_EQ(det_exact(IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}), 4);
  EXPECT_EQ(det_exact(IntMatrix{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}}), 2);
  EXPECT_EQ(det_exact(IntMatrix{{0, 1}, {1, 0}}), -1);  // needs a row exchange
  EXPECT_EQ(det_exact(IntMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_THROW(det_exact(IntMatrix(2, 3)), ShapeError);
}

TEST(DetExact, CofactorOracleAgreesOnRandomCorpus) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 1000; ++trial) {
    const IntMatrix m = random_matrix(rng, 1 + trial % 7);
    const Integer d = det_exact(m);
    ASSERT_EQ(d, det_cofactor_oracle(m)) << m.to_text();
    ASSERT_EQ(det_mod2(BitMatrix::reduce(m)), is_odd(d)) << m.to_text();
  }
}

TEST(DetExact, LargeEntries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m = random_matrix(rng, 6, -1000000, 1000000);
    EXPECT_EQ(det_exact(m), det_cofactor_oracle(m));
  }
}

TEST(DetExact, TransposeAndPermutationInvariance) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const IntMatrix m = random_matrix(rng, n, -3, 3);
    const Integer d = det_exact(m);
    EXPECT_EQ(det_exact(m.transpose()), d);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const IntMatrix p = structure::permutation_matrix(perm);
    const Integer sign = det_exact(p);
    EXPECT_EQ(sign * sign, 1);
    EXPECT_EQ(det_exact(p * m), sign * d);
    EXPECT_EQ(det_exact(m * p), sign * d);
  }
}

TEST(DetExact, MultiplicativeOnProducts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = random_matrix(rng, 9, -2, 2), b = random_matrix(rng, 9, -2, 2);
    EXPECT_EQ(det_exact(a * b), det_exact(a) * det_exact(b));
  }
}

TEST(DetCofactor, RefusesLargeDimension) { EXPECT_THROW(det_cofactor_oracle(IntMatrix::identity(9)), DomainError); }

TEST(DetMod2, IdentityAndSingular) {
  EXPECT_TRUE(det_mod2(BitMatrix::reduce(IntMatrix::identity(130))));
  BitMatrix z(3, 3);
  EXPECT_FALSE(det_mod2(z));
  EXPECT_FALSE(det_mod2(BitMatrix::reduce(IntMatrix{{1, 1}, {1, 1}})));
  EXPECT_TRUE(det_mod2(BitMatrix::reduce(IntMatrix{{3, 2}, {8, 7}})));  // det 5
  EXPECT_THROW(det_mod2(BitMatrix(2, 3)), ShapeError);
}

TEST(DetMod2, WideMatricesAcrossWordBoundaries) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {63u, 64u, 65u, 129u}) {
    const IntMatrix m = random_matrix(rng, n, 0, 1);
    EXPECT_EQ(det_mod2(BitMatrix::reduce(m)), is_odd(det_exact(m))) << n;
  }
}

TEST(LeadingMinors, MatchBlockDeterminants) {
  const Sequence f = paperfolding_closed(120);
  const IntMatrix h = hankel_block(f, 0, 60, 60);
  const auto minors = leading_principal_minors(h);
  ASSERT_EQ(minors.size(), 60u);  // no paperfolding Hankel minor vanishes here
  for (std::size_t k = 1; k <= 60; k += 7) EXPECT_EQ(minors[k - 1], det_exact(h.block(0, 0, k, k))) << k;
}

TEST(LeadingMinors, StopAtFirstZero) {
  const auto minors = leading_principal_minors(IntMatrix{{1, 1, 2}, {1, 1, 3}, {5, 6, 7}});
  ASSERT_EQ(minors.size(), 2u);
  EXPECT_EQ(minors[0], 1);
  EXPECT_EQ(minors[1], 0);
}

TEST(HankelBlock, Windows) {
  const Sequence f = paperfolding_closed(15);  // 110110011100100
  const IntMatrix h = hankel_block(f, 0, 2, 2);
  EXPECT_EQ(h, (IntMatrix{{1, 1}, {1, 0}}));
  const IntMatrix w = hankel_block(f, 2, 2, 3);
  EXPECT_EQ(w, (IntMatrix{{0, 1, 1}, {1, 1, 0}}));
  EXPECT_THROW(hankel_block(f, 10, 4, 4), LengthError);
}

TEST(Structure, AlphaBetaAndPatterns) {
  EXPECT_EQ(structure::alpha(4), (std::vector<int>{1, 0, 1, 0}));
  EXPECT_EQ(structure::beta(4), (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(structure::A(2, 3), (IntMatrix{{1, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(structure::B(2, 3), (IntMatrix{{0, 1, 0}, {1, 0, 1}}));
  EXPECT_EQ(structure::U(5), (std::vector<std::size_t>{0, 2, 4, 1, 3}));
}

TEST(Structure, ConjugationByUMatchesBlockForm) {
  const Sequence f = paperfolding_closed(420);
  for (std::size_t n = 1; n <= 30; ++n) {
    EXPECT_TRUE(conjugate_by_U(f, n, false).blocks_match()) << n;
    EXPECT_TRUE(conjugate_by_U(f, n, true).blocks_match()) << n;
  }
  EXPECT_TRUE(conjugate_by_U(f, 100, false).blocks_match());
  EXPECT_TRUE(conjugate_by_U(f, 100, true).blocks_match());
}

TEST(Structure, ConjugationDetectsNonPaperfolding) {
  const Sequence t = thue_morse_closed(40);
  const auto c = conjugate_by_U(t, 4, false);
  EXPECT_FALSE(c.blocks_match());
  ASSERT_TRUE(c.mismatch.has_value());
  EXPECT_NE(c.mismatch->expected, c.mismatch->actual);
}

TEST(BitMatrix, ReduceAndAccess) {
  const BitMatrix b = BitMatrix::reduce(IntMatrix{{2, 3}, {-1, 0}});
  EXPECT_FALSE(b.get(0, 0));
  EXPECT_TRUE(b.get(0, 1));
  EXPECT_TRUE(b.get(1, 0));
  EXPECT_EQ(b.to_text(), "01\n10\n");
}
