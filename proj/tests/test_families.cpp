#include "hankel/families.hpp"
#include "hankel/sequences.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hankel;

namespace {

// Frozen values from an independent rational-arithmetic implementation.
// Columns a b c d e g h x y.
const std::vector<std::array<long, 9>> kFrozenRows = {
    {1, 0, -1, 0, 0, -1, 1, 1, 0},       {-1, 1, 0, -1, 1, 0, -1, 0, -1},   {-2, 2, 0, -1, 2, 2, -2, -2, -1},
    {2, -5, 2, 3, -4, 2, -1, -3, 1},     {1, -2, -1, 1, -1, -4, 3, 7, -1},  {-4, 25, -12, -13, 16, 4, -4, -4, -3},
    {-4, 18, -8, -9, 12, 8, -7, -10, -3},
};

const std::vector<long> kFrozenA = {1, -1, -2, 2, 1, -4, -4, 19, 11, 3, -39, 191, 8};

const Sequence& pf() {
  static const Sequence s = paperfolding_closed(4100);
  return s;
}

const FamilyTable& table60() {
  static const FamilyTable t(family_table(pf(), 60));
  return t;
}

}  // namespace

TEST(Families, FrozenRows) {
  for (std::size_t n = 1; n <= kFrozenRows.size(); ++n) {
    const FamilyRow r = family_direct(pf(), n);
    for (std::size_t i = 0; i < kFamilyCount; ++i) EXPECT_EQ(r.v[i], kFrozenRows[n - 1][i]) << "n=" << n << " family " << kFamilyNames[i];
  }
}

TEST(Families, FrozenHankelDeterminants) {
  const auto H = hankel_determinants(pf(), kFrozenA.size());
  for (std::size_t n = 1; n <= kFrozenA.size(); ++n) {
    EXPECT_EQ(H[n - 1], kFrozenA[n - 1]) << n;
    EXPECT_EQ(table60().at(n)[Family::a], kFrozenA[n - 1]) << n;
  }
}

TEST(Families, MatrixShapes) {
  const std::size_t n = 5;
  EXPECT_EQ(family_matrix(pf(), n, Family::a).rows(), n);
  EXPECT_EQ(family_matrix(pf(), n, Family::b).rows(), n + 2);
  EXPECT_EQ(family_matrix(pf(), n, Family::c).rows(), n + 1);
  EXPECT_EQ(family_matrix(pf(), n, Family::g).rows(), n + 1);
  EXPECT_EQ(family_matrix(pf(), n, Family::x).rows(), n + 2);
  EXPECT_THROW(family_matrix(pf(), 0, Family::a), PreconditionError);
  const Sequence shortp = paperfolding_closed(8);
  EXPECT_THROW(family_matrix(shortp, 4, Family::a), LengthError);
}

TEST(Families, DesnanotJacobiConsistency) {
  // The b matrix borders f_n by alpha and beta; Sylvester's identity gives a b = c d - e^2.
  for (std::size_t n = 1; n <= 60; ++n) {
    const FamilyRow& r = table60().at(n);
    EXPECT_EQ(r[Family::a] * r[Family::b], r[Family::c] * r[Family::d] - r[Family::e] * r[Family::e]) << n;
  }
}

TEST(Families, ParityPathsAgree) {
  for (std::size_t n = 1; n <= 60; ++n) {
    const Parity exact = parity_of(table60().at(n));
    EXPECT_EQ(family_mod2(pf(), n), exact) << n;
    EXPECT_EQ(family_mod2_materialized(pf(), n), exact) << n;
  }
  for (std::size_t n = 200; n <= 1000; n += 200) EXPECT_EQ(family_mod2(pf(), n), family_mod2_materialized(pf(), n)) << n;
}

TEST(Families, ParityPathsAgreeOnThueMorse) {
  const Sequence t = thue_morse_closed(200);
  for (std::size_t n = 1; n <= 40; ++n) EXPECT_EQ(family_mod2(t, n), parity_of(family_direct(t, n))) << n;
}

TEST(Lemma1, EighteenIdentities) {
  const auto& ids = lemma1_identities();
  ASSERT_EQ(ids.size(), 18u);
  std::size_t odd = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_EQ(ids[i].number, static_cast<int>(i + 1));
    odd += ids[i].odd;
  }
  EXPECT_EQ(odd, 9u);
}

TEST(Lemma1, ResolutionOnDirectTable) {
  const Lemma1Report rep = verify_lemma1(table60());
  EXPECT_TRUE(rep.all_mod2());
  for (const auto& s : rep.identities) {
    EXPECT_EQ(s.checked, 29u);
    ASSERT_TRUE(s.resolved_variant.has_value()) << s.identity;
    EXPECT_FALSE(s.parity_dependent);
    if (s.identity == 2) {
      EXPECT_EQ(*s.resolved_variant, "statement");
    }
    if (s.identity == 3) {
      EXPECT_EQ(*s.resolved_variant, "with-4b^2");
      EXPECT_FALSE(s.exact_holds);
      EXPECT_EQ(s.exact_failures, s.checked);
    } else if (s.identity == 6) {
      EXPECT_EQ(*s.resolved_variant, "sign-corrected");
      EXPECT_FALSE(s.exact_holds);
    } else {
      EXPECT_TRUE(s.exact_holds) << s.identity;
      EXPECT_TRUE(s.resolved_is_printed) << s.identity;
    }
  }
  EXPECT_FALSE(rep.all_exact());
}

TEST(Lemma1, RecurrenceReproducesTable) {
  for (std::size_t n = 1; 2 * n + 1 <= 60; ++n) {
    const RecurrencePrediction p = family_recurrence(table60(), n);
    EXPECT_EQ(p.even_mod2, parity_of(table60().at(2 * n))) << n;
    EXPECT_EQ(p.odd_mod2, parity_of(table60().at(2 * n + 1))) << n;
    EXPECT_EQ(p.even[Family::a], table60().at(2 * n)[Family::a]) << n;
  }
}

TEST(Prop2, PeriodTenTables) {
  const Mod2Table& t = Mod2Table::paperfolding();
  EXPECT_TRUE(t.predicted(Family::a, 10));
  EXPECT_TRUE(t.predicted(Family::a, 21));
  EXPECT_FALSE(t.predicted(Family::a, 3));
  const Prop2Report rep = verify_prop2(pf(), 400);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.parities.size(), 400u);
  EXPECT_THROW(verify_prop2(pf(), 9), PreconditionError);
}

TEST(Prop2, ThueMorseDeviates) {
  const Sequence t = thue_morse_closed(200);
  EXPECT_FALSE(verify_prop2(t, 40).pass());
}

TEST(Star, OddPairsAndNonvanishing) {
  const StarReport rep = star_check(pf(), 400, 80);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.pairs_checked, 40u);
  EXPECT_EQ(rep.hankel.size(), 80u);
  for (std::size_t i = 0; i < kFrozenA.size(); ++i) EXPECT_EQ(rep.hankel[i], kFrozenA[i]);
}

TEST(Table, CsvRoundTrip) {
  std::stringstream ss;
  write_table_csv(ss, table60().rows());
  const auto back = read_table_csv(ss);
  EXPECT_EQ(back, table60().rows());
}

TEST(Table, MalformedCsvIsRejected) {
  std::stringstream bad1("n,a\n1,1\n");
  EXPECT_THROW(read_table_csv(bad1), DomainError);
  std::stringstream bad2(std::string(kTableHeader) + "\n1,1,0,-1,0,0,-1,1,1\n");
  EXPECT_THROW(read_table_csv(bad2), DomainError);
  std::stringstream bad3(std::string(kTableHeader) + "\n2,1,0,-1,0,0,-1,1,1,0\n");
  EXPECT_THROW(read_table_csv(bad3), DomainError);
  std::stringstream bad4(std::string(kTableHeader) + "\n1,1,0,-1,0,zz,-1,1,1,0\n");
  EXPECT_THROW(read_table_csv(bad4), DomainError);
  std::stringstream bad5(std::string(kTableHeader) + "\n1,1,0,-1,0,,-1,1,1,0\n");
  EXPECT_THROW(read_table_csv(bad5), DomainError);
}

TEST(Table, MissingRowIsDependencyError) {
  EXPECT_THROW(table60().at(61), DependencyError);
  EXPECT_THROW(table60().at(0), DependencyError);
}
