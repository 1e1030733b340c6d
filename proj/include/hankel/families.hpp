#pragma once

// The nine bordered Hankel determinant families a..y of a sequence, their
// doubling recurrences (exact and mod 2), the period-10 parity tables and the
// nonvanishing check for H_{10i+1} H_{10i+2}.
//
// For index n >= 1, with H = hankel_block(seq, 0, n, n), K = hankel_block(seq, 0, n+1, n),
// alpha/beta the alternating 0/1 vectors:
//   a = |H|                      b = |H a' b'; a 0 0; b 0 0|
//   c = |H a'; a 0|              d = |H b'; b 0|            e = |H b'; a 0|
//   g = |K a'(n+1)|              h = |K b'(n+1)|
//   x = |K a'(n+1) b'(n+1); a 0 0|   y = |K a'(n+1) b'(n+1); b 0 0|
// where a', b' denote column vectors.

#include "hankel/bigint.hpp"
#include "hankel/linalg.hpp"
#include "hankel/parallel.hpp"

#include <array>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace hankel {

enum class Family : std::size_t { a = 0, b, c, d, e, g, h, x, y };
inline constexpr std::size_t kFamilyCount = 9;
inline constexpr std::array<Family, kFamilyCount> kFamilies = {Family::a, Family::b, Family::c, Family::d, Family::e,
                                                               Family::g, Family::h, Family::x, Family::y};
inline constexpr std::array<char, kFamilyCount> kFamilyNames = {'a', 'b', 'c', 'd', 'e', 'g', 'h', 'x', 'y'};

inline char family_name(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

inline std::optional<Family> family_from_name(char c) {
  for (std::size_t i = 0; i < kFamilyCount; ++i)
    if (kFamilyNames[i] == c) return kFamilies[i];
  return std::nullopt;
}

struct FamilyRow {
  std::size_t n = 0;
  std::array<Integer, kFamilyCount> v;

  const Integer& operator[](Family f) const { return v[static_cast<std::size_t>(f)]; }
  Integer& operator[](Family f) { return v[static_cast<std::size_t>(f)]; }

  friend bool operator==(const FamilyRow&, const FamilyRow&) = default;
};

using Parity = std::array<bool, kFamilyCount>;

inline Parity parity_of(const FamilyRow& row) {
  Parity p{};
  for (std::size_t i = 0; i < kFamilyCount; ++i) p[i] = is_odd(row.v[i]);
  return p;
}

/// Prefix length that family_direct(seq, n) needs.
inline std::size_t family_prefix_length(std::size_t n) { return 2 * n + 3; }

/// The bordered matrix for one family, assembled block by block.
inline IntMatrix family_matrix(std::span<const Term> seq, std::size_t n, Family fam) {
  if (n == 0) throw PreconditionError("family index must be at least 1");
  if (seq.size() < family_prefix_length(n)) throw LengthError("family_matrix: sequence prefix too short", family_prefix_length(n));
  const auto al = structure::alpha(n), be = structure::beta(n);
  const auto al1 = structure::alpha(n + 1), be1 = structure::beta(n + 1);

  auto square_with = [&](const std::vector<const std::vector<int>*>& cols, const std::vector<const std::vector<int>*>& rows) {
    const std::size_t dim = n + cols.size();
    IntMatrix m(dim, dim);
    m.paste(hankel_block(seq, 0, n, n), 0, 0);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t i = 0; i < n; ++i) m(i, n + c) = (*cols[c])[i];
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) m(n + r, j) = (*rows[r])[j];
    return m;
  };
  auto tall_with = [&](bool both_cols, const std::vector<int>* extra_row) {
    const std::size_t ncols = n + (both_cols ? 2 : 1);
    IntMatrix m(ncols, ncols);
    m.paste(hankel_block(seq, 0, n + 1, n), 0, 0);
    for (std::size_t i = 0; i <= n; ++i) {
      m(i, n) = al1[i];
      if (both_cols) m(i, n + 1) = be1[i];
    }
    if (extra_row)
      for (std::size_t j = 0; j < n; ++j) m(n + 1, j) = (*extra_row)[j];
    return m;
  };

  switch (fam) {
    case Family::a: return hankel_block(seq, 0, n, n);
    case Family::b: return square_with({&al, &be}, {&al, &be});
    case Family::c: return square_with({&al}, {&al});
    case Family::d: return square_with({&be}, {&be});
    case Family::e: return square_with({&be}, {&al});
    case Family::g: return tall_with(false, nullptr);
    case Family::h: {
      IntMatrix m(n + 1, n + 1);
      m.paste(hankel_block(seq, 0, n + 1, n), 0, 0);
      for (std::size_t i = 0; i <= n; ++i) m(i, n) = be1[i];
      return m;
    }
    case Family::x: return tall_with(true, &al);
    case Family::y: return tall_with(true, &be);
  }
  throw InternalError("unhandled family");
}

/// All nine determinants at index n, each from its explicitly built matrix.
inline FamilyRow family_direct(std::span<const Term> seq, std::size_t n) {
  FamilyRow row;
  row.n = n;
  for (Family f : kFamilies) row[f] = det_exact(family_matrix(seq, n, f));
  return row;
}

/// Parities of the nine determinants, one GF(2) elimination per family.
inline Parity family_mod2_materialized(std::span<const Term> seq, std::size_t n) {
  Parity p{};
  for (Family f : kFamilies) p[static_cast<std::size_t>(f)] = det_mod2(BitMatrix::reduce(family_matrix(seq, n, f)));
  return p;
}

/// Parities of the nine determinants from a single GF(2) elimination.
///
/// All nine matrices are square submatrices of one (n+3) x (n+2) array whose
/// rows are the n+1 Hankel rows, alpha(n) and beta(n), and whose columns are
/// the n Hankel columns, alpha'(n+1) and beta'(n+1). Every family keeps the
/// first n rows and first n columns. Gauss-Jordan on the core columns, with
/// pivots drawn from core rows only, leaves each pivot column with a single
/// one, so expanding along those columns reduces every family determinant to
/// the small leftover block on (unused core rows + extra rows) x (free core
/// columns + extra columns).
inline Parity family_mod2(std::span<const Term> seq, std::size_t n) {
  if (n == 0) throw PreconditionError("family index must be at least 1");
  if (seq.size() < family_prefix_length(n)) throw LengthError("family_mod2: sequence prefix too short", family_prefix_length(n));
  const std::size_t rows = n + 3, cols = n + 2;
  const std::size_t rf = n, ra = n + 1, rb = n + 2, ca = n, cb = n + 1;
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (seq[i + j] & 1) m.set(i, j, true);
    m.set(i, ca, i % 2 == 0);
    m.set(i, cb, i % 2 == 1);
  }
  for (std::size_t j = 0; j < n; ++j) {
    m.set(ra, j, j % 2 == 0);
    m.set(rb, j, j % 2 == 1);
  }

  const std::size_t w = m.words_per_row();
  std::vector<bool> used(n, false);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t word = c / 64;
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    std::size_t p = 0;
    while (p < n && (used[p] || !(m.row(p)[word] & mask))) ++p;
    if (p == n) {
      free_cols.push_back(c);
      continue;
    }
    used[p] = true;
    const std::uint64_t* piv = m.row(p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == p) continue;
      std::uint64_t* dst = m.row(r);
      if (!(dst[word] & mask)) continue;
      for (std::size_t k = 0; k < w; ++k) dst[k] ^= piv[k];
    }
  }
  std::vector<std::size_t> free_rows;
  for (std::size_t r = 0; r < n; ++r)
    if (!used[r]) free_rows.push_back(r);

  auto minor = [&](std::initializer_list<std::size_t> extra_rows, std::initializer_list<std::size_t> extra_cols) {
    if (free_rows.size() > extra_cols.size()) return false;
    std::vector<std::size_t> rs(free_rows), cs(free_cols);
    rs.insert(rs.end(), extra_rows);
    cs.insert(cs.end(), extra_cols);
    BitMatrix small(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) small.set(i, j, m.get(rs[i], cs[j]));
    return det_mod2(small);
  };

  Parity p{};
  p[0] = minor({}, {});
  p[1] = minor({ra, rb}, {ca, cb});
  p[2] = minor({ra}, {ca});
  p[3] = minor({rb}, {cb});
  p[4] = minor({ra}, {cb});
  p[5] = minor({rf}, {ca});
  p[6] = minor({rf}, {cb});
  p[7] = minor({rf, ra}, {ca, cb});
  p[8] = minor({rf, rb}, {ca, cb});
  return p;
}

/// FamilyRow values for n = 1..n_max, computed independently per n.
inline std::vector<FamilyRow> family_table(std::span<const Term> seq, std::size_t n_max, std::size_t jobs = 1) {
  if (seq.size() < family_prefix_length(n_max)) throw LengthError("family_table: sequence prefix too short", family_prefix_length(n_max));
  std::vector<FamilyRow> rows(n_max);
  parallel_for(n_max, jobs, [&](std::size_t i) { rows[i] = family_direct(seq, i + 1); });
  return rows;
}

inline std::vector<Parity> parity_table(std::span<const Term> seq, std::size_t n_max, std::size_t jobs = 1) {
  if (seq.size() < family_prefix_length(n_max)) throw LengthError("parity_table: sequence prefix too short", family_prefix_length(n_max));
  std::vector<Parity> rows(n_max);
  parallel_for(n_max, jobs, [&](std::size_t i) { rows[i] = family_mod2(seq, i + 1); });
  return rows;
}

// ---------------------------------------------------------------------------
// Period-10 parity tables.

struct Mod2Table {
  std::array<std::set<int>, kFamilyCount> odd_residues;

  static const Mod2Table& paperfolding() {
    static const Mod2Table t{{{
        {0, 1, 2, 5, 8, 9},
        {2, 4, 6, 8},
        {1, 5, 9},
        {2, 3, 4, 5, 6, 7, 8},
        {2, 5, 8},
        {0, 1, 8, 9},
        {1, 2, 4, 5, 7, 8},
        {1, 4, 5, 8},
        {2, 3, 4, 5, 6, 7},
    }}};
    return t;
  }

  bool predicted(Family f, std::size_t n) const {
    return odd_residues[static_cast<std::size_t>(f)].contains(static_cast<int>(n % 10));
  }
};

// ---------------------------------------------------------------------------
// Doubling identities.

struct IdentityVariant {
  std::string name;
  bool printed;  // appears in the source formulas; false for diagnostic corrections
  std::function<Integer(const FamilyRow& r, const FamilyRow& next, long n)> exact;
};

struct Identity {
  int number;
  Family target;
  bool odd;        // target index 2n+1 (else 2n)
  bool uses_next;  // consumes row n+1
  std::vector<IdentityVariant> variants;
  std::function<bool(const Parity& r, const Parity& next)> mod2;
  std::string text;
};

namespace detail {
inline Integer sgn_pow(long e) { return (e % 2 == 0) ? Integer(1) : Integer(-1); }
inline Integer sq(const Integer& z) { return z * z; }
inline std::size_t fi(Family f) { return static_cast<std::size_t>(f); }
}  // namespace detail

/// The 18 identities, each with the printed exact form(s) and the reduced
/// mod-2 form. Identity 2 carries two printed sign variants. Identity 6
/// carries one extra diagnostic variant with the opposite sign on (g+h)^2, and
/// identity 3 one with an added 4b^2 term. Diagnostic variants are reported
/// but never count as a pass.
inline const std::vector<Identity>& lemma1_identities() {
  using detail::sgn_pow;
  using detail::sq;
  using F = Family;
  static const std::vector<Identity> ids = [] {
    auto v = [](const FamilyRow& r, F f) -> const Integer& { return r[f]; };
    auto bit = [](const Parity& p, F f) { return p[detail::fi(f)]; };
    std::vector<Identity> out;
#define A_ v(r, F::a)
#define B_ v(r, F::b)
#define C_ v(r, F::c)
#define D_ v(r, F::d)
#define E_ v(r, F::e)
#define G_ v(r, F::g)
#define H_ v(r, F::h)
#define X_ v(r, F::x)
#define Y_ v(r, F::y)
#define a_ bit(p, F::a)
#define b_ bit(p, F::b)
#define c_ bit(p, F::c)
#define d_ bit(p, F::d)
#define e_ bit(p, F::e)
#define g_ bit(p, F::g)
#define h_ bit(p, F::h)
#define x_ bit(p, F::x)
#define y_ bit(p, F::y)
    using Row = const FamilyRow&;
    using Bits = const Parity&;
    out.push_back({1, F::a, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * (sq(B_) + 2 * C_ * E_ + 2 * D_ * E_ - sq(A_))); }}},
                   [=](Bits p, Bits) { return a_ ^ b_; },
                   "a_{2n} = (-1)^{n+1}(b^2 + 2ce + 2de - a^2) == a + b"});
    out.push_back({2, F::a, true, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * (2 * X_ * Y_ - sq(G_) - sq(H_))); }},
                    {"proof", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * (-sq(G_) + sq(H_) + 2 * X_ * Y_)); }}},
                   [=](Bits p, Bits) { return g_ ^ h_; },
                   "a_{2n+1} = (-1)^{n+1}(2xy - g^2 - h^2) [proof: -g^2 + h^2 + 2xy] == g + h"});
    out.push_back({3, F::b, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * sq(C_ + 2 * E_ + D_)); }},
                    {"with-4b^2", false, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * (sq(C_ + 2 * E_ + D_) + 4 * sq(B_))); }}},
                   [=](Bits p, Bits) { return c_ ^ d_; },
                   "b_{2n} = (-1)^{n+1}(c + 2e + d)^2 == c + d"});
    out.push_back({4, F::b, true, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * 2 * sq(X_ + Y_)); }}},
                   [=](Bits, Bits) { return false; },
                   "b_{2n+1} = (-1)^{n+1} 2(x + y)^2 == 0"});
    out.push_back({5, F::c, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * 2 * (sq(B_) + (C_ + E_) * (D_ + E_))); }}},
                   [=](Bits, Bits) { return false; },
                   "c_{2n} = (-1)^n 2(b^2 + (c + e)(d + e)) == 0"});
    out.push_back({6, F::c, true, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (4 * X_ * Y_ + sq(G_ + H_))); }},
                    {"sign-corrected", false, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (4 * X_ * Y_ - sq(G_ + H_))); }}},
                   [=](Bits p, Bits) { return g_ ^ h_; },
                   "c_{2n+1} = (-1)^n(4xy + (g + h)^2) == g + h"});
    out.push_back({7, F::d, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (2 * sq(B_) + sq(C_ + E_) + sq(D_ + E_))); }}},
                   [=](Bits p, Bits) { return c_ ^ d_; },
                   "d_{2n} = (-1)^n(2b^2 + (c + e)^2 + (d + e)^2) == c + d"});
    out.push_back({8, F::d, true, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * sq(X_ + Y_)); }}},
                   [=](Bits p, Bits) { return x_ ^ y_; },
                   "d_{2n+1} = (-1)^n(x + y)^2 == x + y"});
    out.push_back({9, F::e, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (B_ * (C_ + D_ - 2 * E_) + A_ * (C_ + D_ + 2 * E_))); }}},
                   [=](Bits p, Bits) { return (a_ ^ b_) && (c_ ^ d_); },
                   "e_{2n} = (-1)^n(b(c + d - 2e) + a(c + d + 2e)) == (a + b)(c + d)"});
    out.push_back({10, F::e, true, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (G_ - H_) * (X_ + Y_)); }}},
                   [=](Bits p, Bits) { return (g_ ^ h_) && (x_ ^ y_); },
                   "e_{2n+1} = (-1)^n(g - h)(x + y) == (g + h)(x + y)"});
    out.push_back({11, F::g, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (C_ * Y_ + E_ * X_ - E_ * Y_ - D_ * X_ + A_ * (G_ + H_))); }}},
                   [=](Bits p, Bits) { return (a_ && (g_ ^ h_)) ^ (x_ && (d_ ^ e_)) ^ (y_ && (c_ ^ e_)); },
                   "g_{2n} = (-1)^n(cy + ex - ey - dx + a(g + h)) == a(g + h) + x(d + e) + y(c + e)"});
    out.push_back({12, F::g, true, true,
                   {{"statement", true, [=](Row r, Row s, long n) {
                      return Integer(sgn_pow(n + 1) * (s[F::c] * Y_ + s[F::e] * X_ - s[F::e] * Y_ - s[F::d] * X_ + s[F::a] * (G_ + H_)));
                    }}},
                   [=](Bits p, Bits q) {
                     return (bit(q, F::a) && (g_ ^ h_)) ^ (x_ && (bit(q, F::d) ^ bit(q, F::e))) ^ (y_ && (bit(q, F::c) ^ bit(q, F::e)));
                   },
                   "g_{2n+1} = (-1)^{n+1}(c'y + e'x - e'y - d'x + a'(g + h)) == a'(g + h) + x(d' + e') + y(c' + e')"});
    out.push_back({13, F::h, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (B_ * (Y_ - X_) + G_ * (C_ + E_) + H_ * (D_ + E_))); }}},
                   [=](Bits p, Bits) { return (g_ && (c_ ^ e_)) ^ (h_ && (d_ ^ e_)) ^ (b_ && (x_ ^ y_)); },
                   "h_{2n} = (-1)^n(b(y - x) + g(c + e) + h(d + e)) == g(c + e) + h(d + e) + b(x + y)"});
    out.push_back({14, F::h, true, true,
                   {{"statement", true, [=](Row r, Row s, long n) {
                      return Integer(sgn_pow(n + 1) * (s[F::b] * (Y_ - X_) + G_ * (s[F::c] + s[F::e]) + H_ * (s[F::d] + s[F::e])));
                    }}},
                   [=](Bits p, Bits q) {
                     return (g_ && (bit(q, F::c) ^ bit(q, F::e))) ^ (h_ && (bit(q, F::d) ^ bit(q, F::e))) ^ (bit(q, F::b) && (x_ ^ y_));
                   },
                   "h_{2n+1} = (-1)^{n+1}(b'(y - x) + g(c' + e') + h(d' + e')) == g(c' + e') + h(d' + e') + b'(x + y)"});
    out.push_back({15, F::x, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n) * (2 * B_ * (Y_ - X_) + (G_ + H_) * (C_ + D_ + 2 * E_))); }}},
                   [=](Bits p, Bits) { return (g_ ^ h_) && (c_ ^ d_); },
                   "x_{2n} = (-1)^n(2b(y - x) + (g + h)(c + d + 2e)) == (g + h)(c + d)"});
    out.push_back({16, F::x, true, true,
                   {{"statement", true, [=](Row r, Row s, long n) {
                      return Integer(sgn_pow(n + 1) * (2 * s[F::b] * (Y_ - X_) + (G_ + H_) * (s[F::c] + s[F::d] + 2 * s[F::e])));
                    }}},
                   [=](Bits p, Bits q) { return (g_ ^ h_) && (bit(q, F::c) ^ bit(q, F::d)); },
                   "x_{2n+1} = (-1)^{n+1}(2b'(y - x) + (g + h)(c' + d' + 2e')) == (g + h)(c' + d')"});
    out.push_back({17, F::y, false, false,
                   {{"statement", true, [=](Row r, Row, long n) { return Integer(sgn_pow(n + 1) * (X_ + Y_) * (C_ - D_)); }}},
                   [=](Bits p, Bits) { return (x_ ^ y_) && (c_ ^ d_); },
                   "y_{2n} = (-1)^{n+1}(x + y)(c - d) == (x + y)(c + d)"});
    out.push_back({18, F::y, true, true,
                   {{"statement", true, [=](Row r, Row s, long n) { return Integer(sgn_pow(n) * (X_ + Y_) * (s[F::c] - s[F::d])); }}},
                   [=](Bits p, Bits q) { return (x_ ^ y_) && (bit(q, F::c) ^ bit(q, F::d)); },
                   "y_{2n+1} = (-1)^n(x + y)(c' - d') == (x + y)(c' + d')"});
#undef A_
#undef B_
#undef C_
#undef D_
#undef E_
#undef G_
#undef H_
#undef X_
#undef Y_
#undef a_
#undef b_
#undef c_
#undef d_
#undef e_
#undef g_
#undef h_
#undef x_
#undef y_
    return out;
  }();
  return ids;
}

/// Rows for n = 1..N stored at position n-1. Lookup of a missing index is a
/// dependency error.
class FamilyTable {
 public:
  FamilyTable() = default;
  explicit FamilyTable(std::vector<FamilyRow> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].n != i + 1) throw PreconditionError("family table rows must be n = 1, 2, ... in order");
  }
  std::size_t max_n() const { return rows_.size(); }
  const FamilyRow& at(std::size_t n) const {
    if (n == 0 || n > rows_.size()) throw DependencyError("family row " + std::to_string(n) + " is not in the table");
    return rows_[n - 1];
  }
  const std::vector<FamilyRow>& rows() const { return rows_; }

 private:
  std::vector<FamilyRow> rows_;
};

struct RecurrencePrediction {
  std::size_t n = 0;
  FamilyRow even;  // predicted values at 2n (statement variants)
  FamilyRow odd;   // predicted values at 2n+1
  Parity even_mod2{};
  Parity odd_mod2{};
};

/// Predict all nine families at 2n and 2n+1 from rows n and n+1.
inline RecurrencePrediction family_recurrence(const FamilyTable& table, std::size_t n) {
  const FamilyRow& r = table.at(n);
  const FamilyRow& next = table.at(n + 1);
  const Parity pr = parity_of(r), pn = parity_of(next);
  RecurrencePrediction out;
  out.n = n;
  out.even.n = 2 * n;
  out.odd.n = 2 * n + 1;
  for (const auto& id : lemma1_identities()) {
    FamilyRow& dst = id.odd ? out.odd : out.even;
    Parity& dst2 = id.odd ? out.odd_mod2 : out.even_mod2;
    dst[id.target] = id.variants.front().exact(r, next, static_cast<long>(n));
    dst2[detail::fi(id.target)] = id.mod2(pr, pn);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification harnesses.

struct Lemma1Entry {
  int identity = 0;
  std::size_t n = 0;
  std::size_t target_index = 0;
  bool exact_ok = false;
  bool mod2_ok = false;
  Integer lhs;
  Integer rhs;
  std::string sign_variant;                  // variant used for rhs
  std::vector<std::string> matching_variants;  // all variants equal to lhs at this n
};

struct IdentitySummary {
  int identity = 0;
  std::string text;
  std::optional<std::string> resolved_variant;  // holds for every tested n
  bool resolved_is_printed = false;
  bool exact_holds = false;  // a printed variant holds for every tested n
  bool mod2_holds = true;
  bool parity_dependent = false;  // every n matched some variant, but none matched all
  std::size_t exact_failures = 0;
  std::optional<std::size_t> first_failure;
  std::size_t checked = 0;
};

struct Lemma1Report {
  std::size_t n_max = 0;
  std::vector<Lemma1Entry> entries;
  std::vector<IdentitySummary> identities;
  bool all_mod2() const {
    for (const auto& s : identities)
      if (!s.mod2_holds) return false;
    return true;
  }
  bool all_exact() const {
    for (const auto& s : identities)
      if (!s.exact_holds) return false;
    return true;
  }
};

/// Compare every identity against the directly computed table for all n with
/// 2n+1 <= table.max_n().
inline Lemma1Report verify_lemma1(const FamilyTable& table) {
  if (table.max_n() < 2) throw PreconditionError("verify_lemma1: n_max must be at least 2");
  Lemma1Report rep;
  rep.n_max = table.max_n();
  for (const auto& id : lemma1_identities()) {
    IdentitySummary sum;
    sum.identity = id.number;
    sum.text = id.text;
    std::vector<bool> variant_all(id.variants.size(), true);
    bool every_n_some_variant = true;
    std::vector<Lemma1Entry> local;
    for (std::size_t n = 1; 2 * n + 1 <= table.max_n(); ++n) {
      const FamilyRow& r = table.at(n);
      const FamilyRow& next = table.at(n + 1);
      const std::size_t idx = id.odd ? 2 * n + 1 : 2 * n;
      Lemma1Entry e;
      e.identity = id.number;
      e.n = n;
      e.target_index = idx;
      e.lhs = table.at(idx)[id.target];
      std::vector<Integer> vals;
      for (std::size_t vi = 0; vi < id.variants.size(); ++vi) {
        vals.push_back(id.variants[vi].exact(r, next, static_cast<long>(n)));
        if (vals.back() == e.lhs)
          e.matching_variants.push_back(id.variants[vi].name);
        else
          variant_all[vi] = false;
      }
      if (e.matching_variants.empty()) every_n_some_variant = false;
      e.mod2_ok = id.mod2(parity_of(r), parity_of(next)) == is_odd(e.lhs);
      if (!e.mod2_ok) sum.mod2_holds = false;
      e.rhs = vals.front();
      e.sign_variant = id.variants.front().name;
      local.push_back(std::move(e));
      ++sum.checked;
    }
    std::optional<std::size_t> chosen;
    for (std::size_t vi = 0; vi < id.variants.size() && !chosen; ++vi)
      if (variant_all[vi] && id.variants[vi].printed) chosen = vi;
    for (std::size_t vi = 0; vi < id.variants.size() && !chosen; ++vi)
      if (variant_all[vi]) chosen = vi;
    if (chosen) {
      sum.resolved_variant = id.variants[*chosen].name;
      sum.resolved_is_printed = id.variants[*chosen].printed;
    }
    sum.exact_holds = chosen && sum.resolved_is_printed;
    sum.parity_dependent = !chosen && every_n_some_variant && sum.checked > 0;
    for (auto& e : local) {
      if (chosen) {
        e.sign_variant = id.variants[*chosen].name;
        e.rhs = id.variants[*chosen].exact(table.at(e.n), table.at(e.n + 1), static_cast<long>(e.n));
      }
      const std::size_t pick = chosen.value_or(0);
      e.exact_ok = id.variants[pick].printed && e.rhs == e.lhs;
      if (!e.exact_ok) {
        ++sum.exact_failures;
        if (!sum.first_failure) sum.first_failure = e.n;
      }
      rep.entries.push_back(std::move(e));
    }
    rep.identities.push_back(std::move(sum));
  }
  return rep;
}

inline Lemma1Report verify_lemma1(std::span<const Term> seq, std::size_t n_max, std::size_t jobs = 1) {
  if (n_max < 2) throw PreconditionError("verify_lemma1: n_max must be at least 2");
  return verify_lemma1(FamilyTable(family_table(seq, n_max, jobs)));
}

struct Prop2Deviation {
  Family family;
  std::size_t n;
  bool computed;
};

struct Prop2Report {
  std::size_t n_max = 0;
  std::vector<Parity> parities;  // index n-1
  std::vector<Prop2Deviation> deviations;
  bool pass() const { return deviations.empty(); }
};

/// All nine families mod 2 for 1 <= n <= n_max against the period-10 table.
inline Prop2Report verify_prop2(std::span<const Term> seq, std::size_t n_max, const Mod2Table& table = Mod2Table::paperfolding(),
                                std::size_t jobs = 1) {
  if (n_max < 10) throw PreconditionError("verify_prop2: n_max must be at least 10");
  Prop2Report rep;
  rep.n_max = n_max;
  rep.parities = parity_table(seq, n_max, jobs);
  for (std::size_t n = 1; n <= n_max; ++n)
    for (Family f : kFamilies) {
      const bool got = rep.parities[n - 1][detail::fi(f)];
      if (got != table.predicted(f, n)) rep.deviations.push_back({f, n, got});
    }
  return rep;
}

struct StarReport {
  std::size_t n_max = 0;
  std::size_t exact_max = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::size_t> even_pairs;     // i with H_{10i+1} H_{10i+2} even
  std::vector<std::size_t> vanishing;      // n <= exact_max with H_n = 0
  std::vector<Integer> hankel;             // H_1 .. H_{exact_max}
  bool pass() const { return even_pairs.empty() && vanishing.empty(); }
};

/// Exact H_1 .. H_N. A single fraction-free pass yields every leading minor
/// while they are nonzero; past a zero minor the rest fall back to det_exact.
inline std::vector<Integer> hankel_determinants(std::span<const Term> seq, std::size_t count, std::size_t jobs = 1) {
  if (count == 0) return {};
  const IntMatrix big = hankel_block(seq, 0, count, count);
  std::vector<Integer> out = leading_principal_minors(big);
  const std::size_t known = out.size();
  out.resize(count);
  parallel_for(count - known, jobs, [&](std::size_t i) {
    const std::size_t n = known + i + 1;
    out[n - 1] = det_exact(hankel_block(seq, 0, n, n));
  });
  return out;
}

/// H_{10i+1} and H_{10i+2} odd for every 10i+2 <= n_max (GF(2) path), and
/// H_n != 0 for every n <= exact_max (exact path).
inline StarReport star_check(std::span<const Term> seq, std::size_t n_max, std::size_t exact_max, std::size_t jobs = 1) {
  if (n_max < 2) throw PreconditionError("star_check: n_max must be at least 2");
  StarReport rep;
  rep.n_max = n_max;
  rep.exact_max = exact_max;
  std::vector<std::size_t> is;
  for (std::size_t i = 0; 10 * i + 2 <= n_max; ++i) is.push_back(i);
  std::vector<char> odd(is.size());
  parallel_for(is.size(), jobs, [&](std::size_t t) {
    const std::size_t i = is[t];
    const bool o1 = det_mod2(BitMatrix::reduce(hankel_block(seq, 0, 10 * i + 1, 10 * i + 1)));
    const bool o2 = det_mod2(BitMatrix::reduce(hankel_block(seq, 0, 10 * i + 2, 10 * i + 2)));
    odd[t] = o1 && o2;
  });
  rep.pairs_checked = is.size();
  for (std::size_t t = 0; t < is.size(); ++t)
    if (!odd[t]) rep.even_pairs.push_back(is[t]);
  rep.hankel = hankel_determinants(seq, exact_max, jobs);
  for (std::size_t n = 1; n <= exact_max; ++n)
    if (rep.hankel[n - 1] == 0) rep.vanishing.push_back(n);
  return rep;
}

// ---------------------------------------------------------------------------
// Table file: CSV with header n,a,b,c,d,e,g,h,x,y.

inline constexpr const char* kTableHeader = "n,a,b,c,d,e,g,h,x,y";

inline void write_table_csv(std::ostream& os, std::span<const FamilyRow> rows) {
  os << kTableHeader << '\n';
  for (const auto& r : rows) {
    os << r.n;
    for (const auto& v : r.v) os << ',' << v.get_str();
    os << '\n';
  }
}

/// Parses a table; throws DomainError on any malformed content.
inline std::vector<FamilyRow> read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kTableHeader) throw DomainError("family table: missing or wrong header");
  std::vector<FamilyRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 1 + kFamilyCount) throw DomainError("family table: row with wrong number of cells");
    FamilyRow r;
    const Integer n = parse_integer(cells[0]);
    if (n != static_cast<long>(rows.size() + 1)) throw DomainError("family table: rows out of order");
    r.n = rows.size() + 1;
    for (std::size_t i = 0; i < kFamilyCount; ++i) {
      if (cells[i + 1].empty()) throw DomainError("family table: empty cell");
      r.v[i] = parse_integer(cells[i + 1]);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace hankel
