#pragma once

// Prefixes of automatic sequences (closed-form rules and morphism fixed
// points under a coding) and checks of Mahler-type functional equations
//   f(x) = A(x)/B(x) + C(x) f(x^k)
// satisfied by their generating functions.

#include "hankel/bigint.hpp"
#include "hankel/linalg.hpp"
#include "hankel/series.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hankel {

struct MorphicSpec {
  std::string alphabet;
  std::map<char, std::string> morphism;
  std::map<char, Term> coding;
  char seed = 0;

  /// Throws PreconditionError unless the seed is prolongable, every letter
  /// reachable from it has a nonempty image inside the alphabet and a coding.
  void validate() const {
    auto in_alphabet = [&](char c) { return alphabet.find(c) != std::string::npos; };
    if (!in_alphabet(seed)) throw PreconditionError(std::string("morphic spec: seed '") + seed + "' not in alphabet");
    std::string frontier(1, seed);
    std::string seen;
    while (!frontier.empty()) {
      char c = frontier.back();
      frontier.pop_back();
      if (seen.find(c) != std::string::npos) continue;
      seen += c;
      auto it = morphism.find(c);
      if (it == morphism.end() || it->second.empty())
        throw PreconditionError(std::string("morphic spec: letter '") + c + "' has an empty image");
      if (!coding.contains(c)) throw PreconditionError(std::string("morphic spec: letter '") + c + "' has no coding");
      for (char d : it->second) {
        if (!in_alphabet(d)) throw PreconditionError(std::string("morphic spec: image letter '") + d + "' not in alphabet");
        frontier += d;
      }
    }
    const std::string& img = morphism.at(seed);
    if (img.front() != seed) throw PreconditionError(std::string("morphic spec: morphism(seed) does not begin with '") + seed + "'");
    if (img.size() < 2) throw PreconditionError("morphic spec: seed image has length 1, the fixed point is finite");
  }
};

/// tau: a->ab, b->cb, c->ad, d->cd with coding a,b -> 1 and c,d -> 0.
inline MorphicSpec paperfolding_morphism() {
  return MorphicSpec{"abcd", {{'a', "ab"}, {'b', "cb"}, {'c', "ad"}, {'d', "cd"}}, {{'a', 1}, {'b', 1}, {'c', 0}, {'d', 0}}, 'a'};
}

/// 1 -> 1(-1), -1 -> (-1)1 written over letters p = +1, m = -1.
inline MorphicSpec thue_morse_morphism() {
  return MorphicSpec{"pm", {{'p', "pm"}, {'m', "mp"}}, {{'p', 1}, {'m', -1}}, 'p'};
}

/// 1 -> 101, 0 -> 000.
inline MorphicSpec cantor_morphism() {
  return MorphicSpec{"10", {{'1', "101"}, {'0', "000"}}, {{'1', 1}, {'0', 0}}, '1'};
}

/// Iterate the morphism on the seed until the word has at least n letters,
/// then apply the coding.
inline Sequence morphic_prefix(const MorphicSpec& spec, std::size_t n) {
  spec.validate();
  std::string word(1, spec.seed);
  while (word.size() < n) {
    std::string next;
    next.reserve(word.size() * spec.morphism.at(spec.seed).size());
    for (char c : word) next += spec.morphism.at(c);
    word = std::move(next);
  }
  Sequence out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = spec.coding.at(word[i]);
  return out;
}

/// f_{4n} = 1, f_{4n+2} = 0, f_{2n+1} = f_n.
inline Sequence paperfolding_closed(std::size_t n) {
  Sequence f(n);
  for (std::size_t i = 0; i < n; ++i) {
    // odd indices fold down through f_{2n+1} = f_n
    std::size_t j = i;
    while (j % 2 == 1) j /= 2;
    f[i] = (j % 4 == 0) ? 1 : 0;
  }
  return f;
}

inline Sequence thue_morse_closed(std::size_t n) {
  Sequence t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = (std::popcount(i) % 2 == 0) ? 1 : -1;
  return t;
}

inline Sequence cantor_closed(std::size_t n) {
  Sequence c(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i;
    bool ok = true;
    while (j > 0 && ok) {
      ok = (j % 3) != 1;
      j /= 3;
    }
    c[i] = ok ? 1 : 0;
  }
  return c;
}

enum class SequenceKind { PaperfoldingClosed, PaperfoldingMorphic, ThueMorsePm1, Cantor, CustomMorphic };

struct SequenceSpec {
  SequenceKind kind = SequenceKind::PaperfoldingClosed;
  std::optional<MorphicSpec> custom;  // only for CustomMorphic

  static SequenceSpec paperfolding() { return {SequenceKind::PaperfoldingClosed, std::nullopt}; }
  static SequenceSpec custom_morphic(MorphicSpec spec) {
    spec.validate();
    return {SequenceKind::CustomMorphic, std::move(spec)};
  }

  std::string name() const {
    switch (kind) {
      case SequenceKind::PaperfoldingClosed: return "paperfolding";
      case SequenceKind::PaperfoldingMorphic: return "paperfolding-morphic";
      case SequenceKind::ThueMorsePm1: return "thue-morse-pm1";
      case SequenceKind::Cantor: return "cantor";
      case SequenceKind::CustomMorphic: return "custom-morphic";
    }
    return "unknown";
  }

  /// Accepts the CLI spellings; returns nullopt for unknown names.
  static std::optional<SequenceSpec> from_name(std::string_view name) {
    if (name == "paperfolding" || name == "paperfolding-closed") return SequenceSpec{SequenceKind::PaperfoldingClosed, {}};
    if (name == "paperfolding-morphic") return SequenceSpec{SequenceKind::PaperfoldingMorphic, {}};
    if (name == "thue-morse-pm1" || name == "thue-morse") return SequenceSpec{SequenceKind::ThueMorsePm1, {}};
    if (name == "cantor") return SequenceSpec{SequenceKind::Cantor, {}};
    return std::nullopt;
  }
};

/// u_0 .. u_{n-1}.
inline Sequence prefix(const SequenceSpec& spec, std::size_t n) {
  switch (spec.kind) {
    case SequenceKind::PaperfoldingClosed: return paperfolding_closed(n);
    case SequenceKind::PaperfoldingMorphic: return morphic_prefix(paperfolding_morphism(), n);
    case SequenceKind::ThueMorsePm1: return morphic_prefix(thue_morse_morphism(), n);
    case SequenceKind::Cantor: return morphic_prefix(cantor_morphism(), n);
    case SequenceKind::CustomMorphic:
      if (!spec.custom) throw PreconditionError("custom-morphic sequence without a morphic spec");
      return morphic_prefix(*spec.custom, n);
  }
  throw InternalError("unhandled sequence kind");
}

/// Prefix generator that keeps the longest prefix computed so far. Safe to
/// share between threads.
class PrefixCache {
 public:
  explicit PrefixCache(SequenceSpec spec) : spec_(std::move(spec)) {}

  Sequence get(std::size_t n) const {
    std::lock_guard lock(mu_);
    if (cached_.size() < n) cached_ = prefix(spec_, std::max(n, 2 * cached_.size()));
    return Sequence(cached_.begin(), cached_.begin() + static_cast<std::ptrdiff_t>(n));
  }
  const SequenceSpec& spec() const { return spec_; }

 private:
  SequenceSpec spec_;
  mutable std::mutex mu_;
  mutable Sequence cached_;
};

/// f(x) = A(x)/B(x) + C(x) f(x^k) with A, B, C in Z[x].
struct FunctionalEquation {
  IntPoly A;
  IntPoly B;
  IntPoly C;
  std::size_t k = 2;

  /// F(z) = 1/(1 - z^4) + z F(z^2).
  static FunctionalEquation paperfolding() { return {IntPoly{1}, IntPoly{1, 0, 0, 0, -1}, IntPoly{0, 1}, 2}; }

  void validate() const {
    if (k < 2) throw PreconditionError("functional equation: k must be at least 2");
    if (B[0] == 0) throw PreconditionError("functional equation: B(0) = 0, A/B has no power series expansion");
    if (C.is_zero()) throw PreconditionError("functional equation: C is identically zero");
  }

  long alpha() const { return A.is_zero() ? 0 : A.degree(); }
  long beta() const { return B.degree(); }
  long gamma() const { return C.degree(); }
  std::size_t s() const { return C.valuation(); }

  /// Largest coefficient magnitude of C.
  Integer eta() const {
    Integer m = 0;
    for (const auto& c : C.coeffs()) m = std::max<Integer>(m, abs(c));
    return m;
  }

  /// |C(1/b)| * b^s, the tightest constant with |C(1/b)| >= zeta (1/b)^s.
  Rational zeta(const Integer& b) const {
    Rational x = make_rational(1, b);
    Rational v = abs(C.eval(x));
    if (v == 0) throw DomainError("functional equation: C(1/b) = 0, no lower bound constant exists");
    return v * Rational(pow_int(b, s()));
  }
};

struct FunctionalEquationCheck {
  bool holds = true;
  std::optional<std::size_t> first_mismatch;
};

/// Compare coefficients 0..order-1 of f and A/B + C f(x^k).
inline FunctionalEquationCheck check_functional_equation(std::span<const Term> terms, const FunctionalEquation& fe,
                                                         std::size_t order) {
  if (order == 0) throw PreconditionError("check_functional_equation: order must be at least 1");
  if (fe.B[0] == 0) throw PreconditionError("check_functional_equation: B(0) = 0");
  fe.validate();
  if (terms.size() < order) throw LengthError("check_functional_equation: prefix too short", order);
  RatSeries f = RatSeries::from_terms(terms.first(order));
  RatSeries rhs = series_of_ratio(fe.A, fe.B, order) + RatSeries::from_poly(fe.C, order) * f.compose_power(fe.k);
  FunctionalEquationCheck out;
  for (std::size_t i = 0; i < order; ++i)
    if (f[i] != rhs[i]) {
      out.holds = false;
      out.first_mismatch = i;
      break;
    }
  return out;
}

inline FunctionalEquationCheck check_functional_equation(const SequenceSpec& spec, const FunctionalEquation& fe,
                                                         std::size_t order) {
  if (order == 0) throw PreconditionError("check_functional_equation: order must be at least 1");
  const Sequence terms = prefix(spec, order);
  return check_functional_equation(std::span<const Term>(terms), fe, order);
}

}  // namespace hankel
