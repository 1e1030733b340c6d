#pragma once

// The `hankel` command line: seq, families, hankel-table, pade, exponent.
// run_cli is the whole program, kept in a header so tests can drive it
// in-process.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 internal error.

#include "hankel/families.hpp"
#include "hankel/irrationality.hpp"
#include "hankel/pade.hpp"
#include "hankel/parallel.hpp"
#include "hankel/report.hpp"
#include "hankel/sequences.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hankel {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string subcommand;
  std::string sequence = "paperfolding";
  std::string format;
  std::string output;
  std::string table_out;
  std::string cache_dir;
  bool no_cache = false;
  std::size_t jobs = default_jobs();
  bool timings = true;

  std::size_t n = 0;          // seq, hankel-table
  std::size_t max_n = 0;      // families
  std::size_t prop2_max = 0;  // 0: max_n
  std::size_t star_max = 0;   // 0: max_n
  std::size_t exact_max = 0;  // 0: min(max_n, 300)
  bool verify_lemma1 = false;
  bool verify_prop2 = false;
  bool verify_star = false;

  std::size_t k = 1;  // pade
  bool verify = false;

  std::string b = "2";  // exponent
  std::size_t l = 11;
  bool l_given = false;
  std::size_t m_min = 1;
  std::size_t m_max = 8;
  std::string ladder;
  bool merged = false;
  std::size_t L = 10;
  std::string L_range;
  std::size_t max_tail = 0;
  bool with_integers = true;

  /// Echo of the parameters that affect results.
  Json to_json() const {
    Json j{{"subcommand", subcommand}, {"sequence", sequence}, {"format", format}};
    if (subcommand == "seq" || subcommand == "hankel-table") j["n"] = n;
    if (subcommand == "families") {
      j["max_n"] = max_n;
      j["prop2_max"] = prop2_max;
      j["star_max"] = star_max;
      j["exact_max"] = exact_max;
      j["verify_lemma1"] = verify_lemma1;
      j["verify_prop2"] = verify_prop2;
      j["verify_star"] = verify_star;
    }
    if (subcommand == "pade") {
      j["k"] = k;
      j["verify"] = verify;
    }
    if (subcommand == "exponent") {
      j["b"] = b;
      j["l"] = l;
      j["m_min"] = m_min;
      j["m_max"] = m_max;
      j["ladder"] = ladder;
      j["merged"] = merged;
      j["L"] = L;
      j["L_range"] = L_range;
      j["max_tail"] = max_tail;
    }
    return j;
  }
};

namespace cli {

inline SequenceSpec sequence_or_usage(const std::string& name) {
  auto s = SequenceSpec::from_name(name);
  if (!s) throw UsageError("unknown sequence '" + name + "' (paperfolding, paperfolding-morphic, thue-morse-pm1, cantor)");
  return *s;
}

inline void check_format(const std::string& f) {
  if (f != "csv" && f != "json" && f != "text") throw UsageError("unknown format '" + f + "' (csv, json, text)");
}

inline std::vector<std::size_t> parse_range(const std::string& text, const char* what) {
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ':')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(cell, &pos);
      if (pos != cell.size() || v <= 0) throw std::invalid_argument(cell);
      parts.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad ") + what + " '" + text + "'");
    }
  }
  if (parts.size() == 2) parts.push_back(1);
  if (parts.size() != 3 || parts[0] > parts[1]) throw UsageError(std::string("bad ") + what + " '" + text + "', expected start:stop[:step]");
  std::vector<std::size_t> out;
  for (std::size_t v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
  return out;
}

/// Writes to --output when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

inline void emit_report(const RunConfig& cfg, const VerificationReport& rep, std::ostream& out) {
  Sink sink(cfg.output, out);
  if (cfg.format == "text")
    sink.os() << rep.to_text();
  else
    sink.os() << rep.to_json(cfg.timings).dump(2) << '\n';
}

inline int exit_for(const VerificationReport& rep) { return rep.pass() ? kExitPass : kExitCheckFailed; }

// ---------------------------------------------------------------------------

inline int cmd_seq(RunConfig& cfg, std::ostream& out) {
  const SequenceSpec spec = sequence_or_usage(cfg.sequence);
  check_format(cfg.format);
  const Sequence s = prefix(spec, cfg.n);
  Sink sink(cfg.output, out);
  if (cfg.format == "csv") {
    for (Term t : s) sink.os() << t << '\n';
  } else if (cfg.format == "json") {
    sink.os() << Json(s).dump() << '\n';
  } else if (!s.empty()) {
    const bool digits = std::all_of(s.begin(), s.end(), [](Term t) { return t == 0 || t == 1; });
    for (std::size_t i = 0; i < s.size(); ++i) sink.os() << (digits || i == 0 ? "" : " ") << s[i];
    sink.os() << '\n';
  }
  return kExitPass;
}

inline int cmd_hankel_table(RunConfig& cfg, std::ostream& out) {
  const SequenceSpec spec = sequence_or_usage(cfg.sequence);
  check_format(cfg.format);
  const Sequence s = prefix(spec, cfg.n == 0 ? 0 : 2 * cfg.n - 1);
  const std::vector<Integer> H = hankel_determinants(s, cfg.n, cfg.jobs);
  Sink sink(cfg.output, out);
  if (cfg.format == "csv") {
    sink.os() << "n,H\n";
    for (std::size_t i = 0; i < H.size(); ++i) sink.os() << i + 1 << ',' << H[i].get_str() << '\n';
  } else if (cfg.format == "json") {
    Json a = Json::array();
    for (const auto& h : H) a.push_back(h.get_str());
    sink.os() << Json{{"sequence", spec.name()}, {"H", a}}.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < H.size(); ++i) sink.os() << "H_" << i + 1 << " = " << H[i].get_str() << '\n';
  }
  return kExitPass;
}

inline int cmd_families(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SequenceSpec spec = sequence_or_usage(cfg.sequence);
  check_format(cfg.format);
  if (cfg.max_n < 10) throw UsageError("families: --max-n must be at least 10 for the period-10 checks");
  if (cfg.prop2_max == 0) cfg.prop2_max = cfg.max_n;
  if (cfg.star_max == 0) cfg.star_max = cfg.max_n;
  if (cfg.exact_max == 0) cfg.exact_max = std::min<std::size_t>(cfg.max_n, 300);
  if (cfg.prop2_max < 10) throw UsageError("families: --prop2-max must be at least 10");

  VerificationReport rep;
  rep.config = cfg.to_json();
  PrefixCache seq(spec);

  Stopwatch sw;
  const TableCache cache = cfg.no_cache ? TableCache() : TableCache::resolve(cfg.cache_dir);
  CacheOutcome outcome = CacheOutcome::Disabled;
  std::vector<FamilyRow> rows;
  if (auto cached = cache.load(spec.name(), cfg.max_n, outcome)) {
    rows = std::move(*cached);
  } else {
    if (outcome == CacheOutcome::Corrupt)
      err << "warning: cache file " << cache.path_for(spec.name(), cfg.max_n).string() << " is corrupt; recomputing\n";
    rows = family_table(seq.get(family_prefix_length(cfg.max_n)), cfg.max_n, cfg.jobs);
    cache.store(spec.name(), cfg.max_n, rows);
  }
  rep.runtime["cache"] = cache_outcome_name(outcome);
  if (cache.enabled()) rep.runtime["cache_file"] = cache.path_for(spec.name(), cfg.max_n).string();
  rep.timings.emplace_back("table", sw.seconds());

  if (!cfg.table_out.empty()) {
    std::ofstream t(cfg.table_out, std::ios::trunc);
    if (!t) throw UsageError("cannot open table file '" + cfg.table_out + "'");
    write_table_csv(t, rows);
  }
  if (cfg.format == "csv") {
    Sink sink(cfg.output, out);
    write_table_csv(sink.os(), rows);
  }

  const bool paperfolding = spec.kind == SequenceKind::PaperfoldingClosed || spec.kind == SequenceKind::PaperfoldingMorphic;
  if (cfg.verify_lemma1) {
    Stopwatch t;
    const Lemma1Report l1 = verify_lemma1(FamilyTable(rows));
    Json ids = Json::array();
    for (const auto& s : l1.identities) {
      Json j{{"identity", s.identity},
             {"text", s.text},
             {"resolved_variant", s.resolved_variant ? Json(*s.resolved_variant) : Json(nullptr)},
             {"resolved_is_printed", s.resolved_is_printed},
             {"exact_holds", s.exact_holds},
             {"mod2_holds", s.mod2_holds},
             {"parity_dependent", s.parity_dependent},
             {"checked", s.checked},
             {"exact_failures", s.exact_failures}};
      j["first_failure_n"] = s.first_failure ? Json(*s.first_failure) : Json(nullptr);
      ids.push_back(j);
    }
    rep.data["lemma1"] = ids;
    Json failing = Json::array();
    for (const auto& s : l1.identities)
      if (!s.exact_holds) failing.push_back(s.identity);
    rep.add("lemma1-exact", l1.all_exact(), Json{{"n_max", l1.n_max}, {"failing_identities", failing}});
    rep.add("lemma1-mod2", l1.all_mod2(), Json{{"n_max", l1.n_max}});
    rep.timings.emplace_back("lemma1", t.seconds());
  }
  if (cfg.verify_prop2) {
    if (!paperfolding) {
      rep.skip("prop2-period10", Json{{"reason", "residue tables are for the paperfolding sequence"}});
    } else {
      Stopwatch t;
      const Prop2Report p2 = verify_prop2(seq.get(family_prefix_length(cfg.prop2_max)), cfg.prop2_max, Mod2Table::paperfolding(), cfg.jobs);
      Json dev = Json::array();
      for (std::size_t i = 0; i < p2.deviations.size() && i < 20; ++i)
        dev.push_back(Json{{"family", std::string(1, family_name(p2.deviations[i].family))}, {"n", p2.deviations[i].n}});
      rep.add("prop2-period10", p2.pass(), Json{{"n_max", cfg.prop2_max}, {"deviations", p2.deviations.size()}, {"first", dev}});
      rep.timings.emplace_back("prop2", t.seconds());
    }
  }
  if (cfg.verify_star) {
    Stopwatch t;
    const std::size_t need = 2 * std::max(cfg.star_max, cfg.exact_max) + 1;
    const StarReport st = star_check(seq.get(need), cfg.star_max, cfg.exact_max, cfg.jobs);
    Json even = Json::array(), zero = Json::array();
    for (auto i : st.even_pairs) even.push_back(i);
    for (auto n : st.vanishing) zero.push_back(n);
    if (paperfolding)
      rep.add("star-odd-pairs", st.even_pairs.empty(), Json{{"pairs_checked", st.pairs_checked}, {"even_pairs", even}});
    else
      rep.skip("star-odd-pairs", Json{{"reason", "the odd-pair fact is specific to paperfolding"}});
    rep.add("hankel-nonvanishing", st.vanishing.empty(), Json{{"exact_max", st.exact_max}, {"vanishing", zero}});
    rep.timings.emplace_back("star", t.seconds());
  }

  if (cfg.format != "csv")
    emit_report(cfg, rep, out);
  else
    err << rep.to_text();
  return exit_for(rep);
}

inline int cmd_pade(RunConfig& cfg, std::ostream& out) {
  const SequenceSpec spec = sequence_or_usage(cfg.sequence);
  check_format(cfg.format);
  if (cfg.k == 0) throw UsageError("pade: --k must be at least 1");
  const Sequence terms = prefix(spec, 2 * cfg.k + 3);
  const RatSeries f = RatSeries::from_terms(std::span<const Term>(terms));
  const PadeApproximant ap = pade(f, cfg.k);

  VerificationReport rep;
  rep.config = cfg.to_json();
  rep.data["approximant"] = to_json(ap);
  if (ap.degenerate) rep.data["note"] = "h = 0: the error starts beyond z^{2k}";
  if (cfg.verify) {
    const ErrorExpansionReport ev = verify_error_expansion(f, ap);
    rep.data["error_expansion"] = to_json(ev);
    rep.add("error-expansion k=" + std::to_string(cfg.k), ev.pass());
  }
  if (cfg.format == "text") {
    const auto [P, Q] = ap.integer_cleared();
    Sink sink(cfg.output, out);
    sink.os() << "P(z) = " << P.to_string() << "\nQ(z) = " << Q.to_string() << "\nh = " << ap.h.get_str() << '\n' << rep.to_text();
  } else {
    emit_report(cfg, rep, out);
  }
  return exit_for(rep);
}

inline int cmd_exponent(RunConfig& cfg, std::ostream& out) {
  const SequenceSpec spec = sequence_or_usage(cfg.sequence);
  check_format(cfg.format);
  Integer b;
  try {
    b = parse_integer(cfg.b);
  } catch (const DomainError&) {
    throw UsageError("exponent: --b must be an integer");
  }
  if (b < 2) throw UsageError("exponent: --b must be at least 2");
  if (spec.kind != SequenceKind::PaperfoldingClosed && spec.kind != SequenceKind::PaperfoldingMorphic)
    throw UsageError("exponent: only the paperfolding functional equation is built in");
  if (cfg.m_min == 0 || cfg.m_min > cfg.m_max) throw UsageError("exponent: need 1 <= --m-min <= --m-max");

  const FunctionalEquation fe = FunctionalEquation::paperfolding();
  PrefixCache seq(spec);
  XiEnclosureCache xi(spec);
  VerificationReport rep;
  rep.config = cfg.to_json();
  rep.data["fe"] = to_json(fe);
  Json records = Json::array(), bounds = Json::array();
  std::optional<Rational> best;
  auto note_best = [&](const Rational& mu) {
    if (!best || mu < *best) best = mu;
  };

  const FunctionalEquationCheck fc = check_functional_equation(std::span<const Term>(seq.get(4096)), fe, 4096);
  rep.add("functional-equation", fc.holds, Json{{"order", 4096}});

  const bool run_records = cfg.l_given || (cfg.ladder.empty() && !cfg.merged);
  if (run_records) {
    Stopwatch sw;
    const std::size_t l = cfg.l;
    const Sequence terms = seq.get(2 * l + 3);
    const RatSeries f = RatSeries::from_terms(std::span<const Term>(terms));
    const PadeApproximant ap = pade(f, l);
    rep.data["approximant"] = to_json(ap);
    if (ap.degenerate) throw DegenerateOrderError("exponent: h_l = 0 for l = " + std::to_string(l), l);
    const ThresholdInfo th = threshold_m0(seq, fe, ap);
    rep.data["threshold"] = Json{{"m0", th.m0}, {"c_bound", decimal(th.c_bound)}, {"exact_order", th.exact_order}};

    const std::size_t count = cfg.m_max - cfg.m_min + 1;
    std::vector<ApproximationRecord> recs(count);
    BracketOptions opt;
    opt.max_tail = cfg.max_tail;
    parallel_for(count, cfg.jobs, [&](std::size_t i) {
      ApproximationRecord r = build_convergent(fe, ap, cfg.m_min + i, b);
      error_bracket(r, fe, ap, xi, th, opt);
      recs[i] = std::move(r);
    });

    bool sandwich_ok = true, any_applicable = false;
    for (const auto& r : recs) {
      records.push_back(to_json(r, cfg.with_integers));
      if (r.sandwich == SandwichStatus::Fail) sandwich_ok = false;
      if (r.sandwich != SandwichStatus::NotApplicable) any_applicable = true;
    }
    if (any_applicable)
      rep.add("error-sandwich", sandwich_ok, Json{{"m0", th.m0}});
    else
      rep.skip("error-sandwich", Json{{"reason", "every m is below m0"}, {"m0", th.m0}});

    const DenominatorProfile dp = denominator_profile(recs);
    rep.add("denominator-ratio-bounded", dp.ratio_min > 0,
            Json{{"min", decimal(dp.ratio_min)}, {"max", decimal(dp.ratio_max)}, {"log_growth_min", dp.growth_min},
                 {"log_growth_max", dp.growth_max}});

    const ComposedErrorCheck ce = composed_error_check(fe, ap, build_convergent(fe, ap, 1, b), 2 * l * fe.k + fe.s() + 8);
    rep.add("composed-error m=1", ce.identity_holds && ce.valuation_ok, Json{{"order", ce.order}});

    // Band check on the largest m, once the constants are provably small.
    const ApproximationRecord& last = recs.back();
    const long Y = static_cast<long>(y_index(fe, l));
    const double rho = static_cast<double>(2 * l + fe.gamma()) / Y, delta = static_cast<double>(2 * l) / Y;
    const EffectiveExponent ee = effective_exponent(last);
    const double lb = std::log2(b.get_d()) * static_cast<double>(last.N);
    auto l2 = [](const Rational& q) { return std::fabs(std::log2(q.get_d())); };
    const Rational bE = pow_rat(Rational(b), last.E);
    const double slack = (l2(last.sandwich_lo * bE) + l2(last.sandwich_hi * bE) + l2(dp.ratio_min) + l2(dp.ratio_max)) / lb;
    Json band{{"m", last.m}, {"lo", ee.lo}, {"hi", ee.hi}, {"delta", delta}, {"rho", rho}, {"constant_slack", slack}};
    if (slack < 0.05)
      rep.add("effective-exponent-band", ee.lo >= delta - 0.05 && ee.hi <= rho + 0.05, band);
    else
      rep.skip("effective-exponent-band", band);

    if (2 * static_cast<long>(l) > Y) {
      const ExponentBound eb = theorem1_single_l_bound(fe, l, seq);
      bounds.push_back(to_json(eb));
      note_best(eb.mu_bound);
    }
    rep.timings.emplace_back("records", sw.seconds());
  }

  if (!cfg.ladder.empty()) {
    const auto ls = parse_range(cfg.ladder, "--ladder");
    std::vector<ExponentBound> ladder;
    for (std::size_t l : ls) {
      try {
        ladder.push_back(theorem1_single_l_bound(fe, l, seq));
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
      bounds.push_back(to_json(ladder.back()));
      note_best(ladder.back().mu_bound);
    }
    bool decreasing = true, above = true;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      if (i > 0 && !(ladder[i].mu_bound < ladder[i - 1].mu_bound)) decreasing = false;
      if (!(ladder[i].mu_bound > Rational(static_cast<long>(2 * fe.k)))) above = false;
    }
    rep.add("ladder-decreasing", decreasing, Json{{"first", to_json(ladder.front().mu_bound)}});
    rep.add("ladder-above-2k", above, Json{{"2k", 2 * fe.k}});
  }

  if (cfg.merged) {
    std::vector<std::size_t> Ls = cfg.L_range.empty() ? std::vector<std::size_t>{cfg.L} : parse_range(cfg.L_range, "--L-range");
    std::vector<ExponentBound> mb;
    for (std::size_t L : Ls) {
      try {
        mb.push_back(merged_bound(fe, L, seq));
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
      bounds.push_back(to_json(mb.back()));
      note_best(mb.back().mu_bound);
    }
    if (mb.size() > 1) {
      bool mono = true;
      for (std::size_t i = 1; i < mb.size(); ++i) mono = mono && mb[i].mu_bound < mb[i - 1].mu_bound;
      rep.add("merged-decreasing", mono);
    }
  }

  rep.data["records"] = records;
  rep.data["bounds"] = bounds;
  if (best) rep.data["best_mu_bound"] = Json{{"exact", to_json(*best)}, {"decimal", decimal(*best)}};

  if (cfg.format == "text") {
    Sink sink(cfg.output, out);
    sink.os() << rep.to_text();
    for (const auto& r : records)
      sink.os() << "  l=" << r["l"] << " m=" << r["m"] << " sandwich=" << r["sandwich"].get<std::string>()
                << " eff_exp=" << (r.contains("eff_exp") ? r["eff_exp"]["value"].dump() : "n/a") << '\n';
    if (best) sink.os() << "best mu bound: " << best->get_str() << " ~ " << decimal(*best) << '\n';
  } else {
    emit_report(cfg, rep, out);
  }
  return exit_for(rep);
}

}  // namespace cli

/// Parses argv and runs one subcommand.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Hankel determinants of automatic sequences, Pade approximants and irrationality exponent bounds", "hankel"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* seq = app.add_subcommand("seq", "print a sequence prefix");
  seq->add_option("--n", cfg.n, "number of terms")->check(CLI::NonNegativeNumber);

  auto* fam = app.add_subcommand("families", "bordered Hankel determinant families and their checks");
  fam->add_option("--max-n", cfg.max_n, "largest n")->required();
  fam->add_option("--prop2-max", cfg.prop2_max, "largest n for the parity table check (default --max-n)");
  fam->add_option("--star-max", cfg.star_max, "largest index for the odd pair check (default --max-n)");
  fam->add_option("--exact-max", cfg.exact_max, "largest n for exact nonvanishing of H_n (default min(max-n, 300))");
  fam->add_flag("--verify-lemma1", cfg.verify_lemma1, "check the doubling identities");
  fam->add_flag("--verify-prop2", cfg.verify_prop2, "check the period-10 parity tables");
  fam->add_flag("--verify-star", cfg.verify_star, "check H_{10i+1} H_{10i+2} odd and H_n != 0");
  fam->add_option("--table", cfg.table_out, "also write the CSV table here");
  fam->add_option("--cache-dir", cfg.cache_dir, "table cache directory (default $HANKEL_CACHE_DIR)");
  fam->add_flag("--no-cache", cfg.no_cache, "do not read or write the table cache");

  auto* ht = app.add_subcommand("hankel-table", "exact H_1 .. H_n");
  ht->add_option("--n", cfg.n, "number of determinants")->check(CLI::NonNegativeNumber);

  auto* pd = app.add_subcommand("pade", "[k-1/k] Pade approximant of the generating function");
  pd->add_option("--k", cfg.k, "order")->check(CLI::PositiveNumber);
  pd->add_flag("--verify", cfg.verify, "check the error expansion");

  auto* ex = app.add_subcommand("exponent", "convergents, error brackets and exponent bounds");
  ex->add_option("--b", cfg.b, "base b >= 2");
  auto* lopt = ex->add_option("--l", cfg.l, "Pade order for the convergent records")->check(CLI::PositiveNumber);
  ex->add_option("--m-min", cfg.m_min, "first iteration depth");
  ex->add_option("--m-max", cfg.m_max, "last iteration depth")->check(CLI::PositiveNumber);
  ex->add_option("--ladder", cfg.ladder, "single-l bounds for start:stop:step");
  ex->add_flag("--merged", cfg.merged, "merged bound over the window [k^{L-1}, k^L - 1]");
  ex->add_option("--L", cfg.L, "window exponent for --merged")->check(CLI::PositiveNumber);
  ex->add_option("--L-range", cfg.L_range, "several windows, start:stop");
  ex->add_option("--max-tail", cfg.max_tail, "largest xi prefix used by the error brackets (default 8E+4096)");
  ex->add_flag("!--no-integers", cfg.with_integers, "omit p, q and error fractions from the JSON records");

  for (auto* sc : {seq, fam, ht, pd, ex}) {
    sc->add_option("--name", cfg.sequence, "sequence: paperfolding, paperfolding-morphic, thue-morse-pm1, cantor");
    sc->add_option("--format", cfg.format, "csv, json or text");
    sc->add_option("-o,--output", cfg.output, "output path (default stdout)");
    sc->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sc->add_flag("!--no-timings", cfg.timings, "omit timings and run-dependent facts for byte-stable reports");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.l_given = lopt->count() > 0;
  if (cfg.format.empty()) cfg.format = (cfg.subcommand == "seq" || cfg.subcommand == "hankel-table") ? "csv" : "json";

  try {
    if (cfg.subcommand == "seq") return cli::cmd_seq(cfg, out);
    if (cfg.subcommand == "hankel-table") return cli::cmd_hankel_table(cfg, out);
    if (cfg.subcommand == "families") return cli::cmd_families(cfg, out, err);
    if (cfg.subcommand == "pade") return cli::cmd_pade(cfg, out);
    if (cfg.subcommand == "exponent") return cli::cmd_exponent(cfg, out);
    throw UsageError("unknown subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateOrderError& e) {
    out << Json{{"error", "degenerate-order"}, {"order", e.order}, {"message", e.what()}}.dump(2) << '\n';
    return kExitCheckFailed;
  } catch (const PrecisionExhausted& e) {
    out << Json{{"error", "precision-exhausted"}, {"message", e.what()}, {"hint", "raise --max-tail"}}.dump(2) << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace hankel
