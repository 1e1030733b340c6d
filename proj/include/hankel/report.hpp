#pragma once

// JSON serialization, verification reports and the on-disk family table cache.

#include "hankel/bigint.hpp"
#include "hankel/families.hpp"
#include "hankel/irrationality.hpp"
#include "hankel/pade.hpp"
#include "hankel/sequences.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hankel {

using Json = nlohmann::ordered_json;

// Big numbers always travel as decimal strings.
inline Json to_json(const Integer& z) { return z.get_str(); }
inline Json to_json(const Rational& q) { return q.get_str(); }

inline Json to_json(const IntPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

inline std::string decimal(const Rational& q, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << q.get_d();
  return os.str();
}

inline Json to_json(const FamilyRow& r) {
  Json j;
  j["n"] = r.n;
  for (Family f : kFamilies) j[std::string(1, family_name(f))] = r[f].get_str();
  return j;
}

inline Json to_json(const FunctionalEquation& fe) {
  return Json{{"A", to_json(fe.A)}, {"B", to_json(fe.B)}, {"C", to_json(fe.C)}, {"k", fe.k},
              {"alpha", fe.alpha()}, {"beta", fe.beta()}, {"gamma", fe.gamma()}, {"s", fe.s()}};
}

inline Json to_json(const PadeApproximant& ap) {
  const auto [P, Q] = ap.integer_cleared();
  return Json{{"k", ap.k},
              {"P", to_json(P)},
              {"Q", to_json(Q)},
              {"h_num", ap.h.get_num().get_str()},
              {"h_den", ap.h.get_den().get_str()},
              {"H_k", to_json(ap.H_k)},
              {"H_k1", to_json(ap.H_k1)},
              {"degenerate", ap.degenerate}};
}

inline Json to_json(const ErrorExpansionReport& r) {
  Json coeffs = Json::array();
  for (const auto& c : r.coefficients) coeffs.push_back(c.get_str());
  Json j{{"k", r.k}, {"coefficients", coeffs}, {"contact_ok", r.contact_ok}};
  j["expected_h"] = r.expected_h ? to_json(*r.expected_h) : Json(nullptr);
  j["leading_ok"] = r.leading_ok ? Json(*r.leading_ok) : Json(nullptr);
  j["pass"] = r.pass();
  return j;
}

inline Json to_json(const EffectiveExponent& e) { return Json{{"value", e.value}, {"lo", e.lo}, {"hi", e.hi}}; }

inline Json to_json(const ApproximationRecord& r, bool with_integers = true) {
  Json j{{"l", r.l}, {"m", r.m}, {"b", r.b.get_str()}, {"N", r.N}};
  if (with_integers) {
    j["p"] = r.p.get_str();
    j["q"] = r.q.get_str();
    j["p_reduced"] = r.p_reduced.get_str();
    j["q_reduced"] = r.q_reduced.get_str();
  }
  j["q_bits"] = mpz_sizeinbase(r.q.get_mpz_t(), 2);
  j["denominator_ratio"] = decimal(r.denominator_ratio());
  j["E"] = r.E;
  if (r.err_lo) {
    if (with_integers) {
      j["err_lo"] = r.err_lo->get_str();
      j["err_hi"] = r.err_hi->get_str();
    }
    j["eff_exp"] = to_json(effective_exponent(r));
  }
  j["tail_at"] = r.tail_at;
  j["m0"] = r.m0;
  j["sandwich"] = sandwich_status_name(r.sandwich);
  return j;
}

inline Json to_json(const ExponentBound& b) {
  Json j;
  if (b.merged) {
    j["L"] = b.L;
    j["admissible"] = b.admissible_count;
    j["epsilon"] = to_json(*b.epsilon);
  } else {
    j["l"] = b.l;
  }
  j["rho"] = to_json(b.rho);
  j["delta"] = to_json(b.delta);
  j[b.merged ? "factor" : "theta"] = to_json(b.factor);
  j["mu_bound"] = to_json(b.mu_bound);
  j["mu_bound_decimal"] = decimal(b.mu_bound);
  j["floor"] = b.floor_applies ? "mu >= 2 for every irrational exceeds this bound" : "none";
  j["certification"] = certification_name(b.certification);
  return j;
}

// ---------------------------------------------------------------------------

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  Json witness;
};

/// Overall status is fail iff some check failed.
struct VerificationReport {
  Json config;
  std::vector<CheckResult> checks;
  Json data = Json::object();
  std::vector<std::pair<std::string, double>> timings;
  Json runtime = Json::object();  // cache status and similar run-dependent facts

  void add(std::string name, bool ok, Json witness = Json::object()) {
    checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(witness)});
  }
  void skip(std::string name, Json witness = Json::object()) {
    checks.push_back({std::move(name), CheckStatus::Skipped, std::move(witness)});
  }
  bool pass() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }

  Json to_json(bool with_timings) const {
    Json j;
    j["tool"] = "hankel";
    j["version"] = kVersion;
    j["config"] = config;
    j["status"] = pass() ? "pass" : "fail";
    Json cs = Json::array();
    for (const auto& c : checks) cs.push_back(Json{{"name", c.name}, {"status", check_status_name(c.status)}, {"witness", c.witness}});
    j["checks"] = cs;
    j["data"] = data;
    if (with_timings) {
      Json t = Json::object();
      for (const auto& [k, v] : timings) t[k] = v;
      j["timings_s"] = t;
      j["runtime"] = runtime;
    }
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "hankel " << kVersion << ": " << (pass() ? "PASS" : "FAIL") << '\n';
    for (const auto& c : checks) os << "  [" << check_status_name(c.status) << "] " << c.name << '\n';
    return os.str();
  }
};

/// Wall-clock stopwatch for report timings.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Table cache. Files are keyed by (sequence, n_max, version); a file that
// fails to parse is reported and recomputed, never trusted.

enum class CacheOutcome { Disabled, Hit, Miss, Corrupt };

inline const char* cache_outcome_name(CacheOutcome c) {
  switch (c) {
    case CacheOutcome::Disabled: return "disabled";
    case CacheOutcome::Hit: return "hit";
    case CacheOutcome::Miss: return "miss";
    case CacheOutcome::Corrupt: return "corrupt-recomputed";
  }
  return "unknown";
}

class TableCache {
 public:
  TableCache() = default;
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// --cache-dir, else HANKEL_CACHE_DIR, else $HOME/.cache/hankel. Caching
  /// is disabled when the directory cannot be created.
  static TableCache resolve(const std::string& flag_dir) {
    std::filesystem::path dir;
    if (!flag_dir.empty())
      dir = flag_dir;
    else if (const char* env = std::getenv("HANKEL_CACHE_DIR"); env && *env)
      dir = env;
    else if (const char* home = std::getenv("HOME"); home && *home)
      dir = std::filesystem::path(home) / ".cache" / "hankel";
    else
      return {};
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) return {};
    return TableCache(dir);
  }

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const std::string& sequence, std::size_t n_max) const {
    return dir_ / ("families-" + sequence + "-n" + std::to_string(n_max) + "-v" + kVersion + ".csv");
  }

  /// Cached rows if present and well formed.
  std::optional<std::vector<FamilyRow>> load(const std::string& sequence, std::size_t n_max, CacheOutcome& outcome) const {
    if (!enabled()) {
      outcome = CacheOutcome::Disabled;
      return std::nullopt;
    }
    std::ifstream in(path_for(sequence, n_max));
    if (!in) {
      outcome = CacheOutcome::Miss;
      return std::nullopt;
    }
    try {
      auto rows = read_table_csv(in);
      if (rows.size() != n_max) throw DomainError("family table: wrong row count");
      outcome = CacheOutcome::Hit;
      return rows;
    } catch (const DomainError&) {
      outcome = CacheOutcome::Corrupt;
      return std::nullopt;
    }
  }

  /// Writes through a temporary file so readers never see a partial table.
  bool store(const std::string& sequence, std::size_t n_max, std::span<const FamilyRow> rows) const {
    if (!enabled()) return false;
    const auto target = path_for(sequence, n_max);
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) return false;
      write_table_csv(out, rows);
      if (!out) return false;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    return !ec;
  }

 private:
  std::filesystem::path dir_;
};

}  // namespace hankel
