#pragma once

// Brute-force oracles and the exhaustive property-check driver.

#include <coxmask/coxeter.hpp>
#include <coxmask/matching.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace coxmask {

/// Subword test: x <= w iff some submask of expr with l(x) ones evaluates
/// to x. Independent of bruhat_leq. Throws ResourceError for p > 20.
bool leq_oracle(const ReducedExpression& expr, const Element& x);

/// mu(bottom, top) from mu(y,y) = 1, mu(y,z) = -sum_{y <= u < z} mu(y,u),
/// with the order taken as the transitive closure of the cover edges.
int mobius_oracle(const HasseInterval& interval);

struct MobiusReport {
  /// Sum of (-1)^{l(w)-l(x)} over elements left unmatched (0 or 1).
  int survivor_sum = 0;
  /// (-1)^{l(w)-l(y)}
  int mobius = 0;
};

/// Throws OrderingError when y is not below w, IntegrityError if a matched
/// pair fails to cancel.
MobiusReport mobius_via_matching(const Element& y, const ReducedExpression& expr);
MobiusReport mobius_via_matching(const HasseInterval& interval, const Matching& m);

/// Every element of length <= max_length, sorted by (length, canonical word).
/// Throws ResourceError when max_length exceeds the system guard.
std::vector<Element> enumerate_elements(const CoxeterSystem& sys, int max_length);

enum class Check { masks, relative, matching, mobius, acyclic, rw, lifting, leq };

const char* check_name(Check c);
/// Throws InputError for unknown names.
Check parse_check(const std::string& name);
std::set<Check> all_checks();
/// Comma-separated list; "all" selects every check.
std::set<Check> parse_check_list(const std::string& list);

struct SuiteConfig {
  std::shared_ptr<const CoxeterSystem> system;
  std::string group;  // label used in witnesses
  int max_length = 1;
  std::set<Check> checks;
  int jobs = 1;
  /// Cap on expression length for the 2^p mask enumeration.
  int mask_enumeration_limit = 12;
  /// Cap on expression length for join-closure checks.
  int join_limit = 10;
};

struct CheckTally {
  std::size_t cases = 0;
  std::size_t failures = 0;
};

struct FailureWitness {
  std::string check;
  std::string group;
  Word y;
  Word w;
  std::string mask;  // rendered relative mask, when relevant
  std::size_t position = 0;
  std::string detail;

  friend auto operator<=>(const FailureWitness&, const FailureWitness&) = default;
};

struct SuiteReport {
  std::string group;
  int max_length = 0;
  std::size_t elements = 0;
  std::size_t pairs = 0;  // comparable pairs y <= w
  std::map<Check, CheckTally> tallies;
  std::vector<FailureWitness> failures;  // sorted
  double wall_seconds = 0;

  std::size_t total_failures() const { return failures.size(); }
  bool ok() const { return failures.empty(); }

  std::string to_text() const;
  /// Machine-readable summary; wall time is the only nondeterministic field.
  nlohmann::json to_json() const;
};

/// Runs the selected checks over every ordered pair y <= w of length at
/// most max_length. Errors inside a case are recorded as failures.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace coxmask
