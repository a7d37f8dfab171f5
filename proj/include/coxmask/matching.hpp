#pragma once

// The rightmost-position involution phi on relative masks, the matching it
// induces on a Bruhat interval, the comparison matching built from a
// reflection order, and the acyclicity test for matchings.

#include <coxmask/coxeter.hpp>
#include <coxmask/relative.hpp>

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace coxmask {

enum class Rule {
  x_to_zero = 1,      // X (no defect) -> 0
  zero_to_x = 2,      // 0 -> X
  defect_to_one = 3,  // X^d -> 1, prefix rewritten
  one_to_defect = 4,  // 1 (shifted descent) -> X^d, prefix rewritten
};

struct Move {
  std::size_t position;  // 1-based
  Rule rule;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Rightmost position where a rule applies; nullopt for the all-ones mask.
/// Throws IntegrityError if a 0/1 position is a defect.
std::optional<Move> find_move(const RelativeMask& rm);

/// Applies a move found by find_move. Throws IntegrityError if the result
/// is not a valid relative mask.
RelativeMask apply_move(const RelativeMask& rm, const Move& move);

/// phi. Throws NoMoveError on the all-ones mask.
RelativeMask apply_phi(const RelativeMask& rm);

struct MatchedPair {
  Element upper;
  Element lower;
  Word upper_word;  // canonical
  Word lower_word;  // canonical
  /// Move taking the upper element's relative mask to the lower one's.
  std::optional<Move> move;
  std::optional<RelativeMask> upper_mask;
  std::optional<RelativeMask> lower_mask;
};

struct Matching {
  /// Sorted by decreasing length of the upper element, then canonical word.
  std::vector<MatchedPair> pairs;
  std::vector<Element> unmatched;
  std::vector<Word> unmatched_words;

  /// (upper, lower) canonical-word pairs, for comparing matchings.
  std::set<std::pair<Word, Word>> pair_set() const;
};

/// The matching phi induces on [y, w] for the expression of w. Throws
/// OrderingError when y is not below w.
Matching match_interval(const Element& y, const ReducedExpression& expr);
Matching match_interval(const HasseInterval& interval, const ReducedExpression& expr);

/// Reflections t1 > t2 > ... from the inversion sequence of a reduced word
/// for w0 that starts with the reverse of expr.
struct ReflectionOrder {
  Word base_word;
  std::vector<Element> reflections;  // reflections[0] is the largest

  std::optional<std::size_t> rank_of(const Element& t) const;
};

/// Finite groups only; throws ResourceError if w0 is not reached within
/// the system's max_length.
ReflectionOrder reflection_order(const ReducedExpression& expr);

/// Top-down matching by largest descending edge label. Throws IntegrityError
/// on label ties or when the chosen partner is already matched.
Matching rw_match(const Element& y, const ReducedExpression& expr);
Matching rw_match(const HasseInterval& interval, const ReducedExpression& expr);

struct AcyclicityResult {
  bool acyclic = true;
  /// Interval indices of a directed cycle when one exists.
  std::vector<std::size_t> cycle;
};

/// Orients covers downward, reverses the matched ones and looks for a
/// directed cycle. Throws IntegrityError if a pair is not a cover edge.
AcyclicityResult acyclicity_check(const HasseInterval& interval, const Matching& m);

}  // namespace coxmask
