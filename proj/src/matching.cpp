#include <coxmask/matching.hpp>

#include <algorithm>
#include <map>

namespace coxmask {

std::optional<Move> find_move(const RelativeMask& rm) {
  for (std::size_t j = rm.size(); j >= 1; --j) {
    const Entry e = rm.entry(j);
    if (e == Entry::x) {
      return Move{j, rm.is_defect(j) ? Rule::defect_to_one : Rule::x_to_zero};
    }
    if (rm.is_defect(j)) {
      throw IntegrityError("position " + std::to_string(j) + " holds a 0/1 defect");
    }
    if (e == Entry::zero) return Move{j, Rule::zero_to_x};
    if (rm.is_shifted_descent(j)) return Move{j, Rule::one_to_defect};
  }
  return std::nullopt;
}

RelativeMask apply_move(const RelativeMask& rm, const Move& move) {
  const auto& expr = rm.expression();
  const std::size_t j = move.position;
  if (j < 1 || j > rm.size()) throw PreconditionError("move position out of range");
  std::vector<Entry> entries = rm.entries();
  switch (move.rule) {
    case Rule::x_to_zero:
      entries[j - 1] = Entry::zero;
      break;
    case Rule::zero_to_x:
      entries[j - 1] = Entry::x;
      break;
    case Rule::defect_to_one:
    case Rule::one_to_defect: {
      const bool up = move.rule == Rule::defect_to_one;
      const Element target =
          up ? rm.sigma_prefix(j - 1).right_multiply(expr.letter(j)) : rm.sigma_prefix(j);
      Word sub;
      std::vector<std::size_t> where;
      for (std::size_t k = 1; k < j; ++k) {
        if (entries[k - 1] != Entry::x) {
          sub.push_back(expr.letter(k));
          where.push_back(k);
        }
      }
      const auto bits = detail::greedy_bits(expr.system(), sub, target);
      if (!bits) {
        throw IntegrityError("no constant mask for the rewritten prefix at position " +
                             std::to_string(j));
      }
      for (std::size_t k = 0; k < where.size(); ++k) {
        entries[where[k] - 1] = (*bits)[k] ? Entry::one : Entry::zero;
      }
      entries[j - 1] = up ? Entry::one : Entry::x;
      break;
    }
  }
  if (!RelativeMask::is_valid(expr, entries)) {
    throw IntegrityError("phi produced an invalid relative mask at position " +
                         std::to_string(j));
  }
  return RelativeMask(expr, std::move(entries));
}

RelativeMask apply_phi(const RelativeMask& rm) {
  const auto move = find_move(rm);
  if (!move) throw NoMoveError("the all-ones relative mask has no move");
  return apply_move(rm, *move);
}

std::set<std::pair<Word, Word>> Matching::pair_set() const {
  std::set<std::pair<Word, Word>> out;
  for (const auto& p : pairs) out.emplace(p.upper_word, p.lower_word);
  return out;
}

namespace {

void check_top(const HasseInterval& interval, const ReducedExpression& expr) {
  if (!(interval.top() == expr.element())) {
    throw PreconditionError("interval top differs from the expression's element");
  }
}

void sort_pairs(Matching& m) {
  std::sort(m.pairs.begin(), m.pairs.end(), [](const MatchedPair& a, const MatchedPair& b) {
    if (a.upper_word.size() != b.upper_word.size()) {
      return a.upper_word.size() > b.upper_word.size();
    }
    return a.upper_word < b.upper_word;
  });
}

std::vector<std::vector<std::size_t>> lower_covers(const HasseInterval& interval) {
  std::vector<std::vector<std::size_t>> out(interval.size());
  for (const auto& e : interval.cover_edges()) out[e.upper].push_back(e.lower);
  return out;
}

}  // namespace

Matching match_interval(const Element& y, const ReducedExpression& expr) {
  return match_interval(enumerate_interval(y, expr.element()), expr);
}

Matching match_interval(const HasseInterval& interval, const ReducedExpression& expr) {
  check_top(interval, expr);
  const std::size_t n = interval.size();
  const Element& y = interval.bottom();

  std::vector<RelativeMask> masks;
  masks.reserve(n);
  std::map<std::vector<Entry>, std::size_t> by_xmask;
  for (std::size_t i = 0; i < n; ++i) {
    masks.push_back(build_relative_mask(expr, interval.element(i), y));
    std::vector<Entry> key = masks.back().entries();
    for (auto& e : key) e = e == Entry::x ? Entry::x : Entry::one;
    by_xmask.emplace(std::move(key), i);
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> partner(n, kNone);
  std::vector<std::optional<Move>> moves(n);
  std::vector<std::optional<RelativeMask>> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    moves[i] = find_move(masks[i]);
    if (!moves[i]) continue;
    images[i] = apply_move(masks[i], *moves[i]);
    std::vector<Entry> key = images[i]->entries();
    for (auto& e : key) e = e == Entry::x ? Entry::x : Entry::one;
    auto it = by_xmask.find(key);
    if (it == by_xmask.end()) throw IntegrityError("phi left the interval");
    partner[i] = it->second;
  }

  Matching out;
  for (std::size_t i = 0; i < n; ++i) {
    if (partner[i] == kNone) {
      out.unmatched.push_back(interval.element(i));
      out.unmatched_words.push_back(interval.word(i));
      continue;
    }
    const std::size_t p = partner[i];
    if (partner[p] != i || !(*images[p] == masks[i])) {
      throw IntegrityError("phi is not an involution on this interval");
    }
    if (interval.element(i).length() <= interval.element(p).length()) continue;
    out.pairs.push_back({interval.element(i), interval.element(p), interval.word(i),
                         interval.word(p), moves[i], masks[i], masks[p]});
  }
  sort_pairs(out);
  return out;
}

std::optional<std::size_t> ReflectionOrder::rank_of(const Element& t) const {
  for (std::size_t k = 0; k < reflections.size(); ++k) {
    if (reflections[k] == t) return k;
  }
  return std::nullopt;
}

ReflectionOrder reflection_order(const ReducedExpression& expr) {
  const auto& sys = expr.system();
  ReflectionOrder out;
  out.base_word.assign(expr.letters().rbegin(), expr.letters().rend());
  Element u = sys.product_of_word(out.base_word);
  while (true) {
    Gen ascent = 0;
    for (Gen i = 1; i <= sys.rank(); ++i) {
      if (!u.has_right_descent(i)) {
        ascent = i;
        break;
      }
    }
    if (ascent == 0) break;
    out.base_word.push_back(ascent);
    u = u.right_multiply(ascent);
    sys.check_guard(u.length(), "longest element completion (group presumed infinite)");
  }
  for (std::size_t k = 0; k < out.base_word.size(); ++k) {
    Word t(out.base_word.begin(), out.base_word.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    t.insert(t.end(), out.base_word.rend() - static_cast<std::ptrdiff_t>(k),
             out.base_word.rend());
    out.reflections.push_back(sys.product_of_word(t));
  }
  for (std::size_t a = 0; a < out.reflections.size(); ++a) {
    for (std::size_t b = a + 1; b < out.reflections.size(); ++b) {
      if (out.reflections[a] == out.reflections[b]) {
        throw IntegrityError("inversion sequence repeats a reflection");
      }
    }
  }
  return out;
}

Matching rw_match(const Element& y, const ReducedExpression& expr) {
  return rw_match(enumerate_interval(y, expr.element()), expr);
}

Matching rw_match(const HasseInterval& interval, const ReducedExpression& expr) {
  check_top(interval, expr);
  const ReflectionOrder order = reflection_order(expr);
  const std::size_t n = interval.size();
  const auto below = lower_covers(interval);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> partner(n, kNone);

  Matching out;
  // Elements are sorted by (length, word): walking backwards goes top-down
  // rank by rank.
  for (std::size_t i = n; i-- > 0;) {
    if (partner[i] != kNone || below[i].empty()) continue;
    const Element inv = interval.element(i).inverse();
    std::size_t best = kNone;
    std::size_t best_rank = kNone;
    for (std::size_t c : below[i]) {
      const auto r = order.rank_of(inv * interval.element(c));
      if (!r) throw IntegrityError("cover label is not in the reflection order");
      if (*r == best_rank) throw IntegrityError("two descending edges share a label");
      if (*r < best_rank) {
        best_rank = *r;
        best = c;
      }
    }
    if (partner[best] != kNone) {
      throw IntegrityError("largest-label partner is already matched");
    }
    partner[i] = best;
    partner[best] = i;
    out.pairs.push_back({interval.element(i), interval.element(best), interval.word(i),
                         interval.word(best), std::nullopt, std::nullopt, std::nullopt});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (partner[i] == kNone) {
      out.unmatched.push_back(interval.element(i));
      out.unmatched_words.push_back(interval.word(i));
    }
  }
  sort_pairs(out);
  return out;
}

AcyclicityResult acyclicity_check(const HasseInterval& interval, const Matching& m) {
  const std::size_t n = interval.size();
  std::set<std::pair<std::size_t, std::size_t>> matched;
  for (const auto& p : m.pairs) {
    const auto u = interval.index_of(p.upper_word);
    const auto l = interval.index_of(p.lower_word);
    if (!u || !l || !interval.has_cover(*u, *l)) {
      throw IntegrityError("matched pair is not a cover edge of the interval");
    }
    matched.emplace(*u, *l);
  }
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (const auto& e : interval.cover_edges()) {
    if (matched.count({e.upper, e.lower})) {
      out_edges[e.lower].push_back(e.upper);
    } else {
      out_edges[e.upper].push_back(e.lower);
    }
  }

  // Iterative three-colour DFS.
  enum : char { white, grey, black };
  std::vector<char> colour(n, white);
  std::vector<std::size_t> parent(n, n);
  AcyclicityResult result;
  for (std::size_t root = 0; root < n && result.acyclic; ++root) {
    if (colour[root] != white) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = grey;
    while (!stack.empty() && result.acyclic) {
      auto& [v, next] = stack.back();
      if (next == out_edges[v].size()) {
        colour[v] = black;
        stack.pop_back();
        continue;
      }
      const std::size_t u = out_edges[v][next++];
      if (colour[u] == grey) {
        result.acyclic = false;
        for (std::size_t k = v; k != u; k = parent[k]) result.cycle.push_back(k);
        result.cycle.push_back(u);
        std::reverse(result.cycle.begin(), result.cycle.end());
      } else if (colour[u] == white) {
        colour[u] = grey;
        parent[u] = v;
        stack.emplace_back(u, 0);
      }
    }
  }
  return result;
}

}  // namespace coxmask
