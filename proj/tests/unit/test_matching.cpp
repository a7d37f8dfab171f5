#include <coxmask/io.hpp>
#include <coxmask/matching.hpp>
#include <coxmask/presets.hpp>

#include <doctest.h>

using namespace coxmask;

namespace {

constexpr Entry O = Entry::zero;
constexpr Entry I = Entry::one;
constexpr Entry X = Entry::x;

struct Fixture {
  std::shared_ptr<const CoxeterSystem> sys = CoxeterSystem::create(preset_matrix("A3"));
  ReducedExpression w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});

  Element el(Word word) const { return sys->product_of_word(word); }
  RelativeMask rm(std::vector<Entry> e) const { return RelativeMask(w, std::move(e)); }
};

std::set<std::pair<Word, Word>> canonical_pairs(
    const CoxeterSystem& sys, const std::vector<std::pair<Word, Word>>& pairs) {
  std::set<std::pair<Word, Word>> out;
  for (const auto& [u, l] : pairs) {
    out.emplace(canonical_letters(sys.product_of_word(u)),
                canonical_letters(sys.product_of_word(l)));
  }
  return out;
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "find_move") {
  const auto a = find_move(rm({O, O, O, I}));
  REQUIRE(a.has_value());
  CHECK(*a == Move{4, Rule::one_to_defect});

  const auto b = find_move(rm({X, X, X, I}));
  REQUIRE(b.has_value());
  CHECK(*b == Move{3, Rule::x_to_zero});

  const auto c = find_move(rm({I, O, O, X}));
  REQUIRE(c.has_value());
  CHECK(*c == Move{4, Rule::defect_to_one});

  const auto d = find_move(rm({X, O, O, I}));
  REQUIRE(d.has_value());
  CHECK(*d == Move{3, Rule::zero_to_x});

  CHECK_FALSE(find_move(rm({I, I, I, I})).has_value());
}

TEST_CASE_FIXTURE(Fixture, "apply_phi") {
  CHECK(apply_phi(rm({O, O, O, I})) == rm({I, O, O, X}));
  CHECK(apply_phi(rm({I, O, O, X})) == rm({O, O, O, I}));
  CHECK(apply_phi(rm({O, X, O, I})) == rm({I, X, O, X}));
  CHECK(apply_phi(rm({X, X, X, I})) == rm({X, X, O, I}));
  CHECK_THROWS_AS(apply_phi(rm({I, I, I, I})), NoMoveError);
}

TEST_CASE_FIXTURE(Fixture, "phi is an involution on the worked table") {
  for (const auto& im : interval_as_relative_masks(el({2}), w)) {
    CAPTURE(format_relative_mask(im.mask));
    const RelativeMask image = apply_phi(im.mask);
    CHECK(apply_phi(image) == im.mask);
    CHECK(image.value() == im.mask.value());
  }
}

TEST_CASE_FIXTURE(Fixture, "match_interval on the worked interval") {
  const Matching m = match_interval(el({2}), w);
  CHECK(m.pairs.size() == 5);
  CHECK(m.unmatched.empty());
  const auto expected = canonical_pairs(*sys, {{{2, 1, 3, 2}, {2, 1, 3}},
                                               {{2, 3, 2}, {2, 3}},
                                               {{2, 1, 2}, {2, 1}},
                                               {{1, 3, 2}, {1, 2}},
                                               {{3, 2}, {2}}});
  CHECK(m.pair_set() == expected);
  for (const auto& p : m.pairs) {
    REQUIRE(p.move.has_value());
    REQUIRE(p.upper_mask.has_value());
    REQUIRE(p.lower_mask.has_value());
    CHECK(p.upper.length() == p.lower.length() + 1);
  }
  // Top pair uses rule 4 at the last position.
  CHECK(m.pairs.front().upper == w.element());
  CHECK(*m.pairs.front().move == Move{4, Rule::one_to_defect});
}

TEST_CASE_FIXTURE(Fixture, "match_interval edge cases") {
  const Matching point = match_interval(w.element(), w);
  CHECK(point.pairs.empty());
  REQUIRE(point.unmatched.size() == 1);
  CHECK(point.unmatched.front() == w.element());
  CHECK(point.unmatched_words == std::vector<Word>{canonical_letters(w.element())});

  CHECK_THROWS_AS(match_interval(el({1, 2, 3}), w), OrderingError);

  auto a2 = CoxeterSystem::create(preset_matrix("A2"));
  const auto w0 = ReducedExpression::from_word(*a2, {1, 2, 1});
  const Matching m = match_interval(a2->identity(), w0);
  CHECK(m.pairs.size() == 3);
  CHECK(m.unmatched.empty());
}

TEST_CASE_FIXTURE(Fixture, "the matching depends on the chosen expression") {
  const auto other = ReducedExpression::from_word(*sys, {2, 3, 1, 2});
  const Matching a = match_interval(el({2}), w);
  const Matching b = match_interval(el({2}), other);
  CHECK(a.pairs.size() == b.pairs.size());
  CHECK(a.pair_set() != b.pair_set());
}

TEST_CASE_FIXTURE(Fixture, "reflection_order") {
  const ReflectionOrder order = reflection_order(w);
  REQUIRE(order.reflections.size() == 6);
  CHECK(order.reflections[0] == el({2}));
  CHECK(order.reflections[1] == el({2, 3, 2}));
  CHECK(order.base_word.size() == 6);
  CHECK(Word(order.base_word.begin(), order.base_word.begin() + 4) == Word{2, 3, 1, 2});
  for (std::size_t a = 0; a < 6; ++a) {
    CHECK(order.rank_of(order.reflections[a]) == a);
    for (std::size_t b = a + 1; b < 6; ++b) {
      CHECK_FALSE(order.reflections[a] == order.reflections[b]);
    }
  }
  CHECK_FALSE(order.rank_of(el({1, 2})).has_value());

  auto a1 = CoxeterSystem::create(preset_matrix("A1"));
  const auto r = reflection_order(ReducedExpression::from_word(*a1, {1}));
  REQUIRE(r.reflections.size() == 1);
  CHECK(r.reflections[0] == a1->generator(1));
}

TEST_CASE("reflection_order refuses infinite groups") {
  auto sys = CoxeterSystem::create(preset_matrix("tA1"), 20);
  CHECK_THROWS_AS(reflection_order(ReducedExpression::from_word(*sys, {1, 2})), ResourceError);
}

TEST_CASE_FIXTURE(Fixture, "rw_match") {
  const Matching rw = rw_match(el({2}), w);
  CHECK(rw.pair_set() == match_interval(el({2}), w).pair_set());
  bool top_found = false;
  for (const auto& p : rw.pairs) {
    if (p.upper == w.element()) {
      CHECK(p.lower == el({2, 1, 3}));
      top_found = true;
    }
  }
  CHECK(top_found);

  const Matching point = rw_match(w.element(), w);
  CHECK(point.pairs.empty());
  CHECK(point.unmatched.size() == 1);

  auto a2 = CoxeterSystem::create(preset_matrix("A2"));
  const auto w0 = ReducedExpression::from_word(*a2, {1, 2, 1});
  CHECK(rw_match(a2->identity(), w0).pair_set() ==
        match_interval(a2->identity(), w0).pair_set());
}

TEST_CASE_FIXTURE(Fixture, "acyclicity_check") {
  const HasseInterval iv = enumerate_interval(el({2}), w.element());
  const Matching m = match_interval(iv, w);
  CHECK(acyclicity_check(iv, m).acyclic);

  const HasseInterval edge = enumerate_interval(el({2, 1, 3}), w.element());
  CHECK(acyclicity_check(edge, match_interval(edge, w)).acyclic);

  // In A2, reversing s1 < s1s2 and s2 < s2s1 closes the cycle
  // s1s2 -> s2 -> s2s1 -> s1 -> s1s2.
  auto a2 = CoxeterSystem::create(preset_matrix("A2"));
  const auto w0 = ReducedExpression::from_word(*a2, {1, 2, 1});
  const HasseInterval full = enumerate_interval(a2->identity(), w0.element());
  auto pair = [&](Word u, Word l) {
    MatchedPair p{a2->product_of_word(u), a2->product_of_word(l), {}, {}, {}, {}, {}};
    p.upper_word = canonical_letters(p.upper);
    p.lower_word = canonical_letters(p.lower);
    return p;
  };
  Matching bad;
  bad.pairs = {pair({1, 2}, {1}), pair({2, 1}, {2})};
  const auto r = acyclicity_check(full, bad);
  CHECK_FALSE(r.acyclic);
  CHECK(r.cycle.size() == 4);

  Matching not_cover;
  not_cover.pairs = {pair({1, 2, 1}, {})};
  CHECK_THROWS_AS(acyclicity_check(full, not_cover), IntegrityError);
}
