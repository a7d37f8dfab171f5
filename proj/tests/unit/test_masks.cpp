#include <coxmask/masks.hpp>
#include <coxmask/presets.hpp>

#include <doctest.h>

using namespace coxmask;

namespace {

struct Fixture {
  std::shared_ptr<const CoxeterSystem> sys = CoxeterSystem::create(preset_matrix("A3"));
  ReducedExpression w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});

  Element el(Word word) const { return sys->product_of_word(word); }
  Mask mask(std::vector<std::uint8_t> bits) const { return Mask(w, std::move(bits)); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "mask construction") {
  CHECK_THROWS_AS(mask({1, 0, 1}), InputError);
  CHECK_THROWS_AS(mask({1, 0, 2, 0}), InputError);
  CHECK(Mask::zeros(w).count_ones() == 0);
  CHECK(Mask::ones(w).count_ones() == 4);
  CHECK(mask({0, 1, 1, 0}).bit(2));
  CHECK_FALSE(mask({0, 1, 1, 0}).bit(4));
}

TEST_CASE_FIXTURE(Fixture, "evaluate_mask") {
  CHECK(evaluate_mask(Mask::zeros(w)).value.is_identity());
  CHECK(evaluate_mask(Mask::ones(w)).value == w.element());
  const auto ev = evaluate_mask(mask({0, 1, 1, 1}));
  CHECK(ev.value == el({1, 3, 2}));
  REQUIRE(ev.prefixes.size() == 5);
  CHECK(ev.prefixes[0].is_identity());
  CHECK(ev.prefixes[1].is_identity());
  CHECK(ev.prefixes[3] == el({1, 3}));
}

TEST_CASE_FIXTURE(Fixture, "defect_profile") {
  CHECK(defect_profile(Mask::zeros(w)).empty());
  const auto p = defect_profile(mask({1, 0, 0, 1}));
  REQUIRE(p.defects.size() == 1);
  CHECK(p.defects[0] == Defect{4, DefectKind::one});
  CHECK(p.contains(4));
  CHECK(p.positions() == std::vector<std::size_t>{4});
  CHECK(defect_profile(mask({1, 1, 1, 0})).empty());
  CHECK(is_constant(mask({1, 1, 1, 0})));

  // 0-defect: prefix s2, letter s2 at position 4, bit 0.
  const auto q = defect_profile(mask({1, 0, 0, 0}));
  REQUIRE(q.defects.size() == 1);
  CHECK(q.defects[0] == Defect{4, DefectKind::zero});
  CHECK_FALSE(is_constant(mask({1, 0, 0, 0})));
}

TEST_CASE("position 1 is never a defect") {
  auto sys = CoxeterSystem::create(preset_matrix("A2"));
  const auto w = ReducedExpression::from_word(*sys, {1});
  CHECK(defect_profile(Mask(w, {0})).empty());
  CHECK(defect_profile(Mask(w, {1})).empty());
}

TEST_CASE("greedy_constant_mask on the A4 example") {
  auto sys = CoxeterSystem::create(preset_matrix("A4"));
  const auto w = ReducedExpression::from_word(*sys, {2, 3, 4, 1, 2, 3});
  const Element x = sys->product_of_word(Word{1, 2, 1});
  const ConstantMask cm = greedy_constant_mask(w, x);
  CHECK(cm.mask.bits() == std::vector<std::uint8_t>{1, 0, 0, 1, 1, 0});
  const auto el = [&](Word word) { return sys->product_of_word(word); };
  CHECK(cm.trace.r(7) == x);
  CHECK(cm.trace.r(6) == x);
  CHECK(cm.trace.r(5) == el({2, 1}));
  CHECK(cm.trace.r(4) == el({2}));
  CHECK(cm.trace.r(3) == el({2}));
  CHECK(cm.trace.r(2) == el({2}));
  CHECK(cm.trace.r(1).is_identity());
  CHECK(cm.trace.remainders.size() == 7);
}

TEST_CASE_FIXTURE(Fixture, "greedy_constant_mask") {
  const auto top = greedy_constant_mask(w, w.element());
  CHECK(top.mask.bits() == std::vector<std::uint8_t>{1, 1, 1, 1});
  CHECK(greedy_constant_mask(w, el({2})).mask.bits() == std::vector<std::uint8_t>{0, 0, 0, 1});
  CHECK(greedy_constant_mask(w, sys->identity()).mask == Mask::zeros(w));
  CHECK(greedy_constant_mask(w, el({1, 3, 2})).mask.bits() ==
        std::vector<std::uint8_t>{0, 1, 1, 1});
}

TEST_CASE_FIXTURE(Fixture, "greedy_constant_mask fails for x not below w") {
  const Element x = el({1, 2, 3});
  CHECK_FALSE(bruhat_leq(x, w.element()));
  try {
    greedy_constant_mask(w, x);
    FAIL("expected NotBelowError");
  } catch (const NotBelowError& e) {
    CHECK(e.trace().r(5) == x);
    CHECK_FALSE(e.trace().r(1).is_identity());
  }
  CHECK_THROWS_AS(greedy_constant_mask(w, x), OrderingError);
}

TEST_CASE_FIXTURE(Fixture, "mask_join") {
  const Mask a = mask({0, 0, 0, 1});
  const Mask b = mask({1, 1, 0, 0});
  CHECK(mask_join(a, a) == a);
  CHECK(mask_join(Mask::zeros(w), a) == a);
  const Mask j = mask_join(a, b);
  CHECK(j.bits() == std::vector<std::uint8_t>{1, 1, 0, 1});
  CHECK(is_constant(j));
  CHECK(evaluate_mask(j).value == el({2, 1, 2}));
  CHECK_THROWS_AS(mask_join(mask({1, 0, 0, 1}), a), PreconditionError);
  CHECK_THROWS_AS(mask_join(a, mask({1, 0, 0, 1})), PreconditionError);
}

TEST_CASE("greedy_bits on raw letters") {
  auto sys = CoxeterSystem::create(preset_matrix("A3"));
  const Word letters{2, 3};
  const auto bits = detail::greedy_bits(*sys, letters, sys->generator(2));
  REQUIRE(bits.has_value());
  CHECK(*bits == std::vector<std::uint8_t>{1, 0});
  CHECK_FALSE(detail::greedy_bits(*sys, letters, sys->generator(1)).has_value());
}
