#include <coxmask/presets.hpp>
#include <coxmask/verify.hpp>

#include <doctest.h>

using namespace coxmask;

namespace {

std::shared_ptr<const CoxeterSystem> sys_of(const char* name, int max_length = 128) {
  return CoxeterSystem::create(preset_matrix(name), max_length);
}

SuiteConfig config_for(const char* group, int max_length, std::set<Check> checks, int jobs = 1) {
  SuiteConfig c;
  c.system = sys_of(group);
  c.group = group;
  c.max_length = max_length;
  c.checks = std::move(checks);
  c.jobs = jobs;
  return c;
}

}  // namespace

TEST_CASE("leq_oracle") {
  auto sys = sys_of("A3");
  const auto w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});
  auto el = [&](Word word) { return sys->product_of_word(word); };
  CHECK(leq_oracle(w, sys->identity()));
  CHECK(leq_oracle(w, el({2})));
  CHECK(leq_oracle(w, el({1, 3})));
  CHECK(leq_oracle(w, el({1, 2, 1})));
  CHECK_FALSE(leq_oracle(w, el({1, 2, 3})));
  CHECK_FALSE(leq_oracle(w, el({1, 2, 3, 2, 1})));

  auto big = sys_of("tA1");
  Word long_word;
  for (int k = 0; k < 21; ++k) long_word.push_back(k % 2 + 1);
  const auto expr = ReducedExpression::from_word(*big, long_word);
  CHECK_THROWS_AS(leq_oracle(expr, big->identity()), ResourceError);
}

TEST_CASE("mobius_oracle") {
  auto a3 = sys_of("A3");
  auto el = [&](Word word) { return a3->product_of_word(word); };
  const Element w = el({2, 1, 3, 2});
  CHECK(mobius_oracle(enumerate_interval(w, w)) == 1);
  CHECK(mobius_oracle(enumerate_interval(el({2}), w)) == -1);
  auto a2 = sys_of("A2");
  CHECK(mobius_oracle(enumerate_interval(a2->identity(), a2->product_of_word(Word{1, 2}))) == 1);
  CHECK(mobius_oracle(enumerate_interval(a2->identity(), a2->generator(1))) == -1);
}

TEST_CASE("mobius_via_matching") {
  auto sys = sys_of("A3");
  const auto w = ReducedExpression::from_word(*sys, {2, 1, 3, 2});
  const auto point = mobius_via_matching(w.element(), w);
  CHECK(point.survivor_sum == 1);
  CHECK(point.mobius == 1);
  const auto r = mobius_via_matching(sys->generator(2), w);
  CHECK(r.survivor_sum == 0);
  CHECK(r.mobius == -1);
  CHECK_THROWS_AS(mobius_via_matching(sys->product_of_word(Word{1, 2, 3}), w), OrderingError);
}

TEST_CASE("enumerate_elements") {
  auto a3 = sys_of("A3");
  const auto all = enumerate_elements(*a3, 6);
  CHECK(all.size() == 24);
  CHECK(all.front().is_identity());
  CHECK(all.back().length() == 6);
  CHECK(enumerate_elements(*a3, 2).size() == 1 + 3 + 5);
  auto ta1 = sys_of("tA1", 10);
  CHECK(enumerate_elements(*ta1, 8).size() == 17);
  CHECK_THROWS_AS(enumerate_elements(*ta1, 11), ResourceError);
}

TEST_CASE("check names") {
  for (Check c : all_checks()) CHECK(parse_check(check_name(c)) == c);
  CHECK(all_checks().size() == 8);
  CHECK(parse_check_list("all") == all_checks());
  CHECK(parse_check_list("masks, leq") == std::set<Check>{Check::masks, Check::leq});
  CHECK(parse_check_list("").empty());
  CHECK_THROWS_AS(parse_check("bogus"), InputError);
  CHECK_THROWS_AS(parse_check_list("masks,bogus"), InputError);
}

TEST_CASE("run_suite on A3") {
  const auto report = run_suite(config_for("A3", 6, all_checks()));
  CHECK(report.ok());
  CHECK(report.elements == 24);
  CHECK(report.tallies.size() == 8);
  for (const auto& [c, t] : report.tallies) {
    CAPTURE(check_name(c));
    CHECK(t.cases > 0);
    CHECK(t.failures == 0);
  }
  CHECK(report.to_json()["ok"] == true);
  CHECK(report.to_text().find("result: ok") != std::string::npos);
}

TEST_CASE("run_suite on the infinite dihedral group") {
  const auto report = run_suite(config_for(
      "tA1", 8,
      {Check::masks, Check::relative, Check::matching, Check::mobius, Check::acyclic}));
  CHECK(report.ok());
  CHECK(report.elements == 17);
}

TEST_CASE("run_suite with no checks") {
  const auto report = run_suite(config_for("A3", 6, {}));
  CHECK(report.ok());
  CHECK(report.tallies.empty());
  CHECK(report.failures.empty());
}

TEST_CASE("run_suite rejects bad configs") {
  auto c = config_for("A3", 0, all_checks());
  CHECK_THROWS_AS(run_suite(c), InputError);
  c.max_length = 1;
  c.system = nullptr;
  CHECK_THROWS_AS(run_suite(c), InputError);
}

TEST_CASE("run_suite is deterministic across job counts") {
  auto a = run_suite(config_for("B3", 5, all_checks(), 1)).to_json();
  auto b = run_suite(config_for("B3", 5, all_checks(), 4)).to_json();
  a.erase("wall_seconds");
  b.erase("wall_seconds");
  CHECK(a == b);
}

TEST_CASE("rw check records resource errors for infinite groups") {
  auto c = config_for("tA1", 3, {Check::rw});
  c.system = sys_of("tA1", 12);
  const auto report = run_suite(c);
  CHECK_FALSE(report.ok());
  REQUIRE_FALSE(report.failures.empty());
  CHECK(report.failures.front().check == "rw");
  CHECK(report.failures.front().detail.find("exception") != std::string::npos);
  CHECK(report.to_json()["failures"].size() == report.failures.size());
}
