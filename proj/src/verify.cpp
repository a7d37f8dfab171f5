#include <coxmask/verify.hpp>

#include <coxmask/io.hpp>
#include <coxmask/masks.hpp>
#include <coxmask/relative.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace coxmask {

// ---------------------------------------------------------------------------
// Oracles

namespace {

bool subword_search(const ReducedExpression& expr, const Element& x, std::size_t pos,
                    const Element& cur, int ones) {
  const int need = x.length() - ones;
  if (need == 0) return cur == x;
  if (static_cast<int>(expr.size() - pos) < need) return false;
  const Gen g = expr.letter(pos + 1);
  // A reduced subword never shortens, so descending letters are dead ends.
  if (!cur.has_right_descent(g) &&
      subword_search(expr, x, pos + 1, cur.right_multiply(g), ones + 1)) {
    return true;
  }
  return subword_search(expr, x, pos + 1, cur, ones);
}

}  // namespace

bool leq_oracle(const ReducedExpression& expr, const Element& x) {
  if (expr.size() > 20) {
    throw ResourceError("leq_oracle: expression length " + std::to_string(expr.size()) +
                        " exceeds 20");
  }
  if (&x.system() != &expr.system()) throw InputError("elements belong to different systems");
  if (x.length() > static_cast<int>(expr.size())) return false;
  return subword_search(expr, x, 0, expr.system().identity(), 0);
}

int mobius_oracle(const HasseInterval& interval) {
  const std::size_t n = interval.size();
  std::vector<std::vector<std::size_t>> below(n);
  for (const auto& e : interval.cover_edges()) below[e.upper].push_back(e.lower);
  // Elements are sorted by length, so covers of i have smaller indices.
  std::vector<boost::dynamic_bitset<>> down(n, boost::dynamic_bitset<>(n));
  for (std::size_t i = 0; i < n; ++i) {
    down[i].set(i);
    for (std::size_t c : below[i]) down[i] |= down[c];
  }
  std::vector<long long> mu(n, 0);
  mu[0] = 1;
  for (std::size_t z = 1; z < n; ++z) {
    long long s = 0;
    for (std::size_t u = down[z].find_first(); u != boost::dynamic_bitset<>::npos;
         u = down[z].find_next(u)) {
      if (u != z) s += mu[u];
    }
    mu[z] = -s;
  }
  return static_cast<int>(mu[n - 1]);
}

MobiusReport mobius_via_matching(const Element& y, const ReducedExpression& expr) {
  const HasseInterval interval = enumerate_interval(y, expr.element());
  return mobius_via_matching(interval, match_interval(interval, expr));
}

MobiusReport mobius_via_matching(const HasseInterval& interval, const Matching& m) {
  const int top = interval.top().length();
  auto sign = [&](int length) { return (top - length) % 2 == 0 ? 1 : -1; };
  if (2 * m.pairs.size() + m.unmatched.size() != interval.size()) {
    throw IntegrityError("matching does not cover the interval");
  }
  for (const auto& p : m.pairs) {
    if (sign(p.upper.length()) + sign(p.lower.length()) != 0) {
      throw IntegrityError("matched pair does not cancel");
    }
  }
  MobiusReport out;
  for (const auto& x : m.unmatched) out.survivor_sum += sign(x.length());
  out.mobius = sign(interval.bottom().length());
  return out;
}

std::vector<Element> enumerate_elements(const CoxeterSystem& sys, int max_length) {
  sys.check_guard(max_length, "element enumeration");
  std::map<Word, Element, ShortLex> found;
  std::vector<Element> frontier{sys.identity()};
  found.emplace(Word{}, sys.identity());
  for (int len = 1; len <= max_length && !frontier.empty(); ++len) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (Gen i = 1; i <= sys.rank(); ++i) {
        if (x.has_right_descent(i)) continue;
        Element z = x.right_multiply(i);
        auto [it, inserted] = found.try_emplace(canonical_letters(z), z);
        if (inserted) next.push_back(std::move(z));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Element> out;
  out.reserve(found.size());
  for (auto& [w, x] : found) out.push_back(std::move(x));
  return out;
}

// ---------------------------------------------------------------------------
// Check names

namespace {

constexpr std::pair<Check, const char*> kCheckNames[] = {
    {Check::masks, "masks"},     {Check::relative, "relative"}, {Check::matching, "matching"},
    {Check::mobius, "mobius"},   {Check::acyclic, "acyclic"},   {Check::rw, "rw"},
    {Check::lifting, "lifting"}, {Check::leq, "leq"},
};

}  // namespace

const char* check_name(Check c) {
  for (const auto& [k, name] : kCheckNames) {
    if (k == c) return name;
  }
  return "?";
}

Check parse_check(const std::string& name) {
  for (const auto& [k, n] : kCheckNames) {
    if (name == n) return k;
  }
  throw InputError("unknown check '" + name + "'");
}

std::set<Check> all_checks() {
  std::set<Check> out;
  for (const auto& [k, name] : kCheckNames) out.insert(k);
  return out;
}

std::set<Check> parse_check_list(const std::string& list) {
  std::set<Check> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    if (item == "all") {
      auto all = all_checks();
      out.insert(all.begin(), all.end());
    } else {
      out.insert(parse_check(item));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suite

namespace {

struct TaskResult {
  std::map<Check, CheckTally> tallies;
  std::vector<FailureWitness> failures;
  std::size_t pairs = 0;
};

class Task {
 public:
  Task(const SuiteConfig& config, const std::vector<Element>& universe, const Element& w)
      : config_(config), universe_(universe), w_(w), w_word_(canonical_letters(w)) {}

  TaskResult run();

 private:
  bool wants(Check c) const { return config_.checks.count(c) > 0; }

  // Runs one case: body returns an empty string on success or a failure
  // description. Exceptions count as failures.
  template <class F>
  void run_case(Check c, const Word& y, F&& body);

  void fail(Check c, const Word& y, std::string detail, std::string mask = {},
            std::size_t position = 0) {
    result_.failures.push_back({check_name(c), config_.group, y, w_word_, std::move(mask),
                                position, std::move(detail)});
  }

  std::string check_leq(const Element& x);
  std::string check_lifting(const Element& x);
  std::string check_masks_enumeration();
  std::string check_greedy(const Element& x);
  std::string check_relative(const HasseInterval& sub);
  std::string check_phi(const HasseInterval& sub, const Matching& m);
  std::string check_mobius(const HasseInterval& sub, const Matching& m);
  std::string check_acyclic(const HasseInterval& sub, const Matching& m);
  std::string check_rw(const HasseInterval& sub, const Matching& m);

  const SuiteConfig& config_;
  const std::vector<Element>& universe_;
  const Element& w_;
  Word w_word_;
  std::optional<ReducedExpression> expr_;
  std::optional<HasseInterval> lower_;
  // Extra witness context set by checks before returning a failure.
  std::string mask_context_;
  std::size_t position_context_ = 0;
  TaskResult result_;
};

template <class F>
void Task::run_case(Check c, const Word& y, F&& body) {
  auto& tally = result_.tallies[c];
  ++tally.cases;
  mask_context_.clear();
  position_context_ = 0;
  std::string failure;
  try {
    failure = body();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  if (!failure.empty()) {
    ++tally.failures;
    fail(c, y, std::move(failure), mask_context_, position_context_);
  }
}

std::string Task::check_leq(const Element& x) {
  const bool fast = bruhat_leq(x, w_);
  const bool oracle = leq_oracle(*expr_, x);
  if (fast != oracle) {
    return std::string("bruhat_leq = ") + (fast ? "true" : "false") +
           " but subword oracle = " + (oracle ? "true" : "false") + " for x = " +
           format_element(x);
  }
  return {};
}

std::string Task::check_lifting(const Element& x) {
  for (Gen i = 1; i <= w_.system().rank(); ++i) {
    if (!w_.has_right_descent(i) || x.has_right_descent(i)) continue;
    if (!bruhat_leq(x.right_multiply(i), w_) || !bruhat_leq(x, w_.right_multiply(i))) {
      position_context_ = static_cast<std::size_t>(i);
      return "lifting property fails at generator " + std::to_string(i) + " for x = " +
             format_element(x);
    }
  }
  return {};
}

std::string Task::check_masks_enumeration() {
  const auto& expr = *expr_;
  const std::size_t p = expr.size();
  // Every one of the 2^p masks, with defect status tracked along the way.
  std::vector<std::vector<std::uint8_t>> constant_bits;
  std::vector<Element> constant_values;
  std::vector<std::uint8_t> bits(p, 0);
  auto visit = [&](auto&& self, std::size_t j, const Element& prefix, bool clean) -> void {
    if (j == p) {
      if (clean) {
        constant_bits.push_back(bits);
        constant_values.push_back(prefix);
      }
      return;
    }
    const Gen g = expr.letter(j + 1);
    const bool defect = j > 0 && prefix.has_right_descent(g);
    bits[j] = 0;
    self(self, j + 1, prefix, clean && !defect);
    bits[j] = 1;
    self(self, j + 1, prefix.right_multiply(g), clean && !defect);
  };
  visit(visit, 0, expr.system().identity(), true);

  const auto& lower = *lower_;
  std::vector<int> hits(lower.size(), 0);
  std::vector<std::size_t> which(lower.size(), 0);
  for (std::size_t k = 0; k < constant_values.size(); ++k) {
    const auto idx = lower.index_of(constant_values[k]);
    if (!idx) return "a constant mask evaluates outside [e, w]";
    if (static_cast<int>(std::count(constant_bits[k].begin(), constant_bits[k].end(), 1)) !=
        constant_values[k].length()) {
      return "a constant mask has more ones than the length of its value";
    }
    ++hits[*idx];
    which[*idx] = k;
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (hits[i] != 1) {
      return std::to_string(hits[i]) + " constant masks evaluate to " +
             format_word(lower.word(i));
    }
    const auto greedy = greedy_constant_mask(expr, lower.element(i));
    if (greedy.mask.bits() != constant_bits[which[i]]) {
      return "greedy mask differs from the enumerated constant mask for " +
             format_word(lower.word(i));
    }
  }
  if (static_cast<int>(p) <= config_.join_limit) {
    for (std::size_t a = 0; a < constant_bits.size(); ++a) {
      for (std::size_t b = a + 1; b < constant_bits.size(); ++b) {
        const Mask join = mask_join(Mask(expr, constant_bits[a]), Mask(expr, constant_bits[b]));
        if (!is_constant(join)) return "join of two constant masks has a defect";
        const Element v = evaluate_mask(join).value;
        if (!bruhat_leq(constant_values[a], v) || !bruhat_leq(constant_values[b], v)) {
          return "join does not dominate its operands";
        }
      }
    }
  }
  return {};
}

std::string Task::check_greedy(const Element& x) {
  bool greedy_ok = true;
  try {
    const auto cm = greedy_constant_mask(*expr_, x);
    if (cm.mask.count_ones() != static_cast<std::size_t>(x.length())) {
      return "constant mask ones count differs from length";
    }
    if (!is_constant(cm.mask)) return "greedy mask has a defect";
    if (!(evaluate_mask(cm.mask).value == x)) return "greedy mask does not evaluate to x";
  } catch (const NotBelowError& e) {
    greedy_ok = false;
    if (e.trace().r(1).is_identity()) return "not-below error with trivial remainder";
  }
  if (greedy_ok != bruhat_leq(x, w_)) {
    return std::string("greedy ") + (greedy_ok ? "succeeds" : "fails") +
           " but bruhat_leq disagrees for x = " + format_element(x);
  }
  return {};
}

std::string Task::check_relative(const HasseInterval& sub) {
  const auto masks = interval_as_relative_masks(sub, *expr_);
  if (masks.size() != sub.size()) return "mask count differs from interval size";
  std::set<std::vector<Entry>> distinct;
  for (const auto& im : masks) {
    const auto& rm = im.mask;
    mask_context_ = format_relative_mask(rm);
    if (rm.x_count() != static_cast<std::size_t>(w_.length() - im.element.length())) {
      return "X count differs from l(w) - l(x)";
    }
    if (!(rm.value() == sub.bottom())) return "mask does not evaluate to y";
    if (!(evaluate_mask(xmask_of(rm)).value == im.element)) return "X-mask does not give x";
    if (!is_constant(xmask_of(rm))) return "X-mask is not constant";
    for (std::size_t j : relative_defect_profile(rm)) {
      if (rm.entry(j) != Entry::x) {
        position_context_ = j;
        return "defect at a non-X position";
      }
    }
    distinct.insert(rm.entries());
  }
  mask_context_.clear();
  if (distinct.size() != masks.size()) return "two elements share a relative mask";
  return {};
}

std::string Task::check_phi(const HasseInterval& sub, const Matching& m) {
  const Element& y = sub.bottom();
  const bool degenerate = y == w_;
  for (const auto& x : sub.elements()) {
    const RelativeMask rm = build_relative_mask(*expr_, x, y);
    mask_context_ = format_relative_mask(rm);
    const auto move = find_move(rm);
    if (!move) {
      if (!rm.all_ones() || !degenerate) return "mask without a move in a nontrivial interval";
      continue;
    }
    position_context_ = move->position;
    const RelativeMask image = apply_move(rm, *move);
    if (!RelativeMask::is_valid(*expr_, image.entries()) || !is_constant(xmask_of(image))) {
      return "phi output is not a valid relative mask";
    }
    if (!(apply_phi(image) == rm)) return "phi is not an involution here";
    if (!(image.value() == rm.value())) return "phi changed the encoded element";
    for (std::size_t k = move->position; k <= rm.size(); ++k) {
      if (!(image.sigma_prefix(k) == rm.sigma_prefix(k))) {
        return "phi changed a prefix right of the move";
      }
    }
    std::size_t changed = 0;
    for (std::size_t j = 1; j <= rm.size(); ++j) {
      changed += (rm.entry(j) == Entry::x) != (image.entry(j) == Entry::x);
    }
    if (changed != 1 || (rm.entry(move->position) == Entry::x) ==
                            (image.entry(move->position) == Entry::x)) {
      return "X-mask changed at other than exactly the move position";
    }
    const Element& partner = image.xmask_value();
    const bool up = partner.length() > x.length();
    const Element& hi = up ? partner : x;
    const Element& lo = up ? x : partner;
    if (hi.length() != lo.length() + 1 || !bruhat_leq(lo, hi)) {
      return "phi does not move along a cover";
    }
    if (!sub.index_of(partner)) return "phi left the interval";
  }
  mask_context_.clear();
  position_context_ = 0;
  if (degenerate) {
    if (m.unmatched.size() != 1 || !(m.unmatched.front() == w_) || !m.pairs.empty()) {
      return "[w, w] should leave exactly w unmatched";
    }
  } else if (!m.unmatched.empty()) {
    return std::to_string(m.unmatched.size()) + " unmatched elements in a nontrivial interval";
  }
  for (const auto& p : m.pairs) {
    const auto u = sub.index_of(p.upper_word);
    const auto l = sub.index_of(p.lower_word);
    if (!u || !l || !sub.has_cover(*u, *l)) return "matched pair is not a cover edge";
  }
  return {};
}

std::string Task::check_mobius(const HasseInterval& sub, const Matching& m) {
  const int expected = (w_.length() - sub.bottom().length()) % 2 == 0 ? 1 : -1;
  const int oracle = mobius_oracle(sub);
  if (oracle != expected) {
    return "mobius recursion gives " + std::to_string(oracle) + ", expected " +
           std::to_string(expected);
  }
  const auto report = mobius_via_matching(sub, m);
  const int delta = sub.size() == 1 ? 1 : 0;
  if (report.survivor_sum != delta) {
    return "survivor sum " + std::to_string(report.survivor_sum) + ", expected " +
           std::to_string(delta);
  }
  if (report.mobius != expected) return "reported mobius value has the wrong sign";
  return {};
}

std::string Task::check_acyclic(const HasseInterval& sub, const Matching& m) {
  const auto r = acyclicity_check(sub, m);
  if (!r.acyclic) {
    std::string cycle;
    for (std::size_t i : r.cycle) cycle += " [" + format_word(sub.word(i)) + "]";
    return "directed cycle:" + cycle;
  }
  return {};
}

std::string Task::check_rw(const HasseInterval& sub, const Matching& m) {
  const Matching rw = rw_match(sub, *expr_);
  if (rw.pair_set() != m.pair_set()) return "largest-label matching differs from phi";
  if (rw.unmatched_words != m.unmatched_words) return "unmatched sets differ";
  return {};
}

TaskResult Task::run() {
  const Word no_y;
  const bool interval_checks = wants(Check::relative) || wants(Check::matching) ||
                               wants(Check::mobius) || wants(Check::acyclic) ||
                               wants(Check::rw);
  try {
    expr_ = ReducedExpression::from_word(w_.system(), w_word_);
    lower_ = enumerate_interval(w_.system().identity(), w_);
  } catch (const std::exception& e) {
    for (Check c : config_.checks) {
      ++result_.tallies[c].cases;
      ++result_.tallies[c].failures;
      fail(c, no_y, std::string("setup: ") + e.what());
    }
    return std::move(result_);
  }
  result_.pairs = lower_->size();

  if (wants(Check::leq)) {
    for (const auto& x : universe_) {
      run_case(Check::leq, canonical_letters(x), [&] { return check_leq(x); });
    }
  }
  if (wants(Check::lifting)) {
    for (std::size_t i = 0; i + 1 < lower_->size(); ++i) {
      run_case(Check::lifting, lower_->word(i),
               [&] { return check_lifting(lower_->element(i)); });
    }
  }
  if (wants(Check::masks) && static_cast<int>(expr_->size()) <= config_.mask_enumeration_limit) {
    run_case(Check::masks, no_y, [&] { return check_masks_enumeration(); });
    for (const auto& x : universe_) {
      if (x.length() > w_.length()) continue;
      run_case(Check::masks, canonical_letters(x), [&] { return check_greedy(x); });
    }
  }
  if (!interval_checks) return std::move(result_);

  for (std::size_t yi = 0; yi < lower_->size(); ++yi) {
    const Word& y_word = lower_->word(yi);
    std::optional<HasseInterval> sub;
    std::optional<Matching> m;
    std::string setup_error;
    try {
      sub = lower_->restricted_above(lower_->element(yi));
      m = match_interval(*sub, *expr_);
    } catch (const std::exception& e) {
      setup_error = std::string("exception: ") + e.what();
    }
    auto guarded = [&](Check c, auto&& body) {
      if (!wants(c)) return;
      run_case(c, y_word, [&]() -> std::string {
        if (!setup_error.empty()) return setup_error;
        return body();
      });
    };
    guarded(Check::relative, [&] { return check_relative(*sub); });
    guarded(Check::matching, [&] { return check_phi(*sub, *m); });
    guarded(Check::mobius, [&] { return check_mobius(*sub, *m); });
    guarded(Check::acyclic, [&] { return check_acyclic(*sub, *m); });
    guarded(Check::rw, [&] { return check_rw(*sub, *m); });
  }
  return std::move(result_);
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!config.system) throw InputError("suite config has no system");
  if (config.max_length < 1) throw InputError("max_length must be >= 1");
  SuiteReport report;
  report.group = config.group;
  report.max_length = config.max_length;
  for (Check c : config.checks) report.tallies[c];

  const auto universe = enumerate_elements(*config.system, config.max_length);
  report.elements = universe.size();
  if (!config.checks.empty()) {
    std::vector<TaskResult> results(universe.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < universe.size(); i = next++) {
        results[i] = Task(config, universe, universe[i]).run();
      }
    };
    const int jobs = std::max(1, config.jobs);
    std::vector<std::thread> threads;
    for (int k = 1; k < jobs; ++k) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    for (auto& r : results) {
      report.pairs += r.pairs;
      for (const auto& [c, t] : r.tallies) {
        report.tallies[c].cases += t.cases;
        report.tallies[c].failures += t.failures;
      }
      report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
    }
    std::sort(report.failures.begin(), report.failures.end());
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "group " << group << ", max_length " << max_length << ": " << elements
      << " elements, " << pairs << " comparable pairs\n";
  for (const auto& [c, t] : tallies) {
    out << "  " << check_name(c) << ": " << t.cases << " cases, " << t.failures
        << " failures\n";
  }
  for (const auto& f : failures) {
    out << "FAIL " << f.check << " group=" << f.group << " y=\"" << format_word(f.y)
        << "\" w=\"" << format_word(f.w) << "\"";
    if (!f.mask.empty()) out << " mask=\"" << f.mask << "\"";
    if (f.position) out << " position=" << f.position;
    out << ": " << f.detail << "\n";
  }
  out << "result: " << (ok() ? "ok" : "FAILED") << " (" << failures.size() << " failures) in "
      << wall_seconds << " s\n";
  return out.str();
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["group"] = group;
  j["max_length"] = max_length;
  j["elements"] = elements;
  j["pairs"] = pairs;
  j["checks"] = nlohmann::json::object();
  for (const auto& [c, t] : tallies) {
    j["checks"][check_name(c)] = {{"cases", t.cases}, {"failures", t.failures}};
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : failures) {
    j["failures"].push_back({{"check", f.check},
                             {"group", f.group},
                             {"y", f.y},
                             {"w", f.w},
                             {"mask", f.mask},
                             {"position", f.position},
                             {"detail", f.detail}});
  }
  j["ok"] = ok();
  j["wall_seconds"] = wall_seconds;
  return j;
}

}  // namespace coxmask
