// coxmask: command-line front end.
//
// Exit codes: 0 success, 1 property violation, 2 input error.

#include <coxmask/coxeter.hpp>
#include <coxmask/io.hpp>
#include <coxmask/masks.hpp>
#include <coxmask/matching.hpp>
#include <coxmask/presets.hpp>
#include <coxmask/relative.hpp>
#include <coxmask/verify.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

using namespace coxmask;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Options {
  std::string group;
  std::optional<int> max_length_guard;

  std::string x_word, y_word, w_word;
  std::string expr_word;
  std::string dot_path;

  int suite_max_length = 0;
  std::string checks = "all";
  int jobs = 1;
  bool json = false;
};

class Session {
 public:
  explicit Session(const Options& opt)
      : sys_(CoxeterSystem::create(resolve_group(opt.group),
                                   opt.max_length_guard.value_or(
                                       CoxeterSystem::default_max_length()))) {}

  const CoxeterSystem& sys() const { return *sys_; }
  std::shared_ptr<const CoxeterSystem> shared() const { return sys_; }

  Element element(const std::string& text) const {
    return sys_->product_of_word(parse_word(text, sys_->rank()));
  }

  ReducedExpression expression(const std::string& text) const {
    return ReducedExpression::from_word(*sys_, parse_word(text, sys_->rank()));
  }

  // The explicit --expr when given (it must spell w); otherwise the w-word as
  // typed when it is reduced, else canonical_word(w).
  ReducedExpression expression_for(const Element& w, const std::string& w_text,
                                   const std::string& expr_text) const {
    if (expr_text.empty()) {
      Word typed = parse_word(w_text, sys_->rank());
      if (static_cast<int>(typed.size()) == w.length()) {
        return ReducedExpression::from_word(*sys_, std::move(typed));
      }
      return canonical_word(w);
    }
    ReducedExpression e = expression(expr_text);
    if (!(e.element() == w)) {
      throw InputError("--expr \"" + expr_text + "\" is not an expression for w = " +
                       format_element(w));
    }
    return e;
  }

 private:
  std::shared_ptr<const CoxeterSystem> sys_;
};

int cmd_leq(const Options& opt) {
  const Session s(opt);
  std::cout << (bruhat_leq(s.element(opt.x_word), s.element(opt.w_word)) ? "true" : "false")
            << "\n";
  return kOk;
}

int cmd_constant_mask(const Options& opt) {
  const Session s(opt);
  const ReducedExpression expr = s.expression(opt.w_word);
  std::cout << format_constant_mask(greedy_constant_mask(expr, s.element(opt.x_word)));
  return kOk;
}

int cmd_interval(const Options& opt) {
  const Session s(opt);
  const Element w = s.element(opt.w_word);
  const ReducedExpression expr = s.expression_for(w, opt.w_word, opt.expr_word);
  std::cout << format_interval_table(interval_as_relative_masks(s.element(opt.y_word), expr),
                                     expr);
  return kOk;
}

int cmd_match(const Options& opt) {
  const Session s(opt);
  const Element w = s.element(opt.w_word);
  const ReducedExpression expr = s.expression_for(w, opt.w_word, opt.expr_word);
  const HasseInterval interval = enumerate_interval(s.element(opt.y_word), w);
  const Matching m = match_interval(interval, expr);
  std::cout << format_matching(m);
  if (!opt.dot_path.empty()) write_dot(opt.dot_path, interval, m);
  return kOk;
}

int cmd_mobius(const Options& opt) {
  const Session s(opt);
  const Element w = s.element(opt.w_word);
  const ReducedExpression expr = s.expression_for(w, opt.w_word, opt.expr_word);
  const HasseInterval interval = enumerate_interval(s.element(opt.y_word), w);
  const int mu = mobius_oracle(interval);
  const MobiusReport report = mobius_via_matching(interval, match_interval(interval, expr));
  std::cout << "mu = " << mu << "; survivor sum = " << report.survivor_sum << "\n";
  const int delta = interval.size() == 1 ? 1 : 0;
  if (mu != report.mobius || report.survivor_sum != delta) {
    std::cout << "MISMATCH: expected mu = " << report.mobius << " and survivor sum = " << delta
              << "\n";
    return kViolation;
  }
  return kOk;
}

int cmd_rw_match(const Options& opt) {
  const Session s(opt);
  const Element w = s.element(opt.w_word);
  const ReducedExpression expr = s.expression_for(w, opt.w_word, opt.expr_word);
  const HasseInterval interval = enumerate_interval(s.element(opt.y_word), w);
  const Matching rw = rw_match(interval, expr);
  const Matching phi = match_interval(interval, expr);
  std::cout << format_matching(rw);
  const bool agree = rw.pair_set() == phi.pair_set() && rw.unmatched_words == phi.unmatched_words;
  std::cout << "agrees with match: " << (agree ? "yes" : "no") << "\n";
  return agree ? kOk : kViolation;
}

int cmd_verify(const Options& opt) {
  const Session s(opt);
  SuiteConfig config;
  config.system = s.shared();
  config.group = opt.group;
  config.max_length = opt.suite_max_length;
  config.checks = parse_check_list(opt.checks);
  config.jobs = opt.jobs;
  const SuiteReport report = run_suite(config);
  if (opt.json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.ok() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bruhat intervals, relative masks and their acyclic matching"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--group,-g", opt.group,
                 "Preset (A3, B3, G2, H3, I2_5, tA2, ...) or a Coxeter matrix file")
      ->required();
  app.add_option("--max-length-guard", opt.max_length_guard,
                 "Length guard for searches (default: COXMASK_MAX_LENGTH or 128)")
      ->check(CLI::PositiveNumber);

  auto* leq = app.add_subcommand("leq", "Is x <= w in Bruhat order?");
  leq->add_option("x", opt.x_word)->required();
  leq->add_option("w", opt.w_word)->required();

  auto* cmask = app.add_subcommand("constant-mask", "Defect-free mask of x on a reduced word");
  cmask->add_option("--word", opt.w_word, "Reduced expression for w")->required();
  cmask->add_option("--x", opt.x_word, "Element x <= w")->required();

  auto add_interval_args = [&](CLI::App* sub) {
    sub->add_option("y", opt.y_word)->required();
    sub->add_option("w", opt.w_word)->required();
    sub->add_option("--expr", opt.expr_word, "Reduced expression for w (default: w as typed if reduced, else canonical)");
  };
  auto* interval = app.add_subcommand("interval", "Relative-mask table of [y, w]");
  add_interval_args(interval);
  auto* match = app.add_subcommand("match", "Matching of [y, w] induced by phi");
  add_interval_args(match);
  match->add_option("--dot", opt.dot_path, "Write the matched Hasse diagram as DOT");
  auto* mobius = app.add_subcommand("mobius", "Mobius function of [y, w] with cross-check");
  add_interval_args(mobius);
  auto* rw = app.add_subcommand("rw-match", "Largest-label matching (finite groups)");
  add_interval_args(rw);

  auto* verify = app.add_subcommand("verify", "Exhaustive property checks");
  verify->add_option("--max-length", opt.suite_max_length)->required()->check(
      CLI::PositiveNumber);
  verify->add_option("--checks", opt.checks,
                     "Comma-separated subset of masks,relative,matching,mobius,acyclic,rw,"
                     "lifting,leq (default: all)");
  verify->add_option("--jobs,-j", opt.jobs)->check(CLI::PositiveNumber);
  verify->add_flag("--json", opt.json, "Print a JSON summary instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*leq) return cmd_leq(opt);
    if (*cmask) return cmd_constant_mask(opt);
    if (*interval) return cmd_interval(opt);
    if (*match) return cmd_match(opt);
    if (*mobius) return cmd_mobius(opt);
    if (*rw) return cmd_rw_match(opt);
    if (*verify) return cmd_verify(opt);
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << "\n";
    return kViolation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
