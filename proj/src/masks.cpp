#include <coxmask/masks.hpp>

#include <algorithm>
#include <numeric>

namespace coxmask {

Mask::Mask(ReducedExpression expr, std::vector<std::uint8_t> bits)
    : expr_(std::move(expr)), bits_(std::move(bits)) {
  if (bits_.size() != expr_.size()) {
    throw InputError("mask has " + std::to_string(bits_.size()) +
                     " entries but the expression has " + std::to_string(expr_.size()) +
                     " letters");
  }
  for (auto b : bits_) {
    if (b > 1) throw InputError("mask entries must be 0 or 1");
  }
}

Mask Mask::zeros(const ReducedExpression& expr) {
  return Mask(expr, std::vector<std::uint8_t>(expr.size(), 0));
}

Mask Mask::ones(const ReducedExpression& expr) {
  return Mask(expr, std::vector<std::uint8_t>(expr.size(), 1));
}

std::size_t Mask::count_ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

MaskEvaluation evaluate_mask(const Mask& mask) {
  const auto& expr = mask.expression();
  std::vector<Element> prefixes;
  prefixes.reserve(mask.size() + 1);
  prefixes.push_back(expr.system().identity());
  for (std::size_t j = 1; j <= mask.size(); ++j) {
    prefixes.push_back(mask.bit(j) ? prefixes.back().right_multiply(expr.letter(j))
                                   : prefixes.back());
  }
  Element value = prefixes.back();
  return {std::move(value), std::move(prefixes)};
}

std::vector<std::size_t> DefectProfile::positions() const {
  std::vector<std::size_t> out;
  for (const auto& d : defects) out.push_back(d.position);
  return out;
}

bool DefectProfile::contains(std::size_t position) const {
  return std::any_of(defects.begin(), defects.end(),
                     [&](const Defect& d) { return d.position == position; });
}

DefectProfile defect_profile(const Mask& mask) {
  const auto eval = evaluate_mask(mask);
  const auto& expr = mask.expression();
  DefectProfile out;
  for (std::size_t j = 2; j <= mask.size(); ++j) {
    if (eval.prefixes[j - 1].has_right_descent(expr.letter(j))) {
      out.defects.push_back({j, mask.bit(j) ? DefectKind::one : DefectKind::zero});
    }
  }
  return out;
}

bool is_constant(const Mask& mask) { return defect_profile(mask).empty(); }

namespace {

// Runs the greedy pass, filling bits and (optionally) the remainders.
// Returns the final remainder r(1).
Element greedy_pass(const CoxeterSystem& sys, std::span<const Gen> letters, const Element& x,
                    std::vector<std::uint8_t>& bits, std::vector<Element>* remainders) {
  if (&x.system() != &sys) throw InputError("element belongs to a different system");
  const std::size_t p = letters.size();
  bits.assign(p, 0);
  if (remainders) {
    remainders->assign(p + 1, x);
  }
  Element r = x;
  for (std::size_t i = p; i >= 1; --i) {
    const Gen s = letters[i - 1];
    if (r.has_right_descent(s)) {
      bits[i - 1] = 1;
      r = r.right_multiply(s);
    }
    if (remainders) (*remainders)[i - 1] = r;
  }
  return r;
}

}  // namespace

namespace detail {

std::optional<std::vector<std::uint8_t>> greedy_bits(const CoxeterSystem& sys,
                                                     std::span<const Gen> letters,
                                                     const Element& x) {
  if (x.length() > static_cast<int>(letters.size())) return std::nullopt;
  std::vector<std::uint8_t> bits;
  if (!greedy_pass(sys, letters, x, bits, nullptr).is_identity()) return std::nullopt;
  return bits;
}

}  // namespace detail

ConstantMask greedy_constant_mask(const ReducedExpression& expr, const Element& x) {
  std::vector<std::uint8_t> bits;
  GreedyTrace trace;
  const Element r1 = greedy_pass(expr.system(), expr.letters(), x, bits, &trace.remainders);
  if (!r1.is_identity()) {
    throw NotBelowError("element is not below the expression's element in Bruhat order",
                        std::move(trace));
  }
  return {Mask(expr, std::move(bits)), std::move(trace)};
}

Mask mask_join(const Mask& a, const Mask& b) {
  if (!(a.expression() == b.expression())) {
    throw PreconditionError("masks live on different expressions");
  }
  if (!is_constant(a) || !is_constant(b)) {
    throw PreconditionError("mask_join needs constant masks");
  }
  std::vector<std::uint8_t> bits(a.size());
  std::transform(a.bits().begin(), a.bits().end(), b.bits().begin(), bits.begin(),
                 [](std::uint8_t u, std::uint8_t v) { return static_cast<std::uint8_t>(u | v); });
  return Mask(a.expression(), std::move(bits));
}

}  // namespace coxmask
