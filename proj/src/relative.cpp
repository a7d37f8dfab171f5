#include <coxmask/relative.hpp>

#include <algorithm>

namespace coxmask {

namespace {

// Fills both prefix chains; returns false at the first invalid position.
bool walk(const ReducedExpression& expr, std::span<const Entry> entries,
          std::vector<Element>* sigma, std::vector<Element>* tau) {
  Element s = expr.system().identity();
  Element t = s;
  if (sigma) sigma->push_back(s);
  if (tau) tau->push_back(t);
  for (std::size_t j = 1; j <= entries.size(); ++j) {
    const Gen g = expr.letter(j);
    const Entry e = entries[j - 1];
    if (e != Entry::x) {
      if (t.has_right_descent(g) || s.has_right_descent(g)) return false;
      t = t.right_multiply(g);
      if (e == Entry::one) s = s.right_multiply(g);
    }
    if (sigma) sigma->push_back(s);
    if (tau) tau->push_back(t);
  }
  return true;
}

}  // namespace

RelativeMask::RelativeMask(ReducedExpression expr, std::vector<Entry> entries)
    : expr_(std::move(expr)), entries_(std::move(entries)) {
  if (entries_.size() != expr_.size()) {
    throw InputError("relative mask has " + std::to_string(entries_.size()) +
                     " entries but the expression has " + std::to_string(expr_.size()) +
                     " letters");
  }
  sigma_prefix_.reserve(entries_.size() + 1);
  tau_prefix_.reserve(entries_.size() + 1);
  if (!walk(expr_, entries_, &sigma_prefix_, &tau_prefix_)) {
    throw InputError("not a valid relative mask");
  }
}

bool RelativeMask::is_valid(const ReducedExpression& expr, std::span<const Entry> entries) {
  return entries.size() == expr.size() && walk(expr, entries, nullptr, nullptr);
}

std::size_t RelativeMask::x_count() const {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), Entry::x));
}

bool RelativeMask::all_ones() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Entry e) { return e == Entry::one; });
}

bool RelativeMask::is_defect(std::size_t j) const {
  return sigma_prefix_[j - 1].has_right_descent(expr_.letter(j));
}

bool RelativeMask::is_shifted_descent(std::size_t j) const {
  return bruhat_leq(sigma_prefix_[j], tau_prefix_[j - 1]);
}

RelativeMask build_relative_mask(const ReducedExpression& expr, const Element& x,
                                 const Element& y) {
  const auto tau = detail::greedy_bits(expr.system(), expr.letters(), x);
  if (!tau) throw OrderingError("x is not below w");
  Word sub;
  for (std::size_t j = 0; j < expr.size(); ++j) {
    if ((*tau)[j]) sub.push_back(expr.letters()[j]);
  }
  const auto nu = detail::greedy_bits(expr.system(), sub, y);
  if (!nu) throw OrderingError("y is not below x");
  std::vector<Entry> entries(expr.size(), Entry::x);
  std::size_t k = 0;
  for (std::size_t j = 0; j < expr.size(); ++j) {
    if ((*tau)[j]) entries[j] = (*nu)[k++] ? Entry::one : Entry::zero;
  }
  return RelativeMask(expr, std::move(entries));
}

Mask xmask_of(const RelativeMask& rm) {
  std::vector<std::uint8_t> bits(rm.size());
  std::transform(rm.entries().begin(), rm.entries().end(), bits.begin(),
                 [](Entry e) { return static_cast<std::uint8_t>(e != Entry::x); });
  return Mask(rm.expression(), std::move(bits));
}

std::vector<std::size_t> relative_defect_profile(const RelativeMask& rm) {
  std::vector<std::size_t> out;
  for (std::size_t j = 2; j <= rm.size(); ++j) {
    if (rm.is_defect(j)) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> shifted_descent_set(const RelativeMask& rm) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= rm.size(); ++j) {
    if (rm.is_shifted_descent(j)) out.push_back(j);
  }
  return out;
}

std::vector<IntervalMask> interval_as_relative_masks(const Element& y,
                                                     const ReducedExpression& expr) {
  return interval_as_relative_masks(enumerate_interval(y, expr.element()), expr);
}

std::vector<IntervalMask> interval_as_relative_masks(const HasseInterval& interval,
                                                     const ReducedExpression& expr) {
  if (!(interval.top() == expr.element())) {
    throw PreconditionError("interval top differs from the expression's element");
  }
  std::vector<IntervalMask> out;
  out.reserve(interval.size());
  for (const auto& x : interval.elements()) {
    out.push_back({x, build_relative_mask(expr, x, interval.bottom())});
  }
  std::sort(out.begin(), out.end(), [](const IntervalMask& a, const IntervalMask& b) {
    if (a.element.length() != b.element.length()) return a.element.length() > b.element.length();
    // Descending X-mask: a 1 (non-X) at the first difference wins.
    const auto& ea = a.mask.entries();
    const auto& eb = b.mask.entries();
    for (std::size_t j = 0; j < ea.size(); ++j) {
      const bool ta = ea[j] != Entry::x;
      const bool tb = eb[j] != Entry::x;
      if (ta != tb) return ta;
    }
    return false;
  });
  return out;
}

}  // namespace coxmask
