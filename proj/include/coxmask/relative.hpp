#pragma once

// Relative masks: three-valued vectors over a reduced expression of w that
// encode a pair y <= x <= w. X marks the zeros of the constant mask tau of x
// (the X-mask); the 0/1 entries form the constant mask of y on w^tau.

#include <coxmask/coxeter.hpp>
#include <coxmask/masks.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace coxmask {

enum class Entry : std::uint8_t { zero, one, x };

class RelativeMask {
 public:
  /// Throws InputError unless the X-mask is constant and no 0/1 position
  /// is a defect.
  RelativeMask(ReducedExpression expr, std::vector<Entry> entries);

  static bool is_valid(const ReducedExpression& expr, std::span<const Entry> entries);

  const ReducedExpression& expression() const { return expr_; }
  std::size_t size() const { return entries_.size(); }
  /// 1-based position.
  Entry entry(std::size_t j) const { return entries_[j - 1]; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// The encoded bottom element y.
  const Element& value() const { return sigma_prefix_.back(); }
  /// The encoded intermediate element x.
  const Element& xmask_value() const { return tau_prefix_.back(); }
  /// Product over the first j positions with X read as the identity.
  const Element& sigma_prefix(std::size_t j) const { return sigma_prefix_[j]; }
  /// Product over the first j positions of the X-mask.
  const Element& tau_prefix(std::size_t j) const { return tau_prefix_[j]; }

  std::size_t x_count() const;
  bool all_ones() const;

  bool is_defect(std::size_t j) const;
  bool is_shifted_descent(std::size_t j) const;

  friend bool operator==(const RelativeMask& a, const RelativeMask& b) {
    return a.expr_ == b.expr_ && a.entries_ == b.entries_;
  }

 private:
  ReducedExpression expr_;
  std::vector<Entry> entries_;
  std::vector<Element> sigma_prefix_;
  std::vector<Element> tau_prefix_;
};

/// Throws OrderingError unless y <= x <= w.
RelativeMask build_relative_mask(const ReducedExpression& expr, const Element& x,
                                 const Element& y);

Mask xmask_of(const RelativeMask& rm);
std::vector<std::size_t> relative_defect_profile(const RelativeMask& rm);
/// Positions j with w^{sigma[j]} <= w^{tau[j-1]}.
std::vector<std::size_t> shifted_descent_set(const RelativeMask& rm);

struct IntervalMask {
  Element element;
  RelativeMask mask;
};

/// One relative mask per element of [y, w]. Ordered by decreasing length of
/// the element, then by X-mask read as a binary number, largest first.
std::vector<IntervalMask> interval_as_relative_masks(const Element& y,
                                                     const ReducedExpression& expr);
/// Same, reusing an already enumerated interval [y, w].
std::vector<IntervalMask> interval_as_relative_masks(const HasseInterval& interval,
                                                     const ReducedExpression& expr);

}  // namespace coxmask
