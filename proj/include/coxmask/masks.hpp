#pragma once

// Binary masks on a fixed reduced expression.

#include <coxmask/coxeter.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace coxmask {

class Mask {
 public:
  /// Throws InputError when the length differs from the expression or a
  /// bit is not 0/1.
  Mask(ReducedExpression expr, std::vector<std::uint8_t> bits);

  static Mask zeros(const ReducedExpression& expr);
  static Mask ones(const ReducedExpression& expr);

  const ReducedExpression& expression() const { return expr_; }
  std::size_t size() const { return bits_.size(); }
  /// 1-based position.
  bool bit(std::size_t j) const { return bits_[j - 1] != 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::size_t count_ones() const;

  friend bool operator==(const Mask& a, const Mask& b) {
    return a.expr_ == b.expr_ && a.bits_ == b.bits_;
  }

 private:
  ReducedExpression expr_;
  std::vector<std::uint8_t> bits_;
};

struct MaskEvaluation {
  Element value;
  /// prefixes[j] is the product over the first j positions, 0 <= j <= p.
  std::vector<Element> prefixes;
};

MaskEvaluation evaluate_mask(const Mask& mask);

enum class DefectKind { zero, one };

struct Defect {
  std::size_t position;
  DefectKind kind;
  friend bool operator==(const Defect&, const Defect&) = default;
};

struct DefectProfile {
  std::vector<Defect> defects;

  bool empty() const { return defects.empty(); }
  std::vector<std::size_t> positions() const;
  bool contains(std::size_t position) const;
};

/// Positions j whose letter is a right descent of the (j-1)-prefix of the
/// mask. Position 1 never qualifies.
DefectProfile defect_profile(const Mask& mask);
bool is_constant(const Mask& mask);

/// Remainders of the right-to-left greedy pass: r(p+1) = x, ..., r(1).
struct GreedyTrace {
  std::vector<Element> remainders;  // remainders[i-1] == r(i)

  const Element& r(std::size_t i) const { return remainders.at(i - 1); }
};

/// Raised by greedy_constant_mask when x is not below the expression's
/// element; carries the failed trace (its r(1) is not the identity).
class NotBelowError : public OrderingError {
 public:
  NotBelowError(const std::string& what, GreedyTrace trace)
      : OrderingError(what), trace_(std::move(trace)) {}
  const GreedyTrace& trace() const { return trace_; }

 private:
  GreedyTrace trace_;
};

struct ConstantMask {
  Mask mask;
  GreedyTrace trace;
};

/// The unique defect-free mask on expr evaluating to x, built right to left:
/// bit i is 1 exactly when letter i is a right descent of r(i+1).
ConstantMask greedy_constant_mask(const ReducedExpression& expr, const Element& x);

/// Positionwise OR of two constant masks. Throws PreconditionError if
/// either operand has a defect.
Mask mask_join(const Mask& a, const Mask& b);

namespace detail {

/// Greedy constant-mask bits for x on an arbitrary reduced letter sequence;
/// nullopt when x is not below its product.
std::optional<std::vector<std::uint8_t>> greedy_bits(const CoxeterSystem& sys,
                                                     std::span<const Gen> letters,
                                                     const Element& x);

}  // namespace detail

}  // namespace coxmask
