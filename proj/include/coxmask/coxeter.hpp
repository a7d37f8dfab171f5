#pragma once

// Coxeter systems, group elements and Bruhat order.
//
// Elements are stored through their action on the simple roots in the
// geometric representation: column j of the action matrix holds the
// coordinates of x(alpha_j). Generator indices are 1-based everywhere in
// the public interface.

#include <coxmask/errors.hpp>
#include <coxmask/scalar.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace coxmask {

using Gen = int;
using Word = std::vector<Gen>;

/// Symmetric matrix of orders m(i,j); kInfinity (= 0) encodes m = inf.
class CoxeterMatrix {
 public:
  static constexpr int kInfinity = 0;

  /// Throws InputError naming the offending entry when the rows do not
  /// describe a Coxeter matrix.
  explicit CoxeterMatrix(const std::vector<std::vector<int>>& rows);

  int rank() const { return rank_; }
  int operator()(Gen i, Gen j) const { return m_[index(i, j)]; }
  bool is_infinite(Gen i, Gen j) const { return (*this)(i, j) == kInfinity; }

  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::size_t index(Gen i, Gen j) const {
    return static_cast<std::size_t>(i - 1) * rank_ + (j - 1);
  }

  int rank_ = 0;
  std::vector<int> m_;
};

class CoxeterSystem;
class ReducedExpression;

/// A group element. Holds a non-owning pointer to its system; the system
/// must outlive every element built from it.
class Element {
 public:
  const CoxeterSystem& system() const { return *sys_; }

  int length() const { return length_; }
  bool is_identity() const { return length_ == 0; }

  bool has_right_descent(Gen i) const;
  bool has_left_descent(Gen i) const;

  /// x * s_i
  Element right_multiply(Gen i) const;
  /// s_i * x
  Element left_multiply(Gen i) const;
  Element inverse() const;

  Element operator*(const Element& other) const;
  bool operator==(const Element& other) const;

  /// Coordinates of x(alpha_j) as decimal strings (debugging and bindings).
  std::vector<std::string> root_image(Gen j) const;

  /// True when every column has coordinates all >= 0 or all <= 0.
  bool satisfies_root_dichotomy() const;

 private:
  friend class CoxeterSystem;
  using ExactMatrix = std::vector<detail::ExactScalar>;
  using RealMatrix = std::vector<detail::RealScalar>;

  Element(const CoxeterSystem* sys, std::variant<ExactMatrix, RealMatrix> action,
          int length)
      : sys_(sys), action_(std::move(action)), length_(length) {}

  int column_sign(Gen i) const;

  const CoxeterSystem* sys_;
  std::variant<ExactMatrix, RealMatrix> action_;
  int length_;
};

/// An immutable Coxeter system with its geometric representation.
/// Safe to share between threads.
class CoxeterSystem {
 public:
  static constexpr int kDefaultMaxLength = 128;

  static std::shared_ptr<const CoxeterSystem> create(const CoxeterMatrix& matrix,
                                                     int max_length = default_max_length());

  /// COXMASK_MAX_LENGTH from the environment, else kDefaultMaxLength.
  static int default_max_length();

  int rank() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  ScalarTier tier() const { return tier_; }
  int max_length() const { return max_length_; }

  Element identity() const;
  Element generator(Gen i) const;
  /// Accepts non-reduced words. Throws InputError on out-of-range letters.
  Element product_of_word(std::span<const Gen> word) const;

  void check_generator(Gen i) const;
  /// Throws ResourceError when length exceeds max_length.
  void check_guard(int length, const char* what) const;

  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;

 private:
  friend class Element;
  CoxeterSystem(const CoxeterMatrix& matrix, int max_length);

  CoxeterMatrix matrix_;
  ScalarTier tier_;
  int max_length_;
  // coeff[i*n + j] = 2cos(pi/m(i,j)) for i != j (2 when m = inf), -2 on the
  // diagonal, so that s_i(alpha_j) = alpha_j + coeff[i][j] alpha_i.
  std::vector<detail::ExactScalar> exact_coeff_;
  std::vector<detail::RealScalar> real_coeff_;
  std::vector<char> coupled_;
};

/// A validated reduced word together with its prefix elements w[0..p].
/// Cheap to copy (shared immutable storage).
class ReducedExpression {
 public:
  /// Throws InputError if the word is not reduced or has bad letters.
  static ReducedExpression from_word(const CoxeterSystem& sys, Word letters);

  const CoxeterSystem& system() const { return *d_->sys; }
  std::size_t size() const { return d_->letters.size(); }
  const Word& letters() const { return d_->letters; }
  /// 1-based position.
  Gen letter(std::size_t j) const { return d_->letters[j - 1]; }
  /// Element of the first j letters, 0 <= j <= size().
  const Element& prefix(std::size_t j) const { return d_->prefixes[j]; }
  const Element& element() const { return d_->prefixes.back(); }

  friend bool operator==(const ReducedExpression& a, const ReducedExpression& b) {
    return a.d_ == b.d_ || (a.d_->sys == b.d_->sys && a.d_->letters == b.d_->letters);
  }

 private:
  struct Data {
    const CoxeterSystem* sys;
    Word letters;
    std::vector<Element> prefixes;
  };
  explicit ReducedExpression(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

enum class Side { left, right };

int length_of(const Element& x);
std::vector<Gen> descent_set(const Element& x, Side side);

/// Reduced word obtained by repeatedly stripping the smallest-index right
/// descent; letters accumulate right to left.
Word canonical_letters(const Element& x);
ReducedExpression canonical_word(const Element& x);

/// Bruhat order by the descent recursion: for a right descent s of w,
/// x <= w iff (xs <= ws if s is a descent of x, else x <= ws).
bool bruhat_leq(const Element& x, const Element& w);

/// Elements covered by w, sorted by canonical word.
std::vector<Element> coatoms(const Element& w);

/// Total order used for interval elements: by length, then canonical word.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct CoverEdge {
  std::size_t upper;
  std::size_t lower;
  friend auto operator<=>(const CoverEdge&, const CoverEdge&) = default;
};

/// The Bruhat interval [bottom, top] with its Hasse diagram. Elements are
/// sorted by (length, canonical word); edges by (upper, lower) index.
class HasseInterval {
 public:
  const Element& bottom() const { return elements_.front(); }
  const Element& top() const { return elements_.back(); }
  std::size_t size() const { return elements_.size(); }

  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(std::size_t i) const { return elements_[i]; }
  /// Canonical word of element i.
  const Word& word(std::size_t i) const { return words_[i]; }
  const std::vector<CoverEdge>& cover_edges() const { return edges_; }

  std::optional<std::size_t> index_of(const Word& canonical) const;
  std::optional<std::size_t> index_of(const Element& x) const;
  bool has_cover(std::size_t upper, std::size_t lower) const;

  /// The sub-interval [y, top]. Throws OrderingError if y is not in here.
  HasseInterval restricted_above(const Element& y) const;

 private:
  friend HasseInterval enumerate_interval(const Element& y, const Element& w);
  HasseInterval(std::vector<Element> elements, std::vector<Word> words,
                std::vector<CoverEdge> edges);

  std::vector<Element> elements_;
  std::vector<Word> words_;
  std::vector<CoverEdge> edges_;
  std::map<Word, std::size_t, ShortLex> index_;
};

/// All z with y <= z <= w and the covers among them. Throws OrderingError
/// when y is not below w and ResourceError past the length guard.
HasseInterval enumerate_interval(const Element& y, const Element& w);

}  // namespace coxmask
