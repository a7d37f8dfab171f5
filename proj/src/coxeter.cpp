#include <coxmask/coxeter.hpp>

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>

namespace coxmask {

namespace detail {

int sign_of(const ExactScalar& v) { return v.sign(); }

int sign_of(const RealScalar& v) {
  if (v == 0) return 0;
  if (abs(v) <= kSignMargin) {
    throw PrecisionError("coordinate " + v.str(20) +
                         " is inside the sign margin; increase precision");
  }
  return v < 0 ? -1 : 1;
}

bool scalar_equal(const ExactScalar& a, const ExactScalar& b) { return a == b; }

bool scalar_equal(const RealScalar& a, const RealScalar& b) {
  RealScalar d = abs(a - b);
  if (d < kSnapThreshold) return true;
  if (d > kSignMargin) return false;
  throw PrecisionError("coordinates differ by " + d.str(20) +
                       ", inside the equality margin");
}

}  // namespace detail

namespace {

std::string entry_name(Gen i, Gen j) {
  return "m(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

template <class T>
void right_multiply_in_place(std::vector<T>& m, int n, int i, const std::vector<T>& coeff,
                             const std::vector<char>& coupled) {
  const std::size_t ci = static_cast<std::size_t>(i) * n;
  for (int j = 0; j < n; ++j) {
    if (j == i || !coupled[static_cast<std::size_t>(i) * n + j]) continue;
    const T& c = coeff[static_cast<std::size_t>(i) * n + j];
    const std::size_t cj = static_cast<std::size_t>(j) * n;
    for (int r = 0; r < n; ++r) {
      m[cj + r] += c * m[ci + r];
      detail::snap(m[cj + r]);
    }
  }
  for (int r = 0; r < n; ++r) m[ci + r] = -m[ci + r];
}

template <class T>
std::vector<T> identity_matrix(int n) {
  std::vector<T> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] = 1;
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoxeterMatrix

CoxeterMatrix::CoxeterMatrix(const std::vector<std::vector<int>>& rows)
    : rank_(static_cast<int>(rows.size())) {
  if (rank_ == 0) throw InputError("Coxeter matrix must have rank >= 1");
  m_.reserve(static_cast<std::size_t>(rank_) * rank_);
  for (int i = 0; i < rank_; ++i) {
    if (static_cast<int>(rows[i].size()) != rank_) {
      throw InputError("row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(rank_));
    }
    m_.insert(m_.end(), rows[i].begin(), rows[i].end());
  }
  for (Gen i = 1; i <= rank_; ++i) {
    if ((*this)(i, i) != 1) {
      throw InputError("diagonal entry " + entry_name(i, i) + " = " +
                       std::to_string((*this)(i, i)) + ", must be 1");
    }
    for (Gen j = 1; j <= rank_; ++j) {
      if (i == j) continue;
      const int v = (*this)(i, j);
      if (v != kInfinity && v < 2) {
        throw InputError("off-diagonal entry " + entry_name(i, j) + " = " +
                         std::to_string(v) + ", must be >= 2 or 0 (infinity)");
      }
      if (v != (*this)(j, i)) {
        throw InputError("matrix is not symmetric: " + entry_name(i, j) + " = " +
                         std::to_string(v) + " but " + entry_name(j, i) + " = " +
                         std::to_string((*this)(j, i)));
      }
    }
  }
}

std::vector<std::vector<int>> CoxeterMatrix::rows() const {
  std::vector<std::vector<int>> out(rank_);
  for (int i = 0; i < rank_; ++i) {
    out[i].assign(m_.begin() + static_cast<std::ptrdiff_t>(i) * rank_,
                  m_.begin() + static_cast<std::ptrdiff_t>(i + 1) * rank_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CoxeterSystem

CoxeterSystem::CoxeterSystem(const CoxeterMatrix& matrix, int max_length)
    : matrix_(matrix), tier_(ScalarTier::exact_integer), max_length_(max_length) {
  if (max_length < 1) throw InputError("max_length must be >= 1");
  const int n = matrix.rank();
  for (Gen i = 1; i <= n; ++i) {
    for (Gen j = 1; j <= n; ++j) {
      const int m = matrix(i, j);
      if (i != j && m != 2 && m != 3 && m != CoxeterMatrix::kInfinity) {
        tier_ = ScalarTier::high_precision;
      }
    }
  }
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  coupled_.assign(nn, 0);
  if (tier_ == ScalarTier::exact_integer) {
    exact_coeff_.assign(nn, 0);
  } else {
    real_coeff_.assign(nn, 0);
  }
  for (Gen i = 1; i <= n; ++i) {
    for (Gen j = 1; j <= n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i - 1) * n + (j - 1);
      const int m = matrix(i, j);
      if (m == 2) continue;
      coupled_[k] = 1;
      if (tier_ == ScalarTier::exact_integer) {
        exact_coeff_[k] = i == j ? -2 : (m == 3 ? 1 : 2);
      } else if (i == j) {
        real_coeff_[k] = -2;
      } else if (m == CoxeterMatrix::kInfinity) {
        real_coeff_[k] = 2;
      } else if (m == 3) {
        real_coeff_[k] = 1;
      } else {
        using boost::math::constants::pi;
        real_coeff_[k] = 2 * cos(pi<detail::RealScalar>() / m);
      }
    }
  }
}

std::shared_ptr<const CoxeterSystem> CoxeterSystem::create(const CoxeterMatrix& matrix,
                                                           int max_length) {
  return std::shared_ptr<const CoxeterSystem>(new CoxeterSystem(matrix, max_length));
}

int CoxeterSystem::default_max_length() {
  if (const char* env = std::getenv("COXMASK_MAX_LENGTH")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1'000'000) return static_cast<int>(v);
  }
  return kDefaultMaxLength;
}

Element CoxeterSystem::identity() const {
  if (tier_ == ScalarTier::exact_integer) {
    return Element(this, identity_matrix<detail::ExactScalar>(rank()), 0);
  }
  return Element(this, identity_matrix<detail::RealScalar>(rank()), 0);
}

Element CoxeterSystem::generator(Gen i) const {
  check_generator(i);
  return identity().right_multiply(i);
}

Element CoxeterSystem::product_of_word(std::span<const Gen> word) const {
  for (Gen g : word) check_generator(g);
  Element x = identity();
  for (Gen g : word) x = x.right_multiply(g);
  return x;
}

void CoxeterSystem::check_generator(Gen i) const {
  if (i < 1 || i > rank()) {
    throw InputError("generator index " + std::to_string(i) + " out of range 1.." +
                     std::to_string(rank()));
  }
}

void CoxeterSystem::check_guard(int length, const char* what) const {
  if (length > max_length_) {
    throw ResourceError(std::string(what) + ": length " + std::to_string(length) +
                        " exceeds max_length " + std::to_string(max_length_));
  }
}

// ---------------------------------------------------------------------------
// Element

int Element::column_sign(Gen i) const {
  const int n = sys_->rank();
  return std::visit(
      [&](const auto& m) {
        bool pos = false, neg = false;
        const std::size_t c = static_cast<std::size_t>(i - 1) * n;
        for (int r = 0; r < n; ++r) {
          const int s = detail::sign_of(m[c + r]);
          pos |= s > 0;
          neg |= s < 0;
        }
        if (pos && neg) {
          throw PrecisionError("image of simple root " + std::to_string(i) +
                               " has mixed signs");
        }
        if (!pos && !neg) throw IntegrityError("image of a simple root vanished");
        return pos ? 1 : -1;
      },
      action_);
}

bool Element::has_right_descent(Gen i) const {
  sys_->check_generator(i);
  if (length_ == 0) return false;
  return column_sign(i) < 0;
}

bool Element::has_left_descent(Gen i) const {
  sys_->check_generator(i);
  if (length_ == 0) return false;
  return inverse().has_right_descent(i);
}

Element Element::right_multiply(Gen i) const {
  const bool descent = has_right_descent(i);
  Element out = *this;
  const int n = sys_->rank();
  std::visit(
      [&](auto& m) {
        using T = typename std::decay_t<decltype(m)>::value_type;
        if constexpr (std::is_same_v<T, detail::ExactScalar>) {
          right_multiply_in_place(m, n, i - 1, sys_->exact_coeff_, sys_->coupled_);
        } else {
          right_multiply_in_place(m, n, i - 1, sys_->real_coeff_, sys_->coupled_);
        }
      },
      out.action_);
  out.length_ += descent ? -1 : 1;
  return out;
}

Element Element::left_multiply(Gen i) const { return sys_->generator(i) * *this; }

Element Element::inverse() const {
  Word w = canonical_letters(*this);
  std::reverse(w.begin(), w.end());
  return sys_->product_of_word(w);
}

Element Element::operator*(const Element& other) const {
  if (sys_ != other.sys_) throw InputError("elements belong to different systems");
  Element out = *this;
  for (Gen g : canonical_letters(other)) out = out.right_multiply(g);
  return out;
}

bool Element::operator==(const Element& other) const {
  if (sys_ != other.sys_ || length_ != other.length_) return false;
  return std::visit(
      [&](const auto& a) {
        const auto& b = std::get<std::decay_t<decltype(a)>>(other.action_);
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (!detail::scalar_equal(a[k], b[k])) return false;
        }
        return true;
      },
      action_);
}

std::vector<std::string> Element::root_image(Gen j) const {
  sys_->check_generator(j);
  const int n = sys_->rank();
  std::vector<std::string> out;
  std::visit(
      [&](const auto& m) {
        for (int r = 0; r < n; ++r) {
          out.push_back(m[static_cast<std::size_t>(j - 1) * n + r].str());
        }
      },
      action_);
  return out;
}

bool Element::satisfies_root_dichotomy() const {
  const int n = sys_->rank();
  return std::visit(
      [&](const auto& m) {
        for (int c = 0; c < n; ++c) {
          bool pos = false, neg = false;
          for (int r = 0; r < n; ++r) {
            const auto& v = m[static_cast<std::size_t>(c) * n + r];
            pos |= v > 0;
            neg |= v < 0;
          }
          if (pos == neg) return false;
        }
        return true;
      },
      action_);
}

// ---------------------------------------------------------------------------
// ReducedExpression

ReducedExpression ReducedExpression::from_word(const CoxeterSystem& sys, Word letters) {
  for (Gen g : letters) sys.check_generator(g);
  std::vector<Element> prefixes;
  prefixes.reserve(letters.size() + 1);
  prefixes.push_back(sys.identity());
  for (std::size_t j = 0; j < letters.size(); ++j) {
    if (prefixes.back().has_right_descent(letters[j])) {
      throw InputError("word is not reduced: letter " + std::to_string(letters[j]) +
                       " at position " + std::to_string(j + 1) + " shortens the prefix");
    }
    prefixes.push_back(prefixes.back().right_multiply(letters[j]));
  }
  return ReducedExpression(
      std::make_shared<const Data>(Data{&sys, std::move(letters), std::move(prefixes)}));
}

// ---------------------------------------------------------------------------
// Free functions

int length_of(const Element& x) { return x.length(); }

std::vector<Gen> descent_set(const Element& x, Side side) {
  std::vector<Gen> out;
  if (x.is_identity()) return out;
  const Element& target = x;
  std::optional<Element> inv;
  if (side == Side::left) inv = x.inverse();
  const Element& e = inv ? *inv : target;
  for (Gen i = 1; i <= x.system().rank(); ++i) {
    if (e.has_right_descent(i)) out.push_back(i);
  }
  return out;
}

Word canonical_letters(const Element& x) {
  Word out;
  out.reserve(static_cast<std::size_t>(x.length()));
  Element cur = x;
  const int n = x.system().rank();
  while (!cur.is_identity()) {
    Gen s = 1;
    while (s <= n && !cur.has_right_descent(s)) ++s;
    if (s > n) throw IntegrityError("non-identity element without right descents");
    out.push_back(s);
    cur = cur.right_multiply(s);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

ReducedExpression canonical_word(const Element& x) {
  return ReducedExpression::from_word(x.system(), canonical_letters(x));
}

bool bruhat_leq(const Element& x, const Element& w) {
  if (&x.system() != &w.system()) throw InputError("elements belong to different systems");
  Element a = x;
  Element b = w;
  const int n = w.system().rank();
  while (true) {
    if (a.length() > b.length()) return false;
    if (a.is_identity()) return true;
    if (a.length() == b.length()) return a == b;
    Gen s = 1;
    while (s <= n && !b.has_right_descent(s)) ++s;
    if (a.has_right_descent(s)) a = a.right_multiply(s);
    b = b.right_multiply(s);
  }
}

namespace {

// Single-letter deletions of the canonical word of w that drop the length by
// exactly one, keyed by canonical word.
std::map<Word, Element, ShortLex> coatoms_by_word(const Element& w, const Word& letters) {
  std::map<Word, Element, ShortLex> out;
  const std::size_t l = letters.size();
  std::vector<Element> prefix;
  prefix.reserve(l + 1);
  prefix.push_back(w.system().identity());
  for (Gen g : letters) prefix.push_back(prefix.back().right_multiply(g));
  for (std::size_t k = 0; k < l; ++k) {
    Element z = prefix[k];
    for (std::size_t m = k + 1; m < l; ++m) z = z.right_multiply(letters[m]);
    if (z.length() + 1 != static_cast<int>(l)) continue;
    Word key = canonical_letters(z);
    out.try_emplace(std::move(key), std::move(z));
  }
  return out;
}

}  // namespace

std::vector<Element> coatoms(const Element& w) {
  std::vector<Element> out;
  if (w.is_identity()) return out;
  for (auto& [word, z] : coatoms_by_word(w, canonical_letters(w))) out.push_back(z);
  return out;
}

// ---------------------------------------------------------------------------
// HasseInterval

HasseInterval::HasseInterval(std::vector<Element> elements, std::vector<Word> words,
                             std::vector<CoverEdge> edges)
    : elements_(std::move(elements)), words_(std::move(words)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
}

std::optional<std::size_t> HasseInterval::index_of(const Word& canonical) const {
  auto it = index_.find(canonical);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> HasseInterval::index_of(const Element& x) const {
  if (&x.system() != &top().system()) return std::nullopt;
  if (x.length() < bottom().length() || x.length() > top().length()) return std::nullopt;
  return index_of(canonical_letters(x));
}

bool HasseInterval::has_cover(std::size_t upper, std::size_t lower) const {
  return std::binary_search(edges_.begin(), edges_.end(), CoverEdge{upper, lower});
}

HasseInterval HasseInterval::restricted_above(const Element& y) const {
  auto start = index_of(y);
  if (!start) throw OrderingError("element is not in the interval");
  // Every z >= y in here is reached from y by a chain of covers.
  std::vector<std::vector<std::size_t>> up(size());
  for (const auto& e : edges_) up[e.lower].push_back(e.upper);
  std::vector<char> keep(size(), 0);
  std::vector<std::size_t> stack{*start};
  keep[*start] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : up[v]) {
      if (!keep[u]) {
        keep[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::vector<std::size_t> remap(size(), static_cast<std::size_t>(-1));
  std::vector<Element> elems;
  std::vector<Word> words;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = elems.size();
    elems.push_back(elements_[i]);
    words.push_back(words_[i]);
  }
  std::vector<CoverEdge> edges;
  for (const auto& e : edges_) {
    if (keep[e.upper] && keep[e.lower]) edges.push_back({remap[e.upper], remap[e.lower]});
  }
  return HasseInterval(std::move(elems), std::move(words), std::move(edges));
}

HasseInterval enumerate_interval(const Element& y, const Element& w) {
  if (&y.system() != &w.system()) throw InputError("elements belong to different systems");
  w.system().check_guard(w.length(), "interval enumeration");
  if (!bruhat_leq(y, w)) throw OrderingError("empty interval: y is not below w");

  constexpr std::size_t kRejected = static_cast<std::size_t>(-1);
  std::map<Word, std::size_t, ShortLex> seen;
  std::vector<Element> elems;
  std::vector<Word> words;
  std::vector<CoverEdge> edges;

  words.push_back(canonical_letters(w));
  elems.push_back(w);
  seen.emplace(words.back(), 0);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (elems[cur].length() == y.length()) continue;
    for (auto& [word, c] : coatoms_by_word(elems[cur], words[cur])) {
      auto it = seen.find(word);
      if (it != seen.end() && it->second == kRejected) continue;
      if (it == seen.end()) {
        if (!bruhat_leq(y, c)) {
          seen.emplace(word, kRejected);
          continue;
        }
        it = seen.emplace(word, elems.size()).first;
        elems.push_back(c);
        words.push_back(word);
        queue.push_back(it->second);
      }
      edges.push_back({cur, it->second});
    }
  }

  // Reindex in (length, canonical word) order; the map iterates in that order.
  std::vector<std::size_t> remap(elems.size());
  std::vector<Element> sorted_elems;
  std::vector<Word> sorted_words;
  sorted_elems.reserve(elems.size());
  for (const auto& [word, idx] : seen) {
    if (idx == kRejected) continue;
    remap[idx] = sorted_elems.size();
    sorted_elems.push_back(std::move(elems[idx]));
    sorted_words.push_back(word);
  }
  for (auto& e : edges) e = {remap[e.upper], remap[e.lower]};
  std::sort(edges.begin(), edges.end());
  return HasseInterval(std::move(sorted_elems), std::move(sorted_words), std::move(edges));
}

}  // namespace coxmask
