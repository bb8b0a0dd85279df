#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bass/error.hpp"
#include "bass/integer.hpp"

namespace bass {

inline constexpr std::size_t kDefaultMaxOrder = 64;

/// A concrete computable group: a finite group given by its multiplication
/// table (identity at index 0), or the integers under addition.
class Group {
 public:
  enum class Kind { FiniteTable, Integers };
  using Table = std::vector<std::vector<std::uint32_t>>;

  static std::shared_ptr<const Group> integers() {
    static const auto z = std::shared_ptr<const Group>(new Group());
    return z;
  }

  /// Validates the group axioms by full enumeration.
  static std::shared_ptr<const Group> finite(Table table,
                                             std::size_t max_order = kDefaultMaxOrder) {
    return std::shared_ptr<const Group>(new Group(std::move(table), max_order));
  }

  static std::shared_ptr<const Group> cyclic(std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidGroup, "cyclic group of order 0");
    Table t(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<std::uint32_t>((i + j) % n);
    return finite(std::move(t), std::max(n, kDefaultMaxOrder));
  }

  /// Symmetric group on {0..n-1}; permutations listed lexicographically (so
  /// the identity is index 0) and multiplied left to right: (x*y)(i) = y(x(i)).
  static std::shared_ptr<const Group> symmetric(std::size_t n) {
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t order = perms.size();
    Table t(order, std::vector<std::uint32_t>(order));
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        std::vector<std::uint32_t> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = perms[b][perms[a][i]];
        auto it = std::lower_bound(perms.begin(), perms.end(), c);
        t[a][b] = static_cast<std::uint32_t>(it - perms.begin());
      }
    }
    return finite(std::move(t), std::max(order, kDefaultMaxOrder));
  }

  /// Pairs (g, h) are encoded as g * |H| + h.
  static std::shared_ptr<const Group> direct_product(const Group& g, const Group& h) {
    if (!g.is_finite() || !h.is_finite())
      fail(ErrorCode::InvalidGroup, "direct product needs finite factors");
    const std::size_t m = g.order(), n = h.order();
    Table t(m * n, std::vector<std::uint32_t>(m * n));
    for (std::size_t a = 0; a < m * n; ++a)
      for (std::size_t b = 0; b < m * n; ++b)
        t[a][b] = static_cast<std::uint32_t>(g.table_[a / n][b / n] * n + h.table_[a % n][b % n]);
    return finite(std::move(t), std::max(m * n, kDefaultMaxOrder));
  }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::FiniteTable; }
  bool is_integers() const noexcept { return kind_ == Kind::Integers; }

  std::size_t order() const {
    if (!is_finite()) fail(ErrorCode::InvalidArgument, "the integers have infinite order");
    return table_.size();
  }

  const Table& table() const noexcept { return table_; }

  Element identity() const { return 0; }

  bool contains(const Element& x) const {
    if (!is_finite()) return true;
    return x >= 0 && x < static_cast<long long>(table_.size());
  }

  void check(const Element& x) const {
    if (!contains(x))
      fail(ErrorCode::IndexOutOfRange,
           "element " + x.str() + " outside group of order " + std::to_string(table_.size()));
  }

  Element multiply(const Element& x, const Element& y) const {
    if (!is_finite()) return x + y;
    check(x);
    check(y);
    return table_[to_index(x)][to_index(y)];
  }

  Element inverse(const Element& x) const {
    if (!is_finite()) return -x;
    check(x);
    return inverse_[to_index(x)];
  }

  Element power(const Element& x, long long k) const {
    if (!is_finite()) return x * k;
    Element base = k < 0 ? inverse(x) : x;
    Element result = identity();
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) result = multiply(result, base);
    return result;
  }

  bool is_identity(const Element& x) const { return x == 0; }

  /// Finite groups only.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(order());
    for (std::size_t i = 0; i < table_.size(); ++i) out.emplace_back(i);
    return out;
  }

  friend bool operator==(const Group& a, const Group& b) {
    return a.kind_ == b.kind_ && a.table_ == b.table_;
  }

 private:
  Group() : kind_(Kind::Integers) {}

  Group(Table table, std::size_t max_order) : kind_(Kind::FiniteTable), table_(std::move(table)) {
    const std::size_t n = table_.size();
    if (n == 0) fail(ErrorCode::InvalidGroup, "empty multiplication table");
    if (n > max_order)
      fail(ErrorCode::InvalidGroup, "group order " + std::to_string(n) + " exceeds cap " +
                                        std::to_string(max_order));
    for (const auto& row : table_) {
      if (row.size() != n) fail(ErrorCode::InvalidGroup, "multiplication table is not square");
      for (auto v : row)
        if (v >= n) fail(ErrorCode::InvalidGroup, "table entry out of range");
    }
    for (std::size_t x = 0; x < n; ++x)
      if (table_[0][x] != x || table_[x][0] != x)
        fail(ErrorCode::InvalidGroup, "index 0 is not a two-sided identity");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
            fail(ErrorCode::InvalidGroup, "multiplication is not associative");
    inverse_.assign(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y)
        if (table_[x][y] == 0 && table_[y][x] == 0) inverse_[x] = static_cast<std::uint32_t>(y);
      if (inverse_[x] == n) fail(ErrorCode::InvalidGroup, "element without inverse");
    }
  }

  Kind kind_;
  Table table_;
  std::vector<std::uint32_t> inverse_;
};

using GroupPtr = std::shared_ptr<const Group>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A subgroup of a concrete group: an explicit element set for finite
/// parents, a stride d (denoting dZ, d >= 0) for the integers.
class Subgroup {
 public:
  static Subgroup whole(GroupPtr parent) {
    if (parent->is_integers()) return stride(std::move(parent), 1);
    std::vector<std::uint32_t> all(parent->order());
    std::iota(all.begin(), all.end(), 0u);
    return Subgroup(std::move(parent), std::move(all));
  }

  static Subgroup trivial(GroupPtr parent) {
    if (parent->is_integers()) return stride(std::move(parent), 0);
    return Subgroup(std::move(parent), std::vector<std::uint32_t>{0});
  }

  /// dZ; negative strides are normalized to |d|.
  static Subgroup stride(GroupPtr parent, const Integer& d) {
    if (!parent->is_integers())
      fail(ErrorCode::InvalidArgument, "stride subgroups live in the integers");
    Subgroup s;
    s.parent_ = std::move(parent);
    s.stride_ = abs(d);
    return s;
  }

  /// The element set must already be a subgroup (closure is validated).
  static Subgroup from_elements(GroupPtr parent, const std::vector<Element>& elts) {
    if (parent->is_integers()) {
      Integer d = 0;
      for (const auto& e : elts) d = gcd(d, e);
      Subgroup s = stride(parent, d);
      for (const auto& e : elts)
        if (!s.contains(e)) fail(ErrorCode::InvalidArgument, "element set is not a subgroup");
      return s;
    }
    std::vector<std::uint32_t> idx;
    for (const auto& e : elts) {
      parent->check(e);
      idx.push_back(static_cast<std::uint32_t>(to_index(e)));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const auto& t = parent->table();
    std::vector<char> member(parent->order(), 0);
    for (auto i : idx) member[i] = 1;
    if (idx.empty() || !member[0]) fail(ErrorCode::InvalidArgument, "subgroup must contain the identity");
    for (auto a : idx)
      for (auto b : idx)
        if (!member[t[a][b]]) fail(ErrorCode::InvalidArgument, "element set is not closed");
    return Subgroup(std::move(parent), std::move(idx));
  }

  /// Subgroup generated by the given elements (closure under products).
  static Subgroup generated(GroupPtr parent, const std::vector<Element>& gens) {
    if (parent->is_integers()) {
      Integer d = 0;
      for (const auto& g : gens) d = gcd(d, g);
      return stride(std::move(parent), d);
    }
    const auto& t = parent->table();
    std::vector<char> member(parent->order(), 0);
    std::vector<std::uint32_t> queue{0};
    member[0] = 1;
    std::vector<std::uint32_t> gen_idx;
    for (const auto& g : gens) {
      parent->check(g);
      gen_idx.push_back(static_cast<std::uint32_t>(to_index(g)));
    }
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto g : gen_idx) {
        auto next = t[queue[head]][g];
        if (!member[next]) {
          member[next] = 1;
          queue.push_back(next);
        }
      }
    std::sort(queue.begin(), queue.end());
    return Subgroup(std::move(parent), std::move(queue));
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  bool is_finite() const { return parent_->is_finite(); }

  /// Finite parents only: sorted element indices.
  const std::vector<std::uint32_t>& indices() const { return elements_; }

  std::vector<Element> elements() const {
    if (!is_finite()) fail(ErrorCode::InvalidArgument, "infinite subgroup has no element list");
    return {elements_.begin(), elements_.end()};
  }

  /// Integer parents only.
  const Integer& stride() const { return stride_; }

  std::optional<std::size_t> order() const {
    if (is_finite()) return elements_.size();
    if (stride_ == 0) return 1;
    return std::nullopt;
  }

  bool contains(const Element& x) const {
    if (!is_finite()) return stride_ == 0 ? x == 0 : floor_mod(x, stride_) == 0;
    if (!parent_->contains(x)) return false;
    return std::binary_search(elements_.begin(), elements_.end(),
                              static_cast<std::uint32_t>(to_index(x)));
  }

  bool is_trivial() const { return is_finite() ? elements_.size() == 1 : stride_ == 0; }
  bool is_whole() const { return is_finite() ? elements_.size() == parent_->order() : stride_ == 1; }

  bool is_subset_of(const Subgroup& other) const {
    check_same_parent(other);
    if (!is_finite()) {
      if (stride_ == 0) return true;
      if (other.stride_ == 0) return false;
      return stride_ % other.stride_ == 0;
    }
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
  }

  /// Canonical representative of the left coset g*S: the minimal element
  /// index in the coset (finite), or g mod d in [0, d) (integers).
  Element left_coset_rep(const Element& g) const {
    parent_->check(g);
    if (!is_finite()) return stride_ == 0 ? g : floor_mod(g, stride_);
    return coset_rep_[to_index(g)];
  }

  void check_same_parent(const Subgroup& other) const {
    if (!same_group(parent_, other.parent_))
      fail(ErrorCode::MismatchedParents, "subgroups of different groups");
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return same_group(a.parent_, b.parent_) && a.elements_ == b.elements_ && a.stride_ == b.stride_;
  }

 private:
  Subgroup() = default;

  Subgroup(GroupPtr parent, std::vector<std::uint32_t> elts)
      : parent_(std::move(parent)), elements_(std::move(elts)) {
    const auto& t = parent_->table();
    coset_rep_.resize(parent_->order());
    for (std::size_t g = 0; g < coset_rep_.size(); ++g) {
      std::uint32_t best = static_cast<std::uint32_t>(coset_rep_.size());
      for (auto s : elements_) best = std::min(best, t[g][s]);
      coset_rep_[g] = best;
    }
  }

  GroupPtr parent_;
  std::vector<std::uint32_t> elements_;
  std::vector<std::uint32_t> coset_rep_;
  Integer stride_ = 0;
};

/// S ∩ U; for the integers the stride is lcm(d_S, d_U) with lcm(d, 0) = 0.
inline Subgroup subgroup_intersect(const Subgroup& s, const Subgroup& u) {
  s.check_same_parent(u);
  if (!s.is_finite()) return Subgroup::stride(s.parent(), lcm(s.stride(), u.stride()));
  std::vector<std::uint32_t> out;
  std::set_intersection(s.indices().begin(), s.indices().end(), u.indices().begin(),
                        u.indices().end(), std::back_inserter(out));
  return Subgroup::from_elements(s.parent(), {out.begin(), out.end()});
}

/// {g^-1 s g : s in S}.
inline Subgroup conjugate_subgroup(const Subgroup& s, const Element& g) {
  const auto& G = *s.parent();
  G.check(g);
  if (!s.is_finite()) return s;
  const Element ginv = G.inverse(g);
  std::vector<Element> out;
  for (auto x : s.indices()) out.push_back(G.multiply(G.multiply(ginv, x), g));
  return Subgroup::from_elements(s.parent(), out);
}

/// The largest subgroup of S normal in the parent: the intersection of all
/// conjugates of S.
inline Subgroup normal_core(const Subgroup& s) {
  if (!s.is_finite()) return s;
  Subgroup core = s;
  for (std::size_t g = 0; g < s.parent()->order() && !core.is_trivial(); ++g)
    core = subgroup_intersect(core, conjugate_subgroup(s, g));
  return core;
}

inline bool is_normal(const Subgroup& s) { return normal_core(s) == s; }

/// [G : S], or nullopt when the index is infinite (the trivial subgroup of Z).
inline std::optional<Integer> index(const Subgroup& s) {
  if (!s.is_finite()) {
    if (s.stride() == 0) return std::nullopt;
    return s.stride();
  }
  return Integer(s.parent()->order() / s.indices().size());
}

/// Canonical left-coset representatives, identity first, in increasing order.
inline std::vector<Element> coset_transversal(const Subgroup& s) {
  if (!s.is_finite()) {
    if (s.stride() == 0) fail(ErrorCode::InfiniteIndex, "the trivial subgroup of Z has infinite index");
    std::vector<Element> out;
    for (Integer r = 0; r < s.stride(); ++r) out.push_back(r);
    return out;
  }
  std::vector<Element> out;
  for (std::size_t g = 0; g < s.parent()->order(); ++g)
    if (s.left_coset_rep(g) == g) out.emplace_back(g);
  return out;
}

/// An injective homomorphism defined on a subgroup `domain` of `source` with
/// values in `target`. Amalgam embeddings have the whole edge group as
/// domain; the HNN map theta is defined on H only.
///
/// Finite sources store the image of each domain element. Integer sources
/// store the image of the domain generator d: x = k*d maps to k*image(d).
class Embedding {
 public:
  /// `images[i]` is the image of the i-th smallest element of `domain`.
  static Embedding from_images(GroupPtr target, Subgroup domain, std::vector<Element> images) {
    if (!domain.is_finite()) fail(ErrorCode::InvalidEmbedding, "image lists need a finite source");
    if (images.size() != domain.indices().size())
      fail(ErrorCode::InvalidEmbedding, "expected " + std::to_string(domain.indices().size()) +
                                            " images, got " + std::to_string(images.size()));
    Embedding e;
    e.target_ = std::move(target);
    e.domain_ = std::move(domain);
    e.images_.assign(e.domain_.parent()->order(), Element(-1));
    for (std::size_t i = 0; i < images.size(); ++i) {
      e.target_->check(images[i]);
      e.images_[e.domain_.indices()[i]] = images[i];
    }
    e.validate();
    return e;
  }

  static Embedding from_multiplier(GroupPtr target, Subgroup domain, Integer generator_image) {
    if (domain.is_finite()) fail(ErrorCode::InvalidEmbedding, "multipliers need an integer source");
    Embedding e;
    e.target_ = std::move(target);
    e.domain_ = std::move(domain);
    e.generator_image_ = std::move(generator_image);
    if (e.domain_.stride() == 0) {
      e.generator_image_ = 0;
    } else if (!e.target_->is_integers()) {
      fail(ErrorCode::InvalidEmbedding, "no injective map from an infinite cyclic group to a finite one");
    } else if (e.generator_image_ == 0) {
      fail(ErrorCode::InvalidEmbedding, "multiplier 0 is not injective");
    }
    return e;
  }

  /// Identity map of S into its parent.
  static Embedding inclusion(const Subgroup& s) {
    if (!s.is_finite()) return from_multiplier(s.parent(), s, s.stride());
    return from_images(s.parent(), s, s.elements());
  }

  const GroupPtr& source() const noexcept { return domain_.parent(); }
  const GroupPtr& target() const noexcept { return target_; }
  const Subgroup& domain() const noexcept { return domain_; }
  const Integer& generator_image() const noexcept { return generator_image_; }

  Element apply(const Element& x) const {
    if (!domain_.contains(x))
      fail(ErrorCode::IndexOutOfRange, "element " + x.str() + " outside the embedding's domain");
    if (domain_.is_finite()) return images_[to_index(x)];
    if (domain_.stride() == 0) return target_->identity();
    return x / domain_.stride() * generator_image_;
  }

  Subgroup image() const { return image(domain_); }

  /// apply(S) for S contained in the domain.
  Subgroup image(const Subgroup& s) const {
    if (!s.is_subset_of(domain_)) fail(ErrorCode::InvalidArgument, "subgroup outside the domain");
    if (s.is_finite()) {
      std::vector<Element> out;
      for (auto x : s.indices()) out.push_back(apply(x));
      return Subgroup::from_elements(target_, out);
    }
    if (s.stride() == 0) return Subgroup::trivial(target_);
    return Subgroup::stride(target_, apply(s.stride()));
  }

  /// {x in domain : apply(x) in U}.
  Subgroup preimage(const Subgroup& u) const {
    if (!same_group(u.parent(), target_)) fail(ErrorCode::MismatchedParents, "preimage of foreign subgroup");
    if (domain_.is_finite()) {
      std::vector<Element> out;
      for (auto x : domain_.indices())
        if (u.contains(apply(x))) out.emplace_back(x);
      return Subgroup::from_elements(source(), out);
    }
    const Integer& d = domain_.stride();
    if (d == 0) return domain_;
    // k*d maps to k*c; k*c in uZ iff k in (u / gcd(u, c))Z.
    if (u.stride() == 0) return Subgroup::trivial(source());
    return Subgroup::stride(source(), d * (u.stride() / gcd(u.stride(), generator_image_)));
  }

  bool in_image(const Element& y) const {
    if (domain_.is_finite()) {
      for (auto x : domain_.indices())
        if (images_[x] == y) return true;
      return false;
    }
    if (domain_.stride() == 0) return y == target_->identity();
    return y % generator_image_ == 0;
  }

  /// The unique x with apply(x) = y.
  Element inverse_apply(const Element& y) const {
    if (domain_.is_finite()) {
      for (auto x : domain_.indices())
        if (images_[x] == y) return x;
    } else if (domain_.stride() == 0) {
      if (y == target_->identity()) return 0;
    } else if (y % generator_image_ == 0) {
      return y / generator_image_ * domain_.stride();
    }
    fail(ErrorCode::IndexOutOfRange, "element " + y.str() + " is not in the image");
  }

  /// The inverse isomorphism, defined on image() and valued in source().
  Embedding inverse() const {
    Subgroup img = image();
    if (img.is_finite()) {
      std::vector<Element> back;
      for (auto y : img.indices()) back.push_back(inverse_apply(y));
      return from_images(source(), img, back);
    }
    if (img.stride() == 0) return from_multiplier(source(), img, 0);
    return from_multiplier(source(), img, inverse_apply(img.stride()));
  }

  friend bool operator==(const Embedding& a, const Embedding& b) {
    return a.domain_ == b.domain_ && same_group(a.target_, b.target_) && a.images_ == b.images_ &&
           a.generator_image_ == b.generator_image_;
  }

 private:
  Embedding() = default;

  void validate() const {
    const auto& src = *source();
    const auto& dom = domain_.indices();
    for (auto x : dom)
      for (auto y : dom) {
        Element lhs = images_[src.table()[x][y]];
        Element rhs = target_->multiply(images_[x], images_[y]);
        if (lhs != rhs) fail(ErrorCode::InvalidEmbedding, "map is not a homomorphism");
      }
    for (auto x : dom)
      if (x != 0 && target_->is_identity(images_[x]))
        fail(ErrorCode::InvalidEmbedding, "map is not injective");
  }

  Subgroup domain_ = Subgroup::trivial(Group::integers());
  GroupPtr target_;
  std::vector<Element> images_;
  Integer generator_image_ = 0;
};

}  // namespace bass
