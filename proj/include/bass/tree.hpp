#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bass/word.hpp"

namespace bass {

inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;

/// Vertex class: cosets of A or B (amalgam) or of G (HNN).
enum class VertexType : std::uint8_t { A, B, G };

/// A vertex gX of the Bass-Serre tree, identified by the canonical
/// representative of its coset: the normal form of g with its maximal
/// suffix in X stripped.
struct TreeVertex {
  VertexType type;
  Word rep;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const {
    std::size_t h = v.rep.hash();
    hash_combine(h, static_cast<std::size_t>(v.type));
    return h;
  }
};

enum class Orientation : std::uint8_t { Forward, Backward };

/// An oriented edge: the coset gC (resp. gH) with Forward meaning the edge
/// from gA to gB (resp. from gG to g t G), Backward its reverse.
struct TreeEdge {
  Word rep;
  Orientation orientation;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

struct TreeEdgeHash {
  std::size_t operator()(const TreeEdge& e) const {
    std::size_t h = e.rep.hash();
    hash_combine(h, static_cast<std::size_t>(e.orientation));
    return h;
  }
};

namespace detail {

inline Side factor_of(VertexType t) { return t == VertexType::A ? Side::A : Side::B; }
inline VertexType vertex_of(Side s) { return s == Side::A ? VertexType::A : VertexType::B; }

}  // namespace detail

/// Canonical vertex g*X for a word g in normal form.
inline TreeVertex canonical_vertex(const Word& g, VertexType type) {
  const PresentationPtr& p = g.presentation();
  std::vector<Letter> letters = g.letters();
  if (p->is_hnn()) {
    if (type != VertexType::G) fail(ErrorCode::WrongPresentationKind, "HNN trees have G-type vertices only");
    if (!letters.empty() && letters.back().kind == Letter::Kind::Base) letters.pop_back();
    return {type, Word::trusted(p, std::move(letters))};
  }
  if (type == VertexType::G) fail(ErrorCode::WrongPresentationKind, "amalgam trees have A/B-type vertices");
  const Side own = detail::factor_of(type);
  if (!letters.empty()) {
    if (letters.back().side() == own) {
      letters.pop_back();
    } else {
      const Side s = letters.back().side();
      Element t = p->edge_subgroup(s).left_coset_rep(letters.back().value);
      if (p->factor(s)->is_identity(t))
        letters.pop_back();
      else
        letters.back().value = std::move(t);
    }
  }
  return {type, Word::trusted(p, std::move(letters))};
}

/// Canonical edge g*C (resp. g*H).
inline TreeEdge canonical_edge(const Word& g, Orientation orientation) {
  const PresentationPtr& p = g.presentation();
  std::vector<Letter> letters = g.letters();
  if (!letters.empty() && letters.back().kind != Letter::Kind::Stable) {
    const Letter& last = letters.back();
    const Subgroup& sub = p->is_hnn() ? p->associated() : p->edge_subgroup(last.side());
    Element t = sub.left_coset_rep(last.value);
    if (t == 0)
      letters.pop_back();
    else
      letters.back().value = std::move(t);
  }
  return {Word::trusted(p, std::move(letters)), orientation};
}

/// The vertex 1A (amalgam) or 1G (HNN).
inline TreeVertex base_vertex(const PresentationPtr& p) {
  return {p->is_amalgam() ? VertexType::A : VertexType::G, Word(p)};
}

inline TreeEdge reverse(const TreeEdge& e) {
  return {e.rep, e.orientation == Orientation::Forward ? Orientation::Backward : Orientation::Forward};
}

inline TreeVertex source(const TreeEdge& e) {
  const PresentationPtr& p = e.rep.presentation();
  const bool fwd = e.orientation == Orientation::Forward;
  if (p->is_amalgam()) return canonical_vertex(e.rep, fwd ? VertexType::A : VertexType::B);
  if (fwd) return canonical_vertex(e.rep, VertexType::G);
  return canonical_vertex(multiply(e.rep, Word::generator(p, Letter::t(1))), VertexType::G);
}

inline TreeVertex terminus(const TreeEdge& e) { return source(reverse(e)); }

inline TreeVertex act(const Word& gamma, const TreeVertex& v) {
  gamma.check_same(v.rep);
  return canonical_vertex(multiply(gamma, v.rep), v.type);
}

inline TreeEdge act_edge(const Word& gamma, const TreeEdge& e) {
  gamma.check_same(e.rep);
  return canonical_edge(multiply(gamma, e.rep), e.orientation);
}

namespace detail {

inline std::vector<Element> transversal_or_throw(const Subgroup& s) {
  try {
    return coset_transversal(s);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::InfiniteIndex) fail(ErrorCode::InfiniteDegree, "tree has infinite degree");
    throw;
  }
}

}  // namespace detail

struct Neighbor {
  TreeEdge edge;  // source(edge) is the queried vertex
  TreeVertex vertex;
};

/// All edges leaving v with their far endpoints, enumerated through coset
/// transversals of the incident edge groups.
inline std::vector<Neighbor> neighbors(const TreeVertex& v) {
  const PresentationPtr& p = v.rep.presentation();
  std::vector<Neighbor> out;
  if (p->is_amalgam()) {
    const Side own = detail::factor_of(v.type);
    const VertexType far = detail::vertex_of(other(own));
    const auto orient = own == Side::A ? Orientation::Forward : Orientation::Backward;
    for (const auto& x : detail::transversal_or_throw(p->edge_subgroup(own))) {
      Word g = multiply(v.rep, Word::generator(p, Letter::factor(own, x)));
      out.push_back({canonical_edge(g, orient), canonical_vertex(g, far)});
    }
    return out;
  }
  const Word t = Word::generator(p, Letter::t(1));
  const Word t_inv = Word::generator(p, Letter::t(-1));
  for (const auto& x : detail::transversal_or_throw(p->associated())) {
    Word g = multiply(v.rep, Word::generator(p, Letter::g(x)));
    out.push_back({canonical_edge(g, Orientation::Forward), canonical_vertex(multiply(g, t), VertexType::G)});
  }
  for (const auto& x : detail::transversal_or_throw(p->associated_image())) {
    Word g = multiply(v.rep, Word::generator(p, Letter::g(x)), t_inv);
    out.push_back({canonical_edge(g, Orientation::Backward), canonical_vertex(g, VertexType::G)});
  }
  return out;
}

inline std::size_t degree(const TreeVertex& v) {
  const PresentationPtr& p = v.rep.presentation();
  auto idx = [](const Subgroup& s) {
    auto i = index(s);
    if (!i) fail(ErrorCode::InfiniteDegree, "tree has infinite degree");
    return i->convert_to<std::size_t>();
  };
  if (p->is_amalgam()) return idx(p->edge_subgroup(detail::factor_of(v.type)));
  return idx(p->associated()) + idx(p->associated_image());
}

namespace detail {

/// Geodesic from the vertex 1*X (X the class of `from`) to the canonical
/// vertex `to`, read off the normal form of its representative.
inline std::vector<TreeVertex> geodesic_from_origin(VertexType from, const TreeVertex& to) {
  const PresentationPtr& p = to.rep.presentation();
  std::vector<TreeVertex> path{{from, Word(p)}};
  const auto& letters = to.rep.letters();
  if (p->is_hnn()) {
    std::vector<Letter> prefix;
    for (const auto& l : letters) {
      prefix.push_back(l);
      if (l.kind == Letter::Kind::Stable) path.push_back({VertexType::G, Word::trusted(p, prefix)});
    }
    return path;
  }
  if (letters.empty()) {
    if (from != to.type) path.push_back(to);
    return path;
  }
  if (letters.front().side() != factor_of(from)) path.push_back({vertex_of(letters.front().side()), Word(p)});
  std::vector<Letter> prefix;
  for (const auto& l : letters) {
    prefix.push_back(l);
    path.push_back({vertex_of(other(l.side())), Word::trusted(p, prefix)});
  }
  return path;
}

inline std::size_t distance_from_origin(VertexType from, const TreeVertex& to) {
  const auto& letters = to.rep.letters();
  if (to.rep.presentation()->is_hnn()) return to.rep.tau_count();
  if (letters.empty()) return from == to.type ? 0 : 1;
  return letters.size() + (letters.front().side() != factor_of(from) ? 1 : 0);
}

/// Geodesics from the base vertex, in the encoding of geodesic_from_origin:
/// step i is (vertex type, length of the rep prefix). Two canonical vertices'
/// geodesics agree exactly on their common prefix, so d(u, v) needs no
/// multiplication.
inline std::size_t distance_by_prefix(const TreeVertex& u, const TreeVertex& v) {
  const auto& lu = u.rep.letters();
  const auto& lv = v.rep.letters();
  std::size_t common = 0;
  while (common < lu.size() && common < lv.size() && lu[common] == lv[common]) ++common;
  if (u.rep.presentation()->is_hnn()) {
    std::size_t shared = 0;
    for (std::size_t i = 0; i < common; ++i) shared += lu[i].kind == Letter::Kind::Stable;
    return u.rep.tau_count() + v.rep.tau_count() - 2 * shared;
  }
  using Step = std::pair<VertexType, std::size_t>;
  auto steps = [](const TreeVertex& x) {
    const auto& l = x.rep.letters();
    std::vector<Step> out{{VertexType::A, 0}};
    if (l.empty()) {
      if (x.type != VertexType::A) out.emplace_back(x.type, 0);
      return out;
    }
    if (l.front().side() != Side::A) out.emplace_back(VertexType::B, 0);
    for (std::size_t i = 0; i < l.size(); ++i) out.emplace_back(vertex_of(other(l[i].side())), i + 1);
    return out;
  };
  const auto su = steps(u), sv = steps(v);
  std::size_t shared = 0;
  while (shared < su.size() && shared < sv.size() && su[shared] == sv[shared] && su[shared].second <= common)
    ++shared;
  return su.size() + sv.size() - 2 * shared;
}

}  // namespace detail

inline std::size_t distance(const TreeVertex& u, const TreeVertex& v) {
  u.rep.check_same(v.rep);
  return detail::distance_by_prefix(u, v);
}

/// The unique vertex path from u to v.
inline std::vector<TreeVertex> geodesic(const TreeVertex& u, const TreeVertex& v) {
  u.rep.check_same(v.rep);
  auto path = detail::geodesic_from_origin(u.type, act(invert(u.rep), v));
  for (auto& x : path) x = act(u.rep, x);
  return path;
}

enum class HalfSpace { SourceSide, TerminusSide };

/// TerminusSide iff v is strictly closer to t(e) than to s(e).
inline HalfSpace halfspace_side(const TreeEdge& e, const TreeVertex& v) {
  return distance(v, terminus(e)) < distance(v, source(e)) ? HalfSpace::TerminusSide : HalfSpace::SourceSide;
}

/// The four endpoint distances deciding whether T_e1 and T_e2 (the
/// terminus-side half-trees) are disjoint: they are iff t(e2) lies on the
/// source side of e1 and t(e1) lies on the source side of e2.
struct DisjointnessCheck {
  std::size_t t2_to_t1, t2_to_s1, t1_to_t2, t1_to_s2;
  bool disjoint() const { return t2_to_s1 < t2_to_t1 && t1_to_s2 < t1_to_t2; }
};

inline DisjointnessCheck halfspace_check(const TreeEdge& e1, const TreeEdge& e2) {
  e1.rep.check_same(e2.rep);
  const TreeVertex s1 = source(e1), t1 = terminus(e1), s2 = source(e2), t2 = terminus(e2);
  const std::size_t d_t1_t2 = distance(t1, t2);
  return {d_t1_t2, distance(t2, s1), d_t1_t2, distance(t1, s2)};
}

inline bool halfspaces_disjoint(const TreeEdge& e1, const TreeEdge& e2) { return halfspace_check(e1, e2).disjoint(); }

/// A breadth-first ball. `parent[i]` is the index of the parent of vertex i
/// (npos for the center) and `edges[i - 1]` the edge from parent to vertex i.
struct Ball {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  TreeVertex center;
  std::size_t radius = 0;
  std::vector<TreeVertex> vertices;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> depth;
  std::vector<TreeEdge> edges;
  std::unordered_map<TreeVertex, std::size_t, TreeVertexHash> index_of;

  bool contains(const TreeVertex& v) const { return index_of.count(v) > 0; }

  std::vector<std::size_t> sphere_sizes() const {
    std::vector<std::size_t> sizes(radius + 1, 0);
    for (auto d : depth) ++sizes[d];
    return sizes;
  }
};

/// Exact BFS enumeration of all vertices within `radius` of `center`.
inline Ball ball(const TreeVertex& center, std::size_t radius, std::size_t budget = kDefaultVertexBudget) {
  Ball b{center, radius, {}, {}, {}, {}, {}};
  b.vertices.push_back(center);
  b.parent.push_back(Ball::npos);
  b.depth.push_back(0);
  b.index_of.emplace(center, 0);
  for (std::size_t head = 0; head < b.vertices.size(); ++head) {
    if (b.depth[head] == radius) continue;
    const TreeVertex here = b.vertices[head];
    const std::size_t d = b.depth[head];
    for (auto& nb : neighbors(here)) {
      if (b.index_of.count(nb.vertex)) continue;
      if (b.vertices.size() >= budget)
        fail(ErrorCode::SizeBudgetExceeded, "ball exceeds the vertex budget of " + std::to_string(budget));
      b.index_of.emplace(nb.vertex, b.vertices.size());
      b.vertices.push_back(std::move(nb.vertex));
      b.parent.push_back(head);
      b.depth.push_back(d + 1);
      b.edges.push_back(std::move(nb.edge));
    }
  }
  return b;
}

inline Ball ball(const PresentationPtr& p, const TreeVertex& center, std::size_t radius,
                 std::size_t budget = kDefaultVertexBudget) {
  if (center.rep.presentation() != p) fail(ErrorCode::PresentationMismatch, "center over another presentation");
  return ball(center, radius, budget);
}

/// V_k(e): vertices within distance k of s(e) or t(e).
inline std::vector<TreeVertex> edge_neighbourhood(const TreeEdge& e, std::size_t k,
                                                  std::size_t budget = kDefaultVertexBudget) {
  Ball from_source = ball(source(e), k, budget);
  Ball from_terminus = ball(terminus(e), k, budget);
  std::vector<TreeVertex> out = from_source.vertices;
  for (const auto& v : from_terminus.vertices)
    if (!from_source.contains(v)) out.push_back(v);
  return out;
}

}  // namespace bass
