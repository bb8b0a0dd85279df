#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "bass/tree.hpp"

namespace bass {

/// gamma fixes a vertex.
struct Elliptic {
  TreeVertex fixed_vertex;
};

/// gamma translates a line (its axis) by `translation_length`;
/// `axis_vertex` lies on the axis and equals conjugator * (origin vertex).
struct Hyperbolic {
  std::size_t translation_length;
  TreeVertex axis_vertex;
  Word conjugator;
};

/// Actions on Bass-Serre trees are without inversions, so there is no third
/// alternative.
using Classification = std::variant<Elliptic, Hyperbolic>;

inline bool is_hyperbolic(const Classification& c) { return std::holds_alternative<Hyperbolic>(c); }

/// Elliptic iff the cyclically reduced core has at most one syllable
/// (amalgam) or no stable letter (HNN); otherwise the translation length is
/// the syllable length or the stable-letter count of the core.
inline Classification classify(const Word& gamma) {
  const PresentationPtr& p = gamma.presentation();
  auto [core, conj] = cyclically_reduce(gamma);
  if (p->is_amalgam()) {
    const auto& letters = core.letters();
    if (letters.size() <= 1) {
      TreeVertex home = base_vertex(p);
      if (letters.size() == 1) home = {detail::vertex_of(letters.front().side()), Word(p)};
      return Elliptic{act(conj, home)};
    }
    return Hyperbolic{letters.size(), act(conj, base_vertex(p)), conj};
  }
  const std::size_t k = core.tau_count();
  if (k == 0) return Elliptic{act(conj, base_vertex(p))};
  return Hyperbolic{k, act(conj, base_vertex(p)), conj};
}

inline const Hyperbolic& require_hyperbolic(const Classification& c) {
  if (!is_hyperbolic(c)) fail(ErrorCode::NotHyperbolic, "element is elliptic");
  return std::get<Hyperbolic>(c);
}

inline std::size_t displacement(const Word& gamma, const TreeVertex& v) { return distance(v, act(gamma, v)); }

/// {v in ball : gamma v = v}.
inline std::vector<TreeVertex> fixed_vertices(const Word& gamma, const Ball& b) {
  std::vector<TreeVertex> out;
  for (const auto& v : b.vertices)
    if (act(gamma, v) == v) out.push_back(v);
  return out;
}

/// Axis vertices within `radius` of the axis vertex, ordered in the
/// direction of translation.
inline std::vector<TreeVertex> axis_segment(const Word& gamma, std::size_t radius,
                                            std::size_t budget = kDefaultVertexBudget) {
  const Hyperbolic h = require_hyperbolic(classify(gamma));
  const TreeVertex& a = h.axis_vertex;
  const Ball b = ball(a, radius, budget);
  const auto toward_image = geodesic(a, act(gamma, a));
  std::vector<std::pair<long long, TreeVertex>> found;
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    const TreeVertex& v = b.vertices[i];
    if (displacement(gamma, v) != h.translation_length) continue;
    long long pos = static_cast<long long>(b.depth[i]);
    if (pos > 0) {
      std::size_t j = i;
      while (b.parent[j] != 0) j = b.parent[j];
      if (!(b.vertices[j] == toward_image[1])) pos = -pos;
    }
    found.emplace_back(pos, v);
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<TreeVertex> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

enum class End : int { Repelling = -1, Attracting = 1 };

namespace detail {

/// The first `length` + 1 vertices of the ray from `from` to the attracting
/// (or repelling) end of a hyperbolic gamma. Exact: the ray is the geodesic
/// to a far enough axis translate.
inline std::vector<TreeVertex> end_ray(const Word& gamma, const Hyperbolic& h, End end, const TreeVertex& from,
                                       std::size_t length) {
  const Word g = end == End::Attracting ? gamma : invert(gamma);
  const std::size_t offset = distance(from, h.axis_vertex);
  const std::size_t steps = (length + offset) / h.translation_length + 2;
  const TreeVertex far = act(power(g, static_cast<long long>(steps)), h.axis_vertex);
  auto path = geodesic(from, far);
  if (path.size() > length + 1) path.erase(path.begin() + length + 1, path.end());
  return path;
}

}  // namespace detail

/// Rays from a common base vertex toward one end of each element; in a tree
/// two such rays that split at some index never rejoin.
struct EndPairCertificate {
  End end1;
  End end2;
  bool diverged = false;
  std::size_t split_index = 0;  // first index where the rays differ
  std::vector<TreeVertex> ray1;
  std::vector<TreeVertex> ray2;
};

/// gamma1^p = gamma2^(sign*q).
struct PowerIdentity {
  long long p;
  long long q;
  int sign;
};

struct TransversalityVerdict {
  enum class Kind { Transverse, SharedEnd, Unknown };
  Kind kind = Kind::Unknown;
  std::size_t depth = 0;
  TreeVertex base;
  std::vector<EndPairCertificate> end_pairs;
  std::optional<PowerIdentity> shared;
};

inline std::size_t default_transversality_depth(const Word& g1, const Word& g2) {
  const Hyperbolic h1 = require_hyperbolic(classify(g1));
  const Hyperbolic h2 = require_hyperbolic(classify(g2));
  return 2 * (h1.translation_length + h2.translation_length) + distance(h1.axis_vertex, h2.axis_vertex) + 8;
}

/// Three-valued transversality test. Transverse is certified by four
/// divergent ray pairs, SharedEnd by a power identity; anything else is
/// reported as Unknown.
inline TransversalityVerdict are_transverse(const Word& g1, const Word& g2, std::optional<std::size_t> depth = {}) {
  g1.check_same(g2);
  const Hyperbolic h1 = require_hyperbolic(classify(g1));
  const Hyperbolic h2 = require_hyperbolic(classify(g2));
  TransversalityVerdict verdict{TransversalityVerdict::Kind::Unknown,
                                 depth.value_or(default_transversality_depth(g1, g2)), h1.axis_vertex};
  bool all_diverged = true;
  for (End e1 : {End::Attracting, End::Repelling}) {
    for (End e2 : {End::Attracting, End::Repelling}) {
      EndPairCertificate cert{e1, e2};
      cert.ray1 = detail::end_ray(g1, h1, e1, verdict.base, verdict.depth);
      cert.ray2 = detail::end_ray(g2, h2, e2, verdict.base, verdict.depth);
      const std::size_t n = std::min(cert.ray1.size(), cert.ray2.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (!(cert.ray1[i] == cert.ray2[i])) {
          cert.diverged = true;
          cert.split_index = i;
          break;
        }
      }
      if (cert.diverged) {
        cert.ray1.erase(cert.ray1.begin() + cert.split_index + 1, cert.ray1.end());
        cert.ray2.erase(cert.ray2.begin() + cert.split_index + 1, cert.ray2.end());
      }
      all_diverged = all_diverged && cert.diverged;
      verdict.end_pairs.push_back(std::move(cert));
    }
  }
  if (all_diverged) {
    verdict.kind = TransversalityVerdict::Kind::Transverse;
    return verdict;
  }
  constexpr long long kMaxPower = 6;
  for (long long p = 1; p <= kMaxPower && !verdict.shared; ++p) {
    const Word lhs = power(g1, p);
    for (long long q = 1; q <= kMaxPower && !verdict.shared; ++q) {
      const Word rhs = power(g2, q);
      if (lhs == rhs)
        verdict.shared = PowerIdentity{p, q, 1};
      else if (lhs == invert(rhs))
        verdict.shared = PowerIdentity{p, q, -1};
    }
  }
  verdict.kind = verdict.shared ? TransversalityVerdict::Kind::SharedEnd : TransversalityVerdict::Kind::Unknown;
  return verdict;
}

/// Number of geometric edges shared by the axes of two transverse elements
/// (nullopt when the axes are disjoint). The window must exceed the extent
/// of the overlap; the transversality depth bound is used by default.
inline std::optional<std::size_t> axis_overlap_edges(const Word& g1, const Word& g2,
                                                     std::optional<std::size_t> window = {}) {
  const Hyperbolic h1 = require_hyperbolic(classify(g1));
  const Hyperbolic h2 = require_hyperbolic(classify(g2));
  const std::size_t gap = distance(h1.axis_vertex, h2.axis_vertex);
  const std::size_t w = window.value_or(default_transversality_depth(g1, g2)) + gap;
  auto line = [&](const Word& g, const Hyperbolic& h) {
    std::unordered_set<TreeVertex, TreeVertexHash> out;
    for (End e : {End::Attracting, End::Repelling})
      for (auto& v : detail::end_ray(g, h, e, h.axis_vertex, w)) out.insert(std::move(v));
    return out;
  };
  const auto axis1 = line(g1, h1);
  const auto axis2 = line(g2, h2);
  std::size_t common = 0;
  for (const auto& v : axis1) common += axis2.count(v);
  if (common == 0) return std::nullopt;
  return common - 1;
}

/// A pair of transverse hyperbolic elements built from coset
/// representatives: (s q s q^-1, s r s r^-1) for a non-degenerate amalgam
/// with q, r in the factor of index >= 3 and s in the other one, and
/// (r t, t s) with r outside H and s outside theta(H) for a non-ascending
/// HNN extension.
inline std::pair<Word, Word> construct_transverse_pair(const PresentationPtr& p) {
  auto at_least = [](const Subgroup& s, long long k) {
    auto i = index(s);
    return !i || *i >= k;
  };
  auto non_identity_reps = [](const Subgroup& s, std::size_t count) {
    std::vector<Element> out;
    const GroupPtr& g = s.parent();
    if (!s.is_finite()) {
      for (std::size_t i = 1; i <= count; ++i) out.emplace_back(i);
      return out;
    }
    for (const auto& x : coset_transversal(s)) {
      if (out.size() == count) break;
      if (!g->is_identity(x)) out.push_back(x);
    }
    return out;
  };
  if (p->is_amalgam()) {
    Side wide;
    if (at_least(p->edge_subgroup(Side::A), 3) && at_least(p->edge_subgroup(Side::B), 2))
      wide = Side::A;
    else if (at_least(p->edge_subgroup(Side::B), 3) && at_least(p->edge_subgroup(Side::A), 2))
      wide = Side::B;
    else
      fail(ErrorCode::DegeneratePresentation, "amalgam is trivial or degenerate (needs indices >= 3 and >= 2)");
    const Side narrow = other(wide);
    const auto qr = non_identity_reps(p->edge_subgroup(wide), 2);
    const Element s = non_identity_reps(p->edge_subgroup(narrow), 1).front();
    const Group& W = *p->factor(wide);
    auto recipe = [&](const Element& q) {
      return normalize(p, {Letter::factor(narrow, s), Letter::factor(wide, q), Letter::factor(narrow, s),
                           Letter::factor(wide, W.inverse(q))});
    };
    return {recipe(qr[0]), recipe(qr[1])};
  }
  if (p->associated().is_whole() || p->associated_image().is_whole())
    fail(ErrorCode::DegeneratePresentation, "HNN extension is ascending");
  const Element r = non_identity_reps(p->associated(), 1).front();
  const Element s = non_identity_reps(p->associated_image(), 1).front();
  return {normalize(p, {Letter::g(r), Letter::t(1)}), normalize(p, {Letter::t(1), Letter::g(s)})};
}

/// Outcome of the slenderness probe: an edge f inside T_e whose terminus
/// is moved while the fixed-point set of gamma stays on its source side, so
/// gamma moves every boundary point behind f.
struct SlendernessResult {
  std::optional<TreeEdge> witness;
  std::size_t witness_depth = 0;
  std::size_t explored = 0;

  bool found() const { return witness.has_value(); }
};

/// Searches T_e breadth-first for an edge whose terminus gamma moves.
/// Requires gamma elliptic and e pointing away from its certified fixed
/// vertex. Exhaustion within `depth` proves nothing.
inline SlendernessResult slenderness_probe(const Word& gamma, const TreeEdge& e, std::size_t depth) {
  gamma.check_same(e.rep);
  const Classification c = classify(gamma);
  if (is_hyperbolic(c)) fail(ErrorCode::NotElliptic, "slenderness probe needs an elliptic element");
  const TreeVertex& x0 = std::get<Elliptic>(c).fixed_vertex;
  if (!(distance(x0, source(e)) < distance(x0, terminus(e))))
    fail(ErrorCode::InvalidArgument, "edge must point away from the fixed vertex");
  SlendernessResult result;
  std::deque<std::pair<TreeEdge, std::size_t>> queue{{e, 0}};
  while (!queue.empty()) {
    auto [f, level] = std::move(queue.front());
    queue.pop_front();
    ++result.explored;
    const TreeVertex t = terminus(f);
    if (!(act(gamma, t) == t)) {
      result.witness = f;
      result.witness_depth = level;
      return result;
    }
    if (level == depth) continue;
    const TreeVertex s = source(f);
    for (auto& nb : neighbors(t))
      if (!(nb.vertex == s)) queue.emplace_back(std::move(nb.edge), level + 1);
  }
  return result;
}

}  // namespace bass
