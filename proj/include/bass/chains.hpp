#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bass/presentation.hpp"

namespace bass {

inline constexpr std::size_t kDefaultChainLimit = 32;
inline constexpr std::size_t kDefaultEndLimit = 64;

/// A weakly decreasing chain of subgroups of the edge group.
struct ChainReport {
  std::vector<Subgroup> values;
  /// HNN only: H'_k = H_{k-1} ∩ theta(H_{k-1}) for k >= 1 (index k-1 here).
  std::vector<Subgroup> intermediate;
  std::optional<std::size_t> stabilized_at;  // k with value_{k+1} = value_k
  std::optional<std::size_t> first_trivial_at;
  std::optional<Subgroup> kernel;  // the stabilized value
  bool exhausted = false;          // limit reached before stabilization
};

namespace detail {

inline void record_step(ChainReport& r, Subgroup next, std::size_t limit) {
  const Subgroup& prev = r.values.back();
  if (!next.is_subset_of(prev)) fail(ErrorCode::InvalidArgument, "chain failed to decrease");
  if (next == prev) {
    r.stabilized_at = r.values.size() - 1;
    r.kernel = prev;
    return;
  }
  r.values.push_back(std::move(next));
  if (!r.first_trivial_at && r.values.back().is_trivial()) r.first_trivial_at = r.values.size() - 1;
  if (r.values.size() > limit) r.exhausted = true;
}

}  // namespace detail

/// C_0 = C, C_k = core_A(C_{k-1}) ∩ core_B(C_{k-1}), each core taken in the
/// factor and pulled back into C.
inline ChainReport amalgam_chain(const Presentation& p, std::size_t kmax = kDefaultChainLimit) {
  p.require(Presentation::Kind::Amalgam);
  ChainReport r;
  r.values.push_back(Subgroup::whole(p.edge_group()));
  if (r.values.back().is_trivial()) r.first_trivial_at = 0;
  while (!r.stabilized_at && !r.exhausted) {
    const Subgroup& prev = r.values.back();
    Subgroup next = prev;
    for (Side s : {Side::A, Side::B}) {
      const Embedding& emb = p.embedding(s);
      next = subgroup_intersect(next, emb.preimage(normal_core(emb.image(prev))));
    }
    detail::record_step(r, std::move(next), kmax);
  }
  return r;
}

/// H_0 = H, H'_k = H_{k-1} ∩ theta(H_{k-1}), N = core_G(H'_k),
/// H_k = N ∩ t N t^-1 = {n in N : theta(n) in N}.
inline ChainReport hnn_chain(const Presentation& p, std::size_t kmax = kDefaultChainLimit) {
  p.require(Presentation::Kind::Hnn);
  const Embedding& theta = p.theta();
  ChainReport r;
  r.values.push_back(p.associated());
  if (r.values.back().is_trivial()) r.first_trivial_at = 0;
  while (!r.stabilized_at && !r.exhausted) {
    const Subgroup& prev = r.values.back();
    Subgroup primed = subgroup_intersect(prev, theta.image(prev));
    Subgroup core = normal_core(primed);
    Subgroup next = subgroup_intersect(core, theta.preimage(core));
    r.intermediate.push_back(std::move(primed));
    detail::record_step(r, std::move(next), kmax);
  }
  return r;
}

struct EndSubgroups {
  Subgroup k_plus;   // ∩_p t^-p H t^p
  Subgroup k_minus;  // ∩_p t^p H t^-p
  std::vector<Subgroup> plus_chain;
  std::vector<Subgroup> minus_chain;
  bool stabilized = true;
};

namespace detail {

/// I_0 = H, I_{p+1} = H ∩ step(I_p) until the chain stabilizes.
///
/// Over the integers (H = dZ, one-step map by a factor c/d) the per-prime
/// valuations of the stride evolve as v -> max(v_H, v + delta) with delta
/// fixed, so a single strict step forces unbounded growth: the intersection
/// is then {0}.
template <class Step>
std::pair<Subgroup, bool> intersect_translates(const Subgroup& h, Step step, std::size_t pmax,
                                               std::vector<Subgroup>& chain) {
  chain.assign(1, h);
  for (std::size_t i = 0; i < pmax; ++i) {
    Subgroup next = subgroup_intersect(h, step(chain.back()));
    if (next == chain.back()) return {next, true};
    chain.push_back(next);
    if (!h.is_finite()) return {Subgroup::trivial(h.parent()), true};
  }
  return {chain.back(), false};
}

}  // namespace detail

inline EndSubgroups hnn_k_plus_minus(const Presentation& p, std::size_t pmax = kDefaultEndLimit) {
  p.require(Presentation::Kind::Hnn);
  const Embedding& theta = p.theta();
  const Embedding& theta_inv = p.theta_inverse();
  const Subgroup& h = p.associated();
  const Subgroup& image = p.associated_image();
  std::vector<Subgroup> plus_chain, minus_chain;
  // t^-1 X t ∩ G = theta(X ∩ H)
  auto [plus, plus_ok] = detail::intersect_translates(
      h, [&](const Subgroup& x) { return theta.image(subgroup_intersect(x, h)); }, pmax, plus_chain);
  // t X t^-1 ∩ G = theta^-1(X ∩ theta(H))
  auto [minus, minus_ok] = detail::intersect_translates(
      h, [&](const Subgroup& x) { return theta_inv.image(subgroup_intersect(x, image)); }, pmax, minus_chain);
  return {plus, minus, std::move(plus_chain), std::move(minus_chain), plus_ok && minus_ok};
}

/// A sufficient criterion, or an obstruction, that the verdict relies on.
struct Citation {
  std::string criterion;
  std::string statement;
};

namespace citations {

inline const Citation kAmalgamChain{
    "amalgam-chain-criterion",
    "A countable amalgam A *_C B with [A:C] >= 3, [B:C] >= 2 and C_k = {1} for some k >= 0 is a strongly Powers "
    "group."};
inline const Citation kHnnChain{
    "hnn-chain-criterion",
    "A countable HNN extension HNN(G,H,theta) with H != G, theta(H) != G and H_k = {1} for some k >= 0 is a strongly "
    "Powers group."};
inline const Citation kHnnEnds{
    "hnn-end-criterion",
    "A countable HNN extension with H != G, theta(H) != G and K_+ = {1} or K_- = {1} is a strongly Powers group."};
inline const Citation kBaumslagSolitar{
    "baumslag-solitar-classification",
    "BS(m,n) is strongly Powers iff it is C*-simple iff min{|m|,|n|} >= 2 and |m| != |n|."};
inline const Citation kSpecialBaumslagSolitar{
    "special-baumslag-solitar",
    "If min{|m|,|n|} >= 2 and |m| != |n|, the kernel SBS(m,n) of the t-exponent map BS(m,n) -> Z is a strongly "
    "Powers group."};
inline const Citation kFreeProduct{
    "free-product-criterion",
    "A non-trivial free product A * B is C*-simple iff it is not isomorphic to the infinite dihedral group."};
inline const Citation kAmenable{
    "amenable-obstruction",
    "Amenable groups are not C*-simple; BS(m,n) with min{|m|,|n|} = 1 is solvable, hence amenable."};
inline const Citation kNormalAmenable{
    "normal-amenable-subgroup-obstruction",
    "A C*-simple group has no non-trivial amenable normal subgroup; BS(m,n) with |m| = |n| has the infinite cyclic "
    "normal subgroup generated by b^m (Moldavanskii)."};
inline const Citation kInfiniteDihedral{
    "infinite-dihedral-obstruction",
    "The infinite dihedral group C2 * C2 is amenable, the only non-trivial amenable free product."};
inline const Citation kFaithful{
    "faithfulness",
    "The action on the Bass-Serre tree is faithful iff the kernel, the largest subgroup of the edge group normal in "
    "the whole group, is trivial."};
inline const Citation kAscending{
    "ascending-extension",
    "An ascending HNN extension (H = G or theta(H) = G) fixes an end of its tree, so it has no pair of transverse "
    "hyperbolic elements."};

}  // namespace citations

struct Verdict {
  enum class Kind { StronglyPowers, NotCStarSimple, CriterionNotMet, Inconclusive };
  enum class Obstruction { None, Amenable, NormalAmenableSubgroup, InfiniteDihedral };

  Kind kind = Kind::Inconclusive;
  Obstruction obstruction = Obstruction::None;
  std::string reason;
  std::optional<std::size_t> trivial_at;  // k with C_k = {1} or H_k = {1}
  std::optional<ChainReport> chain;
  std::optional<EndSubgroups> ends;
  std::vector<std::string> notes;
  std::vector<Citation> citations;
};

inline std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::StronglyPowers: return "StronglyPowers";
    case Verdict::Kind::NotCStarSimple: return "NotCStarSimple";
    case Verdict::Kind::CriterionNotMet: return "CriterionNotMet";
    case Verdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "";
}

inline std::string to_string(Verdict::Obstruction o) {
  switch (o) {
    case Verdict::Obstruction::None: return "None";
    case Verdict::Obstruction::Amenable: return "Amenable";
    case Verdict::Obstruction::NormalAmenableSubgroup: return "NormalAmenableSubgroup";
    case Verdict::Obstruction::InfiniteDihedral: return "InfiniteDihedral";
  }
  return "";
}

namespace detail {

inline std::string index_text(const Subgroup& s) {
  auto i = index(s);
  return i ? i->str() : std::string("infinite");
}

inline bool index_at_least(const Subgroup& s, long long k) {
  auto i = index(s);
  return !i || *i >= k;
}

}  // namespace detail

inline Verdict decide_free_product(const GroupPtr& a, const GroupPtr& b) {
  Verdict v;
  v.citations.push_back(citations::kFreeProduct);
  auto order = [](const GroupPtr& g) -> std::optional<std::size_t> {
    if (g->is_integers()) return std::nullopt;
    return g->order();
  };
  if (order(a) == 1u || order(b) == 1u) {
    v.kind = Verdict::Kind::CriterionNotMet;
    v.reason = "trivial free product: one factor is the trivial group";
    return v;
  }
  if (order(a) == 2u && order(b) == 2u) {
    v.kind = Verdict::Kind::NotCStarSimple;
    v.obstruction = Verdict::Obstruction::InfiniteDihedral;
    v.reason = "C2 * C2 is the infinite dihedral group";
    v.citations.push_back(citations::kInfiniteDihedral);
    return v;
  }
  v.kind = Verdict::Kind::StronglyPowers;
  v.reason = "non-trivial free product other than the infinite dihedral group; C_0 = {1}";
  v.trivial_at = 0;
  v.citations.push_back(citations::kAmalgamChain);
  return v;
}

inline Verdict decide_amalgam(const Presentation& p, std::size_t kmax = kDefaultChainLimit) {
  p.require(Presentation::Kind::Amalgam);
  Verdict v;
  v.chain = amalgam_chain(p, kmax);
  v.citations.push_back(citations::kAmalgamChain);
  const Subgroup& ca = p.edge_subgroup(Side::A);
  const Subgroup& cb = p.edge_subgroup(Side::B);
  const std::string indices = "[A:C] = " + detail::index_text(ca) + ", [B:C] = " + detail::index_text(cb);
  const bool indices_ok = (detail::index_at_least(ca, 3) && detail::index_at_least(cb, 2)) ||
                          (detail::index_at_least(cb, 3) && detail::index_at_least(ca, 2));
  if (!indices_ok) {
    v.kind = Verdict::Kind::CriterionNotMet;
    v.reason = "index hypothesis fails: " + indices;
    if (v.chain->kernel && !v.chain->kernel->is_trivial()) v.citations.push_back(citations::kFaithful);
    return v;
  }
  if (v.chain->first_trivial_at) {
    v.kind = Verdict::Kind::StronglyPowers;
    v.trivial_at = v.chain->first_trivial_at;
    v.reason = indices + " and C_" + std::to_string(*v.trivial_at) + " = {1}";
    return v;
  }
  v.kind = Verdict::Kind::Inconclusive;
  v.citations.push_back(citations::kFaithful);
  if (v.chain->kernel)
    v.reason = indices + "; the chain stabilizes at a non-trivial kernel, so the action is not faithful";
  else
    v.reason = indices + "; no trivial C_k up to k = " + std::to_string(kmax);
  return v;
}

inline Verdict decide_hnn(const Presentation& p, std::size_t kmax = kDefaultChainLimit,
                          std::size_t pmax = kDefaultEndLimit) {
  p.require(Presentation::Kind::Hnn);
  Verdict v;
  v.chain = hnn_chain(p, kmax);
  if (p.associated().is_whole() || p.associated_image().is_whole()) {
    v.kind = Verdict::Kind::CriterionNotMet;
    v.reason = "ascending HNN extension";
    v.citations.push_back(citations::kAscending);
    return v;
  }
  if (v.chain->first_trivial_at) {
    v.kind = Verdict::Kind::StronglyPowers;
    v.trivial_at = v.chain->first_trivial_at;
    v.reason = "non-ascending and H_" + std::to_string(*v.trivial_at) + " = {1}";
    v.citations.push_back(citations::kHnnChain);
    return v;
  }
  v.ends = hnn_k_plus_minus(p, pmax);
  const bool plus = v.ends->k_plus.is_trivial(), minus = v.ends->k_minus.is_trivial();
  if (plus || minus) {
    v.kind = Verdict::Kind::StronglyPowers;
    v.reason = std::string("non-ascending and ") + (plus ? "K_+" : "K_-") + " = {1}";
    v.citations.push_back(citations::kHnnEnds);
    return v;
  }
  v.kind = Verdict::Kind::Inconclusive;
  v.citations.push_back(citations::kHnnChain);
  v.citations.push_back(citations::kHnnEnds);
  v.citations.push_back(citations::kFaithful);
  v.reason = v.chain->kernel ? "H_k stabilizes at a non-trivial kernel and K_+, K_- are non-trivial"
                             : "no trivial H_k within the limit and K_+, K_- are non-trivial";
  return v;
}

inline Verdict decide_bs(long long m, long long n) {
  if (m == 0 || n == 0) fail(ErrorCode::InvalidArgument, "BS(m,n) needs m != 0 and n != 0");
  const long long am = m < 0 ? -m : m, an = n < 0 ? -n : n;
  Verdict v;
  v.citations.push_back(citations::kBaumslagSolitar);
  if (std::min(am, an) == 1) {
    v.kind = Verdict::Kind::NotCStarSimple;
    v.obstruction = Verdict::Obstruction::Amenable;
    v.reason = "min{|m|,|n|} = 1: BS(m,n) is solvable, in particular amenable";
    v.citations.push_back(citations::kAmenable);
    return v;
  }
  if (am == an) {
    v.kind = Verdict::Kind::NotCStarSimple;
    v.obstruction = Verdict::Obstruction::NormalAmenableSubgroup;
    v.reason = "|m| = |n|: <b^m> is an infinite cyclic normal subgroup";
    v.citations.push_back(citations::kNormalAmenable);
    return v;
  }
  v.kind = Verdict::Kind::StronglyPowers;
  v.reason = "min{|m|,|n|} >= 2 and |m| != |n|";
  v.notes.push_back("SBS(" + std::to_string(m) + "," + std::to_string(n) + ") is also strongly Powers");
  v.citations.push_back(citations::kSpecialBaumslagSolitar);
  return v;
}

}  // namespace bass
