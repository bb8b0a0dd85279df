#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bass/dynamics.hpp"

namespace bass {

/// A partition G = C u D with translates gamma_1..gamma_N. C is the set of
/// gamma with gamma x0 on the terminus side of `edge`.
struct PowersWitness {
  PresentationPtr presentation;
  TreeEdge edge;
  TreeVertex base;
  std::vector<Word> translates;
};

enum class Part { C, D };

inline Part membership(const PowersWitness& w, const Word& gamma) {
  return halfspace_side(w.edge, act(gamma, w.base)) == HalfSpace::TerminusSide ? Part::C : Part::D;
}

/// One exact disjointness test. Separation: T_{f e} vs T_e for F[index].
/// Translates: T_{gamma_j rev(e)} vs T_{gamma_k rev(e)}.
struct CheckRecord {
  enum class Kind { Separation, Translates };
  Kind kind;
  std::size_t first;
  std::size_t second;  // unused for Separation
  TreeEdge e1;
  TreeEdge e2;
  DisjointnessCheck distances;
  bool passed() const { return distances.disjoint(); }
};

struct Certification {
  bool certified = false;
  std::vector<CheckRecord> checks;
  std::string failure;  // first failing check, empty when certified
};

namespace detail {

inline void validate_finite_set(const PresentationPtr& p, const std::vector<Word>& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].presentation() != p) fail(ErrorCode::PresentationMismatch, "F[" + std::to_string(i) + "] is over another presentation");
    if (f[i].is_identity()) fail(ErrorCode::InvalidArgument, "F[" + std::to_string(i) + "] is the identity");
  }
}

}  // namespace detail

/// Every check is run; the first failure is described.
inline Certification certify_witness(const PowersWitness& w, const std::vector<Word>& f) {
  detail::validate_finite_set(w.presentation, f);
  if (w.edge.rep.presentation() != w.presentation || w.base.rep.presentation() != w.presentation)
    fail(ErrorCode::PresentationMismatch, "witness data over another presentation");
  for (const auto& g : w.translates)
    if (g.presentation() != w.presentation) fail(ErrorCode::PresentationMismatch, "translate over another presentation");
  if (halfspace_side(w.edge, w.base) != HalfSpace::SourceSide)
    fail(ErrorCode::InvalidArgument, "base vertex must lie on the source side of the edge");

  Certification out;
  auto record = [&](CheckRecord r, std::string what) {
    if (!r.passed() && out.failure.empty()) out.failure = std::move(what);
    out.checks.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    TreeEdge moved = act_edge(f[i], w.edge);
    auto d = halfspace_check(moved, w.edge);
    record({CheckRecord::Kind::Separation, i, 0, std::move(moved), w.edge, d},
           "F[" + std::to_string(i) + "] e and e have intersecting half-trees");
  }
  const TreeEdge back = reverse(w.edge);
  std::vector<TreeEdge> moved;
  moved.reserve(w.translates.size());
  for (const auto& g : w.translates) moved.push_back(act_edge(g, back));
  for (std::size_t j = 0; j < moved.size(); ++j)
    for (std::size_t k = j + 1; k < moved.size(); ++k)
      record({CheckRecord::Kind::Translates, j, k, moved[j], moved[k], halfspace_check(moved[j], moved[k])},
             "translates " + std::to_string(j + 1) + " and " + std::to_string(k + 1) + " overlap on D");
  out.certified = out.failure.empty();
  return out;
}

struct WitnessBudget {
  std::size_t radius = 8;         // edge search and conjugator search
  std::size_t max_exponent = 64;  // bound on M in gamma_j = g^(c + j M)
  std::size_t vertex_budget = kDefaultVertexBudget;
};

struct SearchTrace {
  std::size_t edges_examined = 0;
  std::size_t separating_edges = 0;
  std::size_t conjugators_tried = 0;
  std::size_t certifications_run = 0;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& msg, SearchTrace trace)
      : Error(ErrorCode::BudgetExhausted, msg), trace_(trace) {}
  const SearchTrace& trace() const noexcept { return trace_; }

 private:
  SearchTrace trace_;
};

namespace detail {

/// The axis of g lies in T_e iff t(e) is one step closer to it than s(e);
/// d(v, axis) = (d(v, g v) - l) / 2.
inline bool axis_inside(const Word& g, const TreeEdge& e) {
  return displacement(g, source(e)) == displacement(g, terminus(e)) + 2;
}

/// With the axis inside T_e, the half-trees gamma T_rev(e) for distinct
/// powers of g hang off distinct axis vertices.
inline std::optional<PowersWitness> translates_for(const PresentationPtr& p, const Word& g, const TreeEdge& e,
                                                   const std::vector<Word>& f, std::size_t n,
                                                   const WitnessBudget& budget, SearchTrace& trace) {
  PowersWitness w{p, e, source(e), {}};
  for (std::size_t m = 1; m <= budget.max_exponent; ++m) {
    for (std::size_t c = 0; c < m; ++c) {
      w.translates.clear();
      for (std::size_t j = 1; j <= n; ++j) w.translates.push_back(power(g, static_cast<long long>(c + j * m)));
      ++trace.certifications_run;
      if (certify_witness(w, f).certified) return w;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Breadth-first search for an edge e with f T_e and T_e disjoint for every
/// f in F (each tree edge tried away from the base vertex first, then
/// reversed), then for a conjugate of a transverse-pair element whose axis
/// lies in T_e. The result is certified before it is returned.
inline PowersWitness build_witness(const PresentationPtr& p, const std::vector<Word>& f, std::size_t n,
                                   const WitnessBudget& budget = {}) {
  detail::validate_finite_set(p, f);
  if (n == 0) fail(ErrorCode::InvalidArgument, "N must be at least 1");
  std::pair<Word, Word> pair = [&] {
    try {
      return construct_transverse_pair(p);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DegeneratePresentation) throw;
      fail(ErrorCode::NotApplicable, std::string("no witness search: ") + err.what());
    }
  }();

  SearchTrace trace;
  auto try_edge = [&](const TreeEdge& e) -> std::optional<PowersWitness> {
    ++trace.edges_examined;
    for (const auto& x : f)
      if (!halfspaces_disjoint(act_edge(x, e), e)) return std::nullopt;
    ++trace.separating_edges;
    const Ball around = ball(terminus(e), budget.radius, budget.vertex_budget);
    for (const auto& v : around.vertices) {
      for (const Word* g : {&pair.first, &pair.second}) {
        for (const Word& delta : {v.rep, invert(v.rep)}) {
          ++trace.conjugators_tried;
          Word h = conjugate(*g, delta);
          if (!detail::axis_inside(h, e)) continue;
          if (auto w = detail::translates_for(p, h, e, f, n, budget, trace)) return w;
        }
      }
    }
    return std::nullopt;
  };

  const TreeVertex origin = base_vertex(p);
  std::unordered_set<TreeVertex, TreeVertexHash> seen{origin};
  std::deque<std::pair<TreeVertex, std::size_t>> queue{{origin, 0}};
  while (!queue.empty()) {
    auto [here, d] = std::move(queue.front());
    queue.pop_front();
    if (d == budget.radius) continue;
    for (auto& nb : neighbors(here)) {
      if (!seen.insert(nb.vertex).second) continue;
      if (seen.size() > budget.vertex_budget)
        throw SearchExhausted("witness search exceeded the vertex budget", trace);
      TreeEdge away = source(nb.edge) == here ? nb.edge : reverse(nb.edge);
      if (auto w = try_edge(away)) return *w;
      if (auto w = try_edge(reverse(away))) return *w;
      queue.emplace_back(std::move(nb.vertex), d + 1);
    }
  }
  throw SearchExhausted("no certified witness within radius " + std::to_string(budget.radius) + " (" +
                            std::to_string(trace.edges_examined) + " edges, " +
                            std::to_string(trace.separating_edges) + " separating)",
                        trace);
}

}  // namespace bass
