#pragma once

#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bass/chains.hpp"
#include "bass/dynamics.hpp"
#include "bass/powers.hpp"
#include "bass/tree.hpp"

namespace bass::io {

using Json = nlohmann::ordered_json;

/// A malformed document; `pointer` is the JSON pointer of the offending
/// value. The code is Schema for shape errors and the library code for
/// semantic ones (a non-associative table, say).
class InputError : public Error {
 public:
  InputError(ErrorCode code, std::string pointer, const std::string& msg)
      : Error(code, "at " + (pointer.empty() ? std::string("/") : pointer) + ": " + msg),
        pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

namespace detail {

[[noreturn]] inline void schema(const std::string& ptr, const std::string& msg) {
  throw InputError(ErrorCode::Schema, ptr, msg);
}

inline std::string child(const std::string& ptr, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return ptr + "/" + k;
}

inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const Json& member(const Json& j, const std::string& ptr, const std::string& key) {
  if (!j.is_object()) schema(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(ptr, "missing member \"" + key + "\"");
  return *it;
}

inline void only_members(const Json& j, const std::string& ptr, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema(child(ptr, it.key()), "unknown member");
  }
}

/// Rethrows library failures raised while building a value at `ptr`.
template <class F>
auto at(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(e.code(), ptr, e.what());
  }
}

inline const Integer kExactLimit = Integer(1) << 53;

}  // namespace detail

// -- integers ----------------------------------------------------------------

inline Integer parse_integer(const Json& j, const std::string& ptr) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      detail::schema(ptr, "expected a decimal integer string");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  detail::schema(ptr, "expected an integer");
}

inline long long parse_int64(const Json& j, const std::string& ptr) {
  Integer v = parse_integer(j, ptr);
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    detail::schema(ptr, "integer out of range");
  return static_cast<long long>(v);
}

inline Json to_json(const Integer& v) {
  if (abs(v) < detail::kExactLimit) return Json(static_cast<long long>(v));
  return Json(v.str());
}

// -- groups ------------------------------------------------------------------

inline GroupPtr parse_group(const Json& j, const std::string& ptr) {
  const Json& kind = detail::member(j, ptr, "kind");
  if (kind == "int") {
    detail::only_members(j, ptr, {"kind"});
    return Group::integers();
  }
  if (kind != "finite") detail::schema(detail::child(ptr, "kind"), "expected \"finite\" or \"int\"");
  detail::only_members(j, ptr, {"kind", "table"});
  const std::string tptr = detail::child(ptr, "table");
  const Json& t = detail::member(j, ptr, "table");
  if (!t.is_array() || t.empty()) detail::schema(tptr, "expected a non-empty array of rows");
  Group::Table table;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string rptr = detail::child(tptr, i);
    if (!t[i].is_array()) detail::schema(rptr, "expected an array");
    auto& row = table.emplace_back();
    for (std::size_t k = 0; k < t[i].size(); ++k) {
      if (!t[i][k].is_number_unsigned()) detail::schema(detail::child(rptr, k), "expected a non-negative index");
      row.push_back(t[i][k].get<std::uint32_t>());
    }
  }
  return detail::at(tptr, [&] { return Group::finite(std::move(table)); });
}

inline Json to_json(const Group& g) {
  if (g.is_integers()) return {{"kind", "int"}};
  return {{"kind", "finite"}, {"table", g.table()}};
}

// -- subgroups and embeddings --------------------------------------------------

inline Element parse_element(const Json& j, const GroupPtr& g, const std::string& ptr) {
  Element x = parse_integer(j, ptr);
  if (!g->contains(x)) detail::schema(ptr, "not an element of the group");
  return x;
}

inline Subgroup parse_subgroup(const Json& j, const GroupPtr& g, const std::string& ptr) {
  if (j.is_object()) {
    detail::only_members(j, ptr, {"stride"});
    if (!g->is_integers()) detail::schema(ptr, "stride encoding needs an integer carrier");
    Integer d = parse_integer(detail::member(j, ptr, "stride"), detail::child(ptr, "stride"));
    return Subgroup::stride(g, d);
  }
  if (!j.is_array()) detail::schema(ptr, "expected an element array or {\"stride\": d}");
  if (g->is_integers()) detail::schema(ptr, "subgroups of the integers are given by stride");
  std::vector<Element> elts;
  for (std::size_t i = 0; i < j.size(); ++i) elts.push_back(parse_element(j[i], g, detail::child(ptr, i)));
  for (std::size_t i = 1; i < elts.size(); ++i)
    if (!(elts[i - 1] < elts[i])) detail::schema(detail::child(ptr, i), "element array must be strictly increasing");
  return detail::at(ptr, [&] { return Subgroup::from_elements(g, elts); });
}

inline Json to_json(const Subgroup& s) {
  if (!s.is_finite()) return {{"stride", to_json(s.stride())}};
  Json out = Json::array();
  for (auto i : s.indices()) out.push_back(i);
  return out;
}

/// Images listed in the order of the sorted domain, or a multiplier over
/// the integers (generator of the domain -> m).
inline Embedding parse_embedding(const Json& j, const GroupPtr& target, const Subgroup& domain,
                                 const std::string& ptr) {
  if (j.is_object()) {
    detail::only_members(j, ptr, {"multiplier"});
    Integer m = parse_integer(detail::member(j, ptr, "multiplier"), detail::child(ptr, "multiplier"));
    return detail::at(ptr, [&] { return Embedding::from_multiplier(target, domain, m); });
  }
  if (!j.is_array()) detail::schema(ptr, "expected an image array or {\"multiplier\": m}");
  if (!domain.is_finite()) detail::schema(ptr, "embeddings of the integers are given by multiplier");
  if (j.size() != domain.indices().size())
    detail::schema(ptr, "expected " + std::to_string(domain.indices().size()) + " images");
  std::vector<Element> images;
  for (std::size_t i = 0; i < j.size(); ++i) images.push_back(parse_element(j[i], target, detail::child(ptr, i)));
  return detail::at(ptr, [&] { return Embedding::from_images(target, domain, std::move(images)); });
}

inline Json to_json(const Embedding& e) {
  if (!e.domain().is_finite()) return {{"multiplier", to_json(e.generator_image())}};
  Json out = Json::array();
  for (const auto& x : e.domain().elements()) out.push_back(to_json(e.apply(x)));
  return out;
}

// -- presentations -----------------------------------------------------------

inline PresentationPtr parse_presentation(const Json& doc) {
  const std::string root = "/presentation";
  const Json& j = detail::member(doc, "", "presentation");
  const Json& type = detail::member(j, root, "type");
  const std::string tptr = detail::child(root, "type");
  if (!type.is_string()) detail::schema(tptr, "expected a string");
  const auto& t = type.get_ref<const std::string&>();
  auto group = [&](const char* key) { return parse_group(detail::member(j, root, key), detail::child(root, key)); };
  if (t == "bs") {
    detail::only_members(j, root, {"type", "m", "n"});
    long long m = parse_int64(detail::member(j, root, "m"), detail::child(root, "m"));
    long long n = parse_int64(detail::member(j, root, "n"), detail::child(root, "n"));
    return detail::at(root, [&] { return Presentation::baumslag_solitar(m, n); });
  }
  if (t == "free_product") {
    detail::only_members(j, root, {"type", "A", "B"});
    auto a = group("A");
    auto b = group("B");
    return Presentation::free_product(a, b);
  }
  if (t == "amalgam") {
    detail::only_members(j, root, {"type", "A", "B", "C", "into_A", "into_B"});
    auto a = group("A");
    auto b = group("B");
    auto c = group("C");
    auto whole = Subgroup::whole(c);
    auto ea = parse_embedding(detail::member(j, root, "into_A"), a, whole, detail::child(root, "into_A"));
    auto eb = parse_embedding(detail::member(j, root, "into_B"), b, whole, detail::child(root, "into_B"));
    return detail::at(root, [&] { return Presentation::amalgam(std::move(ea), std::move(eb)); });
  }
  if (t == "hnn") {
    detail::only_members(j, root, {"type", "G", "H", "theta"});
    auto g = group("G");
    auto h = parse_subgroup(detail::member(j, root, "H"), g, detail::child(root, "H"));
    auto theta = parse_embedding(detail::member(j, root, "theta"), g, h, detail::child(root, "theta"));
    return detail::at(root, [&] { return Presentation::hnn(std::move(theta)); });
  }
  detail::schema(tptr, "expected \"amalgam\", \"hnn\", \"free_product\" or \"bs\"");
}

inline Json to_json(const Presentation& p) {
  Json j;
  if (auto bs = p.bs_parameters()) {
    j["type"] = "bs";
    j["m"] = bs->first;
    j["n"] = bs->second;
  } else if (p.is_amalgam() && !p.edge_group()->is_integers() && p.edge_group()->order() == 1) {
    j["type"] = "free_product";
    j["A"] = to_json(*p.factor(Side::A));
    j["B"] = to_json(*p.factor(Side::B));
  } else if (p.is_amalgam()) {
    j["type"] = "amalgam";
    j["A"] = to_json(*p.factor(Side::A));
    j["B"] = to_json(*p.factor(Side::B));
    j["C"] = to_json(*p.edge_group());
    j["into_A"] = to_json(p.embedding(Side::A));
    j["into_B"] = to_json(p.embedding(Side::B));
  } else {
    j["type"] = "hnn";
    j["G"] = to_json(*p.base_group());
    j["H"] = to_json(p.associated());
    j["theta"] = to_json(p.theta());
  }
  return {{"presentation", j}};
}

// -- words -------------------------------------------------------------------

inline Word parse_word(const Json& j, const PresentationPtr& p, const std::string& ptr = "") {
  if (!j.is_array()) detail::schema(ptr, "expected an array of letters");
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string lptr = detail::child(ptr, i);
    const Json& l = j[i];
    if (!l.is_object()) detail::schema(lptr, "expected a letter object");
    if (p->is_amalgam()) {
      detail::only_members(l, lptr, {"side", "elt"});
      const Json& side = detail::member(l, lptr, "side");
      if (side != "A" && side != "B") detail::schema(detail::child(lptr, "side"), "expected \"A\" or \"B\"");
      const Side s = side == "A" ? Side::A : Side::B;
      letters.push_back(Letter::factor(
          s, parse_element(detail::member(l, lptr, "elt"), p->factor(s), detail::child(lptr, "elt"))));
    } else if (l.contains("g")) {
      detail::only_members(l, lptr, {"g"});
      letters.push_back(Letter::g(parse_element(l["g"], p->base_group(), detail::child(lptr, "g"))));
    } else if (l.contains("t")) {
      detail::only_members(l, lptr, {"t"});
      const Json& e = l["t"];
      if (e != 1 && e != -1) detail::schema(detail::child(lptr, "t"), "expected 1 or -1");
      letters.push_back(Letter::t(e.get<int>()));
    } else {
      detail::schema(lptr, "expected {\"g\": x} or {\"t\": +-1}");
    }
  }
  return Word::from_letters(p, letters);
}

inline Json to_json(const Word& w) {
  Json out = Json::array();
  for (const auto& l : w.letters()) {
    switch (l.kind) {
      case Letter::Kind::FactorA: out.push_back({{"side", "A"}, {"elt", to_json(l.value)}}); break;
      case Letter::Kind::FactorB: out.push_back({{"side", "B"}, {"elt", to_json(l.value)}}); break;
      case Letter::Kind::Base: out.push_back({{"g", to_json(l.value)}}); break;
      case Letter::Kind::Stable: {
        const int e = static_cast<int>(l.value);
        for (int i = 0; i < (e < 0 ? -e : e); ++i) out.push_back({{"t", e < 0 ? -1 : 1}});
        break;
      }
    }
  }
  return out;
}

inline std::vector<Word> parse_word_list(const Json& j, const PresentationPtr& p, const std::string& ptr = "") {
  if (!j.is_array()) detail::schema(ptr, "expected an array of words");
  std::vector<Word> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_word(j[i], p, detail::child(ptr, i)));
  return out;
}

// -- tree --------------------------------------------------------------------

inline const char* to_string(VertexType t) {
  switch (t) {
    case VertexType::A: return "A";
    case VertexType::B: return "B";
    case VertexType::G: return "G";
  }
  return "";
}

inline std::string label(const TreeVertex& v) { return to_string(v.rep) + " " + to_string(v.type); }

inline Json to_json(const TreeVertex& v) {
  return {{"type", to_string(v.type)}, {"rep", to_json(v.rep)}, {"label", label(v)}};
}

inline Json to_json(const TreeEdge& e) {
  return {{"rep", to_json(e.rep)},
          {"orientation", e.orientation == Orientation::Forward ? "forward" : "backward"},
          {"source", label(source(e))},
          {"terminus", label(terminus(e))}};
}

inline TreeEdge parse_edge(const Json& j, const PresentationPtr& p, const std::string& ptr = "") {
  detail::only_members(j, ptr, {"rep", "orientation", "source", "terminus"});
  Word rep = parse_word(detail::member(j, ptr, "rep"), p, detail::child(ptr, "rep"));
  const Json& o = detail::member(j, ptr, "orientation");
  if (o != "forward" && o != "backward") detail::schema(detail::child(ptr, "orientation"), "expected \"forward\" or \"backward\"");
  return canonical_edge(rep, o == "forward" ? Orientation::Forward : Orientation::Backward);
}

inline Json path_json(const std::vector<TreeVertex>& path) {
  Json out = Json::array();
  for (const auto& v : path) out.push_back(label(v));
  return out;
}

inline Json to_json(const Ball& b) {
  Json vertices = Json::array(), edges = Json::array();
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    Json v = to_json(b.vertices[i]);
    v["id"] = i;
    v["depth"] = b.depth[i];
    vertices.push_back(std::move(v));
  }
  for (std::size_t i = 1; i < b.vertices.size(); ++i) {
    Json e = to_json(b.edges[i - 1]);
    e["from"] = b.parent[i];
    e["to"] = i;
    edges.push_back(std::move(e));
  }
  return {{"center", label(b.center)},
          {"radius", b.radius},
          {"vertex_count", b.vertices.size()},
          {"sphere_sizes", b.sphere_sizes()},
          {"vertices", vertices},
          {"edges", edges}};
}

inline std::string to_dot(const Ball& b) {
  std::ostringstream out;
  out << "graph ball {\n";
  for (std::size_t i = 0; i < b.vertices.size(); ++i)
    out << "  v" << i << " [label=" << Json(label(b.vertices[i])).dump() << "];\n";
  for (std::size_t i = 1; i < b.vertices.size(); ++i) out << "  v" << b.parent[i] << " -- v" << i << ";\n";
  out << "}\n";
  return out.str();
}

// -- dynamics ------------------------------------------------------------------

inline Json to_json(const Word& gamma, const Classification& c) {
  if (const auto* e = std::get_if<Elliptic>(&c))
    return {{"kind", "elliptic"}, {"fixed_vertex", to_json(e->fixed_vertex)}};
  const auto& h = std::get<Hyperbolic>(c);
  // replayable: a on the axis, d(a, gamma a) = l
  return {{"kind", "hyperbolic"},
          {"translation_length", h.translation_length},
          {"axis_vertex", to_json(h.axis_vertex)},
          {"conjugator", to_json(h.conjugator)},
          {"certificate", path_json(geodesic(h.axis_vertex, act(gamma, h.axis_vertex)))}};
}

inline const char* to_string(End e) { return e == End::Attracting ? "attracting" : "repelling"; }

inline const char* to_string(TransversalityVerdict::Kind k) {
  switch (k) {
    case TransversalityVerdict::Kind::Transverse: return "Transverse";
    case TransversalityVerdict::Kind::SharedEnd: return "SharedEnd";
    case TransversalityVerdict::Kind::Unknown: return "Unknown";
  }
  return "";
}

inline Json to_json(const TransversalityVerdict& v) {
  Json pairs = Json::array();
  for (const auto& c : v.end_pairs) {
    Json pj{{"end1", to_string(c.end1)}, {"end2", to_string(c.end2)}, {"diverged", c.diverged}};
    if (c.diverged) pj["split_index"] = c.split_index;
    pj["ray1"] = path_json(c.ray1);
    pj["ray2"] = path_json(c.ray2);
    pairs.push_back(std::move(pj));
  }
  Json out{{"verdict", to_string(v.kind)}, {"depth", v.depth}, {"base", label(v.base)}, {"end_pairs", pairs}};
  if (v.shared) out["power_identity"] = {{"p", v.shared->p}, {"q", v.shared->q}, {"sign", v.shared->sign}};
  return out;
}

inline Json to_json(const SlendernessResult& r) {
  Json out{{"found", r.found()}, {"explored", r.explored}};
  if (r.witness) {
    out["witness_edge"] = to_json(*r.witness);
    out["witness_depth"] = r.witness_depth;
  }
  return out;
}

// -- chains and verdicts -----------------------------------------------------------

inline Json to_json(const ChainReport& r) {
  Json values = Json::array();
  for (const auto& s : r.values) values.push_back(to_json(s));
  Json out{{"values", values}};
  if (!r.intermediate.empty()) {
    Json primed = Json::array();
    for (const auto& s : r.intermediate) primed.push_back(to_json(s));
    out["intermediate"] = primed;
  }
  out["stabilized_at"] = r.stabilized_at ? Json(*r.stabilized_at) : Json();
  out["first_trivial_at"] = r.first_trivial_at ? Json(*r.first_trivial_at) : Json();
  out["kernel"] = r.kernel ? to_json(*r.kernel) : Json();
  out["exhausted"] = r.exhausted;
  return out;
}

inline Json to_json(const EndSubgroups& e) {
  auto chain = [](const std::vector<Subgroup>& c) {
    Json out = Json::array();
    for (const auto& s : c) out.push_back(to_json(s));
    return out;
  };
  return {{"k_plus", to_json(e.k_plus)},
          {"k_minus", to_json(e.k_minus)},
          {"k_plus_trivial", e.k_plus.is_trivial()},
          {"k_minus_trivial", e.k_minus.is_trivial()},
          {"stabilized", e.stabilized},
          {"plus_chain", chain(e.plus_chain)},
          {"minus_chain", chain(e.minus_chain)}};
}

inline Json to_json(const Verdict& v) {
  Json out{{"verdict", to_string(v.kind)}};
  if (v.obstruction != Verdict::Obstruction::None) out["obstruction"] = to_string(v.obstruction);
  out["reason"] = v.reason;
  if (v.trivial_at) out["k"] = *v.trivial_at;
  if (v.chain) out["chain"] = to_json(*v.chain);
  if (v.ends) out["ends"] = to_json(*v.ends);
  if (!v.notes.empty()) out["notes"] = v.notes;
  Json cites = Json::array();
  for (const auto& c : v.citations) cites.push_back({{"id", c.criterion}, {"statement", c.statement}});
  out["citations"] = cites;
  return out;
}

// -- witnesses -----------------------------------------------------------------

inline Json to_json(const Certification& c) {
  Json checks = Json::array();
  for (const auto& r : c.checks) {
    Json cj{{"kind", r.kind == CheckRecord::Kind::Separation ? "separation" : "translates"}};
    if (r.kind == CheckRecord::Kind::Separation) {
      cj["f"] = r.first;
    } else {
      cj["j"] = r.first + 1;
      cj["k"] = r.second + 1;
    }
    cj["e1"] = to_json(r.e1);
    cj["e2"] = to_json(r.e2);
    cj["distances"] = {{"t2_t1", r.distances.t2_to_t1},
                       {"t2_s1", r.distances.t2_to_s1},
                       {"t1_t2", r.distances.t1_to_t2},
                       {"t1_s2", r.distances.t1_to_s2}};
    cj["passed"] = r.passed();
    checks.push_back(std::move(cj));
  }
  Json out{{"certified", c.certified}, {"checks", checks}};
  if (!c.certified) out["failure"] = c.failure;
  return out;
}

inline Json to_json(const PowersWitness& w) {
  Json translates = Json::array();
  for (const auto& g : w.translates) translates.push_back(to_json(g));
  return {{"edge", to_json(w.edge)}, {"base", to_json(w.base)}, {"translates", translates}};
}

inline Json to_json(const SearchTrace& t) {
  return {{"edges_examined", t.edges_examined},
          {"separating_edges", t.separating_edges},
          {"conjugators_tried", t.conjugators_tried},
          {"certifications_run", t.certifications_run}};
}

// -- errors --------------------------------------------------------------------

inline Json error_json(const Error& e) {
  Json err{{"code", std::string(bass::to_string(e.code()))}, {"message", e.what()}};
  if (const auto* in = dynamic_cast<const InputError*>(&e)) err["pointer"] = in->pointer();
  if (const auto* ex = dynamic_cast<const SearchExhausted*>(&e)) err["trace"] = to_json(ex->trace());
  return {{"error", err}};
}

}  // namespace bass::io
