#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "bass/io.hpp"

namespace bass::cli {

enum Exit : int { kOk = 0, kFailure = 1, kNotMet = 2 };

struct Options {
  std::string command;
  std::string input;
  std::optional<std::string> word;
  std::optional<std::string> edge;
  std::size_t radius = 2;
  std::size_t kmax = kDefaultChainLimit;
  std::optional<std::size_t> depth;
  std::size_t n = 2;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1000;
  bool dot = false;
  bool pretty = false;
};

namespace detail {

using io::Json;

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw io::InputError(ErrorCode::Schema, "", what + " is not valid JSON: " + e.what());
  }
}

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline const std::string& need_word(const Options& o) {
  if (!o.word) fail(ErrorCode::InvalidArgument, o.command + " needs --word");
  return *o.word;
}

inline Word word_arg(const Options& o, const PresentationPtr& p) {
  return io::parse_word(parse_json_text(need_word(o), "--word"), p);
}

/// Random words of length <= 8 over the symmetric generators, replayed
/// against the witness partition.
inline Json replay(const PowersWitness& w, const std::vector<Word>& f, std::uint64_t seed, std::size_t samples) {
  const auto gens = generators(w.presentation);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(0, 8), pick(0, gens.size() - 1);
  std::vector<Word> c_side, d_side;
  for (std::size_t i = 0; i < samples; ++i) {
    Word u(w.presentation);
    for (std::size_t k = len(rng); k > 0; --k) u = multiply(u, gens[pick(rng)]);
    (membership(w, u) == Part::C ? c_side : d_side).push_back(std::move(u));
  }
  std::size_t violations = 0;
  for (const auto& x : f)
    for (const auto& u : c_side)
      if (membership(w, multiply(x, u)) == Part::C) ++violations;
  std::vector<std::unordered_set<Word, WordHash>> images(w.translates.size());
  for (std::size_t j = 0; j < w.translates.size(); ++j)
    for (const auto& u : d_side) images[j].insert(multiply(w.translates[j], u));
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t k = j + 1; k < images.size(); ++k)
      for (const auto& x : images[j])
        if (images[k].count(x)) ++violations;
  return {{"seed", seed}, {"samples", samples}, {"c_side", c_side.size()}, {"d_side", d_side.size()},
          {"violations", violations}};
}

inline int dispatch(const Options& o, const PresentationPtr& p, Json& out, std::string& raw) {
  const std::string& cmd = o.command;
  if (cmd == "normal-form") {
    Word w = word_arg(o, p);
    out = {{"word", io::to_json(w)}, {"text", to_string(w)}};
    if (p->is_amalgam()) out["syllable_length"] = w.syllable_length();
    else out["tau_count"] = w.tau_count();
    return kOk;
  }
  if (cmd == "classify") {
    Word w = word_arg(o, p);
    out = {{"word", io::to_json(w)}, {"text", to_string(w)}, {"classification", io::to_json(w, classify(w))}};
    return kOk;
  }
  if (cmd == "ball") {
    TreeVertex center = base_vertex(p);
    if (o.word) center = act(word_arg(o, p), center);
    Ball b = ball(center, o.radius, o.budget.value_or(kDefaultVertexBudget));
    if (o.dot) {
      raw = io::to_dot(b);
      return kOk;
    }
    out = io::to_json(b);
    return kOk;
  }
  if (cmd == "chain") {
    ChainReport r = p->is_amalgam() ? amalgam_chain(*p, o.kmax) : hnn_chain(*p, o.kmax);
    out = io::to_json(r);
    out["type"] = p->is_amalgam() ? "C_k" : "H_k";
    return r.exhausted ? kNotMet : kOk;
  }
  if (cmd == "kpm") {
    EndSubgroups e = hnn_k_plus_minus(*p, o.kmax);
    out = io::to_json(e);
    return e.stabilized ? kOk : kNotMet;
  }
  if (cmd == "decide") {
    Verdict v;
    if (auto bs = p->bs_parameters())
      v = decide_bs(bs->first, bs->second);
    else if (p->is_amalgam() && !p->edge_group()->is_integers() && p->edge_group()->order() == 1)
      v = decide_free_product(p->factor(Side::A), p->factor(Side::B));
    else if (p->is_amalgam())
      v = decide_amalgam(*p, o.kmax);
    else
      v = decide_hnn(*p, o.kmax);
    out = io::to_json(v);
    return v.kind == Verdict::Kind::CriterionNotMet || v.kind == Verdict::Kind::Inconclusive ? kNotMet : kOk;
  }
  if (cmd == "transverse-pair") {
    auto [g1, g2] = construct_transverse_pair(p);
    TransversalityVerdict v = are_transverse(g1, g2, o.depth);
    out = {{"g1", io::to_json(g1)}, {"g1_text", to_string(g1)}, {"g1_classification", io::to_json(g1, classify(g1))},
           {"g2", io::to_json(g2)}, {"g2_text", to_string(g2)}, {"g2_classification", io::to_json(g2, classify(g2))},
           {"transversality", io::to_json(v)}};
    if (v.kind == TransversalityVerdict::Kind::Transverse) {
      auto overlap = axis_overlap_edges(g1, g2, o.depth);
      out["axis_overlap_edges"] = overlap ? Json(*overlap) : Json();
    }
    return v.kind == TransversalityVerdict::Kind::Transverse ? kOk : kNotMet;
  }
  if (cmd == "witness") {
    auto f = io::parse_word_list(parse_json_text(need_word(o), "--word"), p);
    WitnessBudget budget;
    if (o.budget) budget.radius = *o.budget;
    try {
      PowersWitness w = build_witness(p, f, o.n, budget);
      Json fj = Json::array();
      for (const auto& x : f) fj.push_back(io::to_json(x));
      out = io::to_json(w);
      out["F"] = fj;
      out["certification"] = io::to_json(certify_witness(w, f));
      if (o.seed) out["replay"] = replay(w, f, *o.seed, o.samples);
      return kOk;
    } catch (const SearchExhausted& e) {
      out = io::error_json(e);
      return kNotMet;
    }
  }
  if (cmd == "probe-slender") {
    Word g = word_arg(o, p);
    const std::size_t depth = o.depth.value_or(4);
    Json probes = Json::array();
    bool any = false;
    auto probe = [&](const TreeEdge& e) {
      SlendernessResult r = slenderness_probe(g, e, depth);
      any = any || r.found();
      Json pj = io::to_json(r);
      pj["edge"] = io::to_json(e);
      probes.push_back(std::move(pj));
    };
    if (o.edge) {
      probe(io::parse_edge(parse_json_text(*o.edge, "--edge"), p));
    } else {
      const Classification c = classify(g);
      if (is_hyperbolic(c)) fail(ErrorCode::NotElliptic, "slenderness probe needs an elliptic element");
      const TreeVertex x0 = std::get<Elliptic>(c).fixed_vertex;
      for (const auto& nb : neighbors(x0)) probe(source(nb.edge) == x0 ? nb.edge : reverse(nb.edge));
    }
    out = {{"word", io::to_json(g)}, {"depth", depth}, {"probes", probes}};
    return any ? kOk : kNotMet;
  }
  fail(ErrorCode::InvalidArgument, "unknown subcommand " + cmd);
}

}  // namespace detail

/// Runs one invocation and writes exactly one document to `out`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::istream& in) {
  Options o;
  CLI::App app{"Bass-Serre tree toolkit for amalgams and HNN extensions", "bass"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--input", o.input, "presentation JSON file, - for stdin")->required();
  app.add_option("--word", o.word, "word JSON (witness: array of words)");
  app.add_option("--edge", o.edge, "edge JSON for probe-slender");
  app.add_option("--radius", o.radius, "ball radius");
  app.add_option("--kmax", o.kmax, "chain length limit");
  app.add_option("--depth", o.depth, "transversality or probe depth");
  app.add_option("--n", o.n, "number of translates");
  app.add_option("--budget", o.budget, "ball vertex budget, or witness search radius");
  app.add_option("--seed", o.seed, "seed for the randomized witness replay");
  app.add_option("--samples", o.samples, "replay sample count");
  app.add_flag("--dot", o.dot, "emit the ball as a DOT graph");
  app.add_flag("--pretty", o.pretty, "indent JSON output");
  const std::pair<const char*, const char*> commands[] = {
      {"normal-form", "reduce --word to normal form"},
      {"classify", "elliptic or hyperbolic, with translation length"},
      {"ball", "tree ball of --radius around the base vertex"},
      {"chain", "C_k or H_k chain up to --kmax, with kernel"},
      {"kpm", "end subgroups K+ and K- of an HNN datum"},
      {"decide", "strongly Powers / not C*-simple / inconclusive"},
      {"transverse-pair", "two hyperbolic elements with transverse axes"},
      {"witness", "Powers witness for the words in --word"},
      {"probe-slender", "edge-stabilizer probe for --word"}};
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&o, name = name] { o.command = name; });

  io::Json doc;
  std::string raw;
  int code = kOk;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << io::Json{{"error", {{"code", "InvalidArgument"}, {"message", e.what()}}}}.dump() << "\n";
    return kFailure;
  }
  try {
    const io::Json input = detail::parse_json_text(detail::read_input(o.input, in), "input");
    code = detail::dispatch(o, io::parse_presentation(input), doc, raw);
  } catch (const Error& e) {
    doc = io::error_json(e);
    code = kFailure;
  } catch (const std::exception& e) {
    doc = io::Json{{"error", {{"code", "Internal"}, {"message", e.what()}}}};
    code = kFailure;
  }
  if (!raw.empty() && code != kFailure) {
    out << raw;
    return code;
  }
  out << doc.dump(o.pretty ? 2 : -1) << "\n";
  return code;
}

}  // namespace bass::cli
