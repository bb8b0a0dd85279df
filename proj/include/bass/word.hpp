#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bass/presentation.hpp"

namespace bass {

/// One generator occurrence. Amalgam words use FactorA/FactorB letters;
/// HNN words use Base letters (elements of G) and Stable letters whose value
/// is an exponent of the stable letter t (usually +1 or -1).
struct Letter {
  enum class Kind : std::uint8_t { FactorA, FactorB, Base, Stable };

  Kind kind;
  Element value;

  static Letter a(Element x) { return {Kind::FactorA, std::move(x)}; }
  static Letter b(Element x) { return {Kind::FactorB, std::move(x)}; }
  static Letter g(Element x) { return {Kind::Base, std::move(x)}; }
  static Letter t(int exponent = 1) { return {Kind::Stable, exponent}; }
  static Letter factor(Side s, Element x) { return s == Side::A ? a(std::move(x)) : b(std::move(x)); }

  bool is_factor() const { return kind == Kind::FactorA || kind == Kind::FactorB; }
  Side side() const { return kind == Kind::FactorA ? Side::A : Side::B; }

  friend bool operator==(const Letter&, const Letter&) = default;
};

namespace detail {

/// HNN normal form g_0 t^e_1 g_1 ... t^e_k g_k.
struct HnnForm {
  std::vector<Element> g{Element(0)};
  std::vector<int> eps;
};

}  // namespace detail

/// A group element of a splitting, always stored in canonical normal form.
///
/// Amalgam: alternating syllables; every syllable but the last is a
/// non-identity canonical left-coset representative modulo the embedded
/// edge group, and the last one lies outside that subgroup unless it is the
/// only syllable. HNN: g_0 t^e_1 ... t^e_k g_k without pinches, where g_i
/// (i < k) is the canonical left-coset representative modulo H when
/// e_{i+1} = +1 and modulo theta(H) when e_{i+1} = -1; identity base letters
/// are omitted. Residues are pushed rightward, so the last letter absorbs
/// them.
class Word {
 public:
  explicit Word(PresentationPtr p) : pres_(std::move(p)) {}

  /// Normal form of the product of `letters`.
  static Word from_letters(PresentationPtr p, const std::vector<Letter>& letters) {
    Word w(std::move(p));
    w.letters_ = w.pres_->is_amalgam() ? normalize_amalgam(*w.pres_, letters)
                                       : normalize_hnn(*w.pres_, letters);
    return w;
  }

  static Word generator(PresentationPtr p, Letter l) { return from_letters(std::move(p), {std::move(l)}); }

  const PresentationPtr& presentation() const noexcept { return pres_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool is_identity() const noexcept { return letters_.empty(); }

  /// Number of amalgam syllables.
  std::size_t syllable_length() const {
    pres_->require(Presentation::Kind::Amalgam);
    return letters_.size();
  }

  /// Number of stable letters.
  std::size_t tau_count() const {
    pres_->require(Presentation::Kind::Hnn);
    std::size_t k = 0;
    for (const auto& l : letters_) k += l.kind == Letter::Kind::Stable;
    return k;
  }

  void check_same(const Word& other) const {
    if (pres_ != other.pres_) fail(ErrorCode::PresentationMismatch, "words over different presentations");
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.pres_ == b.pres_ && a.letters_ == b.letters_;
  }

  std::size_t hash() const {
    std::size_t h = letters_.size();
    for (const auto& l : letters_) {
      hash_combine(h, static_cast<std::size_t>(l.kind));
      hash_combine(h, hash_integer(l.value));
    }
    return h;
  }

  /// Splits an HNN normal form into (g_i, e_i).
  detail::HnnForm hnn_form() const {
    detail::HnnForm f;
    for (const auto& l : letters_) {
      if (l.kind == Letter::Kind::Stable) {
        f.eps.push_back(l.value > 0 ? 1 : -1);
        f.g.emplace_back(0);
      } else {
        f.g.back() = l.value;
      }
    }
    return f;
  }

  static Word from_hnn_form(PresentationPtr p, const detail::HnnForm& f) {
    Word w(std::move(p));
    for (std::size_t i = 0; i < f.g.size(); ++i) {
      if (i > 0) w.letters_.push_back(Letter::t(f.eps[i - 1]));
      if (f.g[i] != 0) w.letters_.push_back(Letter::g(f.g[i]));
    }
    return w;
  }

  /// Wraps letters already known to be in normal form.
  static Word trusted(PresentationPtr p, std::vector<Letter> letters) {
    Word w(std::move(p));
    w.letters_ = std::move(letters);
    return w;
  }

 private:
  static std::vector<Letter> normalize_amalgam(const Presentation& p, const std::vector<Letter>& input) {
    struct Open {
      Side side;
      Element elt;
    };
    std::vector<Letter> done;
    std::optional<Open> open;
    for (const auto& letter : input) {
      if (!letter.is_factor())
        fail(ErrorCode::PresentationMismatch, "HNN letter in an amalgam word");
      const Side x_side = letter.side();
      const Group& X = *p.factor(x_side);
      X.check(letter.value);
      if (!open) {
        open = Open{x_side, letter.value};
      } else if (open->side == x_side) {
        open->elt = X.multiply(open->elt, letter.value);
      } else {
        const Side y_side = open->side;
        const Group& Y = *p.factor(y_side);
        const Element t = p.edge_subgroup(y_side).left_coset_rep(open->elt);
        const Element c = p.embedding(y_side).inverse_apply(Y.multiply(Y.inverse(t), open->elt));
        Element carried = X.multiply(p.embedding(x_side).apply(c), letter.value);
        if (Y.is_identity(t)) {
          if (!done.empty()) {
            carried = X.multiply(done.back().value, carried);
            done.pop_back();
          }
          open = Open{x_side, std::move(carried)};
        } else {
          done.push_back(Letter::factor(y_side, t));
          open = Open{x_side, std::move(carried)};
        }
      }
    }
    if (open) {
      const Group& X = *p.factor(open->side);
      if (!X.is_identity(open->elt)) {
        const bool in_edge = p.edge_subgroup(open->side).contains(open->elt);
        if (in_edge && !done.empty()) {
          const Element c = p.embedding(open->side).inverse_apply(open->elt);
          Letter prev = done.back();
          done.pop_back();
          const Side z = prev.side();
          done.push_back(Letter::factor(z, p.factor(z)->multiply(prev.value, p.embedding(z).apply(c))));
        } else if (in_edge) {
          // a lone edge-group element is written in A
          const Element c = p.embedding(open->side).inverse_apply(open->elt);
          done.push_back(Letter::factor(Side::A, p.embedding(Side::A).apply(c)));
        } else {
          done.push_back(Letter::factor(open->side, open->elt));
        }
      }
    }
    return done;
  }

  static std::vector<Letter> normalize_hnn(const Presentation& p, const std::vector<Letter>& input) {
    const Group& G = *p.base_group();
    const Subgroup& H = p.associated();
    const Subgroup& K = p.associated_image();
    detail::HnnForm f;
    // Britton reduction on a stack.
    auto push_stable = [&](int e) {
      if (!f.eps.empty() && f.eps.back() == -e) {
        const Element& mid = f.g.back();
        if (e == 1 && H.contains(mid)) {
          Element replacement = p.theta().apply(mid);
          f.g.pop_back();
          f.eps.pop_back();
          f.g.back() = G.multiply(f.g.back(), replacement);
          return;
        }
        if (e == -1 && K.contains(mid)) {
          Element replacement = p.theta_inverse().apply(mid);
          f.g.pop_back();
          f.eps.pop_back();
          f.g.back() = G.multiply(f.g.back(), replacement);
          return;
        }
      }
      f.eps.push_back(e);
      f.g.push_back(G.identity());
    };
    for (const auto& letter : input) {
      if (letter.kind == Letter::Kind::Base) {
        G.check(letter.value);
        f.g.back() = G.multiply(f.g.back(), letter.value);
      } else if (letter.kind == Letter::Kind::Stable) {
        if (letter.value == 0) continue;
        const int e = letter.value > 0 ? 1 : -1;
        for (Integer i = 0; i < abs(letter.value); ++i) push_stable(e);
      } else {
        fail(ErrorCode::PresentationMismatch, "amalgam letter in an HNN word");
      }
    }
    // Canonical coset representatives, residues pushed to the right.
    for (std::size_t i = 0; i < f.eps.size(); ++i) {
      const bool forward = f.eps[i] == 1;
      const Subgroup& sub = forward ? H : K;
      const Element r = sub.left_coset_rep(f.g[i]);
      const Element s = G.multiply(G.inverse(r), f.g[i]);
      f.g[i] = r;
      if (!G.is_identity(s)) {
        const Element moved = forward ? p.theta().apply(s) : p.theta_inverse().apply(s);
        f.g[i + 1] = G.multiply(moved, f.g[i + 1]);
      }
    }
    std::vector<Letter> out;
    for (std::size_t i = 0; i < f.g.size(); ++i) {
      if (i > 0) out.push_back(Letter::t(f.eps[i - 1]));
      if (!G.is_identity(f.g[i])) out.push_back(Letter::g(f.g[i]));
    }
    return out;
  }

  PresentationPtr pres_;
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

/// Idempotent: words are kept in normal form.
inline Word normalize(const Word& w) { return w; }

inline Word normalize(const PresentationPtr& p, const std::vector<Letter>& letters) {
  return Word::from_letters(p, letters);
}

inline Word multiply(const Word& a, const Word& b) {
  a.check_same(b);
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  std::vector<Letter> all = a.letters();
  all.insert(all.end(), b.letters().begin(), b.letters().end());
  return Word::from_letters(a.presentation(), all);
}

inline Word multiply(const Word& a, const Word& b, const Word& c) { return multiply(multiply(a, b), c); }

inline Letter invert_letter(const Presentation& p, const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::FactorA: return Letter::a(p.factor(Side::A)->inverse(l.value));
    case Letter::Kind::FactorB: return Letter::b(p.factor(Side::B)->inverse(l.value));
    case Letter::Kind::Base: return Letter::g(p.base_group()->inverse(l.value));
    case Letter::Kind::Stable: return {Letter::Kind::Stable, Element(-l.value)};
  }
  return l;
}

inline Word invert(const Word& w) {
  std::vector<Letter> rev;
  rev.reserve(w.letters().size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    rev.push_back(invert_letter(*w.presentation(), *it));
  return Word::from_letters(w.presentation(), rev);
}

/// delta * w * delta^-1.
inline Word conjugate(const Word& w, const Word& delta) { return multiply(delta, w, invert(delta)); }

inline Word power(const Word& w, long long k) {
  Word base = k < 0 ? invert(w) : w;
  Word result(w.presentation());
  Word acc = base;
  for (unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k) : k; e > 0; e >>= 1) {
    if (e & 1) result = multiply(result, acc);
    if (e > 1) acc = multiply(acc, acc);
  }
  return result;
}

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator * core * conjugator^-1
};

/// Conjugates w until it is cyclically reduced: an amalgam core has at most
/// one syllable or starts and ends in different factors; an HNN core has no
/// stable letters or admits no pinch across its ends.
inline CyclicReduction cyclically_reduce(const Word& w) {
  const PresentationPtr& p = w.presentation();
  Word core = w;
  Word conj(p);
  if (p->is_amalgam()) {
    while (core.letters().size() >= 2 && core.letters().front().side() == core.letters().back().side()) {
      Word first = Word::generator(p, core.letters().front());
      core = multiply(invert(first), core, first);
      conj = multiply(conj, first);
    }
    return {core, conj};
  }
  const Subgroup& H = p->associated();
  const Subgroup& K = p->associated_image();
  const Group& G = *p->base_group();
  for (;;) {
    detail::HnnForm f = core.hnn_form();
    if (f.eps.empty()) break;
    const int first = f.eps.front(), last = f.eps.back();
    const Element across = G.multiply(f.g.back(), f.g.front());
    const bool pinch = (last == -1 && first == 1 && H.contains(across)) ||
                       (last == 1 && first == -1 && K.contains(across));
    if (!pinch) break;
    Word delta = Word::from_letters(p, {Letter::g(f.g.front()), Letter::t(first)});
    core = multiply(invert(delta), core, delta);
    conj = multiply(conj, delta);
  }
  return {core, conj};
}

/// A symmetric generating set: the non-identity elements of each finite
/// vertex group (b^±1 over the integers), plus t^±1 for HNN.
inline std::vector<Word> generators(const PresentationPtr& p) {
  std::vector<Word> out;
  auto add_group = [&](const Group& g, auto make) {
    if (g.is_integers()) {
      out.push_back(Word::from_letters(p, {make(Element(1))}));
      out.push_back(Word::from_letters(p, {make(Element(-1))}));
      return;
    }
    for (const auto& x : g.elements())
      if (!g.is_identity(x)) out.push_back(Word::from_letters(p, {make(x)}));
  };
  if (p->is_amalgam()) {
    add_group(*p->factor(Side::A), [](Element x) { return Letter::a(std::move(x)); });
    add_group(*p->factor(Side::B), [](Element x) { return Letter::b(std::move(x)); });
  } else {
    add_group(*p->base_group(), [](Element x) { return Letter::g(std::move(x)); });
    out.push_back(Word::from_letters(p, {Letter::t(1)}));
    out.push_back(Word::from_letters(p, {Letter::t(-1)}));
  }
  return out;
}

/// Compact human-readable rendering: amalgam letters as a<i>/b<i> (a^k,
/// b^k over the integers), HNN letters as g<i> (b^k over the integers) and
/// t / t^-1.
inline std::string to_string(const Word& w) {
  if (w.is_identity()) return "1";
  const Presentation& p = *w.presentation();
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case Letter::Kind::FactorA:
      case Letter::Kind::FactorB: {
        const char name = l.kind == Letter::Kind::FactorA ? 'a' : 'b';
        if (p.factor(l.side())->is_integers())
          out += std::string(1, name) + (l.value == 1 ? "" : "^" + l.value.str());
        else
          out += std::string(1, name) + l.value.str();
        break;
      }
      case Letter::Kind::Base:
        if (p.base_group()->is_integers())
          out += l.value == 1 ? std::string("b") : "b^" + l.value.str();
        else
          out += "g" + l.value.str();
        break;
      case Letter::Kind::Stable:
        out += l.value == 1 ? std::string("t") : "t^" + l.value.str();
        break;
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << to_string(w); }

}  // namespace bass
