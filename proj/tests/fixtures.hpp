#pragma once

#include <random>
#include <unordered_set>
#include <vector>

#include "bass/presentation.hpp"
#include "bass/word.hpp"

namespace fixtures {

using namespace bass;

// S3 element indices (lexicographic permutations, composition left to right):
// 0 = id, 1 = (23), 2 = (12), 3 = (123), 4 = (132), 5 = (13).
enum S3 : unsigned { kId = 0, k23 = 1, k12 = 2, k123 = 3, k132 = 4, k13 = 5 };

/// S3 *_{<(12)>} C4, C2 embedded as <(12)> and as {0, 2}.
inline PresentationPtr s3_c2_c4() {
  auto c2 = Subgroup::whole(Group::cyclic(2));
  return Presentation::amalgam(Embedding::from_images(Group::symmetric(3), c2, {0, k12}),
                               Embedding::from_images(Group::cyclic(4), c2, {0, 2}));
}

/// S3 *_{A3} S3 with identity embeddings.
inline PresentationPtr s3_a3_s3() {
  auto c3 = Subgroup::whole(Group::cyclic(3));
  auto s3 = Group::symmetric(3);
  return Presentation::amalgam(Embedding::from_images(s3, c3, {0, k123, k132}),
                               Embedding::from_images(s3, c3, {0, k123, k132}));
}

/// <a> *_{a^2 = b^3} <b>.
inline PresentationPtr torus_knot(long long m = 2, long long n = 3) {
  auto z = Group::integers();
  return Presentation::amalgam(Embedding::from_multiplier(z, Subgroup::whole(z), m),
                               Embedding::from_multiplier(z, Subgroup::whole(z), n));
}

inline PresentationPtr free_c2_c3() { return Presentation::free_product(Group::cyclic(2), Group::cyclic(3)); }

/// G = C2 x C2 (pairs encoded 2g + h), H = first factor, theta the swap.
inline PresentationPtr c2xc2_swap() {
  auto g = Group::direct_product(*Group::cyclic(2), *Group::cyclic(2));
  auto h = Subgroup::from_elements(g, {0, 2});
  return Presentation::hnn(Embedding::from_images(g, h, {0, 1}));
}

/// G = S3, H = A3, theta = identity.
inline PresentationPtr s3_a3_identity() {
  auto g = Group::symmetric(3);
  auto h = Subgroup::from_elements(g, {0, k123, k132});
  return Presentation::hnn(Embedding::from_images(g, h, {0, k123, k132}));
}

inline PresentationPtr bs(long long m, long long n) { return Presentation::baumslag_solitar(m, n); }

inline Word word(const PresentationPtr& p, const std::vector<Letter>& letters) {
  return Word::from_letters(p, letters);
}

/// Every element of word length <= n over the symmetric generators.
inline std::vector<Word> sphere_union(const PresentationPtr& p, std::size_t n) {
  const auto gens = generators(p);
  std::unordered_set<Word, WordHash> seen{Word(p)};
  std::vector<Word> all{Word(p)}, frontier{Word(p)};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        Word x = multiply(w, g);
        if (seen.insert(x).second) next.push_back(x);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

/// Random raw letter sequence of length in [0, max_len] over the generating
/// letters of p.
inline std::vector<Letter> random_letters(const PresentationPtr& p, std::mt19937_64& rng, std::size_t max_len) {
  std::vector<Letter> pool;
  for (const auto& g : generators(p)) pool.push_back(g.letters().front());
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, pool.size() - 1);
  std::vector<Letter> out;
  for (std::size_t k = len(rng); k > 0; --k) out.push_back(pool[pick(rng)]);
  return out;
}

inline Word random_word(const PresentationPtr& p, std::mt19937_64& rng, std::size_t max_len) {
  return Word::from_letters(p, random_letters(p, rng, max_len));
}

}  // namespace fixtures
