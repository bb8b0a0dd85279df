#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "bass/group.hpp"

namespace bass {

enum class Side : std::uint8_t { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

/// A one-edge splitting: an amalgam A *_C B (two embeddings of the edge
/// group C) or an HNN extension HNN(G, H, theta).
class Presentation {
 public:
  enum class Kind { Amalgam, Hnn };

  static std::shared_ptr<const Presentation> amalgam(Embedding into_a, Embedding into_b) {
    if (!same_group(into_a.source(), into_b.source()))
      fail(ErrorCode::InvalidEmbedding, "amalgam embeddings must share the edge group");
    if (!into_a.domain().is_whole() || !into_b.domain().is_whole())
      fail(ErrorCode::InvalidEmbedding, "amalgam embeddings must be defined on the whole edge group");
    auto p = std::shared_ptr<Presentation>(new Presentation(Kind::Amalgam));
    p->edge_sub_a_.emplace(into_a.image());
    p->edge_sub_b_.emplace(into_b.image());
    p->into_a_.emplace(std::move(into_a));
    p->into_b_.emplace(std::move(into_b));
    return p;
  }

  /// A * B, realized as the amalgam over the trivial group.
  static std::shared_ptr<const Presentation> free_product(GroupPtr a, GroupPtr b) {
    auto trivial = Subgroup::whole(Group::cyclic(1));
    return amalgam(Embedding::from_images(std::move(a), trivial, {Element(0)}),
                   Embedding::from_images(std::move(b), trivial, {Element(0)}));
  }

  /// theta is an injective homomorphism whose domain is the associated
  /// subgroup H of G, with values in G.
  static std::shared_ptr<const Presentation> hnn(Embedding theta) { return make_hnn(std::move(theta)); }

  /// BS(m,n) = HNN(Z, |m|Z, |m|k -> sign(m) n k).
  static std::shared_ptr<const Presentation> baumslag_solitar(long long m, long long n) {
    if (m == 0 || n == 0) fail(ErrorCode::InvalidArgument, "BS(m,n) needs m != 0 and n != 0");
    auto z = Group::integers();
    const Integer gen_image = Integer(m < 0 ? -n : n);
    auto p = make_hnn(Embedding::from_multiplier(z, Subgroup::stride(z, m), gen_image));
    p->bs_ = std::pair{m, n};
    return p;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_amalgam() const noexcept { return kind_ == Kind::Amalgam; }
  bool is_hnn() const noexcept { return kind_ == Kind::Hnn; }

  // -- amalgam data --
  const GroupPtr& factor(Side s) const { return embedding(s).target(); }
  const GroupPtr& edge_group() const { return embedding(Side::A).source(); }
  const Embedding& embedding(Side s) const {
    require(Kind::Amalgam);
    return s == Side::A ? *into_a_ : *into_b_;
  }
  /// The image of C inside the factor.
  const Subgroup& edge_subgroup(Side s) const {
    require(Kind::Amalgam);
    return s == Side::A ? *edge_sub_a_ : *edge_sub_b_;
  }

  // -- HNN data --
  const GroupPtr& base_group() const { return theta().source(); }
  const Subgroup& associated() const { return theta().domain(); }
  const Subgroup& associated_image() const {
    require(Kind::Hnn);
    return *image_sub_;
  }
  const Embedding& theta() const {
    require(Kind::Hnn);
    return *theta_;
  }
  const Embedding& theta_inverse() const {
    require(Kind::Hnn);
    return *theta_inverse_;
  }

  std::optional<std::pair<long long, long long>> bs_parameters() const { return bs_; }

  /// Group of the vertex stabilizer at the base vertex (A or G).
  const GroupPtr& base_vertex_group() const { return is_amalgam() ? factor(Side::A) : base_group(); }

  void require(Kind k) const {
    if (kind_ != k)
      fail(ErrorCode::WrongPresentationKind,
           k == Kind::Amalgam ? "amalgam presentation required" : "HNN presentation required");
  }

 private:
  explicit Presentation(Kind k) : kind_(k) {}

  static std::shared_ptr<Presentation> make_hnn(Embedding theta) {
    if (!same_group(theta.source(), theta.target()))
      fail(ErrorCode::InvalidEmbedding, "theta must map a subgroup of G into G");
    auto p = std::shared_ptr<Presentation>(new Presentation(Kind::Hnn));
    p->theta_inverse_.emplace(theta.inverse());
    p->image_sub_.emplace(theta.image());
    p->theta_.emplace(std::move(theta));
    return p;
  }

  Kind kind_;
  std::optional<Embedding> into_a_, into_b_;
  std::optional<Subgroup> edge_sub_a_, edge_sub_b_;
  std::optional<Embedding> theta_, theta_inverse_;
  std::optional<Subgroup> image_sub_;
  std::optional<std::pair<long long, long long>> bs_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

}  // namespace bass
