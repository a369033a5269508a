#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/algebra.hpp"

namespace sullivan {

/// Extends generator images multiplicatively: e -> sum c * prod image(g)^k.
/// Images may carry polynomial coefficients (generic morphisms).
template <class C>
Element<C> apply_images(const std::vector<Element<C>>& images, const Universe& target, const RElement& e) {
  Element<C> out(target);
  std::map<std::pair<std::uint32_t, std::uint32_t>, Element<C>> powers;
  auto power = [&](auto&& self, std::uint32_t g, std::uint32_t k) -> const Element<C>& {
    auto key = std::make_pair(g, k);
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    Element<C> p = (k == 1) ? images[g] : self(self, g, k - 1) * images[g];
    return powers.emplace(key, std::move(p)).first->second;
  };
  for (const auto& [m, c] : e.terms()) {
    Element<C> term = Element<C>::one(target);
    for (const auto& [g, k] : m.factors()) {
      term = term * power(power, g, k);
      if (term.is_zero()) break;
    }
    out += term.scaled(C(c));
  }
  return out;
}

/// Degree-preserving algebra map between Sullivan algebras, given on generators.
class Morphism {
 public:
  Morphism(AlgebraPtr source, AlgebraPtr target, std::vector<RElement> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->size()) throw ValidationError("morphism must assign every source generator");
    const auto& gs = source_->generators();
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (!images_[i].universe()) images_[i] = target_->zero();
      require_same(target_->universe(), images_[i].universe());
      if (!images_[i].has_degree(gs[i].degree)) {
        throw ValidationError("image of " + gs[i].name + " is not of degree " + std::to_string(gs[i].degree));
      }
    }
  }

  static Morphism identity(const AlgebraPtr& a) {
    std::vector<RElement> im;
    for (std::size_t i = 0; i < a->size(); ++i) im.push_back(a->gen(i));
    return Morphism(a, a, std::move(im));
  }

  /// Named assignment; unnamed generators map to zero.
  static Morphism from_map(const AlgebraPtr& src, const AlgebraPtr& tgt, const std::map<std::string, RElement>& m) {
    std::vector<RElement> im(src->size(), tgt->zero());
    for (const auto& [name, e] : m) im[static_cast<std::size_t>(src->generators().index_of(name))] = e;
    return Morphism(src, tgt, std::move(im));
  }

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const std::vector<RElement>& images() const { return images_; }
  const RElement& image(std::size_t i) const { return images_[i]; }
  const RElement& image(const std::string& name) const {
    return images_[static_cast<std::size_t>(source_->generators().index_of(name))];
  }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    if (!(*a.source_ == *b.source_) || !(*a.target_ == *b.target_)) return false;
    for (std::size_t i = 0; i < a.images_.size(); ++i)
      if (!(a.images_[i] == b.images_[i])) return false;
    return true;
  }

 private:
  AlgebraPtr source_, target_;
  std::vector<RElement> images_;
};

inline RElement apply(const Morphism& f, const RElement& e) {
  if (e.universe()) require_same(f.source()->universe(), e.universe());
  return apply_images(f.images(), f.target()->universe(), e);
}

/// g after f.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.target() != g.source() && !(*f.target() == *g.source())) {
    throw DomainMismatch("compose: target of the first map is not the source of the second");
  }
  std::vector<RElement> im;
  im.reserve(f.images().size());
  for (const auto& e : f.images()) im.push_back(apply(g, e));
  return Morphism(f.source(), g.target(), std::move(im));
}

/// Generators on which f(dg) != d(f(g)).
inline std::vector<std::string> dga_failures(const Morphism& f) {
  std::vector<std::string> bad;
  const auto& src = *f.source();
  for (std::size_t i = 0; i < src.size(); ++i) {
    RElement lhs = apply(f, src.d(i));
    RElement rhs = differentiate(*f.target(), f.image(i));
    if (!(lhs == rhs)) bad.push_back(src.generators()[i].name);
  }
  return bad;
}

inline bool is_dga_morphism(const Morphism& f) { return dga_failures(f).empty(); }

}  // namespace sullivan
