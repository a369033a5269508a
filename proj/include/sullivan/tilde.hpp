#pragma once

// Extension of a Sullivan algebra by one odd generator y with dy = x, for a
// closed even element x with x^2 = d(z_witness). The element x*y - z_witness
// is closed.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sullivan/cohomology.hpp"
#include "sullivan/morphism.hpp"

namespace sullivan {

class TildePrecondition : public ValidationError {
 public:
  explicit TildePrecondition(const std::string& what) : ValidationError(what) {}
};

struct TildeExtension {
  AlgebraPtr base;
  AlgebraPtr extended;
  RElement x;                ///< over base
  RElement z_witness;        ///< over base, d(z_witness) = x^2
  RElement fundamental_rep;  ///< over extended: x*y - z_witness
  std::size_t y_index = 0;
  StructureReport structure;
  bool minimal = false;
};

/// Re-expresses a base element over a universe whose leading generators are
/// the base generators in the same order.
inline RElement embed(const RElement& e, const Universe& to) {
  RElement out(to);
  for (const auto& [m, c] : e.terms()) out.add_term(Monomial::from_sorted(*to, m.factors()), c);
  return out;
}

inline TildeExtension tilde_extend(const AlgebraPtr& base, const RElement& x, const RElement& z_witness,
                                   const std::string& y_name = "y") {
  auto k = x.degree();
  if (!k) throw TildePrecondition("x must be a nonzero homogeneous element");
  if (*k % 2 != 0) throw TildePrecondition("x has odd degree " + std::to_string(*k));
  if (!differentiate(*base, x).is_zero()) throw TildePrecondition("x is not closed");
  if (z_witness.is_zero() ? !(x * x).is_zero() : !z_witness.has_degree(2 * *k - 1)) {
    throw TildePrecondition("z_witness must be homogeneous of degree " + std::to_string(2 * *k - 1));
  }
  if (!(differentiate(*base, z_witness) == x * x)) throw TildePrecondition("d(z_witness) differs from x^2");
  const auto& gs = base->generators();
  if (gs.find(y_name)) throw TildePrecondition("generator name '" + y_name + "' is taken");
  auto gens = gs.generators();
  gens.push_back({y_name, *k - 1});
  int min_degree = std::min(2, *k - 1);
  auto u = std::make_shared<const GeneratorSet>(std::move(gens), min_degree);
  std::vector<RElement> d;
  for (std::size_t i = 0; i < base->size(); ++i) d.push_back(embed(base->d(i), u));
  d.push_back(embed(x, u));
  TildeExtension te;
  te.base = base;
  te.extended = std::make_shared<const SullivanAlgebra>(u, std::move(d));
  te.x = x;
  te.z_witness = z_witness;
  te.y_index = base->size();
  te.fundamental_rep = embed(x, u) * te.extended->gen(te.y_index) - embed(z_witness, u);
  if (!differentiate(*te.extended, te.fundamental_rep).is_zero()) {
    throw InvariantViolation("x*y - z_witness is not closed");
  }
  te.structure = check_structure(*te.extended);
  if (!te.structure.ok_filtered()) throw InvariantViolation("tilde extension fails the Sullivan conditions");
  te.minimal = te.structure.minimal;
  return te;
}

struct TildeMorphism {
  Morphism map;
  Rational scalar;  ///< f(x) = scalar * x + d(m_x)
  RElement m_x;
};

/// Extends f to the tilde algebra by y -> a*y + m_x. Refused when f(x) is not
/// a multiple of x modulo boundaries.
inline TildeMorphism extend_to_tilde(const TildeExtension& te, const Morphism& f,
                                     std::size_t budget = kDefaultMonomialBudget) {
  if (!(*f.source() == *te.base) || !(*f.target() == *te.base)) {
    throw DomainMismatch("morphism is not an endomorphism of the base algebra");
  }
  if (!is_dga_morphism(f)) throw ValidationError("morphism does not commute with d");
  RElement fx = apply(f, te.x);
  auto sw = scalar_on_class(*te.base, fx, te.x, budget);
  if (!sw) throw ValidationError("f(x) is not a multiple of x modulo boundaries");
  const auto& u = te.extended->universe();
  std::vector<RElement> images;
  for (std::size_t i = 0; i < te.base->size(); ++i) images.push_back(embed(f.image(i), u));
  images.push_back(te.extended->gen(te.y_index).scaled(sw->scalar) + embed(sw->witness, u));
  Morphism ext(te.extended, te.extended, std::move(images));
  if (!is_dga_morphism(ext)) throw InvariantViolation("extension does not commute with d");
  return TildeMorphism{std::move(ext), sw->scalar, sw->witness};
}

/// Scalar by which an endomorphism of the extended algebra acts on the class
/// of x*y - z_witness (computed directly; needs that degree within budget).
inline std::optional<Rational> top_scalar(const TildeExtension& te, const Morphism& g,
                                          std::size_t budget = kDefaultMonomialBudget) {
  auto sw = scalar_on_class(*te.extended, apply(g, te.fundamental_rep), te.fundamental_rep, budget);
  if (!sw) return std::nullopt;
  return sw->scalar;
}

}  // namespace sullivan
