#pragma once

// Generic endomorphism of a Sullivan algebra: every generator goes to the
// full degree basis with one unknown coefficient per monomial. Commutation
// with d then becomes a system of polynomial equations in the unknowns.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sullivan/mg.hpp"
#include "sullivan/morphism.hpp"

namespace sullivan {

struct Unknown {
  std::string name;
  std::size_t generator = 0;  ///< generator whose image carries it
  Monomial monomial;          ///< basis monomial it multiplies
};

struct GenericMorphism {
  AlgebraPtr algebra;
  std::vector<Unknown> unknowns;               ///< index = polynomial variable
  std::vector<PElement> templates;             ///< image template per generator
  std::vector<std::vector<Var>> unknowns_of;   ///< per generator, in basis order

  const std::string& name(Var v) const { return unknowns[v].name; }
  std::function<std::string(Var)> namer() const {
    return [this](Var v) { return unknowns[v].name; };
  }
  std::optional<Var> find(const std::string& name) const {
    for (Var v = 0; v < unknowns.size(); ++v)
      if (unknowns[v].name == name) return v;
    return std::nullopt;
  }
};

using UnknownNamer = std::function<std::string(std::size_t generator, const Monomial& m, std::size_t k)>;

inline GenericMorphism generic_ansatz(const AlgebraPtr& alg, const UnknownNamer& namer,
                                      std::size_t budget = kDefaultMonomialBudget) {
  GenericMorphism gm;
  gm.algebra = alg;
  const auto& gs = alg->generators();
  for (std::size_t g = 0; g < gs.size(); ++g) {
    PElement t(alg->universe());
    std::vector<Var> vars;
    auto basis = basis_of_degree(*alg, gs[g].degree, budget);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      Var v = static_cast<Var>(gm.unknowns.size());
      gm.unknowns.push_back(Unknown{namer(g, basis[k], k), g, basis[k]});
      t.add_term(basis[k], Polynomial::variable(v));
      vars.push_back(v);
    }
    gm.templates.push_back(std::move(t));
    gm.unknowns_of.push_back(std::move(vars));
  }
  return gm;
}

/// Unknown names "u<generator>_<k>".
inline GenericMorphism generic_ansatz(const AlgebraPtr& alg, std::size_t budget = kDefaultMonomialBudget) {
  return generic_ansatz(
      alg, [&](std::size_t g, const Monomial&, std::size_t k) {
        return alg->generators()[g].name + "_" + std::to_string(k);
      },
      budget);
}

namespace detail {

/// Unknown names for M_G following its fixed term shapes; any monomial
/// outside those shapes is an invariant violation.
inline std::string mg_unknown_name(const MGAlgebra& mg, std::size_t g, const Monomial& m) {
  const auto& gs = mg->generators();
  const std::size_t n = mg.vertex_count();
  auto bad = [&]() -> std::string {
    throw InvariantViolation("unexpected term " + m.to_string(gs) + " in the image of " + gs[g].name);
  };
  auto label_of_x = [&](std::uint32_t idx) -> const std::string& { return mg.labels[idx - mg.xv(0)]; };
  auto is_xv = [&](std::uint32_t idx) { return idx >= mg.xv(0) && idx < mg.xv(0) + n; };
  auto is_zv = [&](std::uint32_t idx) { return idx >= mg.zv(0) && idx < mg.zv(0) + n; };
  const auto& f = m.factors();
  if (g == mg.x1()) return m == Monomial::generator(gs, 0) ? "a1" : bad();
  if (g == mg.x2()) return m == Monomial::generator(gs, 1) ? "a2" : bad();
  if (g >= mg.y(1) && g <= mg.y(3)) return m == Monomial::generator(gs, static_cast<std::uint32_t>(g)) ? "b" + std::to_string(g - 1) : bad();
  if (is_xv(static_cast<std::uint32_t>(g))) {
    const std::string& v = label_of_x(static_cast<std::uint32_t>(g));
    if (m == Monomial::generator(gs, 0, 5)) return "a1(" + v + ")";
    if (m == Monomial::generator(gs, 1, 4)) return "a2(" + v + ")";
    if (f.size() == 1 && f[0].second == 1 && is_xv(f[0].first)) return "a(" + v + "," + label_of_x(f[0].first) + ")";
    return bad();
  }
  if (g == mg.z() || is_zv(static_cast<std::uint32_t>(g))) {
    const bool top = g == mg.z();
    const std::string v = top ? "" : mg.labels[g - mg.zv(0)];
    if (m == Monomial::generator(gs, static_cast<std::uint32_t>(mg.z()))) return top ? "c" : "e(" + v + ")";
    if (f.size() == 1 && is_zv(f[0].first)) {
      const std::string& w = mg.labels[f[0].first - mg.zv(0)];
      return top ? "c(" + w + ")" : "c(" + v + "," + w + ")";
    }
    // y_i x1^p x2^q, possibly times one x_w.
    int yi = 0;
    std::string w;
    std::uint32_t p = 0, q = 0;
    for (const auto& [idx, e] : f) {
      if (idx == 0) {
        p = e;
      } else if (idx == 1) {
        q = e;
      } else if (idx >= 2 && idx <= 4) {
        if (yi) return bad();
        yi = static_cast<int>(idx) - 1;
      } else if (is_xv(idx) && e == 1 && w.empty()) {
        w = label_of_x(idx);
      } else {
        return bad();
      }
    }
    static const char* family[] = {"", "alpha", "beta", "gamma"};
    if (!yi) return bad();
    const std::uint32_t p0 = static_cast<std::uint32_t>(yi) + 1;
    int group = 0;
    if (!w.empty() && p == p0 && q == 4 - static_cast<std::uint32_t>(yi)) group = 3;
    if (w.empty() && p == p0 && q == 8 - static_cast<std::uint32_t>(yi)) group = 1;
    if (w.empty() && p == p0 + 5 && q == 4 - static_cast<std::uint32_t>(yi)) group = 2;
    if (!group) return bad();
    std::string args = top ? w : (w.empty() ? v : v + "," + w);
    return std::string(family[yi]) + std::to_string(group) + (args.empty() ? "" : "(" + args + ")");
  }
  return bad();
}

}  // namespace detail

/// Generic endomorphism of M_G with unknowns named after the term shapes
/// (a1, a2, b1..b3, a(v,w), a1(v), a2(v), c, c(w), alpha1, ..., e(v), c(v,w),
/// alpha3(v,w), ...). Checks the per-generator unknown counts.
inline GenericMorphism generic_ansatz(const MGAlgebra& mg, std::size_t budget = kDefaultMonomialBudget) {
  auto gm = generic_ansatz(
      mg.algebra, [&](std::size_t g, const Monomial& m, std::size_t) { return detail::mg_unknown_name(mg, g, m); },
      budget);
  const std::size_t n = mg.vertex_count();
  for (std::size_t g = 0; g < mg->size(); ++g) {
    std::size_t expected = 1;
    if (g >= mg.xv(0) && g < mg.xv(0) + n) expected = n + 2;
    if (g >= mg.z()) expected = 7 + 4 * n;
    if (gm.unknowns_of[g].size() != expected) {
      throw InvariantViolation("image template of " + mg->generators()[g].name + " has " +
                               std::to_string(gm.unknowns_of[g].size()) + " unknowns, expected " +
                               std::to_string(expected));
    }
  }
  return gm;
}

/// One equation per monomial of f(dg) - d(f(g)).
struct Constraint {
  Polynomial poly;
  std::size_t generator = 0;
  Monomial monomial;
};

struct ConstraintSystem {
  const GenericMorphism* morphism = nullptr;
  std::vector<Constraint> equations;

  std::size_t unknown_count() const { return morphism->unknowns.size(); }
  std::string provenance(std::size_t i) const {
    const auto& gs = morphism->algebra->generators();
    return gs[equations[i].generator].name + ": " + equations[i].monomial.to_string(gs);
  }
  /// The equation attached to a generator and monomial, if any.
  std::optional<Polynomial> at(const std::string& generator, const std::string& monomial) const {
    const auto& gs = morphism->algebra->generators();
    for (const auto& c : equations)
      if (gs[c.generator].name == generator && c.monomial.to_string(gs) == monomial) return c.poly;
    return std::nullopt;
  }
};

inline ConstraintSystem constraint_system(const GenericMorphism& gm) {
  ConstraintSystem cs;
  cs.morphism = &gm;
  const auto& alg = *gm.algebra;
  for (std::size_t g = 0; g < alg.size(); ++g) {
    PElement lhs = apply_images(gm.templates, alg.universe(), alg.d(g));
    PElement rhs = differentiate(alg, gm.templates[g]);
    PElement diff = lhs - rhs;
    for (const auto& [m, p] : diff.terms()) cs.equations.push_back(Constraint{p, g, m});
  }
  return cs;
}

/// Specializes a generic morphism: unknown v takes value values(v).
inline Morphism specialize(const GenericMorphism& gm, const std::function<Polynomial(Var)>& value) {
  std::vector<RElement> images;
  for (const auto& t : gm.templates) {
    RElement e(gm.algebra->universe());
    for (const auto& [m, p] : t.terms()) {
      Polynomial q = 0;
      for (const auto& term : p.terms()) {
        Polynomial prod = term.coeff;
        for (const auto& [v, k] : term.mono.factors()) prod = prod * value(v).pow(k);
        q += prod;
      }
      if (!q.is_constant()) throw ValidationError("specialization leaves unknowns in an image");
      e.add_term(m, q.constant_value());
    }
    images.push_back(std::move(e));
  }
  return Morphism(gm.algebra, gm.algebra, std::move(images));
}

}  // namespace sullivan
