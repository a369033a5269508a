#pragma once

// Ellipticity through the associated pure algebra: the quotient of the
// polynomial ring on even generators by the pure differentials of the odd
// generators must be finite-dimensional, i.e. every even variable has a pure
// power among the Groebner leading terms.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "sullivan/cohomology.hpp"
#include "sullivan/groebner.hpp"
#include "sullivan/mg.hpp"
#include "sullivan/serialize.hpp"

namespace sullivan {

struct ExactWitness {
  RElement target;
  RElement preimage;
};

struct EllipticityCertificate {
  std::vector<std::string> variables;             ///< even generators in order of the monomial order
  std::vector<RElement> pure_ideal_generators;    ///< pure differentials of the odd generators
  std::vector<std::string> groebner_basis;        ///< reduced basis, printed
  std::vector<std::string> leading_terms;
  std::map<std::string, std::uint32_t> nilpotence_exponents;  ///< smallest pure-power leading term
  std::vector<ExactWitness> witnesses;
  std::size_t pairs_processed = 0;
  bool valid = false;
};

namespace detail {

inline std::string exponents_to_string(const Exponents& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

inline std::string gpoly_to_string(const GPoly& p, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    bool neg = c < 0;
    Rational a = abs(c);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string m = exponents_to_string(e, names);
    if (a != 1 || m == "1") out += a.get_str() + (m == "1" ? "" : "*");
    if (m != "1") out += m;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Witness identities for the pure part of an MGAlgebra: x1^17 and x2^13 are
/// boundaries of explicit elements. Each identity is checked by direct
/// expansion and the exactness solver must also find a preimage.
inline std::vector<ExactWitness> mg_pure_witnesses(const MGAlgebra& mg, std::size_t budget = kDefaultMonomialBudget) {
  SullivanAlgebra pure = pure_part(*mg);
  const auto& u = pure.universe();
  std::vector<ExactWitness> out{
      {parse_element(u, "x1^17"), parse_element(u, "z*x1^2 - y2*x2^10")},
      {parse_element(u, "x2^13"), parse_element(u, "z*x2 - y1*x1^12")},
  };
  for (const auto& w : out) {
    if (!(differentiate(pure, w.preimage) == w.target)) {
      throw InvariantViolation("pure differential of " + w.preimage.to_string() + " is not " + w.target.to_string());
    }
    auto ans = solve_exactness(pure, w.target, budget);
    if (!ans) throw InvariantViolation(w.target.to_string() + " is not exact in the pure algebra: " + ans.reason);
  }
  return out;
}

inline EllipticityCertificate ellipticity_certificate(const SullivanAlgebra& alg,
                                                      std::size_t pair_budget = kDefaultGroebnerBudget) {
  EllipticityCertificate cert;
  const auto& gs = alg.generators();
  SullivanAlgebra pure = pure_part(alg);
  std::vector<std::size_t> even;
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (!gs[i].odd()) even.push_back(i);
  std::stable_sort(even.begin(), even.end(), [&](auto a, auto b) { return gs[a].degree > gs[b].degree; });
  std::vector<std::uint32_t> weights;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < even.size(); ++k) {
    cert.variables.push_back(gs[even[k]].name);
    weights.push_back(static_cast<std::uint32_t>(gs[even[k]].degree));
    slot[even[k]] = k;
  }
  WeightedGrevlex order(weights);
  std::vector<GPoly> ideal;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!gs[i].odd()) continue;
    const RElement& d = pure.d(i);
    cert.pure_ideal_generators.push_back(d);
    GPoly p(order);
    for (const auto& [m, c] : d.terms()) {
      Exponents e(even.size(), 0);
      for (const auto& [g, k] : m.factors()) e[slot.at(g)] = k;
      p.add(e, c);
    }
    ideal.push_back(std::move(p));
  }
  auto gb = groebner_basis(ideal, order, pair_budget);
  cert.pairs_processed = gb.pairs_processed;
  for (const auto& p : gb.basis) {
    cert.groebner_basis.push_back(detail::gpoly_to_string(p, cert.variables));
    cert.leading_terms.push_back(detail::exponents_to_string(p.lead(), cert.variables));
    std::size_t support = 0, var = 0;
    for (std::size_t v = 0; v < p.lead().size(); ++v)
      if (p.lead()[v]) {
        ++support;
        var = v;
      }
    if (support == 1) {
      auto& slot_exp = cert.nilpotence_exponents[cert.variables[var]];
      slot_exp = slot_exp ? std::min(slot_exp, p.lead()[var]) : p.lead()[var];
    }
  }
  cert.valid = cert.nilpotence_exponents.size() == even.size();
  return cert;
}

inline EllipticityCertificate ellipticity_certificate(const MGAlgebra& mg,
                                                      std::size_t pair_budget = kDefaultGroebnerBudget,
                                                      std::size_t monomial_budget = kDefaultMonomialBudget) {
  auto cert = ellipticity_certificate(*mg, pair_budget);
  cert.witnesses = mg_pure_witnesses(mg, monomial_budget);
  return cert;
}

inline Json certificate_to_json(const EllipticityCertificate& c, long formal_dim) {
  Json w = Json::array();
  for (const auto& x : c.witnesses)
    w.push_back(Json{{"target", x.target.to_string()}, {"preimage", x.preimage.to_string()}});
  Json nil = Json::object();
  for (const auto& [k, v] : c.nilpotence_exponents) nil[k] = v;
  return Json{{"elliptic", c.valid},
              {"formal_dimension", formal_dim},
              {"witnesses", w},
              {"groebner_leading_terms", c.leading_terms},
              {"nilpotence_exponents", nil},
              {"groebner_pairs", c.pairs_processed}};
}

}  // namespace sullivan
