#pragma once

// The minimal Sullivan algebra attached to a finite connected graph.
//
//   |x1| = 8, |x2| = 10, |y1| = 33, |y2| = 35, |y3| = 37, |x_v| = 40,
//   |z| = |z_v| = 119
//
//   dy1 = x1^3 x2,  dy2 = x1^2 x2^2,  dy3 = x1 x2^3
//   dz  = y1 y2 x1^4 x2^2 - y1 y3 x1^5 x2 + y2 y3 x1^6 + x1^15 + x2^12
//   dz_v = x_v^3 + sum_{w ~ v} x_v x_w (u1 x1^5 + u2 x2^4)
//
// (u1, u2) defaults to (0, 1).

#include <memory>
#include <string>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/graph.hpp"
#include "sullivan/serialize.hpp"

namespace sullivan {

class DisconnectedGraph : public ValidationError {
 public:
  DisconnectedGraph() : ValidationError("graph is not connected") {}
};

class SingleVertexGraph : public ValidationError {
 public:
  SingleVertexGraph() : ValidationError("graph needs more than one vertex") {}
};

class TrivialVariant : public ValidationError {
 public:
  TrivialVariant() : ValidationError("variant (u1, u2) must not be (0, 0)") {}
};

class NotMinimal : public ValidationError {
 public:
  explicit NotMinimal(const std::string& what) : ValidationError(what) {}
};

inline std::string x_name(const std::string& label) { return "x[" + label + "]"; }
inline std::string z_name(const std::string& label) { return "z[" + label + "]"; }

struct MGAlgebra {
  AlgebraPtr algebra;
  Graph graph;
  Rational u1 = 0, u2 = 1;
  std::vector<std::string> labels;  ///< sorted; generator order of the x_v and z_v

  std::size_t x1() const { return 0; }
  std::size_t x2() const { return 1; }
  std::size_t y(int i) const { return 1 + static_cast<std::size_t>(i); }
  std::size_t xv(std::size_t k) const { return 5 + k; }
  std::size_t z() const { return 5 + labels.size(); }
  std::size_t zv(std::size_t k) const { return 6 + labels.size() + k; }
  std::size_t vertex_count() const { return labels.size(); }
  /// Position of a label in the sorted order.
  std::size_t slot(const std::string& label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) throw ValidationError("unknown vertex '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
  }
  const SullivanAlgebra& operator*() const { return *algebra; }
  const SullivanAlgebra* operator->() const { return algebra.get(); }
};

inline MGAlgebra build_mg(const Graph& g, const Rational& u1 = 0, const Rational& u2 = 1) {
  if (g.size() < 2) throw SingleVertexGraph();
  if (!g.connected()) throw DisconnectedGraph();
  if (u1 == 0 && u2 == 0) throw TrivialVariant();
  MGAlgebra mg;
  mg.graph = g;
  mg.u1 = u1;
  mg.u2 = u2;
  mg.labels = g.sorted_labels();
  std::vector<Generator> gens{{"x1", 8}, {"x2", 10}, {"y1", 33}, {"y2", 35}, {"y3", 37}};
  for (const auto& l : mg.labels) gens.push_back({x_name(l), 40});
  gens.push_back({"z", 119});
  for (const auto& l : mg.labels) gens.push_back({z_name(l), 119});
  auto u = std::make_shared<const GeneratorSet>(std::move(gens));
  std::vector<RElement> d(u->size(), RElement(u));
  auto gen = [&](std::size_t i, std::uint32_t e = 1) { return RElement::generator(u, static_cast<std::uint32_t>(i), e); };
  auto x1 = gen(0), x2 = gen(1), y1 = gen(2), y2 = gen(3), y3 = gen(4);
  d[2] = x1.pow(3) * x2;
  d[3] = x1.pow(2) * x2.pow(2);
  d[4] = x1 * x2.pow(3);
  d[mg.z()] = y1 * y2 * x1.pow(4) * x2.pow(2) - y1 * y3 * x1.pow(5) * x2 + y2 * y3 * x1.pow(6) + x1.pow(15) +
              x2.pow(12);
  RElement coupling = x1.pow(5).scaled(u1) + x2.pow(4).scaled(u2);
  for (std::size_t k = 0; k < mg.labels.size(); ++k) {
    auto xv = gen(mg.xv(k));
    RElement dz = xv.pow(3);
    auto vi = g.index_of(mg.labels[k]);
    for (auto wi : g.neighbors(vi)) dz += xv * gen(mg.xv(mg.slot(g.label(wi)))) * coupling;
    d[mg.zv(k)] = dz;
  }
  mg.algebra = std::make_shared<const SullivanAlgebra>(u, std::move(d));
  return mg;
}

/// Associated pure algebra: even generators closed, odd generators keep only
/// the monomials of their differential that involve no odd generator.
inline SullivanAlgebra pure_part(const SullivanAlgebra& alg) {
  const auto& gs = alg.generators();
  std::vector<RElement> d(alg.size(), alg.zero());
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (!gs[i].odd()) continue;
    for (const auto& [m, c] : alg.d(i).terms()) {
      bool even_only = true;
      for (const auto& [g, e] : m.factors()) even_only = even_only && !gs[g].odd();
      if (even_only) d[i].add_term(m, c);
    }
  }
  return SullivanAlgebra(alg.universe(), std::move(d));
}

/// Sum of odd generator degrees minus sum of (even degree - 1). Only defined
/// here for minimal algebras; other inputs should go through cohomology_dim.
inline long formal_dimension(const SullivanAlgebra& alg) {
  auto report = check_structure(alg);
  if (!report.minimal) {
    throw NotMinimal("formal dimension formula needs a minimal algebra; use cohomology_dim instead");
  }
  long n = 0;
  for (const auto& g : alg.generators().generators()) n += g.odd() ? g.degree : -(g.degree - 1);
  return n;
}

/// Non-isomorphism invariants of an MGAlgebra.
struct MGInvariants {
  std::size_t dim40 = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  long formal_dimension = 0;
};

inline MGInvariants invariants(const MGAlgebra& mg, std::size_t budget = kDefaultMonomialBudget) {
  return MGInvariants{basis_of_degree(*mg, 40, budget).size(), mg.graph.size(), mg.graph.edge_count(),
                      formal_dimension(*mg)};
}

}  // namespace sullivan
