#pragma once

// Graphs with a prescribed automorphism group: the Cayley graph of a
// generating set, each coloured directed edge replaced by a path gadget whose
// pendant tails encode colour and direction.

#include <string>
#include <vector>

#include "sullivan/automorphism.hpp"
#include "sullivan/graph.hpp"
#include "sullivan/perm_group.hpp"

namespace sullivan {

struct FruchtResult {
  Graph graph;
  PermGroup automorphisms;
  IsoResult witness;  ///< group element index -> automorphism index
};

/// Asymmetric spider with legs of lengths 1, 2 and 3 (7 vertices).
inline Graph asymmetric_tree() {
  return Graph({"o", "p1", "q1", "q2", "r1", "r2", "r3"},
               {{"o", "p1"}, {"o", "q1"}, {"q1", "q2"}, {"o", "r1"}, {"r1", "r2"}, {"r2", "r3"}});
}

namespace detail {

inline void attach_tail(Graph& g, const std::string& at, std::size_t length) {
  std::string prev = at;
  for (std::size_t k = 1; k <= length; ++k) {
    std::string t = at + "_t" + std::to_string(k);
    g.add_vertex(t);
    g.add_edge(prev, t);
    prev = t;
  }
}

}  // namespace detail

/// Builds the gadget graph for `group` with the given generators (identity
/// and repeated entries are ignored) and checks Aut(graph) = group.
inline FruchtResult frucht_graph(const PermGroup& group, const std::vector<Permutation>& generators,
                                 std::size_t vertex_budget = 4 * kDefaultVertexBudget) {
  Graph g;
  std::vector<Permutation> gens;
  for (const auto& s : generators) {
    if (!group.contains(s)) throw ValidationError("generator " + s.to_cycles() + " is not in the group");
    if (!s.is_identity() && std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
  }
  if (group.order() == 1 || gens.empty()) {
    if (group.order() != 1) throw ValidationError("generators do not generate the group");
    g = asymmetric_tree();
  } else {
    if (PermGroup(group.degree(), gens).order() != group.order()) {
      throw ValidationError("generators do not generate the group");
    }
    const std::size_t n = group.order();
    auto cayley = [](std::size_t e) { return "g" + std::to_string(e); };
    for (std::size_t e = 0; e < n; ++e) g.add_vertex(cayley(e));
    const bool lone_involution = gens.size() == 1 && (gens[0] * gens[0]).is_identity();
    for (std::size_t i = 1; i <= gens.size(); ++i) {
      const auto& s = gens[i - 1];
      const bool involution = (s * s).is_identity();
      for (std::size_t e = 0; e < n; ++e) {
        std::size_t f = group.index_of(group.element(e) * s);
        if (involution && f < e) continue;
        std::string tag = std::to_string(i) + "_" + std::to_string(e);
        std::string u = "u" + tag, v = "v" + tag;
        g.add_vertex(u);
        g.add_vertex(v);
        g.add_edge(cayley(e), u);
        g.add_edge(u, v);
        g.add_edge(v, cayley(f));
        std::size_t tu = 2 * i - 1, tv = involution ? 2 * i - 1 : 2 * i;
        if (lone_involution) tu = tv = 2 * i;
        detail::attach_tail(g, u, tu);
        detail::attach_tail(g, v, tv);
      }
    }
  }
  if (!g.connected() || g.size() < 2) throw InvariantViolation("gadget graph is not connected");
  PermGroup aut = automorphism_group(g, vertex_budget, std::max(group.order(), kDefaultOrderBudget));
  IsoResult iso = groups_isomorphic(group, aut);
  if (!iso) {
    throw InvariantViolation("gadget graph has automorphism group of order " + std::to_string(aut.order()) +
                             ", expected a group isomorphic to the input of order " + std::to_string(group.order()));
  }
  return FruchtResult{std::move(g), std::move(aut), std::move(iso)};
}

/// Uses the group's stored generators.
inline FruchtResult frucht_graph(const PermGroup& group) { return frucht_graph(group, group.generators()); }

}  // namespace sullivan
