#pragma once

// Graph automorphism groups by backtracking over a refined vertex colouring.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "sullivan/graph.hpp"
#include "sullivan/perm_group.hpp"

namespace sullivan {

inline constexpr std::size_t kDefaultVertexBudget = 64;

namespace detail {

/// Colour refinement seeded by (degree, distance profile); stable colours are
/// automorphism invariants.
inline std::vector<std::size_t> refined_colours(const Graph& g, const std::vector<std::vector<std::size_t>>& dist) {
  const std::size_t n = g.size();
  std::vector<std::size_t> colour(n);
  {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> keys(n);
    for (std::size_t v = 0; v < n; ++v) {
      auto prof = dist[v];
      std::sort(prof.begin(), prof.end());
      keys[v] = {g.degree(v), std::move(prof)};
      ids.emplace(keys[v], 0);
    }
    std::size_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) colour[v] = ids.at(keys[v]);
  }
  while (true) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> keys(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::size_t> nb;
      for (auto w : g.neighbors(v)) nb.push_back(colour[w]);
      std::sort(nb.begin(), nb.end());
      keys[v] = {colour[v], std::move(nb)};
      ids.emplace(keys[v], 0);
    }
    std::size_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    std::size_t before = *std::max_element(colour.begin(), colour.end()) + 1;
    for (std::size_t v = 0; v < n; ++v) colour[v] = ids.at(keys[v]);
    if (next == before) break;
  }
  return colour;
}

}  // namespace detail

/// Full automorphism group, points = vertex indices in declaration order.
inline PermGroup automorphism_group(const Graph& g, std::size_t vertex_budget = kDefaultVertexBudget,
                                    std::size_t order_budget = kDefaultOrderBudget) {
  const std::size_t n = g.size();
  if (n == 0) throw ValidationError("graph has no vertices");
  if (n > vertex_budget) {
    throw ResourceLimit("graph has " + std::to_string(n) + " vertices, above the budget of " +
                        std::to_string(vertex_budget));
  }
  std::vector<std::vector<std::size_t>> dist(n);
  for (std::size_t v = 0; v < n; ++v) dist[v] = g.distances_from(v);
  auto colour = detail::refined_colours(g, dist);
  std::vector<std::size_t> cell_size(n, 0);
  for (auto c : colour) ++cell_size[c];

  // Assignment order: BFS per component, rooted in the smallest cell.
  std::vector<std::size_t> order, parent(n, n);
  std::vector<char> placed(n, 0);
  while (order.size() < n) {
    std::size_t root = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!placed[v] && (root == n || cell_size[colour[v]] < cell_size[colour[root]])) root = v;
    placed[root] = 1;
    std::size_t head = order.size();
    order.push_back(root);
    for (; head < order.size(); ++head) {
      auto u = order[head];
      for (auto w : g.neighbors(u)) {
        if (!placed[w]) {
          placed[w] = 1;
          parent[w] = u;
          order.push_back(w);
        }
      }
    }
  }

  std::vector<Permutation> found;
  std::vector<std::uint32_t> image(n, 0);
  std::vector<char> used(n, 0);
  auto consistent = [&](std::size_t k, std::size_t cand) {
    auto v = order[k];
    for (std::size_t j = 0; j < k; ++j) {
      auto u = order[j];
      if (g.adjacent(v, u) != g.adjacent(cand, image[u])) return false;
      if (dist[v][u] != dist[cand][image[u]]) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      found.emplace_back(image);
      if (found.size() > order_budget) {
        throw ResourceLimit("automorphism group order exceeds the budget of " + std::to_string(order_budget));
      }
      return;
    }
    auto v = order[k];
    auto try_cand = [&](std::size_t cand) {
      if (used[cand] || colour[cand] != colour[v] || !consistent(k, cand)) return;
      used[cand] = 1;
      image[v] = static_cast<std::uint32_t>(cand);
      self(self, k + 1);
      used[cand] = 0;
    };
    if (parent[v] != n) {
      for (auto cand : g.neighbors(image[parent[v]])) try_cand(cand);
    } else {
      for (std::size_t cand = 0; cand < n; ++cand) try_cand(cand);
    }
  };
  search(search, 0);
  auto group = PermGroup::from_elements(n, found, order_budget);
  if (group.order() != found.size()) throw InvariantViolation("automorphism search produced a non-group");
  return group;
}

/// Edge-iff check of a vertex permutation.
inline bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.degree() != g.size()) return false;
  for (std::uint32_t i = 0; i < g.size(); ++i)
    for (std::uint32_t j = i + 1; j < g.size(); ++j)
      if (g.adjacent(i, j) != g.adjacent(p(i), p(j))) return false;
  return true;
}

/// Label form of a vertex permutation.
inline std::map<std::string, std::string> label_map(const Graph& g, const Permutation& p) {
  std::map<std::string, std::string> m;
  for (std::uint32_t i = 0; i < g.size(); ++i) m[g.label(i)] = g.label(p(i));
  return m;
}

/// Cycle notation over labels, e.g. "(a b)(c d e)"; "()" for the identity.
inline std::string label_cycles(const Graph& g, const Permutation& p) {
  std::string out;
  std::vector<char> seen(g.size(), 0);
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out += "(";
    for (auto j = i; !seen[j]; j = p(j)) {
      seen[j] = 1;
      if (j != i) out += " ";
      out += g.label(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace sullivan
