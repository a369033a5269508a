#pragma once

// Helpers shared by the test suites and the acceptance runner. The oracles
// here are written directly from the definitions and share no code with the
// solver or the classifier.

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sullivan/sullivan.hpp"

namespace sullivan::fixtures {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SULLIVAN_DATA_DIR) + "/" + name);
  if (!in) throw ParseError("missing test data " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph load_graph(const std::string& name) { return parse_graph(read_data(name)); }
inline GroupSpec load_group(const std::string& name) { return parse_group(read_data(name)); }

/// Random homogeneous element: up to max_terms basis monomials of degree k
/// with coefficients in [-3, 3].
inline RElement random_element(const SullivanAlgebra& a, int k, std::mt19937_64& rng, std::size_t max_terms = 3) {
  RElement e(a.universe());
  auto basis = basis_of_degree(a, k);
  if (basis.empty()) return e;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  for (std::size_t t = count(rng); t > 0; --t) e.add_term(basis[pick(rng)], Rational(coeff(rng)));
  return e;
}

/// Degrees in [lo, hi] with a nonempty basis.
inline std::vector<int> populated_degrees(const SullivanAlgebra& a, int lo, int hi) {
  std::vector<int> out;
  for (int k = lo; k <= hi; ++k)
    if (!basis_of_degree(a, k).empty()) out.push_back(k);
  return out;
}

/// Integer solutions of lam_v * (lam_v^2 + sum_{w ~ v} lam_w) = 0, the
/// condition for x_v -> lam_v * x2^4 (x1, x2, y_i fixed) to extend over z_v in
/// the default variant. Every rational solution is integral with
/// |lam_v| <= max degree, so the box search is complete.
inline std::vector<std::vector<long>> lambda_solutions(const Graph& g) {
  const std::size_t n = g.size();
  long bound = 0;
  for (std::size_t v = 0; v < n; ++v) bound = std::max<long>(bound, static_cast<long>(g.degree(v)));
  // BFS order so each vertex's condition is checked once all neighbours are set.
  std::vector<std::size_t> order{0}, pos(n, n);
  pos[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto w : g.neighbors(order[i]))
      if (pos[w] == n) {
        pos[w] = order.size();
        order.push_back(w);
      }
  std::vector<long> lam(n, 0);
  std::vector<std::vector<long>> out;
  auto holds = [&](std::size_t v) {
    long s = lam[v] * lam[v];
    for (auto w : g.neighbors(v)) s += lam[w];
    return lam[v] == 0 || s == 0;
  };
  auto settled = [&](std::size_t v, std::size_t i) {
    if (pos[v] > i) return false;
    for (auto w : g.neighbors(v))
      if (pos[w] > i) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(lam);
      return;
    }
    auto v = order[i];
    for (long x = -bound; x <= bound; ++x) {
      lam[v] = x;
      bool ok = !settled(v, i) || holds(v);
      for (auto w : g.neighbors(v))
        if (ok && settled(w, i)) ok = holds(w);
      if (ok) self(self, i + 1);
    }
    lam[v] = 0;
  };
  rec(rec, 0);
  return out;
}

/// All full monomorphisms a -> b, by brute force over injective maps.
inline std::vector<std::map<std::string, std::string>> full_monomorphisms(const Graph& a, const Graph& b) {
  std::vector<std::map<std::string, std::string>> out;
  std::vector<std::size_t> img(a.size());
  std::vector<char> used(b.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == a.size()) {
      std::map<std::string, std::string> m;
      for (std::size_t k = 0; k < a.size(); ++k) m[a.label(k)] = b.label(img[k]);
      out.push_back(std::move(m));
      return;
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = a.adjacent(i, k) == b.adjacent(j, img[k]);
      if (!ok) continue;
      used[j] = 1;
      img[i] = j;
      self(self, i + 1);
      used[j] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace sullivan::fixtures
