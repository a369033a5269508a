#pragma once

// Finite permutation groups on points 0..n-1. Products compose right to left:
// (p * q)(i) = p(q(i)).
//
// Group file formats:
//   perms            one permutation per line in 1-based cycle notation,
//   (1 2 3)(4 5)     e.g. "(1 2)"; "()" is the identity
//
//   table            n rows of n 0-based indices, row g column h = g*h
//   0 1
//   1 0

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sullivan/errors.hpp"

namespace sullivan {

inline constexpr std::size_t kDefaultOrderBudget = 5040;

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images) : p_(std::move(images)) {
    std::vector<char> hit(p_.size(), 0);
    for (auto x : p_) {
      if (x >= p_.size() || hit[x]) throw ValidationError("not a permutation");
      hit[x] = 1;
    }
  }
  static Permutation identity(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    return Permutation(std::move(v));
  }

  std::size_t degree() const { return p_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return p_[i]; }
  const std::vector<std::uint32_t>& images() const { return p_; }
  bool is_identity() const {
    for (std::uint32_t i = 0; i < p_.size(); ++i)
      if (p_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DomainMismatch("permutations of different degree");
    std::vector<std::uint32_t> r(a.degree());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.p_[b.p_[i]];
    Permutation out;
    out.p_ = std::move(r);
    return out;
  }
  Permutation inverse() const {
    Permutation out;
    out.p_.resize(p_.size());
    for (std::uint32_t i = 0; i < p_.size(); ++i) out.p_[p_[i]] = i;
    return out;
  }
  std::size_t order() const {
    std::size_t o = 1;
    std::vector<char> seen(p_.size(), 0);
    for (std::uint32_t i = 0; i < p_.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (auto j = i; !seen[j]; j = p_[j]) {
        seen[j] = 1;
        ++len;
      }
      o = std::lcm(o, len);
    }
    return o;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  /// 1-based cycle notation, fixed points omitted; "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::vector<char> seen(p_.size(), 0);
    for (std::uint32_t i = 0; i < p_.size(); ++i) {
      if (seen[i] || p_[i] == i) continue;
      out += "(";
      for (auto j = i; !seen[j]; j = p_[j]) {
        seen[j] = 1;
        if (j != i) out += " ";
        out += std::to_string(j + 1);
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

 private:
  std::vector<std::uint32_t> p_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

/// Parses "(1 2 3)(4 5)" on `degree` points (0 = infer from the largest point).
inline Permutation parse_cycles(std::string_view text, std::size_t degree = 0) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',' || text[i] == '\r')) ++i;
  };
  std::uint32_t max_point = 0;
  skip();
  if (i == text.size()) throw ParseError("empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in '" + std::string(text) + "'");
    ++i;
    std::vector<std::uint32_t> cyc;
    while (true) {
      skip();
      if (i == text.size()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected a point in '" + std::string(text) + "'");
      auto pt = std::stoul(std::string(text.substr(start, i - start)));
      if (pt == 0) throw ParseError("points are 1-based");
      cyc.push_back(static_cast<std::uint32_t>(pt - 1));
      max_point = std::max(max_point, static_cast<std::uint32_t>(pt));
    }
    cycles.push_back(std::move(cyc));
    skip();
  }
  std::size_t n = degree ? degree : max_point;
  if (max_point > n) throw ValidationError("point " + std::to_string(max_point) + " exceeds degree " + std::to_string(n));
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<char> used(n, 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (used[c[k]]) throw ValidationError("point " + std::to_string(c[k] + 1) + " repeats across cycles");
      used[c[k]] = 1;
      img[c[k]] = c[(k + 1) % c.size()];
    }
  }
  return Permutation(std::move(img));
}

/// A finite permutation group: generators plus the materialized, sorted
/// element list.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t order_budget = kDefaultOrderBudget)
      : degree_(degree) {
    for (auto& g : generators) {
      if (g.degree() != degree) throw ValidationError("generator degree differs from group degree");
      if (!g.is_identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
    }
    close(order_budget);
  }

  /// Group from an explicit element list (closure is verified).
  static PermGroup from_elements(std::size_t degree, const std::vector<Permutation>& elements,
                                 std::size_t order_budget = kDefaultOrderBudget) {
    PermGroup g(degree, elements, order_budget);
    std::set<Permutation> given(elements.begin(), elements.end());
    given.insert(Permutation::identity(degree));
    if (given.size() != g.order()) throw ValidationError("element list is not closed under composition");
    return g;
  }

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  std::size_t identity_index() const { return index_of(Permutation::identity(degree_)); }
  std::optional<std::size_t> find(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const Permutation& p) const {
    auto i = find(p);
    if (!i) throw ValidationError("permutation " + p.to_cycles() + " is not in the group");
    return *i;
  }
  bool contains(const Permutation& p) const { return find(p).has_value(); }
  std::size_t multiply(std::size_t a, std::size_t b) const { return index_of(elements_[a] * elements_[b]); }

  /// Identity present, closed under products and inverses.
  bool verify_group_axioms() const {
    if (!contains(Permutation::identity(degree_))) return false;
    for (const auto& a : elements_) {
      if (!contains(a.inverse())) return false;
      for (const auto& b : elements_)
        if (!contains(a * b)) return false;
    }
    return true;
  }

 private:
  void close(std::size_t budget) {
    std::deque<Permutation> queue{Permutation::identity(degree_)};
    std::unordered_map<Permutation, std::size_t, PermutationHash> seen{{queue.front(), 0}};
    while (!queue.empty()) {
      Permutation p = queue.front();
      queue.pop_front();
      for (const auto& g : gens_) {
        Permutation q = g * p;
        if (seen.emplace(q, 0).second) {
          if (seen.size() > budget) {
            throw ResourceLimit("group order exceeds the budget of " + std::to_string(budget));
          }
          queue.push_back(std::move(q));
        }
      }
    }
    for (auto& [p, i] : seen) elements_.push_back(p);
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  }

  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

/// Parsed group file; for tables, the left regular representation.
struct GroupSpec {
  PermGroup group;
  std::vector<Permutation> generators;  ///< as supplied (perms) or all non-identity elements (table)
};

inline GroupSpec parse_group(std::string_view text, std::size_t order_budget = kDefaultOrderBudget) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, int>> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    lines.emplace_back(line.substr(first, last - first + 1), lineno);
  }
  if (lines.empty()) throw ParseError("empty group file");
  const auto& header = lines.front().first;
  if (header == "perms") {
    std::vector<std::pair<std::string, int>> body(lines.begin() + 1, lines.end());
    if (body.empty()) throw ParseError("'perms' section lists no permutations", lines.front().second);
    std::size_t degree = 1;
    for (const auto& [l, n] : body) {
      try {
        degree = std::max(degree, parse_cycles(l).degree());
      } catch (const ParseError& e) {
        throw ParseError(e.what(), n);
      }
    }
    std::vector<Permutation> gens;
    for (const auto& [l, n] : body) {
      try {
        gens.push_back(parse_cycles(l, degree));
      } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(n) + ": " + e.what());
      }
    }
    PermGroup g(degree, gens, order_budget);
    return GroupSpec{std::move(g), std::move(gens)};
  }
  if (header == "table") {
    std::vector<std::vector<long>> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      std::istringstream ls(lines[k].first);
      std::vector<long> row;
      std::string tok;
      while (ls >> tok) {
        try {
          std::size_t pos = 0;
          long v = std::stol(tok, &pos);
          if (pos != tok.size()) throw std::invalid_argument(tok);
          row.push_back(v);
        } catch (const std::logic_error&) {
          throw ParseError("not an index: '" + tok + "'", lines[k].second);
        }
      }
      rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw ParseError("'table' section is empty", lines.front().second);
    if (n > order_budget) throw ResourceLimit("table order exceeds the budget of " + std::to_string(order_budget));
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n) {
        throw ParseError("row has " + std::to_string(rows[r].size()) + " entries, expected " + std::to_string(n),
                         lines[r + 1].second);
      }
      for (long v : rows[r])
        if (v < 0 || static_cast<std::size_t>(v) >= n) throw ValidationError("table entry out of range: " + std::to_string(v));
    }
    std::optional<std::size_t> e;
    for (std::size_t a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b)
        ok = rows[a][b] == static_cast<long>(b) && rows[b][a] == static_cast<long>(b);
      if (ok) e = a;
    }
    if (!e) throw ValidationError("multiplication table has no identity");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (rows[rows[a][b]][c] != rows[a][rows[b][c]]) {
            throw ValidationError("multiplication table is not associative");
          }
    std::vector<Permutation> left;
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::uint32_t> img(n);
      for (std::size_t b = 0; b < n; ++b) img[b] = static_cast<std::uint32_t>(rows[a][b]);
      try {
        left.emplace_back(std::move(img));
      } catch (const ValidationError&) {
        throw ValidationError("row " + std::to_string(a) + " of the table is not a permutation");
      }
    }
    std::vector<Permutation> gens;
    for (std::size_t a = 0; a < n; ++a)
      if (a != *e) gens.push_back(left[a]);
    PermGroup g(n, gens, order_budget);
    if (g.order() != n) throw ValidationError("multiplication table does not define a group");
    return GroupSpec{std::move(g), std::move(gens)};
  }
  throw ParseError("group file must start with 'perms' or 'table'", lines.front().second);
}

/// Group isomorphism by brute-force search over images of a generating set,
/// pruned by element orders. The witness maps element indices of a to element
/// indices of b.
struct IsoResult {
  bool isomorphic = false;
  std::vector<std::size_t> witness;
  explicit operator bool() const { return isomorphic; }
};

namespace detail {

inline std::vector<std::size_t> element_orders(const PermGroup& g) {
  std::vector<std::size_t> o;
  o.reserve(g.order());
  for (const auto& p : g.elements()) o.push_back(p.order());
  return o;
}

/// Greedy small generating set, larger element orders first.
inline std::vector<std::size_t> small_generating_set(const PermGroup& g) {
  auto orders = element_orders(g);
  std::vector<std::size_t> idx(g.order());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return orders[a] > orders[b]; });
  std::vector<std::size_t> gens;
  std::vector<char> in_sub(g.order(), 0);
  in_sub[g.identity_index()] = 1;
  std::size_t sub_size = 1;
  for (auto cand : idx) {
    if (in_sub[cand]) continue;
    gens.push_back(cand);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < g.order(); ++i)
      if (in_sub[i]) members.push_back(i);
    std::deque<std::size_t> queue(members.begin(), members.end());
    while (!queue.empty()) {
      auto p = queue.front();
      queue.pop_front();
      for (auto s : gens) {
        auto q = g.multiply(s, p);
        if (!in_sub[q]) {
          in_sub[q] = 1;
          ++sub_size;
          queue.push_back(q);
        }
      }
    }
    if (sub_size == g.order()) break;
  }
  return gens;
}

}  // namespace detail

inline IsoResult groups_isomorphic(const PermGroup& a, const PermGroup& b) {
  IsoResult res;
  if (a.order() != b.order()) return res;
  auto oa = detail::element_orders(a), ob = detail::element_orders(b);
  {
    auto sa = oa, sb = ob;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return res;
  }
  const std::size_t n = a.order();
  auto gens = detail::small_generating_set(a);
  // Words: every element of a as (generator, predecessor) from a BFS tree.
  std::vector<std::pair<std::size_t, std::size_t>> parent(n, {n, n});
  std::vector<std::size_t> bfs{a.identity_index()};
  parent[a.identity_index()] = {n, n};
  std::vector<char> seen(n, 0);
  seen[a.identity_index()] = 1;
  for (std::size_t k = 0; k < bfs.size(); ++k) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      auto q = a.multiply(gens[gi], bfs[k]);
      if (!seen[q]) {
        seen[q] = 1;
        parent[q] = {gi, bfs[k]};
        bfs.push_back(q);
      }
    }
  }
  std::vector<std::size_t> choice(gens.size());
  auto try_extend = [&]() -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> phi(n, n);
    std::vector<char> used(n, 0);
    for (auto v : bfs) {
      std::size_t img = (parent[v].first == n) ? b.identity_index() : b.multiply(choice[parent[v].first], phi[parent[v].second]);
      if (used[img] || ob[img] != oa[v]) return std::nullopt;
      used[img] = 1;
      phi[v] = img;
    }
    for (std::size_t x = 0; x < n; ++x)
      for (auto s : gens)
        if (phi[a.multiply(s, x)] != b.multiply(phi[s], phi[x])) return std::nullopt;
    return phi;
  };
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) {
      if (auto phi = try_extend()) {
        res.witness = std::move(*phi);
        return true;
      }
      return false;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (ob[c] != oa[gens[k]]) continue;
      choice[k] = c;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  res.isomorphic = search(search, 0);
  return res;
}

/// Checks that phi (indices of a to indices of b) is a bijective homomorphism.
inline bool verify_isomorphism(const PermGroup& a, const PermGroup& b, const std::vector<std::size_t>& phi) {
  if (a.order() != b.order() || phi.size() != a.order()) return false;
  std::vector<char> used(b.order(), 0);
  for (auto x : phi) {
    if (x >= b.order() || used[x]) return false;
    used[x] = 1;
  }
  for (std::size_t x = 0; x < a.order(); ++x)
    for (std::size_t y = 0; y < a.order(); ++y)
      if (phi[a.multiply(x, y)] != b.multiply(phi[x], phi[y])) return false;
  return true;
}

}  // namespace sullivan
