#pragma once

// Simple undirected graphs with string-labelled vertices.
//
// File format: one edge per line as "label label"; '#' starts a comment;
// "vertex label" declares a vertex without edges.

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"

namespace sullivan {

class Graph {
 public:
  Graph() = default;

  /// Vertices keep declaration order; edges are unordered label pairs.
  Graph(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>>& edges) {
    for (auto& v : vertices) add_vertex(v);
    for (const auto& [a, b] : edges) add_edge(a, b);
  }

  /// Returns the vertex index; existing labels are reused.
  std::size_t add_vertex(const std::string& label) {
    if (auto it = index_.find(label); it != index_.end()) return it->second;
    check_label(label);
    index_.emplace(label, labels_.size());
    labels_.push_back(label);
    adj_.emplace_back();
    return labels_.size() - 1;
  }

  void add_edge(const std::string& a, const std::string& b) {
    if (a == b) throw ValidationError("loop at vertex '" + a + "'");
    if (!index_.count(a)) throw ValidationError("edge {" + a + ", " + b + "} uses undeclared vertex '" + a + "'");
    if (!index_.count(b)) throw ValidationError("edge {" + a + ", " + b + "} uses undeclared vertex '" + b + "'");
    std::size_t i = index_.at(a), j = index_.at(b);
    if (adjacent(i, j)) throw ValidationError("duplicate edge {" + a + ", " + b + "}");
    adj_[i].insert(j);
    adj_[j].insert(i);
    ++edge_count_;
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  bool has_vertex(const std::string& l) const { return index_.count(l) != 0; }
  std::size_t index_of(const std::string& l) const {
    auto it = index_.find(l);
    if (it == index_.end()) throw ValidationError("unknown vertex '" + l + "'");
    return it->second;
  }
  const std::set<std::size_t>& neighbors(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].size(); }
  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].count(j) != 0; }
  bool adjacent(const std::string& a, const std::string& b) const { return adjacent(index_of(a), index_of(b)); }

  /// Edges as index pairs (i < j), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < adj_.size(); ++i)
      for (auto j : adj_[i])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  /// Labels in lexicographic order.
  std::vector<std::string> sorted_labels() const {
    auto out = labels_;
    std::sort(out.begin(), out.end());
    return out;
  }

  /// BFS distances from i; unreachable vertices get size().
  std::vector<std::size_t> distances_from(std::size_t i) const {
    std::vector<std::size_t> dist(size(), size());
    std::deque<std::size_t> queue{i};
    dist[i] = 0;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (auto w : adj_[u]) {
        if (dist[w] == size()) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

  bool connected() const {
    if (size() == 0) return true;
    auto d = distances_from(0);
    return std::none_of(d.begin(), d.end(), [&](std::size_t x) { return x == size(); });
  }

  std::string to_text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < size(); ++i)
      if (adj_[i].empty()) os << "vertex " << labels_[i] << "\n";
    for (const auto& [i, j] : edges()) os << labels_[i] << " " << labels_[j] << "\n";
    return os.str();
  }

 private:
  static void check_label(const std::string& l) {
    if (l.empty()) throw ValidationError("empty vertex label");
    for (char c : l) {
      if (c == '[' || c == ']' || c == '#' || c == '*' || c == '^' || c == '+' ||
          std::isspace(static_cast<unsigned char>(c))) {
        throw ValidationError("vertex label '" + l + "' contains a reserved character");
      }
    }
    if (l == "vertex") throw ValidationError("'vertex' is reserved and cannot be a label");
  }

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::set<std::size_t>> adj_;
  std::size_t edge_count_ = 0;
};

inline Graph parse_graph(std::string_view text) {
  Graph g;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "vertex") {
        if (tok.size() != 2) throw ParseError("expected 'vertex label'", lineno);
        g.add_vertex(tok[1]);
      } else if (tok.size() == 2) {
        g.add_vertex(tok[0]);
        g.add_vertex(tok[1]);
        g.add_edge(tok[0], tok[1]);
      } else {
        throw ParseError("expected two labels per edge line, got " + std::to_string(tok.size()) + " tokens", lineno);
      }
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return g;
}

/// Vertex map between graphs, by label.
struct GraphMorphism {
  const Graph* source = nullptr;
  const Graph* target = nullptr;
  std::map<std::string, std::string> vertex_map;

  const std::string& operator()(const std::string& v) const {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end()) throw ValidationError("vertex map misses '" + v + "'");
    return it->second;
  }
};

/// Injective, and v ~ w exactly when their images are adjacent.
inline bool is_full_monomorphism(const GraphMorphism& m) {
  const Graph& s = *m.source;
  const Graph& t = *m.target;
  if (m.vertex_map.size() != s.size()) return false;
  std::set<std::string> seen;
  for (const auto& l : s.labels()) {
    auto it = m.vertex_map.find(l);
    if (it == m.vertex_map.end() || !t.has_vertex(it->second)) return false;
    if (!seen.insert(it->second).second) return false;
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s.adjacent(i, j) != t.adjacent(m(s.label(i)), m(s.label(j)))) return false;
  return true;
}

/// n after m (vertex maps composed left to right: first m, then n).
inline GraphMorphism compose(const GraphMorphism& n, const GraphMorphism& m) {
  if (m.target != n.source) throw DomainMismatch("graph morphisms are not composable");
  GraphMorphism out{m.source, n.target, {}};
  for (const auto& [v, w] : m.vertex_map) out.vertex_map[v] = n(w);
  return out;
}

}  // namespace sullivan
