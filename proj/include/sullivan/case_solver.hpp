#pragma once

// Case-tree solver for polynomial systems over Q.
//
// Tactics:
//   propagate  substitute unknowns that occur linearly with a constant
//              coefficient (and x := 0 for pure powers x^k = 0)
//   lattice    binomial equations in unknowns assumed nonzero: the exponent
//              lattice is put in Smith form and, when it has full rank, every
//              rational solution is enumerated
//   roots      an equation in a single unknown: one child per rational root
//   eliminate  for a stuck component, the minimal polynomial of one unknown
//              modulo a grevlex Groebner basis; its rational roots give the
//              children
//   split      x = 0 versus x != 0
//
// Every child records the assumptions that produce it from its parent; a
// reference re-derivation (plain substitution + normalization) must reproduce
// the child's system exactly.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "sullivan/groebner.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/polynomial.hpp"
#include "sullivan/serialize.hpp"
#include "sullivan/smith.hpp"

namespace sullivan {

inline constexpr std::size_t kDefaultSplitBudget = 2000;

enum class Tactic { none, propagate, lattice, roots, eliminate, split };
enum class LeafKind { open, contradiction, solved, partial };

inline const char* tactic_name(Tactic t) {
  switch (t) {
    case Tactic::propagate: return "propagate";
    case Tactic::lattice: return "lattice";
    case Tactic::roots: return "roots";
    case Tactic::eliminate: return "eliminate";
    case Tactic::split: return "split";
    default: return "none";
  }
}

inline const char* leaf_name(LeafKind k) {
  switch (k) {
    case LeafKind::contradiction: return "contradiction";
    case LeafKind::solved: return "solved";
    case LeafKind::partial: return "partial";
    default: return "open";
  }
}

struct Assignment {
  Var var = 0;
  Polynomial value;
};

struct CaseNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::vector<Assignment> assumptions;  ///< substitutions applied on entry, in order
  std::vector<Var> assumed_nonzero;     ///< nonzero assumptions made on entry (splits)
  std::size_t split_depth = 0;
  std::size_t equation_count = 0;
  Tactic tactic = Tactic::none;
  Var split_var = 0;
  std::vector<Var> lattice_vars;
  std::vector<Polynomial> lattice_equations;
  std::vector<std::size_t> children;
  LeafKind leaf = LeafKind::open;
  std::string note;
  bool verified = false;
  // Solved leaves only.
  std::map<Var, Polynomial> solution;  ///< eliminated unknowns in terms of the free ones
  std::vector<Var> free;
  std::vector<Var> free_nonzero;

  bool is_leaf() const { return children.empty(); }
};

struct CaseTree {
  std::vector<CaseNode> nodes;
  std::vector<std::string> names;
  std::size_t equation_count = 0;
  std::size_t split_budget = kDefaultSplitBudget;
  std::size_t max_split_depth = 0;
  bool complete = true;
  bool all_verified = true;

  std::vector<std::size_t> leaves(LeafKind kind) const {
    std::vector<std::size_t> out;
    for (const auto& n : nodes)
      if (n.is_leaf() && n.leaf == kind) out.push_back(n.id);
    return out;
  }
  std::vector<std::size_t> solved_leaves() const { return leaves(LeafKind::solved); }

  std::string name(Var v) const { return names[v]; }

  Json node_json(std::size_t id) const {
    const auto& n = nodes[id];
    auto namer = [this](Var v) { return names[v]; };
    Json j;
    j["id"] = n.id;
    if (!n.assumptions.empty()) {
      Json a = Json::array();
      for (const auto& s : n.assumptions) a.push_back(names[s.var] + " = " + s.value.to_string(namer));
      j["assume"] = std::move(a);
    }
    if (!n.assumed_nonzero.empty()) {
      Json a = Json::array();
      for (auto v : n.assumed_nonzero) a.push_back(names[v] + " != 0");
      j["assume_nonzero"] = std::move(a);
    }
    j["equations"] = n.equation_count;
    j["verified"] = n.verified;
    if (n.is_leaf()) {
      j["leaf"] = leaf_name(n.leaf);
      if (!n.note.empty()) j["note"] = n.note;
      if (n.leaf == LeafKind::solved) {
        Json free = Json::array();
        for (auto v : n.free) free.push_back(names[v]);
        j["free_count"] = n.free.size();
        Json nz = Json::array();
        for (auto v : n.free_nonzero) nz.push_back(names[v]);
        if (!nz.empty()) j["free_nonzero"] = std::move(nz);
      }
      return j;
    }
    j["tactic"] = tactic_name(n.tactic);
    if (n.tactic == Tactic::split) j["split_on"] = names[n.split_var];
    if (n.tactic == Tactic::eliminate) j["eliminant"] = n.lattice_equations.front().to_string(namer) + " = 0";
    if (n.tactic == Tactic::roots) j["equation"] = n.lattice_equations.front().to_string(namer) + " = 0";
    if (n.tactic == Tactic::lattice) {
      Json eqs = Json::array();
      for (const auto& p : n.lattice_equations) eqs.push_back(p.to_string(namer) + " = 0");
      j["lattice"] = std::move(eqs);
    }
    Json ch = Json::array();
    for (auto c : n.children) ch.push_back(node_json(c));
    j["children"] = std::move(ch);
    return j;
  }

  Json to_json() const { return nodes.empty() ? Json() : node_json(0); }

  Json summary_json() const {
    Json j;
    j["nodes"] = nodes.size();
    j["equations"] = equation_count;
    j["unknowns"] = names.size();
    j["solved_leaves"] = solved_leaves().size();
    j["contradiction_leaves"] = leaves(LeafKind::contradiction).size();
    j["partial_leaves"] = leaves(LeafKind::partial).size();
    j["max_split_depth"] = max_split_depth;
    j["split_budget"] = split_budget;
    j["complete"] = complete;
    j["verified"] = all_verified;
    return j;
  }
};

struct SolverOptions {
  std::size_t split_budget = kDefaultSplitBudget;
  bool verify = true;       ///< reference re-derivation at every node
  bool check_leaves = true; ///< plug solved leaves into the root equations
  std::size_t groebner_budget = kDefaultGroebnerBudget;
};

/// Thrown by classification when the tree is partial.
class IncompleteTree : public ResourceLimit {
 public:
  explicit IncompleteTree(const std::string& what) : ResourceLimit(what) {}
};

namespace detail {

inline Polynomial normalize_equation(const Polynomial& p, const std::vector<char>& nonzero) {
  if (p.is_zero()) return p;
  auto content = p.monomial_content([&](Var v) { return nonzero[v] != 0; });
  return p.divided_by_monomial(content).monic();
}

inline bool is_single_monomial(const Polynomial& q) { return q.size() == 1; }

/// Unknown that can be eliminated from a normalized equation, with its value.
/// A non-monomial value of degree above 1 is only taken when `isolated` says the unknown
/// occurs in no other equation, which keeps the degrees of the system down.
inline std::optional<Assignment> elimination_candidate(const Polynomial& p, const std::vector<char>& nonzero,
                                                       const std::function<bool(Var)>& isolated = {}) {
  if (p.size() == 1) {
    const auto& f = p.leading().mono.factors();
    if (f.size() == 1 && !nonzero[f[0].first]) return Assignment{f[0].first, Polynomial()};
    return std::nullopt;
  }
  std::optional<Assignment> best;
  bool best_free = false;
  for (std::size_t i = 0; i < p.terms().size(); ++i) {
    const auto& t = p.terms()[i];
    const auto& f = t.mono.factors();
    if (f.size() != 1 || f[0].second != 1) continue;
    Var x = f[0].first;
    bool elsewhere = false;
    for (std::size_t k = 0; k < p.terms().size() && !elsewhere; ++k)
      if (k != i && p.terms()[k].mono.contains(x)) elsewhere = true;
    if (elsewhere) continue;
    const bool free = !nonzero[x];
    if (!free && p.size() != 2) continue;  // a nonzero unknown may only become a monomial
    if (best && (best_free && !free)) continue;
    if (best && best_free == free && best->var > x) continue;
    Polynomial rest = p - Polynomial::monomial(t.coeff, t.mono);
    if (isolated && rest.size() > 1 && rest.total_degree() > 1 && !isolated(x)) continue;
    best = Assignment{x, rest.scaled(Rational(-1) / t.coeff)};
    best_free = free;
  }
  return best;
}

struct PathLink {
  Assignment step;
  std::shared_ptr<const PathLink> prev;
};

struct Slot {
  std::shared_ptr<const Polynomial> poly;  ///< null once the equation died
  std::uint32_t origin = 0;               ///< index in the root system
};

struct State {
  std::vector<Slot> eqs;
  std::vector<char> nonzero;
  std::vector<std::vector<std::uint32_t>> occ;
  std::shared_ptr<const PathLink> path;
  bool contradiction = false;
  std::string reason;

  void build_occurrences() {
    for (auto& o : occ) o.clear();
    for (std::uint32_t i = 0; i < eqs.size(); ++i)
      if (eqs[i].poly)
        for (auto v : eqs[i].poly->variables()) occ[v].push_back(i);
  }

  /// Drops dead equations and renormalizes against the current nonzero set.
  void compact() {
    std::vector<Slot> alive;
    alive.reserve(eqs.size());
    for (auto& s : eqs) {
      if (!s.poly) continue;
      auto n = normalize_equation(*s.poly, nonzero);
      if (!(n == *s.poly)) s.poly = std::make_shared<const Polynomial>(std::move(n));
      alive.push_back(std::move(s));
    }
    std::sort(alive.begin(), alive.end(), [](const Slot& a, const Slot& b) { return a.origin < b.origin; });
    eqs = std::move(alive);
    build_occurrences();
  }

  std::size_t alive() const {
    std::size_t n = 0;
    for (const auto& s : eqs) n += s.poly ? 1 : 0;
    return n;
  }

  std::vector<Polynomial> system() const {
    std::vector<Polynomial> out;
    for (const auto& s : eqs)
      if (s.poly) out.push_back(*s.poly);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

/// Applies one substitution in place. Returns ids of rewritten equations.
inline std::vector<std::uint32_t> substitute_in_state(State& s, Var x, const Polynomial& value) {
  std::vector<std::uint32_t> touched;
  s.path = std::make_shared<const PathLink>(PathLink{Assignment{x, value}, s.path});
  std::vector<Var> newly_nonzero;
  if (s.nonzero[x]) {
    if (value.is_zero()) {
      s.contradiction = true;
      s.reason = "unknown assumed nonzero set to 0";
      return touched;
    }
    for (auto v : value.variables())
      if (!s.nonzero[v]) {
        s.nonzero[v] = 1;
        newly_nonzero.push_back(v);
      }
  }
  auto value_vars = value.variables();
  auto ids = std::move(s.occ[x]);
  s.occ[x].clear();
  auto rewrite = [&](std::uint32_t id, const Polynomial& np) {
    auto n = normalize_equation(np, s.nonzero);
    if (n.is_zero()) {
      s.eqs[id].poly.reset();
    } else {
      if (n.is_constant()) {
        s.contradiction = true;
        s.reason = "equation reduced to a nonzero constant";
      }
      s.eqs[id].poly = std::make_shared<const Polynomial>(std::move(n));
    }
    touched.push_back(id);
  };
  for (auto id : ids) {
    auto& slot = s.eqs[id];
    if (!slot.poly || !slot.poly->contains(x)) continue;
    rewrite(id, slot.poly->substitute(x, value));
    for (auto v : value_vars) s.occ[v].push_back(id);
    if (s.contradiction) return touched;
  }
  for (auto v : newly_nonzero) {
    for (auto id : s.occ[v]) {
      auto& slot = s.eqs[id];
      if (!slot.poly || !slot.poly->contains(v)) continue;
      auto n = normalize_equation(*slot.poly, s.nonzero);
      if (!(n == *slot.poly)) rewrite(id, n);
      if (s.contradiction) return touched;
    }
  }
  return touched;
}

inline void mark_nonzero(State& s, Var x) {
  s.nonzero[x] = 1;
  for (auto id : s.occ[x]) {
    auto& slot = s.eqs[id];
    if (!slot.poly || !slot.poly->contains(x)) continue;
    auto n = normalize_equation(*slot.poly, s.nonzero);
    if (n.is_constant() && !n.is_zero()) {
      s.contradiction = true;
      s.reason = "equation reduced to a nonzero constant";
    }
    slot.poly = std::make_shared<const Polynomial>(std::move(n));
  }
}

struct PropagationStep {
  Assignment assignment;
  std::uint32_t origin = 0;
  Polynomial source;  ///< the equation it was read from
};

/// True when x occurs in no alive equation other than `id`.
inline std::function<bool(Var)> isolation(const State& s, std::uint32_t id) {
  return [&s, id](Var x) {
    for (auto k : s.occ[x])
      if (k != id && s.eqs[k].poly && s.eqs[k].poly->contains(x)) return false;
    return true;
  };
}

/// x occurs in p only linearly with a constant coefficient, and p vanishes
/// under x := value.
inline bool solves_for(const Polynomial& p, Var x, const Polynomial& value) {
  if (value.contains(x)) return false;
  if (p.size() == 1) return value.is_zero() && p.variables() == std::set<Var>{x};
  if (p.degree_in(x) != 1) return false;
  for (const auto& t : p.terms())
    if (t.mono.contains(x) && t.mono.factors().size() != 1) return false;
  return p.substitute(x, value).is_zero();
}

/// Exhaustive elimination. Stops at the first contradiction.
inline std::vector<PropagationStep> propagate(State& s) {
  std::vector<PropagationStep> steps;
  using Entry = std::pair<std::size_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::uint32_t i = 0; i < s.eqs.size(); ++i)
    if (s.eqs[i].poly) heap.emplace(s.eqs[i].poly->size(), i);
  while (!heap.empty() && !s.contradiction) {
    auto [size, id] = heap.top();
    heap.pop();
    const auto& slot = s.eqs[id];
    if (!slot.poly || slot.poly->size() != size) continue;
    auto cand = elimination_candidate(*slot.poly, s.nonzero, isolation(s, id));
    if (!cand) continue;
    steps.push_back(PropagationStep{*cand, slot.origin, *slot.poly});
    for (auto t : substitute_in_state(s, cand->var, cand->value))
      if (s.eqs[t].poly) heap.emplace(s.eqs[t].poly->size(), t);
  }
  return steps;
}

/// Simultaneous substitution map from an ordered sequence (later steps may
/// eliminate unknowns in earlier values).
inline std::map<Var, Polynomial> resolve_sequence(const std::vector<Assignment>& seq) {
  std::map<Var, Polynomial> resolved;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    Polynomial v = it->value;
    for (auto var : v.variables())
      if (auto f = resolved.find(var); f != resolved.end()) v = v.substitute(var, f->second);
    resolved[it->var] = std::move(v);
  }
  return resolved;
}

inline Polynomial apply_resolved(const Polynomial& p, const std::map<Var, Polynomial>& resolved) {
  Polynomial q = p;
  for (auto v : p.variables())
    if (auto f = resolved.find(v); f != resolved.end()) q = q.substitute(v, f->second);
  return q;
}

/// Reference derivation: substitute, normalize, drop zeros.
struct ReferenceChild {
  std::vector<Polynomial> system;
  bool contradiction = false;
};

inline ReferenceChild reference_child(const std::vector<Polynomial>& parent, const std::map<Var, Polynomial>& resolved,
                                      const std::vector<char>& nonzero) {
  ReferenceChild out;
  for (const auto& p : parent) {
    auto q = normalize_equation(apply_resolved(p, resolved), nonzero);
    if (q.is_zero()) continue;
    if (q.is_constant()) out.contradiction = true;
    out.system.push_back(std::move(q));
  }
  std::sort(out.system.begin(), out.system.end());
  out.system.erase(std::unique(out.system.begin(), out.system.end()), out.system.end());
  return out;
}

inline bool same_child(const ReferenceChild& ref, const State& child) {
  if (ref.contradiction || child.contradiction) return ref.contradiction == child.contradiction;
  return ref.system == child.system();
}

// ---- lattice tactic ----------------------------------------------------------

inline Rational rational_pow(const Rational& base, const Integer& exp) {
  if (exp == 0) return Rational(1);
  if (base == 0) throw InvariantViolation("zero raised to a power in a lattice solve");
  Integer e = abs(exp);
  if (!e.fits_ulong_p()) throw ResourceLimit("lattice exponent too large");
  unsigned long k = e.get_ui();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
  Rational r(num, den);
  r.canonicalize();
  return exp < 0 ? Rational(1) / r : r;
}

/// Rational solutions of y^d = s, d >= 1.
inline std::vector<Rational> rational_roots(const Rational& s, const Integer& d) {
  if (s == 0) return {};
  if (!d.fits_ulong_p()) throw ResourceLimit("lattice invariant factor too large");
  unsigned long k = d.get_ui();
  const bool even = k % 2 == 0;
  if (even && s < 0) return {};
  Rational a = abs(s);
  Integer rn, rd;
  if (!mpz_root(rn.get_mpz_t(), a.get_num_mpz_t(), k)) return {};
  if (!mpz_root(rd.get_mpz_t(), a.get_den_mpz_t(), k)) return {};
  Rational t(rn, rd);
  t.canonicalize();
  if (even) return {-t, t};
  return {s < 0 ? Rational(-t) : t};
}

/// Binomial system prod_j x_j^{A_ij} = r_i over nonzero rationals.
struct BinomialSystem {
  std::vector<Var> vars;
  std::vector<std::vector<long>> exponents;
  std::vector<Rational> rhs;
  std::vector<Polynomial> equations;

  bool satisfied_by(const std::vector<Rational>& x) const {
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      Rational v = 1;
      for (std::size_t j = 0; j < vars.size(); ++j) v *= rational_pow(x[j], Integer(exponents[i][j]));
      if (v != rhs[i]) return false;
    }
    return true;
  }
};

inline IntMatrix to_int_matrix(const std::vector<std::vector<long>>& a) {
  IntMatrix m;
  for (const auto& r : a) {
    std::vector<Integer> row;
    for (auto v : r) row.emplace_back(v);
    m.push_back(std::move(row));
  }
  return m;
}

/// All solutions through the Smith form; nullopt when the lattice is not of
/// full rank.
inline std::optional<std::vector<std::vector<Rational>>> solve_binomial(const BinomialSystem& b) {
  const std::size_t n = b.vars.size();
  auto snf = smith_normal_form(to_int_matrix(b.exponents));
  if (snf.rank() < n) return std::nullopt;
  std::vector<Rational> s(b.rhs.size(), Rational(1));
  for (std::size_t l = 0; l < b.rhs.size(); ++l)
    for (std::size_t i = 0; i < b.rhs.size(); ++i) s[l] *= rational_pow(b.rhs[i], snf.u[l][i]);
  std::vector<std::vector<Rational>> solutions;
  for (std::size_t l = n; l < s.size(); ++l)
    if (s[l] != 1) return solutions;
  std::vector<std::vector<Rational>> roots(n);
  for (std::size_t l = 0; l < n; ++l) {
    roots[l] = rational_roots(s[l], snf.invariant_factors[l]);
    if (roots[l].empty()) return solutions;
  }
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<Rational> x(n, Rational(1));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) x[j] *= rational_pow(roots[l][pick[l]], snf.v[j][l]);
    solutions.push_back(std::move(x));
    std::size_t l = 0;
    while (l < n && ++pick[l] == roots[l].size()) pick[l++] = 0;
    if (l == n) break;
  }
  std::sort(solutions.begin(), solutions.end());
  return solutions;
}

/// Independent enumeration: magnitudes from the rational inverse of a square
/// full-rank subsystem, signs by brute force. Used to cross-check.
inline std::vector<std::vector<Rational>> enumerate_binomial(const BinomialSystem& b) {
  const std::size_t n = b.vars.size();
  if (n > 20) throw ResourceLimit("lattice cross-check limited to 20 unknowns");
  // Pick n independent rows.
  std::vector<std::size_t> chosen;
  {
    EchelonForm ef;
    for (std::size_t i = 0; i < b.exponents.size() && chosen.size() < n; ++i) {
      SparseRow row;
      for (std::size_t j = 0; j < n; ++j)
        if (b.exponents[i][j]) row.emplace_back(static_cast<int>(j), Rational(b.exponents[i][j]));
      if (ef.insert(row)) chosen.push_back(i);
    }
  }
  if (chosen.size() < n) throw InvariantViolation("lattice cross-check on a rank-deficient system");
  // Gauss-Jordan inverse over Q.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = b.exponents[chosen[i]][j];
    m[i][n + i] = 1;
  }
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (m[p][c] == 0) ++p;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational inv = Rational(1) / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  // |x_j|^|det| = prod_i |r_i|^(sign(det) * det * inv_ji)
  Integer idet = det.get_num();
  std::vector<Rational> magnitude(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational acc = 1;
    for (std::size_t i = 0; i < n; ++i) {
      Rational e = m[j][n + i] * det;
      e.canonicalize();
      if (e.get_den() != 1) throw InvariantViolation("adjugate entry is not integral");
      Integer ei = e.get_num();
      if (idet < 0) ei = -ei;
      acc *= rational_pow(abs(b.rhs[chosen[i]]), ei);
    }
    auto r = rational_roots(acc, abs(idet));
    Rational pos;
    bool found = false;
    for (const auto& q : r)
      if (q > 0) {
        pos = q;
        found = true;
      }
    if (!found) return {};
    magnitude[j] = pos;
  }
  std::vector<std::vector<Rational>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = (mask >> j) & 1u ? Rational(-magnitude[j]) : magnitude[j];
    if (b.satisfied_by(x)) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- rational roots of univariate equations ------------------------------------

inline std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  if (n == 0) return {};
  if (n > Integer("1000000000000")) throw ResourceLimit("rational root search: coefficient too large to factor");
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Integer coefficients c[k] of x^k, after clearing denominators.
inline std::vector<Integer> integer_coefficients(const Polynomial& p, Var x) {
  std::vector<Integer> c(p.degree_in(x) + 1, 0);
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  for (const auto& t : p.terms()) {
    Rational v = t.coeff * l;
    c[t.mono.exponent(x)] = v.get_num();
  }
  return c;
}

inline Rational evaluate_coefficients(const std::vector<Integer>& c, const Rational& r) {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + Rational(*it);
  return acc;
}

/// Distinct rational roots, ascending.
inline std::vector<Rational> univariate_rational_roots(const Polynomial& p, Var x) {
  auto c = integer_coefficients(p, x);
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low == c.size()) throw InvariantViolation("root search on the zero polynomial");
  if (low > 0) roots.push_back(Rational(0));
  c.erase(c.begin(), c.begin() + static_cast<long>(low));
  if (c.size() > 1) {
    for (const auto& num : divisors(c.front()))
      for (const auto& den : divisors(c.back()))
        for (int sign : {1, -1}) {
          Rational r(num * sign, den);
          r.canonicalize();
          if (evaluate_coefficients(c, r) == 0) roots.push_back(r);
        }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Cross-check: after dividing out every claimed root, no rational root is
/// left and the leftover does not vanish at any claimed root.
inline bool roots_complete(const Polynomial& p, Var x, const std::vector<Rational>& roots) {
  auto c = integer_coefficients(p, x);
  std::vector<Rational> q(c.begin(), c.end());
  for (const auto& r : roots) {
    while (q.size() > 1) {
      // Synthetic division by (x - r).
      std::vector<Rational> out(q.size() - 1);
      Rational carry = 0;
      for (std::size_t k = q.size(); k-- > 1;) {
        carry = carry * r + q[k];
        out[k - 1] = carry;
      }
      Rational rem = carry * r + q[0];
      if (rem != 0) break;
      q = std::move(out);
    }
  }
  if (q.size() <= 1) return true;
  for (const auto& r : roots) {
    Rational v = 0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) v = v * r + *it;
    if (v == 0) return false;
  }
  Polynomial rest;
  for (std::size_t k = 0; k < q.size(); ++k)
    if (q[k] != 0) rest += Polynomial::monomial(q[k], VarMonomial(x, static_cast<std::uint32_t>(k)));
  return univariate_rational_roots(rest, x).empty();
}

// ---- elimination ---------------------------------------------------------------

inline GPoly to_gpoly(const Polynomial& p, const std::vector<Var>& vars, const WeightedGrevlex& order) {
  GPoly g(order);
  for (const auto& t : p.terms()) {
    Exponents e(vars.size(), 0);
    for (const auto& [v, k] : t.mono.factors())
      e[static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin())] = k;
    g.add(e, t.coeff);
  }
  return g;
}

inline Polynomial from_gpoly(const GPoly& g, const std::vector<Var>& vars) {
  std::vector<Polynomial::Term> terms;
  for (const auto& [e, c] : g.terms()) {
    std::vector<VarMonomial::Factor> f;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) f.emplace_back(vars[i], e[i]);
    terms.push_back({VarMonomial::from_factors(std::move(f)), c});
  }
  return Polynomial::from_terms(std::move(terms));
}

struct Elimination {
  std::vector<Var> vars;
  std::vector<Polynomial> equations;
  Var target = 0;
  std::optional<Polynomial> eliminant;  ///< univariate in target; 1 means no solution
};

inline constexpr std::size_t kEliminantDegreeCap = 256;

inline bool is_groebner_basis(const std::vector<GPoly>& g, const WeightedGrevlex& order) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      Exponents l = lcm(g[i].lead(), g[j].lead());
      GPoly s(order);
      s.sub_scaled(-1 / g[i].lead_coeff(), quotient(l, g[i].lead()), g[i]);
      s.sub_scaled(1 / g[j].lead_coeff(), quotient(l, g[j].lead()), g[j]);
      if (!reduce(std::move(s), g, order).is_zero()) return false;
    }
  return true;
}

/// Lowest-degree polynomial in the target that lies in the ideal: normal
/// forms of 1, x, x^2, ... modulo a grevlex basis until they become dependent.
inline std::optional<Polynomial> minimal_polynomial(const std::vector<GPoly>& gb, const WeightedGrevlex& order,
                                                    std::size_t nvars, std::size_t t, Var target) {
  if (gb.size() == 1 && std::all_of(gb[0].lead().begin(), gb[0].lead().end(), [](auto k) { return k == 0; }))
    return Polynomial(Rational(1));
  std::map<Exponents, int> column;
  std::vector<std::map<int, Rational>> forms;
  EchelonForm ef;
  for (std::size_t k = 0; k <= kEliminantDegreeCap; ++k) {
    Exponents e(nvars, 0);
    e[t] = static_cast<std::uint32_t>(k);
    GPoly xk(order);
    xk.add(e, 1);
    GPoly nf = reduce(std::move(xk), gb, order);
    std::map<int, Rational> v;
    for (const auto& [m, c] : nf.terms()) v[column.emplace(m, static_cast<int>(column.size())).first->second] = c;
    SparseRow row(v.begin(), v.end());
    forms.push_back(std::move(v));
    if (ef.insert(row)) continue;
    // x^k = sum c_i x^i modulo the ideal: solve over the earlier forms.
    const int rhs = static_cast<int>(k);
    std::vector<SparseRow> rows(column.size());
    for (std::size_t i = 0; i <= k; ++i)
      for (const auto& [r, c] : forms[i]) rows[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(i), c);
    EchelonForm sys;
    for (auto& r : rows) sys.insert(r);
    auto sol = sys.back_substitute(rhs);
    if (!sol) throw InvariantViolation("dependent normal forms without a solution");
    Polynomial x = Polynomial::variable(target);
    Polynomial m = x.pow(static_cast<unsigned>(k));
    for (const auto& [i, c] : *sol) m = m - Polynomial(c) * x.pow(static_cast<unsigned>(i));
    return m;
  }
  return std::nullopt;
}

/// Equations of the component holding the smallest unknown.
inline std::optional<Elimination> find_elimination(const State& s, std::size_t budget) {
  std::vector<const Polynomial*> eqs;
  for (const auto& slot : s.eqs)
    if (slot.poly) eqs.push_back(slot.poly.get());
  if (eqs.empty()) return std::nullopt;
  std::set<Var> comp;
  Var start = *eqs.front()->variables().begin();
  for (auto* p : eqs) start = std::min(start, *p->variables().begin());
  comp.insert(start);
  std::vector<char> taken(eqs.size(), 0);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      if (taken[i]) continue;
      auto vs = eqs[i]->variables();
      if (std::none_of(vs.begin(), vs.end(), [&](Var v) { return comp.count(v) != 0; })) continue;
      taken[i] = 1;
      for (auto v : vs) grew |= comp.insert(v).second;
    }
  }
  Elimination e;
  e.vars.assign(comp.begin(), comp.end());
  e.target = start;
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (taken[i]) e.equations.push_back(*eqs[i]);
  WeightedGrevlex order(std::vector<std::uint32_t>(e.vars.size(), 1));
  std::vector<GPoly> input;
  for (const auto& p : e.equations) input.push_back(to_gpoly(p, e.vars, order));
  auto gb = groebner_basis(input, order, budget);
  const auto t = static_cast<std::size_t>(std::lower_bound(e.vars.begin(), e.vars.end(), e.target) - e.vars.begin());
  e.eliminant = minimal_polynomial(gb.basis, order, e.vars.size(), t, e.target);
  return e;
}

/// Membership certificate: a basis recomputed from the generators passes
/// the S-pair test, contains every generator's ideal, and reduces f to zero.
inline bool in_ideal(const Polynomial& f, const std::vector<Polynomial>& generators, const std::vector<Var>& vars,
                     std::size_t budget) {
  WeightedGrevlex order(std::vector<std::uint32_t>(vars.size(), 1));
  std::vector<GPoly> input;
  for (const auto& p : generators) input.push_back(to_gpoly(p, vars, order));
  auto gb = groebner_basis(input, order, budget);
  if (!is_groebner_basis(gb.basis, order)) return false;
  for (const auto& g : input)
    if (!reduce(g, gb.basis, order).is_zero()) return false;
  return reduce(to_gpoly(f, vars, order), gb.basis, order).is_zero();
}

/// First connected binomial component (in unknown order) of full rank.
struct LatticeFinding {
  BinomialSystem system;
  std::vector<std::vector<Rational>> solutions;
};

inline std::optional<LatticeFinding> find_lattice(const State& s) {
  std::vector<const Polynomial*> binomials;
  for (const auto& slot : s.eqs) {
    if (!slot.poly || slot.poly->size() != 2) continue;
    bool all_nonzero = true;
    for (auto v : slot.poly->variables()) all_nonzero = all_nonzero && s.nonzero[v];
    if (all_nonzero) binomials.push_back(slot.poly.get());
  }
  if (binomials.empty()) return std::nullopt;
  // Union-find over unknowns.
  std::map<Var, Var> parent;
  std::function<Var(Var)> root = [&](Var v) {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    return it->second = root(it->second);
  };
  for (auto* p : binomials) {
    auto vars = p->variables();
    for (auto v : vars) parent.emplace(v, v);
    for (auto v : vars) parent[root(v)] = root(*vars.begin());
  }
  std::map<Var, std::vector<const Polynomial*>> components;
  for (auto* p : binomials) components[root(*p->variables().begin())].push_back(p);
  // Order components by their smallest unknown.
  std::vector<std::pair<Var, Var>> order;
  for (const auto& [r, eqs] : components) {
    Var smallest = r;
    for (auto* p : eqs)
      for (auto v : p->variables()) smallest = std::min(smallest, v);
    order.emplace_back(smallest, r);
  }
  std::sort(order.begin(), order.end());
  for (const auto& [smallest, r] : order) {
    const auto& eqs = components[r];
    BinomialSystem b;
    std::set<Var> vs;
    for (auto* p : eqs)
      for (auto v : p->variables()) vs.insert(v);
    b.vars.assign(vs.begin(), vs.end());
    if (eqs.size() < b.vars.size()) continue;
    for (auto* p : eqs) {
      const auto& t0 = p->terms()[0];
      const auto& t1 = p->terms()[1];
      std::vector<long> row(b.vars.size(), 0);
      for (std::size_t j = 0; j < b.vars.size(); ++j)
        row[j] = static_cast<long>(t0.mono.exponent(b.vars[j])) - static_cast<long>(t1.mono.exponent(b.vars[j]));
      b.exponents.push_back(std::move(row));
      b.rhs.push_back(-t1.coeff / t0.coeff);
      b.equations.push_back(*p);
    }
    auto sol = solve_binomial(b);
    if (!sol) continue;
    return LatticeFinding{std::move(b), std::move(*sol)};
  }
  return std::nullopt;
}

}  // namespace detail

/// Builds the complete case tree for the given equations over `names.size()`
/// unknowns.
inline CaseTree solve_cases(const std::vector<Polynomial>& equations, const std::vector<std::string>& names,
                            const SolverOptions& opt = {}) {
  using namespace detail;
  CaseTree tree;
  tree.names = names;
  tree.split_budget = opt.split_budget;
  tree.equation_count = equations.size();
  const std::size_t nvars = names.size();

  State root;
  root.nonzero.assign(nvars, 0);
  root.occ.resize(nvars);
  for (std::uint32_t i = 0; i < equations.size(); ++i) {
    auto n = normalize_equation(equations[i], root.nonzero);
    if (n.is_zero()) continue;
    if (n.is_constant()) {
      root.contradiction = true;
      root.reason = "equation reduced to a nonzero constant";
    }
    root.eqs.push_back(Slot{std::make_shared<const Polynomial>(std::move(n)), i});
  }
  root.compact();

  auto new_node = [&](std::optional<std::size_t> parent, std::size_t depth) {
    CaseNode n;
    n.id = tree.nodes.size();
    n.parent = parent;
    n.split_depth = depth;
    tree.nodes.push_back(std::move(n));
    return tree.nodes.back().id;
  };

  struct Work {
    std::size_t node;
    State state;
  };
  std::vector<Work> stack;
  {
    auto id = new_node(std::nullopt, 0);
    tree.nodes[id].verified = true;
    stack.push_back(Work{id, std::move(root)});
  }

  auto finish_solved = [&](CaseNode& node, const State& s) {
    node.leaf = LeafKind::solved;
    std::vector<Assignment> seq;
    for (auto p = s.path; p; p = p->prev) seq.push_back(p->step);
    std::reverse(seq.begin(), seq.end());
    node.solution = resolve_sequence(seq);
    for (Var v = 0; v < nvars; ++v) {
      if (node.solution.count(v)) continue;
      node.free.push_back(v);
      if (s.nonzero[v]) node.free_nonzero.push_back(v);
    }
    if (opt.check_leaves) {
      for (const auto& e : equations) {
        if (!apply_resolved(e, node.solution).is_zero()) {
          throw InvariantViolation("solved leaf " + std::to_string(node.id) + " violates a root equation");
        }
      }
    }
  };

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    State& s = w.state;
    const std::size_t id = w.node;
    tree.max_split_depth = std::max(tree.max_split_depth, tree.nodes[id].split_depth);
    tree.nodes[id].equation_count = s.alive();
    if (!tree.nodes[id].verified) tree.all_verified = false;

    if (s.contradiction) {
      tree.nodes[id].leaf = LeafKind::contradiction;
      tree.nodes[id].note = s.reason;
      continue;
    }
    if (s.alive() == 0) {
      finish_solved(tree.nodes[id], s);
      continue;
    }
    const auto parent_system = opt.verify ? s.system() : std::vector<Polynomial>{};
    const std::size_t depth = tree.nodes[id].split_depth;

    // propagate
    bool can_propagate = false;
    for (std::uint32_t i = 0; i < s.eqs.size() && !can_propagate; ++i)
      can_propagate = s.eqs[i].poly && elimination_candidate(*s.eqs[i].poly, s.nonzero, isolation(s, i)).has_value();
    if (can_propagate) {
      State child = s;
      auto steps = propagate(child);
      if (!steps.empty()) {
        auto cid = new_node(id, depth);
        tree.nodes[id].tactic = Tactic::propagate;
        tree.nodes[id].children.push_back(cid);
        std::vector<Assignment> seq;
        for (const auto& st : steps) seq.push_back(st.assignment);
        tree.nodes[cid].assumptions = seq;
        if (!child.contradiction) child.compact();
        if (opt.verify) {
          bool ok = true;
          // Each step must be read off an equation derived from the parent.
          std::map<std::uint32_t, const Polynomial*> by_origin;
          for (const auto& slot : s.eqs)
            if (slot.poly) by_origin[slot.origin] = slot.poly.get();
          std::vector<char> nz = s.nonzero;
          for (std::size_t i = 0; i < steps.size() && ok; ++i) {
            auto it = by_origin.find(steps[i].origin);
            if (it == by_origin.end()) {
              ok = false;
              break;
            }
            Polynomial r = *it->second;
            for (std::size_t k = 0; k < i; ++k)
              if (r.contains(seq[k].var)) r = r.substitute(seq[k].var, seq[k].value);
            r = normalize_equation(r, nz);
            if (!(r == steps[i].source)) ok = false;
            if (!solves_for(r, seq[i].var, seq[i].value)) ok = false;
            if (nz[seq[i].var]) {
              if (seq[i].value.size() != 1) ok = false;
              for (auto v : seq[i].value.variables()) nz[v] = 1;
            }
          }
          if (ok) {
            auto ref = reference_child(parent_system, resolve_sequence(seq), nz);
            ok = same_child(ref, child) && (child.contradiction || nz == child.nonzero);
          }
          tree.nodes[cid].verified = ok;
        }
        stack.push_back(Work{cid, std::move(child)});
        continue;
      }
    }

    // lattice
    if (auto lat = find_lattice(s)) {
      tree.nodes[id].tactic = Tactic::lattice;
      tree.nodes[id].lattice_vars = lat->system.vars;
      tree.nodes[id].lattice_equations = lat->system.equations;
      bool lattice_ok = true;
      if (opt.verify) lattice_ok = enumerate_binomial(lat->system) == lat->solutions;
      if (lat->solutions.empty()) {
        // No rational point: the lattice node closes the branch.
        auto cid = new_node(id, depth);
        tree.nodes[id].children.push_back(cid);
        State child = s;
        child.contradiction = true;
        child.reason = "binomial system has no rational solution";
        tree.nodes[cid].verified = lattice_ok;
        stack.push_back(Work{cid, std::move(child)});
        continue;
      }
      std::vector<Work> kids;
      for (const auto& sol : lat->solutions) {
        auto cid = new_node(id, depth);
        tree.nodes[id].children.push_back(cid);
        State child = s;
        std::vector<Assignment> seq;
        for (std::size_t j = 0; j < sol.size(); ++j) {
          seq.push_back(Assignment{lat->system.vars[j], Polynomial(sol[j])});
          substitute_in_state(child, lat->system.vars[j], Polynomial(sol[j]));
          if (child.contradiction) break;
        }
        tree.nodes[cid].assumptions = seq;
        if (!child.contradiction) child.compact();
        if (opt.verify) {
          bool ok = lattice_ok && lat->system.satisfied_by(sol);
          if (ok) ok = same_child(reference_child(parent_system, resolve_sequence(seq), s.nonzero), child);
          tree.nodes[cid].verified = ok;
        }
        kids.push_back(Work{cid, std::move(child)});
      }
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
      continue;
    }

    // roots
    {
      const Polynomial* uni = nullptr;
      for (const auto& slot : s.eqs)
        if (slot.poly && slot.poly->variables().size() == 1) {
          uni = slot.poly.get();
          break;
        }
      if (uni) {
        const Var x = *uni->variables().begin();
        auto roots = univariate_rational_roots(*uni, x);
        if (s.nonzero[x]) std::erase(roots, Rational(0));
        tree.nodes[id].tactic = Tactic::roots;
        tree.nodes[id].lattice_vars = {x};
        tree.nodes[id].lattice_equations = {*uni};
        bool roots_ok = !opt.verify || roots_complete(*uni, x, roots);
        if (roots.empty()) {
          auto cid = new_node(id, depth);
          tree.nodes[id].children.push_back(cid);
          State child = s;
          child.contradiction = true;
          child.reason = "no rational root";
          tree.nodes[cid].verified = roots_ok;
          stack.push_back(Work{cid, std::move(child)});
          continue;
        }
        std::vector<Work> kids;
        for (const auto& r : roots) {
          auto cid = new_node(id, depth);
          tree.nodes[id].children.push_back(cid);
          State child = s;
          substitute_in_state(child, x, Polynomial(r));
          tree.nodes[cid].assumptions = {Assignment{x, Polynomial(r)}};
          if (!child.contradiction) child.compact();
          if (opt.verify) {
            tree.nodes[cid].verified =
                roots_ok && same_child(reference_child(parent_system, {{x, Polynomial(r)}}, s.nonzero), child);
          }
          kids.push_back(Work{cid, std::move(child)});
        }
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
        continue;
      }
    }

    // split
    std::optional<Var> pick;
    for (const auto& slot : s.eqs) {
      if (!slot.poly) continue;
      for (auto v : slot.poly->variables())
        if (!s.nonzero[v] && (!pick || v < *pick)) pick = v;
    }
    if (!pick) {
      // eliminate
      std::optional<Elimination> elim;
      try {
        elim = find_elimination(s, opt.groebner_budget);
      } catch (const ResourceLimit& e) {
        tree.nodes[id].note = e.what();
      }
      if (!elim || !elim->eliminant) {
        tree.nodes[id].leaf = LeafKind::partial;
        if (tree.nodes[id].note.empty()) tree.nodes[id].note = "no tactic applies";
        tree.complete = false;
        continue;
      }
      const Var x = elim->target;
      const Polynomial& g = *elim->eliminant;
      tree.nodes[id].tactic = Tactic::eliminate;
      tree.nodes[id].lattice_vars = {x};
      tree.nodes[id].lattice_equations = {g};
      bool elim_ok = true;
      if (opt.verify) {
        try {
          elim_ok = in_ideal(g, elim->equations, elim->vars, opt.groebner_budget);
        } catch (const ResourceLimit&) {
          elim_ok = false;
        }
      }
      std::vector<Rational> roots;
      if (!g.is_constant()) {
        roots = univariate_rational_roots(g, x);
        if (opt.verify) elim_ok = elim_ok && roots_complete(g, x, roots);
      }
      if (s.nonzero[x]) std::erase(roots, Rational(0));
      if (roots.empty()) {
        auto cid = new_node(id, depth);
        tree.nodes[id].children.push_back(cid);
        State child = s;
        child.contradiction = true;
        child.reason = g.is_constant() ? "ideal is the unit ideal" : "eliminant has no admissible rational root";
        tree.nodes[cid].verified = elim_ok;
        stack.push_back(Work{cid, std::move(child)});
        continue;
      }
      std::vector<Work> kids;
      for (const auto& r : roots) {
        auto cid = new_node(id, depth);
        tree.nodes[id].children.push_back(cid);
        State child = s;
        substitute_in_state(child, x, Polynomial(r));
        tree.nodes[cid].assumptions = {Assignment{x, Polynomial(r)}};
        if (!child.contradiction) child.compact();
        if (opt.verify) {
          tree.nodes[cid].verified =
              elim_ok && same_child(reference_child(parent_system, {{x, Polynomial(r)}}, s.nonzero), child);
        }
        kids.push_back(Work{cid, std::move(child)});
      }
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
      continue;
    }
    if (depth >= opt.split_budget) {
      tree.nodes[id].leaf = LeafKind::partial;
      tree.nodes[id].note = "split budget exhausted";
      tree.complete = false;
      continue;
    }
    const Var x = *pick;
    tree.nodes[id].tactic = Tactic::split;
    tree.nodes[id].split_var = x;
    auto zid = new_node(id, depth + 1);
    auto nid = new_node(id, depth + 1);
    tree.nodes[id].children = {zid, nid};
    State zero = s;
    substitute_in_state(zero, x, Polynomial());
    if (!zero.contradiction) zero.compact();
    tree.nodes[zid].assumptions = {Assignment{x, Polynomial()}};
    std::vector<char> nz_zero = s.nonzero, nz_one = s.nonzero;
    nz_one[x] = 1;
    State nonzero = std::move(s);
    mark_nonzero(nonzero, x);
    if (!nonzero.contradiction) nonzero.compact();
    tree.nodes[nid].assumed_nonzero = {x};
    if (opt.verify) {
      tree.nodes[zid].verified = same_child(reference_child(parent_system, {{x, Polynomial()}}, nz_zero), zero) &&
                                 (zero.contradiction || zero.nonzero == nz_zero);
      tree.nodes[nid].verified = same_child(reference_child(parent_system, {}, nz_one), nonzero) &&
                                 (nonzero.contradiction || nonzero.nonzero == nz_one);
    }
    stack.push_back(Work{nid, std::move(nonzero)});
    stack.push_back(Work{zid, std::move(zero)});
  }
  if (!opt.verify) tree.all_verified = false;
  return tree;
}

}  // namespace sullivan
