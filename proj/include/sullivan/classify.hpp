#pragma once

// Homotopy classes of self-maps of M_G, read off a complete case tree.
//
// Two endomorphisms are identified when they agree on every generator below
// degree 119 and their differences on z and each z_v are exact. Classes come
// in three kinds: f_sigma for a graph automorphism sigma, the constant maps
// f_0 and f_1, and any further class the solver produces (kind `other`).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sullivan/ansatz.hpp"
#include "sullivan/automorphism.hpp"
#include "sullivan/case_solver.hpp"
#include "sullivan/cohomology.hpp"
#include "sullivan/mg.hpp"
#include "sullivan/morphism.hpp"
#include "sullivan/perm_group.hpp"

namespace sullivan {

enum class EndoKind { automorphism, constant, other };

inline const char* to_string(EndoKind k) {
  switch (k) {
    case EndoKind::automorphism: return "automorphism";
    case EndoKind::constant: return "constant";
    case EndoKind::other: return "other";
  }
  return "?";
}

struct EndoClass {
  EndoKind kind = EndoKind::other;
  std::optional<Permutation> sigma;  ///< vertex indices of the graph
  int s = -1;                        ///< 0 or 1 for constant classes
  Morphism representative;
  std::string name;
  std::vector<std::size_t> leaves;   ///< solved leaves of the case tree in this class
  std::size_t free_parameters = 0;   ///< largest number of free unknowns on one leaf
  std::string exact_freedom;
};

/// Classification refused or contradicted by a certificate.
class ClassificationMismatch : public InvariantViolation {
 public:
  explicit ClassificationMismatch(const std::string& what) : InvariantViolation(what) {}
};

struct ClassifyOptions {
  SolverOptions solver;
  std::uint64_t seed = 1;
  std::size_t samples = 2;  ///< random specializations checked per leaf with free unknowns
  std::size_t budget = kDefaultMonomialBudget;
};

struct EndoClassification {
  GenericMorphism ansatz;
  CaseTree tree;
  std::vector<EndoClass> classes;

  std::size_t count(EndoKind k) const {
    return static_cast<std::size_t>(
        std::count_if(classes.begin(), classes.end(), [k](const EndoClass& c) { return c.kind == k; }));
  }
};

namespace detail {

inline bool is_lower(const MGAlgebra& mg, std::size_t g) {
  if (g == mg.z()) return false;
  for (std::size_t k = 0; k < mg.vertex_count(); ++k)
    if (g == mg.zv(k)) return false;
  return true;
}

inline std::vector<std::size_t> upper_generators(const MGAlgebra& mg) {
  std::vector<std::size_t> out{mg.z()};
  for (std::size_t k = 0; k < mg.vertex_count(); ++k) out.push_back(mg.zv(k));
  return out;
}

/// Vertex index in the graph of the k-th sorted label.
inline std::uint32_t vertex_of_slot(const MGAlgebra& mg, std::size_t k) {
  return static_cast<std::uint32_t>(mg.graph.index_of(mg.labels[k]));
}

}  // namespace detail

/// f_s: s on x1, x2, y_i, z; zero on every x_v and z_v.
inline Morphism constant_map(const MGAlgebra& mg, int s) {
  const auto& a = mg.algebra;
  std::vector<RElement> im;
  for (std::size_t g = 0; g < a->size(); ++g) {
    bool base = g < 5 || g == mg.z();
    im.push_back(base && s != 0 ? a->gen(g).scaled(Rational(s)) : a->zero());
  }
  return Morphism(a, a, std::move(im));
}

/// f_sigma: x_v -> x_sigma(v), z_v -> z_sigma(v), identity elsewhere.
inline Morphism automorphism_map(const MGAlgebra& mg, const Permutation& sigma) {
  if (!is_automorphism(mg.graph, sigma)) throw ValidationError("permutation is not a graph automorphism");
  const auto& a = mg.algebra;
  std::vector<RElement> im;
  for (std::size_t g = 0; g < a->size(); ++g) im.push_back(a->gen(g));
  for (std::size_t k = 0; k < mg.vertex_count(); ++k) {
    const auto& target = mg.graph.label(sigma(detail::vertex_of_slot(mg, k)));
    im[mg.xv(k)] = a->gen(mg.xv(mg.slot(target)));
    im[mg.zv(k)] = a->gen(mg.zv(mg.slot(target)));
  }
  return Morphism(a, a, std::move(im));
}

/// sigma when f(x1) = x1, f(x2) = x2 and f permutes the x_v.
inline std::optional<Permutation> read_vertex_permutation(const MGAlgebra& mg, const Morphism& f) {
  const auto& a = *mg.algebra;
  if (!(f.image(mg.x1()) == a.gen(mg.x1())) || !(f.image(mg.x2()) == a.gen(mg.x2()))) return std::nullopt;
  std::vector<std::uint32_t> img(mg.vertex_count());
  for (std::size_t k = 0; k < mg.vertex_count(); ++k) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < mg.vertex_count(); ++j)
      if (f.image(mg.xv(k)) == a.gen(mg.xv(j))) hit = j;
    if (!hit) return std::nullopt;
    img[detail::vertex_of_slot(mg, k)] = detail::vertex_of_slot(mg, *hit);
  }
  try {
    return Permutation(std::move(img));
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

struct HomotopyCheck {
  bool homotopic = false;
  std::string reason;
  explicit operator bool() const { return homotopic; }
};

/// Images below degree 119; homotopic maps share it.
inline std::string lower_key(const MGAlgebra& mg, const Morphism& f) {
  std::string key;
  for (std::size_t i = 0; i < mg.algebra->size(); ++i)
    if (detail::is_lower(mg, i)) key += f.image(i).to_string() + ";";
  return key;
}

/// Agreement below degree 119 plus exact differences on z and the z_v.
inline HomotopyCheck homotopy_check(const MGAlgebra& mg, const Morphism& f, const Morphism& g,
                                    std::size_t budget = kDefaultMonomialBudget) {
  const auto& a = *mg.algebra;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (detail::is_lower(mg, i) && !(f.image(i) == g.image(i)))
      return {false, "images of " + a.generators()[i].name + " differ"};
  for (auto i : detail::upper_generators(mg)) {
    auto ans = solve_exactness(a, f.image(i) - g.image(i), budget);
    if (!ans) return {false, "difference on " + a.generators()[i].name + " is not exact (" + ans.reason + ")"};
  }
  return {true, ""};
}

/// Kind and canonical representative read off the images below degree 119.
inline EndoClass canonical_class(const MGAlgebra& mg, const Morphism& f) {
  const auto& a = *mg.algebra;
  auto all_xv_zero = [&] {
    for (std::size_t k = 0; k < mg.vertex_count(); ++k)
      if (!f.image(mg.xv(k)).is_zero()) return false;
    return true;
  };
  for (int s : {0, 1}) {
    if (f.image(mg.x1()) == a.gen(mg.x1()).scaled(Rational(s)) && all_xv_zero()) {
      return EndoClass{EndoKind::constant, std::nullopt, s, constant_map(mg, s), "f" + std::to_string(s), {}, 0, ""};
    }
  }
  if (auto sigma = read_vertex_permutation(mg, f); sigma && is_automorphism(mg.graph, *sigma)) {
    return EndoClass{EndoKind::automorphism, sigma, -1, automorphism_map(mg, *sigma),
                     "f_sigma " + label_cycles(mg.graph, *sigma), {}, 0, ""};
  }
  std::string desc;
  for (std::size_t k = 0; k < mg.vertex_count(); ++k) {
    if (!desc.empty()) desc += ", ";
    desc += a.generators()[mg.xv(k)].name + " -> " + f.image(mg.xv(k)).to_string();
  }
  return EndoClass{EndoKind::other, std::nullopt, -1, f, "other: " + desc, {}, 0, ""};
}

/// Class of a single endomorphism. Against `known` classes when given;
/// otherwise against the canonical f_sigma / f_s (or f itself when its images
/// below degree 119 fit neither).
inline EndoClass classify_homotopy(const MGAlgebra& mg, const Morphism& f, const std::vector<EndoClass>* known = nullptr,
                                   std::size_t budget = kDefaultMonomialBudget) {
  if (!(*f.source() == *mg.algebra) || !(*f.target() == *mg.algebra)) {
    throw DomainMismatch("morphism is not an endomorphism of this algebra");
  }
  if (auto bad = dga_failures(f); !bad.empty()) throw ValidationError("morphism does not commute with d on " + bad.front());
  if (known) {
    std::string last;
    for (const auto& c : *known) {
      auto h = homotopy_check(mg, f, c.representative, budget);
      if (h) return c;
      last = h.reason;
    }
    throw ClassificationMismatch("morphism matches none of the " + std::to_string(known->size()) + " classes");
  }
  EndoClass c = canonical_class(mg, f);
  auto h = homotopy_check(mg, f, c.representative, budget);
  if (!h) throw ClassificationMismatch(c.name + ": " + h.reason);
  return c;
}

namespace detail {

inline std::function<Polynomial(Var)> leaf_values(const CaseNode& leaf, const std::map<Var, Rational>& free_values) {
  return [&leaf, free_values](Var v) -> Polynomial {
    auto at = [&](Var x) -> Polynomial {
      auto it = free_values.find(x);
      return it == free_values.end() ? Polynomial(Rational(0)) : Polynomial(it->second);
    };
    if (auto it = leaf.solution.find(v); it != leaf.solution.end()) {
      Polynomial p = it->second;
      for (auto x : p.variables()) p = p.substitute(x, at(x));
      return p;
    }
    return at(v);
  };
}

}  // namespace detail

/// Morphism on a solved leaf with the given values of its free unknowns
/// (missing ones are 0, or 1 when assumed nonzero).
inline Morphism leaf_morphism(const GenericMorphism& gm, const CaseNode& leaf, std::map<Var, Rational> free_values = {}) {
  for (auto v : leaf.free_nonzero)
    if (!free_values.count(v)) free_values[v] = 1;
  for (auto v : leaf.free_nonzero)
    if (free_values[v] == 0) throw ValidationError("free unknown " + gm.name(v) + " is assumed nonzero");
  return specialize(gm, detail::leaf_values(leaf, free_values));
}

inline EndoClassification classify_endos(const MGAlgebra& mg, const ClassifyOptions& opt = {}) {
  EndoClassification out{generic_ansatz(mg, opt.budget), {}, {}};
  auto cs = constraint_system(out.ansatz);
  std::vector<Polynomial> eqs;
  for (const auto& c : cs.equations) eqs.push_back(c.poly);
  std::vector<std::string> names;
  for (const auto& u : out.ansatz.unknowns) names.push_back(u.name);
  out.tree = solve_cases(eqs, names, opt.solver);
  if (!out.tree.complete) throw IncompleteTree("case tree is partial; classification refused");
  if (opt.solver.verify && !out.tree.all_verified) throw InvariantViolation("case tree has an unverified node");

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick(-5, 5);
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (auto id : out.tree.solved_leaves()) {
    const auto& leaf = out.tree.nodes[id];
    Morphism rep = leaf_morphism(out.ansatz, leaf);
    if (auto bad = dga_failures(rep); !bad.empty()) {
      throw InvariantViolation("leaf " + std::to_string(id) + " does not commute with d on " + bad.front());
    }
    EndoClass* home = nullptr;
    auto& bucket = buckets[lower_key(mg, rep)];
    for (auto k : bucket)
      if (homotopy_check(mg, rep, out.classes[k].representative, opt.budget)) home = &out.classes[k];
    if (!home) {
      bucket.push_back(out.classes.size());
      EndoClass c = canonical_class(mg, rep);
      if (c.kind != EndoKind::other && !homotopy_check(mg, rep, c.representative, opt.budget)) {
        // Same images below degree 119 as a canonical map but not homotopic to it.
        c = EndoClass{EndoKind::other, std::nullopt, -1, rep, c.name + " (non-exact upper part)", {}, 0, ""};
      }
      out.classes.push_back(std::move(c));
      home = &out.classes.back();
    }
    home->leaves.push_back(id);
    home->free_parameters = std::max(home->free_parameters, leaf.free.size());
    // Free unknowns may only move f(z), f(z_v) by exact terms.
    for (std::size_t k = 0; k < opt.samples && !leaf.free.empty(); ++k) {
      std::map<Var, Rational> vals;
      for (auto v : leaf.free) {
        int x = pick(rng);
        if (x == 0 && std::find(leaf.free_nonzero.begin(), leaf.free_nonzero.end(), v) != leaf.free_nonzero.end()) x = 1;
        vals[v] = x;
      }
      Morphism f = leaf_morphism(out.ansatz, leaf, vals);
      if (!is_dga_morphism(f)) throw InvariantViolation("sampled leaf morphism does not commute with d");
      auto h = homotopy_check(mg, f, home->representative, opt.budget);
      if (!h) throw ClassificationMismatch("leaf " + std::to_string(id) + " spans more than one class: " + h.reason);
    }
  }
  for (auto& c : out.classes) {
    if (!is_dga_morphism(c.representative)) throw InvariantViolation(c.name + ": representative does not commute with d");
    c.exact_freedom = "f(z), f(z_v) determined up to d(m), m in degree 118; " + std::to_string(c.free_parameters) +
                      " free unknowns on the leaf, " + std::to_string(opt.samples) + " random values checked";
  }
  // Stable order: f0, f1, automorphisms by permutation, then the rest.
  std::stable_sort(out.classes.begin(), out.classes.end(), [](const EndoClass& x, const EndoClass& y) {
    auto rank = [](const EndoClass& c) { return c.kind == EndoKind::constant ? 0 : c.kind == EndoKind::automorphism ? 1 : 2; };
    if (rank(x) != rank(y)) return rank(x) < rank(y);
    if (x.kind == EndoKind::constant) return x.s < y.s;
    if (x.kind == EndoKind::automorphism) return *x.sigma < *y.sigma;
    return x.name < y.name;
  });
  return out;
}

/// The automorphism classes under composition, with a witness isomorphism to
/// Aut(G).
struct EquivalenceGroup {
  PermGroup group;                    ///< left regular action on the automorphism classes
  std::vector<std::size_t> classes;   ///< class indices, in action order
  std::vector<std::vector<std::size_t>> table;  ///< table[i][j] = position of class(c_i o c_j)
  PermGroup automorphisms;
  IsoResult witness;                  ///< group element index -> automorphisms element index
  bool sigma_homomorphism = false;    ///< class(f_s o f_t) = class(f_{st}) throughout
};

inline EquivalenceGroup equivalence_group(const MGAlgebra& mg, const EndoClassification& cls,
                                          std::size_t budget = kDefaultMonomialBudget) {
  std::vector<std::size_t> idx;
  std::vector<EndoClass> autos;
  for (std::size_t i = 0; i < cls.classes.size(); ++i)
    if (cls.classes[i].kind == EndoKind::automorphism) {
      idx.push_back(i);
      autos.push_back(cls.classes[i]);
    }
  const std::size_t n = autos.size();
  if (n == 0) throw InvariantViolation("no automorphism class (the identity is always one)");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  bool hom = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Morphism prod = compose(autos[i].representative, autos[j].representative);
      EndoClass c = classify_homotopy(mg, prod, &autos, budget);
      auto pos = static_cast<std::size_t>(
          std::find_if(autos.begin(), autos.end(), [&](const EndoClass& x) { return *x.sigma == *c.sigma; }) -
          autos.begin());
      table[i][j] = pos;
      if (!(*c.sigma == *autos[i].sigma * *autos[j].sigma)) hom = false;
    }
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> img(n);
    for (std::size_t j = 0; j < n; ++j) img[j] = static_cast<std::uint32_t>(table[i][j]);
    gens.push_back(Permutation(std::move(img)));
  }
  auto group = PermGroup::from_elements(n, gens);
  if (group.order() != n) throw InvariantViolation("composition table is not a group table");
  auto aut = automorphism_group(mg.graph);
  auto witness = groups_isomorphic(group, aut);
  return EquivalenceGroup{std::move(group), std::move(idx), std::move(table), std::move(aut), std::move(witness), hom};
}

// ---- degree certificates ---------------------------------------------------------

enum class DegreeReason { kernel, identity, finite_order };

inline const char* to_string(DegreeReason r) {
  switch (r) {
    case DegreeReason::kernel: return "kernel";
    case DegreeReason::identity: return "identity";
    case DegreeReason::finite_order: return "finite-order";
  }
  return "?";
}

/// Scalar a of a class on the fundamental class, and the degree a^2 of its
/// extension to the tilde algebra.
struct DegreeCertificate {
  std::string class_name;
  DegreeReason reason = DegreeReason::kernel;
  std::set<int> a;             ///< admissible values; a single value when determined
  int tilde_degree = 0;        ///< a^2, the same for every admissible a
  std::string justification;
  RElement kernel_class;       ///< nonzero class killed by f, for DegreeReason::kernel
};

/// A nonzero element of M^40 sent to zero by f. M^39 = 0, so every element of
/// M^40 is a class and none is exact.
inline std::optional<RElement> kernel_in_degree_40(const MGAlgebra& mg, const Morphism& f,
                                                   std::size_t budget = kDefaultMonomialBudget) {
  const auto& a = *mg.algebra;
  if (!basis_of_degree(a, 39, budget).empty()) throw InvariantViolation("degree 39 is not zero");
  auto basis = basis_of_degree(a, 40, budget);
  // Rows: coordinates of f(b_i) followed by e_i; eliminate on the first block.
  std::map<Monomial, int, MonomialLess> col;
  for (const auto& b : basis) col.emplace(b, static_cast<int>(col.size()));
  const int n = static_cast<int>(basis.size());
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> r(static_cast<std::size_t>(2 * n), Rational(0));
    auto img = apply(f, RElement(a.universe(), basis[static_cast<std::size_t>(i)], Rational(1)));
    for (const auto& [m, c] : img.terms()) r[static_cast<std::size_t>(col.at(m))] = c;
    r[static_cast<std::size_t>(n + i)] = 1;
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (int c = 0; c < n && rank < rows.size(); ++c) {
    auto p = std::find_if(rows.begin() + static_cast<long>(rank), rows.end(),
                          [&](const auto& r) { return r[static_cast<std::size_t>(c)] != 0; });
    if (p == rows.end()) continue;
    std::swap(*p, rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][static_cast<std::size_t>(c)] == 0) continue;
      Rational k = rows[r][static_cast<std::size_t>(c)] / rows[rank][static_cast<std::size_t>(c)];
      for (std::size_t j = 0; j < rows[r].size(); ++j) rows[r][j] -= k * rows[rank][j];
    }
    ++rank;
  }
  if (rank == rows.size()) return std::nullopt;
  RElement k(a.universe());
  for (int i = 0; i < n; ++i) k.add_term(basis[static_cast<std::size_t>(i)], rows[rank][static_cast<std::size_t>(n + i)]);
  if (k.is_zero() || !apply(f, k).is_zero()) throw InvariantViolation("kernel computation in degree 40 failed");
  return k;
}

/// A kernel class forces a = 0 (Poincare duality pairs it with a class whose
/// product is the fundamental class). The identity has a = 1. An invertible
/// f_sigma of order k has a^k = 1, so a = 1 for odd k and a in {-1, 1} else.
inline DegreeCertificate degree_certificate(const MGAlgebra& mg, const EndoClass& c,
                                            std::size_t budget = kDefaultMonomialBudget) {
  DegreeCertificate d;
  d.class_name = c.name;
  d.kernel_class = mg.algebra->zero();
  if (auto k = kernel_in_degree_40(mg, c.representative, budget)) {
    d.reason = DegreeReason::kernel;
    d.a = {0};
    d.kernel_class = *k;
    d.justification = "f kills the nonzero class " + k->to_string() + " in degree 40";
  } else if (c.kind == EndoKind::automorphism && c.sigma->is_identity()) {
    d.reason = DegreeReason::identity;
    d.a = {1};
    d.justification = "identity map";
  } else if (c.kind == EndoKind::automorphism) {
    auto order = c.sigma->order();
    d.reason = DegreeReason::finite_order;
    d.a = order % 2 ? std::set<int>{1} : std::set<int>{-1, 1};
    d.justification = "f_sigma has order " + std::to_string(order) + ", so a^" + std::to_string(order) + " = 1";
  } else {
    throw ValidationError(c.name + ": no degree certificate for this class");
  }
  d.tilde_degree = *d.a.begin() * *d.a.begin();
  for (int a : d.a)
    if (a * a != d.tilde_degree) throw InvariantViolation("admissible scalars disagree on a^2");
  return d;
}

/// Every admissible scalar and every tilde degree lies in {-1, 0, 1}.
inline bool is_inflexible(const std::vector<DegreeCertificate>& certs) {
  for (const auto& d : certs) {
    if (d.tilde_degree < -1 || d.tilde_degree > 1) return false;
    for (int a : d.a)
      if (a < -1 || a > 1) return false;
  }
  return true;
}

inline bool has_negative_degree(const std::vector<DegreeCertificate>& certs) {
  return std::any_of(certs.begin(), certs.end(), [](const DegreeCertificate& d) { return d.tilde_degree < 0; });
}

}  // namespace sullivan
