// Acceptance runner: one "criterion N: PASS|FAIL: details" line per
// criterion. With no argument every criterion runs; with a number only that
// one, and the exit status is nonzero when it fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace sullivan;
using fixtures::lambda_solutions;
using fixtures::load_graph;
using fixtures::load_group;

namespace {

struct Outcome {
  bool pass = false;
  std::string details;
};

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

struct Classified {
  MGAlgebra mg;
  EndoClassification cls;
  double seconds = 0;
};

const Classified& classified(const std::string& name, Rational u1 = 0, Rational u2 = 1) {
  static std::map<std::string, std::unique_ptr<Classified>> cache;
  auto& slot = cache[name + "/" + to_string(u1) + "/" + to_string(u2)];
  if (!slot) {
    auto t0 = std::chrono::steady_clock::now();
    auto mg = build_mg(load_graph(name), u1, u2);
    auto cls = classify_endos(mg);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slot = std::make_unique<Classified>(Classified{std::move(mg), std::move(cls), s});
  }
  return *slot;
}

const std::vector<std::string> kGraphs{"p2.graph", "p3.graph", "k3.graph", "tree7.graph"};

std::string short_name(const std::string& file) { return file.substr(0, file.find('.')); }

// ---- 1 ----

Outcome kernel_laws() {
  struct Case {
    std::string name;
    AlgebraPtr alg;
    int max_degree;
  };
  std::vector<Case> cases{{"M_P2", build_mg(load_graph("p2.graph")).algebra, 130},
                          {"M_K3", build_mg(load_graph("k3.graph")).algebra, 130},
                          {"L(a2,b3)", make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}}), 12}};
  std::mt19937_64 rng(1);
  std::vector<std::string> notes;
  bool ok = true;
  for (const auto& c : cases) {
    const auto& a = *c.alg;
    std::map<int, std::vector<Monomial>> bases;
    for (int k = 0; k <= c.max_degree; ++k) {
      auto b = basis_of_degree(a, k);
      if (!b.empty()) bases.emplace(k, std::move(b));
    }
    std::vector<int> degs;
    for (const auto& [k, b] : bases) degs.push_back(k);
    std::uniform_int_distribution<std::size_t> pick_deg(0, degs.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3), terms(1, 3);
    auto random_elem = [&](int& deg) {
      deg = degs[pick_deg(rng)];
      const auto& b = bases.at(deg);
      std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
      RElement e(a.universe());
      for (int t = terms(rng); t > 0; --t) e.add_term(b[pick(rng)], Rational(coeff(rng)));
      return e;
    };
    int failures = 0, nonzero = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      int p, q, r;
      auto x = random_elem(p), y = random_elem(q), z = random_elem(r);
      auto xy = x * y;
      if (!xy.is_zero()) ++nonzero;
      Rational sign = (p % 2 && q % 2) ? -1 : 1;
      bool good = xy == (y * x).scaled(sign);
      good = good && (xy * z == x * (y * z));
      auto lhs = differentiate(a, xy);
      auto rhs = differentiate(a, x) * y + (x * differentiate(a, y)).scaled(p % 2 ? Rational(-1) : Rational(1));
      good = good && lhs == rhs;
      good = good && differentiate(a, differentiate(a, x)).is_zero() && differentiate(a, differentiate(a, xy)).is_zero();
      if (!good) ++failures;
    }
    ok = ok && failures == 0 && nonzero > 0;
    notes.push_back(c.name + " " + std::to_string(1000 - failures) + "/1000 (" + std::to_string(nonzero) +
                    " nonzero products)");
  }
  return {ok, join(notes)};
}

// ---- 2 ----

RElement stand_in_x(const MGAlgebra& mg, RElement* witness) {
  long n = formal_dimension(*mg);
  long k = (n - 1 - 119) / 8;
  const auto& u = mg.algebra->universe();
  RElement w = RElement::generator(u, static_cast<std::uint32_t>(mg.z())) *
               RElement::generator(u, static_cast<std::uint32_t>(mg.x1()), static_cast<std::uint32_t>(k));
  RElement x = differentiate(*mg, w);
  *witness = w * x;
  return x;
}

Outcome construction() {
  auto p2 = build_mg(load_graph("p2.graph"));
  auto k3 = build_mg(load_graph("k3.graph"));
  auto s = check_structure(*p2);
  long fp2 = formal_dimension(*p2), fk3 = formal_dimension(*k3);
  RElement w;
  auto x = stand_in_x(p2, &w);
  auto te = tilde_extend(p2.algebra, x, w);
  long ft = formal_dimension(*te.extended);
  bool ok = s.ok() && s.minimal && fp2 == 368 && fk3 == 448 && ft == 735;
  std::ostringstream os;
  os << "P2 structure " << (s.ok() && s.minimal ? "ok" : "FAILED") << ", formal dimensions P2 " << fp2 << " K3 " << fk3
     << ", tilde P2 " << ft;
  return {ok, os.str()};
}

// ---- 3 ----

Outcome ellipticity_for(const std::vector<std::pair<Rational, Rational>>& variants,
                        const std::vector<std::string>& graphs) {
  std::vector<std::string> bad;
  int certs = 0, identities = 0;
  for (const auto& [u1, u2] : variants)
    for (const auto& g : graphs) {
      auto mg = build_mg(load_graph(g), u1, u2);
      auto cert = ellipticity_certificate(mg);
      ++certs;
      std::string tag = short_name(g) + "(" + to_string(u1) + "," + to_string(u2) + ")";
      if (!cert.valid) bad.push_back(tag + " certificate");
      auto pure = pure_part(*mg);
      const auto& u = mg.algebra->universe();
      auto e1 = parse_element(u, "z*x1^2 - y2*x2^10");
      auto e2 = parse_element(u, "z*x2 - y1*x1^12");
      bool w1 = differentiate(pure, e1) == parse_element(u, "x1^17");
      bool w2 = differentiate(pure, e2) == parse_element(u, "x2^13");
      if (w1 && w2)
        identities += 2;
      else
        bad.push_back(tag + " witness identity");
    }
  std::ostringstream os;
  os << certs << " certificates, " << identities << " witness identities";
  if (!bad.empty()) os << "; failed: " << join(bad);
  return {bad.empty(), os.str()};
}

Outcome ellipticity() { return ellipticity_for({{0, 1}, {1, 0}, {1, 1}}, kGraphs); }

// ---- 4 ----

struct CountCheck {
  std::size_t measured = 0, expected = 0, oracle = 0;
  bool reps_ok = true, tree_ok = true;
};

CountCheck count_check(const std::string& g, Rational u1 = 0, Rational u2 = 1) {
  const auto& c = classified(g, u1, u2);
  CountCheck k;
  auto aut = automorphism_group(c.mg.graph).order();
  k.measured = c.cls.classes.size();
  k.expected = aut + 2;
  if (u1 == 0 && u2 == 1) k.oracle = aut + 1 + lambda_solutions(c.mg.graph).size();
  for (const auto& cl : c.cls.classes) k.reps_ok = k.reps_ok && is_dga_morphism(cl.representative);
  k.tree_ok = c.cls.tree.complete && c.cls.tree.all_verified;
  for (const auto& n : c.cls.tree.nodes) k.tree_ok = k.tree_ok && n.verified;
  return k;
}

Outcome classification() {
  bool ok = true, oracle_ok = true, reps = true, tree = true;
  std::vector<std::string> counts;
  for (const auto& g : kGraphs) {
    auto k = count_check(g);
    ok = ok && k.measured == k.expected;
    oracle_ok = oracle_ok && k.measured == k.oracle;
    reps = reps && k.reps_ok;
    tree = tree && k.tree_ok;
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << short_name(g) << " " << k.measured << " (expected " << k.expected << ", " << classified(g).seconds << "s)";
    counts.push_back(os.str());
  }
  std::string d = "class counts " + join(counts) + "; |Aut|+1+#lambda oracle " +
                  (oracle_ok ? "agrees" : "DISAGREES") + "; representatives " + (reps ? "DGA" : "NOT DGA") +
                  "; case-tree nodes " + (tree ? "all verified" : "NOT verified");
  if (!ok) d += "; extra classes x_v -> lam_v x2^4 with lam_v(lam_v^2 + sum_{w~v} lam_w) = 0 are not homotopic to f0/f1";
  return {ok && reps && tree, d};
}

// ---- 5 ----

std::string equivalence_for(const std::string& g, Rational u1, Rational u2, bool& ok) {
  const auto& c = classified(g, u1, u2);
  auto eq = equivalence_group(c.mg, c.cls);
  auto aut = automorphism_group(c.mg.graph).order();
  bool good = eq.witness.isomorphic && eq.group.order() == aut && eq.sigma_homomorphism;
  ok = ok && good;
  return short_name(g) + " " + std::to_string(eq.group.order()) + (good ? "~" : "!~") + std::to_string(aut);
}

Outcome realization() {
  bool ok = true;
  std::vector<std::string> notes;
  for (const auto& g : kGraphs) notes.push_back(equivalence_for(g, 0, 1, ok));
  PipelineConfig cfg;
  for (const char* name : {"trivial.group", "z2.group"}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = run_realize(load_group(name), cfg);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && r.ok;
    std::ostringstream os;
    os << "realize " << short_name(name) << " " << r.report.value("status", "?") << " |E|="
       << r.report.value("equivalence_order", 0) << " (" << static_cast<int>(s) << "s)";
    notes.push_back(os.str());
  }
  // Z3: the Frucht graph is built and checked; classifying it is beyond desk
  // scale, so the stage is reported with its measured size instead of run.
  auto z3 = load_group("z3.group");
  auto fr = frucht_graph(z3.group, z3.generators);
  bool fr_ok = fr.witness.isomorphic;
  auto b = run_build(fr.graph, cfg);
  auto gm = generic_ansatz(b.mg);
  auto cs = constraint_system(gm);
  std::size_t expect = fr.automorphisms.order() + 1 + lambda_solutions(fr.graph).size();
  ok = ok && fr_ok && b.ok();
  std::ostringstream os;
  os << "Z3 Frucht graph " << fr.graph.size() << " vertices, Aut " << (fr_ok ? "~" : "!~") << " Z3, build "
     << (b.ok() ? "ok" : "FAILED") << ", classification not run (" << gm.unknowns.size() << " unknowns, "
     << cs.equations.size() << " equations, " << expect << " classes by the vertex-condition oracle)";
  notes.push_back(os.str());
  return {ok, join(notes)};
}

// ---- 6 ----

Outcome rigidity() {
  const auto& c = classified("tree7.graph");
  auto eq = equivalence_group(c.mg, c.cls);
  bool kernels = true;
  for (const auto& cl : c.cls.classes)
    if (cl.kind != EndoKind::automorphism) kernels = kernels && degree_certificate(c.mg, cl).reason == DegreeReason::kernel;
  bool ok = eq.group.order() == 1 && kernels && c.cls.count(EndoKind::automorphism) == 1;
  std::ostringstream os;
  os << "tree7 |E| = " << eq.group.order() << "; the other " << c.cls.classes.size() - 1
     << " classes " << (kernels ? "all kill a class in degree 40 (not equivalences)" : "NOT all certified non-invertible");
  return {ok, os.str()};
}

// ---- 7 ----

Outcome homotopy_quotient() {
  std::mt19937_64 rng(7);
  std::size_t tried = 0, same = 0, moved = 0;
  std::vector<std::string> bad;
  for (const auto& g : kGraphs) {
    const auto& c = classified(g);
    const auto& a = *c.mg.algebra;
    for (const auto& cl : c.cls.classes)
      for (int k = 0; k < 50; ++k) {
        auto im = cl.representative.images();
        for (auto gen : detail::upper_generators(c.mg)) {
          auto dm = differentiate(a, fixtures::random_element(a, 118, rng));
          if (!dm.is_zero()) ++moved;
          im[gen] += dm;
        }
        Morphism f(c.mg.algebra, c.mg.algebra, im);
        ++tried;
        bool hit = false;
        try {
          hit = is_dga_morphism(f) && classify_homotopy(c.mg, f, &c.cls.classes).name == cl.name;
        } catch (const Error&) {
        }
        if (hit)
          ++same;
        else
          bad.push_back(short_name(g) + "/" + cl.name);
      }
  }
  std::ostringstream os;
  os << same << "/" << tried << " perturbed representatives kept their class (" << moved << " nonzero perturbations)";
  if (!bad.empty()) os << "; failed: " << join(bad);
  return {same == tried && moved > tried, os.str()};
}

// ---- 8 ----

/// Cohomology of L(a,b,y), |a|=2, |b|=3, |y|=1, db = a^2, dy = a, by rank of
/// d on the basis a^i b^j y^k. d(a^i b^j y^k) = j a^(i+2) y^k + (-1)^j k a^(i+1) b^j.
std::vector<std::size_t> small_tilde_oracle(int top) {
  struct Mono {
    int i, j, k;
    int deg() const { return 2 * i + 3 * j + k; }
    bool operator<(const Mono& o) const { return std::tie(i, j, k) < std::tie(o.i, o.j, o.k); }
  };
  auto basis = [](int n) {
    std::vector<Mono> out;
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k)
        if (n - 3 * j - k >= 0 && (n - 3 * j - k) % 2 == 0) out.push_back({(n - 3 * j - k) / 2, j, k});
    return out;
  };
  auto rank_of_d = [&](int n) -> std::size_t {
    auto src = basis(n), dst = basis(n + 1);
    std::map<Mono, std::size_t> col;
    for (std::size_t c = 0; c < dst.size(); ++c) col[dst[c]] = c;
    std::vector<std::vector<Rational>> m;
    for (const auto& e : src) {
      std::vector<Rational> row(dst.size(), Rational(0));
      if (e.j) row[col.at({e.i + 2, 0, e.k})] += 1;
      if (e.k) row[col.at({e.i + 1, e.j, 0})] += e.j ? -1 : 1;
      m.push_back(row);
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < dst.size() && r < m.size(); ++c) {
      std::size_t p = r;
      while (p < m.size() && m[p][c] == 0) ++p;
      if (p == m.size()) continue;
      std::swap(m[p], m[r]);
      for (std::size_t q = 0; q < m.size(); ++q)
        if (q != r && m[q][c] != 0) {
          Rational f = m[q][c] / m[r][c];
          for (std::size_t t = 0; t < dst.size(); ++t) m[q][t] -= f * m[r][t];
        }
      ++r;
    }
    return r;
  };
  std::vector<std::size_t> dims;
  for (int n = 0; n <= top; ++n) dims.push_back(basis(n).size() - rank_of_d(n) - (n ? rank_of_d(n - 1) : 0));
  return dims;
}

Outcome tilde_inflexibility() {
  auto base = make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}}, 1);
  auto te = tilde_extend(base, base->gen("a"), base->gen("b"));
  std::vector<std::size_t> lib, oracle = small_tilde_oracle(6);
  for (int k = 0; k <= 6; ++k) lib.push_back(cohomology_dim(*te.extended, k));
  const std::vector<std::size_t> stated{1, 0, 0, 1, 0, 0, 0};
  Morphism f = Morphism::from_map(base, base, {{"a", base->gen("a").scaled(2)}, {"b", base->gen("b").scaled(4)}});
  auto ext = extend_to_tilde(te, f);
  auto top = top_scalar(te, ext.map);
  bool small_ok = lib == oracle && lib == stated && ext.scalar == 2 && top && *top == 4;

  std::vector<std::string> degs;
  bool in01 = true, negative = false;
  for (const auto& g : kGraphs) {
    const auto& c = classified(g);
    std::vector<DegreeCertificate> certs;
    std::set<int> seen;
    for (const auto& cl : c.cls.classes) {
      certs.push_back(degree_certificate(c.mg, cl));
      seen.insert(certs.back().tilde_degree);
    }
    for (int d : seen) in01 = in01 && (d == 0 || d == 1);
    negative = negative || has_negative_degree(certs);
    in01 = in01 && is_inflexible(certs);
    std::vector<std::string> s;
    for (int d : seen) s.push_back(std::to_string(d));
    degs.push_back(short_name(g) + " {" + join(s, ",") + "}");
  }
  std::ostringstream os;
  os << "tilde L(a,b) dims";
  for (auto d : lib) os << " " << d;
  os << (lib == oracle ? " (rank oracle agrees)" : " (rank oracle DISAGREES)") << "; a=2 gives degree "
     << (top ? to_string(*top) : "none") << "; tilde degrees " << join(degs) << (negative ? "; NEGATIVE degree" : "");
  return {small_ok && in01 && !negative, os.str()};
}

// ---- 9 ----

Outcome functoriality() {
  std::map<std::string, Graph> graphs;
  std::map<std::string, MGAlgebra> algs;
  for (const char* n : {"p2", "p3", "k3", "star3"}) {
    graphs.emplace(n, load_graph(std::string(n) + ".graph"));
    algs.emplace(n, build_mg(graphs.at(n)));
  }
  struct Arrow {
    std::string src, dst;
    std::map<std::string, std::string> map;
  };
  std::vector<Arrow> corpus;
  for (const auto& [s, gs] : graphs)
    for (const auto& [t, gt] : graphs)
      for (auto& m : fixtures::full_monomorphisms(gs, gt)) corpus.push_back({s, t, std::move(m)});
  auto image = [&](const Arrow& a) {
    GraphMorphism gm{&graphs.at(a.src), &graphs.at(a.dst), a.map};
    return functor_morphism(gm, algs.at(a.dst), algs.at(a.src));
  };
  std::size_t dga = 0, pairs = 0, contra = 0, autos = 0, inverse = 0;
  for (const auto& a : corpus)
    if (is_dga_morphism(image(a))) ++dga;
  for (const auto& m : corpus)
    for (const auto& n : corpus) {
      if (m.dst != n.src) continue;
      Arrow nm{m.src, n.dst, {}};
      for (const auto& [v, w] : m.map) nm.map[v] = n.map.at(w);
      ++pairs;
      if (image(nm) == compose(image(m), image(n))) ++contra;
    }
  for (const auto& [name, g] : graphs) {
    const auto& mg = algs.at(name);
    auto aut = automorphism_group(g);
    for (const auto& s : aut.elements()) {
      ++autos;
      GraphMorphism gm{&g, &g, label_map(g, s)};
      if (functor_morphism(gm, mg, mg) == automorphism_map(mg, s.inverse())) ++inverse;
    }
  }
  std::ostringstream os;
  os << corpus.size() << " full monomorphisms, " << dga << " DGA images; contravariance " << contra << "/" << pairs
     << " composable pairs; F(sigma) = f_{sigma^-1} " << inverse << "/" << autos;
  return {corpus.size() >= 10 && dga == corpus.size() && contra == pairs && pairs > 0 && inverse == autos, os.str()};
}

// ---- 10 ----

Outcome variants() {
  std::vector<std::pair<Rational, Rational>> vs{{0, 1}, {1, 0}, {1, 1}};
  auto ell = ellipticity_for({{1, 0}, {1, 1}}, {"p2.graph"});
  bool eq_ok = true, reps = true;
  std::set<std::size_t> counts;
  std::vector<std::string> notes;
  for (const auto& [u1, u2] : vs) {
    auto k = count_check("p2.graph", u1, u2);
    counts.insert(k.measured);
    reps = reps && k.reps_ok && k.tree_ok;
    auto e = equivalence_for("p2.graph", u1, u2, eq_ok);
    notes.push_back("(" + to_string(u1) + "," + to_string(u2) + ") " + std::to_string(k.measured) + " classes, " + e);
  }
  bool ok = ell.pass && eq_ok && reps && counts.size() == 1 && *counts.begin() == 4;
  std::string d = "P2 " + join(notes) + "; ellipticity " + (ell.pass ? "valid" : "FAILED") + "; trees " +
                  (reps ? "verified" : "NOT verified") + (counts.size() == 1 ? "" : "; class counts differ");
  return {ok, d};
}

// ---- 11 ----

Outcome invariants_disagree() {
  const auto& p3 = classified("p3.graph");
  const auto& k3 = classified("k3.graph");
  auto op = equivalence_group(p3.mg, p3.cls).group.order();
  auto ok3 = equivalence_group(k3.mg, k3.cls).group.order();
  auto cp = p3.cls.classes.size(), ck = k3.cls.classes.size();
  bool disagree = cp != ck && op != ok3;
  bool stated = cp == 4 && ck == 8;
  std::ostringstream os;
  os << "class counts P3 " << cp << " vs K3 " << ck << " (stated 4 vs 8), group orders " << op << " vs " << ok3
     << "; invariants " << (disagree ? "disagree" : "AGREE");
  return {disagree && stated, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{
      kernel_laws,        construction,        ellipticity, classification, realization, rigidity,
      homotopy_quotient,  tilde_inflexibility, functoriality, variants,     invariants_disagree};
  std::vector<int> which;
  if (argc > 1) {
    int n = std::atoi(argv[1]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << ": " << o.details << std::endl;
  }
  return all ? 0 : 1;
}
