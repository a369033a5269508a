#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace sullivan;
using sullivan::fixtures::lambda_solutions;
using sullivan::fixtures::load_graph;

namespace {

struct Classified {
  MGAlgebra mg;
  EndoClassification cls;
};

const Classified& classified(const std::string& name, Rational u1 = 0, Rational u2 = 1) {
  static std::map<std::string, std::unique_ptr<Classified>> cache;
  auto key = name + "/" + to_string(u1) + "/" + to_string(u2);
  auto& slot = cache[key];
  if (!slot) {
    auto mg = build_mg(load_graph(name), u1, u2);
    auto cls = classify_endos(mg);
    slot = std::make_unique<Classified>(Classified{std::move(mg), std::move(cls)});
  }
  return *slot;
}

/// Coefficients (of x1^5, of x2^4) in f(x_v), slot order.
std::vector<std::pair<Rational, Rational>> vertex_images(const MGAlgebra& mg, const Morphism& f) {
  const auto& u = mg.algebra->universe();
  auto m5 = parse_element(u, "x1^5").terms().begin()->first;
  auto m4 = parse_element(u, "x2^4").terms().begin()->first;
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t k = 0; k < mg.vertex_count(); ++k) {
    const auto& img = f.image(mg.xv(k));
    out.emplace_back(img.coefficient(m5), img.coefficient(m4));
  }
  return out;
}

bool fixes_low(const MGAlgebra& mg, const Morphism& f) {
  for (std::size_t g = 0; g < 5; ++g)
    if (!(f.image(g) == mg.algebra->gen(g))) return false;
  return true;
}

}  // namespace

class ClassCount : public ::testing::TestWithParam<const char*> {};

// Classes are the automorphisms, f0, and one class per solution lam of the
// vertex condition (lam = 0 is f1).
TEST_P(ClassCount, MatchesVertexConditionOracle) {
  const auto& c = classified(GetParam());
  auto aut = automorphism_group(c.mg.graph);
  auto lams = lambda_solutions(c.mg.graph);
  EXPECT_EQ(c.cls.classes.size(), aut.order() + 1 + lams.size());
  EXPECT_EQ(c.cls.count(EndoKind::automorphism), aut.order());
  EXPECT_EQ(c.cls.count(EndoKind::constant), 2u);

  // The f1-based classes carry exactly the oracle's lam vectors.
  std::set<std::vector<Rational>> from_oracle, from_solver;
  for (const auto& lam : lams) {
    std::vector<Rational> byslot(lam.size());
    for (std::size_t k = 0; k < lam.size(); ++k) byslot[c.mg.slot(c.mg.graph.label(k))] = lam[k];
    from_oracle.insert(byslot);
  }
  for (const auto& cl : c.cls.classes) {
    if (cl.kind == EndoKind::automorphism || (cl.kind == EndoKind::constant && cl.s == 0)) continue;
    ASSERT_TRUE(fixes_low(c.mg, cl.representative)) << cl.name;
    std::vector<Rational> lam;
    for (const auto& [a5, a4] : vertex_images(c.mg, cl.representative)) {
      EXPECT_EQ(a5, 0) << cl.name;
      lam.push_back(a4);
    }
    from_solver.insert(lam);
  }
  EXPECT_EQ(from_oracle, from_solver);
}

INSTANTIATE_TEST_SUITE_P(Graphs, ClassCount,
                         ::testing::Values("p2.graph", "p3.graph", "k3.graph", "star3.graph", "tree7.graph"));

TEST(Classify, RepresentativesAndTree) {
  for (const char* name : {"p2.graph", "p3.graph", "k3.graph"}) {
    const auto& c = classified(name);
    EXPECT_TRUE(c.cls.tree.complete);
    EXPECT_TRUE(c.cls.tree.all_verified);
    for (const auto& cl : c.cls.classes) EXPECT_TRUE(is_dga_morphism(cl.representative)) << name << " " << cl.name;
    EXPECT_EQ(c.cls.classes.front().name, "f0");
    EXPECT_EQ(c.cls.classes[1].name, "f1");
  }
}

TEST(Classify, CompositionStaysInsideTheClassification) {
  for (const char* name : {"p2.graph", "p3.graph"}) {
    const auto& c = classified(name);
    for (const auto& a : c.cls.classes)
      for (const auto& b : c.cls.classes) {
        auto prod = compose(a.representative, b.representative);
        EXPECT_NO_THROW(classify_homotopy(c.mg, prod, &c.cls.classes)) << a.name << " o " << b.name;
      }
  }
}

TEST(Classify, ConstantMapsAbsorb) {
  const auto& c = classified("k3.graph");
  const auto& f0 = c.cls.classes[0];
  for (const auto& cl : c.cls.classes) {
    EXPECT_EQ(classify_homotopy(c.mg, compose(f0.representative, cl.representative), &c.cls.classes).name, "f0");
    EXPECT_EQ(classify_homotopy(c.mg, compose(cl.representative, f0.representative), &c.cls.classes).name, "f0");
  }
}

TEST(Classify, ExactPerturbationsKeepTheClass) {
  const auto& c = classified("p2.graph");
  const auto& a = *c.mg.algebra;
  std::mt19937_64 rng(7);
  std::size_t moved = 0;
  for (const auto& cl : c.cls.classes) {
    for (int k = 0; k < 50; ++k) {
      auto im = cl.representative.images();
      for (auto g : detail::upper_generators(c.mg)) {
        auto dm = differentiate(a, fixtures::random_element(a, 118, rng));
        if (!dm.is_zero()) ++moved;
        im[g] += dm;
      }
      Morphism f(c.mg.algebra, c.mg.algebra, im);
      ASSERT_TRUE(is_dga_morphism(f));
      EXPECT_EQ(classify_homotopy(c.mg, f, &c.cls.classes).name, cl.name);
    }
  }
  EXPECT_GT(moved, 100u);
}

TEST(Classify, NonExactChangeIsRejected) {
  const auto& c = classified("p2.graph");
  auto im = c.cls.classes[1].representative.images();
  im[c.mg.x1()] = im[c.mg.x1()].scaled(2);
  Morphism f(c.mg.algebra, c.mg.algebra, im);
  EXPECT_THROW(classify_homotopy(c.mg, f, &c.cls.classes), ValidationError);
}

TEST(Classify, EquivalenceGroups) {
  for (const char* name : {"p2.graph", "p3.graph", "k3.graph", "tree7.graph"}) {
    const auto& c = classified(name);
    auto eq = equivalence_group(c.mg, c.cls);
    EXPECT_EQ(eq.group.order(), automorphism_group(c.mg.graph).order()) << name;
    EXPECT_TRUE(eq.witness.isomorphic) << name;
    EXPECT_TRUE(eq.sigma_homomorphism) << name;
    EXPECT_TRUE(eq.group.verify_group_axioms()) << name;
  }
}

TEST(Classify, DegreeCertificates) {
  for (const char* name : {"p2.graph", "k3.graph", "tree7.graph"}) {
    const auto& c = classified(name);
    std::vector<DegreeCertificate> certs;
    for (const auto& cl : c.cls.classes) {
      auto d = degree_certificate(c.mg, cl);
      if (cl.kind == EndoKind::automorphism) {
        EXPECT_NE(d.reason, DegreeReason::kernel) << cl.name;
        EXPECT_EQ(d.tilde_degree, 1) << cl.name;
      } else {
        EXPECT_EQ(d.reason, DegreeReason::kernel) << cl.name;
        EXPECT_EQ(d.a, std::set<int>{0}) << cl.name;
        EXPECT_TRUE(apply(cl.representative, d.kernel_class).is_zero());
      }
      certs.push_back(d);
    }
    EXPECT_TRUE(is_inflexible(certs));
    EXPECT_FALSE(has_negative_degree(certs));
  }
}

// Variant (1,1): x_v -> mu x1^5 + lam x2^4 over a small box, checked for
// exactness of f(d z_v) directly. Every hit must be one of the solver's
// f1-based classes, and here the box already finds all of them.
TEST(Classify, VariantBoxSearch) {
  const auto& c = classified("p2.graph", 1, 1);
  const auto& a = *c.mg.algebra;
  const auto& u = a.universe();
  auto x15 = parse_element(u, "x1^5"), x24 = parse_element(u, "x2^4");
  std::set<std::vector<Rational>> hits;
  for (int m0 = -2; m0 <= 2; ++m0)
    for (int l0 = -2; l0 <= 2; ++l0)
      for (int m1 = -2; m1 <= 2; ++m1)
        for (int l1 = -2; l1 <= 2; ++l1) {
          std::vector<RElement> im;
          for (std::size_t g = 0; g < a.size(); ++g) im.push_back(a.gen(g));
          im[c.mg.xv(0)] = x15.scaled(m0) + x24.scaled(l0);
          im[c.mg.xv(1)] = x15.scaled(m1) + x24.scaled(l1);
          bool ok = true;
          for (std::size_t k = 0; k < 2 && ok; ++k) {
            auto target = apply_images(im, u, a.d(c.mg.zv(k)));
            auto ans = solve_exactness(a, target);
            ok = ans.exact;
          }
          if (ok) hits.insert({m0, l0, m1, l1});
        }
  std::set<std::vector<Rational>> solver;
  for (const auto& cl : c.cls.classes) {
    if (!fixes_low(c.mg, cl.representative)) continue;
    std::vector<Rational> key;
    for (const auto& [a5, a4] : vertex_images(c.mg, cl.representative)) {
      key.push_back(a5);
      key.push_back(a4);
    }
    solver.insert(key);
  }
  EXPECT_EQ(hits, solver);
  EXPECT_EQ(c.cls.classes.size(), 7u);
}

TEST(Functor, AutomorphismsGiveInverseClasses) {
  for (const char* name : {"p3.graph", "k3.graph"}) {
    auto mg = build_mg(load_graph(name));
    auto aut = automorphism_group(mg.graph);
    for (const auto& s : aut.elements()) {
      GraphMorphism gm{&mg.graph, &mg.graph, label_map(mg.graph, s)};
      EXPECT_TRUE(functor_morphism(gm, mg, mg) == automorphism_map(mg, s.inverse())) << name << " " << s.to_cycles();
    }
  }
}
