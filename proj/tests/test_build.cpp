#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "sullivan/ellipticity.hpp"
#include "sullivan/functor.hpp"
#include "sullivan/mg.hpp"
#include "sullivan/tilde.hpp"

using namespace sullivan;

namespace {

Graph load(const std::string& name) {
  std::ifstream in(std::string(SULLIVAN_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

// Oracle: exponent vectors by nested bounded loops, independent of the
// reachability-table enumeration.
std::set<std::string> brute_force_basis(const GeneratorSet& gs, int k) {
  std::set<std::string> out;
  std::vector<std::uint32_t> e(gs.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int deg) -> void {
    if (deg > k) return;
    if (i == gs.size()) {
      if (deg != k) return;
      std::vector<Monomial::Factor> f;
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j]) f.emplace_back(static_cast<std::uint32_t>(j), e[j]);
      out.insert(Monomial::from_sorted(gs, f).to_string(gs));
      return;
    }
    std::uint32_t cap = gs[i].odd() ? 1 : static_cast<std::uint32_t>(k / gs[i].degree);
    for (std::uint32_t x = 0; x <= cap; ++x) {
      e[i] = x;
      self(self, i + 1, deg + static_cast<int>(x) * gs[i].degree);
    }
    e[i] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

std::set<std::string> names(const GeneratorSet& gs, const std::vector<Monomial>& ms) {
  std::set<std::string> out;
  for (const auto& m : ms) out.insert(m.to_string(gs));
  return out;
}

}  // namespace

TEST(BuildMG, PathOnTwoVertices) {
  auto mg = build_mg(load("p2.graph"));
  EXPECT_EQ(mg->size(), 10u);
  EXPECT_EQ(mg->d("y1").to_string(), "x1^3*x2");
  EXPECT_EQ(mg->d("z[a]"), parse_element(mg->universe(), "x[a]^3 + x2^4*x[a]*x[b]"));
  EXPECT_EQ(mg->d("z"), parse_element(mg->universe(), "y1*y2*x1^4*x2^2 - y1*y3*x1^5*x2 + y2*y3*x1^6 + x1^15 + x2^12"));
  auto r = check_structure(*mg);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_TRUE(r.minimal);
  EXPECT_EQ(formal_dimension(*mg), 368);
}

TEST(BuildMG, Variant) {
  auto mg = build_mg(load("p2.graph"), 1, 0);
  EXPECT_EQ(mg->d("z[a]"), parse_element(mg->universe(), "x[a]^3 + x1^5*x[a]*x[b]"));
  EXPECT_TRUE(check_structure(*mg).ok());
}

TEST(BuildMG, Rejections) {
  EXPECT_THROW(build_mg(parse_graph("vertex a\n")), SingleVertexGraph);
  EXPECT_THROW(build_mg(load("disconnected.graph")), DisconnectedGraph);
  EXPECT_THROW(build_mg(load("p2.graph"), 0, 0), TrivialVariant);
}

TEST(BuildMG, FormalDimensions) {
  for (const char* f : {"p2.graph", "p3.graph", "k3.graph", "star3.graph", "tree7.graph"}) {
    auto mg = build_mg(load(f));
    EXPECT_EQ(formal_dimension(*mg), 208 + 80 * static_cast<long>(mg.graph.size())) << f;
    auto r = check_structure(*mg);
    EXPECT_TRUE(r.ok() && r.minimal) << f;
  }
  auto s2 = make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}});
  EXPECT_EQ(formal_dimension(*s2), 2);
}

TEST(Bases, Degree40And7) {
  auto mg = build_mg(load("p2.graph"));
  auto b40 = basis_of_degree(*mg, 40);
  std::vector<std::string> got;
  for (const auto& m : b40) got.push_back(m.to_string(mg->generators()));
  EXPECT_EQ(got, (std::vector<std::string>{"x1^5", "x2^4", "x[a]", "x[b]"}));
  EXPECT_TRUE(basis_of_degree(*mg, 7).empty());
}

TEST(Bases, Degree119ShapesFromTheAnsatz) {
  auto mg = build_mg(load("k3.graph"));
  std::set<std::string> expected{"z", "y1*x1^2*x2^7", "y2*x1^3*x2^6", "y3*x1^4*x2^5",
                                 "y1*x1^7*x2^3", "y2*x1^8*x2^2", "y3*x1^9*x2"};
  for (const auto& l : mg.labels) {
    expected.insert(z_name(l));
    expected.insert("x1^2*x2^3*y1*" + x_name(l));
  }
  // Canonical order puts generators by index: x1, x2, y*, x[..].
  std::set<std::string> canon;
  for (const auto& s : expected) canon.insert(parse_element(mg->universe(), s).terms().begin()->first.to_string(mg->generators()));
  for (const auto& l : mg.labels) {
    canon.insert(parse_element(mg->universe(), "y2*x1^3*x2^2*" + x_name(l)).terms().begin()->first.to_string(mg->generators()));
    canon.insert(parse_element(mg->universe(), "y3*x1^4*x2*" + x_name(l)).terms().begin()->first.to_string(mg->generators()));
  }
  auto b119 = basis_of_degree(*mg, 119);
  EXPECT_EQ(b119.size(), 7u + 4 * mg.labels.size());
  EXPECT_EQ(names(mg->generators(), b119), canon);
}

TEST(Bases, AgreeWithBruteForce) {
  auto mg = build_mg(load("p3.graph"));
  for (int k : {0, 7, 8, 40, 80, 118, 119, 120, 153, 200}) {
    auto b = basis_of_degree(*mg, k);
    EXPECT_EQ(names(mg->generators(), b), brute_force_basis(mg->generators(), k)) << k;
    EXPECT_EQ(names(mg->generators(), b).size(), b.size());
  }
  EXPECT_THROW(basis_of_degree(*mg, 400, 100), ResourceLimit);
}

TEST(PurePart, DropsOddMonomials) {
  auto mg = build_mg(load("p2.graph"));
  auto pure = pure_part(*mg);
  EXPECT_EQ(pure.d("z"), parse_element(mg->universe(), "x1^15 + x2^12"));
  EXPECT_EQ(pure.d("y1"), mg->d("y1"));
  EXPECT_TRUE(pure_part(pure) == pure);
}

TEST(Exactness, PureWitnesses) {
  auto mg = build_mg(load("p2.graph"));
  auto pure = pure_part(*mg);
  auto a = solve_exactness(pure, parse_element(mg->universe(), "x1^17"));
  ASSERT_TRUE(a);
  EXPECT_EQ(differentiate(pure, a.preimage), parse_element(mg->universe(), "x1^17"));
  EXPECT_EQ(differentiate(pure, parse_element(mg->universe(), "z*x1^2 - y2*x2^10")),
            parse_element(mg->universe(), "x1^17"));
  EXPECT_EQ(differentiate(pure, parse_element(mg->universe(), "z*x2 - y1*x1^12")),
            parse_element(mg->universe(), "x2^13"));
  EXPECT_FALSE(solve_exactness(*mg, mg->gen("x1")));
}

TEST(Ellipticity, MGFamily) {
  for (const char* f : {"p2.graph", "k3.graph"}) {
    auto mg = build_mg(load(f));
    auto c = ellipticity_certificate(mg);
    EXPECT_TRUE(c.valid) << f;
    EXPECT_EQ(c.witnesses.size(), 2u);
    EXPECT_EQ(c.nilpotence_exponents.at("x2"), 12u);
    EXPECT_EQ(c.nilpotence_exponents.at("x[a]"), 3u);
  }
}

TEST(Ellipticity, SmallModels) {
  auto s2 = make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}});
  auto c = ellipticity_certificate(*s2);
  EXPECT_TRUE(c.valid);
  EXPECT_EQ(c.nilpotence_exponents.at("a"), 2u);
  auto free_poly = make_algebra({{"a", 2}}, {});
  EXPECT_FALSE(ellipticity_certificate(*free_poly).valid);
  EXPECT_THROW(ellipticity_certificate(*make_algebra({{"a", 2}, {"c", 2}, {"b", 3}, {"e", 3}},
                                                     {{"b", "a^2 - c^2"}, {"e", "a*c"}}),
                                       0),
               ResourceLimit);
}

TEST(Tilde, TwoSphereModel) {
  auto s2 = make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}});
  auto te = tilde_extend(s2, s2->gen("a"), s2->gen("b"));
  EXPECT_FALSE(te.minimal);
  EXPECT_EQ(te.extended->generators()[te.y_index].degree, 1);
  std::vector<std::size_t> dims;
  for (int k = 0; k <= 6; ++k) dims.push_back(cohomology_dim(*te.extended, k));
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 0}));
  EXPECT_THROW(formal_dimension(*te.extended), NotMinimal);
  EXPECT_THROW(tilde_extend(s2, s2->gen("b"), s2->zero()), TildePrecondition);
  EXPECT_THROW(tilde_extend(s2, s2->gen("a"), s2->zero()), TildePrecondition);
}

TEST(Tilde, ExtendMorphisms) {
  auto s2 = make_algebra({{"a", 2}, {"b", 3}}, {{"b", "a^2"}});
  auto te = tilde_extend(s2, s2->gen("a"), s2->gen("b"));
  auto id = extend_to_tilde(te, Morphism::identity(s2));
  EXPECT_EQ(id.scalar, 1);
  EXPECT_TRUE(id.map == Morphism::identity(te.extended));
  auto zero = extend_to_tilde(te, Morphism::from_map(s2, s2, {}));
  EXPECT_EQ(zero.scalar, 0);
  EXPECT_TRUE(zero.map.image(te.y_index).is_zero());
  auto f = Morphism::from_map(s2, s2, {{"a", s2->gen("a").scaled(2)}, {"b", s2->gen("b").scaled(4)}});
  ASSERT_TRUE(is_dga_morphism(f));
  auto ft = extend_to_tilde(te, f);
  EXPECT_EQ(ft.scalar, 2);
  EXPECT_EQ(ft.map.image(te.y_index), te.extended->gen(te.y_index).scaled(2));
  EXPECT_EQ(top_scalar(te, ft.map).value(), 4);
}

TEST(Tilde, MGStructural) {
  auto mg = build_mg(load("p2.graph"));
  const auto& u = mg->universe();
  RElement w = parse_element(u, "z*x1^31");
  RElement x = differentiate(*mg, w);
  auto te = tilde_extend(mg.algebra, x, w * x);
  EXPECT_TRUE(te.minimal);
  EXPECT_EQ(formal_dimension(*te.extended), 735);
  EXPECT_EQ(formal_dimension(*te.extended), 2 * formal_dimension(*mg) - 1);
}

TEST(Functor, EndEmbeddingAndIdentity) {
  auto p2g = load("p2.graph"), p3g = load("p3.graph");
  auto p2 = build_mg(p2g), p3 = build_mg(p3g);
  GraphMorphism id{&p2.graph, &p2.graph, {{"a", "a"}, {"b", "b"}}};
  EXPECT_TRUE(functor_morphism(id, p2, p2) == Morphism::identity(p2.algebra));
  GraphMorphism end{&p2.graph, &p3.graph, {{"a", "a"}, {"b", "b"}}};
  auto f = functor_morphism(end, p3, p2);
  EXPECT_TRUE(is_dga_morphism(f));
  EXPECT_TRUE(f.image("x[c]").is_zero());
  EXPECT_TRUE(f.image("z[c]").is_zero());
  GraphMorphism bad{&p2.graph, &p3.graph, {{"a", "a"}, {"b", "c"}}};
  EXPECT_THROW(functor_morphism(bad, p3, p2), ValidationError);
}
