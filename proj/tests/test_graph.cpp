#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "sullivan/automorphism.hpp"
#include "sullivan/frucht.hpp"

using namespace sullivan;

namespace {

// Oracle: every permutation of the vertex set, kept when it preserves edges.
std::size_t brute_force_aut_order(const Graph& g) {
  std::vector<std::uint32_t> p(g.size());
  std::iota(p.begin(), p.end(), 0u);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::uint32_t i = 0; i < g.size() && ok; ++i)
      for (std::uint32_t j = i + 1; j < g.size() && ok; ++j) ok = g.adjacent(i, j) == g.adjacent(p[i], p[j]);
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

Graph path(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) g.add_edge("v" + std::to_string(i), "v" + std::to_string(i + 1));
  return g;
}

Graph complete(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge("v" + std::to_string(i), "v" + std::to_string(j));
  return g;
}

PermGroup cyclic(std::size_t n) {
  std::vector<std::uint32_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>((i + 1) % n);
  return PermGroup(n, {Permutation(img)});
}

}  // namespace

TEST(GraphParse, PathAndComments) {
  auto g = parse_graph("# a path\na b\nb c  # trailing\n\nvertex c\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.adjacent("a", "b"));
  EXPECT_FALSE(g.adjacent("a", "c"));
  EXPECT_TRUE(g.connected());
}

TEST(GraphParse, Rejections) {
  EXPECT_THROW(parse_graph("a a"), ValidationError);
  EXPECT_THROW(parse_graph("a b\na b"), ValidationError);
  EXPECT_THROW(parse_graph("a b\nb a"), ValidationError);
  try {
    parse_graph("a b\na b c\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_graph("a b\nvertex\n"), ParseError);
  EXPECT_THROW(parse_graph("a[1] b"), ValidationError);
}

TEST(Automorphisms, SmallGraphs) {
  EXPECT_EQ(automorphism_group(path(2)).order(), 2u);
  EXPECT_EQ(automorphism_group(path(3)).order(), 2u);
  EXPECT_EQ(automorphism_group(complete(3)).order(), 6u);
  EXPECT_EQ(automorphism_group(asymmetric_tree()).order(), 1u);
  EXPECT_EQ(brute_force_aut_order(asymmetric_tree()), 1u);
  auto star = parse_graph("c a\nc b\nc d\n");
  EXPECT_EQ(automorphism_group(star).order(), 6u);
}

TEST(Automorphisms, AgreesWithBruteForce) {
  std::vector<Graph> graphs{path(5), complete(4), asymmetric_tree(),
                            parse_graph("a b\nb c\nc d\nd a\n"),
                            parse_graph("a b\nb c\nc a\nc d\nd e\n"),
                            parse_graph("a b\nb c\nc d\nd e\ne f\nf a\na d\n"),
                            parse_graph("vertex x\na b\n")};
  for (const auto& g : graphs) {
    auto aut = automorphism_group(g);
    EXPECT_EQ(aut.order(), brute_force_aut_order(g)) << g.to_text();
    EXPECT_TRUE(aut.verify_group_axioms());
    for (const auto& p : aut.elements()) EXPECT_TRUE(is_automorphism(g, p));
  }
}

TEST(Automorphisms, NeighbourhoodInjective) {
  auto g = complete(4);
  auto aut = automorphism_group(g);
  for (const auto& p : aut.elements()) {
    for (std::uint32_t v = 0; v < g.size(); ++v) {
      std::set<std::uint32_t> imgs;
      for (auto w : g.neighbors(v)) imgs.insert(p(static_cast<std::uint32_t>(w)));
      EXPECT_EQ(imgs.size(), g.neighbors(v).size());
    }
  }
}

TEST(Automorphisms, VertexBudget) {
  EXPECT_THROW(automorphism_group(path(10), 5), ResourceLimit);
  EXPECT_THROW(automorphism_group(complete(8), 64, 1000), ResourceLimit);
}

TEST(Groups, ParseAndIsomorphism) {
  auto z4 = cyclic(4);
  auto v4 = parse_group("perms\n(1 2)\n(3 4)\n").group;
  EXPECT_EQ(z4.order(), 4u);
  EXPECT_EQ(v4.order(), 4u);
  EXPECT_FALSE(groups_isomorphic(z4, v4));
  auto s3 = parse_group("perms\n(1 2 3)\n(1 2)\n").group;
  auto aut_k3 = automorphism_group(complete(3));
  auto iso = groups_isomorphic(aut_k3, s3);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(verify_isomorphism(aut_k3, s3, iso.witness));
  auto z2 = parse_group("perms\n(1 2)\n").group;
  EXPECT_TRUE(groups_isomorphic(automorphism_group(path(3)), z2));
  auto z6 = cyclic(6);
  EXPECT_FALSE(groups_isomorphic(z6, s3));
}

TEST(Groups, TableFormat) {
  auto spec = parse_group("table\n0 1 2\n1 2 0\n2 0 1\n");
  EXPECT_EQ(spec.group.order(), 3u);
  EXPECT_EQ(spec.generators.size(), 2u);
  EXPECT_TRUE(groups_isomorphic(spec.group, cyclic(3)));
  EXPECT_THROW(parse_group("table\n0 1\n1 1\n"), ValidationError);
  EXPECT_THROW(parse_group("table\n0 1\n1\n"), ParseError);
  EXPECT_THROW(parse_group("matrix\n"), ParseError);
  EXPECT_THROW(parse_group("perms\n(1 2\n"), ParseError);
}

TEST(Groups, CycleNotation) {
  auto p = parse_cycles("(1 3)(2 4 5)");
  EXPECT_EQ(p.to_cycles(), "(1 3)(2 4 5)");
  EXPECT_EQ(p.order(), 6u);
  EXPECT_EQ((p * p.inverse()).to_cycles(), "()");
  EXPECT_THROW(parse_cycles("(1 2)(2 3)"), ValidationError);
}

TEST(FullMonomorphism, Examples) {
  auto p2 = path(2), p3 = path(3), k3 = complete(3);
  EXPECT_TRUE(is_full_monomorphism({&p2, &p3, {{"v0", "v0"}, {"v1", "v1"}}}));
  EXPECT_FALSE(is_full_monomorphism({&p3, &k3, {{"v0", "v0"}, {"v1", "v1"}, {"v2", "v2"}}}));
  EXPECT_FALSE(is_full_monomorphism({&p2, &p3, {{"v0", "v0"}, {"v1", "v2"}}}));
  EXPECT_FALSE(is_full_monomorphism({&p2, &p3, {{"v0", "v1"}, {"v1", "v1"}}}));
  EXPECT_TRUE(is_full_monomorphism({&k3, &k3, {{"v0", "v0"}, {"v1", "v1"}, {"v2", "v2"}}}));
}

TEST(Frucht, TrivialGroup) {
  auto r = frucht_graph(PermGroup(1, {}));
  EXPECT_EQ(r.graph.size(), 7u);
  EXPECT_EQ(r.automorphisms.order(), 1u);
}

TEST(Frucht, CyclicAndSymmetric) {
  auto z2 = frucht_graph(parse_group("perms\n(1 2)\n").group);
  EXPECT_EQ(z2.graph.size(), 8u);
  EXPECT_EQ(z2.automorphisms.order(), 2u);
  auto z3 = frucht_graph(cyclic(3));
  EXPECT_EQ(z3.graph.size(), 18u);
  EXPECT_EQ(z3.automorphisms.order(), 3u);
  auto s3spec = parse_group("perms\n(1 2 3)\n(1 2)\n");
  auto s3 = frucht_graph(s3spec.group, s3spec.generators);
  EXPECT_EQ(s3.automorphisms.order(), 6u);
  EXPECT_TRUE(groups_isomorphic(s3.automorphisms, s3spec.group));
  auto v4 = frucht_graph(parse_group("perms\n(1 2)\n(3 4)\n").group);
  EXPECT_EQ(v4.automorphisms.order(), 4u);
  auto z4 = frucht_graph(cyclic(4));
  EXPECT_TRUE(groups_isomorphic(z4.automorphisms, cyclic(4)));
  // Default generating set: every non-identity element.
  auto z3all = frucht_graph(cyclic(3), cyclic(3).elements());
  EXPECT_EQ(z3all.automorphisms.order(), 3u);
}
