#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rgc/basis.hpp"
#include "rgc/graph_chain.hpp"
#include "rgc/ribbon.hpp"

using namespace rgc;

namespace {

// theta: two trivalent vertices, parallel edges matched in cyclic order
FullyOrderedGraph theta() { return {{3, 3}, {{1, 4}, {2, 5}, {3, 6}}}; }
// dumbbell: a loop at each trivalent vertex plus a bridge
FullyOrderedGraph dumbbell() { return {{3, 3}, {{1, 2}, {4, 5}, {3, 6}}}; }
// one vertex, two adjacent loops
FullyOrderedGraph fig8() { return {{4}, {{1, 2}, {3, 4}}}; }
// one vertex, two crossed loops
FullyOrderedGraph crossed() { return {{4}, {{1, 3}, {2, 4}}}; }

FullyOrderedGraph random_relabel(const FullyOrderedGraph& g, std::mt19937& rng) {
  // random vertex order, rotations and edge flips: a random presentation of
  // the same ribbon graph (orientation may flip)
  int m = g.num_vertices();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  auto starts = block_starts(g.valences);
  std::vector<int> newLabel(g.half_edges() + 1, 0);
  FullyOrderedGraph out;
  int next = 0;
  for (int t = 0; t < m; ++t) {
    int v = order[t];
    int k = g.valences[v];
    int rot = static_cast<int>(rng() % k);
    out.valences.push_back(k);
    for (int s = 0; s < k; ++s) newLabel[starts[v] + 1 + ((s + rot) % k)] = ++next;
  }
  for (auto [a, b] : g.chords) {
    if (rng() & 1)
      out.chords.emplace_back(newLabel[b], newLabel[a]);
    else
      out.chords.emplace_back(newLabel[a], newLabel[b]);
  }
  std::shuffle(out.chords.begin(), out.chords.end(), rng);
  return out;
}

}  // namespace

TEST_CASE("graph construction and validation") {
  CHECK_THROWS(graph_from_chords({{1, 2}}, {1, 1}));            // valence 1 < 3
  CHECK_THROWS(graph_from_chords({{1, 4}, {2, 5}}, {3, 3}));    // sum mismatch
  CHECK_THROWS(graph_from_chords({{1, 1}, {2, 3}}, {4}));       // not a partition
  FullyOrderedGraph t = graph_from_chords({{1, 4}, {2, 5}, {3, 6}}, {3, 3});
  CHECK(t.valences == std::vector<int>{3, 3});
  // roundtrip
  CHECK(chords_from_graph(t) == OrientedChordDiagram{{1, 4}, {2, 5}, {3, 6}});
  // vertices are consecutive blocks
  auto vo = vertex_table(t);
  CHECK(vo[1] == 0);
  CHECK(vo[3] == 0);
  CHECK(vo[4] == 1);
  CHECK(vo[6] == 1);
}

TEST_CASE("canonical form: invariance under random re-presentation") {
  std::mt19937 rng(20240811);
  for (const FullyOrderedGraph& g : {theta(), dumbbell(), fig8(), crossed(),
                                     disjoint_union(theta(), dumbbell())}) {
    const CanonicalForm& base = canonical_form(g);
    for (int trial = 0; trial < 100; ++trial) {
      FullyOrderedGraph r = random_relabel(g, rng);
      const CanonicalForm& cf = canonical_form(r);
      CHECK(cf.key == base.key);
      CHECK(cf.zero == base.zero);
      CHECK(cf.aut == base.aut);
    }
  }
}

TEST_CASE("canonical form: sign bookkeeping") {
  // a graph and itself
  const CanonicalForm& cf = canonical_form(theta());
  FullyOrderedGraph canon = decode_key(cf.key);
  CHECK(canonical_form(canon).sign == 1);

  // vertex swap + one edge flip on theta: character of the G-move
  FullyOrderedGraph swapped{{3, 3}, {{4, 1}, {5, 2}, {6, 3}}};
  // all three edges flipped + vertex swap: total character (-1)^3 * ... the
  // canonical sign relation must multiply consistently:
  const CanonicalForm& a = canonical_form(theta());
  const CanonicalForm& b = canonical_form(swapped);
  CHECK(a.key == b.key);
  // theta has an orientation-preserving automorphism realising the vertex
  // swap with all edges flipped, so one extra flip gives character -1... the
  // presentations differ by three flips: character (-1)^3 = -1 relative to
  // theta's presentation; both relate to the same canonical representative.
  CHECK(a.sign * b.sign == -1);
}

TEST_CASE("zero graphs and automorphism groups") {
  // crossed one-vertex graph has an orientation-reversing automorphism
  CHECK(canonical_form(crossed()).zero);
  CHECK(!canonical_form(fig8()).zero);
  CHECK(!canonical_form(theta()).zero);
  CHECK(!canonical_form(dumbbell()).zero);

  // theta ribbon group has order 6
  auto thetaAuts = automorphism_group(theta());
  CHECK(thetaAuts.size() == 6);
  for (const auto& a : thetaAuts) CHECK(a.character == 1);
  CHECK(canonical_form(theta()).aut == 6);

  // raw bijection search oracle agrees
  CHECK(oracle::count_all_bijection_automorphisms(theta()) == 6);
  CHECK(oracle::count_all_bijection_automorphisms(dumbbell()) == 2);
  CHECK(canonical_form(dumbbell()).aut == 2);
  CHECK(oracle::count_all_bijection_automorphisms(fig8()) == 2);

  // closure under composition and inverse
  auto auts = automorphism_group(dumbbell());
  for (const auto& f : auts)
    for (const auto& g : auts) {
      Perm fg = compose(f.map, g.map);
      bool found = false;
      for (const auto& h : auts)
        if (h.map == fg) { found = true; CHECK(h.character == f.character * g.character); }
      CHECK(found);
    }

  // disjoint union: |Aut(theta u theta)| = 2 * 6 * 6
  CHECK(canonical_form(disjoint_union(theta(), theta())).aut == 72);
  auto unionAuts = automorphism_group(disjoint_union(theta(), theta()));
  CHECK(unionAuts.size() == 72);
}

TEST_CASE("contract_edge") {
  // theta -> one-vertex valence-4 graph with two edges
  SignedGraph c = contract_edge(theta(), 2);
  CHECK(c.graph.valences == std::vector<int>{4});
  CHECK(c.graph.num_edges() == 2);
  // contracting any edge of theta gives the crossed diagram (a zero graph)
  CHECK(canonical_form(c.graph).key == canonical_form(crossed()).key);

  // loop contraction is an error
  CHECK_THROWS(contract_edge(fig8(), 0));
  CHECK_THROWS(contract_edge(dumbbell(), 0));
  CHECK_NOTHROW(contract_edge(dumbbell(), 2));

  // contracting the two non-loop edges of a 3-edge graph in both orders
  // produces opposite orientations
  FullyOrderedGraph g{{3, 3, 4}, {{1, 4}, {2, 7}, {5, 8}, {3, 6}, {9, 10}}};
  validate_graph(g);
  auto one = contract_edge(g, 0);
  int e2_in_one = -1;
  // find image of edge (2,7) in `one`: edges are re-labelled, so contract the
  // matching edge index; edge list order is preserved minus the contracted one
  e2_in_one = 0;  // (2,7) was index 1, becomes index 0 after removing index 0
  auto oneTwo = contract_edge(one.graph, e2_in_one);
  auto two = contract_edge(g, 1);
  auto twoOne = contract_edge(two.graph, 0);
  const CanonicalForm& ca = canonical_form(oneTwo.graph);
  const CanonicalForm& cb = canonical_form(twoOne.graph);
  CHECK(ca.key == cb.key);
  int sa = one.sign * oneTwo.sign * ca.sign;
  int sb = two.sign * twoOne.sign * cb.sign;
  CHECK(sa == -sb);
}

TEST_CASE("ideal edges") {
  // valence-3 vertices contribute none
  CHECK(enumerate_ideal_edges(theta()).empty());
  // valence-4 vertex: exactly 2
  CHECK(enumerate_ideal_edges(fig8()).size() == 2);
  // valence-5 vertex: splits into arcs of sizes {2,3}
  FullyOrderedGraph five{{5, 3}, {{1, 2}, {3, 6}, {4, 7}, {5, 8}}};
  validate_graph(five);
  CHECK(enumerate_ideal_edges(five).size() == 5);
  // valence-6: C(6,2) - 6 = 9
  FullyOrderedGraph six{{6}, {{1, 2}, {3, 4}, {5, 6}}};
  CHECK(enumerate_ideal_edges(six).size() == 9);
}

TEST_CASE("expand_ideal_edge") {
  // invalid split rejected
  IdealEdge bad{0, {1}, {2, 3, 4}};
  CHECK_THROWS(expand_ideal_edge(fig8(), bad));
  // the two expansions of fig8: dumbbell and a theta-type graph
  auto ies = enumerate_ideal_edges(fig8());
  REQUIRE(ies.size() == 2);
  std::set<GraphKey> results;
  for (const auto& ie : ies) results.insert(canonical_form(expand_ideal_edge(fig8(), ie).graph).key);
  CHECK(results.count(canonical_form(dumbbell()).key) == 1);
  CHECK(results.size() == 2);

  // expanding the crossed one-vertex graph gives 2-vertex trivalent graphs
  for (const auto& ie : enumerate_ideal_edges(crossed())) {
    SignedGraph ex = expand_ideal_edge(crossed(), ie);
    CHECK(ex.graph.valences == std::vector<int>{3, 3});
  }
}

TEST_CASE("contract/expand roundtrip with sign +1") {
  std::vector<FullyOrderedGraph> graphs = {theta(), dumbbell(),
                                           disjoint_union(theta(), dumbbell()),
                                           {{3, 3, 4}, {{1, 4}, {2, 7}, {5, 8}, {3, 6}, {9, 10}}}};
  for (const auto& g : graphs) {
    auto vertexOf = vertex_table(g);
    const CanonicalForm& cg = canonical_form(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (vertexOf[g.chords[e].first] == vertexOf[g.chords[e].second]) continue;
      SignedGraph c = contract_edge(g, e);
      IdealEdge ie = contraction_ideal_edge(g, e);
      SignedGraph x = expand_ideal_edge(c.graph, ie);
      const CanonicalForm& cx = canonical_form(x.graph);
      REQUIRE(cx.key == cg.key);
      CHECK(c.sign * x.sign * cx.sign == cg.sign);
    }
  }
}

TEST_CASE("chords_from_graph equivariance under structure moves") {
  FullyOrderedGraph t = theta();
  // flipping one edge orientation reverses that pair
  FullyOrderedGraph flipped = t;
  std::swap(flipped.chords[1].first, flipped.chords[1].second);
  CHECK(chords_from_graph(flipped)[1] == std::make_pair(5, 2));
  // cyclic rotation at vertex 0: relabel half-edges by the block rotation
  // and check the diagram transforms by the same permutation
  FullyOrderedGraph rot = t;
  // rotation sends stored order (1,2,3) to (2,3,1): old half-edge 2 gets
  // label 1 etc: relabel map L = {1->3, 2->1, 3->2}
  std::vector<int> L = {0, 3, 1, 2, 4, 5, 6};
  rot.chords.clear();
  for (auto [a, b] : t.chords) rot.chords.emplace_back(L[a], L[b]);
  // brute-force: same ribbon graph
  CHECK(oracle::ribbon_isomorphic(rot, t));
  CHECK(canonical_form(rot).key == canonical_form(t).key);
}

TEST_CASE("disjoint union and components") {
  // unit
  FullyOrderedGraph empty;
  CHECK(encode_key(disjoint_union(theta(), empty)) == encode_key(theta()));
  CHECK(encode_key(disjoint_union(empty, theta())) == encode_key(theta()));

  // graded commutativity: theta (2 vertices) commutes with dumbbell evenly
  FullyOrderedGraph td = disjoint_union(theta(), dumbbell());
  FullyOrderedGraph dt = disjoint_union(dumbbell(), theta());
  const CanonicalForm& a = canonical_form(td);
  const CanonicalForm& b = canonical_form(dt);
  CHECK(a.key == b.key);
  CHECK(a.sign == b.sign);  // (-1)^{2*2} = +1

  // components recover the factors
  ComponentSplit split = connected_components(td);
  REQUIRE(split.components.size() == 2);
  CHECK(canonical_form(split.components[0]).key == canonical_form(theta()).key);
  CHECK(canonical_form(split.components[1]).key == canonical_form(dumbbell()).key);
  CHECK(split.sign == 1);

  // connected graph -> singleton
  CHECK(connected_components(theta()).components.size() == 1);
  // empty graph -> no components
  CHECK(connected_components(empty).components.empty());

  // reassembly up to orientation sign
  FullyOrderedGraph interleaved{{3, 3, 3, 3},
                                {{1, 7}, {2, 8}, {3, 9}, {4, 10}, {5, 11}, {6, 12}}};
  validate_graph(interleaved);  // two theta components on vertices {0,2},{1,3}
  ComponentSplit s2 = connected_components(interleaved);
  REQUIRE(s2.components.size() == 2);
  FullyOrderedGraph re = disjoint_union(s2.components[0], s2.components[1]);
  const CanonicalForm& ci = canonical_form(interleaved);
  const CanonicalForm& cr = canonical_form(re);
  CHECK(ci.key == cr.key);
  CHECK(ci.sign == s2.sign * cr.sign);
}

TEST_CASE("equivalence of categories count check (edge pairs vs ideal-edge pairs)") {
  // For (G,e) with e non-loop and (G/e, i_e): the number of edge-preserving
  // automorphisms of (G,e) equals the number of ideal-edge-preserving
  // automorphisms of (G/e, i_e). Checked on every basis graph with <= 5
  // edges by brute force.
  std::vector<FullyOrderedGraph> graphs = {theta(), dumbbell(),
                                           {{3, 3, 4}, {{1, 4}, {2, 7}, {5, 8}, {3, 6}, {9, 10}}}};
  {
    rgc::BasisBuilder bb;
    for (int j = 2; j <= 5; ++j)
      for (int i = 1; 3 * i <= 2 * j; ++i)
        if (rgc::cell_feasible(i, j))
          for (const GraphKey& k : bb.cell(i, j).keys) graphs.push_back(decode_key(k));
  }
  for (const auto& g : graphs) {
    auto vertexOf = vertex_table(g);
    auto auts = automorphism_group(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [a, b] = g.chords[e];
      if (vertexOf[a] == vertexOf[b]) continue;
      long fixing = 0;
      for (const auto& f : auts) {
        int ia = f.map[a - 1] + 1, ib = f.map[b - 1] + 1;
        if ((ia == a && ib == b) || (ia == b && ib == a)) ++fixing;
      }
      // on the contracted side: automorphisms of G/e fixing the ideal edge
      SignedGraph c = contract_edge(g, e);
      IdealEdge ie = contraction_ideal_edge(g, e);
      auto cauts = automorphism_group(c.graph);
      auto arcset = [&](const std::vector<int>& arc, const Perm& f) {
        std::set<int> s;
        for (int h : arc) s.insert(f[h - 1] + 1);
        return s;
      };
      std::set<int> A(ie.arc_a.begin(), ie.arc_a.end());
      std::set<int> B(ie.arc_b.begin(), ie.arc_b.end());
      long cfixing = 0;
      for (const auto& f : cauts) {
        auto fa = arcset(ie.arc_a, f.map), fb = arcset(ie.arc_b, f.map);
        if ((fa == A && fb == B) || (fa == B && fb == A)) ++cfixing;
      }
      CHECK(fixing == cfixing);
    }
  }
}
