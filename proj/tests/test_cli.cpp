#include <sstream>

#include "doctest.h"
#include "rgc/report.hpp"

using namespace rgc;

TEST_CASE("graph literal parser") {
  FullyOrderedGraph g = parse_graph_literal("valences=[3,3]; chords=[(1,4),(2,5),(3,6)]");
  CHECK(g.valences == std::vector<int>{3, 3});
  CHECK(g.chords.size() == 3);
  // rejects non-partitions
  CHECK_THROWS(parse_graph_literal("valences=[3,3]; chords=[(1,1),(2,5),(3,6)]"));
  CHECK_THROWS(parse_graph_literal("valences=[3,3]; chords=[(1,4),(2,5)]"));
  CHECK_THROWS(parse_graph_literal("valences=[2,4]; chords=[(1,4),(2,5),(3,6)]"));
  CHECK_THROWS(parse_graph_literal("valences=[3,3]; chords=[(0,4),(2,5),(3,6)]"));
  CHECK_THROWS(parse_graph_literal("chords=[(1,2)]"));
  // roundtrip through the formatter
  CHECK(parse_graph_literal(graph_literal(g)).chords == g.chords);
}

TEST_CASE("legged literal parser") {
  LeggedGraph g = parse_legged_literal("valences=[3]; chords=[(1,4),(2,5),(3,6)]; in=[4,5]; out=[6]");
  CHECK(g.in_count == 2);
  CHECK(g.out_count == 1);
  CHECK(g.leg_edges.size() == 3);
  // roundtrip
  LeggedGraph r = parse_legged_literal(legged_literal(g));
  CHECK(legged_canonical_form(r).key == legged_canonical_form(g).key);
  // external id inside the internal block
  CHECK_THROWS(parse_legged_literal("valences=[3]; chords=[(1,2),(3,4)]; in=[3]; out=[]"));
  // unlabeled external id
  CHECK_THROWS(parse_legged_literal("valences=[3]; chords=[(1,4),(2,5),(3,6)]; in=[4]; out=[6]"));
}

TEST_CASE("word and chain literals") {
  SuperSpace s = SuperSpace::symplectic(1, 1);
  Letters w = parse_word_literal(s, "p1 q1 x1");
  CHECK(w == Letters{0, 1, 2});
  CHECK(word_literal(s, w) == "p1 q1 x1");
  CHECK_THROWS(parse_word_literal(s, "p1 zz"));

  CEChain x = parse_chain_literal(s, "1/2 * [p1 q1 x1 ^ x1 x1 x1]\n-3 * [p1 p1 q1]\n");
  CHECK(x.terms().size() == 2);
  // formatter emits parseable text
  CEChain y = parse_chain_literal(s, chain_literal(s, x));
  CHECK(x == y);
}

TEST_CASE("algebra files") {
  SUBCASE("frobenius mode reproduces the dual numbers") {
    std::istringstream in(
        "mode: frobenius\n"
        "basis: e t\n"
        "parity: e=even t=even\n"
        "pairing: e t = 1\n"
        "pairing: t e = 1\n"
        "frobenius: e e = e\n"
        "frobenius: e t = t\n"
        "frobenius: t e = t\n");
    AInfinityAlgebra a = parse_algebra_file(in, "filedual");
    AInfinityAlgebra b = builtin_dual();
    CHECK(a.pairing.matrix() == b.pairing.matrix());
    REQUIRE(a.h_at(3));
    CHECK(a.h_at(3)->entries() == b.h_at(3)->entries());
  }
  SUBCASE("direct mode") {
    std::istringstream in(
        "mode: direct\n"
        "basis: a\n"
        "parity: a=odd\n"
        "pairing: a a = 1\n"
        "h3: a a a = 1\n");
    AInfinityAlgebra a = parse_algebra_file(in, "fileground");
    CHECK(validate(a).ok);
    CHECK(check_master_equation(a).is_zero());
  }
  SUBCASE("bad files rejected") {
    std::istringstream junk("basis e t\n");
    CHECK_THROWS(parse_algebra_file(junk, "x"));
    std::istringstream badparity("basis: e\nparity: e=strange\n");
    CHECK_THROWS(parse_algebra_file(badparity, "x"));
    std::istringstream h2(
        "mode: direct\nbasis: a\nparity: a=odd\npairing: a a = 1\nh2: a a = 1\n");
    CHECK_THROWS(parse_algebra_file(h2, "x"));
  }
  SUBCASE("builtins load through the algebra source syntax") {
    CHECK(load_algebra("builtin:ground").name == "ground");
    CHECK_THROWS(load_algebra("builtin:unknown"));
    CHECK_THROWS(load_algebra("/no/such/file.alg"));
  }
}

TEST_CASE("run_enumerate") {
  RunConfig cfg;
  cfg.command = "enumerate";
  cfg.max_edges = 3;
  std::string out = run_enumerate(cfg);
  // the (2,3) cell row is present with its class count
  CHECK(out.find("2\t3\t3") != std::string::npos);
  // infeasible (1,1) cell is a dimension-0 row
  CHECK(out.find("1\t1\t0") != std::string::npos);
  // determinism: identical across runs and thread counts
  RunConfig cfg2 = cfg;
  cfg2.jobs = 4;
  CHECK(run_enumerate(cfg) == out);
  CHECK(run_enumerate(cfg2) == out);
  // json mode carries meta
  cfg.format = "json";
  std::string js = run_enumerate(cfg);
  CHECK(js.find("\"meta\"") != std::string::npos);
  CHECK(js.find("\"seed\"") != std::string::npos);
}

TEST_CASE("run_homology") {
  RunConfig cfg;
  cfg.command = "homology";
  cfg.chi_min = -1;
  cfg.max_edges = 4;
  std::string out = run_homology(cfg);
  CHECK(out.find("chi\ti\tj\tdim_ker\trank_d\tdim_H") != std::string::npos);
  // empty range gives just the header
  RunConfig empty = cfg;
  empty.chi_min = 0;
  std::string eout = run_homology(empty);
  CHECK(eout.find("chi\t") != std::string::npos);
  CHECK(eout.substr(eout.find("dim_H") + 6).empty());
  // sparse matrices on demand
  cfg.matrices = true;
  std::string m = run_homology(cfg);
  CHECK(m.find("# matrix del") != std::string::npos);
}

TEST_CASE("run_partition determinism across jobs") {
  RunConfig cfg;
  cfg.command = "partition";
  cfg.algebra = "builtin:ground";
  cfg.max_edges = 3;
  std::string a = run_partition(cfg);
  cfg.jobs = 3;
  std::string b = run_partition(cfg);
  CHECK(a == b);
  CHECK(a.find("graph_key\tvertices\tedges\tvalue") != std::string::npos);
  // the theta row: 2 vertices 3 edges, value +-1/6
  CHECK(a.find("\t2\t3\t") != std::string::npos);
}

TEST_CASE("run_verify") {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.algebra = "builtin:ground";
  cfg.max_edges = 3;
  cfg.suite = "cycle";
  bool ok = false;
  std::string out = run_verify(cfg, &ok);
  CHECK(ok);
  CHECK(out.find("PASS\tcycle") != std::string::npos);

  // negative control fails with a witness
  cfg.algebra = "builtin:nonassoc";
  cfg.suite = "master";
  std::string bad = run_verify(cfg, &ok);
  CHECK(!ok);
  CHECK(bad.find("FAIL\tmaster") != std::string::npos);
  CHECK(bad.find("witness") != std::string::npos);

  cfg.suite = "cycle";
  std::string badCycle = run_verify(cfg, &ok);
  CHECK(!ok);
  CHECK(badCycle.find("witness: cycle") != std::string::npos);
  CHECK(badCycle.find("valences=") != std::string::npos);

  // unknown suite
  cfg.suite = "bogus";
  CHECK_THROWS(run_suites(cfg));
}

TEST_CASE("bounds are enforced with a refusal message") {
  RunConfig cfg;
  cfg.max_edges = 99;
  CHECK_THROWS(run_enumerate(cfg));
  RunConfig cfg2;
  cfg2.chi_min = -9;
  CHECK_THROWS(run_homology(cfg2));
}

TEST_CASE("run_correlate") {
  RunConfig cfg;
  cfg.command = "correlate";
  cfg.algebra = "builtin:dual";
  cfg.graph = "valences=[3]; chords=[(1,4),(2,5),(3,6)]; in=[4,5]; out=[6]";
  std::string out = run_correlate(cfg);
  CHECK(out.find("slots\tvalue") != std::string::npos);
  CHECK(out.find("e'") != std::string::npos);
}
