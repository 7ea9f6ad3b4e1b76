#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"
#include "zz/reduction.hpp"
#include "zz/rotmap.hpp"
#include "zz/zzmodel.hpp"

using namespace zz;

namespace {

Signature toy_sig() { return Signature({{"A", 2}, {"B", 2}, {"C", 2}}); }

// small edge-coloured digraph exercising arrows both ways, loops and bottoms
Structure toy_structure() {
  Structure a(toy_sig(), 3);
  a.add_tuple(0, {0, 1});
  a.add_tuple(0, {1, 0});
  a.add_tuple(1, {1, 2});
  a.add_tuple(2, {2, 2});
  a.add_tuple(2, {0, 2});
  return a;
}

std::vector<int> degree_sequence(const SimpleGraph& g) {
  std::vector<int> d;
  for (int v = 0; v < g.size(); ++v) d.push_back(g.degree(v));
  return d;
}

bool same_structure_under_identity(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) return false;
  if (a.sig().size() != b.sig().size()) return false;
  for (int r = 0; r < a.sig().size(); ++r)
    if (a.tuples(r) != b.tuples(r)) return false;
  return true;
}

// count simple cycles of exactly length len in a small graph
long count_cycles_of_length(const SimpleGraph& g, int len) {
  long count = 0;
  std::vector<int> path;
  std::vector<char> used(g.size(), 0);
  std::function<void(int, int)> dfs = [&](int start, int cur) {
    if (static_cast<int>(path.size()) == len) {
      if (g.has_edge(cur, start) && path[1] < path.back()) ++count;
      return;
    }
    for (int w : g.neighbours(cur)) {
      if (used[w] || w < start) continue;  // canonical: min vertex = start
      used[w] = 1;
      path.push_back(w);
      dfs(start, w);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (int s = 0; s < g.size(); ++s) {
    used[s] = 1;
    path = {s};
    dfs(s, s);
    used[s] = 0;
  }
  return count;
}

}  // namespace

TEST_CASE("building blocks") {
  CHECK(degree_sequence(block(BlockKind::H1)) ==
        std::vector<int>{2, 3, 3, 3, 3, 2});
  CHECK(degree_sequence(block(BlockKind::H2)) ==
        std::vector<int>{2, 3, 3, 3, 3, 2});
  CHECK(degree_sequence(block(BlockKind::H3)) ==
        std::vector<int>{2, 3, 3, 3, 3, 3, 3, 3, 3, 2});
  CHECK(degree_sequence(block(BlockKind::H4)) ==
        std::vector<int>{2, 3, 3, 3, 3});

  CHECK(!graphs_isomorphic(block(BlockKind::H1), block(BlockKind::H2)));
}

TEST_CASE("gadget sizes and non-isomorphism") {
  CHECK(arrow_gadget(1, 49).size() == 598);   // 12*49 + 10
  CHECK(loop_gadget(1, 49).size() == 299);    // 6*49 + 5
  CHECK(nonarrow_gadget(49).size() == 299);

  CHECK(!graphs_isomorphic(arrow_gadget(1, 3), arrow_gadget(2, 3)));

  // the whole toy library is pairwise non-isomorphic
  for (int ell : {3, 4}) {
    std::vector<SimpleGraph> lib;
    for (int k = 1; k <= ell; ++k) lib.push_back(arrow_gadget(k, ell));
    for (int k = 1; k <= ell; ++k) lib.push_back(loop_gadget(k, ell));
    lib.push_back(nonarrow_gadget(ell));
    for (size_t i = 0; i < lib.size(); ++i)
      for (size_t j = i + 1; j < lib.size(); ++j)
        CHECK(!graphs_isomorphic(lib[i], lib[j]));
  }

  // internal degrees: all 3 except the attachment endpoints
  const SimpleGraph arrow = arrow_gadget(2, 3);
  for (int v = 0; v < arrow.size(); ++v)
    CHECK(arrow.degree(v) == ((v == 0 || v == arrow.size() - 1) ? 2 : 3));
  const SimpleGraph loop = loop_gadget(2, 3);
  for (int v = 0; v < loop.size(); ++v)
    CHECK(loop.degree(v) == (v == 0 ? 2 : 3));
}

TEST_CASE("structure oracle slots") {
  const Structure a = toy_structure();
  StructureOracle o(a);
  CHECK(o.degree(0) == 3);  // (0,1), (1,0), (0,2)
  CHECK(o.degree(1) == 3);  // (0,1), (1,0), (1,2)
  CHECK(o.degree(2) == 3);  // (1,2), (2,2) once, (0,2)
  CHECK(!o.ans(2, 4).has_value());
  CHECK(o.ans(2, 1).has_value());
  CHECK(o.queries() == 2);
}

TEST_CASE("reduce: sizes and 3-regularity") {
  const Structure a = toy_structure();
  const ReducedGraph r = reduce(a, 12);
  CHECK(r.graph.size() == reduced_vertex_count(3, 12, 3));  // 3*12*23 = 828
  for (int v = 0; v < r.graph.size(); ++v) CHECK(r.graph.degree(v) == 3);

  // empty structure reduces to the empty graph
  const ReducedGraph empty = reduce(Structure(toy_sig(), 0), 12);
  CHECK(empty.graph.size() == 0);

  // a single all-bottom element: one d-cycle plus d non-arrow chains
  const ReducedGraph lone = reduce(Structure(toy_sig(), 1), 12);
  CHECK(lone.graph.size() == 12 * (1 + 6 * 3 + 5));

  CHECK_THROWS(reduce(a, 8));  // d must be >= 12
}

TEST_CASE("reduce of the depth-1 model") {
  const auto m = build_model(cycle_rotmap(16), 1);
  const ReducedGraph r = reduce(m.structure, 25);
  CHECK(r.graph.size() == 127500);  // d (1 + 6 ell + 5) |A| = 25*300*17
  CHECK(r.ell == 49);
  for (int v = 0; v < r.graph.size(); ++v) REQUIRE(r.graph.degree(v) == 3);
}

TEST_CASE("decode inverts reduce") {
  const Structure a = toy_structure();
  const ReducedGraph r = reduce(a, 12);
  const DecodeResult dec = decode(r.graph);
  CHECK(dec.d == 12);
  CHECK(dec.ell == 3);
  CHECK(same_structure_under_identity(dec.structure, a));
  CHECK(dec.element_cycles == r.element_cycles);

  // single all-bottom element round-trips too
  const Structure lone(toy_sig(), 1);
  CHECK(same_structure_under_identity(decode(reduce(lone, 12).graph).structure, lone));
}

TEST_CASE("decode rejects a mutated gadget") {
  const ReducedGraph r = reduce(toy_structure(), 12);
  SimpleGraph g = r.graph;
  // delete one chord inside some block: degrees drop to 2
  bool removed = false;
  for (int v = 0; v < g.size() && !removed; ++v)
    for (int w : g.neighbours(v))
      if (v < w && v >= 12 && w > v + 1) {  // a chord, not a path edge
        g.remove_edge(v, w);
        removed = true;
        break;
      }
  REQUIRE(removed);
  CHECK_THROWS_AS(decode(g), ReduceShapeError);
}

TEST_CASE("query simulation agrees with the materialized graph") {
  const auto m = build_model(cycle_rotmap(16), 1);
  const ReducedGraph r = reduce(m.structure, 25);
  StructureOracle oracle(m.structure);
  QuerySimulator sim{oracle, 25, 49};

  std::mt19937 rng(140);
  long max_cost = 0;
  for (int t = 0; t < 1000; ++t) {
    const long v = rng() % r.graph.size();
    const int slot = 1 + static_cast<int>(rng() % 3);
    const long got = sim.query(v, slot);
    max_cost = std::max(max_cost, sim.last_query_cost());
    CHECK(got == r.graph.neighbours(static_cast<int>(v))[slot - 1]);
  }
  CHECK(max_cost <= 26);  // d + 1

  // element-cycle queries need no structure queries at all
  oracle.reset_queries();
  sim.query(uid(3, 5, 25, 49), 2);
  CHECK(oracle.queries() == 0);
}

TEST_CASE("predicates on the reduced shape") {
  const Structure a = toy_structure();
  const ReducedGraph r = reduce(a, 12);
  const ReducedShape shape(r.graph);

  const long u01 = uid(0, 1, 12, 3);
  const long u07 = uid(0, 7, 12, 3);
  const long u11 = uid(1, 1, 12, 3);
  const long v011 = vid(0, 1, 1, 12, 3);

  CHECK(shape.alpha(u01));
  CHECK(!shape.alpha(v011));
  CHECK(shape.beta(u01, u07));
  CHECK(!shape.beta(u01, u11));
  CHECK(!shape.gamma(u01));
  CHECK(!shape.gamma(v011));                    // chain head is an endpoint
  CHECK(shape.gamma(vid(0, 1, 2, 12, 3)));      // interior chain vertex

  // delta agrees with the tuple set of a
  StructureOracle oracle(a);
  int arrows = 0, loops = 0;
  for (int e = 0; e < a.size(); ++e)
    for (int i = 1; i <= oracle.degree(e); ++i) {
      const auto ans = oracle.ans(e, i);
      REQUIRE(ans.has_value());
      const int k = ans->rel + 1;
      if (ans->tuple[0] == e && ans->tuple[1] == e) {
        CHECK(shape.delta_loop(k, uid(e, i, 12, 3)));
        ++loops;
      } else if (ans->tuple[0] == e) {
        const int b = ans->tuple[1];
        // the partner slot at b holds the far endpoint
        for (int j = 1; j <= oracle.degree(b); ++j) {
          const auto pa = oracle.ans(b, j);
          if (pa && pa->rel == ans->rel && pa->tuple == ans->tuple) {
            CHECK(shape.delta_arrow(k, uid(e, i, 12, 3), uid(b, j, 12, 3)));
            ++arrows;
          }
        }
      }
    }
  CHECK(arrows == 4);  // (0,1), (1,0), (1,2), (0,2)
  CHECK(loops == 1);   // (2,2)
  CHECK(!shape.delta_arrow(2, u01, u11));           // wrong colour
  CHECK(!shape.delta_arrow(1, u01, uid(1, 2, 12, 3)));  // wrong far slot
}

TEST_CASE("no stray d-cycles inside two cycles plus an arrow") {
  // one A-tuple between two elements, nothing else: the reduced graph is two
  // element cycles joined by a single arrow plus bottom chains
  Structure a(toy_sig(), 2);
  a.add_tuple(0, {0, 1});
  const ReducedGraph r = reduce(a, 12);

  // restrict to the two element cycles and the arrow's chains
  StructureOracle oracle(a);
  std::set<int> keep;
  for (int e = 0; e < 2; ++e)
    for (int i = 1; i <= 12; ++i) keep.insert(static_cast<int>(uid(e, i, 12, 3)));
  // slot 1 of element 0 and slot 1 of element 1 carry the arrow
  for (int m = 1; m <= 6 * 3 + 5; ++m) {
    keep.insert(static_cast<int>(vid(0, 1, m, 12, 3)));
    keep.insert(static_cast<int>(vid(1, 1, m, 12, 3)));
  }
  std::vector<int> ids(keep.begin(), keep.end());
  std::map<int, int> pos;
  for (size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
  SimpleGraph sub(static_cast<int>(ids.size()));
  for (int v : ids)
    for (int w : r.graph.neighbours(v))
      if (v < w && keep.count(w)) sub.add_edge(pos[v], pos[w]);

  CHECK(count_cycles_of_length(sub, 12) == 2);  // only the element cycles
}

TEST_CASE("ell_prime") {
  CHECK(ell_prime(49, 25) == 1219);
  CHECK(ell_prime(3, 2) == 92);
}

TEST_CASE("rho_hat profiles of reduced toy structures") {
  // one element with one loop each; the loop breaks the cycle's rotational
  // symmetry, so the first cycle vertex has a unique ell'-type, mirroring the
  // structurally unique root slot of a real model
  Structure with_loop_b(toy_sig(), 1);
  with_loop_b.add_tuple(1, {0, 0});
  Structure with_loop_c(toy_sig(), 1);
  with_loop_c.add_tuple(2, {0, 0});

  const ReducedGraph r1 = reduce(with_loop_b, 12);
  const ReducedGraph r2 = reduce(with_loop_c, 12);

  TypeRegistry reg(ell_prime(3, 12));
  const auto profiles = rho_hat_builder({&r1, &r2}, reg);
  REQUIRE(profiles.size() >= 1);

  for (const ReducedGraph* r : {&r1, &r2}) {
    const Structure gs = graph_as_structure(r->graph);
    bool obeys_some = false;
    for (const auto& rho : profiles)
      if (obeys_profile(gs, rho, reg)) obeys_some = true;
    CHECK(obeys_some);
  }
}

TEST_CASE("correspondence file") {
  const ReducedGraph r = reduce(Structure(toy_sig(), 1), 12);
  std::stringstream ss;
  write_correspondence(ss, r);
  std::string tag;
  int e;
  ss >> tag >> e;
  CHECK(tag == "elem");
  CHECK(e == 0);
}
