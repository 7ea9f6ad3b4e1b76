#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"
#include "zz/gsf.hpp"

using namespace zz;
using namespace zz::testutil;

namespace {

MarkedGraph marked(const SimpleGraph& g, std::vector<Mark> marks) {
  return MarkedGraph{g, std::move(marks)};
}

MarkedGraph single_full_vertex() {
  return marked(SimpleGraph(1), {Mark::Full});
}

MarkedGraph full_edge() {
  SimpleGraph g(2);
  g.add_edge(0, 1);
  return marked(g, {Mark::Full, Mark::Full});
}

// the running example: one full isolated vertex plus one full edge
MarkedGraph example_f() {
  SimpleGraph g(3);
  g.add_edge(1, 2);
  return marked(g, {Mark::Full, Mark::Full, Mark::Full});
}

// forbids any vertex of degree two (lifts a degree-1 property into C_2)
MarkedGraph degree2_blocker() {
  SimpleGraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return marked(g, {Mark::Partial, Mark::Full, Mark::Partial});
}

SimpleGraph edges_plus_isolated(int k) {
  SimpleGraph g(2 * k + 1);
  for (int i = 0; i < k; ++i) g.add_edge(2 * i, 2 * i + 1);
  return g;
}

// independent oracle: try every injective map and check the definition
bool embeds_by_all_injections(const MarkedGraph& f, const SimpleGraph& g) {
  if (f.g.size() > g.size()) return false;
  std::vector<int> targets(g.size());
  std::iota(targets.begin(), targets.end(), 0);
  std::vector<int> pick(f.g.size());
  std::vector<char> used(g.size(), 0);
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == f.g.size()) {
      for (int v = 0; v < f.g.size(); ++v) {
        std::vector<int> image_closed{pick[v]};
        for (int w : f.g.neighbours(v)) image_closed.push_back(pick[w]);
        std::sort(image_closed.begin(), image_closed.end());
        std::vector<int> actual{static_cast<int>(pick[v])};
        for (int w : g.neighbours(pick[v])) actual.push_back(w);
        std::sort(actual.begin(), actual.end());
        if (f.marks[v] == Mark::Full) {
          if (actual != image_closed) return false;
        } else if (f.marks[v] == Mark::Semifull) {
          std::vector<int> actual_in_image;
          for (int w : actual)
            if (std::find(pick.begin(), pick.end(), w) != pick.end())
              actual_in_image.push_back(w);
          if (actual_in_image != image_closed) return false;
        } else {
          if (!std::includes(actual.begin(), actual.end(), image_closed.begin(),
                             image_closed.end()))
            return false;
        }
      }
      return true;
    }
    for (int t = 0; t < g.size(); ++t) {
      if (used[t]) continue;
      used[t] = 1;
      pick[k] = t;
      if (rec(k + 1)) {
        used[t] = 0;
        return true;
      }
      used[t] = 0;
    }
    return false;
  };
  return rec(0);
}

long count_type_occurrences(const SimpleGraph& g, const GraphBall& tau) {
  long n = 0;
  for (int v = 0; v < g.size(); ++v)
    if (graph_balls_isomorphic(graph_ball(g, v, tau.radius), tau)) ++n;
  return n;
}

SimpleGraph random_graph(int n, int max_deg, std::mt19937& rng) {
  SimpleGraph g(n);
  const int tries = static_cast<int>(rng() % (2 * n + 2));
  for (int t = 0; t < tries; ++t) {
    const int u = static_cast<int>(rng() % n);
    const int v = static_cast<int>(rng() % n);
    if (u == v || g.has_edge(u, v)) continue;
    if (g.degree(u) >= max_deg || g.degree(v) >= max_deg) continue;
    g.add_edge(u, v);
  }
  return g;
}

MarkedGraph random_marked(int n, std::mt19937& rng) {
  SimpleGraph g = random_graph(n, 3, rng);
  std::vector<Mark> marks;
  for (int v = 0; v < n; ++v)
    marks.push_back(static_cast<Mark>(rng() % 3));
  return marked(g, std::move(marks));
}

}  // namespace

TEST_CASE("embedding basics") {
  // a full isolated vertex embeds iff the graph has an isolated vertex
  CHECK(embed(single_full_vertex(), edges_plus_isolated(2)).has_value());
  CHECK(!embed(single_full_vertex(), cycle_graph(4)).has_value());

  // an all-partial triangle embeds into K4 as a subgraph
  MarkedGraph tri = marked(complete_graph(3),
                           {Mark::Partial, Mark::Partial, Mark::Partial});
  CHECK(embed(tri, complete_graph(4)).has_value());
  CHECK(!embed(tri, cycle_graph(5)).has_value());

  // example F: embeds into k edges + isolated vertex, never without the
  // isolated vertex
  CHECK(embed(example_f(), edges_plus_isolated(2)).has_value());
  CHECK(!embed(example_f(), disjoint_union(path_graph(2), path_graph(2)))
             .has_value());
  for (const auto& emb : all_embeddings(example_f(), edges_plus_isolated(3)))
    CHECK(emb[0] == 6);  // the isolated vertex of F covers the one in G
}

TEST_CASE("family freeness") {
  CHECK(is_family_free({}, cycle_graph(5)));

  MarkedGraph partial_edge =
      marked(path_graph(2), {Mark::Partial, Mark::Partial});
  CHECK(is_family_free({partial_edge}, SimpleGraph(4)));
  CHECK(!is_family_free({partial_edge}, path_graph(2)));
}

TEST_CASE("embed agrees with the all-injections oracle") {
  std::mt19937 rng(808);
  int embedded = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const MarkedGraph f = random_marked(1 + rng() % 4, rng);
    const SimpleGraph g = random_graph(1 + rng() % 7, 3, rng);
    const bool fast = embed(f, g).has_value();
    CHECK(fast == embeds_by_all_injections(f, g));
    embedded += fast;
  }
  CHECK(embedded > 20);  // the comparison exercises both outcomes
}

TEST_CASE("marked isomorphism distinguishes marks") {
  MarkedGraph a = full_edge();
  MarkedGraph b = marked(path_graph(2), {Mark::Full, Mark::Semifull});
  CHECK(marked_isomorphic(a, a));
  CHECK(!marked_isomorphic(a, b));
}

TEST_CASE("k-realisations") {
  // isolated 1-type, k = 1: the single full vertex
  const GraphBall iso_type = graph_ball(SimpleGraph(1), 0, 1);
  const auto s1 = k_realisations(iso_type, 1, 2, 4);
  REQUIRE(s1.size() == 1);
  CHECK(marked_isomorphic(s1[0], single_full_vertex()));

  // degree-1 1-type at d = 1, k = 2: two disjoint marked edges and the
  // single edge with both endpoints as centres
  const GraphBall deg1 = graph_ball(path_graph(2), 0, 1);
  const auto s2 = k_realisations(deg1, 2, 1, 5);
  CHECK(s2.size() == 2);
  bool has_both_full_edge = false;
  for (const auto& m : s2)
    if (m.g.size() == 2 && m.marks[0] == Mark::Full && m.marks[1] == Mark::Full)
      has_both_full_edge = true;
  CHECK(has_both_full_edge);

  CHECK_THROWS(k_realisations(deg1, 5, 1, 4));  // cap
}

TEST_CASE("S^{k+1}-freeness counts occurrences exactly (d=2, r=1)") {
  // all 1-types of degree <= 2, as rooted balls
  std::vector<GraphBall> types;
  types.push_back(graph_ball(SimpleGraph(1), 0, 1));   // isolated
  types.push_back(graph_ball(path_graph(2), 0, 1));    // one neighbour
  types.push_back(graph_ball(path_graph(3), 1, 1));    // two, non-adjacent
  types.push_back(graph_ball(complete_graph(3), 0, 1));  // triangle

  for (const auto& tau : types) {
    for (int k = 0; k <= 2; ++k) {
      const auto family = k_realisations(tau, k + 1, 2, 3 * (k + 1) + 2);
      for (int n = 1; n <= 7; ++n)
        enumerate_deg2_graphs(n, [&](const SimpleGraph& g) {
          const bool free = is_family_free(family, g);
          const bool few = count_type_occurrences(g, tau) <= k;
          CHECK(free == few);
        });
    }
  }
}

TEST_CASE("union family") {
  const auto both = union_family(single_full_vertex(), single_full_vertex(), 4);
  REQUIRE(both.size() == 2);  // one shared vertex, or a disjoint pair
  CHECK(std::any_of(both.begin(), both.end(), [](const MarkedGraph& m) {
    return m.g.size() == 1;
  }));
  CHECK(std::any_of(both.begin(), both.end(), [](const MarkedGraph& m) {
    return m.g.size() == 2 && m.g.edge_count() == 0;
  }));

  // the disjoint union is always a member
  const MarkedGraph pe = marked(path_graph(2), {Mark::Partial, Mark::Full});
  const auto uf = union_family(pe, single_full_vertex(), 8);
  bool has_disjoint = false;
  for (const auto& m : uf)
    if (m.g.size() == 3) has_disjoint = true;
  CHECK(has_disjoint);
}

TEST_CASE("union-family freeness is the disjunction of freenesses") {
  const MarkedGraph f1 = full_edge();
  const MarkedGraph f2 = single_full_vertex();
  const auto family = union_family(f1, f2, 8);
  for (int n = 1; n <= 6; ++n)
    enumerate_deg2_graphs(n, [&](const SimpleGraph& g) {
      const bool lhs = is_family_free(family, g);
      const bool rhs = is_family_free({f1}, g) || is_family_free({f2}, g);
      CHECK(lhs == rhs);
    });
}

TEST_CASE("profile to GSF family") {
  // all [0, inf): nothing forbidden
  const GraphBall iso_type = graph_ball(SimpleGraph(1), 0, 1);
  CHECK(profile_to_gsf({{iso_type, -1}}, 2, 6).empty());

  // forbidding isolated vertices is the single full vertex
  const auto fam = profile_to_gsf({{iso_type, 0}}, 2, 6);
  REQUIRE(fam.size() == 1);
  CHECK(marked_isomorphic(fam[0], single_full_vertex()));
}

TEST_CASE("profile/GSF equivalence at d=2, r=1") {
  std::vector<GraphBall> types;
  types.push_back(graph_ball(SimpleGraph(1), 0, 1));
  types.push_back(graph_ball(path_graph(2), 0, 1));
  types.push_back(graph_ball(path_graph(3), 1, 1));
  types.push_back(graph_ball(complete_graph(3), 0, 1));

  // profiles with bounds <= 1 on up to two of the four types
  for (size_t t1 = 0; t1 < types.size(); ++t1)
    for (size_t t2 = t1; t2 < types.size(); ++t2)
      for (long b1 = 0; b1 <= 1; ++b1)
        for (long b2 = 0; b2 <= 1; ++b2) {
          std::vector<GraphProfileEntry> rho;
          rho.push_back({types[t1], b1});
          if (t2 != t1) rho.push_back({types[t2], b2});
          const auto family = profile_to_gsf(rho, 2, 8);
          for (int n = 1; n <= 6; ++n)
            enumerate_deg2_graphs(n, [&](const SimpleGraph& g) {
              bool obeys = true;
              for (const auto& e : rho)
                if (e.hi >= 0 && count_type_occurrences(g, e.type) > e.hi)
                  obeys = false;
              CHECK(is_family_free(family, g) == obeys);
            });
        }
}

TEST_CASE("covering sets") {
  // no embeddings: even the empty set covers
  CHECK(covers({}, {example_f()}, cycle_graph(5)));

  // running example: the isolated vertex covers everything, and is the
  // unique minimal covering set once two edges exist
  const SimpleGraph gk = edges_plus_isolated(3);
  CHECK(covers({6}, {example_f()}, gk));
  CHECK(!covers({}, {example_f()}, gk));
  for (int v = 0; v < 6; ++v) CHECK(!covers({v}, {example_f()}, gk));
}

TEST_CASE("degree-2 augmentation of the running example") {
  const std::vector<MarkedGraph> family{example_f(), degree2_blocker()};
  const int k = 3;  // the largest member has three vertices

  // odd n: the only members are edgeless, so the all-full edges member joins
  {
    const auto oracle = deg2_membership_oracle(family, 7);
    const auto aug = deg2_augment(family, k, 7, oracle);
    bool gained_edge_forbidder = false;
    for (const auto& m : aug.added) {
      bool all_edges = m.g.size() > 0 && m.g.edge_count() * 2 == m.g.size();
      for (int v = 0; v < m.g.size(); ++v)
        if (m.g.degree(v) != 1 || m.marks[v] != Mark::Full) all_edges = false;
      if (all_edges) gained_edge_forbidder = true;
    }
    CHECK(gained_edge_forbidder);
  }
  // even n >= 2k: perfect matchings are members, so it does not
  {
    const auto oracle = deg2_membership_oracle(family, 8);
    const auto aug = deg2_augment(family, k, 8, oracle);
    for (const auto& m : aug.added) {
      bool all_edges = m.g.size() > 0 && m.g.edge_count() * 2 == m.g.size();
      for (int v = 0; v < m.g.size(); ++v)
        if (m.g.degree(v) != 1 || m.marks[v] != Mark::Full) all_edges = false;
      CHECK(!all_edges);
    }
  }

  CHECK(tau_eps(1.0, 1) == 1.0);
  CHECK(tau_eps(1.0, 5) == 1.0);
  CHECK(tau_eps(0.001, 3) == doctest::Approx(8 * 27 * 0.001));
}

TEST_CASE("degree-2 graph enumeration") {
  CHECK(count_deg2_multisets(1) == 1);
  CHECK(count_deg2_multisets(3) == 4);

  long prev = 1;
  for (int n = 2; n <= 10; ++n) {
    long direct = 0;
    enumerate_deg2_graphs(n, [&](const SimpleGraph& g) {
      CHECK(g.max_degree() <= 2);
      ++direct;
    });
    CHECK(direct == count_deg2_multisets(n));  // partition-counting oracle
    CHECK(direct > prev);
    prev = direct;
  }
}

TEST_CASE("marked graph files") {
  std::stringstream ss;
  write_family(ss, {example_f(), degree2_blocker()});
  const auto loaded = read_family(ss);
  REQUIRE(loaded.size() == 2);
  CHECK(marked_isomorphic(loaded[0], example_f()));
  CHECK(marked_isomorphic(loaded[1], degree2_blocker()));

  std::stringstream bad("marked 2\nmark 0 fully\n");
  CHECK_THROWS(read_family(bad));
}
