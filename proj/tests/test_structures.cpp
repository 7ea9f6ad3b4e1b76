#include <random>
#include <sstream>

#include "doctest.h"
#include "test_helpers.hpp"
#include "zz/structure.hpp"

using namespace zz;

namespace {

Structure directed_path3() {
  Structure a(Signature({{"E", 2}}), 3);
  a.add_tuple(0, {0, 1});
  a.add_tuple(0, {1, 2});
  return a;
}

Structure sym_path(int n) {
  Structure a(graph_signature(), n);
  for (int i = 0; i + 1 < n; ++i) {
    a.add_tuple(0, {i, i + 1});
    a.add_tuple(0, {i + 1, i});
  }
  return a;
}

Structure sym_cycle(int n) {
  Structure a(graph_signature(), n);
  for (int i = 0; i < n; ++i) {
    a.add_tuple(0, {i, (i + 1) % n});
    a.add_tuple(0, {(i + 1) % n, i});
  }
  return a;
}

Structure disjoint_union(const Structure& a, const Structure& b) {
  Structure u(a.sig(), a.size() + b.size());
  for (int r = 0; r < a.sig().size(); ++r) {
    for (const auto& t : a.tuples(r)) u.add_tuple(r, t);
    for (const auto& t : b.tuples(r)) {
      Tuple shifted(t.size());
      for (size_t i = 0; i < t.size(); ++i) shifted[i] = t[i] + a.size();
      u.add_tuple(r, std::move(shifted));
    }
  }
  return u;
}

Structure random_structure(int n, std::mt19937& rng) {
  Structure a(graph_signature(), n);
  const int edges = static_cast<int>(rng() % (2 * n + 1));
  for (int k = 0; k < edges; ++k) {
    const int u = static_cast<int>(rng() % n);
    const int v = static_cast<int>(rng() % n);
    if (u == v) continue;
    if (a.degree(u) >= 3 || a.degree(v) >= 3) continue;  // keep degrees small
    a.add_tuple(0, {u, v});
    a.add_tuple(0, {v, u});
  }
  return a;
}

}  // namespace

TEST_CASE("degree counts tuples, self-tuple once") {
  Structure a(Signature({{"E", 2}, {"R", 2}}), 3);
  a.add_tuple(0, {0, 1});
  a.add_tuple(1, {0, 0});
  CHECK(a.degree(0) == 2);
  CHECK(a.degree(1) == 1);
  CHECK(a.degree(2) == 0);
  CHECK(a.max_degree() == 2);
}

TEST_CASE("gaifman graph") {
  Structure a(Signature({{"E", 2}}), 3);
  a.add_tuple(0, {0, 1});
  auto g = gaifman(a);
  CHECK(g.has_edge(0, 1));
  CHECK(g.edge_count() == 1);

  Structure loops(Signature({{"R", 2}}), 2);
  loops.add_tuple(0, {0, 0});
  CHECK(gaifman(loops).edge_count() == 0);

  Structure tern(Signature({{"T", 3}}), 4);
  tern.add_tuple(0, {0, 1, 2});
  auto gt = gaifman(tern);
  CHECK(gt.has_edge(0, 1));
  CHECK(gt.has_edge(1, 2));
  CHECK(gt.has_edge(0, 2));
  CHECK(gt.edge_count() == 3);
}

TEST_CASE("r_ball extraction") {
  auto a = directed_path3();
  auto b = r_ball(a, 0, 1);
  CHECK(b.str.size() == 2);
  CHECK(b.str.tuples(0).size() == 1);

  Structure selfy(Signature({{"E", 2}, {"S", 2}}), 3);
  selfy.add_tuple(0, {0, 1});
  selfy.add_tuple(1, {0, 0});
  auto b0 = r_ball(selfy, 0, 0);
  CHECK(b0.str.size() == 1);
  CHECK(b0.str.tuples(0).empty());
  CHECK(b0.str.tuples(1).size() == 1);  // self-tuple of the centre survives

  auto c4 = sym_cycle(4);
  for (int v = 0; v < 4; ++v) CHECK(r_ball(c4, v, 2).str.size() == 4);
}

TEST_CASE("rooted ball isomorphism") {
  auto p5 = sym_path(5);
  auto mid_a = r_ball(p5, 2, 1);
  auto mid_b = r_ball(p5, 2, 1);
  CHECK(ball_isomorphic(mid_a, mid_b));

  auto end_ball = r_ball(p5, 0, 1);
  CHECK(!ball_isomorphic(end_ball, mid_a));  // centre degree 1 vs 2

  // same underlying graphs, different centres
  auto e1 = r_ball(p5, 1, 1);
  CHECK(ball_isomorphic(e1, r_ball(p5, 3, 1)));
}

TEST_CASE("registry classify is idempotent and matches isomorphism") {
  auto p3 = sym_path(3);
  TypeRegistry reg(1);
  const int t0 = reg.classify(r_ball(p3, 0, 1));
  CHECK(t0 == 0);
  CHECK(reg.classify(r_ball(p3, 2, 1)) == 0);
  const int t1 = reg.classify(r_ball(p3, 1, 1));
  CHECK(t1 == 1);
  CHECK(reg.size() == 2);
  CHECK(reg.classify(reg.representative(0)) == 0);
  CHECK(reg.classify(reg.representative(1)) == 1);

  // classify agreement with pairwise isomorphism on registry reps
  for (int i = 0; i < reg.size(); ++i)
    for (int j = 0; j < reg.size(); ++j)
      CHECK(ball_isomorphic(reg.representative(i), reg.representative(j)) ==
            (i == j));
}

TEST_CASE("histogram") {
  TypeRegistry reg(1);
  auto p3 = sym_path(3);
  auto h = histogram(p3, 1, reg);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == 2);  // endpoints
  CHECK(h[1] == 1);  // middle

  Structure edgeless(graph_signature(), 5);
  TypeRegistry reg2(1);
  auto h2 = histogram(edgeless, 1, reg2);
  REQUIRE(h2.size() == 1);
  CHECK(h2[0] == 5);

  TypeRegistry reg3(1);
  auto once = histogram(p3, 1, reg3);
  auto twice = histogram(disjoint_union(p3, p3), 1, reg3);
  REQUIRE(once.size() == twice.size());
  for (size_t i = 0; i < once.size(); ++i) CHECK(twice[i] == 2 * once[i]);

  long total = 0;
  for (long c : twice) total += c;
  CHECK(total == 6);
}

TEST_CASE("sampling distance at fixed radius") {
  auto p3 = sym_path(3);
  TypeRegistry reg(1);
  CHECK(sampling_distance_r(p3, p3, 1, reg) == doctest::Approx(0.0));

  Structure edgeless(graph_signature(), 4);
  Structure matching(graph_signature(), 4);
  matching.add_tuple(0, {0, 1});
  matching.add_tuple(0, {1, 0});
  matching.add_tuple(0, {2, 3});
  matching.add_tuple(0, {3, 2});
  TypeRegistry reg2(1);
  CHECK(sampling_distance_r(edgeless, matching, 1, reg2) ==
        doctest::Approx(1.0));

  TypeRegistry reg3(1);
  CHECK(sampling_distance_r(p3, disjoint_union(p3, p3), 1, reg3) ==
        doctest::Approx(0.0));
}

TEST_CASE("sampling distance series") {
  auto p3 = sym_path(3);
  auto d = sampling_distance(p3, p3, 3);
  CHECK(d.value == doctest::Approx(0.0));
  CHECK(d.tail_bound <= std::ldexp(1.0, 1 - 3));

  // nondecreasing in r_max
  auto c5 = sym_cycle(5);
  double prev = 0.0;
  for (int rmax = 0; rmax <= 3; ++rmax) {
    auto s = sampling_distance(p3, c5, rmax);
    CHECK(s.value >= prev - 1e-12);
    prev = s.value;
  }
}

TEST_CASE("sampling_distance_r is a metric on random triples") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_structure(3 + rng() % 5, rng);
    auto b = random_structure(3 + rng() % 5, rng);
    auto c = random_structure(3 + rng() % 5, rng);
    TypeRegistry reg(1);
    const double ab = sampling_distance_r(a, b, 1, reg);
    const double ba = sampling_distance_r(b, a, 1, reg);
    const double ac = sampling_distance_r(a, c, 1, reg);
    const double cb = sampling_distance_r(c, b, 1, reg);
    CHECK(ab == doctest::Approx(ba));
    CHECK(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("profiles") {
  auto c5 = sym_cycle(5);
  auto p3 = sym_path(3);

  // all [0,inf): always obeyed
  NeighbourhoodProfile permissive{1, {}, Interval{0, -1}};
  TypeRegistry reg(1);
  CHECK(obeys_profile(c5, permissive, reg));
  CHECK(obeys_profile(p3, permissive, reg));

  // the disjoint-cycles profile: allow only the degree-2 1-types
  TypeRegistry reg2(1);
  const int cyc_type = reg2.classify(r_ball(c5, 0, 1));
  NeighbourhoodProfile rho2{1, {}, Interval{0, 0}};
  rho2.intervals.assign(reg2.size(), Interval{0, 0});
  rho2.intervals[cyc_type] = Interval{0, -1};
  CHECK(obeys_profile(c5, rho2, reg2));
  CHECK(!obeys_profile(p3, rho2, reg2));

  // default [0,0] + novel type fails
  NeighbourhoodProfile strict{1, {}, Interval{0, 0}};
  TypeRegistry reg3(1);
  Structure edgeless(graph_signature(), 2);
  CHECK(!obeys_profile(edgeless, strict, reg3));
}

TEST_CASE("0-profile monotonicity") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_structure(2 + rng() % 5, rng);
    auto bigger = disjoint_union(a, random_structure(2 + rng() % 5, rng));
    TypeRegistry reg(1);
    auto ha = histogram(a, 1, reg);
    auto hb = histogram(bigger, 1, reg);
    ha.resize(reg.size(), 0);
    hb.resize(reg.size(), 0);
    // a's histogram is componentwise <= bigger's by construction
    for (size_t i = 0; i < ha.size(); ++i) REQUIRE(ha[i] <= hb[i]);

    NeighbourhoodProfile rho{1, {}, Interval{0, -1}};
    rho.intervals.assign(reg.size(), Interval{0, 0});
    for (size_t i = 0; i < rho.intervals.size(); ++i)
      if (rng() % 2) rho.intervals[i] = Interval{0, static_cast<long>(rng() % 4)};
      else rho.intervals[i] = Interval{0, -1};
    REQUIRE(rho.is_zero_profile());
    if (obeys_profile(bigger, rho, reg)) CHECK(obeys_profile(a, rho, reg));
  }
}

TEST_CASE("structure text round-trip") {
  auto p3 = directed_path3();
  std::stringstream ss;
  write_structure(ss, p3);
  CHECK(read_structure(ss) == p3);

  std::stringstream bad("structure 2\nrel E 2\ntuple Q 0 1\n");
  CHECK_THROWS(read_structure(bad));
}

TEST_CASE("ball text round-trip") {
  auto b = r_ball(sym_path(5), 2, 1);
  std::stringstream ss;
  write_ball(ss, b);
  auto loaded = read_ball(ss);
  CHECK(loaded.center == b.center);
  CHECK(loaded.radius == b.radius);
  CHECK(ball_isomorphic(loaded, b));
}
