#include "zz/tester.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace zz {

std::optional<int> GraphOracle::ans(int v, int i) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  if (v < 0 || v >= n() || i < 1 || i > d_)
    throw std::invalid_argument("graph oracle: malformed query");
  const auto& nb = g_->neighbours(v);
  if (i > static_cast<int>(nb.size())) return std::nullopt;
  return nb[i - 1];
}

uint64_t split_hash(uint64_t seed, uint64_t stream, uint64_t index) {
  // splitmix64 over a mixed key
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1) +
               0xbf58476d1ce4e5b9ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int uniform_below(uint64_t hash, int n) {
  return static_cast<int>(
      (static_cast<unsigned __int128>(hash) * static_cast<uint64_t>(n)) >> 64);
}

GraphBall explore_ball(const GraphOracle& o, int v, int r) {
  const int d = o.degree_bound();
  std::map<int, int> dist;
  std::vector<int> order{v};
  dist[v] = 0;
  std::vector<std::pair<int, int>> edges;
  for (size_t head = 0; head < order.size(); ++head) {
    const int x = order[head];
    const int dx = dist[x];
    for (int i = 1; i <= d; ++i) {
      const auto w = o.ans(x, i);
      if (!w) break;
      if (!dist.count(*w)) {
        if (dx == r) continue;  // outside the ball
        dist[*w] = dx + 1;
        order.push_back(*w);
      }
      edges.emplace_back(x, *w);
    }
  }
  GraphBall ball;
  ball.radius = r;
  ball.elements = order;
  std::map<int, int> idx;
  for (size_t i = 0; i < order.size(); ++i) idx[order[i]] = static_cast<int>(i);
  ball.g = SimpleGraph(static_cast<int>(order.size()));
  for (auto [x, w] : edges)
    if (idx.count(x) && idx.count(w)) ball.g.add_edge(idx[x], idx[w]);
  ball.center = 0;
  return ball;
}

uint64_t sample_size(double t, double lambda) {
  if (lambda <= 0.0 || lambda > 1.0)
    throw std::invalid_argument("sample_size: lambda out of range");
  if (t < 1.0) throw std::invalid_argument("sample_size: t < 1");
  const long double raw =
      (static_cast<long double>(t) * t / (static_cast<long double>(lambda) * lambda)) *
      std::log(static_cast<long double>(t) + 40.0L);
  return static_cast<uint64_t>(std::ceil(raw));
}

bool ForbiddenSet::forbidden(const GraphBall& b) const {
  bool matches_some = false;
  for (const auto& member : balls)
    if (graph_balls_isomorphic(member, b)) {
      matches_some = true;
      break;
    }
  return complement ? !matches_some : matches_some;
}

namespace {

SimpleGraph explore_everything(const GraphOracle& o) {
  SimpleGraph g(o.n());
  for (int v = 0; v < o.n(); ++v)
    for (int i = 1; i <= o.degree_bound(); ++i) {
      const auto w = o.ans(v, i);
      if (!w) break;
      if (*w != v && !g.has_edge(v, *w)) g.add_edge(v, *w);
    }
  return g;
}

int classify_graph_ball(std::vector<GraphBall>& registry, const GraphBall& b) {
  for (size_t i = 0; i < registry.size(); ++i)
    if (graph_balls_isomorphic(registry[i], b)) return static_cast<int>(i);
  registry.push_back(b);
  return static_cast<int>(registry.size()) - 1;
}

}  // namespace

TesterVerdict framework_tester(
    const GraphOracle& o, const std::function<bool(uint64_t)>& in_M,
    uint64_t n0, double lambda, const ForbiddenSet& F, int radius,
    const std::function<bool(const SimpleGraph&)>& exact) {
  o.reset_queries();
  TesterVerdict verdict;

  if (in_M && in_M(static_cast<uint64_t>(o.n()))) {
    verdict.accept = false;
    verdict.cause = TesterVerdict::Cause::MSet;
    verdict.queries = o.queries();
    return verdict;
  }

  // F empty and M empty accepts everything, no queries needed
  if (!F.complement && F.balls.empty()) {
    verdict.queries = o.queries();
    return verdict;
  }

  if (static_cast<uint64_t>(o.n()) < n0) {
    const bool member = exact(explore_everything(o));
    verdict.accept = member;
    verdict.cause = TesterVerdict::Cause::ExactTable;
    verdict.queries = o.queries();
    return verdict;
  }

  std::vector<GraphBall> registry;
  for (const auto& b : F.balls) classify_graph_ball(registry, b);
  const double t = static_cast<double>(std::max<size_t>(1, registry.size()));
  const uint64_t s = sample_size(t, lambda);

  std::vector<long> counts(registry.size(), 0);
  for (uint64_t k = 0; k < s; ++k) {
    const int v = uniform_below(split_hash(o.seed(), 0, k), o.n());
    const GraphBall ball = explore_ball(o, v, radius);
    const int type = classify_graph_ball(registry, ball);
    if (type >= static_cast<int>(counts.size())) counts.resize(type + 1, 0);
    counts[type]++;
    if (F.forbidden(ball)) {
      verdict.accept = false;
      verdict.cause = TesterVerdict::Cause::ForbiddenMass;
      break;
    }
  }
  verdict.frequencies.assign(counts.size(), 0.0);
  for (size_t i = 0; i < counts.size(); ++i)
    verdict.frequencies[i] = static_cast<double>(counts[i]) / static_cast<double>(s);
  verdict.queries = o.queries();
  return verdict;
}

std::vector<double> estimate_frequencies(const GraphOracle& o, int r,
                                         uint64_t s,
                                         std::vector<GraphBall>& registry) {
  if (o.n() == 0) throw std::invalid_argument("estimate_frequencies: empty graph");
  if (s < 1) throw std::invalid_argument("estimate_frequencies: s < 1");
  std::vector<long> counts(registry.size(), 0);
  for (uint64_t k = 0; k < s; ++k) {
    const int v = uniform_below(split_hash(o.seed(), 0, k), o.n());
    const int type = classify_graph_ball(registry, explore_ball(o, v, r));
    if (type >= static_cast<int>(counts.size())) counts.resize(type + 1, 0);
    counts[type]++;
  }
  std::vector<double> freq(registry.size(), 0.0);
  for (size_t i = 0; i < counts.size(); ++i)
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(s);
  return freq;
}

namespace {

bool ball_matches(const SimpleGraph& g, int v, const GraphBall& tau) {
  return graph_balls_isomorphic(graph_ball(g, v, tau.radius), tau);
}

}  // namespace

TesterVerdict freeness_tester(const GraphOracle& o, const GraphBall& tau,
                              double eps) {
  const int r = tau.radius;
  if (r < 1)
    throw std::invalid_argument("freeness_tester: radius-0 types unsupported");
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("freeness_tester: eps out of range");
  const int d = o.degree_bound();

  const auto exact = [&tau](const SimpleGraph& g) {
    for (int v = 0; v < g.size(); ++v)
      if (ball_matches(g, v, tau)) return false;
    return true;
  };

  const int ball_max_deg = tau.g.max_degree();
  if (ball_max_deg > d) {
    // no degree-d graph contains tau: every input satisfies the property
    return framework_tester(o, nullptr, 1, 1.0, ForbiddenSet{}, r, exact);
  }

  std::function<bool(uint64_t)> in_M;
  double lambda;
  uint64_t n0;
  const std::vector<int> dist = bfs_distances(tau.g, tau.center);
  bool interior_all_d = true;
  for (int v = 0; v < tau.g.size(); ++v)
    if (dist[v] >= 0 && dist[v] <= r - 1 && tau.g.degree(v) != d)
      interior_all_d = false;

  if (d == 1 && tau.g.size() == 1) {
    in_M = [](uint64_t n) { return n % 2 == 1; };
    lambda = eps;
    n0 = 1;
  } else if (interior_all_d) {
    lambda = eps;
    n0 = 1;
  } else if (r == 1 || ball_max_deg < d) {
    const double power = std::pow(static_cast<double>(d), 2 * r + 1);
    lambda = eps * d / (14.0 * (1.0 + power));
    n0 = static_cast<uint64_t>(std::ceil(2.0 * d * d / eps));
  } else {
    throw std::invalid_argument(
        "freeness_tester: r >= 2 with mixed interior degrees at the bound");
  }

  ForbiddenSet F;
  F.balls = {tau};
  return framework_tester(o, in_M, n0, lambda, F, r, exact);
}

long maxcl(const GraphBall& ball, int i) {
  if (ball.radius != 1) throw std::invalid_argument("maxcl: radius must be 1");
  const SimpleGraph& g = ball.g;
  const int c = ball.center;
  if (g.size() > 20) throw std::invalid_argument("maxcl: ball too large");
  const auto& nb = g.neighbours(c);
  long count = 0;
  for (uint32_t mask = 0; mask < (1u << nb.size()); ++mask) {
    std::vector<int> clique{c};
    for (size_t b = 0; b < nb.size(); ++b)
      if (mask >> b & 1) clique.push_back(nb[b]);
    bool is_clique = true;
    for (size_t x = 0; x < clique.size() && is_clique; ++x)
      for (size_t y = x + 1; y < clique.size() && is_clique; ++y)
        if (!g.has_edge(clique[x], clique[y])) is_clique = false;
    if (!is_clique || static_cast<int>(clique.size()) != i) continue;
    bool maximal = true;
    for (int w = 0; w < g.size() && maximal; ++w) {
      if (std::find(clique.begin(), clique.end(), w) != clique.end()) continue;
      bool adjacent_to_all = true;
      for (int x : clique)
        if (!g.has_edge(w, x)) adjacent_to_all = false;
      if (adjacent_to_all) maximal = false;
    }
    if (maximal) ++count;
  }
  return count;
}

TesterVerdict regularity_tester(const GraphOracle& o, const GraphBall& tau,
                                double eps) {
  if (tau.radius != 1)
    throw std::invalid_argument("regularity_tester: tau must be a 1-type");
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("regularity_tester: eps out of range");
  const int d = o.degree_bound();

  // clique condition: the ball minus its centre is a disjoint union of cliques
  {
    const SimpleGraph& g = tau.g;
    std::vector<int> comp(g.size(), -1);
    for (int s = 0; s < g.size(); ++s) {
      if (s == tau.center || comp[s] != -1) continue;
      std::vector<int> members{s};
      comp[s] = s;
      for (size_t h = 0; h < members.size(); ++h)
        for (int w : g.neighbours(members[h]))
          if (w != tau.center && comp[w] == -1) {
            comp[w] = s;
            members.push_back(w);
          }
      for (size_t x = 0; x < members.size(); ++x)
        for (size_t y = x + 1; y < members.size(); ++y)
          if (!g.has_edge(members[x], members[y]))
            throw std::invalid_argument(
                "regularity_tester: tau fails the clique condition");
    }
  }

  // cliques in a degree-d graph have up to d+1 vertices (K_{d+1}), so the
  // divisibility test must cover i = d+1 as well
  std::vector<long> maxcl_tau(d + 2, 0);
  for (int i = 1; i <= d + 1; ++i) maxcl_tau[i] = maxcl(tau, i);

  const auto in_M = [maxcl_tau, d](uint64_t n) {
    for (int i = 1; i <= d + 1; ++i)
      if ((maxcl_tau[i] * static_cast<long>(n)) % i != 0) return true;
    return false;
  };

  const double lambda = eps / (20.0 * std::pow(static_cast<double>(d), 6));
  const uint64_t n0 =
      static_cast<uint64_t>(20.0 * std::pow(static_cast<double>(d), 8));

  ForbiddenSet F;
  F.balls = {tau};
  F.complement = true;  // forbidden: every 1-type other than tau

  const auto exact = [&tau](const SimpleGraph& g) {
    for (int v = 0; v < g.size(); ++v)
      if (!ball_matches(g, v, tau)) return false;
    return true;
  };

  return framework_tester(o, in_M, n0, lambda, F, 1, exact);
}

std::optional<long> brute_distance(
    const SimpleGraph& g, const std::function<bool(const SimpleGraph&)>& in_p,
    int d) {
  const int n = g.size();
  if (n > 6) throw std::invalid_argument("brute_distance: n > 6");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  uint32_t gmask = 0;
  for (size_t b = 0; b < pairs.size(); ++b)
    if (g.has_edge(pairs[b].first, pairs[b].second)) gmask |= 1u << b;

  std::optional<long> best;
  for (uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<int> deg(n, 0);
    bool ok = true;
    for (size_t b = 0; b < pairs.size() && ok; ++b)
      if (mask >> b & 1) {
        if (++deg[pairs[b].first] > d) ok = false;
        if (++deg[pairs[b].second] > d) ok = false;
      }
    if (!ok) continue;
    SimpleGraph h(n);
    for (size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) h.add_edge(pairs[b].first, pairs[b].second);
    if (!in_p(h)) continue;
    const long edits = __builtin_popcount(mask ^ gmask);
    if (!best || edits < *best) best = edits;
  }
  return best;
}

TrialStats run_trials(const SimpleGraph& g, int degree_bound, int trials,
                      int threads,
                      const std::function<TesterVerdict(const GraphOracle&)>& run,
                      uint64_t seed_base) {
  TrialStats stats;
  stats.trials = trials;
  std::atomic<int> accepts{0};
  std::atomic<long> total_queries{0};
  std::atomic<int> next{0};

  auto worker = [&]() {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= trials) break;
      GraphOracle o(g, degree_bound, seed_base + static_cast<uint64_t>(t));
      const TesterVerdict v = run(o);
      if (v.accept) accepts.fetch_add(1);
      total_queries.fetch_add(v.queries);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  stats.accepts = accepts.load();
  stats.mean_queries =
      trials > 0 ? static_cast<double>(total_queries.load()) / trials : 0.0;
  return stats;
}

}  // namespace zz
