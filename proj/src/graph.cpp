#include "zz/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

namespace zz {

void SimpleGraph::add_edge(int u, int v) {
  if (u == v) throw std::invalid_argument("add_edge: self-loop");
  if (has_edge(u, v)) return;
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

void SimpleGraph::remove_edge(int u, int v) {
  auto it = std::lower_bound(adj_[u].begin(), adj_[u].end(), v);
  if (it == adj_[u].end() || *it != v) return;
  adj_[u].erase(it);
  auto jt = std::lower_bound(adj_[v].begin(), adj_[v].end(), u);
  adj_[v].erase(jt);
}

bool SimpleGraph::has_edge(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

int SimpleGraph::max_degree() const {
  int d = 0;
  for (const auto& a : adj_) d = std::max<int>(d, static_cast<int>(a.size()));
  return d;
}

long SimpleGraph::edge_count() const {
  long s = 0;
  for (const auto& a : adj_) s += static_cast<long>(a.size());
  return s / 2;
}

std::vector<int> bfs_distances(const SimpleGraph& g, int src) {
  std::vector<int> dist(g.size(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.neighbours(v))
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

namespace {

// Backtracking isomorphism with degree and neighbour-degree-multiset pruning.
struct IsoSearch {
  const SimpleGraph& a;
  const SimpleGraph& b;
  std::vector<int> map;   // a -> b
  std::vector<int> rmap;  // b -> a
  std::vector<std::vector<int>> inv_a, inv_b;

  IsoSearch(const SimpleGraph& a_, const SimpleGraph& b_) : a(a_), b(b_) {
    map.assign(a.size(), -1);
    rmap.assign(b.size(), -1);
    inv_a = invariants(a);
    inv_b = invariants(b);
  }

  static std::vector<std::vector<int>> invariants(const SimpleGraph& g) {
    std::vector<std::vector<int>> inv(g.size());
    for (int v = 0; v < g.size(); ++v) {
      std::vector<int> i;
      i.push_back(g.degree(v));
      std::vector<int> nd;
      for (int w : g.neighbours(v)) nd.push_back(g.degree(w));
      std::sort(nd.begin(), nd.end());
      i.insert(i.end(), nd.begin(), nd.end());
      inv[v] = std::move(i);
    }
    return inv;
  }

  bool feasible(int va, int vb) const {
    if (inv_a[va] != inv_b[vb]) return false;
    for (int w : a.neighbours(va)) {
      if (map[w] != -1 && !b.has_edge(vb, map[w])) return false;
    }
    for (int w : b.neighbours(vb)) {
      if (rmap[w] != -1 && !a.has_edge(va, rmap[w])) return false;
    }
    return true;
  }

  bool extend(int k, const std::vector<int>& order) {
    if (k == static_cast<int>(order.size())) return true;
    int va = order[k];
    for (int vb = 0; vb < b.size(); ++vb) {
      if (rmap[vb] != -1 || !feasible(va, vb)) continue;
      map[va] = vb;
      rmap[vb] = va;
      if (extend(k + 1, order)) return true;
      map[va] = -1;
      rmap[vb] = -1;
    }
    return false;
  }
};

}  // namespace

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> da, db;
  for (int v = 0; v < a.size(); ++v) da.push_back(a.degree(v));
  for (int v = 0; v < b.size(); ++v) db.push_back(b.degree(v));
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;

  IsoSearch s(a, b);
  // connectivity-friendly order: repeated BFS over components
  std::vector<int> order;
  std::vector<char> used(a.size(), 0);
  for (int v = 0; v < a.size(); ++v) {
    if (used[v]) continue;
    std::queue<int> q;
    q.push(v);
    used[v] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      order.push_back(x);
      for (int w : a.neighbours(x))
        if (!used[w]) {
          used[w] = 1;
          q.push(w);
        }
    }
  }
  return s.extend(0, order);
}

GraphBall graph_ball(const SimpleGraph& g, int v, int r) {
  std::vector<int> dist = bfs_distances(g, v);
  GraphBall ball;
  ball.radius = r;
  std::vector<int> idx(g.size(), -1);
  for (int w = 0; w < g.size(); ++w)
    if (dist[w] >= 0 && dist[w] <= r) {
      idx[w] = static_cast<int>(ball.elements.size());
      ball.elements.push_back(w);
    }
  ball.g = SimpleGraph(static_cast<int>(ball.elements.size()));
  for (int w : ball.elements)
    for (int x : g.neighbours(w))
      if (idx[x] != -1 && w < x) ball.g.add_edge(idx[w], idx[x]);
  ball.center = idx[v];
  return ball;
}

bool graph_balls_isomorphic(const GraphBall& a, const GraphBall& b) {
  if (a.radius != b.radius) return false;
  if (a.g.size() != b.g.size() || a.g.edge_count() != b.g.edge_count())
    return false;
  if (a.g.degree(a.center) != b.g.degree(b.center)) return false;
  // root-pinned search: add a distance-from-root invariant by augmenting the
  // backtracking order to start at the centre.
  const std::vector<int> da = bfs_distances(a.g, a.center);
  const std::vector<int> db = bfs_distances(b.g, b.center);
  {
    std::vector<int> sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  struct RootedIso {
    const SimpleGraph& ga;
    const SimpleGraph& gb;
    const std::vector<int>& da;
    const std::vector<int>& db;
    std::vector<int> map, rmap;

    bool feasible(int va, int vb) const {
      if (da[va] != db[vb]) return false;
      if (ga.degree(va) != gb.degree(vb)) return false;
      for (int w : ga.neighbours(va))
        if (map[w] != -1 && !gb.has_edge(vb, map[w])) return false;
      for (int w : gb.neighbours(vb))
        if (rmap[w] != -1 && !ga.has_edge(va, rmap[w])) return false;
      return true;
    }
    bool extend(size_t k, const std::vector<int>& order) {
      if (k == order.size()) return true;
      int va = order[k];
      for (int vb = 0; vb < gb.size(); ++vb) {
        if (rmap[vb] != -1 || !feasible(va, vb)) continue;
        map[va] = vb;
        rmap[vb] = va;
        if (extend(k + 1, order)) return true;
        map[va] = -1;
        rmap[vb] = -1;
      }
      return false;
    }
  } s{a.g, b.g, da, db, std::vector<int>(a.g.size(), -1),
      std::vector<int>(b.g.size(), -1)};

  if (!s.feasible(a.center, b.center)) return false;
  s.map[a.center] = b.center;
  s.rmap[b.center] = a.center;
  std::vector<int> order;
  for (int v = 0; v < a.g.size(); ++v)
    if (v != a.center) order.push_back(v);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return da[x] < da[y]; });
  return s.extend(0, order);
}

uint64_t canon_code(const SimpleGraph& g) {
  const int n = g.size();
  if (n > 8) throw std::invalid_argument("canon_code: n > 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  uint64_t best = ~0ull;
  do {
    uint64_t code = 0;
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++bit)
        if (g.has_edge(perm[i], perm[j])) code |= 1ull << bit;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<SimpleGraph> all_graphs_up_to_iso(int n, int max_deg) {
  if (max_deg <= 2) {
    std::vector<SimpleGraph> out;
    enumerate_deg2_graphs(n, [&](const SimpleGraph& g) {
      if (g.max_degree() <= max_deg) out.push_back(g);
    });
    return out;
  }
  if (n > 6) throw std::invalid_argument("all_graphs_up_to_iso: n > 6");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<SimpleGraph> out;
  std::vector<uint64_t> seen;
  for (uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    std::vector<int> deg(n, 0);
    bool ok = true;
    for (size_t b = 0; b < pairs.size() && ok; ++b)
      if (mask >> b & 1) {
        if (++deg[pairs[b].first] > max_deg) ok = false;
        if (++deg[pairs[b].second] > max_deg) ok = false;
      }
    if (!ok) continue;
    SimpleGraph g(n);
    for (size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1) g.add_edge(pairs[b].first, pairs[b].second);
    uint64_t code = canon_code(g);
    if (std::find(seen.begin(), seen.end(), code) == seen.end()) {
      seen.push_back(code);
      out.push_back(std::move(g));
    }
  }
  return out;
}

namespace {

// component multisets: paths listed by vertex count (>=1), cycles by length (>=3)
void deg2_rec(int remaining, int min_path, int min_cycle,
              std::vector<int>& paths, std::vector<int>& cycles,
              const std::function<void(const std::vector<int>&,
                                       const std::vector<int>&)>& emit) {
  if (remaining == 0) {
    emit(paths, cycles);
    return;
  }
  for (int p = min_path; p <= remaining; ++p) {
    paths.push_back(p);
    deg2_rec(remaining - p, p, min_cycle, paths, cycles, emit);
    paths.pop_back();
  }
  if (paths.empty())
    for (int c = min_cycle; c <= remaining; ++c) {
      cycles.push_back(c);
      deg2_rec(remaining - c, remaining + 1, c, paths, cycles, emit);
      cycles.pop_back();
    }
}

}  // namespace

void enumerate_deg2_graphs(int n,
                           const std::function<void(const SimpleGraph&)>& fn) {
  if (n < 0 || n > 14) throw std::invalid_argument("enumerate_deg2_graphs: cap");
  std::vector<int> paths, cycles;
  // enumerate cycles first so path sizes stay sorted independently
  std::function<void(int, int, int)> rec = [&](int remaining, int min_cycle,
                                               int min_path) {
    if (remaining == 0 || min_cycle > remaining) {
      // fill the rest with paths
      std::function<void(int, int)> prec = [&](int rem, int mp) {
        if (rem == 0) {
          SimpleGraph g(n);
          int next = 0;
          for (int c : cycles) {
            for (int k = 0; k < c; ++k) g.add_edge(next + k, next + (k + 1) % c);
            next += c;
          }
          for (int p : paths) {
            for (int k = 0; k + 1 < p; ++k) g.add_edge(next + k, next + k + 1);
            next += p;
          }
          fn(g);
          return;
        }
        for (int p = mp; p <= rem; ++p) {
          paths.push_back(p);
          prec(rem - p, p);
          paths.pop_back();
        }
      };
      prec(remaining, min_path);
      return;
    }
    for (int c = min_cycle; c <= remaining; ++c) {
      cycles.push_back(c);
      rec(remaining - c, c, 1);
      cycles.pop_back();
    }
    rec(remaining, remaining + 1, min_path);  // no more cycles
  };
  rec(n, 3, 1);
}

// Independent of the enumerator: #partitions of k into parts >= 1 times
// #partitions of n-k into parts >= 3, summed over k.
long count_deg2_multisets(int n) {
  auto partitions_min = [&](int m, int min_part) {
    // dp over largest-part-first partitions
    std::vector<std::vector<long>> dp(m + 1, std::vector<long>(m + 2, 0));
    for (int cap = 0; cap <= m + 1; ++cap) dp[0][cap] = 1;
    for (int rem = 1; rem <= m; ++rem)
      for (int cap = min_part; cap <= m + 1; ++cap) {
        dp[rem][cap] = dp[rem][cap - 1];
        if (cap <= rem) dp[rem][cap] += dp[rem - cap][cap];
      }
    return dp[m][m + 1];
  };
  long total = 0;
  for (int k = 0; k <= n; ++k)
    total += partitions_min(k, 1) * partitions_min(n - k, 3);
  return total;
}

SimpleGraph read_graph(std::istream& in) {
  std::string tag;
  int n = -1;
  if (!(in >> tag >> n) || tag != "graph" || n < 0)
    throw std::runtime_error("graph load: bad header");
  SimpleGraph g(n);
  while (in >> tag) {
    if (tag != "edge") throw std::runtime_error("graph load: expected edge");
    int u, v;
    if (!(in >> u >> v) || u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw std::runtime_error("graph load: bad edge");
    g.add_edge(u, v);
  }
  return g;
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << "graph " << g.size() << '\n';
  for (int v = 0; v < g.size(); ++v)
    for (int w : g.neighbours(v))
      if (v < w) out << "edge " << v << ' ' << w << '\n';
}

}  // namespace zz
