#include "zz/gsf.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace zz {

namespace {

struct EmbedSearch {
  const MarkedGraph& f;
  const SimpleGraph& g;
  std::vector<int> map, rmap;
  std::vector<std::vector<int>>* sink = nullptr;  // collect all if set
  size_t limit = 0;
  bool found = false;

  bool mark_feasible(int vf, int vg) const {
    const int df = f.g.degree(vf);
    const int dg = g.degree(vg);
    switch (f.marks[vf]) {
      case Mark::Full:
        return dg == df;
      case Mark::Semifull:
      case Mark::Partial:
        return dg >= df;
    }
    return false;
  }

  bool consistent(int vf, int vg) const {
    // edges/non-edges against already-mapped vertices
    for (int w : f.g.neighbours(vf))
      if (map[w] != -1 && !g.has_edge(vg, map[w])) return false;
    for (int w = 0; w < f.g.size(); ++w) {
      if (map[w] == -1 || w == vf) continue;
      if (!f.g.has_edge(vf, w) && g.has_edge(vg, map[w])) {
        // a non-edge of F mapped onto an edge of G only matters when either
        // endpoint is full or semifull
        if (f.marks[vf] != Mark::Partial || f.marks[w] != Mark::Partial)
          return false;
      }
    }
    return true;
  }

  bool closed_ok(const std::vector<int>& assignment) const {
    // full vertices: every G-neighbour of the image lies in the image and
    // corresponds to an F-neighbour (the exact-degree check did the rest)
    for (int vf = 0; vf < f.g.size(); ++vf) {
      if (f.marks[vf] != Mark::Full) continue;
      for (int wg : g.neighbours(assignment[vf])) {
        bool matched = false;
        for (int w : f.g.neighbours(vf))
          if (assignment[w] == wg) matched = true;
        if (!matched) return false;
      }
    }
    return true;
  }

  bool extend(size_t k, const std::vector<int>& order) {
    if (k == order.size()) {
      if (!closed_ok(map)) return false;
      found = true;
      if (sink && sink->size() < limit) sink->push_back(map);
      return sink == nullptr;  // stop at the first hit unless collecting
    }
    const int vf = order[k];
    for (int vg = 0; vg < g.size(); ++vg) {
      if (rmap[vg] != -1 || !mark_feasible(vf, vg) || !consistent(vf, vg))
        continue;
      map[vf] = vg;
      rmap[vg] = vf;
      if (extend(k + 1, order)) return true;
      map[vf] = -1;
      rmap[vg] = -1;
    }
    return false;
  }
};

std::vector<int> embed_order(const MarkedGraph& f) {
  // constrained vertices first, then neighbour-connected
  std::vector<int> order;
  std::vector<char> used(f.g.size(), 0);
  auto score = [&](int v) {
    int s = f.marks[v] == Mark::Full ? 2 : f.marks[v] == Mark::Semifull ? 1 : 0;
    return s * 100 + f.g.degree(v);
  };
  for (int round = 0; round < f.g.size(); ++round) {
    int best = -1;
    bool best_connected = false;
    for (int v = 0; v < f.g.size(); ++v) {
      if (used[v]) continue;
      bool connected = false;
      for (int w : f.g.neighbours(v))
        if (used[w]) connected = true;
      if (best == -1 || (connected && !best_connected) ||
          (connected == best_connected && score(v) > score(best))) {
        best = v;
        best_connected = connected;
      }
    }
    used[best] = 1;
    order.push_back(best);
  }
  return order;
}

}  // namespace

std::optional<std::vector<int>> embed(const MarkedGraph& f, const SimpleGraph& g) {
  if (f.g.size() > g.size()) return std::nullopt;
  EmbedSearch s{f, g, std::vector<int>(f.g.size(), -1),
                std::vector<int>(g.size(), -1)};
  if (s.extend(0, embed_order(f))) return s.map;
  return std::nullopt;
}

std::vector<std::vector<int>> all_embeddings(const MarkedGraph& f,
                                             const SimpleGraph& g,
                                             size_t limit) {
  std::vector<std::vector<int>> out;
  if (f.g.size() > g.size()) return out;
  EmbedSearch s{f, g, std::vector<int>(f.g.size(), -1),
                std::vector<int>(g.size(), -1)};
  s.sink = &out;
  s.limit = limit;
  s.extend(0, embed_order(f));
  if (out.size() >= limit)
    throw std::runtime_error("all_embeddings: budget exceeded");
  return out;
}

bool is_family_free(const std::vector<MarkedGraph>& family,
                    const SimpleGraph& g) {
  for (const auto& f : family)
    if (embed(f, g)) return false;
  return true;
}

bool marked_isomorphic(const MarkedGraph& a, const MarkedGraph& b) {
  if (a.g.size() != b.g.size() || a.g.edge_count() != b.g.edge_count())
    return false;
  {
    std::vector<std::pair<int, int>> da, db;
    for (int v = 0; v < a.g.size(); ++v)
      da.emplace_back(static_cast<int>(a.marks[v]), a.g.degree(v));
    for (int v = 0; v < b.g.size(); ++v)
      db.emplace_back(static_cast<int>(b.marks[v]), b.g.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
  }
  struct MIso {
    const MarkedGraph& a;
    const MarkedGraph& b;
    std::vector<int> map, rmap;
    bool extend(int k) {
      if (k == a.g.size()) return true;
      for (int vb = 0; vb < b.g.size(); ++vb) {
        if (rmap[vb] != -1) continue;
        if (a.marks[k] != b.marks[vb]) continue;
        if (a.g.degree(k) != b.g.degree(vb)) continue;
        bool ok = true;
        for (int w : a.g.neighbours(k))
          if (w < k && !b.g.has_edge(vb, map[w])) ok = false;
        for (int w = 0; w < k && ok; ++w)
          if (!a.g.has_edge(k, w) && b.g.has_edge(vb, map[w])) ok = false;
        if (!ok) continue;
        map[k] = vb;
        rmap[vb] = k;
        if (extend(k + 1)) return true;
        map[k] = -1;
        rmap[vb] = -1;
      }
      return false;
    }
  } s{a, b, std::vector<int>(a.g.size(), -1), std::vector<int>(b.g.size(), -1)};
  return s.extend(0);
}

namespace {

void dedup_marked(std::vector<MarkedGraph>& family) {
  std::vector<MarkedGraph> out;
  for (auto& f : family) {
    bool dup = false;
    for (const auto& h : out)
      if (marked_isomorphic(f, h)) dup = true;
    if (!dup) out.push_back(std::move(f));
  }
  family = std::move(out);
}

}  // namespace

std::vector<MarkedGraph> k_realisations(const GraphBall& tau, int k, int d,
                                        int size_cap) {
  if (k < 1) throw std::invalid_argument("k_realisations: k < 1");
  if (static_cast<long>(k) * tau.g.size() > size_cap)
    throw std::invalid_argument("k_realisations: cap exceeded");
  const int r = tau.radius;
  std::vector<MarkedGraph> out;

  for (int n = 1; n <= size_cap; ++n) {
    for (const SimpleGraph& g : all_graphs_up_to_iso(n, d)) {
      // choose k centres of type tau
      std::vector<int> centres;
      std::function<void(int)> choose = [&](int from) {
        if (static_cast<int>(centres.size()) == k) {
          // coverage and marks
          std::vector<int> best_dist(g.size(), r + 1);
          for (int c : centres) {
            const auto dist = bfs_distances(g, c);
            for (int v = 0; v < g.size(); ++v)
              if (dist[v] >= 0) best_dist[v] = std::min(best_dist[v], dist[v]);
          }
          for (int v = 0; v < g.size(); ++v)
            if (best_dist[v] > r) return;  // condition 2 fails
          MarkedGraph m{g, {}};
          m.marks.resize(g.size());
          for (int v = 0; v < g.size(); ++v)
            m.marks[v] = best_dist[v] < r ? Mark::Full : Mark::Semifull;
          out.push_back(std::move(m));
          return;
        }
        for (int c = from; c < g.size(); ++c) {
          if (!graph_balls_isomorphic(graph_ball(g, c, r), tau)) continue;
          centres.push_back(c);
          choose(c + 1);
          centres.pop_back();
        }
      };
      choose(0);
    }
  }
  dedup_marked(out);
  return out;
}

std::vector<MarkedGraph> union_family(const MarkedGraph& f1,
                                      const MarkedGraph& f2, int size_cap) {
  if (f1.g.size() + f2.g.size() > size_cap)
    throw std::invalid_argument("union_family: cap exceeded");
  std::vector<MarkedGraph> out;
  const int lo = std::max(f1.g.size(), f2.g.size());
  const int hi = f1.g.size() + f2.g.size();
  const int max_deg =
      std::max({1, f1.g.max_degree() + f2.g.max_degree(), f1.g.max_degree(),
                f2.g.max_degree()});
  for (int n = lo; n <= hi; ++n) {
    for (const SimpleGraph& g : all_graphs_up_to_iso(n, max_deg)) {
      std::vector<std::vector<int>> e1, e2;
      try {
        e1 = all_embeddings(f1, g);
        e2 = all_embeddings(f2, g);
      } catch (const std::runtime_error&) {
        throw std::invalid_argument("union_family: embedding budget");
      }
      for (const auto& a : e1)
        for (const auto& b : e2) {
          // condition 2: images cover the union
          std::vector<int> best(g.size(), 3);  // 3 = uncovered
          auto absorb = [&](const std::vector<int>& f, const MarkedGraph& m) {
            for (size_t v = 0; v < f.size(); ++v)
              best[f[v]] = std::min(best[f[v]], static_cast<int>(m.marks[v]));
          };
          absorb(a, f1);
          absorb(b, f2);
          bool covered = true;
          for (int v = 0; v < g.size(); ++v)
            if (best[v] == 3) covered = false;
          if (!covered) continue;
          MarkedGraph m{g, {}};
          m.marks.resize(g.size());
          for (int v = 0; v < g.size(); ++v)
            m.marks[v] = static_cast<Mark>(best[v]);
          out.push_back(std::move(m));
        }
    }
  }
  dedup_marked(out);
  return out;
}

std::vector<MarkedGraph> profile_to_gsf(
    const std::vector<GraphProfileEntry>& rho, int d, int size_cap) {
  std::vector<MarkedGraph> out;
  for (const auto& entry : rho) {
    if (entry.hi < 0) continue;  // [0, inf) forbids nothing
    auto realisations =
        k_realisations(entry.type, static_cast<int>(entry.hi) + 1, d, size_cap);
    out.insert(out.end(), realisations.begin(), realisations.end());
  }
  dedup_marked(out);
  return out;
}

bool covers(const std::vector<int>& b, const std::vector<MarkedGraph>& family,
            const SimpleGraph& g) {
  for (const auto& f : family)
    for (const auto& emb : all_embeddings(f, g)) {
      bool hit = false;
      for (int img : emb)
        if (std::find(b.begin(), b.end(), img) != b.end()) hit = true;
      if (!hit) return false;
    }
  return true;
}

MarkedGraph f_large_path(int k) {
  // path of length k+1 (k+2 vertices), degree-1 ends partial, rest full
  MarkedGraph m{SimpleGraph(k + 2), {}};
  for (int i = 0; i + 1 < k + 2; ++i) m.g.add_edge(i, i + 1);
  m.marks.assign(k + 2, Mark::Full);
  m.marks.front() = Mark::Partial;
  m.marks.back() = Mark::Partial;
  return m;
}

MarkedGraph f_ij(const std::vector<int>& paths_i,
                 const std::vector<int>& cycles_j, int k, bool with_large) {
  // k disjoint paths of length i (i+1 vertices) per i, k disjoint cycles of
  // length j (j vertices) per j, all marked full
  int total = 0;
  for (int i : paths_i) total += k * (i + 1);
  for (int j : cycles_j) total += k * j;
  const MarkedGraph big = with_large ? f_large_path(k) : MarkedGraph{};
  MarkedGraph m{SimpleGraph(total + (with_large ? big.g.size() : 0)), {}};
  m.marks.assign(m.g.size(), Mark::Full);
  int next = 0;
  for (int i : paths_i)
    for (int copy = 0; copy < k; ++copy) {
      for (int v = 0; v + 1 < i + 1; ++v) m.g.add_edge(next + v, next + v + 1);
      next += i + 1;
    }
  for (int j : cycles_j)
    for (int copy = 0; copy < k; ++copy) {
      for (int v = 0; v < j; ++v) m.g.add_edge(next + v, next + (v + 1) % j);
      next += j;
    }
  if (with_large) {
    for (int v = 0; v < big.g.size(); ++v) {
      m.marks[next + v] = big.marks[v];
      for (int w : big.g.neighbours(v))
        if (v < w) m.g.add_edge(next + v, next + w);
    }
  }
  return m;
}

Deg2Augmentation deg2_augment(
    const std::vector<MarkedGraph>& family, int k, int n,
    const std::function<bool(const MarkedGraph&)>& every_member_free) {
  Deg2Augmentation out;
  out.family = family;

  std::vector<MarkedGraph> candidates;
  candidates.push_back(f_large_path(k));
  // I subsets of {0..k-1} (path lengths), J subsets of {3..k} (cycle lengths)
  std::vector<int> paths_all(k);
  for (int i = 0; i < k; ++i) paths_all[i] = i;
  std::vector<int> cycles_all;
  for (int j = 3; j <= k; ++j) cycles_all.push_back(j);

  for (uint32_t pm = 0; pm < (1u << paths_all.size()); ++pm)
    for (uint32_t cm = 0; cm < (1u << cycles_all.size()); ++cm) {
      if (pm == 0 && cm == 0) continue;
      std::vector<int> ps, cs;
      for (size_t b = 0; b < paths_all.size(); ++b)
        if (pm >> b & 1) ps.push_back(paths_all[b]);
      for (size_t b = 0; b < cycles_all.size(); ++b)
        if (cm >> b & 1) cs.push_back(cycles_all[b]);
      candidates.push_back(f_ij(ps, cs, k, false));
      candidates.push_back(f_ij(ps, cs, k, true));
    }

  for (auto& cand : candidates)
    if (every_member_free(cand)) {
      out.added.push_back(cand);
      out.family.push_back(cand);
    }
  (void)n;
  return out;
}

std::function<bool(const MarkedGraph&)> deg2_membership_oracle(
    const std::vector<MarkedGraph>& family, int n) {
  // property members: degree-<=2 n-vertex graphs free of the family
  auto members = std::make_shared<std::vector<SimpleGraph>>();
  enumerate_deg2_graphs(n, [&](const SimpleGraph& g) {
    if (is_family_free(family, g)) members->push_back(g);
  });
  return [members](const MarkedGraph& f) {
    for (const auto& g : *members)
      if (embed(f, g)) return false;
    return true;
  };
}

double tau_eps(double eps, int k) {
  return std::min(1.0, 8.0 * k * k * k * eps);
}

MarkedGraph read_marked(std::istream& in) {
  std::string line, tag;
  MarkedGraph m;
  int n = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!(ls >> tag)) continue;
    if (tag == "---") break;
    if (tag == "marked") {
      if (!(ls >> n) || n < 0)
        throw std::runtime_error("marked load: bad header at line " +
                                 std::to_string(lineno));
      m.g = SimpleGraph(n);
      m.marks.assign(n, Mark::Partial);
    } else if (tag == "mark") {
      int v;
      std::string kind;
      if (n < 0 || !(ls >> v >> kind) || v < 0 || v >= n)
        throw std::runtime_error("marked load: bad mark at line " +
                                 std::to_string(lineno));
      if (kind == "full")
        m.marks[v] = Mark::Full;
      else if (kind == "semifull")
        m.marks[v] = Mark::Semifull;
      else if (kind == "partial")
        m.marks[v] = Mark::Partial;
      else
        throw std::runtime_error("marked load: unknown mark at line " +
                                 std::to_string(lineno));
    } else if (tag == "edge") {
      int u, v;
      if (n < 0 || !(ls >> u >> v) || u < 0 || v < 0 || u >= n || v >= n)
        throw std::runtime_error("marked load: bad edge at line " +
                                 std::to_string(lineno));
      m.g.add_edge(u, v);
    } else {
      throw std::runtime_error("marked load: unknown tag at line " +
                               std::to_string(lineno));
    }
  }
  if (n < 0) throw std::runtime_error("marked load: missing header");
  return m;
}

void write_marked(std::ostream& out, const MarkedGraph& m) {
  out << "marked " << m.g.size() << '\n';
  for (int v = 0; v < m.g.size(); ++v) {
    out << "mark " << v << ' ';
    switch (m.marks[v]) {
      case Mark::Full:
        out << "full";
        break;
      case Mark::Semifull:
        out << "semifull";
        break;
      case Mark::Partial:
        out << "partial";
        break;
    }
    out << '\n';
  }
  for (int v = 0; v < m.g.size(); ++v)
    for (int w : m.g.neighbours(v))
      if (v < w) out << "edge " << v << ' ' << w << '\n';
}

std::vector<MarkedGraph> read_family(std::istream& in) {
  std::vector<MarkedGraph> family;
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find("\n---", pos);
    std::string chunk = text.substr(pos, next == std::string::npos
                                             ? std::string::npos
                                             : next - pos);
    bool blank = true;
    for (char c : chunk)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) {
      std::istringstream ss(chunk);
      family.push_back(read_marked(ss));
    }
    if (next == std::string::npos) break;
    pos = text.find('\n', next + 1);
    if (pos == std::string::npos) break;
    ++pos;
  }
  return family;
}

void write_family(std::ostream& out, const std::vector<MarkedGraph>& family) {
  for (size_t i = 0; i < family.size(); ++i) {
    if (i) out << "---\n";
    write_marked(out, family[i]);
  }
}

}  // namespace zz
