#include "zz/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>

namespace zz {

namespace {

const std::vector<std::pair<int, int>> kH1Chords{{0, 3}, {1, 4}, {2, 5}};
const std::vector<std::pair<int, int>> kH2Chords{{0, 5}, {1, 3}, {2, 4}};
const std::vector<std::pair<int, int>> kH3Chords{
    {0, 9}, {1, 3}, {2, 4}, {5, 7}, {6, 8}};
const std::vector<std::pair<int, int>> kH4Chords{{0, 3}, {1, 4}, {2, 4}};

}  // namespace

int block_size(BlockKind kind) {
  switch (kind) {
    case BlockKind::H1:
    case BlockKind::H2:
      return 6;
    case BlockKind::H3:
      return 10;
    case BlockKind::H4:
      return 5;
  }
  return 0;
}

const std::vector<std::pair<int, int>>& block_chords(BlockKind kind) {
  switch (kind) {
    case BlockKind::H1:
      return kH1Chords;
    case BlockKind::H2:
      return kH2Chords;
    case BlockKind::H3:
      return kH3Chords;
    case BlockKind::H4:
      return kH4Chords;
  }
  return kH1Chords;
}

SimpleGraph block(BlockKind kind) {
  const int n = block_size(kind);
  SimpleGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  for (auto [a, b] : block_chords(kind)) g.add_edge(a, b);
  return g;
}

namespace {

// gadget chord lists in 1-based chain positions
std::vector<std::pair<int, int>> single_chain_chords(int ell, int h2_slot) {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < ell; ++s)
    for (auto [a, b] : block_chords(s == h2_slot ? BlockKind::H2 : BlockKind::H1))
      out.emplace_back(6 * s + 1 + a, 6 * s + 1 + b);
  for (auto [a, b] : kH4Chords)
    out.emplace_back(6 * ell + 1 + a, 6 * ell + 1 + b);
  return out;
}

std::vector<std::pair<int, int>> arrow_chain_chords(int ell, int k) {
  // H2 sits in slot k (slot 0 is always an H1 since 1 <= k <= ell)
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < 2 * ell; ++s)
    for (auto [a, b] : block_chords(s == k ? BlockKind::H2 : BlockKind::H1))
      out.emplace_back(6 * s + 1 + a, 6 * s + 1 + b);
  for (auto [a, b] : kH3Chords)
    out.emplace_back(12 * ell + 1 + a, 12 * ell + 1 + b);
  return out;
}

SimpleGraph gadget_from_chords(int n,
                               const std::vector<std::pair<int, int>>& chords) {
  SimpleGraph g(n);
  for (int p = 1; p < n; ++p) g.add_edge(p - 1, p);
  for (auto [a, b] : chords) g.add_edge(a - 1, b - 1);
  return g;
}

}  // namespace

SimpleGraph arrow_gadget(int k, int ell) {
  if (k < 1 || k > ell) throw std::invalid_argument("arrow_gadget: k out of range");
  return gadget_from_chords(12 * ell + 10, arrow_chain_chords(ell, k));
}

SimpleGraph loop_gadget(int k, int ell) {
  if (k < 1 || k > ell) throw std::invalid_argument("loop_gadget: k out of range");
  return gadget_from_chords(6 * ell + 5, single_chain_chords(ell, k - 1));
}

SimpleGraph nonarrow_gadget(int ell) {
  return gadget_from_chords(6 * ell + 5, single_chain_chords(ell, -1));
}

StructureOracle::StructureOracle(const Structure& a) : a_(&a) {
  slots_.resize(a.size());
  for (int rel = 0; rel < a.sig().size(); ++rel) {
    const auto& ts = a.tuples(rel);
    for (size_t k = 0; k < ts.size(); ++k)
      for (size_t p = 0; p < ts[k].size(); ++p) {
        bool dup = false;
        for (size_t q = 0; q < p; ++q)
          if (ts[k][q] == ts[k][p]) dup = true;
        if (!dup) slots_[ts[k][p]].emplace_back(rel, static_cast<int>(k));
      }
  }
}

std::optional<StructureOracle::Answer> StructureOracle::ans(int a, int i) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  if (a < 0 || a >= size() || i < 1)
    throw std::invalid_argument("oracle: malformed query");
  if (i > degree(a)) return std::nullopt;
  const auto [rel, idx] = slots_[a][i - 1];
  return Answer{rel, a_->tuples(rel)[idx]};
}

long reduced_vertex_count(int n_elements, int d, int ell) {
  return static_cast<long>(n_elements) * d * (6L * ell + 6);
}

long uid(int a, int i, int d, int ell) {
  return static_cast<long>(a) * d * (6L * ell + 6) + (i - 1);
}

long vid(int a, int i, int m, int d, int ell) {
  return static_cast<long>(a) * d * (6L * ell + 6) + d +
         static_cast<long>(i - 1) * (6L * ell + 5) + (m - 1);
}

namespace {

struct ArrowSide {
  int elem, slot;  // source side first
};

// arrow position (1..12*ell+10) -> global vertex id
long arrow_vertex(const ArrowSide& src, const ArrowSide& dst, int p, int d,
                  int ell) {
  const int half = 6 * ell + 5;
  if (p <= half) return vid(src.elem, src.slot, p, d, ell);
  return vid(dst.elem, dst.slot, 2 * half + 1 - p, d, ell);
}

}  // namespace

ReducedGraph reduce(const Structure& a, int d, long vertex_cap) {
  const int ell = a.sig().size();
  for (int r = 0; r < ell; ++r)
    if (a.sig().rel(r).arity != 2)
      throw std::invalid_argument("reduce: signature must be binary");
  if (d < 12) throw std::invalid_argument("reduce: d must be at least 12");
  if (a.max_degree() > d)
    throw std::invalid_argument("reduce: structure degree exceeds d");
  const long total = reduced_vertex_count(a.size(), d, ell);
  if (total > vertex_cap)
    throw std::invalid_argument("reduce: vertex cap exceeded");

  StructureOracle oracle(a);
  ReducedGraph out;
  out.d = d;
  out.ell = ell;
  out.n_elements = a.size();
  out.graph = SimpleGraph(static_cast<int>(total));
  SimpleGraph& g = out.graph;

  auto add = [&](long u, long v) {
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  };

  for (int e = 0; e < a.size(); ++e) {
    out.element_cycles.emplace_back();
    for (int i = 1; i <= d; ++i) {
      out.element_cycles.back().push_back(static_cast<int>(uid(e, i, d, ell)));
      add(uid(e, i, d, ell), uid(e, i % d + 1, d, ell));
      add(uid(e, i, d, ell), vid(e, i, 1, d, ell));
    }
  }

  const int half = 6 * ell + 5;
  for (int e = 0; e < a.size(); ++e) {
    for (int i = 1; i <= d; ++i) {
      const auto answer = oracle.ans(e, i);
      if (!answer) {  // bottom: non-arrow
        for (int p = 1; p < half; ++p)
          add(vid(e, i, p, d, ell), vid(e, i, p + 1, d, ell));
        for (auto [p, q] : single_chain_chords(ell, -1))
          add(vid(e, i, p, d, ell), vid(e, i, q, d, ell));
        continue;
      }
      const int k = answer->rel + 1;  // 1-based relation index
      const Tuple& t = answer->tuple;
      if (t[0] == e && t[1] == e) {  // k-loop
        for (int p = 1; p < half; ++p)
          add(vid(e, i, p, d, ell), vid(e, i, p + 1, d, ell));
        for (auto [p, q] : single_chain_chords(ell, k - 1))
          add(vid(e, i, p, d, ell), vid(e, i, q, d, ell));
        continue;
      }
      if (t[0] != e) continue;  // target side; the source emits the arrow
      const int b = t[1];
      int j = -1;  // partner slot at b answering the same tuple
      for (int jj = 1; jj <= oracle.degree(b); ++jj) {
        const auto pa = oracle.ans(b, jj);
        if (pa && pa->rel == answer->rel && pa->tuple == t) {
          j = jj;
          break;
        }
      }
      if (j < 0) throw std::logic_error("reduce: partner slot not found");
      const ArrowSide src{e, i}, dst{b, j};
      for (int p = 1; p < 2 * half; ++p)
        add(arrow_vertex(src, dst, p, d, ell),
            arrow_vertex(src, dst, p + 1, d, ell));
      for (auto [p, q] : arrow_chain_chords(ell, k))
        add(arrow_vertex(src, dst, p, d, ell),
            arrow_vertex(src, dst, q, d, ell));
    }
  }

  for (int v = 0; v < g.size(); ++v)
    if (g.degree(v) != 3)
      throw std::logic_error("reduce: graph is not 3-regular");
  return out;
}

long QuerySimulator::query(long vertex, int slot) const {
  if (slot < 1 || slot > 3)
    throw std::invalid_argument("simulate_query: slot out of range");
  const int d_ = d, ell_ = ell;
  const long elem_block = static_cast<long>(d_) * (6L * ell_ + 6);
  const int a = static_cast<int>(vertex / elem_block);
  const long r = vertex % elem_block;
  const long before = oracle.queries();
  std::vector<long> nb;

  if (r < d_) {  // element-cycle vertex; answered without querying A
    const int i = static_cast<int>(r) + 1;
    nb = {uid(a, (i + d_ - 2) % d_ + 1, d_, ell_), uid(a, i % d_ + 1, d_, ell_),
          vid(a, i, 1, d_, ell_)};
  } else {
    const long rr = r - d_;
    const int half = 6 * ell_ + 5;
    const int i = static_cast<int>(rr / half) + 1;
    const int m = static_cast<int>(rr % half) + 1;
    const auto answer = oracle.ans(a, i);

    auto single_chain = [&](int h2_slot) {
      if (m > 1) nb.push_back(vid(a, i, m - 1, d_, ell_));
      if (m < half) nb.push_back(vid(a, i, m + 1, d_, ell_));
      if (m == 1) nb.push_back(uid(a, i, d_, ell_));
      for (auto [p, q] : single_chain_chords(ell_, h2_slot)) {
        if (p == m) nb.push_back(vid(a, i, q, d_, ell_));
        if (q == m) nb.push_back(vid(a, i, p, d_, ell_));
      }
    };

    if (!answer) {
      single_chain(-1);
    } else if (answer->tuple[0] == a && answer->tuple[1] == a) {
      single_chain(answer->rel);  // h2 slot = k - 1 = rel index
    } else {
      // arrow: locate the partner slot with at most d further queries
      const bool source = answer->tuple[0] == a;
      const int b = source ? answer->tuple[1] : answer->tuple[0];
      int j = -1;
      for (int jj = 1; jj <= d_; ++jj) {
        const auto pa = oracle.ans(b, jj);
        if (pa && pa->rel == answer->rel && pa->tuple == answer->tuple) {
          j = jj;
          break;
        }
      }
      if (j < 0) throw std::logic_error("simulate_query: partner not found");
      const ArrowSide src = source ? ArrowSide{a, i} : ArrowSide{b, j};
      const ArrowSide dst = source ? ArrowSide{b, j} : ArrowSide{a, i};
      const int p = source ? m : 2 * half + 1 - m;
      if (p > 1) nb.push_back(arrow_vertex(src, dst, p - 1, d_, ell_));
      if (p < 2 * half) nb.push_back(arrow_vertex(src, dst, p + 1, d_, ell_));
      if (m == 1) nb.push_back(uid(a, i, d_, ell_));
      const int k = answer->rel + 1;
      for (auto [pp, qq] : arrow_chain_chords(ell_, k)) {
        if (pp == p) nb.push_back(arrow_vertex(src, dst, qq, d_, ell_));
        if (qq == p) nb.push_back(arrow_vertex(src, dst, pp, d_, ell_));
      }
    }
  }

  last_cost_ = oracle.queries() - before;
  if (last_cost_ > d_ + 1)
    throw std::logic_error("simulate_query: budget d+1 exceeded");
  std::sort(nb.begin(), nb.end());
  if (nb.size() != 3)
    throw std::logic_error("simulate_query: degree mismatch");
  return nb[slot - 1];
}

namespace {

// an edge lies inside a gadget block iff it sits on a cycle of length <= 10
struct ShortCycleScan {
  const SimpleGraph& g;
  std::vector<int> stamp, dist, queue;
  int epoch = 0;

  explicit ShortCycleScan(const SimpleGraph& graph)
      : g(graph), stamp(graph.size(), -1), dist(graph.size(), 0) {
    queue.reserve(1024);
  }

  bool run(int u, int v) {
    ++epoch;
    queue.clear();
    queue.push_back(u);
    stamp[u] = epoch;
    dist[u] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      if (dist[x] >= 9) continue;
      for (int w : g.neighbours(x)) {
        if (x == u && w == v) continue;
        if (stamp[w] == epoch) continue;
        if (w == v) return true;
        stamp[w] = epoch;
        dist[w] = dist[x] + 1;
        queue.push_back(w);
      }
    }
    return false;
  }
};

struct ChainRecord {
  int kind = 0;              // 0 bottom, 1 loop, 2 arrow-source, 3 arrow-target
  int k = 0;                 // relation index for loops/arrow sources
  long partner_vertex = -1;  // element vertex at the far end (arrows)
};

struct DecodeInternal {
  DecodeResult result;
  std::vector<int> cycle_of;         // vertex -> element id or -1
  std::vector<char> element_vertex;  // alpha
  std::vector<char> chain_head;      // v^1 vertices
  std::map<long, ChainRecord> chains;  // keyed by element vertex id
};

struct BlockComp {
  std::vector<int> vertices;
  BlockKind kind = BlockKind::H1;
  std::vector<int> endpoints;  // in-component degree 2
};

DecodeInternal decode_internal(const SimpleGraph& g) {
  DecodeInternal out;
  const int n = g.size();
  if (n == 0) {
    out.result.structure = Structure(Signature(std::vector<RelationDecl>{}), 0);
    return out;
  }
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != 3) throw ReduceShapeError(v, "vertex degree is not 3");

  std::vector<std::vector<char>> short_edge(n);
  for (int v = 0; v < n; ++v) short_edge[v].assign(g.neighbours(v).size(), 0);
  ShortCycleScan scan(g);
  for (int v = 0; v < n; ++v)
    for (size_t idx = 0; idx < g.neighbours(v).size(); ++idx) {
      const int w = g.neighbours(v)[idx];
      if (w < v) continue;
      if (scan.run(v, w)) {
        short_edge[v][idx] = 1;
        const auto& wn = g.neighbours(w);
        const size_t widx =
            std::lower_bound(wn.begin(), wn.end(), v) - wn.begin();
        short_edge[w][widx] = 1;
      }
    }

  std::vector<int> comp_of(n, -1);
  std::vector<BlockComp> comps;
  for (int s = 0; s < n; ++s) {
    bool has_block_edge = false;
    for (size_t idx = 0; idx < g.neighbours(s).size(); ++idx)
      if (short_edge[s][idx]) has_block_edge = true;
    if (!has_block_edge || comp_of[s] != -1) continue;
    BlockComp bc;
    std::vector<int> stack{s};
    comp_of[s] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      bc.vertices.push_back(v);
      for (size_t idx = 0; idx < g.neighbours(v).size(); ++idx) {
        if (!short_edge[v][idx]) continue;
        const int w = g.neighbours(v)[idx];
        if (comp_of[w] == -1) {
          comp_of[w] = comp_of[s];
          stack.push_back(w);
        }
      }
    }
    comps.push_back(std::move(bc));
  }

  for (auto& bc : comps) {
    std::sort(bc.vertices.begin(), bc.vertices.end());
    std::map<int, int> indeg;
    bool triangle = false;
    SimpleGraph local(static_cast<int>(bc.vertices.size()));
    auto lidx = [&](int v) {
      return static_cast<int>(std::lower_bound(bc.vertices.begin(),
                                               bc.vertices.end(), v) -
                              bc.vertices.begin());
    };
    for (int v : bc.vertices)
      for (size_t idx = 0; idx < g.neighbours(v).size(); ++idx) {
        const int w = g.neighbours(v)[idx];
        if (!short_edge[v][std::lower_bound(g.neighbours(v).begin(),
                                            g.neighbours(v).end(), w) -
                           g.neighbours(v).begin()])
          continue;
        indeg[v]++;
        if (v < w) local.add_edge(lidx(v), lidx(w));
      }
    for (int v = 0; v < local.size(); ++v)
      for (int w : local.neighbours(v))
        for (int x : local.neighbours(w))
          if (x != v && local.has_edge(v, x)) triangle = true;

    const size_t sz = bc.vertices.size();
    if (sz == 5)
      bc.kind = BlockKind::H4;
    else if (sz == 10)
      bc.kind = BlockKind::H3;
    else if (sz == 6)
      bc.kind = triangle ? BlockKind::H2 : BlockKind::H1;
    else
      throw ReduceShapeError(bc.vertices.front(), "unrecognised block size");
    if (!graphs_isomorphic(local, block(bc.kind)))
      throw ReduceShapeError(bc.vertices.front(), "block pattern mismatch");
    for (int v : bc.vertices)
      if (indeg[v] == 2) bc.endpoints.push_back(v);
    const size_t want = bc.kind == BlockKind::H4 ? 1 : 2;
    if (bc.endpoints.size() != want)
      throw ReduceShapeError(bc.vertices.front(), "bad block endpoints");
  }

  out.cycle_of.assign(n, -1);
  out.element_vertex.assign(n, 0);
  out.chain_head.assign(n, 0);
  for (int v = 0; v < n; ++v) out.element_vertex[v] = comp_of[v] == -1;

  std::vector<std::vector<int>> cycles;
  for (int s = 0; s < n; ++s) {
    if (!out.element_vertex[s] || out.cycle_of[s] != -1) continue;
    std::vector<int> cyc;
    int cur = s;
    while (cur != -1) {
      out.cycle_of[cur] = static_cast<int>(cycles.size());
      cyc.push_back(cur);
      int elem_nb = 0, next = -1;
      for (int w : g.neighbours(cur)) {
        if (!out.element_vertex[w]) continue;
        ++elem_nb;
        if (out.cycle_of[w] == -1 && next == -1) next = w;  // smallest first
      }
      if (elem_nb != 2)
        throw ReduceShapeError(cur, "element vertex not on a plain cycle");
      cur = next;
    }
    if (cyc.size() < 3 || !g.has_edge(cyc.front(), cyc.back()))
      throw ReduceShapeError(s, "element cycle does not close");
    cycles.push_back(std::move(cyc));
  }
  if (cycles.empty()) throw ReduceShapeError(0, "no element cycles");
  const int d = static_cast<int>(cycles[0].size());
  for (const auto& c : cycles)
    if (static_cast<int>(c.size()) != d)
      throw ReduceShapeError(c.front(), "element cycles of unequal length");
  if (d < 12) throw ReduceShapeError(cycles[0][0], "cycle length below 12");

  struct Walk {
    std::vector<BlockKind> blocks;
    long landing = -1;  // element vertex reached through the far end
  };
  auto walk_chain = [&](int u) {
    Walk w;
    int head = -1;
    for (int x : g.neighbours(u))
      if (!out.element_vertex[x]) head = x;
    if (head == -1) throw ReduceShapeError(u, "element vertex without chain");
    out.chain_head[head] = 1;
    int entry = head;
    while (true) {
      const BlockComp& bc = comps[comp_of[entry]];
      w.blocks.push_back(bc.kind);
      if (bc.kind == BlockKind::H4) break;
      if (std::find(bc.endpoints.begin(), bc.endpoints.end(), entry) ==
          bc.endpoints.end())
        throw ReduceShapeError(entry, "chain enters a block off-endpoint");
      const int exit =
          bc.endpoints[0] == entry ? bc.endpoints[1] : bc.endpoints[0];
      int ext = -1;
      for (int x : g.neighbours(exit))
        if (out.element_vertex[x] || comp_of[x] != comp_of[exit]) ext = x;
      if (ext == -1) throw ReduceShapeError(exit, "block exit has no bridge");
      if (out.element_vertex[ext]) {
        w.landing = ext;
        break;
      }
      entry = ext;
    }
    return w;
  };

  int ell = -1;
  auto check_ell = [&](int value, int witness) {
    if (ell == -1) ell = value;
    if (ell != value || value < 1)
      throw ReduceShapeError(witness, "inconsistent relation count");
  };

  for (const auto& cyc : cycles)
    for (int u : cyc) {
      const Walk w = walk_chain(u);
      ChainRecord rec;
      int h2_at = -1, h2_count = 0;
      for (size_t p = 0; p < w.blocks.size(); ++p)
        if (w.blocks[p] == BlockKind::H2) {
          h2_at = static_cast<int>(p);
          ++h2_count;
        }
      const int six_blocks = static_cast<int>(w.blocks.size()) - 1;
      if (w.blocks.back() == BlockKind::H4) {
        check_ell(six_blocks, u);
        if (h2_count == 0) {
          rec.kind = 0;
        } else if (h2_count == 1) {
          rec.kind = 1;
          rec.k = h2_at + 1;  // loop's H2 sits in slot k-1
        } else {
          throw ReduceShapeError(u, "several H2 blocks in one chain");
        }
      } else if (w.blocks.back() == BlockKind::H3 &&
                 w.blocks.front() != BlockKind::H3 && w.landing >= 0) {
        check_ell(six_blocks % 2 == 0 ? six_blocks / 2 : -1, u);
        if (h2_count != 1 || h2_at < 1 || h2_at > ell)
          throw ReduceShapeError(u, "arrow without a valid H2 slot");
        rec.kind = 2;
        rec.k = h2_at;  // arrow's H2 sits in slot k
        rec.partner_vertex = w.landing;
      } else if (w.blocks.front() == BlockKind::H3 && w.landing >= 0) {
        rec.kind = 3;  // target side; the source walk records the tuple
        check_ell(six_blocks % 2 == 0 ? six_blocks / 2 : -1, u);
      } else {
        throw ReduceShapeError(u, "unrecognised chain shape");
      }
      if (rec.kind == 3) rec.partner_vertex = w.landing;
      out.chains[u] = rec;
    }

  std::vector<RelationDecl> rels;
  for (int k = 1; k <= ell; ++k) rels.push_back({"R" + std::to_string(k), 2});
  Structure s(Signature(std::move(rels)), static_cast<int>(cycles.size()));
  for (const auto& [u, rec] : out.chains) {
    if (rec.kind == 1)
      s.add_tuple(rec.k - 1,
                  {out.cycle_of[static_cast<int>(u)], out.cycle_of[static_cast<int>(u)]});
    if (rec.kind == 2)
      s.add_tuple(rec.k - 1,
                  {out.cycle_of[static_cast<int>(u)],
                   out.cycle_of[static_cast<int>(rec.partner_vertex)]});
  }

  for (const auto& [u, rec] : out.chains) {
    if (rec.kind != 2) continue;
    const auto it = out.chains.find(rec.partner_vertex);
    if (it == out.chains.end() || it->second.kind != 3 ||
        it->second.partner_vertex != u)
      throw ReduceShapeError(u, "arrow endpoints do not pair up");
  }

  const long expect =
      reduced_vertex_count(static_cast<int>(cycles.size()), d, ell);
  if (expect != n) throw ReduceShapeError(0, "vertex count mismatch");

  out.result.structure = std::move(s);
  out.result.d = d;
  out.result.ell = ell;
  out.result.element_cycles = std::move(cycles);
  return out;
}

}  // namespace

DecodeResult decode(const SimpleGraph& g) { return decode_internal(g).result; }

ReducedShape::ReducedShape(const SimpleGraph& g) {
  DecodeInternal in = decode_internal(g);
  dec_ = std::move(in.result);
  cycle_of_ = std::move(in.cycle_of);
  is_endpoint_ = std::move(in.chain_head);
  slot_info_.assign(dec_.structure.size(), {});
  slot_of_.assign(std::max(1, g.size()), -1);
  for (int e = 0; e < dec_.structure.size(); ++e) {
    const auto& cyc = dec_.element_cycles[e];
    slot_info_[e].resize(cyc.size());
    for (size_t i = 0; i < cyc.size(); ++i) {
      slot_of_[cyc[i]] = static_cast<int>(i);
      const auto& rec = in.chains.at(cyc[i]);
      slot_info_[e][i] =
          SlotInfo{rec.kind, rec.k,
                   rec.partner_vertex >= 0 ? static_cast<int>(rec.partner_vertex)
                                           : -1};
    }
  }
}

bool ReducedShape::alpha(long v) const { return cycle_of_[v] != -1; }

bool ReducedShape::beta(long u, long v) const {
  return cycle_of_[u] != -1 && cycle_of_[u] == cycle_of_[v];
}

bool ReducedShape::gamma(long v) const {
  return cycle_of_[v] == -1 && !is_endpoint_[v];
}

bool ReducedShape::delta_arrow(int k, long u, long v) const {
  if (cycle_of_[u] == -1 || cycle_of_[v] == -1 || u == v) return false;
  const SlotInfo& si = slot_info_[cycle_of_[u]][slot_of_[u]];
  return si.kind == 2 && si.k == k && si.partner == static_cast<int>(v);
}

bool ReducedShape::delta_loop(int k, long u) const {
  if (cycle_of_[u] == -1) return false;
  const SlotInfo& si = slot_info_[cycle_of_[u]][slot_of_[u]];
  return si.kind == 1 && si.k == k;
}

int ell_prime(int ell, int d) { return 24 * ell + 18 + d; }

std::vector<NeighbourhoodProfile> rho_hat_builder(
    const std::vector<const ReducedGraph*>& reduced, TypeRegistry& reg,
    long ball_cap) {
  if (reduced.empty()) throw std::invalid_argument("rho_hat_builder: no input");
  const int d = reduced.front()->d, ell = reduced.front()->ell;
  for (const auto* r : reduced)
    if (r->d != d || r->ell != ell)
      throw std::invalid_argument("rho_hat_builder: mixed parameters");
  const int lp = ell_prime(ell, d);
  if (reg.radius() != lp)
    throw std::invalid_argument("rho_hat_builder: registry radius != ell'");

  std::map<int, std::set<int>> observed_by_root;
  for (const auto* r : reduced) {
    if (static_cast<long>(r->graph.size()) > ball_cap)
      throw std::invalid_argument("rho_hat_builder: ball cap exceeded");
    const int root_vertex = r->element_cycles.at(0).at(0);
    const int root_type =
        reg.classify(graph_ball_as_ball(graph_ball(r->graph, root_vertex, lp)));
    auto& obs = observed_by_root[root_type];
    for (int v = 0; v < r->graph.size(); ++v)
      obs.insert(reg.classify(graph_ball_as_ball(graph_ball(r->graph, v, lp))));
  }

  std::vector<NeighbourhoodProfile> out;
  for (const auto& [root_type, observed] : observed_by_root) {
    NeighbourhoodProfile rho;
    rho.radius = lp;
    rho.def = Interval{0, 0};
    rho.intervals.assign(reg.size(), Interval{0, 0});
    for (int t : observed) rho.intervals[t] = Interval{0, -1};
    rho.intervals[root_type] = Interval{0, 1};
    out.push_back(std::move(rho));
  }
  return out;
}

void write_correspondence(std::ostream& out, const ReducedGraph& r) {
  for (int e = 0; e < r.n_elements; ++e) {
    out << "elem " << e << " cycle";
    for (int v : r.element_cycles[e]) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace zz
