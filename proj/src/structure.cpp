#include "zz/structure.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace zz {

Signature::Signature(std::vector<RelationDecl> rels) : rels_(std::move(rels)) {
  for (size_t i = 0; i < rels_.size(); ++i) {
    if (rels_[i].arity < 1 || rels_[i].arity > 4)
      throw std::invalid_argument("signature: arity out of range");
    for (size_t j = i + 1; j < rels_.size(); ++j)
      if (rels_[i].name == rels_[j].name)
        throw std::invalid_argument("signature: duplicate relation name");
  }
}

int Signature::index_of(const std::string& name) const {
  for (size_t i = 0; i < rels_.size(); ++i)
    if (rels_[i].name == name) return static_cast<int>(i);
  return -1;
}

Structure::Structure(Signature sig, int n)
    : sig_(std::move(sig)), n_(n), tuples_(sig_.size()) {
  if (n < 0) throw std::invalid_argument("structure: negative universe");
}

void Structure::add_tuple(int rel, Tuple t) {
  if (static_cast<int>(t.size()) != sig_.rel(rel).arity)
    throw std::invalid_argument("add_tuple: arity mismatch");
  for (int e : t)
    if (e < 0 || e >= n_) throw std::invalid_argument("add_tuple: out of range");
  auto& v = tuples_[rel];
  auto it = std::lower_bound(v.begin(), v.end(), t);
  if (it == v.end() || *it != t) v.insert(it, std::move(t));
}

void Structure::remove_tuple(int rel, const Tuple& t) {
  auto& v = tuples_[rel];
  auto it = std::lower_bound(v.begin(), v.end(), t);
  if (it != v.end() && *it == t) v.erase(it);
}

bool Structure::has_tuple(int rel, const Tuple& t) const {
  const auto& v = tuples_[rel];
  return std::binary_search(v.begin(), v.end(), t);
}

long Structure::tuple_count() const {
  long s = 0;
  for (const auto& v : tuples_) s += static_cast<long>(v.size());
  return s;
}

int Structure::degree(int a) const {
  int d = 0;
  for (const auto& v : tuples_)
    for (const auto& t : v)
      if (std::find(t.begin(), t.end(), a) != t.end()) ++d;
  return d;
}

int Structure::max_degree() const {
  std::vector<int> deg(n_, 0);
  for (const auto& v : tuples_)
    for (const auto& t : v) {
      // count each tuple once per element it contains
      for (size_t i = 0; i < t.size(); ++i) {
        bool dup = false;
        for (size_t j = 0; j < i; ++j)
          if (t[j] == t[i]) dup = true;
        if (!dup) deg[t[i]]++;
      }
    }
  int m = 0;
  for (int d : deg) m = std::max(m, d);
  return m;
}

SimpleGraph gaifman(const Structure& a) {
  SimpleGraph g(a.size());
  for (int r = 0; r < a.sig().size(); ++r)
    for (const auto& t : a.tuples(r))
      for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
          if (t[i] != t[j]) g.add_edge(t[i], t[j]);
  return g;
}

StructureIndex build_index(const Structure& a) {
  StructureIndex idx;
  idx.gaifman = gaifman(a);
  idx.incident.resize(a.size());
  for (int rel = 0; rel < a.sig().size(); ++rel) {
    const auto& ts = a.tuples(rel);
    for (size_t k = 0; k < ts.size(); ++k) {
      const auto& t = ts[k];
      for (size_t i = 0; i < t.size(); ++i) {
        bool dup = false;
        for (size_t j = 0; j < i; ++j)
          if (t[j] == t[i]) dup = true;
        if (!dup) idx.incident[t[i]].emplace_back(rel, static_cast<int>(k));
      }
    }
  }
  return idx;
}

Ball r_ball_indexed(const Structure& a, const StructureIndex& sidx, int center,
                    int r) {
  if (center < 0 || center >= a.size())
    throw std::invalid_argument("r_ball: centre out of range");
  // bounded BFS on the gaifman graph
  Ball ball;
  ball.radius = r;
  std::vector<int> idx(a.size(), -1);
  std::vector<std::pair<int, int>> frontier{{center, 0}};
  idx[center] = 0;
  ball.elements.push_back(center);
  for (size_t head = 0; head < frontier.size(); ++head) {
    auto [v, dv] = frontier[head];
    if (dv == r) continue;
    for (int w : sidx.gaifman.neighbours(v))
      if (idx[w] == -1) {
        idx[w] = static_cast<int>(ball.elements.size());
        ball.elements.push_back(w);
        frontier.emplace_back(w, dv + 1);
      }
  }
  ball.str = Structure(a.sig(), static_cast<int>(ball.elements.size()));
  for (int v : ball.elements)
    for (auto [rel, k] : sidx.incident[v]) {
      const auto& t = a.tuples(rel)[k];
      Tuple mapped(t.size());
      bool inside = true;
      for (size_t i = 0; i < t.size(); ++i) {
        if (idx[t[i]] == -1) {
          inside = false;
          break;
        }
        mapped[i] = idx[t[i]];
      }
      if (inside) ball.str.add_tuple(rel, std::move(mapped));
    }
  ball.center = 0;
  return ball;
}

Ball r_ball(const Structure& a, int center, int r) {
  return r_ball_indexed(a, build_index(a), center, r);
}

namespace {

// per-element invariant: distance-to-root, gaifman degree and local triangle
// count, per-relation and per-position incidence counts; rigid enough to
// prune registry scans even on degree-regular graphs
std::vector<std::vector<long>> element_invariants(const Structure& a, int root) {
  const SimpleGraph g = gaifman(a);
  const std::vector<int> dist = bfs_distances(g, root);
  std::vector<std::vector<long>> inv(a.size());
  for (int v = 0; v < a.size(); ++v) {
    long triangles = 0;
    const auto& nb = g.neighbours(v);
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j)
        if (g.has_edge(nb[i], nb[j])) ++triangles;
    inv[v] = {dist[v], g.degree(v), triangles, a.degree(v)};
  }
  for (int rel = 0; rel < a.sig().size(); ++rel) {
    const int ar = a.sig().rel(rel).arity;
    std::vector<std::vector<long>> counts(a.size(), std::vector<long>(ar, 0));
    for (const auto& t : a.tuples(rel))
      for (int p = 0; p < ar; ++p) counts[t[p]][p]++;
    for (int v = 0; v < a.size(); ++v)
      inv[v].insert(inv[v].end(), counts[v].begin(), counts[v].end());
  }
  return inv;
}

struct StructIso {
  const Structure& a;
  const Structure& b;
  const std::vector<long>& ia;  // refined colours, jointly numbered
  const std::vector<long>& ib;
  SimpleGraph ga, gb;
  std::vector<int> map, rmap;

  bool feasible(int va, int vb) const {
    if (ia[va] != ib[vb]) return false;
    for (int w : ga.neighbours(va))
      if (map[w] != -1 && !gb.has_edge(vb, map[w])) return false;
    for (int w : gb.neighbours(vb))
      if (rmap[w] != -1 && !ga.has_edge(va, rmap[w])) return false;
    return true;
  }

  bool tuples_match() const {
    for (int rel = 0; rel < a.sig().size(); ++rel) {
      if (a.tuples(rel).size() != b.tuples(rel).size()) return false;
      for (const auto& t : a.tuples(rel)) {
        Tuple m(t.size());
        for (size_t i = 0; i < t.size(); ++i) m[i] = map[t[i]];
        if (!b.has_tuple(rel, m)) return false;
      }
    }
    return true;
  }

  bool extend(size_t k, const std::vector<int>& order) {
    if (k == order.size()) return tuples_match();
    const int va = order[k];
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

std::vector<long> ball_key(const Ball& b) {
  std::vector<long> key{b.str.size()};
  for (int rel = 0; rel < b.str.sig().size(); ++rel)
    key.push_back(static_cast<long>(b.str.tuples(rel).size()));
  auto inv = element_invariants(b.str, b.center);
  key.insert(key.end(), inv[b.center].begin(), inv[b.center].end());
  std::sort(inv.begin(), inv.end());
  for (const auto& i : inv) key.insert(key.end(), i.begin(), i.end());
  return key;
}

// Joint colour refinement (1-WL over the gaifman graphs, seeded with the
// structural invariants). Colours are comparable across the two structures;
// returns false when the colour histograms already split them apart.
bool refine_joint_colours(const Structure& a, int root_a, const Structure& b,
                          int root_b, std::vector<long>& ca,
                          std::vector<long>& cb) {
  const SimpleGraph ga = gaifman(a), gb = gaifman(b);
  const auto ia = element_invariants(a, root_a);
  const auto ib = element_invariants(b, root_b);
  std::map<std::vector<long>, long> palette;
  ca.resize(a.size());
  cb.resize(b.size());
  for (int v = 0; v < a.size(); ++v)
    ca[v] = palette.emplace(ia[v], static_cast<long>(palette.size())).first->second;
  for (int v = 0; v < b.size(); ++v)
    cb[v] = palette.emplace(ib[v], static_cast<long>(palette.size())).first->second;

  size_t colours = palette.size();
  for (int round = 0; round < a.size() + 2; ++round) {
    std::map<std::vector<long>, long> next;
    auto resign = [&](const SimpleGraph& g, const std::vector<long>& c, int v) {
      std::vector<long> sig{c[v]};
      std::vector<long> nb;
      for (int w : g.neighbours(v)) nb.push_back(c[w]);
      std::sort(nb.begin(), nb.end());
      sig.insert(sig.end(), nb.begin(), nb.end());
      return sig;
    };
    std::vector<long> na(a.size()), nb2(b.size());
    for (int v = 0; v < a.size(); ++v)
      na[v] = next.emplace(resign(ga, ca, v), static_cast<long>(next.size()))
                  .first->second;
    for (int v = 0; v < b.size(); ++v)
      nb2[v] = next.emplace(resign(gb, cb, v), static_cast<long>(next.size()))
                   .first->second;
    ca.swap(na);
    cb.swap(nb2);
    if (next.size() == colours) break;
    colours = next.size();
  }

  std::vector<long> ha = ca, hb = cb;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  return ha == hb && ca[root_a] == cb[root_b];
}

}  // namespace

bool ball_isomorphic(const Ball& a, const Ball& b) {
  if (!(a.str.sig() == b.str.sig()))
    throw std::invalid_argument("ball_isomorphic: signature mismatch");
  if (a.radius != b.radius)
    throw std::invalid_argument("ball_isomorphic: radius mismatch");
  if (a.str.size() != b.str.size()) return false;
  for (int rel = 0; rel < a.str.sig().size(); ++rel)
    if (a.str.tuples(rel).size() != b.str.tuples(rel).size()) return false;

  std::vector<long> ca, cb;
  if (!refine_joint_colours(a.str, a.center, b.str, b.center, ca, cb))
    return false;

  StructIso s{a.str,
              b.str,
              ca,
              cb,
              gaifman(a.str),
              gaifman(b.str),
              std::vector<int>(a.str.size(), -1),
              std::vector<int>(b.str.size(), -1)};
  if (!s.feasible(a.center, b.center)) return false;
  s.map[a.center] = b.center;
  s.rmap[b.center] = a.center;

  std::vector<int> order;
  for (int v = 0; v < a.str.size(); ++v)
    if (v != a.center) order.push_back(v);
  // closest to the root first, rarest colour class first within a layer
  const std::vector<int> dist = bfs_distances(s.ga, a.center);
  std::map<long, int> freq;
  for (int v : order) freq[ca[v]]++;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (dist[x] != dist[y]) return dist[x] < dist[y];
    if (freq[ca[x]] != freq[ca[y]]) return freq[ca[x]] < freq[ca[y]];
    return ca[x] < ca[y];
  });
  return s.extend(0, order);
}

int TypeRegistry::classify(const Ball& b) {
  if (b.radius != radius_)
    throw std::invalid_argument("classify: radius mismatch");
  const std::vector<long> key = ball_key(b);
  for (int i = 0; i < size(); ++i)
    if (keys_[i] == key && ball_isomorphic(reps_[i], b)) return i;
  reps_.push_back(b);
  keys_.push_back(key);
  return size() - 1;
}

std::vector<long> histogram(const Structure& a, int r, TypeRegistry& reg) {
  std::vector<long> counts(reg.size(), 0);
  const StructureIndex idx = build_index(a);
  for (int v = 0; v < a.size(); ++v) {
    const int t = reg.classify(r_ball_indexed(a, idx, v, r));
    if (t >= static_cast<int>(counts.size())) counts.resize(t + 1, 0);
    counts[t]++;
  }
  counts.resize(reg.size(), 0);
  return counts;
}

double sampling_distance_r(const Structure& a, const Structure& b, int r,
                           TypeRegistry& reg) {
  if (a.size() == 0 || b.size() == 0)
    throw std::invalid_argument("sampling_distance_r: empty structure");
  std::vector<long> ha = histogram(a, r, reg);
  std::vector<long> hb = histogram(b, r, reg);
  ha.resize(reg.size(), 0);
  hb.resize(reg.size(), 0);
  double s = 0.0;
  for (int i = 0; i < reg.size(); ++i)
    s += std::abs(static_cast<double>(ha[i]) / a.size() -
                  static_cast<double>(hb[i]) / b.size());
  return s / 2.0;
}

SamplingDistance sampling_distance(const Structure& a, const Structure& b,
                                   int r_max) {
  if (r_max < 0) throw std::invalid_argument("sampling_distance: r_max < 0");
  SamplingDistance out;
  for (int r = 0; r <= r_max; ++r) {
    TypeRegistry reg(r);
    out.value += std::ldexp(sampling_distance_r(a, b, r, reg), -r);
  }
  out.tail_bound = std::ldexp(1.0, -r_max);
  return out;
}

bool NeighbourhoodProfile::is_zero_profile() const {
  for (const auto& iv : intervals)
    if (!iv.is_zero_based()) return false;
  return def.is_zero_based();
}

bool obeys_profile(const Structure& a, const NeighbourhoodProfile& rho,
                   TypeRegistry& reg) {
  if (reg.radius() != rho.radius)
    throw std::invalid_argument("obeys_profile: radius mismatch");
  const std::vector<long> h = histogram(a, rho.radius, reg);
  for (size_t i = 0; i < h.size(); ++i) {
    const Interval& iv =
        i < rho.intervals.size() ? rho.intervals[i] : rho.def;
    if (!iv.contains(h[i])) return false;
  }
  // registered types absent from a must still admit count 0
  for (size_t i = h.size(); i < rho.intervals.size(); ++i)
    if (!rho.intervals[i].contains(0)) return false;
  return true;
}

Signature graph_signature() { return Signature({{"E", 2}}); }

Structure graph_as_structure(const SimpleGraph& g) {
  Structure a(graph_signature(), g.size());
  for (int v = 0; v < g.size(); ++v)
    for (int w : g.neighbours(v)) a.add_tuple(0, {v, w});
  return a;
}

SimpleGraph structure_as_graph(const Structure& a) {
  if (a.sig().size() != 1 || a.sig().rel(0).arity != 2)
    throw std::invalid_argument("structure_as_graph: not a graph signature");
  SimpleGraph g(a.size());
  for (const auto& t : a.tuples(0)) {
    if (t[0] == t[1]) throw std::invalid_argument("structure_as_graph: loop");
    if (!a.has_tuple(0, {t[1], t[0]}))
      throw std::invalid_argument("structure_as_graph: not symmetric");
    g.add_edge(t[0], t[1]);
  }
  return g;
}

Ball graph_ball_as_ball(const GraphBall& b) {
  Ball out;
  out.str = graph_as_structure(b.g);
  out.center = b.center;
  out.radius = b.radius;
  out.elements = b.elements;
  return out;
}

Structure read_structure(std::istream& in) {
  std::string line, tag;
  int n = -1;
  std::vector<RelationDecl> rels;
  std::vector<std::pair<std::string, Tuple>> raw;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!(ls >> tag)) continue;
    if (tag == "structure") {
      if (!(ls >> n) || n < 0)
        throw std::runtime_error("structure load: bad header at line " +
                                 std::to_string(lineno));
      have_header = true;
    } else if (tag == "rel") {
      RelationDecl rd;
      if (!(ls >> rd.name >> rd.arity))
        throw std::runtime_error("structure load: bad rel at line " +
                                 std::to_string(lineno));
      rels.push_back(rd);
    } else if (tag == "tuple") {
      std::string name;
      if (!(ls >> name))
        throw std::runtime_error("structure load: bad tuple at line " +
                                 std::to_string(lineno));
      Tuple t;
      int e;
      while (ls >> e) t.push_back(e);
      raw.emplace_back(name, std::move(t));
    } else if (tag == "center" || tag == "radius") {
      // tolerated so read_ball can share this reader
      int c;
      ls >> c;
    } else {
      throw std::runtime_error("structure load: unknown tag '" + tag +
                               "' at line " + std::to_string(lineno));
    }
  }
  if (!have_header) throw std::runtime_error("structure load: missing header");
  Structure a(Signature(rels), n);
  for (auto& [name, t] : raw) {
    const int idx = a.sig().index_of(name);
    if (idx < 0)
      throw std::runtime_error("structure load: unknown relation " + name);
    a.add_tuple(idx, std::move(t));
  }
  return a;
}

void write_structure(std::ostream& out, const Structure& a) {
  out << "structure " << a.size() << '\n';
  for (int r = 0; r < a.sig().size(); ++r)
    out << "rel " << a.sig().rel(r).name << ' ' << a.sig().rel(r).arity << '\n';
  for (int r = 0; r < a.sig().size(); ++r)
    for (const auto& t : a.tuples(r)) {
      out << "tuple " << a.sig().rel(r).name;
      for (int e : t) out << ' ' << e;
      out << '\n';
    }
}

Ball read_ball(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::istringstream first(text);
  Ball b;
  b.str = read_structure(first);
  std::istringstream again(text);
  std::string tag;
  bool found = false;
  int declared_radius = -1;
  while (again >> tag) {
    if (tag == "center") {
      if (!(again >> b.center))
        throw std::runtime_error("ball load: bad center");
      found = true;
    } else if (tag == "radius") {
      if (!(again >> declared_radius))
        throw std::runtime_error("ball load: bad radius");
    } else {
      std::string rest;
      std::getline(again, rest);
    }
  }
  if (!found) throw std::runtime_error("ball load: missing center line");
  if (b.center < 0 || b.center >= b.str.size())
    throw std::runtime_error("ball load: center out of range");
  // radius: declared, or the eccentricity of the centre
  const SimpleGraph g = gaifman(b.str);
  const std::vector<int> dist = bfs_distances(g, b.center);
  int r = 0;
  for (int d : dist) {
    if (d < 0) throw std::runtime_error("ball load: disconnected from center");
    r = std::max(r, d);
  }
  if (declared_radius >= 0) {
    if (declared_radius < r)
      throw std::runtime_error("ball load: declared radius below eccentricity");
    r = declared_radius;
  }
  b.radius = r;
  b.elements.resize(b.str.size());
  for (int i = 0; i < b.str.size(); ++i) b.elements[i] = i;
  return b;
}

void write_ball(std::ostream& out, const Ball& b) {
  write_structure(out, b.str);
  out << "center " << b.center << '\n';
  out << "radius " << b.radius << '\n';
}

}  // namespace zz
