#include "zz/zzmodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zz {

namespace {

std::string elem_str(int a) { return std::to_string(a); }

}  // namespace

ZigzagModel build_model(const RotMapGraph& H, int depth, long element_cap) {
  const int D = H.degree();
  const long d4 = static_cast<long>(D) * D * D * D;
  if (H.size() != d4)
    throw std::invalid_argument("build_model: H must have D^4 vertices");
  if (depth < 1) throw std::invalid_argument("build_model: depth < 1");
  if (validate_rotmap(H)) throw std::invalid_argument("build_model: bad H");

  long total = 1, level = 1;
  for (int m = 1; m <= depth; ++m) {
    level *= d4;
    total += level;
    if (total > element_cap)
      throw std::invalid_argument("build_model: element cap exceeded");
  }

  ZigzagModel model;
  model.H = H;
  model.D = D;
  model.depth = depth;
  model.structure = Structure(zigzag_signature(D), static_cast<int>(total));
  model.level_of.assign(total, 0);
  model.tree_parent.assign(total, -1);
  model.level_offset.assign(depth + 1, 0);

  long offset = 0, size = 1;
  for (int m = 0; m <= depth; ++m) {
    model.level_offset[m] = offset;
    for (long u = 0; u < size; ++u) model.level_of[offset + u] = m;
    offset += size;
    size *= d4;
  }

  model.levels.push_back(square(H));
  for (int m = 2; m <= depth; ++m)
    model.levels.push_back(zigzag(square(model.levels.back()), H));

  Structure& a = model.structure;
  const int root = 0;
  a.add_tuple(rel_R(D), {root, root});
  for (int i = 0; i < D * D; ++i) a.add_tuple(rel_E(i, i, D), {root, root});

  // tree wiring: child k of level-(m-1) vertex v is G_m-vertex v*D^4 + k
  for (int m = 1; m <= depth; ++m) {
    const long parent_base = model.level_offset[m - 1];
    const long child_base = model.level_offset[m];
    const long parents = model.level_size(m - 1);
    for (long v = 0; v < parents; ++v)
      for (long k = 0; k < d4; ++k) {
        const int child = static_cast<int>(child_base + v * d4 + k);
        a.add_tuple(rel_F(static_cast<int>(k), D),
                    {static_cast<int>(parent_base + v), child});
        model.tree_parent[child] = static_cast<int>(parent_base + v);
      }
  }

  // level m realises ROT_{G_m}: tuple (x,y) in E_{i,j} iff ROT(u,i) = (w,j)
  for (int m = 1; m <= depth; ++m) {
    const RotMapGraph& gm = model.levels[m - 1];
    const long base = model.level_offset[m];
    for (int u = 0; u < gm.size(); ++u)
      for (int i = 0; i < gm.degree(); ++i) {
        const RotEntry e = gm.rot(u, i);
        a.add_tuple(rel_E(i, e.label, D),
                    {static_cast<int>(base + u), static_cast<int>(base + e.vertex)});
      }
  }

  // leaves carry every L_k self-loop
  const long leaf_base = model.level_offset[depth];
  for (long u = 0; u < model.level_size(depth); ++u)
    for (long k = 0; k < d4; ++k)
      a.add_tuple(rel_L(static_cast<int>(k), D),
                  {static_cast<int>(leaf_base + u), static_cast<int>(leaf_base + u)});

  for (auto [name, report] :
       {std::pair<const char*, ModelReport>{"tree", validate_tree(a, D)},
        {"rotationMap", validate_rotation_map(a, D)},
        {"base", validate_base(a, D, model.levels[0])},
        {"recursion", validate_recursion(a, D, H)}})
    if (!report.ok)
      throw std::runtime_error(std::string("build_model: validator ") + name +
                               " failed: " + report.violation);
  return model;
}

namespace {

struct RelView {
  // out[a] / in[a]: tuples (a,b) / (b,a) as (relation-local colour, partner)
  std::vector<std::vector<std::pair<int, int>>> out, in;
};

RelView collect(const Structure& a, int first_rel, int count) {
  RelView v;
  v.out.resize(a.size());
  v.in.resize(a.size());
  for (int c = 0; c < count; ++c)
    for (const auto& t : a.tuples(first_rel + c)) {
      v.out[t[0]].emplace_back(c, t[1]);
      v.in[t[1]].emplace_back(c, t[0]);
    }
  return v;
}

}  // namespace

ModelReport validate_tree(const Structure& a, int D) {
  const int d4 = D * D * D * D;
  const RelView F = collect(a, rel_F(0, D), d4);
  const RelView L = collect(a, rel_L(0, D), d4);
  const RelView R = collect(a, rel_R(D), 1);

  int roots = 0;
  for (int x = 0; x < a.size(); ++x)
    if (F.in[x].empty()) ++roots;
  if (roots > 1) return {false, "more than one root"};

  for (int x = 0; x < a.size(); ++x) {
    const bool is_root = F.in[x].empty();
    if (is_root) {
      if (!a.has_tuple(rel_R(D), {x, x}))
        return {false, "root " + elem_str(x) + " lacks R self-loop"};
    } else {
      std::set<int> parents;
      for (auto [c, b] : F.in[x]) parents.insert(b);
      if (parents.size() != 1)
        return {false, "element " + elem_str(x) + " has multiple parents"};
      if (!R.out[x].empty() || !R.in[x].empty())
        return {false, "non-root " + elem_str(x) + " in R"};
    }
    // an R self-loop at the root is its only legal R incidence
    if (is_root)
      for (auto [c, b] : R.out[x])
        if (b != x) return {false, "root R tuple to another element"};
  }

  for (int x = 0; x < a.size(); ++x) {
    const bool childless = F.out[x].empty();
    if (childless) {
      for (int k = 0; k < d4; ++k)
        if (!a.has_tuple(rel_L(k, D), {x, x}))
          return {false, "leaf " + elem_str(x) + " missing L_" +
                             std::to_string(k) + " self-loop"};
      for (auto [c, b] : L.out[x])
        if (b != x) return {false, "leaf " + elem_str(x) + " has stray L out"};
      for (auto [c, b] : L.in[x])
        if (b != x) return {false, "leaf " + elem_str(x) + " has stray L in"};
    } else {
      if (!L.out[x].empty() || !L.in[x].empty())
        return {false, "internal " + elem_str(x) + " in L"};
      std::vector<int> child_of_colour(d4, -1);
      std::map<int, std::vector<int>> colours_of_child;
      for (auto [c, b] : F.out[x]) {
        if (b == x) return {false, "F self-loop at " + elem_str(x)};
        if (child_of_colour[c] != -1)
          return {false, "duplicate F_" + std::to_string(c) + " child at " +
                             elem_str(x)};
        child_of_colour[c] = b;
        colours_of_child[b].push_back(c);
      }
      for (int c = 0; c < d4; ++c)
        if (child_of_colour[c] == -1)
          return {false, "element " + elem_str(x) + " missing F_" +
                             std::to_string(c) + " child"};
      for (const auto& [b, cs] : colours_of_child)
        if (cs.size() != 1)
          return {false, "child " + elem_str(b) + " of " + elem_str(x) +
                             " carries several colours"};
    }
  }
  return {true, ""};
}

ModelReport validate_rotation_map(const Structure& a, int D) {
  const int d2 = D * D;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (const auto& t : a.tuples(rel_E(i, j, D)))
        if (!a.has_tuple(rel_E(j, i, D), {t[1], t[0]}))
          return {false, "E_" + std::to_string(i) + "_" + std::to_string(j) +
                             "(" + elem_str(t[0]) + "," + elem_str(t[1]) +
                             ") lacks inverse"};

  // per (a, i): exactly one colour j with exactly one witness
  std::vector<std::vector<int>> out_count(a.size(), std::vector<int>(d2, 0));
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (const auto& t : a.tuples(rel_E(i, j, D))) out_count[t[0]][i]++;
  for (int x = 0; x < a.size(); ++x)
    for (int i = 0; i < d2; ++i)
      if (out_count[x][i] != 1)
        return {false, "element " + elem_str(x) + " label " + std::to_string(i) +
                           " has " + std::to_string(out_count[x][i]) +
                           " E-entries (want 1)"};
  return {true, ""};
}

ModelReport validate_base(const Structure& a, int D, const RotMapGraph& H2) {
  const int d2 = D * D;
  const int d4 = d2 * d2;
  const RelView F = collect(a, rel_F(0, D), d4);

  for (int x = 0; x < a.size(); ++x) {
    if (!F.in[x].empty()) continue;  // not a root
    // diagonal self-loops, nothing else in any E relation
    for (int i = 0; i < d2; ++i)
      if (!a.has_tuple(rel_E(i, i, D), {x, x}))
        return {false, "root " + elem_str(x) + " missing E_" +
                           std::to_string(i) + "_" + std::to_string(i) +
                           " self-loop"};
    for (int i = 0; i < d2; ++i)
      for (int j = 0; j < d2; ++j)
        for (const auto& t : a.tuples(rel_E(i, j, D)))
          if ((t[0] == x || t[1] == x) && !(t[0] == x && t[1] == x && i == j))
            return {false, "root " + elem_str(x) + " has a non-diagonal E tuple"};

    std::vector<int> child(d4, -1);
    for (auto [k, b] : F.out[x]) child[k] = b;
    for (int k = 0; k < d4; ++k)
      if (child[k] == -1)
        return {false, "root " + elem_str(x) + " missing child " +
                           std::to_string(k)};
    if (H2.size() != d4 || H2.degree() != d2)
      return {false, "H2 dimension mismatch"};
    for (int k = 0; k < d4; ++k)
      for (int i = 0; i < d2; ++i) {
        const RotEntry e = H2.rot(k, i);
        if (!a.has_tuple(rel_E(i, e.label, D), {child[k], child[e.vertex]}))
          return {false, "children of root " + elem_str(x) +
                             " miss ROT_{H^2} entry (" + std::to_string(k) +
                             "," + std::to_string(i) + ")"};
      }
  }
  return {true, ""};
}

ModelReport validate_recursion(const Structure& a, int D,
                               const RotMapGraph& H) {
  const int d2 = D * D;
  const int d4 = d2 * d2;
  if (H.size() != d4 || H.degree() != D)
    return {false, "H dimension mismatch"};
  const RelView F = collect(a, rel_F(0, D), d4);

  // E adjacency with colours, indexed by source
  std::vector<std::vector<std::array<int, 3>>> eout(a.size());  // (i, j, y)
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (const auto& t : a.tuples(rel_E(i, j, D)))
        eout[t[0]].push_back({i, j, t[1]});

  std::vector<std::vector<int>> child(a.size());
  for (int x = 0; x < a.size(); ++x) {
    child[x].assign(d4, -1);
    for (auto [k, b] : F.out[x]) child[x][k] = b;
  }
  auto has_children = [&](int x) { return !F.out[x].empty(); };

  for (int x = 0; x < a.size(); ++x) {
    for (const auto& [k1, l1, y] : eout[x]) {
      if (y == x) continue;  // paths are simple; self-loop walks do not count
      for (const auto& [k2, l2, z] : eout[y]) {
        if (z == x || z == y) continue;
        if (!has_children(x) && !has_children(z)) continue;
        if (!has_children(x) || !has_children(z))
          return {false, "E-path " + elem_str(x) + ".." + elem_str(z) +
                             " mixes childless and parent elements"};
        const int kp = pair_id(k1, k2, d2);
        const int lp = pair_id(l2, l1, d2);
        for (int ip = 0; ip < D; ++ip) {
          const RotEntry ka = H.rot(kp, ip);  // (k, i)
          for (int j = 0; j < D; ++j) {
            const RotEntry lb = H.rot(lp, j);  // (l, j')
            const int xc = child[x][ka.vertex];
            const int zc = child[z][lb.vertex];
            if (xc == -1 || zc == -1)
              return {false, "missing child for recursion at " + elem_str(x)};
            if (!a.has_tuple(rel_E(pair_id(ka.label, j, D),
                                   pair_id(lb.label, ip, D), D),
                             {xc, zc}))
              return {false, "recursion edge missing between children of " +
                                 elem_str(x) + " and " + elem_str(z)};
          }
        }
      }
    }
  }
  return {true, ""};
}

int element_degree(const Structure& a, int element, int D) {
  const int d2 = D * D;
  const int d4 = d2 * d2;
  int deg = 0;
  for (int r = 0; r < d2 * d2; ++r)
    for (const auto& t : a.tuples(r)) {
      if (t[0] == element) ++deg;  // out slot
      if (t[1] == element) ++deg;  // in slot
    }
  for (int r = d2 * d2; r < 2 * d4 + 1 + d4; ++r)
    for (const auto& t : a.tuples(r))
      if (t[0] == element || t[1] == element) ++deg;
  return deg;
}

RotMapGraph underlying_graph(const Structure& a, int D) {
  const int d2 = D * D;
  const int d4 = d2 * d2;
  // labels: 0 (parent/R), 1..d4 (child k / leaf L_k), d4+1..d4+d2 (E label i)
  const int degree = 1 + d4 + d2;
  RotMapGraph u(a.size(), degree);

  for (const auto& t : a.tuples(rel_R(D))) u.set_rot(t[0], 0, t[1], 0);
  for (int k = 0; k < d4; ++k) {
    for (const auto& t : a.tuples(rel_F(k, D))) {
      u.set_rot(t[0], 1 + k, t[1], 0);  // to child
      u.set_rot(t[1], 0, t[0], 1 + k);  // to parent
    }
    for (const auto& t : a.tuples(rel_L(k, D)))
      u.set_rot(t[0], 1 + k, t[1], 1 + k);
  }
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      for (const auto& t : a.tuples(rel_E(i, j, D)))
        u.set_rot(t[0], 1 + d4 + i, t[1], 1 + d4 + j);

  if (auto v = validate_rotmap(u))
    throw std::runtime_error("underlying_graph: rotation map invalid at (" +
                             std::to_string(v->vertex) + "," +
                             std::to_string(v->label) + "): " + v->what);
  return u;
}

ExpansionReport measured_expansion(const ZigzagModel& m, int spectral_cap) {
  ExpansionReport rep;
  const RotMapGraph u = underlying_graph(m.structure, m.D);
  const int degree_u = u.degree();
  if (u.size() > spectral_cap)
    throw std::invalid_argument("measured_expansion: spectral cap exceeded");
  rep.lambda = spectrum(u).lambda;
  rep.lambda_known = true;
  rep.spectral_bound = degree_u * (1.0 - rep.lambda) / 2.0;
  if (u.size() <= 20) rep.exact_h = expansion_ratio_bruteforce(u);

  const double lambda_H = spectrum(m.H).lambda;
  rep.certified = lambda_H <= 0.25 + 1e-12;
  if (rep.certified) {
    const double claim = m.D * m.D / 12.0;
    const double measured = rep.exact_h ? *rep.exact_h : rep.spectral_bound;
    if (measured < claim - 1e-9)
      throw std::runtime_error("measured_expansion: h below D^2/12 in certified regime");
  }
  return rep;
}

Structure build_counterexample(const ZigzagModel& m, const Structure& hprime) {
  if (!(hprime.sig() == m.structure.sig()))
    throw std::invalid_argument("build_counterexample: signature mismatch");
  const long n = m.structure.size();
  const long hsize = hprime.size();
  if (hsize < 1 || hsize > n)
    throw std::invalid_argument("build_counterexample: size mismatch");
  const long copies = n / hsize;
  Structure b(m.structure.sig(), static_cast<int>(n));
  for (long c = 0; c < copies; ++c) {
    const long base = c * hsize;
    for (int r = 0; r < hprime.sig().size(); ++r)
      for (const auto& t : hprime.tuples(r)) {
        Tuple shifted(t.size());
        for (size_t i = 0; i < t.size(); ++i)
          shifted[i] = static_cast<int>(base + t[i]);
        b.add_tuple(r, std::move(shifted));
      }
  }
  return b;  // trailing n mod hsize elements stay isolated
}

FarnessBound nontestability_bound(const ZigzagModel& m, int spectral_cap) {
  const double lambda_H = spectrum(m.H).lambda;
  if (lambda_H <= 0.25 + 1e-12)
    return {1.0 / (144.0 * m.D * m.D), false};
  const ExpansionReport rep = measured_expansion(m, spectral_cap);
  const int d = 2 * m.D * m.D + m.D * m.D * m.D * m.D + 1;
  return {std::max(0.0, rep.spectral_bound) / (3.0 * d), true};
}

std::vector<NeighbourhoodProfile> build_rho_k(
    const std::vector<const ZigzagModel*>& models, TypeRegistry& reg) {
  if (models.empty())
    throw std::invalid_argument("build_rho_k: no models");
  if (reg.radius() != 2)
    throw std::invalid_argument("build_rho_k: registry radius must be 2");
  const int D = models.front()->D;
  for (const auto* m : models)
    if (m->D != D) throw std::invalid_argument("build_rho_k: mixed D");

  std::map<int, std::set<int>> observed_by_root_type;
  for (const auto* m : models) {
    const StructureIndex idx = build_index(m->structure);
    const int root_type = reg.classify(r_ball_indexed(m->structure, idx, 0, 2));
    auto& obs = observed_by_root_type[root_type];
    for (int e = 0; e < m->structure.size(); ++e)
      obs.insert(reg.classify(r_ball_indexed(m->structure, idx, e, 2)));
  }

  std::vector<NeighbourhoodProfile> out;
  for (const auto& [root_type, observed] : observed_by_root_type) {
    NeighbourhoodProfile rho;
    rho.radius = 2;
    rho.def = Interval{0, 0};
    rho.intervals.assign(reg.size(), Interval{0, 0});
    for (int t : observed) rho.intervals[t] = Interval{0, -1};
    rho.intervals[root_type] = Interval{0, 1};
    out.push_back(std::move(rho));
  }
  return out;
}

void write_levels(std::ostream& out, const ZigzagModel& m) {
  for (size_t e = 0; e < m.level_of.size(); ++e)
    out << e << ' ' << m.level_of[e] << '\n';
}

std::vector<int> read_levels(std::istream& in) {
  std::vector<int> levels;
  long e;
  int lv;
  while (in >> e >> lv) {
    if (e != static_cast<long>(levels.size()))
      throw std::runtime_error("levels load: elements out of order");
    levels.push_back(lv);
  }
  return levels;
}

}  // namespace zz
