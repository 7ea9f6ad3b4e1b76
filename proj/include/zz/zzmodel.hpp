#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zz/formula.hpp"
#include "zz/rotmap.hpp"
#include "zz/structure.hpp"

namespace zz {

// A built model of phi_zigzag: a D^4-ary tree of depth n whose level m
// carries G_m (G_1 = H^2, G_m = G_{m-1}^2 zz H). Elements are numbered
// breadth-first by level, then by G_m vertex id; the level-m element for
// G_m-vertex u is level_offset(m) + u, and vertex (v,k) of G_m is v*D^4 + k.
struct ZigzagModel {
  Structure structure;
  RotMapGraph H;
  int D = 0;
  int depth = 0;
  std::vector<int> level_of;     // element -> level
  std::vector<int> tree_parent;  // element -> parent element (-1 for root)
  std::vector<long> level_offset;
  std::vector<RotMapGraph> levels;  // G_1 .. G_depth

  long level_size(int m) const {
    long s = 1;
    for (int i = 0; i < m; ++i) s *= static_cast<long>(D) * D * D * D;
    return s;
  }
};

ZigzagModel build_model(const RotMapGraph& H, int depth,
                        long element_cap = 200000);

struct ModelReport {
  bool ok = true;
  std::string violation;  // first violation, with witnesses
};

// Direct polynomial-time checkers, each logically equivalent to its formula.
ModelReport validate_tree(const Structure& a, int D);
ModelReport validate_rotation_map(const Structure& a, int D);
ModelReport validate_base(const Structure& a, int D, const RotMapGraph& H2);
ModelReport validate_recursion(const Structure& a, int D, const RotMapGraph& H);

// The paper's d = 2D^2 + D^4 + 1 accounting: E incidences counted from both
// endpoints (each G_m edge is modelled by two tuples; a fixed-point self-loop
// occupies its out- and in-slot), F/L/R tuples counted once.
int element_degree(const Structure& a, int element, int D);

// Underlying graph: label set {0} + ([D]^2)^2 + [D]^2, size 1 + D^4 + D^2.
RotMapGraph underlying_graph(const Structure& a, int D);

struct ExpansionReport {
  double lambda = 0.0;          // lambda(U(A)), when within the spectral cap
  double spectral_bound = 0.0;  // D_U (1 - lambda) / 2
  std::optional<double> exact_h;
  bool lambda_known = false;
  bool certified = false;  // lambda(H) <= 1/4 regime
};

ExpansionReport measured_expansion(const ZigzagModel& m,
                                   int spectral_cap = 4000);

// floor(n/m) disjoint copies of hprime plus n mod m isolated elements,
// n = |model|; same signature.
Structure build_counterexample(const ZigzagModel& m, const Structure& hprime);

struct FarnessBound {
  double epsilon = 0.0;
  bool heuristic = false;  // true unless lambda(H) <= 1/4
};

FarnessBound nontestability_bound(const ZigzagModel& m, int spectral_cap = 4000);

// One 0-profile per observed root 2-type: the root type gets [0,1], every
// other observed type [0,inf), everything else [0,0].
std::vector<NeighbourhoodProfile> build_rho_k(
    const std::vector<const ZigzagModel*>& models, TypeRegistry& reg);

// sidecar "levels" file: one "<element> <level>" line per element
void write_levels(std::ostream& out, const ZigzagModel& m);
std::vector<int> read_levels(std::istream& in);

}  // namespace zz
