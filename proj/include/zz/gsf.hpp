#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zz/graph.hpp"

namespace zz {

enum class Mark { Full, Semifull, Partial };

struct MarkedGraph {
  SimpleGraph g;
  std::vector<Mark> marks;
};

bool marked_isomorphic(const MarkedGraph& a, const MarkedGraph& b);

// Embedding per the GSF definition: injective f with
//   full v:      N1(f(v)) = f(N1(v))
//   semifull v:  N1(f(v)) /\ f(V) = f(N1(v))
//   partial v:   N1(f(v)) >= f(N1(v))
std::optional<std::vector<int>> embed(const MarkedGraph& f, const SimpleGraph& g);
std::vector<std::vector<int>> all_embeddings(const MarkedGraph& f,
                                             const SimpleGraph& g,
                                             size_t limit = 1u << 20);

bool is_family_free(const std::vector<MarkedGraph>& family, const SimpleGraph& g);

// All k-realisations of the rooted type tau: k centres of type tau, every
// vertex within distance r of a centre, marks full (< r) / semifull (>= r).
// Complete up to marked isomorphism for graphs within the size cap.
std::vector<MarkedGraph> k_realisations(const GraphBall& tau, int k, int d,
                                        int size_cap);

// All (not necessarily disjoint) unions of two marked graphs, conditions 1-5.
std::vector<MarkedGraph> union_family(const MarkedGraph& f1,
                                      const MarkedGraph& f2, int size_cap);

// 0-profile over rooted graph types -> forbidden family
// union of S^{hi+1}(tau) over entries with a finite upper bound.
struct GraphProfileEntry {
  GraphBall type;
  long hi = -1;  // -1 encodes infinity
};

std::vector<MarkedGraph> profile_to_gsf(const std::vector<GraphProfileEntry>& rho,
                                        int d, int size_cap);

// every embedding of every family member meets B
bool covers(const std::vector<int>& b, const std::vector<MarkedGraph>& family,
            const SimpleGraph& g);

// Degree-<=2 augmentation: F_{I,J} (k paths of length i per i in I, k cycles
// of length j per j in J, all full), F_large (path of length k+1, partial
// ends), and their unions, added whenever every n-vertex member of the
// property is free of them. Paths measured in edges, cycles in vertices.
struct Deg2Augmentation {
  std::vector<MarkedGraph> family;    // original plus additions
  std::vector<MarkedGraph> added;
};

MarkedGraph f_large_path(int k);
MarkedGraph f_ij(const std::vector<int>& paths_i, const std::vector<int>& cycles_j,
                 int k, bool with_large);

Deg2Augmentation deg2_augment(
    const std::vector<MarkedGraph>& family, int k, int n,
    const std::function<bool(const MarkedGraph&)>& every_member_free);

// default membership oracle: exhaustive over degree-<=2 n-vertex graphs
std::function<bool(const MarkedGraph&)> deg2_membership_oracle(
    const std::vector<MarkedGraph>& family, int n);

double tau_eps(double eps, int k);  // min(1, 8 k^3 eps)

// marked-graph file: "marked <n>", "mark <v> full|semifull|partial",
// "edge <u> <v>"; families are concatenated blocks separated by "---"
MarkedGraph read_marked(std::istream& in);
void write_marked(std::ostream& out, const MarkedGraph& m);
std::vector<MarkedGraph> read_family(std::istream& in);
void write_family(std::ostream& out, const std::vector<MarkedGraph>& family);

}  // namespace zz
