#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zz {

// D-regular multigraph (self-loops and parallel edges allowed) encoded as a
// self-inverse rotation map on (vertex, label) pairs. A fixed point
// rot(v,i) = (v,i) is one self-loop occupying one label; an involution pair
// (i,j) at the same vertex is one self-loop occupying two labels.
struct RotEntry {
  int vertex = -1;
  int label = -1;
  bool operator==(const RotEntry&) const = default;
};

class RotMapGraph {
 public:
  RotMapGraph() = default;
  RotMapGraph(int n, int degree)
      : n_(n), degree_(degree), rot_(static_cast<size_t>(n) * degree) {}

  int size() const { return n_; }
  int degree() const { return degree_; }

  RotEntry rot(int v, int i) const { return rot_[idx(v, i)]; }
  void set_rot(int v, int i, int w, int j) { rot_[idx(v, i)] = {w, j}; }

  bool operator==(const RotMapGraph&) const = default;

 private:
  size_t idx(int v, int i) const { return static_cast<size_t>(v) * degree_ + i; }

  int n_ = 0;
  int degree_ = 0;
  std::vector<RotEntry> rot_;
};

struct RotmapViolation {
  int vertex = -1;
  int label = -1;
  std::string what;
};

// ok iff the map is total on [n] x [D] and self-inverse. Violations are data,
// not failures; the first offending (v,i) is reported.
std::optional<RotmapViolation> validate_rotmap(const RotMapGraph& g);

// Integer label counts: counts[u][v] = |{i : rot(u,i) lands on v}|.
// Each row sums to exactly D.
std::vector<std::vector<int>> label_counts(const RotMapGraph& g);

// M[u][v] = counts[u][v] / D; symmetric and row-stochastic.
std::vector<std::vector<double>> normalized_adjacency(const RotMapGraph& g);

struct Spectrum {
  std::vector<double> eigenvalues;  // sorted descending
  double lambda = 0.0;              // max(|l2|, |lN|); 0 when n = 1
};

Spectrum spectrum(const RotMapGraph& g);

// (connected, bipartite) by traversal and 2-colouring; cross-checked against
// the spectral criterion (connected iff l2 < 1; then bipartite iff lN = -1).
std::pair<bool, bool> connectivity_flags(const RotMapGraph& g);

RotMapGraph square(const RotMapGraph& g);
RotMapGraph zigzag(const RotMapGraph& g1, const RotMapGraph& g2);

// Exact expansion ratio h(G) over nonempty S with |S| <= n/2, crossing edges
// counted from the S side (self-loops never cross). +inf when n = 1.
double expansion_ratio_bruteforce(const RotMapGraph& g);

struct CheegerReport {
  double h = 0.0;
  double bound = 0.0;  // D(1 - lambda)/2
  bool satisfied = false;
};

CheegerReport cheeger_check(const RotMapGraph& g);

// G_1 = H^2, G_m = G_{m-1}^2 zz H. Requires |V(H)| = D^4 where D = deg(H).
// Size/degree of every G_m is checked; lambda(G_m) <= 1/2 is asserted only
// when lambda(H) <= 1/4 and the graph fits the spectral cap.
std::vector<RotMapGraph> iterated_family(const RotMapGraph& H, int m_max,
                                         int spectral_cap = 1 << 12);

// Zig-zag spectral bound, both printed variants (lambda1 vs lambda1^2 under
// the square root). Only the additive bound g < l1 + l2 is asserted anywhere.
double zigzag_bound_paper(double l1, double l2);
double zigzag_bound_standard(double l1, double l2);

// Canonical instances.
RotMapGraph cycle_rotmap(int n);     // rot(v,0) = (v+1,1), rot(v,1) = (v-1,0)
RotMapGraph complete_rotmap(int n);  // K_n, D = n-1
RotMapGraph single_self_loop();      // n = 1, D = 1, fixed point

// Text format: "rotmap <n> <D>" then n*D lines "v i w j".
RotMapGraph read_rotmap(std::istream& in);
void write_rotmap(std::ostream& out, const RotMapGraph& g);

// Label pair helpers shared with the model builder: pairs over [b] flatten
// row-major, (x,y) -> x*b + y.
inline int pair_id(int x, int y, int b) { return x * b + y; }
inline std::pair<int, int> unpair_id(int p, int b) { return {p / b, p % b}; }

}  // namespace zz
