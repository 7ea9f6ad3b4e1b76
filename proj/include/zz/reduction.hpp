#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zz/graph.hpp"
#include "zz/structure.hpp"

namespace zz {

// Building blocks: a Hamiltonian path 0..n-1 plus chords. Endpoints (0 and,
// for H1-H3, n-1) have internal degree 2, everything else degree 3.
enum class BlockKind { H1, H2, H3, H4 };
SimpleGraph block(BlockKind kind);
int block_size(BlockKind kind);
const std::vector<std::pair<int, int>>& block_chords(BlockKind kind);

// Standalone gadget graphs (vertex 0 is the attachment endpoint u_0; arrows
// also expose 12l+9 as the far endpoint v_{2l}).
SimpleGraph arrow_gadget(int k, int ell);    // 12*ell + 10 vertices
SimpleGraph loop_gadget(int k, int ell);     // 6*ell + 5
SimpleGraph nonarrow_gadget(int ell);        // 6*ell + 5

// Query-counted neighbour access to a structure: ans(a,i) is the i-th tuple
// containing a (1-based; relation order, then lexicographic; a self-tuple
// occupies one slot). Thread-safe; the counter is atomic.
class StructureOracle {
 public:
  explicit StructureOracle(const Structure& a);

  const Structure& structure() const { return *a_; }
  int size() const { return a_->size(); }
  int degree(int a) const { return static_cast<int>(slots_[a].size()); }

  struct Answer {
    int rel;
    Tuple tuple;
  };
  std::optional<Answer> ans(int a, int i) const;  // nullopt encodes bottom

  long queries() const { return queries_.load(); }
  void reset_queries() const { queries_.store(0); }

 private:
  const Structure* a_;
  std::vector<std::vector<std::pair<int, int>>> slots_;  // (rel, tuple idx)
  mutable std::atomic<long> queries_{0};
};

struct ReducedGraph {
  SimpleGraph graph;
  int d = 0;
  int ell = 0;
  int n_elements = 0;
  std::vector<std::vector<int>> element_cycles;  // element -> u_{a,1..d}
};

// The local reduction f. Requires max tuple-degree <= d and d >= 12 (no
// cycle of length d may appear inside gadget blocks; the longest block cycle
// has length 10).
ReducedGraph reduce(const Structure& a, int d, long vertex_cap = 200000);

// Deterministic vertex layout shared by reduce and the query simulator:
// per element a, block of d*(6*ell+6) ids; u_{a,i} then the d chains.
long reduced_vertex_count(int n_elements, int d, int ell);
long uid(int a, int i, int d, int ell);            // i in 1..d
long vid(int a, int i, int m, int d, int ell);     // m in 1..6*ell+5

// Answers one graph neighbour query (vertex, slot 1..3) against f(A) using
// at most d+1 structure queries; neighbours are listed in ascending id order
// exactly as the materialized graph stores them.
class QuerySimulator {
 public:
  QuerySimulator(const StructureOracle& oracle, int d, int ell)
      : oracle(oracle), d(d), ell(ell) {}

  // returns the neighbour id; slot must be 1..3 (the graph is 3-regular)
  long query(long vertex, int slot) const;
  long last_query_cost() const { return last_cost_; }

 private:
  const StructureOracle& oracle;
  int d;
  int ell;
  mutable long last_cost_ = 0;
};

struct DecodeResult {
  Structure structure;  // relations named R1..Rell, arity 2
  int d = 0;
  int ell = 0;
  std::vector<std::vector<int>> element_cycles;
};

struct ReduceShapeError : std::runtime_error {
  long vertex;
  ReduceShapeError(long v, const std::string& what)
      : std::runtime_error(what + " (vertex " + std::to_string(v) + ")"),
        vertex(v) {}
};

DecodeResult decode(const SimpleGraph& g);

// Vertex classification of a reduced-shape graph plus the psi_graph
// predicate checkers.
class ReducedShape {
 public:
  explicit ReducedShape(const SimpleGraph& g);

  bool alpha(long v) const;           // element-vertex
  bool beta(long u, long v) const;    // same element cycle
  bool gamma(long v) const;           // internal gadget vertex
  bool delta_arrow(int k, long u, long v) const;  // u -k-> v
  bool delta_loop(int k, long u) const;           // u -k-> u

  const DecodeResult& decoded() const { return dec_; }

 private:
  DecodeResult dec_;
  std::vector<int> cycle_of_;                  // vertex -> element, -1 if none
  std::vector<char> is_endpoint_;              // chain heads v^1
  // per (element, slot): gadget kind (+k) and the target element
  struct SlotInfo {
    int kind = 0;  // 0 bottom, 1 loop, 2 arrow-source, 3 arrow-target
    int k = 0;
    int partner = -1;
  };
  std::vector<std::vector<SlotInfo>> slot_info_;
  std::vector<int> slot_of_;  // element-vertex id -> slot index (0-based)
};

int ell_prime(int ell, int d);

// Graph-side 0-profiles from the observed ell'-types of reduced structures:
// the type of u_{root,1} gets [0,1], other observed types [0,inf),
// default [0,0]. One profile per distinct root type.
std::vector<NeighbourhoodProfile> rho_hat_builder(
    const std::vector<const ReducedGraph*>& reduced, TypeRegistry& reg,
    long ball_cap = 100000);

// correspondence file: lines "elem <a> cycle <v1> ... <vd>"
void write_correspondence(std::ostream& out, const ReducedGraph& r);

}  // namespace zz
