#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zz/graph.hpp"

namespace zz {

struct RelationDecl {
  std::string name;
  int arity = 1;
  bool operator==(const RelationDecl&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelationDecl> rels);

  int size() const { return static_cast<int>(rels_.size()); }
  const RelationDecl& rel(int i) const { return rels_[i]; }
  int index_of(const std::string& name) const;  // -1 if absent

  bool operator==(const Signature&) const = default;

 private:
  std::vector<RelationDecl> rels_;
};

using Tuple = std::vector<int>;

// Finite relational structure, universe {0..n-1}. Tuple sets kept sorted.
class Structure {
 public:
  Structure() = default;
  Structure(Signature sig, int n);

  const Signature& sig() const { return sig_; }
  int size() const { return n_; }

  void add_tuple(int rel, Tuple t);
  void remove_tuple(int rel, const Tuple& t);
  bool has_tuple(int rel, const Tuple& t) const;
  const std::vector<Tuple>& tuples(int rel) const { return tuples_[rel]; }
  long tuple_count() const;

  // number of tuples containing a; a self-tuple counts once
  int degree(int a) const;
  int max_degree() const;

  bool operator==(const Structure&) const = default;

 private:
  Signature sig_;
  int n_ = 0;
  std::vector<std::vector<Tuple>> tuples_;
};

// Undirected simple co-occurrence graph; self-tuples induce no edges.
SimpleGraph gaifman(const Structure& a);

struct Ball {
  Structure str;
  int center = 0;
  int radius = 0;
  std::vector<int> elements;  // original element ids
};

Ball r_ball(const Structure& a, int center, int r);

// Reusable per-structure lookup tables for repeated ball extraction.
struct StructureIndex {
  SimpleGraph gaifman;
  std::vector<std::vector<std::pair<int, int>>> incident;  // (rel, tuple idx)
};

StructureIndex build_index(const Structure& a);
Ball r_ball_indexed(const Structure& a, const StructureIndex& idx, int center,
                    int r);

// rooted isomorphism (preserves every relation and maps centre to centre)
bool ball_isomorphic(const Ball& a, const Ball& b);

// Lazily discovered r-types; representatives pairwise non-isomorphic.
class TypeRegistry {
 public:
  explicit TypeRegistry(int radius) : radius_(radius) {}

  int radius() const { return radius_; }
  int size() const { return static_cast<int>(reps_.size()); }
  const Ball& representative(int i) const { return reps_[i]; }

  int classify(const Ball& b);  // registers b if no representative matches

 private:
  int radius_;
  std::vector<Ball> reps_;
  std::vector<std::vector<long>> keys_;  // cheap invariant per representative
};

std::vector<long> histogram(const Structure& a, int r, TypeRegistry& reg);

double sampling_distance_r(const Structure& a, const Structure& b, int r,
                           TypeRegistry& reg);

struct SamplingDistance {
  double value = 0.0;
  double tail_bound = 0.0;  // sum_{r>r_max} 2^-r <= 2^-r_max
};

SamplingDistance sampling_distance(const Structure& a, const Structure& b,
                                   int r_max);

struct Interval {
  long lo = 0;
  long hi = -1;  // -1 encodes infinity
  bool contains(long x) const { return x >= lo && (hi < 0 || x <= hi); }
  bool is_zero_based() const { return lo == 0; }
};

// Per registered type an interval; types not covered fall to def.
struct NeighbourhoodProfile {
  int radius = 0;
  std::vector<Interval> intervals;
  Interval def;

  bool is_zero_profile() const;
};

bool obeys_profile(const Structure& a, const NeighbourhoodProfile& rho,
                   TypeRegistry& reg);

// conversions with the graph view (symmetric irreflexive binary E)
Signature graph_signature();
Structure graph_as_structure(const SimpleGraph& g);
SimpleGraph structure_as_graph(const Structure& a);
Ball graph_ball_as_ball(const GraphBall& b);

// Text formats.
// structure: "structure <n>", "rel <name> <arity>", "tuple <name> e1 .. ek"
// ball: structure lines plus a trailing "center <v>" line
Structure read_structure(std::istream& in);
void write_structure(std::ostream& out, const Structure& a);
Ball read_ball(std::istream& in);
void write_ball(std::ostream& out, const Ball& b);

}  // namespace zz
