#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zz/rotmap.hpp"
#include "zz/structure.hpp"

namespace zz {

enum class NodeKind {
  Atom,      // R(x1..xk)
  Eq,        // x = y
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
  CountGeq,  // exists>= m x phi
  CountEq,   // exists=  m x phi
  CountLeq,  // exists<= m x phi
};

struct FormulaNode {
  NodeKind kind;
  int rel = -1;            // Atom
  std::vector<int> vars;   // Atom / Eq operands (variable ids)
  std::vector<int> kids;   // child node indices
  int var = -1;            // bound variable for quantifiers
  long count = 0;          // m for counting quantifiers
};

// Immutable after construction; nodes stored in an arena, root last by
// convention of the builders.
class Formula {
 public:
  explicit Formula(Signature sig) : sig_(std::move(sig)) {}

  const Signature& sig() const { return sig_; }
  int root() const { return root_; }
  void set_root(int r) { root_ = r; }
  const FormulaNode& node(int i) const { return nodes_[i]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }

  int var_id(const std::string& name);             // interns
  int find_var(const std::string& name) const;     // -1 if unknown
  const std::string& var_name(int id) const { return vars_[id]; }
  int var_count() const { return static_cast<int>(vars_.size()); }

  int atom(int rel, std::vector<int> vars);
  int eq(int a, int b);
  int lnot(int f);
  int land(std::vector<int> fs);
  int lor(std::vector<int> fs);
  int implies(int a, int b);
  int exists(int var, int f);
  int forall(int var, int f);
  int count_geq(long m, int var, int f);
  int count_eq(long m, int var, int f);
  int count_leq(long m, int var, int f);

 private:
  int push(FormulaNode n);

  Signature sig_;
  std::vector<FormulaNode> nodes_;
  std::vector<std::string> vars_;
  int root_ = -1;
};

struct ParseError {
  size_t position;
  std::string message;
};

// s-expression grammar:
//   (<Rel> x y)  (= x y)  (not f)  (and f...)  (or f...)  (-> f g)
//   (exists v f) (forall v f) (exists>= m v f) (exists= m v f) (exists<= m v f)
Formula parse_formula(const std::string& text, const Signature& sig);
std::string print_formula(const Formula& f);

std::vector<int> free_vars(const Formula& f);

struct Assignment {
  std::vector<int> value;  // per variable id; -1 = unbound
};

// Naive semantics; counting quantifiers by literal witness counting.
// budget caps node evaluations (0 = unlimited); overruns throw.
bool eval_formula(const Structure& a, const Formula& f, Assignment asg,
                  long long budget = 0);

enum class PrefixShape { Sigma, Pi, NonPrenex };
struct PrefixClass {
  PrefixShape shape = PrefixShape::NonPrenex;
  int level = 0;  // Sigma_i / Pi_i; level 0 means quantifier-free
};
PrefixClass prefix_class(const Formula& f);

// sigma(D): relations E_{i,j} (i,j in [D^2], i-major), then F_k (k in [D^4]),
// then R, then L_k. |sigma| = 3 D^4 + 1.
Signature zigzag_signature(int D);
int rel_E(int i, int j, int D);
int rel_F(int k, int D);
int rel_R(int D);
int rel_L(int k, int D);

struct ZigzagFormulas {
  Signature sig;
  Formula tree;
  Formula rotation_map;
  Formula base;
  Formula recursion;
  Formula conjunction;  // phi_zigzag
  long base_rot_conjuncts = 0;  // one per ROT_{H^2} entry
};

// H must be D-regular on D^4 vertices; H2 must equal square(H).
ZigzagFormulas phi_zigzag(int D, const RotMapGraph& H, const RotMapGraph& H2);

}  // namespace zz
