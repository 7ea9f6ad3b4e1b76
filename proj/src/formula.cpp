#include "zz/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace zz {

int Formula::var_id(const std::string& name) {
  const int found = find_var(name);
  if (found >= 0) return found;
  vars_.push_back(name);
  return static_cast<int>(vars_.size()) - 1;
}

int Formula::find_var(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return static_cast<int>(i);
  return -1;
}

int Formula::push(FormulaNode n) {
  nodes_.push_back(std::move(n));
  root_ = static_cast<int>(nodes_.size()) - 1;
  return root_;
}

int Formula::atom(int rel, std::vector<int> vars) {
  if (rel < 0 || rel >= sig_.size())
    throw std::invalid_argument("atom: unknown relation");
  if (static_cast<int>(vars.size()) != sig_.rel(rel).arity)
    throw std::invalid_argument("atom: arity mismatch");
  FormulaNode n{NodeKind::Atom};
  n.rel = rel;
  n.vars = std::move(vars);
  return push(std::move(n));
}

int Formula::eq(int a, int b) {
  FormulaNode n{NodeKind::Eq};
  n.vars = {a, b};
  return push(std::move(n));
}

int Formula::lnot(int f) {
  FormulaNode n{NodeKind::Not};
  n.kids = {f};
  return push(std::move(n));
}

int Formula::land(std::vector<int> fs) {
  FormulaNode n{NodeKind::And};
  n.kids = std::move(fs);
  return push(std::move(n));
}

int Formula::lor(std::vector<int> fs) {
  FormulaNode n{NodeKind::Or};
  n.kids = std::move(fs);
  return push(std::move(n));
}

int Formula::implies(int a, int b) {
  FormulaNode n{NodeKind::Implies};
  n.kids = {a, b};
  return push(std::move(n));
}

int Formula::exists(int var, int f) {
  FormulaNode n{NodeKind::Exists};
  n.var = var;
  n.kids = {f};
  return push(std::move(n));
}

int Formula::forall(int var, int f) {
  FormulaNode n{NodeKind::Forall};
  n.var = var;
  n.kids = {f};
  return push(std::move(n));
}

int Formula::count_geq(long m, int var, int f) {
  FormulaNode n{NodeKind::CountGeq};
  n.var = var;
  n.count = m;
  n.kids = {f};
  return push(std::move(n));
}

int Formula::count_eq(long m, int var, int f) {
  FormulaNode n{NodeKind::CountEq};
  n.var = var;
  n.count = m;
  n.kids = {f};
  return push(std::move(n));
}

int Formula::count_leq(long m, int var, int f) {
  FormulaNode n{NodeKind::CountLeq};
  n.var = var;
  n.count = m;
  n.kids = {f};
  return push(std::move(n));
}

namespace {

struct Parser {
  const std::string& text;
  const Signature& sig;
  size_t pos = 0;
  Formula out;

  Parser(const std::string& t, const Signature& s) : text(t), sig(s), out(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("parse error at position " + std::to_string(pos) +
                             ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  std::string token() {
    skip_ws();
    const size_t start = pos;
    while (pos < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) fail("expected token");
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  long parse_count() {
    const std::string t = token();
    try {
      size_t used = 0;
      const long m = std::stol(t, &used);
      if (used != t.size() || m < 0) fail("malformed count");
      return m;
    } catch (const std::logic_error&) {
      fail("malformed count");
    }
  }

  int parse_expr() {
    expect('(');
    skip_ws();
    const std::string head = token();
    int result;
    if (head == "not") {
      result = out.lnot(parse_expr());
    } else if (head == "and" || head == "or") {
      std::vector<int> kids;
      while (!peek(')')) kids.push_back(parse_expr());
      result = head == "and" ? out.land(std::move(kids))
                             : out.lor(std::move(kids));
    } else if (head == "->") {
      const int a = parse_expr();
      const int b = parse_expr();
      result = out.implies(a, b);
    } else if (head == "exists" || head == "forall") {
      const int v = out.var_id(token());
      const int f = parse_expr();
      result = head == "exists" ? out.exists(v, f) : out.forall(v, f);
    } else if (head == "exists>=" || head == "exists=" || head == "exists<=") {
      const long m = parse_count();
      const int v = out.var_id(token());
      const int f = parse_expr();
      if (head == "exists>=")
        result = out.count_geq(m, v, f);
      else if (head == "exists=")
        result = out.count_eq(m, v, f);
      else
        result = out.count_leq(m, v, f);
    } else if (head == "=") {
      const int a = out.var_id(token());
      const int b = out.var_id(token());
      result = out.eq(a, b);
    } else {
      const int rel = sig.index_of(head);
      if (rel < 0) fail("unknown relation " + head);
      std::vector<int> vars;
      while (!peek(')')) vars.push_back(out.var_id(token()));
      if (static_cast<int>(vars.size()) != sig.rel(rel).arity)
        fail("arity mismatch for " + head);
      result = out.atom(rel, std::move(vars));
    }
    expect(')');
    return result;
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  Parser p(text, sig);
  const int root = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  p.out.set_root(root);
  return std::move(p.out);
}

namespace {

void print_node(const Formula& f, int idx, std::ostream& os) {
  const FormulaNode& n = f.node(idx);
  switch (n.kind) {
    case NodeKind::Atom:
      os << '(' << f.sig().rel(n.rel).name;
      for (int v : n.vars) os << ' ' << f.var_name(v);
      os << ')';
      break;
    case NodeKind::Eq:
      os << "(= " << f.var_name(n.vars[0]) << ' ' << f.var_name(n.vars[1])
         << ')';
      break;
    case NodeKind::Not:
      os << "(not ";
      print_node(f, n.kids[0], os);
      os << ')';
      break;
    case NodeKind::And:
    case NodeKind::Or:
      os << (n.kind == NodeKind::And ? "(and" : "(or");
      for (int k : n.kids) {
        os << ' ';
        print_node(f, k, os);
      }
      os << ')';
      break;
    case NodeKind::Implies:
      os << "(-> ";
      print_node(f, n.kids[0], os);
      os << ' ';
      print_node(f, n.kids[1], os);
      os << ')';
      break;
    case NodeKind::Exists:
    case NodeKind::Forall:
      os << (n.kind == NodeKind::Exists ? "(exists " : "(forall ")
         << f.var_name(n.var) << ' ';
      print_node(f, n.kids[0], os);
      os << ')';
      break;
    case NodeKind::CountGeq:
    case NodeKind::CountEq:
    case NodeKind::CountLeq: {
      const char* head = n.kind == NodeKind::CountGeq  ? "(exists>= "
                         : n.kind == NodeKind::CountEq ? "(exists= "
                                                       : "(exists<= ";
      os << head << n.count << ' ' << f.var_name(n.var) << ' ';
      print_node(f, n.kids[0], os);
      os << ')';
      break;
    }
  }
}

void free_vars_rec(const Formula& f, int idx, std::vector<char>& bound,
                   std::vector<char>& free) {
  const FormulaNode& n = f.node(idx);
  switch (n.kind) {
    case NodeKind::Atom:
    case NodeKind::Eq:
      for (int v : n.vars)
        if (!bound[v]) free[v] = 1;
      break;
    case NodeKind::Exists:
    case NodeKind::Forall:
    case NodeKind::CountGeq:
    case NodeKind::CountEq:
    case NodeKind::CountLeq: {
      const char prev = bound[n.var];
      bound[n.var] = 1;
      free_vars_rec(f, n.kids[0], bound, free);
      bound[n.var] = prev;
      break;
    }
    default:
      for (int k : n.kids) free_vars_rec(f, k, bound, free);
  }
}

struct Evaluator {
  const Structure& a;
  const Formula& f;
  long long budget;  // 0 = unlimited
  long long used = 0;

  bool eval(int idx, std::vector<int>& env) {
    if (budget > 0 && ++used > budget)
      throw std::runtime_error("eval_formula: budget exceeded");
    const FormulaNode& n = f.node(idx);
    switch (n.kind) {
      case NodeKind::Atom: {
        Tuple t(n.vars.size());
        for (size_t i = 0; i < n.vars.size(); ++i) {
          t[i] = env[n.vars[i]];
          if (t[i] < 0) throw std::runtime_error("eval_formula: unbound variable");
        }
        return a.has_tuple(n.rel, t);
      }
      case NodeKind::Eq: {
        const int x = env[n.vars[0]], y = env[n.vars[1]];
        if (x < 0 || y < 0) throw std::runtime_error("eval_formula: unbound variable");
        return x == y;
      }
      case NodeKind::Not:
        return !eval(n.kids[0], env);
      case NodeKind::And:
        for (int k : n.kids)
          if (!eval(k, env)) return false;
        return true;
      case NodeKind::Or:
        for (int k : n.kids)
          if (eval(k, env)) return true;
        return false;
      case NodeKind::Implies:
        return !eval(n.kids[0], env) || eval(n.kids[1], env);
      case NodeKind::Exists:
      case NodeKind::Forall: {
        const int saved = env[n.var];
        bool result = n.kind == NodeKind::Forall;
        for (int e = 0; e < a.size(); ++e) {
          env[n.var] = e;
          const bool v = eval(n.kids[0], env);
          if (n.kind == NodeKind::Exists && v) {
            result = true;
            break;
          }
          if (n.kind == NodeKind::Forall && !v) {
            result = false;
            break;
          }
        }
        env[n.var] = saved;
        return result;
      }
      case NodeKind::CountGeq:
      case NodeKind::CountEq:
      case NodeKind::CountLeq: {
        const int saved = env[n.var];
        long count = 0;
        const long stop = n.kind == NodeKind::CountGeq ? n.count : n.count + 1;
        for (int e = 0; e < a.size() && count < stop; ++e) {
          env[n.var] = e;
          if (eval(n.kids[0], env)) ++count;
        }
        env[n.var] = saved;
        if (n.kind == NodeKind::CountGeq) return count >= n.count;
        if (n.kind == NodeKind::CountLeq) return count <= n.count;
        return count == n.count;
      }
    }
    return false;
  }
};

}  // namespace

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_node(f, f.root(), os);
  return os.str();
}

std::vector<int> free_vars(const Formula& f) {
  std::vector<char> bound(f.var_count(), 0), free(f.var_count(), 0);
  free_vars_rec(f, f.root(), bound, free);
  std::vector<int> out;
  for (int v = 0; v < f.var_count(); ++v)
    if (free[v]) out.push_back(v);
  return out;
}

bool eval_formula(const Structure& a, const Formula& f, Assignment asg,
                  long long budget) {
  if (!(a.sig() == f.sig()))
    throw std::invalid_argument("eval_formula: signature mismatch");
  asg.value.resize(f.var_count(), -1);
  for (int v : free_vars(f))
    if (asg.value[v] < 0)
      throw std::invalid_argument("eval_formula: free variable unbound");
  Evaluator ev{a, f, budget};
  return ev.eval(f.root(), asg.value);
}

PrefixClass prefix_class(const Formula& f) {
  // Peel the quantifier prefix; exists>= counts as an existential block and
  // exists<= as a universal one (their expansions' leading blocks). exists=
  // mixes blocks, so it ends the prefix.
  int idx = f.root();
  std::vector<int> blocks;  // +1 existential, -1 universal
  while (true) {
    const FormulaNode& n = f.node(idx);
    int b = 0;
    if (n.kind == NodeKind::Exists || n.kind == NodeKind::CountGeq)
      b = 1;
    else if (n.kind == NodeKind::Forall || n.kind == NodeKind::CountLeq)
      b = -1;
    else
      break;
    if (blocks.empty() || blocks.back() != b) blocks.push_back(b);
    idx = n.kids[0];
  }
  // remainder must be quantifier-free
  std::vector<int> stack{idx};
  while (!stack.empty()) {
    const FormulaNode& n = f.node(stack.back());
    stack.pop_back();
    switch (n.kind) {
      case NodeKind::Exists:
      case NodeKind::Forall:
      case NodeKind::CountGeq:
      case NodeKind::CountEq:
      case NodeKind::CountLeq:
        return {PrefixShape::NonPrenex, 0};
      default:
        for (int k : n.kids) stack.push_back(k);
    }
  }
  PrefixClass pc;
  pc.level = static_cast<int>(blocks.size());
  if (blocks.empty())
    pc.shape = PrefixShape::Sigma;  // Sigma_0 = Pi_0
  else
    pc.shape = blocks.front() == 1 ? PrefixShape::Sigma : PrefixShape::Pi;
  return pc;
}

Signature zigzag_signature(int D) {
  const int d2 = D * D;
  const int d4 = d2 * d2;
  std::vector<RelationDecl> rels;
  rels.reserve(3 * d4 + 1);
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      rels.push_back({"E_" + std::to_string(i) + "_" + std::to_string(j), 2});
  for (int k = 0; k < d4; ++k) rels.push_back({"F_" + std::to_string(k), 2});
  rels.push_back({"R", 2});
  for (int k = 0; k < d4; ++k) rels.push_back({"L_" + std::to_string(k), 2});
  return Signature(std::move(rels));
}

int rel_E(int i, int j, int D) { return i * D * D + j; }
int rel_F(int k, int D) { return D * D * D * D + k; }
int rel_R(int D) { return 2 * D * D * D * D; }
int rel_L(int k, int D) { return 2 * D * D * D * D + 1 + k; }

namespace {

// disjunction over all E_{i,j}(x,y) / F_k(x,y)
int big_E(Formula& f, int D, int x, int y) {
  std::vector<int> kids;
  const int d2 = D * D;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j) kids.push_back(f.atom(rel_E(i, j, D), {x, y}));
  return f.lor(std::move(kids));
}

int big_F(Formula& f, int D, int x, int y) {
  std::vector<int> kids;
  const int d4 = D * D * D * D;
  for (int k = 0; k < d4; ++k) kids.push_back(f.atom(rel_F(k, D), {x, y}));
  return f.lor(std::move(kids));
}

int phi_root(Formula& f, int D, int x) {
  const int y = f.var_id("y_root");
  return f.forall(y, f.lnot(big_F(f, D, y, x)));
}

Formula make_tree(int D, const Signature& sig) {
  Formula f(sig);
  const int d4 = D * D * D * D;
  const int x = f.var_id("x"), y = f.var_id("y");

  const int root_clause = f.count_leq(1, x, phi_root(f, D, x));

  // root has an R self-loop; everyone else has exactly one parent and no R
  const int root_case =
      f.land({phi_root(f, D, x), f.atom(rel_R(D), {x, x})});
  const int nonroot_case =
      f.land({f.count_eq(1, y, big_F(f, D, y, x)),
              f.lnot(f.exists(y, f.atom(rel_R(D), {x, y}))),
              f.lnot(f.exists(y, f.atom(rel_R(D), {y, x})))});
  const int parent_clause = f.forall(x, f.lor({root_case, nonroot_case}));

  // leaf: no children, all L self-loops, no stray L tuples
  std::vector<int> leaf_parts;
  leaf_parts.push_back(f.lnot(f.exists(y, big_F(f, D, x, y))));
  for (int k = 0; k < d4; ++k)
    leaf_parts.push_back(f.atom(rel_L(k, D), {x, x}));
  {
    std::vector<int> no_stray;
    for (int k = 0; k < d4; ++k) {
      no_stray.push_back(f.lnot(f.atom(rel_L(k, D), {x, y})));
      no_stray.push_back(f.lnot(f.atom(rel_L(k, D), {y, x})));
    }
    leaf_parts.push_back(f.forall(
        y, f.implies(f.lnot(f.eq(y, x)), f.land(std::move(no_stray)))));
  }
  const int leaf_case = f.land(std::move(leaf_parts));

  // internal: no L at all, one child per colour, child colours exclusive
  std::vector<int> internal_parts;
  {
    std::vector<int> some_L;
    for (int k = 0; k < d4; ++k) {
      some_L.push_back(f.atom(rel_L(k, D), {x, y}));
      some_L.push_back(f.atom(rel_L(k, D), {y, x}));
    }
    internal_parts.push_back(f.lnot(f.exists(y, f.lor(std::move(some_L)))));
  }
  for (int k = 0; k < d4; ++k) {
    const int yk = f.var_id("y_k" + std::to_string(k));
    std::vector<int> parts;
    parts.push_back(f.lnot(f.eq(x, yk)));
    parts.push_back(f.atom(rel_F(k, D), {x, yk}));
    for (int k2 = 0; k2 < d4; ++k2)
      if (k2 != k) parts.push_back(f.lnot(f.atom(rel_F(k2, D), {x, yk})));
    parts.push_back(f.forall(
        y, f.implies(f.lnot(f.eq(y, yk)),
                     f.lnot(f.atom(rel_F(k, D), {x, y})))));
    internal_parts.push_back(f.exists(yk, f.land(std::move(parts))));
  }
  const int internal_case = f.land(std::move(internal_parts));

  const int leaf_or_internal = f.forall(x, f.lor({leaf_case, internal_case}));

  f.set_root(f.land({root_clause, parent_clause, leaf_or_internal}));
  return f;
}

Formula make_rotation_map(int D, const Signature& sig) {
  Formula f(sig);
  const int d2 = D * D;
  const int x = f.var_id("x"), y = f.var_id("y");

  std::vector<int> sym;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j)
      sym.push_back(f.implies(f.atom(rel_E(i, j, D), {x, y}),
                              f.atom(rel_E(j, i, D), {y, x})));
  const int symmetric = f.forall(x, f.forall(y, f.land(std::move(sym))));

  std::vector<int> per_label;
  for (int i = 0; i < d2; ++i) {
    std::vector<int> choices;
    for (int j = 0; j < d2; ++j) {
      std::vector<int> parts;
      parts.push_back(f.count_eq(1, y, f.atom(rel_E(i, j, D), {x, y})));
      for (int j2 = 0; j2 < d2; ++j2)
        if (j2 != j)
          parts.push_back(f.lnot(f.exists(y, f.atom(rel_E(i, j2, D), {x, y}))));
      choices.push_back(f.land(std::move(parts)));
    }
    per_label.push_back(f.lor(std::move(choices)));
  }
  const int functional = f.forall(x, f.land(std::move(per_label)));

  f.set_root(f.land({symmetric, functional}));
  return f;
}

// Root self-loops are the diagonal E_{i,i}(x,x); the printed all-pairs form
// contradicts the rotation-map clause (see the underlying graph's label map).
std::pair<Formula, long> make_base(int D, const Signature& sig,
                                   const RotMapGraph& H2) {
  Formula f(sig);
  const int d2 = D * D;
  const int x = f.var_id("x"), y = f.var_id("y"), y2 = f.var_id("y'");

  std::vector<int> parts;
  for (int i = 0; i < d2; ++i)
    for (int j = 0; j < d2; ++j) {
      if (i == j) parts.push_back(f.atom(rel_E(i, i, D), {x, x}));
      parts.push_back(f.forall(
          y, f.implies(f.lnot(f.eq(x, y)),
                       f.land({f.lnot(f.atom(rel_E(i, j, D), {x, y})),
                               f.lnot(f.atom(rel_E(i, j, D), {y, x}))}))));
    }

  long rot_conjuncts = 0;
  for (int k = 0; k < H2.size(); ++k)
    for (int i = 0; i < H2.degree(); ++i) {
      const RotEntry e = H2.rot(k, i);
      parts.push_back(f.exists(
          y, f.exists(y2, f.land({f.atom(rel_F(k, D), {x, y}),
                                  f.atom(rel_F(e.vertex, D), {x, y2}),
                                  f.atom(rel_E(i, e.label, D), {y, y2})}))));
      ++rot_conjuncts;
    }

  f.set_root(
      f.forall(x, f.implies(phi_root(f, D, x), f.land(std::move(parts)))));
  return {std::move(f), rot_conjuncts};
}

Formula make_recursion(int D, const Signature& sig, const RotMapGraph& H) {
  Formula f(sig);
  const int d2 = D * D;
  const int x = f.var_id("x"), y = f.var_id("y"), z = f.var_id("z");
  const int x2 = f.var_id("x'"), z2 = f.var_id("z'");

  const int childless = f.land({f.lnot(f.exists(y, big_F(f, D, x, y))),
                                f.lnot(f.exists(y, big_F(f, D, z, y)))});

  std::vector<int> conj;
  for (int k1 = 0; k1 < d2; ++k1)
    for (int l1 = 0; l1 < d2; ++l1)
      for (int k2 = 0; k2 < d2; ++k2)
        for (int l2 = 0; l2 < d2; ++l2) {
          // paths of length two are simple: x, y, z pairwise distinct
          const int path = f.land(
              {f.lnot(f.eq(x, z)),
               f.exists(y, f.land({f.lnot(f.eq(y, x)), f.lnot(f.eq(y, z)),
                                   f.atom(rel_E(k1, l1, D), {x, y}),
                                   f.atom(rel_E(k2, l2, D), {y, z})}))});
          // ROT_H(k, i) = ((k1,k2), i')  and  ROT_H((l2,l1), j) = (l, j')
          std::vector<int> children;
          const int kp = pair_id(k1, k2, d2);
          const int lp = pair_id(l2, l1, d2);
          for (int ip = 0; ip < D; ++ip) {
            const RotEntry a = H.rot(kp, ip);  // (k, i) with ROT_H(k,i)=(kp,ip)
            for (int j = 0; j < D; ++j) {
              const RotEntry b = H.rot(lp, j);  // (l, j')
              children.push_back(f.exists(
                  x2, f.exists(z2, f.land({f.atom(rel_F(a.vertex, D), {x, x2}),
                                           f.atom(rel_F(b.vertex, D), {z, z2}),
                                           f.atom(rel_E(pair_id(a.label, j, D),
                                                        pair_id(b.label, ip, D), D),
                                                  {x2, z2})}))));
            }
          }
          conj.push_back(f.implies(path, f.land(std::move(children))));
        }

  f.set_root(f.forall(
      x, f.forall(z, f.lor({childless, f.land(std::move(conj))}))));
  return f;
}

}  // namespace

// Rebuild src's tree inside dst, re-interning variables by name.
static int copy_into(Formula& dst, const Formula& src, int idx) {
  const FormulaNode& n = src.node(idx);
  switch (n.kind) {
    case NodeKind::Atom: {
      std::vector<int> vars;
      for (int v : n.vars) vars.push_back(dst.var_id(src.var_name(v)));
      return dst.atom(n.rel, std::move(vars));
    }
    case NodeKind::Eq:
      return dst.eq(dst.var_id(src.var_name(n.vars[0])),
                    dst.var_id(src.var_name(n.vars[1])));
    case NodeKind::Not:
      return dst.lnot(copy_into(dst, src, n.kids[0]));
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<int> kids;
      for (int k : n.kids) kids.push_back(copy_into(dst, src, k));
      return n.kind == NodeKind::And ? dst.land(std::move(kids))
                                     : dst.lor(std::move(kids));
    }
    case NodeKind::Implies: {
      const int a = copy_into(dst, src, n.kids[0]);
      const int b = copy_into(dst, src, n.kids[1]);
      return dst.implies(a, b);
    }
    case NodeKind::Exists:
      return dst.exists(dst.var_id(src.var_name(n.var)),
                        copy_into(dst, src, n.kids[0]));
    case NodeKind::Forall:
      return dst.forall(dst.var_id(src.var_name(n.var)),
                        copy_into(dst, src, n.kids[0]));
    case NodeKind::CountGeq:
      return dst.count_geq(n.count, dst.var_id(src.var_name(n.var)),
                           copy_into(dst, src, n.kids[0]));
    case NodeKind::CountEq:
      return dst.count_eq(n.count, dst.var_id(src.var_name(n.var)),
                          copy_into(dst, src, n.kids[0]));
    case NodeKind::CountLeq:
      return dst.count_leq(n.count, dst.var_id(src.var_name(n.var)),
                           copy_into(dst, src, n.kids[0]));
  }
  throw std::logic_error("copy_into: bad node");
}

ZigzagFormulas phi_zigzag(int D, const RotMapGraph& H, const RotMapGraph& H2) {
  const int d4 = D * D * D * D;
  if (H.degree() != D || H.size() != d4)
    throw std::invalid_argument("phi_zigzag: H must be D-regular on D^4 vertices");
  if (!(square(H) == H2))
    throw std::invalid_argument("phi_zigzag: H2 must be square(H)");

  Signature sig = zigzag_signature(D);
  auto [base, rot_conjuncts] = make_base(D, sig, H2);
  ZigzagFormulas out{sig,
                     make_tree(D, sig),
                     make_rotation_map(D, sig),
                     std::move(base),
                     make_recursion(D, sig, H),
                     Formula(sig),
                     rot_conjuncts};

  Formula conj(sig);
  std::vector<int> kids;
  for (const Formula* part :
       {&out.tree, &out.rotation_map, &out.base, &out.recursion})
    kids.push_back(copy_into(conj, *part, part->root()));
  conj.set_root(conj.land(std::move(kids)));
  out.conjunction = std::move(conj);
  return out;
}

}  // namespace zz
