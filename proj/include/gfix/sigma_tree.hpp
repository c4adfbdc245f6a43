#pragma once

// Finite truncations of Sigma-trees, hash-consed in a process-wide store so
// that pointer equality is structural equality.
//
// A tree is an operation node (constants are nullary operations), a leaf
// carrying an element, or the cut marker.  Elements are atoms, left/right
// injections, or guarded trees (the elements of S'X).  Depth-k truncation:
// trunc_0 t = cut; leaves and constants survive any k >= 1; an operation
// with children becomes cut at k = 1 and is otherwise rebuilt from the
// (k-1)-truncations of its children.  A leaf element at depth d is
// normalised with the remaining budget k - d.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gfix::tree {

struct Node;
struct Elem;
using Tree = const Node*;
using E = const Elem*;

struct Elem {
  enum class Kind { atom, inl, inr, guard };
  Kind kind;
  int atom = 0;
  E inner = nullptr;
  Tree tree = nullptr;
  std::size_t hash = 0;
};

struct Node {
  enum class Kind { op, var, cut };
  Kind kind;
  int sym = -1;
  std::vector<Tree> kids;
  E elem = nullptr;
  std::size_t hash = 0;
};

E atom(int i);
E inl(E e);
E inr(E e);
E guard(Tree t);

Tree op(int sym, std::vector<Tree> kids = {});
Tree var(E e);
Tree cut();

/// Number of interned nodes and elements; for diagnostics.
std::size_t store_size();

Tree trunc(Tree t, int k);
E norm(E e, int k);

/// Replaces every leaf Var(e) at depth d by s(e, k - d); the result is
/// truncated at k.  s must return trees truncated at its budget.
using Subst = std::function<Tree(E, int)>;
Tree subst(Tree t, int k, const Subst& s);

/// Whether the root is an operation (the guarded summand S').
inline bool guarded(Tree t) { return t->kind == Node::Kind::op; }

struct Symbol {
  std::string name;
  int arity;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);
  /// c/0, s/1, */2
  static Signature standard();

  const std::vector<Symbol>& symbols() const { return symbols_; }
  int size() const { return static_cast<int>(symbols_.size()); }
  const Symbol& at(int i) const { return symbols_[static_cast<std::size_t>(i)]; }
  std::optional<int> find(std::string_view name) const;
  /// Index of some nullary symbol; every usable signature has one.
  int constant() const;

 private:
  std::vector<Symbol> symbols_;
};

using ElemPrinter = std::function<std::string(E)>;
std::string print(Tree t, const Signature& sig, const ElemPrinter& leaf);
std::string print_elem(E e, const Signature& sig);
/// Default rendering of elements: atoms as a<i>, injections as inl(..),
/// inr(..), guarded trees as >(..).
std::string print(Tree t, const Signature& sig);

// ------------------------------------------------------------ equations

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GuardednessError : std::runtime_error {
  GuardednessError(std::string var, std::string body)
      : std::runtime_error("equation for " + var + " is unguarded: right-hand side " + body +
                           " is only a recursion variable"),
        variable(std::move(var)) {}
  std::string variable;
};

struct MalformedTagging : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// x_i = body_i with leaves inl(atom j) for variable j and inr(atom j) for
/// parameter j.
struct EquationSystem {
  Signature sig;
  std::vector<std::string> vars, params;
  std::vector<Tree> bodies;

  std::string print_body(Tree t) const;
  /// Renders a tree whose leaves are atoms naming parameters.
  std::string print_solution(Tree t) const;
};

/// Throws GuardednessError naming the first bare-variable equation.
void check_guarded(const EquationSystem& sys);

/// Header `sig: *:2, c:0; vars: x1,x2; params: y1,y2`, then one line per
/// equation `x1 = *( x2, y1 )`.  Blank lines and `#` comments are skipped.
EquationSystem parse_system(std::string_view text);

/// Depth-k truncations of the unique solution, one tree over parameter
/// atoms per variable.  Throws GuardednessError.
std::vector<Tree> solve(const EquationSystem& sys, int depth);

/// The solution square at depth k: trunc_k(body_x[cand]) == trunc_k(cand_x).
bool check_solution_square(const EquationSystem& sys, const std::vector<Tree>& cand, int depth);

/// f : X -> S(S'X + Y): leaves are inl(guard(t)) with t an
/// operation-rooted tree over variable atoms, or inr(atom j).
struct TaggedSystem {
  Signature sig;
  std::vector<std::string> vars, params;
  std::vector<Tree> rhs;
};

enum class Summand { operation, parameter };

struct Factorisation {
  EquationSystem flat;
  /// Per variable: the summand of S'(X+Y) + Y its flattened body lies in.
  std::vector<Summand> certificate;
};

/// Flattens inl(guard t) to t (variables re-tagged inl) and inr y to y.
/// Throws MalformedTagging.
Factorisation guardedness_factor(const TaggedSystem& f);

std::vector<Tree> dagger_citm(const TaggedSystem& f, int depth);

}  // namespace gfix::tree
