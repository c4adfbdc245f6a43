#pragma once

// The opposite Kleisli category of the Sigma-tree monad on Set.
//
// A morphism A -> B is a map sending each element of B to a tree over the
// elements of A; composition is substitution.  Products are disjoint
// unions, the terminal object is the empty set, and >X is the set S'X of
// operation-rooted trees over X.  Morphisms are evaluated lazily with an
// explicit depth budget, so solutions of guarded systems (infinite trees)
// are only ever materialised up to the comparison depth k.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfix/category.hpp"
#include "gfix/sigma_tree.hpp"

namespace gfix::citm {

using tree::E;
using tree::Tree;

struct CitmObj;
using Obj = std::shared_ptr<const CitmObj>;

struct CitmObj {
  enum class Kind { base, sum, guard };
  std::string key;
  Kind kind = Kind::base;
  int n = 0;        // base
  Obj left, right;  // sum; `left` is the inner object of a guard
};

/// Lazily evaluated Kleisli map cod -> S(dom), memoised per normalised
/// element and budget.
class Impl {
 public:
  using Fn = std::function<Tree(E, int)>;
  explicit Impl(Fn fn) : fn_(std::move(fn)) {}
  Tree apply(E c, int budget) const;
  void set(Fn fn) { fn_ = std::move(fn); }

 private:
  Fn fn_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<E, int>, Tree> memo_;
};

struct Mor {
  Obj dom, cod;
  std::shared_ptr<Impl> impl;
  Tree operator()(E c, int budget) const { return impl->apply(c, budget); }
};

class CitmModel {
 public:
  using Obj = citm::Obj;
  using Mor = citm::Mor;

  explicit CitmModel(int depth = 8, tree::Signature sig = tree::Signature::standard(), int max_base = 3);

  int depth() const { return depth_; }
  const tree::Signature& signature() const { return sig_; }
  std::string name() const { return "citm"; }
  bool unique_dagger() const { return true; }
  bool preserves_products() const { return false; }
  bool uniform() const { return true; }

  Obj base(int n) const;
  Obj terminal() const { return base(0); }
  Obj product(const Obj& a, const Obj& b) const;
  std::pair<Obj, Obj> factors(const Obj& a) const;
  bool same(const Obj& a, const Obj& b) const { return a == b || a->key == b->key; }
  Obj dom(const Mor& f) const { return f.dom; }
  Obj cod(const Mor& f) const { return f.cod; }

  Mor id(const Obj& a) const;
  Mor compose(const Mor& f, const Mor& g) const;
  Mor proj_left(const Obj& a, const Obj& b) const;
  Mor proj_right(const Obj& a, const Obj& b) const;
  Mor pair(const Mor& f, const Mor& g) const;
  Mor bang(const Obj& a) const;

  Obj delay(const Obj& a) const;
  Mor delay_mor(const Mor& f) const;
  Mor point(const Obj& a) const;
  Mor dagger(const Mor& f) const;
  std::optional<Mor> can_inverse(const Obj&, const Obj&) const { return std::nullopt; }

  /// Depth-k agreement on every element of the codomain (a fixed
  /// deterministic sample when the codomain contains guarded trees).
  bool equal(const Mor& f, const Mor& g) const;
  std::optional<std::vector<Mor>> hom(const Obj& a, const Obj& b, std::size_t limit) const;
  Obj random_object(Rng& rng) const;
  std::optional<Mor> random_mor(const Obj& a, const Obj& b, Rng& rng) const;
  /// h is a renaming x' |-> x along a random surjection r : X' -> X;
  /// f2 is f read through r with every guarded tree pulled back along a
  /// randomly chosen section of r.
  std::optional<Premise<Mor>> premise_instance(const Obj& x, const Obj& x2, const Obj& a,
                                               const std::optional<Obj>& b, Rng& rng) const;

  json describe(const Obj& a) const;
  json describe(const Mor& f) const;

  bool finite(const Obj& a) const;
  /// All elements of a finite object, or a bounded deterministic sample.
  std::vector<E> elements(const Obj& a) const;
  /// Morphism given by a finite table on a finite codomain.
  Mor table(const Obj& dom, const Obj& cod, std::map<E, Tree> t) const;
  std::string print(Tree t) const { return tree::print(t, sig_); }

 private:
  Obj intern(std::shared_ptr<CitmObj> o) const;
  bool inhabited(const Obj& a) const;
  E random_elem(const Obj& a, Rng& rng) const;
  Tree random_tree(const Obj& a, int height, Rng& rng) const;
  Tree random_guarded(const Obj& a, int height, Rng& rng) const;

  int depth_;
  tree::Signature sig_;
  int max_base_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Obj> objects_;
};

}  // namespace gfix::citm
