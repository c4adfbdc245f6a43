#pragma once

// Finite posets and monotone maps.  Two delays are offered:
//
//   Delay::lift      >X = X_bot, p_X the embedding, dagger by Kleene
//                    iteration from the everywhere-bottom map.
//   Delay::identity  >X = X on pointed posets, p = id, dagger = least
//                    fixpoint of y |-> f(-, y).
//
// Lifted elements are indexed with 0 as bottom and i+1 for x_i.  Product
// elements are indexed i * |B| + j and ordered componentwise.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfix/category.hpp"
#include "gfix/tabular.hpp"

namespace gfix::cpolift {

struct PosetObj;
using Obj = std::shared_ptr<const PosetObj>;

struct PosetObj {
  enum class Kind { base, terminal, product, lift };

  std::string key;
  Kind kind = Kind::base;
  Obj left, right;  // product factors; `left` is the inner poset of a lift
  int n = 0;
  std::vector<char> le;  // le[a * n + b] : a <= b

  bool leq(int a, int b) const { return le[static_cast<std::size_t>(a * n + b)] != 0; }
};

struct Mor {
  Obj dom, cod;
  Tables comp;  // a single stage: comp[0][x]
  int operator()(int x) const { return comp[0][static_cast<std::size_t>(x)]; }
};

enum class Delay { lift, identity };

struct NotMonotone : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class LiftModel {
 public:
  using Obj = cpolift::Obj;
  using Mor = cpolift::Mor;

  explicit LiftModel(Delay delay = Delay::lift, int max_size = 3, std::size_t enum_limit = 256);

  Delay mode() const { return mode_; }
  std::string name() const { return mode_ == Delay::lift ? "cpolift" : "cpolift/identity"; }
  bool unique_dagger() const { return false; }
  bool preserves_products() const { return mode_ == Delay::identity; }
  // Least fixpoints are uniform along every h when > adds a bottom (>h is
  // strict); with > = Id only strict h qualify.
  bool uniform() const { return mode_ == Delay::lift; }

  Obj terminal() const { return terminal_; }
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

  /// X_bot, regardless of mode.
  Obj lift(const Obj& a) const;
  Obj delay(const Obj& a) const;
  Mor delay_mor(const Mor& f) const;
  Mor point(const Obj& a) const;
  Mor dagger(const Mor& f) const;
  std::optional<Mor> can_inverse(const Obj& a, const Obj& b) const;

  bool equal(const Mor& f, const Mor& g) const;
  std::optional<std::vector<Mor>> hom(const Obj& a, const Obj& b, std::size_t limit) const;
  Obj random_object(Rng& rng) const;
  std::optional<Mor> random_mor(const Obj& a, const Obj& b, Rng& rng) const;
  std::optional<Premise<Mor>> premise_instance(const Obj& x, const Obj& x2, const Obj& a,
                                               const std::optional<Obj>& b, Rng& rng) const {
    return tabular_premise(*this, x, x2, a, b, rng);
  }

  json describe(const Obj& a) const;
  json describe(const Mor& f) const;

  int stages() const { return 1; }
  int size(const Obj& a, int) const { return a->n; }
  const Tables& tables(const Mor& f) const { return f.comp; }
  std::optional<Mor> from_tables(const Obj& dom, const Obj& cod, Tables t) const;

  /// Poset on n elements from pairs (a, b) meaning a <= b, closed
  /// reflexively and transitively.
  Obj make_poset(int n, const std::vector<std::pair<int, int>>& leq) const;
  /// Throws NotMonotone.
  Mor make_mor(const Obj& dom, const Obj& cod, std::vector<int> table) const;
  bool monotone(const Obj& dom, const Obj& cod, const std::vector<int>& table) const;
  /// Least element, if any.
  std::optional<int> bottom(const Obj& a) const;
  /// Pointwise order on parallel maps.
  bool below(const Mor& f, const Mor& g) const;

  /// The Kleene chain s_0 = bot, s_{n+1} = p . f . <s_n, Y> in the lift
  /// mode; returns its limit s : Y -> X_bot.
  Mor kleene(const Mor& f) const;

 private:
  Obj intern(std::shared_ptr<PosetObj> o) const;
  bool enumerate(const Obj& a, const Obj& b, std::size_t limit, std::vector<Mor>& out) const;
  std::vector<int> candidates(const Obj& a, const Obj& b, const std::vector<int>& t, int x) const;

  Delay mode_;
  int max_size_;
  std::size_t enum_limit_;
  Obj terminal_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Obj> objects_;
  mutable std::unordered_map<std::string, std::optional<std::vector<Mor>>> homs_;
};

/// The data of the two-chain example: X = {0 < 1}, f : X_bot x 1 -> X
/// with f(bot) = f(0) = 0 and f(1) = 1.
Mor two_chain_example(const LiftModel& m);

/// f++ against (f . (Delta x Y))+ for f : X_bot x (X_bot x Y) -> X.
struct DoubleDaggerCheck {
  bool holds;
  Mor lhs, rhs;
};
DoubleDaggerCheck check_lift_double_dagger(const LiftModel& m, const Mor& f);

}  // namespace gfix::cpolift
