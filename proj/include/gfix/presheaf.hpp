#pragma once

// Finite-set-valued presheaves on a finite well-founded poset W.
//
// The delay of X at stage w is the set of compatible families
// (x_v)_{v<w}; at a minimal stage it is the one-element set holding the
// empty family.  The dagger is computed by well-founded induction over a
// fixed topological order of W and is the unique solution of the
// fixpoint square.  A chain 0 < 1 < ... < n-1 gives a finite truncation
// of the topos of trees; a one-point W gives the constant delay >X = 1.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfix/category.hpp"
#include "gfix/tabular.hpp"

namespace gfix::presheaf {

class FinPoset {
 public:
  /// `leq` lists pairs (a, b) meaning a <= b; the reflexive-transitive
  /// closure is taken.  Throws std::invalid_argument when the closure is
  /// not antisymmetric.
  FinPoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& leq);

  static FinPoset chain(int n);
  static FinPoset antichain(int n);
  /// 0 < a, b < 1
  static FinPoset diamond();
  /// chainN, antichainN or diamond
  static FinPoset named(const std::string& spec);

  int size() const { return static_cast<int>(names_.size()); }
  bool leq(int a, int b) const { return le_[idx(a, b)] != 0; }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  bool minimal(int w) const { return below_[static_cast<std::size_t>(w)].empty(); }
  /// Strictly smaller stages of w, in topological order.
  const std::vector<int>& below(int w) const { return below_[static_cast<std::size_t>(w)]; }
  /// Position of v inside below(w), or -1.
  int below_pos(int w, int v) const { return pos_[idx(w, v)]; }
  /// All stages, minimal first.
  const std::vector<int>& topo() const { return topo_; }
  const std::string& name(int w) const { return names_[static_cast<std::size_t>(w)]; }
  int index(const std::string& name) const;
  const std::string& label() const { return label_; }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * names_.size() + static_cast<std::size_t>(b);
  }

  std::vector<std::string> names_;
  std::vector<char> le_;
  std::vector<std::vector<int>> below_;
  std::vector<int> pos_;
  std::vector<int> topo_;
  std::string label_;
};

struct PresheafObj;
using Obj = std::shared_ptr<const PresheafObj>;

struct PresheafObj {
  enum class Kind { base, terminal, product, delay };

  std::string key;
  Kind kind = Kind::base;
  Obj left, right;  // product factors; `left` is the inner object of a delay
  std::vector<int> sizes;
  // restrict[w][j] : X(w) -> X(below(w)[j])
  std::vector<std::vector<std::vector<int>>> restrict;
  // Delay objects only: families[w][i] lists the inner element at each
  // below(w)[j]; family_index[w] inverts it.
  std::vector<std::vector<std::vector<int>>> families;
  std::vector<std::map<std::vector<int>, int>> family_index;

  int at(int w) const { return sizes[static_cast<std::size_t>(w)]; }
};

struct Mor {
  Obj dom, cod;
  Tables comp;  // comp[w][x]
};

/// Restriction X(w >= v)(x); identity when v == w.
int restrict_to(const FinPoset& W, const PresheafObj& X, int w, int v, int x);

struct GenOptions {
  int max_set = 3;
  std::size_t enum_limit = 256;
};

class PresheafModel {
 public:
  using Obj = presheaf::Obj;
  using Mor = presheaf::Mor;

  explicit PresheafModel(FinPoset W, GenOptions opts = {});

  const FinPoset& poset() const { return W_; }
  std::string name() const { return "presheaf/" + W_.label(); }
  bool unique_dagger() const { return true; }
  bool preserves_products() const { return true; }
  bool uniform() const { return true; }

  Obj terminal() const { return terminal_; }
  Obj product(const Obj& a, const Obj& b) const;
  std::pair<Obj, Obj> factors(const Obj& a) const;
  bool same(const Obj& a, const Obj& b) const { return a == b || a->key == b->key; }
  Obj dom(const Mor& f) const { return f.dom; }
  Obj cod(const Mor& f) const { return f.cod; }

  Mor id(const Obj& a) const;
  /// f then g.
  Mor compose(const Mor& f, const Mor& g) const;
  Mor proj_left(const Obj& a, const Obj& b) const;
  Mor proj_right(const Obj& a, const Obj& b) const;
  Mor pair(const Mor& f, const Mor& g) const;
  Mor bang(const Obj& a) const;

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

  int stages() const { return W_.size(); }
  int size(const Obj& a, int stage) const { return a->at(stage); }
  const Tables& tables(const Mor& f) const { return f.comp; }
  std::optional<Mor> from_tables(const Obj& dom, const Obj& cod, Tables t) const;

  /// Builds and validates a base presheaf from stage sizes and the
  /// restriction tables restrict[w][j] to below(w)[j].
  Obj make_presheaf(std::vector<int> sizes,
                    std::vector<std::vector<std::vector<int>>> restrict) const;
  /// Constant presheaf with identity restrictions.
  Obj constant(int n) const;
  bool natural(const Mor& f) const;

  /// can : >(X x Y) -> >X x >Y is a bijection at every stage.
  bool check_weak_model(const Obj& a, const Obj& b) const;

 private:
  Obj intern(Obj o) const;
  void require_composable(const Obj& a, const Obj& b) const;
  bool enumerate(const Obj& a, const Obj& b, std::size_t limit, std::vector<Mor>& out) const;
  std::optional<Mor> random_dfs(const Obj& a, const Obj& b, Rng& rng) const;

  FinPoset W_;
  GenOptions opts_;
  Obj terminal_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Obj> objects_;
  mutable std::unordered_map<std::string, std::optional<std::vector<Mor>>> homs_;
};

/// Compatible families of a (possibly partially built) presheaf at stage
/// w, listed in lexicographic order over below(w).
std::vector<std::vector<int>> compatible_families(
    const FinPoset& W, const std::vector<int>& sizes,
    const std::vector<std::vector<std::vector<int>>>& restrict, int w);

/// Loaded literal: {"poset": {"elems": [...], "leq": [[a,b],...]},
///                  "sheaf": {"at": {w: [names]}, "restrict": {w: {v: {x: y}}}}}
struct Literal {
  FinPoset poset;
  std::vector<std::vector<std::string>> element_names;
  std::vector<int> sizes;
  std::vector<std::vector<std::vector<int>>> restrict;
};

FinPoset poset_from_json(const json& j);
Literal literal_from_json(const json& j);

}  // namespace gfix::presheaf
