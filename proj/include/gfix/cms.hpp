#pragma once

// Finite ultrametric spaces with distances 2^-e, stored as integer
// exponents e (kInf for equal points).  Base spaces are the words of
// length k over an alphabet of size a, at distance 2^-(first index where
// they differ).  The delay keeps the carrier and adds one to every
// exponent; products take the minimum exponent (the max metric).
// Morphisms are nonexpansive maps: e(fx, fy) >= e(x, y).

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfix/category.hpp"
#include "gfix/tabular.hpp"

namespace gfix::cms {

inline constexpr int kInf = 1 << 20;

struct SpaceObj;
using Obj = std::shared_ptr<const SpaceObj>;

struct SpaceObj {
  enum class Kind { words, terminal, product, delay };

  std::string key;
  Kind kind = Kind::words;
  Obj left, right;
  int alphabet = 0, depth = 0;  // words only
  int n = 0;
  std::vector<int> e;  // e[x * n + y]

  int exp(int x, int y) const { return e[static_cast<std::size_t>(x * n + y)]; }
};

struct Mor {
  Obj dom, cod;
  Tables comp;  // comp[0][x]
  int operator()(int x) const { return comp[0][static_cast<std::size_t>(x)]; }
};

struct NotNonexpansive : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class CmsModel {
 public:
  using Obj = cms::Obj;
  using Mor = cms::Mor;

  /// Random objects are word spaces with alphabet <= max_alphabet and
  /// length <= max_depth, or the one-point space.
  explicit CmsModel(int max_alphabet = 2, int max_depth = 3, std::size_t enum_limit = 256);

  std::string name() const { return "cms"; }
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

  int stages() const { return 1; }
  int size(const Obj& a, int) const { return a->n; }
  const Tables& tables(const Mor& f) const { return f.comp; }
  std::optional<Mor> from_tables(const Obj& dom, const Obj& cod, Tables t) const;

  Obj words(int alphabet, int depth) const;
  bool nonexpansive(const Obj& dom, const Obj& cod, const std::vector<int>& t) const;
  /// Throws NotNonexpansive.
  Mor make_mor(const Obj& dom, const Obj& cod, std::vector<int> table) const;
  /// Banach iteration of m |-> f . (p x Y) . <m, Y> from `start`.
  Mor iterate(const Mor& f, const Mor& start) const;

 private:
  Obj intern(std::shared_ptr<SpaceObj> o) const;
  std::vector<int> candidates(const Obj& a, const Obj& b, const std::vector<int>& t, int x) const;

  int max_alphabet_, max_depth_;
  std::size_t enum_limit_;
  Obj terminal_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, Obj> objects_;
  mutable std::unordered_map<std::string, std::optional<std::vector<Mor>>> homs_;
};

/// Word <-> index, first letter most significant.
int word_index(const std::vector<int>& w, int alphabet);
std::vector<int> word_at(int index, int alphabet, int depth);
std::string word_string(int index, int alphabet, int depth);

}  // namespace gfix::cms
