#include "gfix/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace gfix::presheaf {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------- FinPoset

FinPoset::FinPoset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& leq)
    : names_(std::move(names)) {
  const int n = size();
  le_.assign(static_cast<std::size_t>(n * n), 0);
  for (int a = 0; a < n; ++a) le_[idx(a, a)] = 1;
  for (auto [a, b] : leq) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("poset: pair out of range");
    le_[idx(a, b)] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (le_[idx(a, k)] && le_[idx(k, b)]) le_[idx(a, b)] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && le_[idx(a, b)] && le_[idx(b, a)])
        throw std::invalid_argument("poset: relation is not antisymmetric at " + names_[static_cast<std::size_t>(a)] +
                                    ", " + names_[static_cast<std::size_t>(b)]);

  // Sorting by the number of strictly smaller elements is a linear extension.
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (less(b, a)) ++count[static_cast<std::size_t>(a)];
  topo_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) topo_[static_cast<std::size_t>(i)] = i;
  std::stable_sort(topo_.begin(), topo_.end(), [&](int a, int b) {
    return count[static_cast<std::size_t>(a)] < count[static_cast<std::size_t>(b)];
  });

  below_.assign(static_cast<std::size_t>(n), {});
  pos_.assign(static_cast<std::size_t>(n * n), -1);
  for (int w = 0; w < n; ++w) {
    auto& bl = below_[static_cast<std::size_t>(w)];
    for (int v : topo_)
      if (less(v, w)) bl.push_back(v);
    for (std::size_t j = 0; j < bl.size(); ++j) pos_[idx(w, bl[j])] = static_cast<int>(j);
  }
  label_ = "W" + std::to_string(n);
}

FinPoset FinPoset::chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i) leq.emplace_back(i - 1, i);
  }
  FinPoset p(std::move(names), leq);
  p.label_ = "chain" + std::to_string(n);
  return p;
}

FinPoset FinPoset::antichain(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  FinPoset p(std::move(names), {});
  p.label_ = "antichain" + std::to_string(n);
  return p;
}

FinPoset FinPoset::diamond() {
  FinPoset p({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  p.label_ = "diamond";
  return p;
}

FinPoset FinPoset::named(const std::string& spec) {
  auto tail = [&](std::size_t n) { return std::stoi(spec.substr(n)); };
  if (spec == "diamond") return diamond();
  if (spec.rfind("chain", 0) == 0 && spec.size() > 5) return chain(tail(5));
  if (spec.rfind("antichain", 0) == 0 && spec.size() > 9) return antichain(tail(9));
  throw std::invalid_argument("unknown poset '" + spec + "'");
}

int FinPoset::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("poset: unknown stage '" + name + "'");
}

// ---------------------------------------------------------------- helpers

int restrict_to(const FinPoset& W, const PresheafObj& X, int w, int v, int x) {
  if (v == w) return x;
  int j = W.below_pos(w, v);
  if (j < 0) throw std::logic_error("restriction along non-comparable stages");
  return X.restrict[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)][static_cast<std::size_t>(x)];
}

std::vector<std::vector<int>> compatible_families(
    const FinPoset& W, const std::vector<int>& sizes,
    const std::vector<std::vector<std::vector<int>>>& restrict, int w) {
  const auto& bl = W.below(w);
  std::vector<std::vector<int>> out;
  std::vector<int> fam(bl.size(), -1);
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == bl.size()) {
      out.push_back(fam);
      return;
    }
    int v = bl[j];
    for (int x = 0; x < sizes[static_cast<std::size_t>(v)]; ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < j && ok; ++i) {
        int u = bl[i];
        if (!W.less(u, v)) continue;
        int pu = W.below_pos(v, u);
        ok = restrict[static_cast<std::size_t>(v)][static_cast<std::size_t>(pu)][static_cast<std::size_t>(x)] == fam[i];
      }
      if (!ok) continue;
      fam[j] = x;
      go(j + 1);
    }
    fam[j] = -1;
  };
  go(0);
  return out;
}

// ---------------------------------------------------------------- model

PresheafModel::PresheafModel(FinPoset W, GenOptions opts) : W_(std::move(W)), opts_(opts) {
  auto t = std::make_shared<PresheafObj>();
  t->key = "1";
  t->kind = PresheafObj::Kind::terminal;
  t->sizes.assign(static_cast<std::size_t>(W_.size()), 1);
  t->restrict.resize(static_cast<std::size_t>(W_.size()));
  for (int w = 0; w < W_.size(); ++w)
    t->restrict[static_cast<std::size_t>(w)].assign(W_.below(w).size(), std::vector<int>{0});
  terminal_ = intern(t);
}

Obj PresheafModel::intern(Obj o) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = objects_.emplace(o->key, o);
  return it->second;
}

void PresheafModel::require_composable(const Obj& a, const Obj& b) const {
  if (!same(a, b)) throw CompositionError(a->key, b->key);
}

Obj PresheafModel::make_presheaf(std::vector<int> sizes,
                                 std::vector<std::vector<std::vector<int>>> restrict) const {
  const int n = W_.size();
  if (static_cast<int>(sizes.size()) != n || static_cast<int>(restrict.size()) != n)
    throw std::invalid_argument("presheaf: wrong number of stages");
  for (int w = 0; w < n; ++w) {
    auto wi = static_cast<std::size_t>(w);
    if (sizes[wi] < 0) throw std::invalid_argument("presheaf: negative stage size");
    if (restrict[wi].size() != W_.below(w).size())
      throw std::invalid_argument("presheaf: stage " + W_.name(w) + " needs one table per smaller stage");
    for (std::size_t j = 0; j < restrict[wi].size(); ++j) {
      int v = W_.below(w)[j];
      if (static_cast<int>(restrict[wi][j].size()) != sizes[wi])
        throw std::invalid_argument("presheaf: restriction table has wrong length");
      for (int y : restrict[wi][j])
        if (y < 0 || y >= sizes[static_cast<std::size_t>(v)])
          throw std::invalid_argument("presheaf: restriction value out of range");
    }
  }
  auto o = std::make_shared<PresheafObj>();
  o->sizes = std::move(sizes);
  o->restrict = std::move(restrict);
  for (int w = 0; w < n; ++w)
    for (int v : W_.below(w))
      for (int u : W_.below(v))
        for (int x = 0; x < o->at(w); ++x)
          if (restrict_to(W_, *o, v, u, restrict_to(W_, *o, w, v, x)) != restrict_to(W_, *o, w, u, x))
            throw std::invalid_argument("presheaf: restrictions are not functorial");
  std::ostringstream key;
  key << "P{" << join_ints(o->sizes);
  for (const auto& st : o->restrict)
    for (const auto& t : st) key << '|' << join_ints(t);
  key << '}';
  o->key = key.str();
  return intern(o);
}

Obj PresheafModel::constant(int n) const {
  std::vector<int> sizes(static_cast<std::size_t>(W_.size()), n);
  std::vector<std::vector<std::vector<int>>> restrict(static_cast<std::size_t>(W_.size()));
  std::vector<int> ident(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ident[static_cast<std::size_t>(i)] = i;
  for (int w = 0; w < W_.size(); ++w)
    restrict[static_cast<std::size_t>(w)].assign(W_.below(w).size(), ident);
  return make_presheaf(std::move(sizes), std::move(restrict));
}

Obj PresheafModel::product(const Obj& a, const Obj& b) const {
  std::string key = "(" + a->key + " x " + b->key + ")";
  {
    std::lock_guard lock(mu_);
    if (auto it = objects_.find(key); it != objects_.end()) return it->second;
  }
  auto o = std::make_shared<PresheafObj>();
  o->key = key;
  o->kind = PresheafObj::Kind::product;
  o->left = a;
  o->right = b;
  const int n = W_.size();
  o->sizes.resize(static_cast<std::size_t>(n));
  o->restrict.resize(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    auto wi = static_cast<std::size_t>(w);
    o->sizes[wi] = a->at(w) * b->at(w);
    for (std::size_t j = 0; j < W_.below(w).size(); ++j) {
      int v = W_.below(w)[j];
      std::vector<int> t(static_cast<std::size_t>(o->sizes[wi]));
      for (int i = 0; i < a->at(w); ++i)
        for (int k = 0; k < b->at(w); ++k)
          t[static_cast<std::size_t>(i * b->at(w) + k)] =
              a->restrict[wi][j][static_cast<std::size_t>(i)] * b->at(v) + b->restrict[wi][j][static_cast<std::size_t>(k)];
      o->restrict[wi].push_back(std::move(t));
    }
  }
  return intern(o);
}

std::pair<Obj, Obj> PresheafModel::factors(const Obj& a) const {
  if (a->kind != PresheafObj::Kind::product) throw ShapeError("not a product object: " + a->key);
  return {a->left, a->right};
}

Obj PresheafModel::delay(const Obj& a) const {
  std::string key = ">" + a->key;
  {
    std::lock_guard lock(mu_);
    if (auto it = objects_.find(key); it != objects_.end()) return it->second;
  }
  auto o = std::make_shared<PresheafObj>();
  o->key = key;
  o->kind = PresheafObj::Kind::delay;
  o->left = a;
  const int n = W_.size();
  o->sizes.resize(static_cast<std::size_t>(n));
  o->restrict.resize(static_cast<std::size_t>(n));
  o->families.resize(static_cast<std::size_t>(n));
  o->family_index.resize(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    auto wi = static_cast<std::size_t>(w);
    o->families[wi] = compatible_families(W_, a->sizes, a->restrict, w);
    o->sizes[wi] = static_cast<int>(o->families[wi].size());
    for (std::size_t i = 0; i < o->families[wi].size(); ++i)
      o->family_index[wi].emplace(o->families[wi][i], static_cast<int>(i));
  }
  for (int w = 0; w < n; ++w) {
    auto wi = static_cast<std::size_t>(w);
    for (int v : W_.below(w)) {
      auto vi = static_cast<std::size_t>(v);
      std::vector<int> t;
      for (const auto& fam : o->families[wi]) {
        std::vector<int> sub;
        for (int u : W_.below(v)) sub.push_back(fam[static_cast<std::size_t>(W_.below_pos(w, u))]);
        t.push_back(o->family_index[vi].at(sub));
      }
      o->restrict[wi].push_back(std::move(t));
    }
  }
  return intern(o);
}

Mor PresheafModel::id(const Obj& a) const {
  Mor f{a, a, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w)
    for (int x = 0; x < a->at(w); ++x) f.comp[static_cast<std::size_t>(w)].push_back(x);
  return f;
}

Mor PresheafModel::compose(const Mor& f, const Mor& g) const {
  require_composable(f.cod, g.dom);
  Mor h{f.dom, g.cod, f.comp};
  for (std::size_t w = 0; w < h.comp.size(); ++w)
    for (int& x : h.comp[w]) x = g.comp[w][static_cast<std::size_t>(x)];
  return h;
}

Mor PresheafModel::proj_left(const Obj& a, const Obj& b) const {
  Obj p = product(a, b);
  Mor f{p, a, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w)
    for (int i = 0; i < p->at(w); ++i) f.comp[static_cast<std::size_t>(w)].push_back(i / b->at(w));
  return f;
}

Mor PresheafModel::proj_right(const Obj& a, const Obj& b) const {
  Obj p = product(a, b);
  Mor f{p, b, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w)
    for (int i = 0; i < p->at(w); ++i) f.comp[static_cast<std::size_t>(w)].push_back(i % b->at(w));
  return f;
}

Mor PresheafModel::pair(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom)) throw ShapeError("pairing morphisms with different domains");
  Mor h{f.dom, product(f.cod, g.cod), Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w) {
    auto wi = static_cast<std::size_t>(w);
    for (std::size_t x = 0; x < f.comp[wi].size(); ++x)
      h.comp[wi].push_back(f.comp[wi][x] * g.cod->at(w) + g.comp[wi][x]);
  }
  return h;
}

Mor PresheafModel::bang(const Obj& a) const {
  Mor f{a, terminal_, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w) f.comp[static_cast<std::size_t>(w)].assign(static_cast<std::size_t>(a->at(w)), 0);
  return f;
}

Mor PresheafModel::delay_mor(const Mor& f) const {
  Obj da = delay(f.dom), db = delay(f.cod);
  Mor h{da, db, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w) {
    auto wi = static_cast<std::size_t>(w);
    const auto& bl = W_.below(w);
    for (const auto& fam : da->families[wi]) {
      std::vector<int> img(fam.size());
      for (std::size_t j = 0; j < fam.size(); ++j)
        img[j] = f.comp[static_cast<std::size_t>(bl[j])][static_cast<std::size_t>(fam[j])];
      h.comp[wi].push_back(db->family_index[wi].at(img));
    }
  }
  return h;
}

Mor PresheafModel::point(const Obj& a) const {
  Obj da = delay(a);
  Mor h{a, da, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w = 0; w < W_.size(); ++w) {
    auto wi = static_cast<std::size_t>(w);
    for (int x = 0; x < a->at(w); ++x) {
      std::vector<int> fam;
      for (int v : W_.below(w)) fam.push_back(restrict_to(W_, *a, w, v, x));
      h.comp[wi].push_back(da->family_index[wi].at(fam));
    }
  }
  return h;
}

Mor PresheafModel::dagger(const Mor& f) const {
  Obj xo = f.cod;
  auto [dx, y] = factors(f.dom);
  Obj d = delay(xo);
  if (!same(dx, d)) throw ShapeError("dagger argument must have shape >X x Y -> X");
  Mor sol{y, xo, Tables(static_cast<std::size_t>(W_.size()))};
  for (int w : W_.topo()) {
    auto wi = static_cast<std::size_t>(w);
    auto& out = sol.comp[wi];
    out.resize(static_cast<std::size_t>(y->at(w)));
    for (int yy = 0; yy < y->at(w); ++yy) {
      std::vector<int> fam;
      for (int v : W_.below(w))
        fam.push_back(sol.comp[static_cast<std::size_t>(v)][static_cast<std::size_t>(restrict_to(W_, *y, w, v, yy))]);
      auto it = d->family_index[wi].find(fam);
      if (it == d->family_index[wi].end()) throw std::logic_error("dagger: argument is not natural");
      out[static_cast<std::size_t>(yy)] = f.comp[wi][static_cast<std::size_t>(it->second * y->at(w) + yy)];
    }
  }
  return sol;
}

std::optional<Mor> PresheafModel::can_inverse(const Obj& a, const Obj& b) const {
  return tabular_can_inverse(*this, a, b);
}

bool PresheafModel::check_weak_model(const Obj& a, const Obj& b) const {
  return can_inverse(a, b).has_value();
}

bool PresheafModel::equal(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom) || !same(f.cod, g.cod)) throw ShapeError("comparing non-parallel morphisms");
  return f.comp == g.comp;
}

bool PresheafModel::natural(const Mor& f) const {
  for (int w = 0; w < W_.size(); ++w)
    for (int v : W_.below(w))
      for (int x = 0; x < f.dom->at(w); ++x) {
        int lhs = restrict_to(W_, *f.cod, w, v, f.comp[static_cast<std::size_t>(w)][static_cast<std::size_t>(x)]);
        int rhs = f.comp[static_cast<std::size_t>(v)][static_cast<std::size_t>(restrict_to(W_, *f.dom, w, v, x))];
        if (lhs != rhs) return false;
      }
  return true;
}

std::optional<Mor> PresheafModel::from_tables(const Obj& dom, const Obj& cod, Tables t) const {
  if (static_cast<int>(t.size()) != W_.size()) return std::nullopt;
  for (int w = 0; w < W_.size(); ++w) {
    const auto& c = t[static_cast<std::size_t>(w)];
    if (static_cast<int>(c.size()) != dom->at(w)) return std::nullopt;
    for (int y : c)
      if (y < 0 || y >= cod->at(w)) return std::nullopt;
  }
  Mor f{dom, cod, std::move(t)};
  if (!natural(f)) return std::nullopt;
  return f;
}

namespace {

// Natural transformations are built from maximal stages downwards:
// choosing f_w(x) = y forces f_v(X(w>=v)x) = Y(w>=v)y below w, so
// conflicting choices are detected as soon as they are made.
class NatSearch {
 public:
  NatSearch(const FinPoset& W, const PresheafObj& a, const PresheafObj& b) : W_(W), a_(a), b_(b) {
    comp_.resize(static_cast<std::size_t>(W.size()));
    for (int w = 0; w < W.size(); ++w) comp_[static_cast<std::size_t>(w)].assign(static_cast<std::size_t>(a.at(w)), -1);
    const auto& topo = W.topo();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
      for (int x = 0; x < a.at(*it); ++x) slots_.emplace_back(*it, x);
  }

  /// Visits complete assignments until `visit` returns false or the node
  /// budget runs out; returns false on budget exhaustion.
  template <class Order, class Visit>
  bool run(long budget, Order order, Visit visit) {
    budget_ = budget;
    stop_ = false;
    go(0, order, visit);
    return budget_ >= 0;
  }

  const Tables& comp() const { return comp_; }

 private:
  int& at(int w, int x) { return comp_[static_cast<std::size_t>(w)][static_cast<std::size_t>(x)]; }

  bool assign(int w, int x, int y) {
    at(w, x) = y;
    trail_.emplace_back(w, x);
    for (int v : W_.below(w)) {
      int xv = restrict_to(W_, a_, w, v, x), yv = restrict_to(W_, b_, w, v, y);
      int& slot = at(v, xv);
      if (slot == -1) {
        slot = yv;
        trail_.emplace_back(v, xv);
      } else if (slot != yv) {
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      at(trail_.back().first, trail_.back().second) = -1;
      trail_.pop_back();
    }
  }

  template <class Order, class Visit>
  void go(std::size_t i, Order& order, Visit& visit) {
    if (stop_) return;
    if (--budget_ < 0) {
      stop_ = true;
      return;
    }
    if (i == slots_.size()) {
      if (!visit(comp_)) stop_ = true;
      return;
    }
    auto [w, x] = slots_[i];
    if (at(w, x) != -1) {
      go(i + 1, order, visit);
      return;
    }
    std::vector<int> c(static_cast<std::size_t>(b_.at(w)));
    for (int y = 0; y < b_.at(w); ++y) c[static_cast<std::size_t>(y)] = y;
    order(c);
    for (int y : c) {
      std::size_t mark = trail_.size();
      if (assign(w, x, y)) go(i + 1, order, visit);
      undo(mark);
      if (stop_) return;
    }
  }

  const FinPoset& W_;
  const PresheafObj& a_;
  const PresheafObj& b_;
  Tables comp_;
  std::vector<std::pair<int, int>> slots_;
  std::vector<std::pair<int, int>> trail_;
  long budget_ = 0;
  bool stop_ = false;
};

constexpr long kEnumBudget = 2000000;
constexpr long kRandomBudget = 200000;

}  // namespace

bool PresheafModel::enumerate(const Obj& a, const Obj& b, std::size_t limit, std::vector<Mor>& out) const {
  NatSearch s(W_, *a, *b);
  bool overflow = false;
  bool done = s.run(kEnumBudget, [](std::vector<int>&) {}, [&](const Tables& t) {
    if (out.size() >= limit) {
      overflow = true;
      return false;
    }
    out.push_back(Mor{a, b, t});
    return true;
  });
  return done && !overflow;
}

std::optional<std::vector<Mor>> PresheafModel::hom(const Obj& a, const Obj& b, std::size_t limit) const {
  std::vector<Mor> out;
  if (!enumerate(a, b, limit, out)) return std::nullopt;
  return out;
}

std::optional<Mor> PresheafModel::random_dfs(const Obj& a, const Obj& b, Rng& rng) const {
  NatSearch s(W_, *a, *b);
  std::optional<Mor> found;
  s.run(kRandomBudget, [&](std::vector<int>& c) { rng.shuffle(c); }, [&](const Tables& t) {
    found = Mor{a, b, t};
    return false;
  });
  return found;
}

std::optional<Mor> PresheafModel::random_mor(const Obj& a, const Obj& b, Rng& rng) const {
  std::string key = a->key + "->" + b->key;
  std::optional<std::vector<Mor>> all;
  bool cached = false;
  {
    std::lock_guard lock(mu_);
    if (auto it = homs_.find(key); it != homs_.end()) {
      all = it->second;
      cached = true;
    }
  }
  if (!cached) {
    all = hom(a, b, opts_.enum_limit);
    std::lock_guard lock(mu_);
    homs_.emplace(key, all);
  }
  if (all) {
    if (all->empty()) return std::nullopt;
    return rng.pick(*all);
  }
  return random_dfs(a, b, rng);
}

Obj PresheafModel::random_object(Rng& rng) const {
  if (rng.chance(1, 8)) return terminal_;
  const int n = W_.size();
  std::vector<int> sizes(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<std::vector<int>>> restrict(static_cast<std::size_t>(n));
  for (int w : W_.topo()) {
    auto wi = static_cast<std::size_t>(w);
    restrict[wi].assign(W_.below(w).size(), {});
    auto fams = compatible_families(W_, sizes, restrict, w);
    int sz = (fams.empty() || rng.chance(1, 12)) ? 0 : rng.range(1, opts_.max_set);
    sizes[wi] = sz;
    for (int x = 0; x < sz; ++x) {
      const auto& fam = rng.pick(fams);
      for (std::size_t j = 0; j < fam.size(); ++j) restrict[wi][j].push_back(fam[j]);
    }
  }
  return make_presheaf(std::move(sizes), std::move(restrict));
}

json PresheafModel::describe(const Obj& a) const {
  return json{{"key", a->key}, {"sizes", a->sizes}};
}

json PresheafModel::describe(const Mor& f) const {
  json comps = json::object();
  for (int w = 0; w < W_.size(); ++w) comps[W_.name(w)] = f.comp[static_cast<std::size_t>(w)];
  return json{{"dom", f.dom->key}, {"cod", f.cod->key}, {"components", comps}};
}

// ---------------------------------------------------------------- JSON literals

namespace {

std::string as_name(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("poset literal: names must be strings or integers");
}

}  // namespace

FinPoset poset_from_json(const json& j) {
  std::vector<std::string> names;
  for (const auto& e : j.at("elems")) names.push_back(as_name(e));
  auto find = [&](const json& e) {
    std::string s = as_name(e);
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw std::invalid_argument("poset literal: unknown element '" + s + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::pair<int, int>> leq;
  if (j.contains("leq"))
    for (const auto& p : j.at("leq")) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument("poset literal: leq entries are pairs");
      leq.emplace_back(find(p[0]), find(p[1]));
    }
  return FinPoset(std::move(names), leq);
}

Literal literal_from_json(const json& j) {
  FinPoset W = poset_from_json(j.at("poset"));
  const json& sheaf = j.at("sheaf");
  const int n = W.size();
  Literal lit{W, {}, {}, {}};
  lit.element_names.resize(static_cast<std::size_t>(n));
  lit.sizes.assign(static_cast<std::size_t>(n), 0);
  for (int w = 0; w < n; ++w) {
    const auto& at = sheaf.at("at");
    if (!at.contains(W.name(w))) throw std::invalid_argument("sheaf literal: no set for stage " + W.name(w));
    for (const auto& e : at.at(W.name(w))) lit.element_names[static_cast<std::size_t>(w)].push_back(as_name(e));
    lit.sizes[static_cast<std::size_t>(w)] = static_cast<int>(lit.element_names[static_cast<std::size_t>(w)].size());
  }
  auto elem = [&](int w, const std::string& s) {
    const auto& names = lit.element_names[static_cast<std::size_t>(w)];
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw std::invalid_argument("sheaf literal: '" + s + "' not in stage " + W.name(w));
    return static_cast<int>(it - names.begin());
  };

  // given[w][v] = table, for the pairs spelled out in the literal
  std::vector<std::vector<std::optional<std::vector<int>>>> given(
      static_cast<std::size_t>(n), std::vector<std::optional<std::vector<int>>>(static_cast<std::size_t>(n)));
  if (sheaf.contains("restrict"))
    for (const auto& [wname, inner] : sheaf.at("restrict").items()) {
      int w = W.index(wname);
      for (const auto& [vname, table] : inner.items()) {
        int v = W.index(vname);
        if (!W.less(v, w)) throw std::invalid_argument("sheaf literal: restriction " + wname + " -> " + vname + " is not downward");
        std::vector<int> t(static_cast<std::size_t>(lit.sizes[static_cast<std::size_t>(w)]), -1);
        for (const auto& [x, y] : table.items()) t[static_cast<std::size_t>(elem(w, x))] = elem(v, as_name(y));
        for (int y : t)
          if (y < 0) throw std::invalid_argument("sheaf literal: restriction " + wname + " -> " + vname + " is partial");
        given[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] = std::move(t);
      }
    }
  // Missing pairs are composed through an intermediate stage, shortest
  // intervals first.
  auto interval = [&](int w, int v) {
    int c = 0;
    for (int u = 0; u < n; ++u)
      if (W.less(v, u) && W.less(u, w)) ++c;
    return c;
  };
  std::vector<std::pair<int, int>> pairs;
  for (int w = 0; w < n; ++w)
    for (int v : W.below(w)) pairs.emplace_back(w, v);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](auto a, auto b) { return interval(a.first, a.second) < interval(b.first, b.second); });
  for (auto [w, v] : pairs) {
    auto& slot = given[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)];
    if (slot) continue;
    for (int u = 0; u < n && !slot; ++u) {
      if (!(W.less(v, u) && W.less(u, w))) continue;
      const auto& wu = given[static_cast<std::size_t>(w)][static_cast<std::size_t>(u)];
      const auto& uv = given[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (!wu || !uv) continue;
      std::vector<int> t;
      for (int x : *wu) t.push_back((*uv)[static_cast<std::size_t>(x)]);
      slot = std::move(t);
    }
    if (!slot) throw std::invalid_argument("sheaf literal: missing restriction " + W.name(w) + " -> " + W.name(v));
  }
  lit.restrict.resize(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w)
    for (int v : W.below(w))
      lit.restrict[static_cast<std::size_t>(w)].push_back(*given[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)]);
  return lit;
}

}  // namespace gfix::presheaf
