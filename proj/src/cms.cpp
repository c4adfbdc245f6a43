#include "gfix/cms.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace gfix::cms {

int word_index(const std::vector<int>& w, int alphabet) {
  int i = 0;
  for (int c : w) i = i * alphabet + c;
  return i;
}

std::vector<int> word_at(int index, int alphabet, int depth) {
  std::vector<int> w(static_cast<std::size_t>(depth));
  for (int i = depth - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = index % alphabet;
    index /= alphabet;
  }
  return w;
}

std::string word_string(int index, int alphabet, int depth) {
  std::string s;
  for (int c : word_at(index, alphabet, depth)) s += std::to_string(c);
  return s;
}

CmsModel::CmsModel(int max_alphabet, int max_depth, std::size_t enum_limit)
    : max_alphabet_(max_alphabet), max_depth_(max_depth), enum_limit_(enum_limit) {
  auto t = std::make_shared<SpaceObj>();
  t->key = "1";
  t->kind = SpaceObj::Kind::terminal;
  t->n = 1;
  t->e = {kInf};
  terminal_ = intern(std::move(t));
}

Obj CmsModel::intern(std::shared_ptr<SpaceObj> o) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = objects_.emplace(o->key, std::move(o));
  return it->second;
}

Obj CmsModel::words(int alphabet, int depth) const {
  if (alphabet < 1 || depth < 0) throw std::invalid_argument("word space needs alphabet >= 1 and depth >= 0");
  if (depth == 0 || alphabet == 1) return terminal_;
  auto o = std::make_shared<SpaceObj>();
  o->key = "W" + std::to_string(alphabet) + "^" + std::to_string(depth);
  o->alphabet = alphabet;
  o->depth = depth;
  o->n = 1;
  for (int i = 0; i < depth; ++i) o->n *= alphabet;
  o->e.assign(static_cast<std::size_t>(o->n * o->n), kInf);
  for (int x = 0; x < o->n; ++x) {
    auto wx = word_at(x, alphabet, depth);
    for (int y = 0; y < o->n; ++y) {
      auto wy = word_at(y, alphabet, depth);
      auto mm = std::mismatch(wx.begin(), wx.end(), wy.begin());
      if (mm.first != wx.end()) o->e[static_cast<std::size_t>(x * o->n + y)] = static_cast<int>(mm.first - wx.begin());
    }
  }
  return intern(std::move(o));
}

Obj CmsModel::product(const Obj& a, const Obj& b) const {
  std::string key = "(" + a->key + " x " + b->key + ")";
  {
    std::lock_guard lock(mu_);
    if (auto it = objects_.find(key); it != objects_.end()) return it->second;
  }
  auto o = std::make_shared<SpaceObj>();
  o->key = key;
  o->kind = SpaceObj::Kind::product;
  o->left = a;
  o->right = b;
  o->n = a->n * b->n;
  o->e.resize(static_cast<std::size_t>(o->n * o->n));
  for (int i = 0; i < o->n; ++i)
    for (int j = 0; j < o->n; ++j)
      o->e[static_cast<std::size_t>(i * o->n + j)] =
          std::min(a->exp(i / b->n, j / b->n), b->exp(i % b->n, j % b->n));
  return intern(std::move(o));
}

std::pair<Obj, Obj> CmsModel::factors(const Obj& a) const {
  if (a->kind != SpaceObj::Kind::product) throw ShapeError("not a product object: " + a->key);
  return {a->left, a->right};
}

Obj CmsModel::delay(const Obj& a) const {
  std::string key = ">" + a->key;
  {
    std::lock_guard lock(mu_);
    if (auto it = objects_.find(key); it != objects_.end()) return it->second;
  }
  auto o = std::make_shared<SpaceObj>();
  o->key = key;
  o->kind = SpaceObj::Kind::delay;
  o->left = a;
  o->n = a->n;
  o->e = a->e;
  for (int& x : o->e)
    if (x != kInf) ++x;
  return intern(std::move(o));
}

bool CmsModel::nonexpansive(const Obj& dom, const Obj& cod, const std::vector<int>& t) const {
  if (static_cast<int>(t.size()) != dom->n) return false;
  for (int y : t)
    if (y < 0 || y >= cod->n) return false;
  for (int x = 0; x < dom->n; ++x)
    for (int y = x + 1; y < dom->n; ++y)
      if (cod->exp(t[static_cast<std::size_t>(x)], t[static_cast<std::size_t>(y)]) < dom->exp(x, y)) return false;
  return true;
}

Mor CmsModel::make_mor(const Obj& dom, const Obj& cod, std::vector<int> table) const {
  if (!nonexpansive(dom, cod, table))
    throw NotNonexpansive("map " + dom->key + " -> " + cod->key + " is not nonexpansive");
  return Mor{dom, cod, Tables{std::move(table)}};
}

std::optional<Mor> CmsModel::from_tables(const Obj& dom, const Obj& cod, Tables t) const {
  if (t.size() != 1 || !nonexpansive(dom, cod, t[0])) return std::nullopt;
  return Mor{dom, cod, std::move(t)};
}

Mor CmsModel::id(const Obj& a) const {
  std::vector<int> t(static_cast<std::size_t>(a->n));
  for (int i = 0; i < a->n; ++i) t[static_cast<std::size_t>(i)] = i;
  return Mor{a, a, Tables{std::move(t)}};
}

Mor CmsModel::compose(const Mor& f, const Mor& g) const {
  if (!same(f.cod, g.dom)) throw CompositionError(f.cod->key, g.dom->key);
  std::vector<int> t;
  for (int x : f.comp[0]) t.push_back(g(x));
  return Mor{f.dom, g.cod, Tables{std::move(t)}};
}

Mor CmsModel::proj_left(const Obj& a, const Obj& b) const {
  Obj p = product(a, b);
  std::vector<int> t;
  for (int i = 0; i < p->n; ++i) t.push_back(i / b->n);
  return Mor{p, a, Tables{std::move(t)}};
}

Mor CmsModel::proj_right(const Obj& a, const Obj& b) const {
  Obj p = product(a, b);
  std::vector<int> t;
  for (int i = 0; i < p->n; ++i) t.push_back(i % b->n);
  return Mor{p, b, Tables{std::move(t)}};
}

Mor CmsModel::pair(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom)) throw ShapeError("pairing morphisms with different domains");
  Obj c = product(f.cod, g.cod);
  std::vector<int> t;
  for (int x = 0; x < f.dom->n; ++x) t.push_back(f(x) * g.cod->n + g(x));
  return Mor{f.dom, c, Tables{std::move(t)}};
}

Mor CmsModel::bang(const Obj& a) const {
  return Mor{a, terminal_, Tables{std::vector<int>(static_cast<std::size_t>(a->n), 0)}};
}

Mor CmsModel::delay_mor(const Mor& f) const { return Mor{delay(f.dom), delay(f.cod), f.comp}; }

Mor CmsModel::point(const Obj& a) const {
  Mor i = id(a);
  i.cod = delay(a);
  return i;
}

Mor CmsModel::iterate(const Mor& f, const Mor& start) const {
  Obj xo = f.cod;
  auto [dx, y] = factors(f.dom);
  if (!same(dx, delay(xo))) throw ShapeError("dagger argument must have shape >X x Y -> X");
  int top = 0;
  for (int v : xo->e)
    if (v != kInf) top = std::max(top, v);
  std::vector<int> m = start.comp[0];
  // Each step gains one more agreeing exponent, so top + 2 steps reach
  // the fixpoint.
  for (int step = 0; step <= top + 2; ++step) {
    std::vector<int> next(m.size());
    for (int yy = 0; yy < y->n; ++yy) next[static_cast<std::size_t>(yy)] = f(m[static_cast<std::size_t>(yy)] * y->n + yy);
    if (next == m) return Mor{y, xo, Tables{std::move(m)}};
    m = std::move(next);
  }
  throw std::logic_error("Banach iteration did not converge; the argument is not contractive");
}

Mor CmsModel::dagger(const Mor& f) const {
  auto [dx, y] = factors(f.dom);
  Obj xo = f.cod;
  if (xo->n == 0 || y->n == 0) return Mor{y, xo, Tables{std::vector<int>(static_cast<std::size_t>(y->n), 0)}};
  return iterate(f, Mor{y, xo, Tables{std::vector<int>(static_cast<std::size_t>(y->n), 0)}});
}

std::optional<Mor> CmsModel::can_inverse(const Obj& a, const Obj& b) const {
  return tabular_can_inverse(*this, a, b);
}

bool CmsModel::equal(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom) || !same(f.cod, g.cod)) throw ShapeError("comparing non-parallel morphisms");
  return f.comp == g.comp;
}

std::vector<int> CmsModel::candidates(const Obj& a, const Obj& b, const std::vector<int>& t, int x) const {
  std::vector<int> c;
  for (int y = 0; y < b->n; ++y) {
    bool ok = true;
    for (int z = 0; z < x && ok; ++z) ok = b->exp(y, t[static_cast<std::size_t>(z)]) >= a->exp(x, z);
    if (ok) c.push_back(y);
  }
  return c;
}

std::optional<std::vector<Mor>> CmsModel::hom(const Obj& a, const Obj& b, std::size_t limit) const {
  std::vector<Mor> out;
  std::vector<int> t(static_cast<std::size_t>(a->n), -1);
  bool overflow = false;
  std::function<void(int)> go = [&](int x) {
    if (overflow) return;
    if (x == a->n) {
      if (out.size() >= limit) {
        overflow = true;
        return;
      }
      out.push_back(Mor{a, b, Tables{t}});
      return;
    }
    for (int y : candidates(a, b, t, x)) {
      t[static_cast<std::size_t>(x)] = y;
      go(x + 1);
      if (overflow) return;
    }
    t[static_cast<std::size_t>(x)] = -1;
  };
  go(0);
  if (overflow) return std::nullopt;
  return out;
}

std::optional<Mor> CmsModel::random_mor(const Obj& a, const Obj& b, Rng& rng) const {
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
    all = hom(a, b, enum_limit_);
    std::lock_guard lock(mu_);
    homs_.emplace(key, all);
  }
  if (all) {
    if (all->empty()) return std::nullopt;
    return rng.pick(*all);
  }
  // Greedy: in an ultrametric the image of the nearest assigned point is
  // always admissible, so no backtracking is needed.
  std::vector<int> t(static_cast<std::size_t>(a->n), -1);
  for (int x = 0; x < a->n; ++x) {
    auto c = candidates(a, b, t, x);
    if (c.empty()) throw std::logic_error("nonexpansive extension failed");
    t[static_cast<std::size_t>(x)] = rng.pick(c);
  }
  return Mor{a, b, Tables{std::move(t)}};
}

Obj CmsModel::random_object(Rng& rng) const {
  if (rng.chance(1, 6)) return terminal_;
  int a = rng.range(2, std::max(2, max_alphabet_));
  int k = rng.range(1, std::max(1, max_depth_));
  return words(a, k);
}

json CmsModel::describe(const Obj& a) const {
  json j{{"key", a->key}, {"size", a->n}};
  if (a->kind == SpaceObj::Kind::words) {
    j["alphabet"] = a->alphabet;
    j["length"] = a->depth;
  }
  return j;
}

json CmsModel::describe(const Mor& f) const {
  return json{{"dom", f.dom->key}, {"cod", f.cod->key}, {"table", f.comp[0]}};
}

}  // namespace gfix::cms
