#include "gfix/cpolift.hpp"

#include <functional>
#include <stdexcept>

namespace gfix::cpolift {

namespace {

std::string order_bits(const PosetObj& o) {
  std::string s;
  for (char c : o.le) s += c ? '1' : '0';
  return s;
}

}  // namespace

LiftModel::LiftModel(Delay delay, int max_size, std::size_t enum_limit)
    : mode_(delay), max_size_(max_size), enum_limit_(enum_limit) {
  terminal_ = make_poset(1, {});
}

Obj LiftModel::intern(std::shared_ptr<PosetObj> o) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = objects_.emplace(o->key, std::move(o));
  return it->second;
}

Obj LiftModel::make_poset(int n, const std::vector<std::pair<int, int>>& leq) const {
  if (n < 0) throw std::invalid_argument("poset: negative size");
  auto o = std::make_shared<PosetObj>();
  o->n = n;
  o->le.assign(static_cast<std::size_t>(n * n), 0);
  auto at = [&](int a, int b) -> char& { return o->le[static_cast<std::size_t>(a * n + b)]; };
  for (int a = 0; a < n; ++a) at(a, a) = 1;
  for (auto [a, b] : leq) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("poset: pair out of range");
    at(a, b) = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (at(a, k) && at(k, b)) at(a, b) = 1;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (at(a, b) && at(b, a)) throw std::invalid_argument("poset: relation is not antisymmetric");
  o->kind = n == 1 ? PosetObj::Kind::terminal : PosetObj::Kind::base;
  o->key = "L" + std::to_string(n) + "[" + order_bits(*o) + "]";
  return intern(std::move(o));
}

Obj LiftModel::product(const Obj& a, const Obj& b) const {
  std::string key = "(" + a->key + " x " + b->key + ")";
  {
    std::lock_guard lock(mu_);
    if (auto it = objects_.find(key); it != objects_.end()) return it->second;
  }
  auto o = std::make_shared<PosetObj>();
  o->key = key;
  o->kind = PosetObj::Kind::product;
  o->left = a;
  o->right = b;
  o->n = a->n * b->n;
  o->le.assign(static_cast<std::size_t>(o->n * o->n), 0);
  for (int i = 0; i < o->n; ++i)
    for (int j = 0; j < o->n; ++j)
      o->le[static_cast<std::size_t>(i * o->n + j)] =
          a->leq(i / b->n, j / b->n) && b->leq(i % b->n, j % b->n);
  return intern(std::move(o));
}

std::pair<Obj, Obj> LiftModel::factors(const Obj& a) const {
  if (a->kind != PosetObj::Kind::product) throw ShapeError("not a product object: " + a->key);
  return {a->left, a->right};
}

Obj LiftModel::lift(const Obj& a) const {
  std::string key = "(" + a->key + ")_|";
  {
    std::lock_guard lock(mu_);
    if (auto it = objects_.find(key); it != objects_.end()) return it->second;
  }
  auto o = std::make_shared<PosetObj>();
  o->key = key;
  o->kind = PosetObj::Kind::lift;
  o->left = a;
  o->n = a->n + 1;
  o->le.assign(static_cast<std::size_t>(o->n * o->n), 0);
  for (int j = 0; j < o->n; ++j) o->le[static_cast<std::size_t>(j)] = 1;
  for (int i = 0; i < a->n; ++i)
    for (int j = 0; j < a->n; ++j)
      o->le[static_cast<std::size_t>((i + 1) * o->n + j + 1)] = a->leq(i, j);
  return intern(std::move(o));
}

Obj LiftModel::delay(const Obj& a) const { return mode_ == Delay::lift ? lift(a) : a; }

bool LiftModel::monotone(const Obj& dom, const Obj& cod, const std::vector<int>& t) const {
  if (static_cast<int>(t.size()) != dom->n) return false;
  for (int y : t)
    if (y < 0 || y >= cod->n) return false;
  for (int a = 0; a < dom->n; ++a)
    for (int b = 0; b < dom->n; ++b)
      if (dom->leq(a, b) && !cod->leq(t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)])) return false;
  return true;
}

Mor LiftModel::make_mor(const Obj& dom, const Obj& cod, std::vector<int> table) const {
  if (!monotone(dom, cod, table)) throw NotMonotone("map " + dom->key + " -> " + cod->key + " is not monotone");
  return Mor{dom, cod, Tables{std::move(table)}};
}

std::optional<Mor> LiftModel::from_tables(const Obj& dom, const Obj& cod, Tables t) const {
  if (t.size() != 1 || !monotone(dom, cod, t[0])) return std::nullopt;
  return Mor{dom, cod, std::move(t)};
}

Mor LiftModel::id(const Obj& a) const {
  std::vector<int> t(static_cast<std::size_t>(a->n));
  for (int i = 0; i < a->n; ++i) t[static_cast<std::size_t>(i)] = i;
  return Mor{a, a, Tables{std::move(t)}};
}

Mor LiftModel::compose(const Mor& f, const Mor& g) const {
  if (!same(f.cod, g.dom)) throw CompositionError(f.cod->key, g.dom->key);
  std::vector<int> t;
  for (int x : f.comp[0]) t.push_back(g(x));
  return Mor{f.dom, g.cod, Tables{std::move(t)}};
}

Mor LiftModel::proj_left(const Obj& a, const Obj& b) const {
  Obj p = product(a, b);
  std::vector<int> t;
  for (int i = 0; i < p->n; ++i) t.push_back(i / b->n);
  return Mor{p, a, Tables{std::move(t)}};
}

Mor LiftModel::proj_right(const Obj& a, const Obj& b) const {
  Obj p = product(a, b);
  std::vector<int> t;
  for (int i = 0; i < p->n; ++i) t.push_back(i % b->n);
  return Mor{p, b, Tables{std::move(t)}};
}

Mor LiftModel::pair(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom)) throw ShapeError("pairing morphisms with different domains");
  Obj c = product(f.cod, g.cod);
  std::vector<int> t;
  for (int x = 0; x < f.dom->n; ++x) t.push_back(f(x) * g.cod->n + g(x));
  return Mor{f.dom, c, Tables{std::move(t)}};
}

Mor LiftModel::bang(const Obj& a) const {
  return Mor{a, terminal_, Tables{std::vector<int>(static_cast<std::size_t>(a->n), 0)}};
}

Mor LiftModel::delay_mor(const Mor& f) const {
  if (mode_ == Delay::identity) return f;
  std::vector<int> t{0};
  for (int x : f.comp[0]) t.push_back(x + 1);
  return Mor{lift(f.dom), lift(f.cod), Tables{std::move(t)}};
}

Mor LiftModel::point(const Obj& a) const {
  if (mode_ == Delay::identity) return id(a);
  std::vector<int> t;
  for (int i = 0; i < a->n; ++i) t.push_back(i + 1);
  return Mor{a, lift(a), Tables{std::move(t)}};
}

std::optional<int> LiftModel::bottom(const Obj& a) const {
  for (int b = 0; b < a->n; ++b) {
    bool least = true;
    for (int x = 0; x < a->n && least; ++x) least = a->leq(b, x);
    if (least) return b;
  }
  return std::nullopt;
}

Mor LiftModel::kleene(const Mor& f) const {
  Obj xo = f.cod;
  auto [dx, y] = factors(f.dom);
  Obj lx = lift(xo);
  if (!same(dx, lx)) throw ShapeError("dagger argument must have shape X_bot x Y -> X");
  std::vector<int> s(static_cast<std::size_t>(y->n), 0);
  const int cap = lx->n * y->n + 1;
  for (int step = 0; step <= cap; ++step) {
    std::vector<int> next(s.size());
    for (int yy = 0; yy < y->n; ++yy) next[static_cast<std::size_t>(yy)] = f(s[static_cast<std::size_t>(yy)] * y->n + yy) + 1;
    if (next == s) return Mor{y, lx, Tables{std::move(s)}};
    s = std::move(next);
  }
  throw std::logic_error("Kleene iteration did not stabilise; the argument is not monotone");
}

Mor LiftModel::dagger(const Mor& f) const {
  Obj xo = f.cod;
  auto [dx, y] = factors(f.dom);
  if (!same(dx, delay(xo))) throw ShapeError("dagger argument must have shape >X x Y -> X");
  if (mode_ == Delay::lift) {
    Mor s = kleene(f);
    std::vector<int> t;
    for (int yy = 0; yy < y->n; ++yy) t.push_back(f(s(yy) * y->n + yy));
    return Mor{y, xo, Tables{std::move(t)}};
  }
  if (y->n == 0) return Mor{y, xo, Tables{std::vector<int>{}}};
  auto b = bottom(xo);
  if (!b) throw std::domain_error("least fixpoint needs a least element in " + xo->key);
  std::vector<int> s(static_cast<std::size_t>(y->n), *b);
  for (int step = 0; step <= xo->n * y->n + 1; ++step) {
    std::vector<int> next(s.size());
    for (int yy = 0; yy < y->n; ++yy) next[static_cast<std::size_t>(yy)] = f(s[static_cast<std::size_t>(yy)] * y->n + yy);
    if (next == s) return Mor{y, xo, Tables{std::move(s)}};
    s = std::move(next);
  }
  throw std::logic_error("fixpoint iteration did not stabilise; the argument is not monotone");
}

std::optional<Mor> LiftModel::can_inverse(const Obj& a, const Obj& b) const {
  return tabular_can_inverse(*this, a, b);
}

bool LiftModel::equal(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom) || !same(f.cod, g.cod)) throw ShapeError("comparing non-parallel morphisms");
  return f.comp == g.comp;
}

bool LiftModel::below(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom) || !same(f.cod, g.cod)) throw ShapeError("comparing non-parallel morphisms");
  for (int x = 0; x < f.dom->n; ++x)
    if (!f.cod->leq(f(x), g(x))) return false;
  return true;
}

std::vector<int> LiftModel::candidates(const Obj& a, const Obj& b, const std::vector<int>& t, int x) const {
  std::vector<int> c;
  for (int y = 0; y < b->n; ++y) {
    bool ok = true;
    for (int z = 0; z < x && ok; ++z) {
      int fz = t[static_cast<std::size_t>(z)];
      if (a->leq(z, x) && !b->leq(fz, y)) ok = false;
      if (a->leq(x, z) && !b->leq(y, fz)) ok = false;
    }
    if (ok) c.push_back(y);
  }
  return c;
}

bool LiftModel::enumerate(const Obj& a, const Obj& b, std::size_t limit, std::vector<Mor>& out) const {
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
  return !overflow;
}

std::optional<std::vector<Mor>> LiftModel::hom(const Obj& a, const Obj& b, std::size_t limit) const {
  std::vector<Mor> out;
  if (!enumerate(a, b, limit, out)) return std::nullopt;
  return out;
}

std::optional<Mor> LiftModel::random_mor(const Obj& a, const Obj& b, Rng& rng) const {
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
  // Randomised backtracking.  Monotone maps into a nonempty poset always
  // exist (constants), and a dead end can only come from the order of
  // choices, so a bounded search suffices.
  if (b->n == 0) return a->n == 0 ? std::optional<Mor>(Mor{a, b, Tables{std::vector<int>{}}}) : std::nullopt;
  std::vector<int> t(static_cast<std::size_t>(a->n), -1);
  long budget = 100000;
  std::function<bool(int)> go = [&](int x) {
    if (x == a->n) return true;
    if (--budget < 0) return false;
    auto c = candidates(a, b, t, x);
    rng.shuffle(c);
    for (int y : c) {
      t[static_cast<std::size_t>(x)] = y;
      if (go(x + 1)) return true;
    }
    t[static_cast<std::size_t>(x)] = -1;
    return false;
  };
  if (!go(0)) return std::nullopt;
  return Mor{a, b, Tables{std::move(t)}};
}

Obj LiftModel::random_object(Rng& rng) const {
  if (rng.chance(1, 6)) return terminal_;
  int n = rng.range(mode_ == Delay::identity ? 1 : 0, max_size_);
  if (mode_ == Delay::lift && n == 0 && !rng.chance(1, 3)) n = 1;
  std::vector<std::pair<int, int>> leq;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.chance(1, 2)) leq.emplace_back(a, b);
  if (mode_ == Delay::identity)
    for (int b = 1; b < n; ++b) leq.emplace_back(0, b);
  return make_poset(n, leq);
}

json LiftModel::describe(const Obj& a) const {
  json pairs = json::array();
  for (int i = 0; i < a->n; ++i)
    for (int j = 0; j < a->n; ++j)
      if (i != j && a->leq(i, j)) pairs.push_back({i, j});
  return json{{"key", a->key}, {"size", a->n}, {"leq", pairs}};
}

json LiftModel::describe(const Mor& f) const {
  return json{{"dom", f.dom->key}, {"cod", f.cod->key}, {"table", f.comp[0]}};
}

Mor two_chain_example(const LiftModel& m) {
  auto x = m.make_poset(2, {{0, 1}});
  auto d = m.product(m.lift(x), m.terminal());
  // bot, 0, 1  ->  0, 0, 1
  return m.make_mor(d, x, {0, 0, 1});
}

DoubleDaggerCheck check_lift_double_dagger(const LiftModel& m, const Mor& f) {
  Ops<LiftModel> ops(m);
  Mor inner = m.dagger(f);
  Mor lhs = m.dagger(inner);
  auto [lx, rest] = m.factors(f.dom);
  auto y = m.factors(rest).second;
  Mor diag = ops.pair(ops.pl(lx, y), ops.id(ops.x(lx, y)));
  Mor rhs = m.dagger(ops.o(f, diag));
  return {m.equal(lhs, rhs), lhs, rhs};
}

}  // namespace gfix::cpolift
