#include "gfix/citm.hpp"

#include <algorithm>
#include <stdexcept>

namespace gfix::citm {

using tree::Elem;
using tree::Node;

Tree Impl::apply(E c, int budget) const {
  if (budget <= 0) return tree::cut();
  E key = tree::norm(c, budget);
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find({key, budget}); it != memo_.end()) return it->second;
  }
  Tree r = fn_(key, budget);
  std::lock_guard lock(mu_);
  memo_.emplace(std::pair<E, int>{key, budget}, r);
  return r;
}

namespace {

std::shared_ptr<Impl> make_impl(Impl::Fn fn) { return std::make_shared<Impl>(std::move(fn)); }

}  // namespace

CitmModel::CitmModel(int depth, tree::Signature sig, int max_base)
    : depth_(depth), sig_(std::move(sig)), max_base_(max_base) {
  if (depth_ < 1) throw std::invalid_argument("comparison depth must be at least 1");
  sig_.constant();
}

Obj CitmModel::intern(std::shared_ptr<CitmObj> o) const {
  std::lock_guard lock(mu_);
  auto [it, inserted] = objects_.emplace(o->key, std::move(o));
  return it->second;
}

Obj CitmModel::base(int n) const {
  if (n < 0) throw std::invalid_argument("negative base size");
  auto o = std::make_shared<CitmObj>();
  o->key = std::to_string(n);
  o->n = n;
  return intern(std::move(o));
}

Obj CitmModel::product(const Obj& a, const Obj& b) const {
  auto o = std::make_shared<CitmObj>();
  o->key = "(" + a->key + " + " + b->key + ")";
  o->kind = CitmObj::Kind::sum;
  o->left = a;
  o->right = b;
  return intern(std::move(o));
}

std::pair<Obj, Obj> CitmModel::factors(const Obj& a) const {
  if (a->kind != CitmObj::Kind::sum) throw ShapeError("not a product object: " + a->key);
  return {a->left, a->right};
}

Obj CitmModel::delay(const Obj& a) const {
  auto o = std::make_shared<CitmObj>();
  o->key = "S'" + a->key;
  o->kind = CitmObj::Kind::guard;
  o->left = a;
  return intern(std::move(o));
}

Mor CitmModel::id(const Obj& a) const {
  return Mor{a, a, make_impl([](E c, int) { return tree::var(c); })};
}

Mor CitmModel::compose(const Mor& f, const Mor& g) const {
  if (!same(f.cod, g.dom)) throw CompositionError(f.cod->key, g.dom->key);
  auto fi = f.impl, gi = g.impl;
  return Mor{f.dom, g.cod, make_impl([fi, gi](E c, int b) {
               return tree::subst(gi->apply(c, b), b, [&](E e, int r) { return fi->apply(e, r); });
             })};
}

Mor CitmModel::proj_left(const Obj& a, const Obj& b) const {
  return Mor{product(a, b), a, make_impl([](E c, int) { return tree::var(tree::inl(c)); })};
}

Mor CitmModel::proj_right(const Obj& a, const Obj& b) const {
  return Mor{product(a, b), b, make_impl([](E c, int) { return tree::var(tree::inr(c)); })};
}

Mor CitmModel::pair(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom)) throw ShapeError("pairing morphisms with different domains");
  auto fi = f.impl, gi = g.impl;
  return Mor{f.dom, product(f.cod, g.cod), make_impl([fi, gi](E c, int b) {
               if (c->kind == Elem::Kind::inl) return fi->apply(c->inner, b);
               if (c->kind == Elem::Kind::inr) return gi->apply(c->inner, b);
               throw std::logic_error("pairing applied to a non-injection element");
             })};
}

Mor CitmModel::bang(const Obj& a) const {
  return Mor{a, terminal(), make_impl([](E, int) -> Tree {
               throw std::logic_error("the empty set has no elements");
             })};
}

Mor CitmModel::delay_mor(const Mor& f) const {
  auto fi = f.impl;
  return Mor{delay(f.dom), delay(f.cod), make_impl([fi](E c, int b) {
               if (c->kind != Elem::Kind::guard) throw std::logic_error("delayed map applied outside S'");
               Tree u = tree::subst(c->tree, b, [&](E e, int r) { return fi->apply(e, r); });
               return tree::var(tree::guard(u));
             })};
}

Mor CitmModel::point(const Obj& a) const {
  return Mor{a, delay(a), make_impl([](E c, int b) {
               if (c->kind != Elem::Kind::guard) throw std::logic_error("point applied outside S'");
               return tree::trunc(c->tree, b);
             })};
}

Mor CitmModel::dagger(const Mor& f) const {
  Obj xo = f.cod;
  auto [dx, y] = factors(f.dom);
  if (!same(dx, delay(xo))) throw ShapeError("dagger argument must have shape >X x Y -> X");
  auto fi = f.impl;
  auto sol = make_impl(nullptr);
  Impl* self = sol.get();
  // sol(x) = f(x) with inl(guard t) replaced by t[sol] and inr y by y.
  sol->set([fi, self](E x, int b) {
    return tree::subst(fi->apply(x, b), b, [&](E e, int r) -> Tree {
      if (e->kind == Elem::Kind::inr) return tree::var(e->inner);
      if (e->kind != Elem::Kind::inl || e->inner->kind != Elem::Kind::guard)
        throw std::logic_error("dagger: leaf outside S'X + Y");
      Tree t = e->inner->tree;
      if (t->kind == Node::Kind::var) throw std::logic_error("dagger: unguarded tree in S'X");
      return tree::subst(t, r, [&](E x2, int r2) { return self->apply(x2, r2); });
    });
  });
  return Mor{y, xo, sol};
}

bool CitmModel::finite(const Obj& a) const {
  switch (a->kind) {
    case CitmObj::Kind::base:
      return true;
    case CitmObj::Kind::sum:
      return finite(a->left) && finite(a->right);
    case CitmObj::Kind::guard:
      return false;
  }
  return false;
}

bool CitmModel::inhabited(const Obj& a) const {
  switch (a->kind) {
    case CitmObj::Kind::base:
      return a->n > 0;
    case CitmObj::Kind::sum:
      return inhabited(a->left) || inhabited(a->right);
    case CitmObj::Kind::guard:
      return true;
  }
  return false;
}

std::vector<E> CitmModel::elements(const Obj& a) const {
  constexpr std::size_t cap = 48;
  std::vector<E> out;
  switch (a->kind) {
    case CitmObj::Kind::base:
      for (int i = 0; i < a->n; ++i) out.push_back(tree::atom(i));
      return out;
    case CitmObj::Kind::sum: {
      auto l = elements(a->left), r = elements(a->right);
      if (finite(a)) {
        for (E e : l) out.push_back(tree::inl(e));
        for (E e : r) out.push_back(tree::inr(e));
        return out;
      }
      // interleave so that both summands are represented in the sample
      for (std::size_t i = 0; i < std::max(l.size(), r.size()) && out.size() < cap; ++i) {
        if (i < l.size()) out.push_back(tree::inl(l[i]));
        if (i < r.size()) out.push_back(tree::inr(r[i]));
      }
      return out;
    }
    case CitmObj::Kind::guard: {
      auto inner = elements(a->left);
      std::vector<Tree> pool;
      for (std::size_t i = 0; i < inner.size() && i < 2; ++i) pool.push_back(tree::var(inner[i]));
      pool.push_back(tree::op(sig_.constant()));
      std::vector<Tree> level1;
      for (int s = 0; s < sig_.size(); ++s) {
        int ar = sig_.at(s).arity;
        if (ar == 0) {
          level1.push_back(tree::op(s));
          continue;
        }
        std::vector<std::size_t> idx(static_cast<std::size_t>(ar), 0);
        for (;;) {
          std::vector<Tree> kids;
          for (auto i : idx) kids.push_back(pool[i]);
          level1.push_back(tree::op(s, kids));
          std::size_t p = 0;
          while (p < idx.size() && ++idx[p] == pool.size()) idx[p++] = 0;
          if (p == idx.size() || level1.size() >= cap / 2) break;
        }
      }
      for (Tree t : level1) out.push_back(tree::guard(t));
      // a few nested trees so that depth > 1 is exercised
      for (int s = 0; s < sig_.size() && out.size() < cap; ++s) {
        int ar = sig_.at(s).arity;
        if (ar == 0) continue;
        for (std::size_t j = 0; j < level1.size() && j < 4 && out.size() < cap; ++j)
          out.push_back(tree::guard(tree::op(s, std::vector<Tree>(static_cast<std::size_t>(ar), level1[level1.size() - 1 - j]))));
      }
      if (out.size() > cap) out.resize(cap);
      return out;
    }
  }
  return out;
}

bool CitmModel::equal(const Mor& f, const Mor& g) const {
  if (!same(f.dom, g.dom) || !same(f.cod, g.cod)) throw ShapeError("comparing non-parallel morphisms");
  for (E c : elements(f.cod))
    if (f(c, depth_) != g(c, depth_)) return false;
  return true;
}

std::optional<std::vector<Mor>> CitmModel::hom(const Obj& a, const Obj& b, std::size_t) const {
  if (!inhabited(b)) return std::vector<Mor>{bang(a)};
  // Trees over a nonempty signature make every other hom-set infinite.
  return std::nullopt;
}

Obj CitmModel::random_object(Rng& rng) const {
  if (rng.chance(1, 6)) return base(0);
  return base(rng.range(1, max_base_));
}

E CitmModel::random_elem(const Obj& a, Rng& rng) const {
  switch (a->kind) {
    case CitmObj::Kind::base:
      return tree::atom(rng.below(a->n));
    case CitmObj::Kind::sum: {
      bool l = inhabited(a->left), r = inhabited(a->right);
      if (l && (!r || rng.chance(1, 2))) return tree::inl(random_elem(a->left, rng));
      return tree::inr(random_elem(a->right, rng));
    }
    case CitmObj::Kind::guard:
      return tree::guard(random_guarded(a->left, 2, rng));
  }
  return nullptr;
}

Tree CitmModel::random_tree(const Obj& a, int height, Rng& rng) const {
  bool leaf = height <= 1 || rng.chance(1, 3);
  if (leaf) {
    if (inhabited(a) && rng.chance(2, 3)) return tree::var(random_elem(a, rng));
    std::vector<int> consts;
    for (int s = 0; s < sig_.size(); ++s)
      if (sig_.at(s).arity == 0) consts.push_back(s);
    return tree::op(rng.pick(consts));
  }
  return random_guarded(a, height, rng);
}

Tree CitmModel::random_guarded(const Obj& a, int height, Rng& rng) const {
  int s = rng.below(sig_.size());
  std::vector<Tree> kids;
  for (int i = 0; i < sig_.at(s).arity; ++i) kids.push_back(random_tree(a, height - 1, rng));
  return tree::op(s, std::move(kids));
}

Mor CitmModel::table(const Obj& dom, const Obj& cod, std::map<E, Tree> t) const {
  auto tab = std::make_shared<const std::map<E, Tree>>(std::move(t));
  return Mor{dom, cod, make_impl([tab](E c, int b) {
               auto it = tab->find(c);
               if (it == tab->end()) throw std::logic_error("table morphism applied outside its codomain");
               return tree::trunc(it->second, b);
             })};
}

std::optional<Mor> CitmModel::random_mor(const Obj& a, const Obj& b, Rng& rng) const {
  if (!finite(b)) return std::nullopt;
  std::map<E, Tree> t;
  for (E c : elements(b)) t.emplace(c, random_tree(a, 3, rng));
  return table(a, b, std::move(t));
}

std::optional<Premise<Mor>> CitmModel::premise_instance(const Obj& x, const Obj& x2, const Obj& a,
                                                        const std::optional<Obj>& b, Rng& rng) const {
  if (x->kind != CitmObj::Kind::base || x2->kind != CitmObj::Kind::base) return std::nullopt;
  const int n = x->n, n2 = x2->n;
  if (n2 < n || (n == 0 && n2 > 0)) return std::nullopt;
  // r : X' -> X surjective
  std::vector<int> order(static_cast<std::size_t>(n2));
  for (int i = 0; i < n2; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  std::vector<int> r(static_cast<std::size_t>(n2));
  for (int i = 0; i < n2; ++i) r[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i < n ? i : rng.below(n);
  std::vector<std::vector<int>> pre(static_cast<std::size_t>(n));
  for (int i = 0; i < n2; ++i) pre[static_cast<std::size_t>(r[static_cast<std::size_t>(i)])].push_back(i);

  Obj cod = b ? product(x, *b) : x;
  Obj cod2 = b ? product(x2, *b) : x2;
  Obj dom = product(delay(x), a);
  Obj dom2 = product(delay(x2), a);
  std::map<E, Tree> ft;
  for (E c : elements(cod)) ft.emplace(c, random_tree(dom, 3, rng));

  auto section = [&](Tree t) {
    return tree::subst(t, 1 << 20, [&](E e, int) {
      return tree::var(tree::atom(rng.pick(pre[static_cast<std::size_t>(e->atom)])));
    });
  };
  auto pull_back = [&](Tree t) {
    return tree::subst(t, 1 << 20, [&](E e, int) -> Tree {
      if (e->kind == Elem::Kind::inl) return tree::var(tree::inl(tree::guard(section(e->inner->tree))));
      return tree::var(e);
    });
  };
  auto post = [&](E c) -> E {
    if (!b) return tree::atom(r[static_cast<std::size_t>(c->atom)]);
    if (c->kind == Elem::Kind::inl) return tree::inl(tree::atom(r[static_cast<std::size_t>(c->inner->atom)]));
    return c;
  };
  std::map<E, Tree> gt;
  for (E c : elements(cod2)) gt.emplace(c, pull_back(ft.at(post(c))));
  std::map<E, Tree> ht;
  for (int i = 0; i < n2; ++i) ht.emplace(tree::atom(i), tree::var(tree::atom(r[static_cast<std::size_t>(i)])));
  return Premise<Mor>{table(dom, cod, std::move(ft)), table(dom2, cod2, std::move(gt)), table(x, x2, std::move(ht))};
}

json CitmModel::describe(const Obj& a) const { return json{{"key", a->key}}; }

json CitmModel::describe(const Mor& f) const {
  json t = json::object();
  for (E c : elements(f.cod)) t[tree::print_elem(c, sig_)] = print(f(c, depth_));
  return json{{"dom", f.dom->key}, {"cod", f.cod->key}, {"depth", depth_}, {"table", t}};
}

}  // namespace gfix::citm
