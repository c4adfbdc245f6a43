#pragma once

// Model-independent vocabulary for categories with a pointed delay
// endofunctor ("later", written > in object keys) and a guarded dagger.
//
// A model is any type satisfying GuardedModel.  Models own their object
// representation; objects are compared only within one model.

#include <concepts>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gfix/rng.hpp"

namespace gfix {

using json = nlohmann::json;

struct CompositionError : std::logic_error {
  CompositionError(const std::string& left, const std::string& right)
      : std::logic_error("cannot compose: codomain " + left + " does not match domain " + right) {}
};

struct ShapeError : std::logic_error {
  using std::logic_error::logic_error;
};

struct UnsupportedOracle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoMorphism : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// clang-format off
template <class M>
concept GuardedModel = requires(const M& m, const typename M::Obj& a, const typename M::Mor& f,
                                Rng& rng) {
  typename M::Obj;
  typename M::Mor;
  { m.name() } -> std::convertible_to<std::string>;
  { m.unique_dagger() } -> std::same_as<bool>;
  { m.preserves_products() } -> std::same_as<bool>;
  { m.uniform() } -> std::same_as<bool>;

  { m.terminal() } -> std::same_as<typename M::Obj>;
  { m.product(a, a) } -> std::same_as<typename M::Obj>;
  { m.factors(a) } -> std::same_as<std::pair<typename M::Obj, typename M::Obj>>;
  { m.same(a, a) } -> std::same_as<bool>;
  { m.dom(f) } -> std::same_as<typename M::Obj>;
  { m.cod(f) } -> std::same_as<typename M::Obj>;
  { m.id(a) } -> std::same_as<typename M::Mor>;
  { m.compose(f, f) } -> std::same_as<typename M::Mor>;
  { m.proj_left(a, a) } -> std::same_as<typename M::Mor>;
  { m.proj_right(a, a) } -> std::same_as<typename M::Mor>;
  { m.pair(f, f) } -> std::same_as<typename M::Mor>;
  { m.bang(a) } -> std::same_as<typename M::Mor>;

  { m.delay(a) } -> std::same_as<typename M::Obj>;
  { m.delay_mor(f) } -> std::same_as<typename M::Mor>;
  { m.point(a) } -> std::same_as<typename M::Mor>;
  { m.dagger(f) } -> std::same_as<typename M::Mor>;
  { m.can_inverse(a, a) } -> std::same_as<std::optional<typename M::Mor>>;

  { m.equal(f, f) } -> std::same_as<bool>;
  { m.hom(a, a, std::size_t{}) } -> std::same_as<std::optional<std::vector<typename M::Mor>>>;
  { m.random_object(rng) } -> std::same_as<typename M::Obj>;
  { m.random_mor(a, a, rng) } -> std::same_as<std::optional<typename M::Mor>>;

  { m.describe(a) } -> std::convertible_to<json>;
  { m.describe(f) } -> std::convertible_to<json>;
};
// clang-format on

/// Morphisms f, f', h with h-transported squares, used by the uniformity
/// quasi-equations: post . f == f2 . (>h x A) where post is h or h x B.
template <class Mor>
struct Premise {
  Mor f;
  Mor f2;
  Mor h;
};

/// Derived cartesian and delay combinators over a model, written in
/// mathematical order: o(g, f) is "g after f".  The dagger is pluggable so
/// that derived or perturbed operators can be fed through the same laws.
template <GuardedModel M>
class Ops {
 public:
  using Obj = typename M::Obj;
  using Mor = typename M::Mor;
  using DaggerFn = std::function<Mor(const Mor&)>;

  explicit Ops(const M& m) : m_(m), dagger_([&m](const Mor& f) { return m.dagger(f); }) {}
  Ops(const M& m, DaggerFn dagger) : m_(m), dagger_(std::move(dagger)) {}

  const M& model() const { return m_; }

  Mor o(const Mor& g, const Mor& f) const { return m_.compose(f, g); }
  template <class... Rest>
  Mor o(const Mor& h, const Mor& g, const Rest&... rest) const {
    return o(h, o(g, rest...));
  }

  Obj dom(const Mor& f) const { return m_.dom(f); }
  Obj cod(const Mor& f) const { return m_.cod(f); }
  Obj x(const Obj& a, const Obj& b) const { return m_.product(a, b); }
  Obj x(const Obj& a, const Obj& b, const Obj& c) const { return x(a, x(b, c)); }
  Obj one() const { return m_.terminal(); }
  Obj left(const Obj& a) const { return m_.factors(a).first; }
  Obj right(const Obj& a) const { return m_.factors(a).second; }

  Mor id(const Obj& a) const { return m_.id(a); }
  Mor pl(const Obj& a, const Obj& b) const { return m_.proj_left(a, b); }
  Mor pr(const Obj& a, const Obj& b) const { return m_.proj_right(a, b); }
  Mor pair(const Mor& f, const Mor& g) const { return m_.pair(f, g); }
  Mor bang(const Obj& a) const { return m_.bang(a); }

  Mor times(const Mor& f, const Mor& g) const {
    Obj a = dom(f), b = dom(g);
    return pair(o(f, pl(a, b)), o(g, pr(a, b)));
  }
  Mor diag(const Obj& a) const { return pair(id(a), id(a)); }
  Mor swap(const Obj& a, const Obj& b) const { return pair(pr(a, b), pl(a, b)); }

  // (A x B) x C -> A x (B x C)
  Mor assoc_r(const Obj& a, const Obj& b, const Obj& c) const {
    Obj ab = x(a, b);
    Obj abc = x(ab, c);
    Mor to_a = o(pl(a, b), pl(ab, c));
    Mor to_b = o(pr(a, b), pl(ab, c));
    return pair(to_a, pair(to_b, pr(ab, c)));
  }
  // A x (B x C) -> (A x B) x C
  Mor assoc_l(const Obj& a, const Obj& b, const Obj& c) const {
    Obj bc = x(b, c);
    Mor to_b = o(pl(b, c), pr(a, bc));
    Mor to_c = o(pr(b, c), pr(a, bc));
    return pair(pair(pl(a, bc), to_b), to_c);
  }

  Obj later(const Obj& a) const { return m_.delay(a); }
  Mor later(const Mor& f) const { return m_.delay_mor(f); }
  Mor point(const Obj& a) const { return m_.point(a); }
  Mor dag(const Mor& f) const { return dagger_(f); }

  /// can : >(X x Y) -> >X x >Y
  Mor can(const Obj& a, const Obj& b) const {
    return pair(later(pl(a, b)), later(pr(a, b)));
  }

  bool eq(const Mor& f, const Mor& g) const { return m_.equal(f, g); }

  /// Reads X and Y off f : >X x Y -> X.
  std::pair<Obj, Obj> dagger_shape(const Mor& f) const {
    Obj xo = cod(f);
    auto [dx, y] = m_.factors(dom(f));
    if (!m_.same(dx, later(xo))) throw ShapeError("dagger argument must have shape >X x Y -> X");
    return {xo, y};
  }

 private:
  const M& m_;
  DaggerFn dagger_;
};

/// Whether s : Y -> X solves the fixpoint square for f : >X x Y -> X.
template <GuardedModel M>
bool check_guarded_square(const Ops<M>& ops, const typename M::Mor& f, const typename M::Mor& s) {
  auto [xo, y] = ops.dagger_shape(f);
  if (!ops.model().same(ops.dom(s), y) || !ops.model().same(ops.cod(s), xo))
    throw ShapeError("candidate solution must have shape Y -> X");
  auto rhs = ops.o(f, ops.times(ops.point(xo), ops.id(y)), ops.pair(s, ops.id(y)));
  return ops.eq(s, rhs);
}

template <GuardedModel M>
bool check_guarded_square(const M& m, const typename M::Mor& f, const typename M::Mor& s) {
  return check_guarded_square(Ops<M>(m), f, s);
}

/// Brute-force oracle: every member of hom(Y, X) solving the square, in
/// enumeration order.
template <GuardedModel M>
std::vector<typename M::Mor> enumerate_solutions(const M& m, const typename M::Mor& f,
                                                 std::size_t limit = 200000) {
  Ops<M> ops(m);
  auto [xo, y] = ops.dagger_shape(f);
  auto all = m.hom(y, xo, limit);
  if (!all) throw UnsupportedOracle(m.name() + ": hom-set enumeration unavailable");
  std::vector<typename M::Mor> out;
  for (const auto& s : *all)
    if (check_guarded_square(ops, f, s)) out.push_back(s);
  return out;
}

}  // namespace gfix
