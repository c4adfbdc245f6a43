#pragma once

// Model-generic law checks.  Every law is a trial function drawing one
// random instance from a per-trial generator and comparing both sides with
// the model's equality; run_law aggregates seeded trials into a verdict.

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gfix/category.hpp"
#include "gfix/verdict.hpp"

namespace gfix {

struct Trial {
  enum class Outcome { pass, fail, discard };
  Outcome outcome = Outcome::pass;
  json witness;

  static Trial discard() { return Trial{Outcome::discard, nullptr}; }
};

// ------------------------------------------------------------ constructions

template <GuardedModel M>
using TraceFn = std::function<typename M::Mor(const typename M::Mor&)>;

/// Tr(f) = pi_r . f . (p_X x A) . <(pi_l . f)^dag, A>  for f : >X x A -> X x B.
template <GuardedModel M>
typename M::Mor trace_from_dagger(const Ops<M>& ops, const typename M::Mor& f) {
  auto [dx, a] = ops.model().factors(ops.dom(f));
  auto [xo, b] = ops.model().factors(ops.cod(f));
  if (!ops.model().same(dx, ops.later(xo))) throw ShapeError("trace argument must have shape >X x A -> X x B");
  auto s = ops.dag(ops.o(ops.pl(xo, b), f));
  return ops.o(ops.pr(xo, b), f, ops.times(ops.point(xo), ops.id(a)), ops.pair(s, ops.id(a)));
}

template <GuardedModel M>
TraceFn<M> trace_from_dagger(Ops<M> ops) {
  return [ops](const typename M::Mor& f) { return trace_from_dagger(ops, f); };
}

/// f^dag = Tr(<f, f>).
template <GuardedModel M>
typename Ops<M>::DaggerFn dagger_from_trace(const M& m, TraceFn<M> tr) {
  return [&m, tr](const typename M::Mor& f) { return tr(m.pair(f, f)); };
}

/// q_X = pi_l . (>pi_r x X)^dag : X -> >X.
template <GuardedModel M>
typename M::Mor derive_point(const Ops<M>& ops, const typename M::Obj& xo) {
  auto dx = ops.later(xo);
  auto fx = ops.times(ops.later(ops.pr(dx, xo)), ops.id(xo));
  return ops.o(ops.pl(dx, xo), ops.dag(fx));
}

/// first |> second : >Q x A -> Q for first : >P x A -> Q and second : Q x A -> P.
/// Needs can(Q, A) to be invertible.
template <GuardedModel M>
typename M::Mor triangle(const Ops<M>& ops, const typename M::Mor& first, const typename M::Mor& second) {
  const M& m = ops.model();
  auto q = ops.cod(first);
  auto a = ops.right(ops.dom(first));
  auto inv = m.can_inverse(q, a);
  if (!inv) throw ShapeError("can(" + m.describe(q).dump() + ", A) is not invertible");
  auto da = ops.later(a), dq = ops.later(q);
  auto step1 = ops.times(ops.id(dq), ops.pair(ops.point(a), ops.id(a)));
  auto step2 = ops.assoc_l(dq, da, a);
  auto step3 = ops.times(*inv, ops.id(a));
  auto step4 = ops.times(ops.later(second), ops.id(a));
  return ops.o(first, step4, step3, step2, step1);
}

// ------------------------------------------------------------ trial context

template <GuardedModel M>
class Ctx {
 public:
  using Obj = typename M::Obj;
  using Mor = typename M::Mor;

  Ctx(const Ops<M>& ops, Rng& rng) : ops(ops), m(ops.model()), rng(rng) {}

  Obj obj() { return m.random_object(rng); }

  Mor mor(const std::string& name, const Obj& a, const Obj& b) {
    auto f = m.random_mor(a, b, rng);
    if (!f) throw NoMorphism("no morphism " + m.describe(a).dump() + " -> " + m.describe(b).dump());
    record(name, *f);
    return *f;
  }

  void record(const std::string& name, const Mor& f) { instance[name] = m.describe(f); }

  /// Compares and records both sides; an empty label is the main equation.
  bool same(const std::string& label, const Mor& lhs, const Mor& rhs) {
    if (ops.eq(lhs, rhs)) return true;
    json side{{"lhs", m.describe(lhs)}, {"rhs", m.describe(rhs)}};
    if (label.empty())
      sides.push_back(side);
    else {
      side["equation"] = label;
      sides.push_back(side);
    }
    return false;
  }

  Trial result(bool ok) {
    if (ok) return Trial{Trial::Outcome::pass, nullptr};
    json w{{"instance", instance}};
    if (sides.size() == 1 && !sides[0].contains("equation")) {
      w["lhs"] = sides[0]["lhs"];
      w["rhs"] = sides[0]["rhs"];
    } else {
      w["sides"] = sides;
    }
    return Trial{Trial::Outcome::fail, w};
  }

  Trial check(const Mor& lhs, const Mor& rhs) { return result(same("", lhs, rhs)); }

  const Ops<M>& ops;
  const M& m;
  Rng& rng;
  json instance = json::object();
  std::vector<json> sides;
};

template <class M>
concept HasPremise = GuardedModel<M> && requires(const M& m, const typename M::Obj& a,
                                                 const std::optional<typename M::Obj>& b, Rng& rng) {
  { m.premise_instance(a, a, a, b, rng) } -> std::same_as<std::optional<Premise<typename M::Mor>>>;
};

template <class M>
concept HasDepth = requires(const M& m) {
  { m.depth() } -> std::convertible_to<int>;
};

// ------------------------------------------------------------ the laws

namespace law {

template <GuardedModel M>
Trial fix(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj();
  auto f = c.mor("f", o.x(o.later(x), y), x);
  auto s = o.dag(f);
  return c.check(s, o.o(f, o.times(o.point(x), o.id(y)), o.pair(s, o.id(y))));
}

template <GuardedModel M>
Trial parameter(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), z = c.obj();
  auto f = c.mor("f", o.x(o.later(x), y), x);
  auto h = c.mor("h", z, y);
  return c.check(o.o(o.dag(f), h), o.dag(o.o(f, o.times(o.id(o.later(x)), h))));
}

template <GuardedModel M>
Trial composition(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), z = c.obj();
  auto f = c.mor("f", o.x(o.later(x), y), z);
  auto g = c.mor("g", z, x);
  return c.check(o.dag(o.o(g, f)), o.o(g, o.dag(o.o(f, o.times(o.later(g), o.id(y))))));
}

template <GuardedModel M>
Trial double_dagger(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj();
  auto dx = o.later(x);
  auto f = c.mor("f", o.x(dx, o.x(dx, y)), x);
  auto diag = o.pair(o.pl(dx, y), o.id(o.x(dx, y)));
  return c.check(o.dag(o.dag(f)), o.dag(o.o(f, diag)));
}

/// Draws a premise-valid instance, retrying with fresh objects.
template <HasPremise M>
std::optional<Premise<typename M::Mor>> premise(Ctx<M>& c, typename M::Obj& a,
                                                const std::optional<typename M::Obj>& b, int attempts = 10) {
  for (int i = 0; i < attempts; ++i) {
    auto x = c.obj();
    auto x2 = c.rng.chance(1, 3) ? x : c.obj();
    if (auto p = c.m.premise_instance(x, x2, a, b, c.rng)) return p;
  }
  return std::nullopt;
}

template <GuardedModel M>
Trial uniformity(Ctx<M>& c) {
  if constexpr (!HasPremise<M>) {
    throw UnsupportedOracle("model cannot generate uniformity premises");
  } else {
    auto& o = c.ops;
    auto y = c.obj();
    auto p = premise(c, y, std::nullopt);
    if (!p) return Trial::discard();
    c.record("f", p->f);
    c.record("f2", p->f2);
    c.record("h", p->h);
    if (!o.eq(o.o(p->h, p->f), o.o(p->f2, o.times(o.later(p->h), o.id(y))))) return Trial::discard();
    return c.check(o.o(p->h, o.dag(p->f)), o.dag(p->f2));
  }
}

template <GuardedModel M>
Trial bekic(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), a = c.obj();
  auto dx = o.later(x), dy = o.later(y);
  auto dom = o.x(dx, o.x(dy, a));
  auto f = c.mor("f", dom, x);
  auto g = c.mor("g", dom, y);
  auto lhs = o.dag(o.o(o.pair(f, g), o.assoc_r(dx, dy, a), o.times(o.can(x, y), o.id(a))));
  auto fd = o.dag(f);
  auto er = o.o(g, o.pair(o.o(o.point(x), fd), o.id(o.x(dy, a))));
  auto erd = o.dag(er);
  auto side = o.pair(o.o(o.point(y), erd), o.id(a));
  auto el = o.o(f, o.times(o.id(dx), side));
  auto eld = o.dag(el);
  bool ok = c.same("", lhs, o.pair(eld, erd));
  ok = c.same("e_L", eld, o.o(fd, side)) && ok;
  return c.result(ok);
}

template <GuardedModel M>
Trial bekic_dd(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj();
  auto dx = o.later(x);
  auto f = c.mor("f", o.x(dx, o.x(dx, a)), x);
  auto first = o.dag(o.dag(f));
  auto er = o.o(f, o.pair(o.o(o.point(x), o.dag(f)), o.id(o.x(dx, a))));
  auto paired = o.dag(o.o(o.pair(f, f), o.assoc_r(dx, dx, a), o.times(o.can(x, x), o.id(a))));
  auto last = o.dag(o.o(f, o.pair(o.pl(dx, a), o.id(o.x(dx, a)))));
  if (o.eq(first, last)) return c.result(true);
  // replay the chain to show where it breaks
  c.same("f^dag^dag = e_R^dag", first, o.dag(er));
  c.same("e_R^dag = pi_r . <f,f>^dag", o.dag(er), o.o(o.pr(x, x), paired));
  c.same("pi_r . <f,f>^dag = (f . <pi_l, id>)^dag", o.o(o.pr(x, x), paired), last);
  c.same("", first, last);
  return c.result(false);
}

template <GuardedModel M>
Trial dinat(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), a = c.obj();
  auto dx = o.later(x), dy = o.later(y);
  auto f = c.mor("f", o.x(dx, a), y);
  auto g = c.mor("g", o.x(dy, a), x);
  auto lhs = o.dag(o.o(g, o.pair(o.o(o.point(y), f), o.pr(dx, a))));
  auto h = o.o(f, o.pair(o.o(o.point(x), g), o.pr(dy, a)));
  return c.check(lhs, o.o(g, o.pair(o.o(o.point(y), o.dag(h)), o.id(a))));
}

template <GuardedModel M>
Trial dinat1(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), a = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), y);
  auto g = c.mor("g", o.x(y, a), x);
  auto lhs = o.dag(o.o(g, o.pair(f, o.pr(o.later(x), a))));
  return c.check(lhs, o.o(g, o.pair(o.dag(triangle(o, f, g)), o.id(a))));
}

template <GuardedModel M>
Trial dinat2(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), a = c.obj();
  auto dy = o.later(y);
  auto f = c.mor("f", o.x(x, a), y);
  auto g = c.mor("g", o.x(dy, a), x);
  auto h = o.o(f, o.pair(g, o.pr(dy, a)));
  return c.check(o.dag(triangle(o, g, f)), o.o(g, o.pair(o.o(o.point(y), o.dag(h)), o.id(a))));
}

template <GuardedModel M>
Trial point(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj();
  auto qx = derive_point(o, x);
  bool ok = c.same("q_X = p_X", qx, o.point(x));
  auto h = c.mor("h", x, y);
  ok = c.same("naturality of q", o.o(o.later(h), qx), o.o(derive_point(o, y), h)) && ok;
  return c.result(ok);
}

// trace axioms over a given trace operator

template <GuardedModel M>
Trial vanishing1(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto a = c.obj(), b = c.obj();
  auto one = o.one(), d1 = o.later(one);
  auto f1 = c.mor("f'", o.x(d1, a), b);
  auto f = o.pair(o.bang(o.x(d1, a)), f1);
  return c.check(tr(f), o.o(f1, o.pair(o.o(o.point(one), o.bang(a)), o.id(a))));
}

template <GuardedModel M>
Trial vanishing2(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj(), a = c.obj(), b = c.obj();
  auto dx = o.later(x), dy = o.later(y);
  auto f = c.mor("f", o.x(dx, o.x(dy, a)), o.x(x, o.x(y, b)));
  auto lhs = tr(tr(f));
  auto g = o.o(o.assoc_l(x, y, b), f, o.assoc_r(dx, dy, a), o.times(o.can(x, y), o.id(a)));
  return c.check(lhs, tr(g));
}

template <GuardedModel M>
Trial superposing(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj(), b = c.obj(), cc = c.obj();
  auto dx = o.later(x);
  auto f = c.mor("f", o.x(dx, a), o.x(x, b));
  auto g = o.o(o.assoc_r(x, b, cc), o.times(f, o.id(cc)), o.assoc_l(dx, a, cc));
  return c.check(tr(g), o.times(tr(f), o.id(cc)));
}

template <GuardedModel M>
Trial yanking(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj();
  c.instance["X"] = c.m.describe(x);
  return c.check(tr(o.swap(o.later(x), x)), o.point(x));
}

template <GuardedModel M>
Trial left_tightening(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj(), a2 = c.obj(), b = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), o.x(x, b));
  auto g = c.mor("g", a2, a);
  return c.check(tr(o.o(f, o.times(o.id(o.later(x)), g))), o.o(tr(f), g));
}

template <GuardedModel M>
Trial right_tightening(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj(), b = c.obj(), b2 = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), o.x(x, b));
  auto g = c.mor("g", b, b2);
  return c.check(tr(o.o(o.times(o.id(x), g), f)), o.o(g, tr(f)));
}

template <GuardedModel M>
Trial sliding(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), x2 = c.obj(), a = c.obj(), b = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), o.x(x2, b));
  auto g = c.mor("g", x2, x);
  return c.check(tr(o.o(o.times(g, o.id(b)), f)), tr(o.o(f, o.times(o.later(g), o.id(a)))));
}

template <GuardedModel M>
Trial trace_uniformity(Ctx<M>& c, const TraceFn<M>& tr) {
  if constexpr (!HasPremise<M>) {
    throw UnsupportedOracle("model cannot generate uniformity premises");
  } else {
    auto& o = c.ops;
    auto a = c.obj(), b = c.obj();
    auto p = premise(c, a, std::optional{b});
    if (!p) return Trial::discard();
    c.record("f", p->f);
    c.record("f2", p->f2);
    c.record("h", p->h);
    if (!o.eq(o.o(o.times(p->h, o.id(b)), p->f), o.o(p->f2, o.times(o.later(p->h), o.id(a)))))
      return Trial::discard();
    return c.check(tr(p->f), tr(p->f2));
  }
}

template <GuardedModel M>
Trial fptr(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj(), b = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), o.x(x, b));
  auto h = tr(o.o(o.diag(x), o.pl(x, b), f));
  return c.check(tr(f), o.o(o.pr(x, b), f, o.times(o.point(x), o.id(a)), o.pair(h, o.id(a))));
}

template <GuardedModel M>
Trial htr(Ctx<M>& c, const TraceFn<M>& tr) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj(), b = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), o.x(x, b));
  auto h = o.o(f, o.times(o.later(o.pl(x, b)), o.id(a)));
  return c.check(tr(f), o.o(o.pr(x, b), o.dag(h)));
}

template <GuardedModel M>
Trial rt_dagger(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), y = c.obj();
  auto f = c.mor("f", o.x(o.later(x), y), x);
  auto derived = dagger_from_trace(c.m, trace_from_dagger(o));
  return c.check(derived(f), o.dag(f));
}

template <GuardedModel M>
Trial rt_trace(Ctx<M>& c) {
  auto& o = c.ops;
  auto x = c.obj(), a = c.obj(), b = c.obj();
  auto f = c.mor("f", o.x(o.later(x), a), o.x(x, b));
  auto tr = trace_from_dagger(o);
  Ops<M> via(c.m, dagger_from_trace(c.m, tr));
  return c.check(trace_from_dagger(via, f), tr(f));
}

/// Uniformity of the dagger derived from Tr_dag, then uniformity of Tr_dag.
template <GuardedModel M>
Trial transfer(Ctx<M>& c) {
  auto tr = trace_from_dagger(c.ops);
  Ops<M> derived(c.m, dagger_from_trace(c.m, tr));
  Ctx<M> u(derived, c.rng);
  Trial t1 = uniformity(u);
  Ctx<M> v(c.ops, c.rng);
  Trial t2 = trace_uniformity(v, tr);
  if (t1.outcome == Trial::Outcome::fail) return Trial{Trial::Outcome::fail, json{{"uniformity", t1.witness}}};
  if (t2.outcome == Trial::Outcome::fail) return Trial{Trial::Outcome::fail, json{{"trace_uniformity", t2.witness}}};
  if (t1.outcome == Trial::Outcome::discard && t2.outcome == Trial::Outcome::discard) return Trial::discard();
  return Trial{};
}

}  // namespace law

// ------------------------------------------------------------ registry

/// Law names in report order.
const std::vector<std::string>& all_laws();
/// Named groups: conway, derived, dinat, trace, roundtrip.
const std::map<std::string, std::vector<std::string>>& law_groups();
/// Expands a comma-separated selector of laws and groups ("all" for
/// everything); throws std::invalid_argument on unknown names.
std::vector<std::string> select_laws(const std::string& selector);

template <GuardedModel M>
using TrialFn = std::function<Trial(Ctx<M>&)>;

template <GuardedModel M>
TrialFn<M> law_trial(const std::string& name) {
  auto traced = [](Trial (*fn)(Ctx<M>&, const TraceFn<M>&)) {
    return [fn](Ctx<M>& c) { return fn(c, trace_from_dagger(c.ops)); };
  };
  if (name == "fix") return law::fix<M>;
  if (name == "p") return law::parameter<M>;
  if (name == "c") return law::composition<M>;
  if (name == "dd") return law::double_dagger<M>;
  if (name == "u") return law::uniformity<M>;
  if (name == "bekic") return law::bekic<M>;
  if (name == "bekic-dd") return law::bekic_dd<M>;
  if (name == "d") return law::dinat<M>;
  if (name == "d1") return law::dinat1<M>;
  if (name == "d2") return law::dinat2<M>;
  if (name == "point") return law::point<M>;
  if (name == "v1") return traced(law::vanishing1<M>);
  if (name == "v2") return traced(law::vanishing2<M>);
  if (name == "s") return traced(law::superposing<M>);
  if (name == "y") return traced(law::yanking<M>);
  if (name == "lt") return traced(law::left_tightening<M>);
  if (name == "rt") return traced(law::right_tightening<M>);
  if (name == "sl") return traced(law::sliding<M>);
  if (name == "tu") return traced(law::trace_uniformity<M>);
  if (name == "fptr") return traced(law::fptr<M>);
  if (name == "htr") return traced(law::htr<M>);
  if (name == "rt-dagger") return law::rt_dagger<M>;
  if (name == "rt-trace") return law::rt_trace<M>;
  if (name == "transfer") return law::transfer<M>;
  throw std::invalid_argument("unknown law: " + name);
}

/// Whether a law is asserted, only reported, or inapplicable in a model.
template <GuardedModel M>
LawMode law_mode(const M& m, const std::string& name) {
  if (name == "d1" || name == "d2") {
    if (!m.preserves_products()) return LawMode::not_applicable;
    return m.unique_dagger() ? LawMode::assert : LawMode::report_only;
  }
  if (name == "d") return m.unique_dagger() ? LawMode::assert : LawMode::report_only;
  if (name == "u" || name == "tu" || name == "transfer") {
    if constexpr (!HasPremise<M>) return LawMode::not_applicable;
    return m.uniform() ? LawMode::assert : LawMode::report_only;
  }
  return LawMode::assert;
}

inline constexpr int kDrawAttempts = 8;

/// Runs `trials` independently seeded trials (in parallel when
/// threads > 1) and aggregates them in trial order.
template <GuardedModel M>
LawVerdict run_law(const Ops<M>& ops, const std::string& name, int trials, std::uint64_t seed,
                   unsigned threads = 0) {
  const M& m = ops.model();
  LawVerdict v;
  v.model = m.name();
  v.law = name;
  v.seed = seed;
  v.mode = law_mode(m, name);
  if constexpr (HasDepth<M>) v.depth = m.depth();
  if (v.mode == LawMode::not_applicable) return v;
  auto fn = law_trial<M>(name);

  std::vector<Trial> results(static_cast<std::size_t>(std::max(trials, 0)));
  auto run_one = [&](int i) {
    Rng rng(mix_seed(seed, name, static_cast<std::uint64_t>(i)));
    Trial t = Trial::discard();
    // an empty hom-set for the drawn shape redraws the whole instance
    for (int attempt = 0; attempt < kDrawAttempts; ++attempt) {
      Ctx<M> c(ops, rng);
      try {
        t = fn(c);
        break;
      } catch (const NoMorphism&) {
        t = Trial::discard();
      } catch (const UnsupportedOracle&) {
        throw;
      } catch (const std::exception& e) {
        t = Trial{Trial::Outcome::fail, json{{"instance", c.instance}, {"error", e.what()}}};
        break;
      }
    }
    results[static_cast<std::size_t>(i)] = std::move(t);
  };
  if (threads == 0) threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (threads == 1 || trials < 4) {
    for (int i = 0; i < trials; ++i) run_one(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int i = next++; i < trials; i = next++) {
          try {
            run_one(i);
          } catch (...) {
            std::lock_guard lock(err_mu);
            if (!err) err = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }

  v.trials = trials;
  for (int i = 0; i < trials; ++i) {
    auto& t = results[static_cast<std::size_t>(i)];
    if (t.outcome == Trial::Outcome::discard) ++v.discarded;
    if (t.outcome != Trial::Outcome::fail) continue;
    ++v.failures;
    if (v.witnesses.size() < LawVerdict::kMaxWitnesses) {
      json w = std::move(t.witness);
      w["trial"] = i;
      v.witnesses.push_back(std::move(w));
    }
  }
  return v;
}

template <GuardedModel M>
LawVerdict run_law(const M& m, const std::string& name, int trials, std::uint64_t seed, unsigned threads = 0) {
  return run_law(Ops<M>(m), name, trials, seed, threads);
}

}  // namespace gfix
