#include <gtest/gtest.h>

#include "gfix/cpolift.hpp"
#include "gfix/laws.hpp"

using namespace gfix;
using namespace gfix::cpolift;

namespace {

// Every monotone s : Y -> X solving the square, by brute force over all
// |X|^|Y| tables; independent of the model's hom enumeration.
std::vector<std::vector<int>> all_solutions(const LiftModel& m, const Mor& f) {
  auto xo = f.cod;
  auto y = m.factors(f.dom).second;
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(y->n), 0);
  while (true) {
    if (m.monotone(y, xo, t)) {
      bool ok = true;
      // lifted index of x is x + 1
      for (int yy = 0; yy < y->n && ok; ++yy) ok = f((t[static_cast<std::size_t>(yy)] + 1) * y->n + yy) == t[static_cast<std::size_t>(yy)];
      if (ok) out.push_back(t);
    }
    std::size_t i = 0;
    while (i < t.size() && ++t[i] == xo->n) t[i++] = 0;
    if (i == t.size()) break;
  }
  return out;
}

}  // namespace

TEST(Lift, AddsAFreshBottom) {
  LiftModel m;
  auto x = m.make_poset(2, {{0, 1}});
  auto lx = m.lift(x);
  EXPECT_EQ(lx->n, 3);
  EXPECT_TRUE(lx->leq(0, 1) && lx->leq(1, 2) && lx->leq(0, 2));
  EXPECT_FALSE(lx->leq(2, 1));
  EXPECT_EQ(m.bottom(lx), 0);
  auto e = m.lift(m.make_poset(0, {}));
  EXPECT_EQ(e->n, 1);
}

TEST(Lift, PointIsTheEmbedding) {
  LiftModel m;
  auto x = m.make_poset(3, {{0, 1}});
  auto p = m.point(x);
  EXPECT_EQ(p.comp[0], (std::vector<int>{1, 2, 3}));
  Ops<LiftModel> ops(m);
  EXPECT_TRUE(m.equal(derive_point(ops, x), p));
}

TEST(Lift, DerivedPointIsTheEmbeddingOnSamples) {
  LiftModel m;
  Ops<LiftModel> ops(m);
  for (int i = 0; i < 40; ++i) {
    Rng rng(500 + i);
    auto x = m.random_object(rng);
    EXPECT_TRUE(m.equal(derive_point(ops, x), m.point(x)));
  }
}

TEST(Lift, FunctorKeepsBottom) {
  LiftModel m;
  for (int i = 0; i < 30; ++i) {
    Rng rng(600 + i);
    auto a = m.random_object(rng), b = m.random_object(rng);
    auto f = m.random_mor(a, b, rng);
    if (!f) continue;
    auto lf = m.delay_mor(*f);
    EXPECT_EQ(lf(0), 0);
    for (int x = 0; x < a->n; ++x) EXPECT_EQ(lf(x + 1), (*f)(x) + 1);
  }
}

TEST(Lift, RejectsNonMonotoneTables) {
  LiftModel m;
  auto x = m.make_poset(2, {{0, 1}});
  EXPECT_THROW(m.make_mor(x, x, {1, 0}), NotMonotone);
}

TEST(TwoChain, HasExactlyTwoSolutions) {
  LiftModel m;
  auto f = two_chain_example(m);
  auto sols = enumerate_solutions(m, f);
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_EQ(sols[0].comp[0], (std::vector<int>{0}));
  EXPECT_EQ(sols[1].comp[0], (std::vector<int>{1}));
  EXPECT_EQ(all_solutions(m, f), (std::vector<std::vector<int>>{{0}, {1}}));
  EXPECT_TRUE(check_guarded_square(m, f, sols[0]));
  EXPECT_TRUE(check_guarded_square(m, f, sols[1]));
}

TEST(TwoChain, LeastFixpointIsZero) {
  LiftModel m;
  auto f = two_chain_example(m);
  // Kleene: bot -> f(bot) = 0 -> f(0) = 0, stable
  EXPECT_EQ(m.kleene(f).comp[0], (std::vector<int>{1}));
  EXPECT_EQ(m.dagger(f).comp[0], (std::vector<int>{0}));
}

TEST(Dagger, ConstantMapGivesTheConstant) {
  LiftModel m;
  auto x = m.make_poset(3, {{0, 1}});
  auto y = m.make_poset(2, {});
  auto d = m.product(m.lift(x), y);
  std::vector<int> t(static_cast<std::size_t>(d->n), 2);
  auto f = m.make_mor(d, x, t);
  EXPECT_EQ(m.dagger(f).comp[0], (std::vector<int>{2, 2}));
}

TEST(Dagger, IsTheLeastBruteForceSolution) {
  LiftModel m(Delay::lift, 3);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    Rng rng(mix_seed(21, "lift", static_cast<std::uint64_t>(i)));
    auto x = m.random_object(rng);
    auto y = m.random_object(rng);
    if (y->n > 2) continue;
    auto f = m.random_mor(m.product(m.lift(x), y), x, rng);
    if (!f) continue;
    auto sols = all_solutions(m, *f);
    auto s = m.dagger(*f);
    ASSERT_FALSE(sols.empty());
    bool member = false;
    for (const auto& t : sols) {
      member = member || t == s.comp[0];
      for (int yy = 0; yy < y->n; ++yy) EXPECT_TRUE(x->leq(s(yy), t[static_cast<std::size_t>(yy)]));
    }
    EXPECT_TRUE(member);
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

TEST(DoubleDagger, ConstantAndRandomInstances) {
  LiftModel m(Delay::lift, 3);
  auto x = m.make_poset(2, {{0, 1}});
  auto lx = m.lift(x);
  auto dom = m.product(lx, m.product(lx, m.terminal()));
  auto konst = m.make_mor(dom, x, std::vector<int>(static_cast<std::size_t>(dom->n), 1));
  EXPECT_TRUE(check_lift_double_dagger(m, konst).holds);

  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(mix_seed(22, "dd", static_cast<std::uint64_t>(i)));
    auto xo = m.random_object(rng), y = m.random_object(rng);
    auto l = m.lift(xo);
    auto f = m.random_mor(m.product(l, m.product(l, y)), xo, rng);
    if (!f) continue;
    auto r = check_lift_double_dagger(m, *f);
    EXPECT_TRUE(r.holds) << m.describe(*f).dump();
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(DoubleDagger, TwoChainWithADummyArgument) {
  LiftModel m;
  auto x = m.make_poset(2, {{0, 1}});
  auto lx = m.lift(x);
  auto dom = m.product(lx, m.product(lx, m.terminal()));
  // f(u, v, *) = f_3.8(u): the second delayed argument is ignored
  std::vector<int> t;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) t.push_back(u == 2 ? 1 : 0);
  auto r = check_lift_double_dagger(m, m.make_mor(dom, x, t));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.lhs.comp[0], (std::vector<int>{0}));
  EXPECT_EQ(r.rhs.comp[0], (std::vector<int>{0}));
}

TEST(WeakModel, LiftingDoesNotPreserveProducts) {
  LiftModel m;
  auto pt = m.make_poset(1, {});
  // (1 x 1)_bot has 2 elements, 1_bot x 1_bot has 4
  EXPECT_FALSE(m.can_inverse(pt, pt).has_value());
  EXPECT_FALSE(m.preserves_products());
  EXPECT_TRUE(LiftModel(Delay::identity).preserves_products());
}

TEST(Uniformity, PremiseGenerationIsViable) {
  LiftModel m(Delay::lift, 3);
  int found = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(mix_seed(23, "premise", static_cast<std::uint64_t>(i)));
    auto x = m.random_object(rng), x2 = m.random_object(rng), a = m.random_object(rng);
    auto p = m.premise_instance(x, x2, a, std::nullopt, rng);
    if (!p) continue;
    ++found;
    Ops<LiftModel> o(m);
    // h . f == f2 . (>h x A)
    EXPECT_TRUE(o.eq(o.o(p->h, p->f), o.o(p->f2, o.times(o.later(p->h), o.id(a)))));
  }
  EXPECT_GE(found, 30);
}

TEST(IdentityDelay, LeastFixpointOnPointedPosets) {
  LiftModel m(Delay::identity);
  auto x = m.make_poset(3, {{0, 1}, {1, 2}});
  auto d = m.product(x, m.terminal());
  // f = succ capped at 2: least fixpoint is the top
  auto f = m.make_mor(d, x, {1, 2, 2});
  EXPECT_EQ(m.dagger(f).comp[0], (std::vector<int>{2}));
}
