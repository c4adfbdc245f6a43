#include <gtest/gtest.h>

#include "gfix/citm.hpp"
#include "gfix/cms.hpp"
#include "gfix/cpolift.hpp"
#include "gfix/presheaf.hpp"

using namespace gfix;

namespace {

template <class M>
M make();
template <>
presheaf::PresheafModel make() {
  return presheaf::PresheafModel(presheaf::FinPoset::chain(2), {2, 256});
}
template <>
cpolift::LiftModel make() {
  return cpolift::LiftModel(cpolift::Delay::lift, 2);
}
template <>
cms::CmsModel make() {
  return cms::CmsModel(2, 2);
}
template <>
citm::CitmModel make() {
  return citm::CitmModel(6, tree::Signature::standard(), 2);
}

template <class M>
class Core : public ::testing::Test {
 protected:
  M m = make<M>();
  Ops<M> ops{m};

  template <class F>
  void sample(int n, std::uint64_t seed, F body) {
    int done = 0;
    for (int i = 0; done < n && i < 50 * n; ++i) {
      Rng rng(mix_seed(seed, "core", static_cast<std::uint64_t>(i)));
      try {
        body(rng);
        ++done;
      } catch (const NoMorphism&) {
      }
    }
    EXPECT_EQ(done, n) << "too few instances";
  }

  typename M::Mor mor(const typename M::Obj& a, const typename M::Obj& b, Rng& rng) {
    auto f = m.random_mor(a, b, rng);
    if (!f) throw NoMorphism("empty");
    return *f;
  }

  /// A codomain every model can sample morphisms into.
  typename M::Obj finite(Rng& rng) { return m.random_object(rng); }
};

using Models = ::testing::Types<presheaf::PresheafModel, cpolift::LiftModel, cms::CmsModel, citm::CitmModel>;
TYPED_TEST_SUITE(Core, Models);

TYPED_TEST(Core, ProductLaws) {
  auto& o = this->ops;
  this->sample(40, 1, [&](Rng& rng) {
    auto a = this->finite(rng), b = this->finite(rng), c = this->finite(rng);
    auto f = this->mor(a, b, rng);
    auto g = this->mor(a, c, rng);
    EXPECT_TRUE(o.eq(o.o(o.pl(b, c), o.pair(f, g)), f));
    EXPECT_TRUE(o.eq(o.o(o.pr(b, c), o.pair(f, g)), g));
    EXPECT_TRUE(o.eq(o.pair(o.pl(b, c), o.pr(b, c)), o.id(o.x(b, c))));
    EXPECT_TRUE(o.eq(o.diag(a), o.pair(o.id(a), o.id(a))));
    EXPECT_TRUE(o.eq(o.o(f, o.id(a)), f));
    EXPECT_TRUE(o.eq(o.o(o.id(b), f), f));
  });
}

TYPED_TEST(Core, TerminalMapsAreEqual) {
  auto& o = this->ops;
  this->sample(20, 2, [&](Rng& rng) {
    auto a = this->finite(rng), b = this->finite(rng);
    auto f = this->mor(a, b, rng);
    EXPECT_TRUE(o.eq(o.o(o.bang(b), f), o.bang(a)));
  });
}

TYPED_TEST(Core, AssociatorsAreInverse) {
  auto& o = this->ops;
  this->sample(20, 3, [&](Rng& rng) {
    auto a = this->finite(rng), b = this->finite(rng), c = this->finite(rng);
    EXPECT_TRUE(o.eq(o.o(o.assoc_l(a, b, c), o.assoc_r(a, b, c)), o.id(o.x(o.x(a, b), c))));
    EXPECT_TRUE(o.eq(o.o(o.assoc_r(a, b, c), o.assoc_l(a, b, c)), o.id(o.x(a, o.x(b, c)))));
  });
}

TYPED_TEST(Core, DelayIsFunctorAndPointIsNatural) {
  auto& o = this->ops;
  this->sample(40, 4, [&](Rng& rng) {
    auto a = this->finite(rng), b = this->finite(rng), c = this->finite(rng);
    auto f = this->mor(a, b, rng);
    auto g = this->mor(b, c, rng);
    EXPECT_TRUE(o.eq(o.later(o.id(a)), o.id(o.later(a))));
    EXPECT_TRUE(o.eq(o.later(o.o(g, f)), o.o(o.later(g), o.later(f))));
    EXPECT_TRUE(o.eq(o.o(o.later(f), o.point(a)), o.o(o.point(b), f)));
  });
}

TYPED_TEST(Core, EqualityIsACongruence) {
  auto& o = this->ops;
  this->sample(30, 5, [&](Rng& rng) {
    auto a = this->finite(rng), b = this->finite(rng), c = this->finite(rng);
    auto f = this->mor(a, b, rng);
    auto f2 = this->mor(a, b, rng);
    auto g = this->mor(b, c, rng);
    auto k = this->mor(a, c, rng);
    if (!o.eq(f, f2)) return;
    EXPECT_TRUE(o.eq(o.o(g, f), o.o(g, f2)));
    EXPECT_TRUE(o.eq(o.pair(f, k), o.pair(f2, k)));
    EXPECT_TRUE(o.eq(o.later(f), o.later(f2)));
  });
}

TYPED_TEST(Core, RandomMorphismIsDeterministic) {
  for (int i = 0; i < 20; ++i) {
    Rng r1(100 + i), r2(100 + i);
    auto a = this->m.random_object(r1), b = this->m.random_object(r1);
    auto a2 = this->m.random_object(r2), b2 = this->m.random_object(r2);
    ASSERT_TRUE(this->m.same(a, a2));
    ASSERT_TRUE(this->m.same(b, b2));
    auto f = this->m.random_mor(a, b, r1), g = this->m.random_mor(a2, b2, r2);
    ASSERT_EQ(f.has_value(), g.has_value());
    if (f) EXPECT_EQ(this->m.describe(*f).dump(), this->m.describe(*g).dump());
  }
}

TYPED_TEST(Core, TerminalFixpointIsTheUniqueMap) {
  auto& o = this->ops;
  this->sample(10, 6, [&](Rng& rng) {
    auto y = this->finite(rng);
    auto one = o.one();
    auto f = o.bang(o.x(o.later(one), y));
    EXPECT_TRUE(check_guarded_square(o, f, o.bang(y)));
    EXPECT_TRUE(o.eq(o.dag(f), o.bang(y)));
  });
}

TYPED_TEST(Core, DaggerSolvesTheSquare) {
  auto& o = this->ops;
  this->sample(40, 7, [&](Rng& rng) {
    auto x = this->finite(rng), y = this->finite(rng);
    auto f = this->mor(o.x(o.later(x), y), x, rng);
    EXPECT_TRUE(check_guarded_square(o, f, o.dag(f)));
  });
}

TYPED_TEST(Core, CompositionChecksShapes) {
  Rng rng(8);
  auto& m = this->m;
  auto a = m.terminal();
  auto b = m.product(m.terminal(), m.terminal());
  auto c = m.delay(m.terminal());
  EXPECT_THROW(m.compose(m.id(a), m.id(c)), CompositionError);
  (void)b;
}

}  // namespace

// ------------------------------------------------------------ enumerable models

TEST(CoreEnumeration, SamplesStayInsideTheHomSet) {
  presheaf::PresheafModel m(presheaf::FinPoset::chain(2), {2, 256});
  for (int i = 0; i < 30; ++i) {
    Rng rng(200 + i);
    auto a = m.random_object(rng), b = m.random_object(rng);
    auto all = m.hom(a, b, 100000);
    ASSERT_TRUE(all.has_value());
    auto f = m.random_mor(a, b, rng);
    if (all->empty()) {
      EXPECT_FALSE(f.has_value());
      continue;
    }
    ASSERT_TRUE(f.has_value());
    bool found = false;
    for (const auto& g : *all) found = found || m.equal(*f, g);
    EXPECT_TRUE(found);
  }
}

TEST(CoreEnumeration, TerminalCodomainHasOneSolution) {
  cpolift::LiftModel m;
  auto one = m.terminal();
  auto y = m.make_poset(2, {{0, 1}});
  auto f = m.bang(m.product(m.delay(one), y));
  EXPECT_EQ(enumerate_solutions(m, f).size(), 1u);
}

TEST(CoreEnumeration, InfiniteHomSetsAreUnsupported) {
  citm::CitmModel m(4);
  auto x = m.base(1);
  Rng rng(3);
  auto f = m.random_mor(m.product(m.delay(x), m.base(1)), x, rng);
  ASSERT_TRUE(f.has_value());
  EXPECT_THROW(enumerate_solutions(m, *f), UnsupportedOracle);
}

TEST(CoreEnumeration, LiftCompositionIsPointwise) {
  cpolift::LiftModel m(cpolift::Delay::lift, 3);
  for (int i = 0; i < 50; ++i) {
    Rng rng(300 + i);
    auto a = m.random_object(rng), b = m.random_object(rng), c = m.random_object(rng);
    auto f = m.random_mor(a, b, rng), g = m.random_mor(b, c, rng);
    if (!f || !g) continue;
    auto h = m.compose(*f, *g);
    for (int x = 0; x < a->n; ++x) EXPECT_EQ(h(x), (*g)((*f)(x)));
  }
}
