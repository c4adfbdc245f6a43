#include <gtest/gtest.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "gfix/rng.hpp"
#include "gfix/sigma_tree.hpp"

using namespace gfix;
using namespace gfix::tree;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream f(std::string(GFIX_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// A plain owning tree with no sharing, used by the substitution oracle.
struct T {
  enum Kind { Op, Var, Par, Cut } kind;
  int id = 0;
  std::vector<std::shared_ptr<T>> kids;
};
using P = std::shared_ptr<T>;

P from(Tree t) {
  auto p = std::make_shared<T>();
  switch (t->kind) {
    case Node::Kind::cut:
      p->kind = T::Cut;
      break;
    case Node::Kind::var:
      p->kind = t->elem->kind == Elem::Kind::inl ? T::Var : T::Par;
      p->id = t->elem->inner->atom;
      break;
    case Node::Kind::op:
      p->kind = T::Op;
      p->id = t->sym;
      for (Tree c : t->kids) p->kids.push_back(from(c));
  }
  return p;
}

P substitute(const P& t, const std::vector<P>& bodies) {
  if (t->kind == T::Var) return bodies[static_cast<std::size_t>(t->id)];
  if (t->kind != T::Op) return t;
  auto p = std::make_shared<T>(*t);
  for (auto& c : p->kids) c = substitute(c, bodies);
  return p;
}

std::string render(const P& t, int k, const Signature& sig, const std::vector<std::string>& params) {
  if (k <= 0 || t->kind == T::Cut || t->kind == T::Var) return "□";
  if (t->kind == T::Par) return params[static_cast<std::size_t>(t->id)];
  const auto& s = sig.at(t->id);
  if (t->kids.empty()) return s.name;
  if (k == 1) return "□";
  std::string out = s.name + "(";
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (i) out += ",";
    out += render(t->kids[i], k - 1, sig, params);
  }
  return out + ")";
}

// k rounds of x := body_x starting from the bare variables; every
// surviving variable sits below depth k, so the truncation hides it.
std::vector<std::string> round_oracle(const EquationSystem& sys, int k) {
  std::vector<P> bodies;
  for (Tree b : sys.bodies) bodies.push_back(from(b));
  std::vector<P> cur;
  for (std::size_t i = 0; i < bodies.size(); ++i) cur.push_back(std::make_shared<T>(T{T::Var, static_cast<int>(i), {}}));
  for (int r = 0; r < k; ++r)
    for (auto& c : cur) c = substitute(c, bodies);
  std::vector<std::string> out;
  for (auto& c : cur) out.push_back(render(c, k, sys.sig, sys.params));
  return out;
}

Tree random_body(const Signature& sig, int nx, int ny, int height, bool root, Rng& rng) {
  // the root is always a symbol of positive arity, which keeps the system guarded
  if (!root && (height == 0 || rng.below(3) == 0)) {
    int pick = static_cast<int>(rng.below(nx + ny + 1));
    if (pick < nx) return var(inl(atom(pick)));
    if (pick < nx + ny) return var(inr(atom(pick - nx)));
    return op(sig.constant());
  }
  std::vector<int> ops;
  for (int i = 0; i < sig.size(); ++i)
    if (sig.at(i).arity > 0) ops.push_back(i);
  int s = rng.pick(ops);
  std::vector<Tree> kids;
  for (int i = 0; i < sig.at(s).arity; ++i) kids.push_back(random_body(sig, nx, ny, height - 1, false, rng));
  return op(s, std::move(kids));
}

EquationSystem random_system(Rng& rng) {
  EquationSystem sys;
  sys.sig = Signature::standard();
  int nx = 1 + static_cast<int>(rng.below(3)), ny = static_cast<int>(rng.below(3));
  for (int i = 0; i < nx; ++i) sys.vars.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < ny; ++i) sys.params.push_back("y" + std::to_string(i + 1));
  for (int i = 0; i < nx; ++i) sys.bodies.push_back(random_body(sys.sig, nx, ny, 3, true, rng));
  return sys;
}

}  // namespace

TEST(WorkedSystem, DisplayedTreesAtDepthFour) {
  auto sys = parse_system(slurp("worked_system.txt"));
  auto sol = solve(sys, 4);
  ASSERT_EQ(sol.size(), 2u);
  EXPECT_EQ(sys.print_solution(sol[0]), "*(*(*(□,y2),c),y1)");
  EXPECT_EQ(sys.print_solution(sol[1]), "*(*(*(□,y1),y2),c)");
  EXPECT_EQ(round_oracle(sys, 4), (std::vector<std::string>{"*(*(*(□,y2),c),y1)", "*(*(*(□,y1),y2),c)"}));
}

TEST(WorkedSystem, SquareHoldsAtDepthEight) {
  auto sys = parse_system(slurp("worked_system.txt"));
  EXPECT_TRUE(check_solution_square(sys, solve(sys, 8), 8));
}

TEST(WorkedSystem, AgreesWithRoundOracleAtEveryDepth) {
  auto sys = parse_system(slurp("worked_system.txt"));
  for (int k = 0; k <= 10; ++k) {
    auto sol = solve(sys, k);
    auto oracle = round_oracle(sys, k);
    for (std::size_t i = 0; i < sol.size(); ++i) EXPECT_EQ(sys.print_solution(sol[i]), oracle[i]) << k;
  }
}

TEST(Solve, UnaryLoopUnfoldsToATower) {
  auto sys = parse_system("sig: s:1; vars: x\nx = s(x)\n");
  // depth k holds k-1 operation nodes above the cut
  EXPECT_EQ(sys.print_solution(solve(sys, 1)[0]), "□");
  EXPECT_EQ(sys.print_solution(solve(sys, 4)[0]), "s(s(s(□)))");
  EXPECT_EQ(round_oracle(sys, 4)[0], "s(s(s(□)))");
}

TEST(Solve, ParameterOnlyBody) {
  auto sys = parse_system(slurp("param_only.txt"));
  EXPECT_EQ(sys.print_solution(solve(sys, 5)[0]), "y");
}

TEST(Solve, EmptySystem) {
  auto sys = parse_system("sig: c:0; vars: ; params: y\n");
  EXPECT_TRUE(solve(sys, 6).empty());
  EXPECT_TRUE(check_solution_square(sys, {}, 6));
}

TEST(Solve, UnguardedEquationNamesTheVariable) {
  try {
    parse_system(slurp("unguarded.txt"));
    FAIL() << "expected a guardedness error";
  } catch (const GuardednessError& e) {
    EXPECT_EQ(e.variable, "x");
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_system(""), ParseError);
  EXPECT_THROW(parse_system("vars: x\nx = x\n"), ParseError);
  EXPECT_THROW(parse_system("sig: s:1; vars: x\nx = s(x\n"), ParseError);
  EXPECT_THROW(parse_system("sig: s:1; vars: x\nx = s(x, x)\n"), ParseError);
  EXPECT_THROW(parse_system("sig: s:1; vars: x\nx = s(q)\n"), ParseError);
  EXPECT_THROW(parse_system("sig: s:1; vars: x,z\nx = s(x)\n"), ParseError);
  EXPECT_THROW(parse_system("sig: s:1; vars: x\nx = s(x)\nx = s(s(x))\n"), ParseError);
  EXPECT_THROW(parse_system("sig: s; vars: x\nx = s(x)\n"), ParseError);
}

TEST(Solve, RandomSystemsMatchTheOracleAndSquare) {
  for (int i = 0; i < 60; ++i) {
    Rng rng(mix_seed(41, "systems", static_cast<std::uint64_t>(i)));
    auto sys = random_system(rng);
    for (int k : {3, 6, 9, 12}) {
      auto sol = solve(sys, k);
      EXPECT_TRUE(check_solution_square(sys, sol, k));
      auto oracle = round_oracle(sys, k);
      for (std::size_t x = 0; x < sol.size(); ++x) EXPECT_EQ(sys.print_solution(sol[x]), oracle[x]);
    }
  }
}

TEST(Solve, KleeneFromAllCutsAgrees) {
  // a second solver: iterate cand := body[cand] from the all-cut map
  for (int i = 0; i < 40; ++i) {
    Rng rng(mix_seed(42, "kleene", static_cast<std::uint64_t>(i)));
    auto sys = random_system(rng);
    const int k = 8;
    std::vector<Tree> cand(sys.vars.size(), cut());
    for (int r = 0; r <= k; ++r) {
      std::vector<Tree> next;
      for (Tree b : sys.bodies)
        next.push_back(subst(b, k, [&](E e, int rem) -> Tree {
          if (e->kind == Elem::Kind::inl) return trunc(cand[static_cast<std::size_t>(e->inner->atom)], rem);
          return var(e->inner);
        }));
      cand = std::move(next);
    }
    auto sol = solve(sys, k);
    for (std::size_t x = 0; x < sol.size(); ++x) EXPECT_EQ(cand[x], sol[x]);
  }
}

TEST(Truncation, Convention) {
  Tree t = op(2, {op(1, {op(0)}), var(atom(0))});  // *(s(c), a0)
  EXPECT_EQ(trunc(t, 0), cut());
  EXPECT_EQ(trunc(t, 1), cut());
  EXPECT_EQ(trunc(t, 2), op(2, {cut(), var(atom(0))}));
  EXPECT_EQ(trunc(t, 3), t);
  EXPECT_EQ(trunc(op(0), 1), op(0));
  EXPECT_NE(cut(), op(0));
}

TEST(Monad, SubstitutionLaws) {
  auto sig = Signature::standard();
  Subst unit = [](E e, int) { return var(e); };
  for (int i = 0; i < 50; ++i) {
    Rng rng(mix_seed(43, "monad", static_cast<std::uint64_t>(i)));
    Tree t = random_body(sig, 2, 1, 4, false, rng);
    Tree a = random_body(sig, 0, 2, 3, false, rng);
    Tree b = random_body(sig, 0, 2, 3, false, rng);
    Tree c = random_body(sig, 0, 1, 2, false, rng);
    // s sends x0, x1 to trees over params y0, y1; r sends y0, y1 to trees over y0
    Subst s = [&](E e, int k) { return trunc(e->kind == Elem::Kind::inl ? (e->inner->atom == 0 ? a : b) : var(e), k); };
    Subst r = [&](E e, int k) { return trunc(e->kind == Elem::Kind::inr && e->inner->atom == 1 ? c : var(e), k); };
    for (int k : {2, 5, 9}) {
      EXPECT_EQ(subst(t, k, unit), trunc(t, k));
      EXPECT_EQ(subst(var(inl(atom(0))), k, s), trunc(a, k));
      Tree lhs = subst(subst(t, k, s), k, r);
      Tree rhs = subst(t, k, [&](E e, int rem) { return subst(s(e, rem), rem, r); });
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Factorisation, CertificateAndFlattening) {
  TaggedSystem f;
  f.sig = Signature::standard();
  f.vars = {"x1", "x2"};
  f.params = {"y1"};
  // x1 -> inl(>s(x2)),  x2 -> inr(y1)
  f.rhs = {var(inl(guard(op(1, {var(atom(1))})))), var(inr(atom(0)))};
  auto fac = guardedness_factor(f);
  EXPECT_EQ(fac.certificate, (std::vector<Summand>{Summand::operation, Summand::parameter}));
  EXPECT_EQ(fac.flat.bodies[0], op(1, {var(inl(atom(1)))}));
  EXPECT_EQ(fac.flat.bodies[1], var(inr(atom(0))));
  auto sol = dagger_citm(f, 5);
  EXPECT_EQ(fac.flat.print_solution(sol[0]), "s(y1)");
  EXPECT_EQ(fac.flat.print_solution(sol[1]), "y1");
}

TEST(Factorisation, MatchesSolveOnTheParsedSystem) {
  TaggedSystem f;
  f.sig = Signature::standard();
  f.vars = {"x1", "x2"};
  f.params = {"y1"};
  // x1 -> *(inl(>s(x2)), inr y1),  x2 -> inl(>*(x1, x2))
  f.rhs = {op(2, {var(inl(guard(op(1, {var(atom(1))})))), var(inr(atom(0)))}),
           var(inl(guard(op(2, {var(atom(0)), var(atom(1))}))))};
  auto sys = parse_system("sig: c:0, s:1, *:2; vars: x1,x2; params: y1\nx1 = *(s(x2), y1)\nx2 = *(x1, x2)\n");
  for (int k : {3, 7, 10}) EXPECT_EQ(dagger_citm(f, k), solve(sys, k));
}

TEST(Factorisation, RejectsMalformedTags) {
  TaggedSystem f;
  f.sig = Signature::standard();
  f.vars = {"x"};
  f.params = {};
  f.rhs = {var(inl(guard(var(atom(0)))))};
  EXPECT_THROW(guardedness_factor(f), MalformedTagging);
  f.rhs = {var(inl(atom(0)))};
  EXPECT_THROW(guardedness_factor(f), MalformedTagging);
}

TEST(Factorisation, GuardedLeafUnfolds) {
  TaggedSystem f;
  f.sig = Signature::standard();
  f.vars = {"x"};
  f.params = {};
  f.rhs = {var(inl(guard(op(1, {var(atom(0))}))))};
  EXPECT_EQ(print(dagger_citm(f, 4)[0], f.sig), "s(s(s(□)))");
}
