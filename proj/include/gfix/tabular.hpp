#pragma once

// Helpers shared by models whose morphisms are finite lookup tables, one
// table per stage (presheaf stages; a single stage for posets and spaces).

#include <optional>
#include <vector>

#include "gfix/category.hpp"

namespace gfix {

using Tables = std::vector<std::vector<int>>;

// clang-format off
template <class M>
concept TabularModel = GuardedModel<M> &&
    requires(const M& m, const typename M::Obj& a, const typename M::Mor& f, Tables t) {
  { m.stages() } -> std::same_as<int>;
  { m.size(a, 0) } -> std::same_as<int>;
  { m.tables(f) } -> std::convertible_to<const Tables&>;
  { m.from_tables(a, a, t) } -> std::same_as<std::optional<typename M::Mor>>;
};
// clang-format on

template <TabularModel M>
bool surjective(const M& m, const typename M::Mor& f) {
  const Tables& t = m.tables(f);
  auto cod = m.cod(f);
  for (int s = 0; s < m.stages(); ++s) {
    std::vector<char> hit(static_cast<std::size_t>(m.size(cod, s)), 0);
    for (int v : t[static_cast<std::size_t>(s)]) hit[static_cast<std::size_t>(v)] = 1;
    for (char c : hit)
      if (!c) return false;
  }
  return true;
}

/// Inverse of can : >(X x Y) -> >X x >Y when it is a bijection at every
/// stage.
template <TabularModel M>
std::optional<typename M::Mor> tabular_can_inverse(const M& m, const typename M::Obj& a,
                                                   const typename M::Obj& b) {
  Ops<M> ops(m);
  auto can = ops.can(a, b);
  const Tables& t = m.tables(can);
  Tables inv(t.size());
  auto cod = m.cod(can);
  for (std::size_t s = 0; s < t.size(); ++s) {
    int n = m.size(cod, static_cast<int>(s));
    if (static_cast<int>(t[s].size()) != n) return std::nullopt;
    inv[s].assign(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < t[s].size(); ++i) {
      int& slot = inv[s][static_cast<std::size_t>(t[s][i])];
      if (slot != -1) return std::nullopt;
      slot = static_cast<int>(i);
    }
  }
  return m.from_tables(cod, m.dom(can), std::move(inv));
}

/// Builds (f, f2, h) with post . f == f2 . (>h x A), post = h or h x B.
///
/// h is drawn surjective; f is free; f2 is read off f through a chosen
/// preimage under >h x A and accepted only when the choice does not
/// matter.  Entries of f2 outside the image of >h x A are filled from a
/// random morphism and the result must validate as a morphism.
template <TabularModel M>
std::optional<Premise<typename M::Mor>> tabular_premise(const M& m, const typename M::Obj& xo,
                                                        const typename M::Obj& x2,
                                                        const typename M::Obj& a,
                                                        const std::optional<typename M::Obj>& b,
                                                        Rng& rng) {
  using Mor = typename M::Mor;
  Ops<M> ops(m);
  std::optional<Mor> h;
  for (int attempt = 0; attempt < 12 && !h; ++attempt) {
    auto cand = m.random_mor(xo, x2, rng);
    if (!cand) return std::nullopt;
    if (surjective(m, *cand)) h = cand;
  }
  if (!h) return std::nullopt;

  auto cod = b ? m.product(xo, *b) : xo;
  auto cod2 = b ? m.product(x2, *b) : x2;
  Mor post = b ? ops.times(*h, ops.id(*b)) : *h;
  Mor pre = ops.times(ops.later(*h), ops.id(a));
  auto f = m.random_mor(m.product(m.delay(xo), a), cod, rng);
  if (!f) return std::nullopt;

  const Tables& ft = m.tables(*f);
  const Tables& pt = m.tables(pre);
  const Tables& qt = m.tables(post);
  auto dom2 = m.cod(pre);
  Tables g(static_cast<std::size_t>(m.stages()));
  for (int s = 0; s < m.stages(); ++s) {
    auto si = static_cast<std::size_t>(s);
    g[si].assign(static_cast<std::size_t>(m.size(dom2, s)), -1);
    for (std::size_t e = 0; e < ft[si].size(); ++e) {
      int target = pt[si][e];
      int val = qt[si][static_cast<std::size_t>(ft[si][e])];
      int& slot = g[si][static_cast<std::size_t>(target)];
      if (slot == -1)
        slot = val;
      else if (slot != val)
        return std::nullopt;
    }
  }
  for (int attempt = 0; attempt < 6; ++attempt) {
    Tables filled = g;
    auto filler = m.random_mor(dom2, cod2, rng);
    if (!filler) return std::nullopt;
    const Tables& fl = m.tables(*filler);
    bool complete = true;
    for (std::size_t s = 0; s < filled.size(); ++s)
      for (std::size_t e = 0; e < filled[s].size(); ++e)
        if (filled[s][e] == -1) {
          filled[s][e] = fl[s][e];
          complete = false;
        }
    if (auto f2 = m.from_tables(dom2, cod2, std::move(filled))) return Premise<Mor>{*f, *f2, *h};
    if (complete) break;
  }
  return std::nullopt;
}

}  // namespace gfix
