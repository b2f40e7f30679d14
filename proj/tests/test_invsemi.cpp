#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpgroupoid/invsemi.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <numeric>

using namespace lpg;

namespace {

PartialBijection random_partial_bijection(std::mt19937_64& g, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  std::vector<int> map(n);
  for (int x = 0; x < n; ++x) map[x] = testing_support::uniform_int(g, 0, 3) == 0 ? -1 : perm[x];
  return PartialBijection(map);
}

// Checks the (A, g) model against the presentation; returns the class count.
std::size_t exel_against_closure(const FiniteGroup& g) {
  auto r = testing_support::exel_closure_compare(g);
  CHECK(r.respects_relations);
  CHECK(r.injective);
  CHECK(r.surjective);
  CHECK(r.tables_agree);
  return r.classes;
}

}  // namespace

TEST_CASE("partial bijections compose right to left") {
  PartialBijection f({1, -1, -1});
  PartialBijection h({-1, 2, -1});
  CHECK(compose(h, f).map == std::vector<int>{2, -1, -1});
  CHECK(compose(f, h).is_empty());
  CHECK(inverse(f).map == std::vector<int>{-1, 0, -1});
  CHECK_THROWS_AS(PartialBijection({1, 1}), AxiomError);
}

TEST_CASE("generate_from_partial_bijections examples") {
  auto id = generate_from_partial_bijections({PartialBijection::identity(3)});
  CHECK(id.semigroup.size() == 1);
  auto swap = generate_from_partial_bijections({PartialBijection({1, 0})});
  CHECK(swap.semigroup.size() == 2);
  CHECK(swap.semigroup.idempotents().size() == 1);
  auto t = generate_from_partial_bijections({PartialBijection({1, -1})});
  CHECK(t.semigroup.size() == 5);
  REQUIRE(t.semigroup.zero().has_value());
  CHECK(t.elements[*t.semigroup.zero()].is_empty());
  CHECK(t.semigroup.idempotents().size() == 3);
  CHECK_THROWS_AS(generate_from_partial_bijections({PartialBijection({1, 2, 3, 4, 5, 0})}, 3),
                  std::length_error);
}

TEST_CASE("validate_inverse_semigroup examples") {
  auto z2 = validate_inverse_semigroup({{0, 1}, {1, 0}}, {0, 1});
  CHECK(z2.idempotents() == std::vector<int>{0});
  CHECK_FALSE(z2.zero().has_value());

  // Symmetric inverse monoid on one point {0, 1} extended by t: x -> y on {x, y}:
  // take the closure table and re-validate it.
  auto t = generate_from_partial_bijections({PartialBijection({1, -1})});
  const auto& s = t.semigroup;
  std::vector<std::vector<int>> mult(s.size(), std::vector<int>(s.size()));
  std::vector<int> star(s.size());
  for (int a = 0; a < static_cast<int>(s.size()); ++a) {
    star[a] = s.star(a);
    for (int b = 0; b < static_cast<int>(s.size()); ++b) mult[a][b] = s.mul(a, b);
  }
  auto v = validate_inverse_semigroup(mult, star);
  CHECK(v.zero() == s.zero());

  // Left-zero band: every element is a generalized inverse of every other.
  CHECK_THROWS_WITH_AS(validate_inverse_semigroup({{0, 0}, {1, 1}}, {0, 1}),
                       doctest::Contains("two generalized inverses"), AxiomError);
  CHECK_THROWS_AS(validate_inverse_semigroup({{0, 0}, {0, 0}}, {1, 1}), AxiomError);
}

TEST_CASE("natural order") {
  auto t = generate_from_partial_bijections({PartialBijection({1, -1}), PartialBijection::identity(2)});
  const auto& s = t.semigroup;
  const int n = static_cast<int>(s.size());
  int unit = -1;
  for (int a = 0; a < n; ++a)
    if (t.elements[a] == PartialBijection::identity(2)) unit = a;
  REQUIRE(unit >= 0);
  for (int a = 0; a < n; ++a) {
    CHECK(natural_order(s, a, a));
    if (s.is_idempotent(a)) CHECK(natural_order(s, a, unit));
    CHECK(natural_order(s, *s.zero(), a));
    for (int b = 0; b < n; ++b) {
      bool via_idempotent = false;
      for (int e : s.idempotents()) via_idempotent = via_idempotent || s.mul(b, e) == a;
      CHECK(natural_order(s, a, b) == via_idempotent);
    }
  }
}

TEST_CASE("random generated semigroups: involution laws, E(S) and the spectral action") {
  auto& g = testing_support::rng();
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 3;
    std::vector<PartialBijection> gens;
    for (int k = 0; k < 1 + trial % 3; ++k) gens.push_back(random_partial_bijection(g, n));
    auto gen = generate_from_partial_bijections(gens);
    const auto& s = gen.semigroup;
    const int m = static_cast<int>(s.size());
    for (int a = 0; a < m; ++a) {
      CHECK(s.star(s.star(a)) == a);
      CHECK(gen.elements[s.star(a)] == inverse(gen.elements[a]));
      CHECK(s.is_idempotent(a) == gen.elements[a].is_idempotent());
      for (int b = 0; b < m; ++b) {
        CHECK(s.star(s.mul(a, b)) == s.mul(s.star(b), s.star(a)));
        CHECK(gen.elements[s.mul(a, b)] == compose(gen.elements[a], gen.elements[b]));
      }
    }
    if (s.semilattice().size() > 20) continue;
    auto act = spectral_action(s);
    for (int t = 0; t < m; ++t) {
      CHECK(act.maps[s.star(t)] == inverse(act.maps[t]));
      int src = s.e_index(s.mul(s.star(t), t));
      for (std::size_t k = 0; k < act.characters.size(); ++k)
        CHECK(act.maps[t].defined(static_cast<int>(k)) == act.characters[k](src));
    }
  }
}

TEST_CASE("spectral action examples") {
  auto z2 = validate_inverse_semigroup({{0, 1}, {1, 0}}, {0, 1});
  auto act = spectral_action(z2);
  REQUIRE(act.characters.size() == 1);
  CHECK(act.maps[1].map == std::vector<int>{0});

  auto t = generate_from_partial_bijections({PartialBijection({1, -1})});
  const auto& s = t.semigroup;
  auto sa = spectral_action(s);
  int tt = t.generators[0];
  int src_e = s.e_index(s.mul(s.star(tt), tt));
  int dst_e = s.e_index(s.mul(tt, s.star(tt)));
  for (std::size_t k = 0; k < sa.characters.size(); ++k) {
    if (sa.characters[k].generator == src_e) {
      REQUIRE(sa.maps[tt].defined(static_cast<int>(k)));
      CHECK(sa.characters[sa.maps[tt](static_cast<int>(k))].generator == dst_e);
    }
    if (s.is_idempotent(static_cast<int>(k))) continue;
  }
  for (int e : s.idempotents()) {
    const auto& h = sa.maps[e];
    for (std::size_t k = 0; k < h.ground(); ++k)
      if (h.defined(static_cast<int>(k))) CHECK(h(static_cast<int>(k)) == static_cast<int>(k));
  }
}

TEST_CASE("Exel semigroup sizes and relations") {
  CHECK(exel_semigroup(FiniteGroup::trivial()).elements.size() == 1);
  auto z2 = exel_semigroup(FiniteGroup::cyclic(2));
  CHECK(z2.elements.size() == 3);
  CHECK(z2.semigroup.mul(z2.bracket[1], z2.bracket[1]) == z2.e[1]);
  CHECK(exel_semigroup(FiniteGroup::cyclic(3)).elements.size() == 8);
  CHECK(exel_semigroup(FiniteGroup::klein()).elements.size() == 20);
  CHECK_THROWS_AS(exel_semigroup(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))),
                  std::length_error);

  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::klein(),
                        FiniteGroup::cyclic(4), FiniteGroup::symmetric3()}) {
    auto ex = exel_semigroup(g);
    const auto& s = ex.semigroup;
    const int n = g.size(), one = g.identity;
    for (int a = 0; a < n; ++a) {
      CHECK(s.star(ex.bracket[a]) == ex.bracket[g.inverse(a)]);
      CHECK(s.mul(ex.bracket[a], ex.bracket[one]) == ex.bracket[a]);
      CHECK(s.mul(ex.bracket[one], ex.bracket[a]) == ex.bracket[a]);
      for (int b = 0; b < n; ++b) {
        int bi = g.inverse(b), ai = g.inverse(a);
        CHECK(s.mul(s.mul(ex.bracket[a], ex.bracket[b]), ex.bracket[bi]) ==
              s.mul(ex.bracket[g.mul(a, b)], ex.bracket[bi]));
        CHECK(s.mul(s.mul(ex.bracket[ai], ex.bracket[a]), ex.bracket[b]) ==
              s.mul(ex.bracket[ai], ex.bracket[g.mul(a, b)]));
      }
    }
  }
}

TEST_CASE("Exel model equals the closure of the defining relations") {
  CHECK(exel_against_closure(FiniteGroup::cyclic(2)) == 3);
  CHECK(exel_against_closure(FiniteGroup::cyclic(3)) == 8);
  CHECK(exel_against_closure(FiniteGroup::klein()) == 20);
}
