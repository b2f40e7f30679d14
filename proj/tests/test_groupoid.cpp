#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpgroupoid/groupoid.hpp"
#include "support.hpp"

using namespace lpg;

TEST_CASE("validate_groupoid") {
  auto one = unit_groupoid(1);
  CHECK(one.size() == 1);
  CHECK(one.unit_count() == 1);
  auto p3 = pair_groupoid(3);
  CHECK(p3.size() == 9);
  CHECK(p3.unit_count() == 3);

  GroupoidTables bad = pair_groupoid(2).tables();
  bad.inv[1] = 1;
  CHECK_THROWS_AS(FiniteGroupoid::validate(bad), AxiomError);
  GroupoidTables bad2 = pair_groupoid(2).tables();
  bad2.compose[1][2] = 1;
  CHECK_THROWS_AS(FiniteGroupoid::validate(bad2), AxiomError);
}

TEST_CASE("pair and group groupoids") {
  auto p2 = pair_groupoid(2);
  CHECK(p2.size() == 4);
  CHECK(p2.unit_count() == 2);
  // (1,2)(2,1) = (1,1)
  CHECK(p2.mul(1, 2) == 0);
  CHECK(p2.r(1) == 0);
  CHECK(p2.d(1) == 3);
  auto z2 = group_groupoid(FiniteGroup::cyclic(2));
  CHECK(z2.size() == 2);
  CHECK(z2.unit_count() == 1);
  CHECK(pair_groupoid(1).size() == 1);
}

TEST_CASE("transformation groupoid examples") {
  auto id = generate_from_partial_bijections({PartialBijection::identity(3)});
  auto a1 = validate_action(id.semigroup, 3, id.elements);
  auto t1 = transformation_groupoid(a1);
  CHECK(t1.groupoid.size() == 3);
  CHECK(t1.groupoid.unit_count() == 3);

  auto sw = generate_from_partial_bijections({PartialBijection({1, 0})});
  auto t2 = transformation_groupoid(validate_action(sw.semigroup, 2, sw.elements));
  CHECK(find_groupoid_isomorphism(t2.groupoid, pair_groupoid(2)).status == SearchStatus::Found);

  auto col = generate_from_partial_bijections({PartialBijection::identity(2), PartialBijection({0, -1})});
  CHECK(col.semigroup.size() == 2);
  auto t3 = transformation_groupoid(validate_action(col.semigroup, 2, col.elements));
  CHECK(t3.groupoid.size() == 2);
  CHECK(t3.groupoid.unit_count() == 2);
}

TEST_CASE("Deaconu-Renault examples") {
  auto dr = deaconu_renault(2, {-1, 0});
  CHECK(find_groupoid_isomorphism(dr.groupoid, pair_groupoid(2)).status == SearchStatus::Found);
  for (int a = 0; a < dr.groupoid.size(); ++a) {
    const auto& t = dr.triples[a];
    CHECK(dr.groupoid.r(a) == dr.unit_of_point[t.y]);
    CHECK(dr.groupoid.d(a) == dr.unit_of_point[t.x]);
  }
  CHECK(dr.bisections.wide());
  auto empty = deaconu_renault(3, {-1, -1, -1});
  CHECK(empty.groupoid.size() == 3);
  CHECK(empty.groupoid.unit_count() == 3);
  CHECK_THROWS_WITH_AS(deaconu_renault(2, {0, -1}), doctest::Contains("periodic"), AxiomError);
  CHECK_THROWS_AS(deaconu_renault(3, {1, 2, 0}), AxiomError);
}

TEST_CASE("Deaconu-Renault groupoids on random aperiodic maps") {
  auto& g = testing_support::rng();
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 6;
    // Maps into strictly smaller indices are aperiodic.
    std::vector<int> phi(n, -1);
    for (int x = 1; x < n; ++x)
      if (testing_support::uniform_int(g, 0, 3) > 0) phi[x] = testing_support::uniform_int(g, 0, x - 1);
    auto dr = deaconu_renault(n, phi);
    for (int a = 0; a < dr.groupoid.size(); ++a) {
      const auto& t = dr.triples[a];
      int lhs = t.x, rhs = t.y;
      for (int k = 0; k < t.n; ++k) lhs = phi[lhs];
      for (int k = 0; k < t.m; ++k) rhs = phi[rhs];
      CHECK(lhs == rhs);
      CHECK(t.k == t.n - t.m);
      for (int b = 0; b < dr.groupoid.size(); ++b)
        if (dr.groupoid.composable(a, b)) CHECK(dr.triples[dr.groupoid.mul(a, b)].k == t.k + dr.triples[b].k);
    }
    CHECK(dr.bisections.wide());
  }
}

TEST_CASE("bisection semigroup examples") {
  auto p2 = pair_groupoid(2);
  auto singles = bisection_semigroup(p2, testing_support::singleton_bisections(p2));
  CHECK(singles.semigroup.size() == 5);
  CHECK(singles.semigroup.zero().has_value());
  CHECK(singles.wide());

  auto units = bisection_semigroup(p2, {unit_bisection(p2)});
  CHECK_FALSE(units.wide());
  auto z3 = unit_groupoid(3);
  CHECK(bisection_semigroup(z3, {unit_bisection(z3)}).wide());

  auto diag = make_bisection(p2, {0, 3});
  auto anti = make_bisection(p2, {1, 2});
  auto group = bisection_semigroup(p2, {diag, anti});
  CHECK(group.semigroup.size() == 2);
  CHECK(group.wide());
  CHECK_FALSE(group.semigroup.zero().has_value());
  CHECK_THROWS_AS(make_bisection(p2, {0, 1}), AxiomError);
}

TEST_CASE("wide bisection semigroups rebuild the groupoid") {
  auto& g = testing_support::rng();
  for (int trial = 0; trial < 20; ++trial) {
    auto G = testing_support::random_groupoid(g);
    auto S = bisection_semigroup(G, testing_support::singleton_bisections(G));
    REQUIRE(S.wide());
    const int m = static_cast<int>(S.semigroup.size());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        CHECK(bisection_inverse(G, S.elements[S.semigroup.mul(a, b)]) ==
              bisection_product(G, bisection_inverse(G, S.elements[b]), bisection_inverse(G, S.elements[a])));
    auto T = transformation_groupoid(canonical_action(G, S));
    auto iso = find_groupoid_isomorphism(T.groupoid, G);
    CHECK(iso.status == SearchStatus::Found);
  }
}

TEST_CASE("isomorphism search rejects non-isomorphic groupoids") {
  auto a = pair_groupoid(2);
  auto b = disjoint_union(group_groupoid(FiniteGroup::cyclic(2)), group_groupoid(FiniteGroup::cyclic(2)));
  CHECK(find_groupoid_isomorphism(a, b).status == SearchStatus::None);
  auto c4 = group_groupoid(FiniteGroup::cyclic(4));
  auto k4 = group_groupoid(FiniteGroup::klein());
  CHECK(find_groupoid_isomorphism(c4, k4).status == SearchStatus::None);
  CHECK(find_groupoid_isomorphism(pair_groupoid(3), unit_groupoid(3)).status == SearchStatus::None);
  auto& g = testing_support::rng();
  for (int trial = 0; trial < 10; ++trial) {
    auto G = testing_support::random_groupoid(g);
    std::vector<int> perm(G.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), g);
    CHECK(find_groupoid_isomorphism(G, relabel(G, perm)).status == SearchStatus::Found);
  }
}
