#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpgroupoid/twist.hpp"
#include "support.hpp"

using namespace lpg;
using namespace testing_support;

namespace {

template <Scalar T>
std::shared_ptr<const Cocycle<T>> trivial_twist(const FiniteGroupoid& g) {
  return std::make_shared<const Cocycle<T>>(trivial_cocycle<T>(std::make_shared<const FiniteGroupoid>(g)));
}

template <Scalar T>
std::shared_ptr<const Cocycle<T>> sign_twist() {
  auto G = std::make_shared<const FiniteGroupoid>(group_groupoid(FiniteGroup::cyclic(2)));
  std::vector<T> v(4, T(1));
  v[3] = T(-1);
  return std::make_shared<const Cocycle<T>>(validate_cocycle(G, v));
}

BisectionSemigroup all_bisections(const FiniteGroupoid& g) { return bisection_semigroup(g, singleton_bisections(g)); }

std::vector<std::vector<Rational>> random_sign_sections(std::mt19937_64& g, const FiniteGroupoid& G,
                                                        const BisectionSemigroup& S) {
  auto c = constant_sections<Rational>(G, S);
  for (std::size_t i = 0; i < S.elements.size(); ++i) {
    bool units_only = true;
    for (int a : S.elements[i].arrows) units_only = units_only && G.is_unit(a);
    if (units_only) continue;
    for (int a : S.elements[i].arrows) c[i][a] = uniform_int(g, 0, 1) ? 1 : -1;
  }
  return c;
}

// u(U, V)(r(gamma)) c_{UV}(gamma eta) = sigma(gamma, eta) c_U(gamma) c_V(eta).
template <Scalar T>
void check_defining_relation(const TwistedActionData<T>& data, const Cocycle<T>& sigma, const BisectionSemigroup& S,
                             const std::vector<std::vector<T>>& c) {
  const auto& G = sigma.groupoid();
  const int m = static_cast<int>(S.elements.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int ij = S.semigroup.mul(i, j);
      for (int a : S.elements[i].arrows)
        for (int b : S.elements[j].arrows) {
          if (!G.composable(a, b)) continue;
          const int x = G.unit_index(G.r(a));
          T lhs = data.twist(i, j, x) * c[ij][G.mul(a, b)];
          T rhs = sigma(a, b) * c[i][a] * c[j][b];
          CHECK(nearly_equal(lhs, rhs, 1e-10));
        }
    }
}

}  // namespace

TEST_CASE("extraction with trivial twist and constant sections") {
  auto P = pair_groupoid(2);
  auto sigma = trivial_twist<Rational>(P);
  auto S = all_bisections(P);
  auto data = extract_twisted_action(sigma, S, constant_sections<Rational>(P, S));
  const int m = static_cast<int>(S.elements.size());
  auto canon = canonical_action(P, S);
  for (int t = 0; t < m; ++t) CHECK(data.action.h[t] == canon.h[t]);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      for (int x : data.action.h[S.semigroup.mul(s, t)].range()) CHECK(data.twist(s, t, x) == 1);
  CHECK(validate_twisted_action(data).ok());
}

TEST_CASE("extraction on the sign-twisted Z/2") {
  auto sigma = sign_twist<Rational>();
  const auto& G = sigma->groupoid();
  auto S = all_bisections(G);
  int g_index = -1;
  for (std::size_t i = 0; i < S.elements.size(); ++i)
    if (S.elements[i].arrows == std::vector<int>{1}) g_index = static_cast<int>(i);
  REQUIRE(g_index >= 0);
  auto c = constant_sections<Rational>(G, S);
  auto data = extract_twisted_action(sigma, S, c);
  CHECK(data.twist(g_index, g_index, 0) == -1);
  CHECK(validate_twisted_action(data).ok());
  check_defining_relation(data, *sigma, S, c);
}

TEST_CASE("a flipped section changes u by compensating signs") {
  auto P = pair_groupoid(2);
  auto sigma = trivial_twist<Rational>(P);
  auto S = all_bisections(P);
  auto c = constant_sections<Rational>(P, S);
  int u01 = -1, u10 = -1;
  for (std::size_t i = 0; i < S.elements.size(); ++i) {
    if (S.elements[i].arrows == std::vector<int>{1}) u01 = static_cast<int>(i);
    if (S.elements[i].arrows == std::vector<int>{2}) u10 = static_cast<int>(i);
  }
  REQUIRE(u01 >= 0);
  REQUIRE(u10 >= 0);
  c[u01][1] = -1;
  auto data = extract_twisted_action(sigma, S, c);
  CHECK(data.twist(u01, u10, 0) == -1);
  CHECK(data.twist(u10, u01, 1) == -1);
  CHECK(validate_twisted_action(data).ok());
  check_defining_relation(data, *sigma, S, c);
}

TEST_CASE("extraction errors") {
  auto P = pair_groupoid(2);
  auto sigma = trivial_twist<Rational>(P);
  auto S = all_bisections(P);
  auto c = constant_sections<Rational>(P, S);
  for (std::size_t i = 0; i < S.elements.size(); ++i)
    if (S.elements[i].arrows == std::vector<int>{1}) c[i][1] = 2;
  CHECK_THROWS_AS(extract_twisted_action(sigma, S, c), DomainError);
  auto c2 = constant_sections<Rational>(P, S);
  for (std::size_t i = 0; i < S.elements.size(); ++i)
    if (S.elements[i].arrows == std::vector<int>{0}) c2[i][0] = -1;
  CHECK_THROWS_AS(extract_twisted_action(sigma, S, c2), DomainError);
  auto narrow = bisection_semigroup(P, {make_bisection(P, {0})});
  CHECK_FALSE(narrow.wide());
  CHECK_THROWS_AS(extract_twisted_action(sigma, narrow, constant_sections<Rational>(P, narrow)), DomainError);
}

TEST_CASE("untwisted actions of validated semigroups pass") {
  auto E = exel_semigroup(FiniteGroup::cyclic(3));
  auto spec = spectral_action(E.semigroup);
  auto act = validate_action(E.semigroup, static_cast<int>(spec.characters.size()), spec.maps);
  CHECK(validate_twisted_action(untwisted<Rational>(act)).ok());
  auto P = pair_groupoid(3);
  CHECK(validate_twisted_action(untwisted<cdouble>(canonical_action(P, all_bisections(P)))).ok());
}

TEST_CASE("broken u is reported") {
  auto P = pair_groupoid(2);
  auto S = all_bisections(P);
  auto data = untwisted<Rational>(canonical_action(P, S));
  const auto& T = data.semigroup();
  int t = -1;
  for (int s = 0; s < static_cast<int>(T.size()); ++s)
    if (!T.is_idempotent(s) && !data.action.h[s].range().empty()) t = s;
  REQUIRE(t >= 0);
  const int x = data.action.h[t].range().front();
  data.twist(t, T.mul(T.star(t), t), x) = -1;
  auto report = validate_twisted_action(data);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report["A3"].passed);
  CHECK(report["A1"].passed);
  CHECK_FALSE(report["A3"].witness.empty());
}

TEST_CASE("round trips") {
  {
    auto P = pair_groupoid(3);
    auto sigma = trivial_twist<Rational>(P);
    auto S = all_bisections(P);
    auto data = extract_twisted_action(sigma, S, constant_sections<Rational>(P, S));
    auto cmp = rebuild_and_compare(data, *sigma);
    CHECK(cmp.status == SearchStatus::Found);
  }
  {
    auto sigma = sign_twist<Rational>();
    auto S = all_bisections(sigma->groupoid());
    auto data = extract_twisted_action(sigma, S, constant_sections<Rational>(sigma->groupoid(), S));
    auto cmp = rebuild_and_compare(data, *sigma);
    CHECK(cmp.status == SearchStatus::Found);
    // The real sign twist is not a coboundary, so it cannot match the trivial twist.
    auto plain = trivial_twist<Rational>(sigma->groupoid());
    auto wrong = rebuild_and_compare(data, *plain);
    CHECK(wrong.status == SearchStatus::None);
    CHECK(wrong.mismatch.find("coboundary") != std::string::npos);
  }
  {
    // Over the complex numbers it is: c(g) = i.
    auto sigma = sign_twist<cdouble>();
    auto S = all_bisections(sigma->groupoid());
    auto data = extract_twisted_action(sigma, S, constant_sections<cdouble>(sigma->groupoid(), S));
    auto plain = trivial_twist<cdouble>(sigma->groupoid());
    auto cmp = rebuild_and_compare(data, *plain);
    CHECK(cmp.status == SearchStatus::Found);
    CHECK(std::abs(std::abs(cmp.gauge[1].imag()) - 1.0) < 1e-12);
  }
  {
    auto P2 = pair_groupoid(2);
    auto sigma = trivial_twist<Rational>(P2);
    auto S = all_bisections(P2);
    auto data = extract_twisted_action(sigma, S, constant_sections<Rational>(P2, S));
    auto cmp = rebuild_and_compare(data, *trivial_twist<Rational>(pair_groupoid(3)));
    CHECK(cmp.status == SearchStatus::None);
    CHECK_FALSE(cmp.mismatch.empty());
  }
}

TEST_CASE("random twisted groupoids: axioms, defining relation and round trip") {
  auto& g = rng();
  for (int trial = 0; trial < 12; ++trial) {
    auto G = random_groupoid(g, 12);
    std::vector<Rational> cb(G.size(), Rational(1));
    for (int a = 0; a < G.size(); ++a)
      if (!G.is_unit(a) && uniform_int(g, 0, 1)) cb[a] = -1;
    auto sigma =
        std::make_shared<const Cocycle<Rational>>(coboundary(std::make_shared<const FiniteGroupoid>(G), cb));
    auto S = all_bisections(G);
    REQUIRE(S.wide());
    auto c1 = random_sign_sections(g, G, S);
    auto c2 = random_sign_sections(g, G, S);
    auto d1 = extract_twisted_action(sigma, S, c1);
    auto d2 = extract_twisted_action(sigma, S, c2);
    CHECK(validate_twisted_action(d1).ok());
    CHECK(validate_twisted_action(d2).ok());
    check_defining_relation(d1, *sigma, S, c1);
    auto r1 = rebuild_and_compare(d1, *sigma);
    INFO(r1.mismatch, " arrows=", G.size(), " units=", G.unit_count());
    CHECK(r1.status == SearchStatus::Found);
    CHECK(rebuild_and_compare(d2, *sigma).status == SearchStatus::Found);
  }
}

TEST_CASE("gauge search") {
  auto G = std::make_shared<const FiniteGroupoid>(group_groupoid(FiniteGroup::cyclic(4)));
  std::vector<Rational> c = {Rational(1), Rational(-1), Rational(1), Rational(-1)};
  auto s = coboundary(G, c);
  auto gauge = find_gauge<Rational>(*G, [&](int a, int b) { return s(a, b); });
  REQUIRE(gauge);
  for (int a = 0; a < G->size(); ++a)
    for (int b = 0; b < G->size(); ++b)
      CHECK((*gauge)[a] * (*gauge)[b] == s(a, b) * (*gauge)[G->mul(a, b)]);
}
