#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpgroupoid/simplex.hpp"
#include "support.hpp"

#include <functional>
#include <optional>

using namespace lpg;
using testing_support::solve_square;

namespace {

// Oracle for min c.x, A x <= b, x >= 0 with a bounded feasible region:
// enumerate every vertex as the solution of n tight constraints.
std::optional<Rational> vertex_oracle(const std::vector<std::vector<Rational>>& a,
                                      const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const std::size_t n = c.size(), m = a.size();
  std::vector<std::vector<Rational>> rows = a;
  std::vector<Rational> rhs = b;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = -1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  const std::size_t total = m + n;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<std::vector<Rational>> sa;
      std::vector<Rational> sb;
      for (auto k : pick) {
        sa.push_back(rows[k]);
        sb.push_back(rhs[k]);
      }
      auto x = solve_square(sa, sb);
      if (!x) return;
      for (std::size_t k = 0; k < total; ++k) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j) s += rows[k][j] * (*x)[j];
        if (s > rhs[k]) return;
      }
      Rational v = 0;
      for (std::size_t j = 0; j < n; ++j) v += c[j] * (*x)[j];
      if (!best || v < *best) best = v;
      return;
    }
    for (std::size_t k = start; k < total; ++k) {
      pick[depth] = k;
      rec(k + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("textbook LP") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
  LinearProgram lp(2);
  lp.cost = {Rational(-3), Rational(-5)};
  lp.add_le({1, 0}, 4);
  lp.add_le({0, 2}, 12);
  lp.add_le({3, 2}, 18);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == -36);
  CHECK(sol.x[0] == 2);
  CHECK(sol.x[1] == 6);
}

TEST_CASE("equality constraints, infeasibility and unboundedness") {
  LinearProgram lp(2);
  lp.cost = {Rational(1), Rational(2)};
  lp.add_eq({1, 1}, Rational(3, 2));
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(3, 2));

  LinearProgram bad(1);
  bad.add_eq({1}, -1);
  CHECK(solve_lp(bad).status == LpStatus::Infeasible);

  LinearProgram open(1);
  open.cost = {Rational(-1)};
  CHECK(solve_lp(open).status == LpStatus::Unbounded);

  LinearProgram redundant(2);
  redundant.cost = {Rational(1), Rational(1)};
  redundant.add_eq({1, 1}, 2);
  redundant.add_eq({2, 2}, 4);
  auto r = solve_lp(redundant);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == 2);
}

TEST_CASE("degenerate cycling example terminates under Bland") {
  // Beale's example.
  LinearProgram lp(4);
  lp.cost = {Rational(-3, 4), Rational(150), Rational(-1, 50), Rational(6)};
  lp.add_le({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, 0);
  lp.add_le({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, 0);
  lp.add_le({0, 0, 1, 0}, 1);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == Rational(-1, 20));
}

TEST_CASE("random bounded LPs agree with vertex enumeration") {
  auto& g = testing_support::rng();
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 3, m = 1 + (trial / 3) % 3;
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> row(n);
      for (auto& v : row) v = testing_support::random_rational(g, 4, 3);
      a.push_back(row);
      b.push_back(abs(testing_support::random_rational(g, 6, 2)));
    }
    // Box keeps the region bounded.
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(n, Rational(0));
      row[j] = 1;
      a.push_back(row);
      b.push_back(5);
    }
    std::vector<Rational> c(n);
    for (auto& v : c) v = testing_support::random_rational(g, 5, 3);
    LinearProgram lp(n);
    lp.cost = c;
    for (std::size_t i = 0; i < a.size(); ++i) lp.add_le(a[i], b[i]);
    auto sol = solve_lp(lp);
    auto oracle = vertex_oracle(a, b, c);
    REQUIRE(oracle.has_value());
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == *oracle);
  }
}
