// Exact rational linear programming: two-phase tableau simplex with Bland's rule.

#ifndef LPGROUPOID_SIMPLEX_HPP
#define LPGROUPOID_SIMPLEX_HPP

#include "lpgroupoid/scalar.hpp"

#include <vector>

namespace lpg {

/// minimize c.x subject to A_eq x = b_eq, A_le x <= b_le, x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> cost;
  std::vector<std::vector<Rational>> eq_rows;
  std::vector<Rational> eq_rhs;
  std::vector<std::vector<Rational>> le_rows;
  std::vector<Rational> le_rhs;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), cost(n, Rational(0)) {}
  void add_eq(std::vector<Rational> row, Rational rhs);
  void add_le(std::vector<Rational> row, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value{0};
  std::vector<Rational> x;
  int pivots = 0;
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace lpg

#endif  // LPGROUPOID_SIMPLEX_HPP
