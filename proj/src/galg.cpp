#include "lpgroupoid/galg.hpp"

#include "lpgroupoid/simplex.hpp"

namespace lpg {

ProjectiveNorm norm_projective(const AlgElement<Rational>& f, const std::vector<Bisection>& family) {
  const auto supp = f.support();
  ProjectiveNorm out;
  if (supp.empty()) return out;
  // One piece per bisection, restricted to the support of f. Variables:
  // a_{U,c}, b_{U,c} >= 0 with f_U(c) = a - b, and t_U >= |f_U(c)|.
  struct Slot {
    int u, arrow;
  };
  std::vector<Slot> slots;
  std::vector<int> t_var(family.size(), -1);
  for (std::size_t u = 0; u < family.size(); ++u)
    for (int c : supp)
      if (family[u].contains(c)) slots.push_back({static_cast<int>(u), c});
  for (int c : supp) {
    bool covered = false;
    for (const auto& s : slots) covered = covered || s.arrow == c;
    if (!covered)
      throw DomainError("norm_projective: the family does not cover arrow " + f.groupoid().label(c));
  }
  std::size_t nvars = 2 * slots.size();
  for (const auto& s : slots)
    if (t_var[s.u] < 0) t_var[s.u] = static_cast<int>(nvars++);
  LinearProgram lp(nvars);
  for (int tv : t_var)
    if (tv >= 0) lp.cost[tv] = 1;
  for (int c : supp) {
    std::vector<Rational> row(nvars, Rational(0));
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (slots[k].arrow == c) {
        row[2 * k] = 1;
        row[2 * k + 1] = -1;
      }
    lp.add_eq(std::move(row), f[c]);
  }
  for (std::size_t k = 0; k < slots.size(); ++k) {
    std::vector<Rational> row(nvars, Rational(0));
    row[2 * k] = 1;
    row[2 * k + 1] = 1;
    row[t_var[slots[k].u]] = -1;
    lp.add_le(std::move(row), 0);
  }
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw DomainError("norm_projective: linear program not solved");
  out.value = sol.value;
  for (std::size_t u = 0; u < family.size(); ++u) {
    ProjectiveNorm::Piece piece;
    piece.bisection = static_cast<int>(u);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].u != static_cast<int>(u)) continue;
      Rational v = sol.x[2 * k] - sol.x[2 * k + 1];
      if (v == 0) continue;
      piece.entries.emplace_back(slots[k].arrow, v);
      piece.sup = std::max(piece.sup, Rational(abs(v)));
    }
    if (!piece.entries.empty()) out.pieces.push_back(std::move(piece));
  }
  // Certificate: the pieces sum to f and their sup norms sum to the optimum.
  std::vector<Rational> sum(f.size(), Rational(0));
  Rational cost = 0;
  for (const auto& p : out.pieces) {
    for (const auto& [c, v] : p.entries) sum[c] += v;
    cost += p.sup;
  }
  if (sum != f.coefficients() || cost != out.value)
    throw DomainError("norm_projective: decomposition certificate failed");
  return out;
}

}  // namespace lpg
