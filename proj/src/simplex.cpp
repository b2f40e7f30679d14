#include "lpgroupoid/simplex.hpp"

#include <limits>

namespace lpg {

void LinearProgram::add_eq(std::vector<Rational> row, Rational rhs) {
  if (row.size() != num_vars) throw DomainError("LinearProgram: row width mismatch");
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(std::move(rhs));
}

void LinearProgram::add_le(std::vector<Rational> row, Rational rhs) {
  if (row.size() != num_vars) throw DomainError("LinearProgram: row width mismatch");
  le_rows.push_back(std::move(row));
  le_rhs.push_back(std::move(rhs));
}

namespace {

// Dense tableau over rows 0..m-1 plus the objective row m; last column is rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), Rational(0)), basis_(rows, 0) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
  Rational& rhs(std::size_t i) { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = Rational(1) / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      Rational f = at(i, c);
      for (std::size_t j = 0; j <= n_; ++j)
        if (at(r, j) != 0) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  // Minimises the objective row over columns allowed[j]; Bland's rule.
  // Objective row holds reduced costs; rhs(m) holds -value.
  bool optimise(const std::vector<bool>& allowed, int& pivots) {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && at(m_, j) < 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, enter) <= 0) continue;
        Rational ratio = rhs(i) / at(i, enter);
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<Rational> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars;
  const std::size_t n_le = lp.le_rows.size();
  const std::size_t m = lp.eq_rows.size() + n_le;
  // Columns: original vars, one slack per <= row, one artificial per row.
  const std::size_t slack0 = n, art0 = n + n_le, cols = n + n_le + m;
  Tableau tab(m, cols);

  for (std::size_t i = 0; i < m; ++i) {
    const bool is_le = i >= lp.eq_rows.size();
    const auto& row = is_le ? lp.le_rows[i - lp.eq_rows.size()] : lp.eq_rows[i];
    Rational b = is_le ? lp.le_rhs[i - lp.eq_rows.size()] : lp.eq_rhs[i];
    Rational sign = b < 0 ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * row[j];
    if (is_le) tab.at(i, slack0 + (i - lp.eq_rows.size())) = sign;
    tab.at(i, art0 + i) = 1;
    tab.rhs(i) = sign * b;
    tab.basis()[i] = art0 + i;
  }

  LpSolution sol;
  // Phase one: minimise the sum of artificials.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < art0 || j == cols) tab.at(m, j) -= tab.at(i, j);
  std::vector<bool> allowed(cols, true);
  tab.optimise(allowed, sol.pivots);
  if (tab.rhs(m) != 0) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < art0) continue;
    for (std::size_t j = 0; j < art0; ++j)
      if (tab.at(i, j) != 0) {
        tab.pivot(i, j);
        ++sol.pivots;
        break;
      }
  }
  for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;

  // Phase two objective in reduced form.
  for (std::size_t j = 0; j <= cols; ++j) tab.at(m, j) = 0;
  for (std::size_t j = 0; j < n; ++j) tab.at(m, j) = lp.cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t b = tab.basis()[i];
    if (b >= n || tab.at(m, b) == 0) continue;
    Rational f = tab.at(m, b);
    for (std::size_t j = 0; j <= cols; ++j) tab.at(m, j) -= f * tab.at(i, j);
  }
  if (!tab.optimise(allowed, sol.pivots)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.value = -tab.rhs(m);
  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = tab.rhs(i);
  return sol;
}

}  // namespace lpg
