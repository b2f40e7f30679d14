// Shared generators and oracles for the unit tests.

#ifndef LPGROUPOID_TESTS_SUPPORT_HPP
#define LPGROUPOID_TESTS_SUPPORT_HPP

#include "lpgroupoid/exactnum.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <cmath>
#include <random>
#include <vector>

namespace testing_support {

using lpg::Rational;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(g);
}

/// Small rational num/den with |num| <= range and 1 <= den <= max_den.
inline Rational random_rational(std::mt19937_64& g, int range = 5, int max_den = 4) {
  return Rational(uniform_int(g, -range, range), uniform_int(g, 1, max_den));
}

inline lpg::MatQ random_rational_matrix(std::mt19937_64& g, int rows, int cols, int range = 5,
                                        bool nonnegative = false) {
  lpg::MatQ m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Rational x = random_rational(g, range);
      m(i, j) = nonnegative ? Rational(abs(x)) : x;
    }
  return m;
}

// Exact Gaussian elimination; nullopt when the square system is singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == n) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline double real_pnorm(const Eigen::VectorXd& x, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

/// Grid maximisation of ||Mx||_p / ||x||_p over real x for a real matrix with
/// at most 3 columns: a global grid on the faces of the unit cube followed by
/// repeated local zooming around the best candidates.
inline double grid_pnorm(const Eigen::MatrixXd& m, double p, int grid = 120, int zooms = 60) {
  const int n = static_cast<int>(m.cols());
  auto value = [&](const Eigen::VectorXd& x) {
    double nx = real_pnorm(x, p);
    return nx == 0.0 ? 0.0 : real_pnorm(m * x, p) / nx;
  };
  std::vector<std::pair<double, Eigen::VectorXd>> seeds;
  Eigen::VectorXd x(n);
  if (n == 1) {
    x(0) = 1.0;
    return value(x);
  }
  std::vector<int> idx(n - 1, 0);
  for (int face = 0; face < n; ++face) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      int k = 0;
      for (int c = 0; c < n; ++c) {
        if (c == face) {
          x(c) = 1.0;
        } else {
          x(c) = -1.0 + 2.0 * idx[k++] / grid;
        }
      }
      seeds.emplace_back(value(x), x);
      int pos = 0;
      while (pos < n - 1 && ++idx[pos] > grid) idx[pos++] = 0;
      if (pos == n - 1) break;
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = seeds.front().first;
  const std::size_t keep = std::min<std::size_t>(8, seeds.size());
  for (std::size_t s = 0; s < keep; ++s) {
    Eigen::VectorXd centre = seeds[s].second;
    double centre_value = seeds[s].first;
    double radius = 2.0 / grid;
    for (int z = 0; z < zooms; ++z) {
      bool moved = false;
      std::vector<int> step(n, -4);
      while (true) {
        Eigen::VectorXd y = centre;
        for (int c = 0; c < n; ++c) y(c) += radius * step[c] / 4.0;
        double v = value(y);
        if (v > centre_value) {
          centre_value = v;
          centre = y;
          moved = true;
        }
        int pos = 0;
        while (pos < n && ++step[pos] > 4) step[pos++] = -4;
        if (pos == n) break;
      }
      if (!moved) radius *= 0.5;
    }
    best = std::max(best, centre_value);
  }
  return best;
}

}  // namespace testing_support


#include "lpgroupoid/semilattice.hpp"

#include <map>
#include <set>

namespace testing_support {

/// Random meet-semilattice: a family of subsets of a small universe closed
/// under intersection, meet = intersection. The empty set may or may not occur.
inline lpg::FiniteSemilattice random_semilattice(std::mt19937_64& g, int universe, int seeds,
                                                 std::size_t max_size = 12) {
  std::set<unsigned> family;
  for (int k = 0; k < seeds; ++k)
    family.insert(static_cast<unsigned>(uniform_int(g, 1, (1 << universe) - 1)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(family.begin(), family.end());
    for (unsigned a : cur)
      for (unsigned b : cur)
        if (family.insert(a & b).second) grew = true;
  }
  while (family.size() > max_size) family.erase(std::prev(family.end()));
  // Restore closure after trimming (intersections only get smaller).
  grew = true;
  while (grew) {
    grew = false;
    std::vector<unsigned> cur(family.begin(), family.end());
    for (unsigned a : cur)
      for (unsigned b : cur)
        if (family.insert(a & b).second) grew = true;
  }
  std::vector<unsigned> elems(family.begin(), family.end());
  std::map<unsigned, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  lpg::MeetTable t(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) t[i][j] = index.at(elems[i] & elems[j]);
  std::optional<int> zero;
  if (elems.size() >= 2 && elems.front() == 0) zero = 0;
  return lpg::FiniteSemilattice::validate(t, zero);
}

}  // namespace testing_support

#include "lpgroupoid/groupoid.hpp"

namespace testing_support {

/// Disjoint union of pair_groupoid(n) x H blocks with at most max_arrows
/// arrows, randomly relabelled.
inline lpg::FiniteGroupoid random_groupoid(std::mt19937_64& g, int max_arrows = 30) {
  static const std::vector<lpg::FiniteGroup> groups = {
      lpg::FiniteGroup::trivial(), lpg::FiniteGroup::cyclic(2), lpg::FiniteGroup::cyclic(3),
      lpg::FiniteGroup::klein(),   lpg::FiniteGroup::cyclic(4), lpg::FiniteGroup::symmetric3()};
  std::optional<lpg::FiniteGroupoid> acc;
  int budget = max_arrows;
  int blocks = uniform_int(g, 1, 3);
  for (int b = 0; b < blocks; ++b) {
    std::vector<std::pair<int, int>> options;
    for (int n = 1; n <= 5; ++n)
      for (int h = 0; h < static_cast<int>(groups.size()); ++h)
        if (n * n * groups[h].size() <= budget) options.emplace_back(n, h);
    if (options.empty()) break;
    auto [n, h] = options[uniform_int(g, 0, static_cast<int>(options.size()) - 1)];
    auto block = lpg::product_groupoid(lpg::pair_groupoid(n), lpg::group_groupoid(groups[h]));
    budget -= block.size();
    acc = acc ? lpg::disjoint_union(*acc, block) : block;
  }
  std::vector<int> perm(acc->size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  return lpg::relabel(*acc, perm);
}

inline std::vector<lpg::Bisection> singleton_bisections(const lpg::FiniteGroupoid& g) {
  std::vector<lpg::Bisection> out;
  for (int a = 0; a < g.size(); ++a) out.push_back(lpg::Bisection{{a}});
  return out;
}

}  // namespace testing_support

#endif  // LPGROUPOID_TESTS_SUPPORT_HPP
