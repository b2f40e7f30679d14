#include "lpgroupoid/finite_group.hpp"

#include "lpgroupoid/semilattice.hpp"

#include <algorithm>
#include <array>

namespace lpg {

FiniteGroup FiniteGroup::validate(std::vector<std::vector<int>> table, std::vector<std::string> names) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw AxiomError("group: empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw AxiomError("group: table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw AxiomError("group: product out of range");
  }
  FiniteGroup g;
  g.identity = -1;
  for (int e = 0; e < n && g.identity < 0; ++e) {
    bool unit = true;
    for (int a = 0; a < n && unit; ++a) unit = table[e][a] == a && table[a][e] == a;
    if (unit) g.identity = e;
  }
  if (g.identity < 0) throw AxiomError("group: no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw AxiomError("group: associativity fails at (" + std::to_string(a) + ", " +
                           std::to_string(b) + ", " + std::to_string(c) + ")");
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == g.identity && table[b][a] == g.identity) g.inv[a] = b;
    if (g.inv[a] < 0) throw AxiomError("group: element " + std::to_string(a) + " has no inverse");
  }
  g.mult = std::move(table);
  if (names.empty())
    for (int a = 0; a < n; ++a) names.push_back(std::to_string(a));
  if (static_cast<int>(names.size()) != n) throw AxiomError("group: name count mismatch");
  g.names = std::move(names);
  return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw AxiomError("cyclic group of order < 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return validate(t);
}

FiniteGroup FiniteGroup::klein() { return product(cyclic(2), cyclic(2)); }

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(perms[a][0]) + std::to_string(perms[a][1]) + std::to_string(perms[a][2]));
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return validate(t, names);
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.size(), nb = b.size(), n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    names.push_back("(" + a.names[x / nb] + "," + b.names[x % nb] + ")");
    for (int y = 0; y < n; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return validate(t, names);
}

}  // namespace lpg
