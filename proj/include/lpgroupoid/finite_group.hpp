// Finite groups given by multiplication tables.

#ifndef LPGROUPOID_FINITE_GROUP_HPP
#define LPGROUPOID_FINITE_GROUP_HPP

#include <string>
#include <vector>

namespace lpg {

struct FiniteGroup {
  std::vector<std::vector<int>> mult;
  std::vector<int> inv;
  std::vector<std::string> names;
  int identity = 0;

  /// Checks the group axioms; element 0 need not be the identity.
  static FiniteGroup validate(std::vector<std::vector<int>> table, std::vector<std::string> names = {});
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein();
  static FiniteGroup symmetric3();
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  int size() const { return static_cast<int>(mult.size()); }
  int mul(int a, int b) const { return mult[a][b]; }
  int inverse(int a) const { return inv[a]; }
};

}  // namespace lpg

#endif  // LPGROUPOID_FINITE_GROUP_HPP
