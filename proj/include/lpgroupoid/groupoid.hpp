// Finite discrete groupoids, bisections, actions on finite sets, and the
// transformation, Deaconu-Renault and bisection-semigroup constructions.

#ifndef LPGROUPOID_GROUPOID_HPP
#define LPGROUPOID_GROUPOID_HPP

#include "lpgroupoid/finite_group.hpp"
#include "lpgroupoid/invsemi.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lpg {

struct GroupoidTables {
  int arrows = 0;
  std::vector<int> r, d, inv;
  std::vector<std::vector<int>> compose;  // compose[a][b] = ab, or -1 when d(a) != r(b)
  std::vector<std::string> labels;
};

class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  static FiniteGroupoid validate(GroupoidTables t);

  int size() const { return t_.arrows; }
  int r(int a) const { return t_.r[a]; }
  int d(int a) const { return t_.d[a]; }
  int inv(int a) const { return t_.inv[a]; }
  bool composable(int a, int b) const { return t_.d[a] == t_.r[b]; }
  /// ab, or -1 when not composable.
  int mul(int a, int b) const { return t_.compose[a][b]; }
  bool is_unit(int a) const { return t_.r[a] == a; }
  const std::vector<int>& units() const { return units_; }
  int unit_count() const { return static_cast<int>(units_.size()); }
  /// Position of a unit arrow within units().
  int unit_index(int unit) const { return unit_pos_[unit]; }
  const std::vector<int>& arrows_from(int unit) const { return from_[unit_pos_[unit]]; }
  const std::vector<int>& arrows_to(int unit) const { return to_[unit_pos_[unit]]; }
  std::string label(int a) const { return t_.labels.empty() ? std::to_string(a) : t_.labels[a]; }
  const GroupoidTables& tables() const { return t_; }

 private:
  GroupoidTables t_;
  std::vector<int> units_, unit_pos_;
  std::vector<std::vector<int>> from_, to_;
};

/// Arrow (i, j) has index i*n + j, range (i, i) and domain (j, j).
FiniteGroupoid pair_groupoid(int n);
FiniteGroupoid group_groupoid(const FiniteGroup& g);
FiniteGroupoid unit_groupoid(int n);
FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// Renames arrow a to perm[a].
FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<int>& perm);

/// A set of arrows on which r and d are injective, kept sorted.
struct Bisection {
  std::vector<int> arrows;
  auto operator<=>(const Bisection&) const = default;
  bool contains(int a) const;
};

bool is_bisection(const FiniteGroupoid& g, const std::vector<int>& arrows);
Bisection make_bisection(const FiniteGroupoid& g, std::vector<int> arrows);
Bisection bisection_product(const FiniteGroupoid& g, const Bisection& u, const Bisection& v);
Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& u);
Bisection unit_bisection(const FiniteGroupoid& g);

/// A semigroup acting on {0, ..., points-1}; h[t] maps X_{t*} onto X_t.
struct ActionOnFiniteSet {
  ISemigroup semigroup;
  int points = 0;
  std::vector<PartialBijection> h;

  std::vector<int> domain_of(int t) const { return h[t].range(); }  // X_t
};

ActionOnFiniteSet validate_action(ISemigroup s, int points, std::vector<PartialBijection> h);

struct BisectionSemigroup {
  ISemigroup semigroup;
  std::vector<Bisection> elements;
  std::vector<int> generators;
  bool covers = false;
  bool intersections_are_unions = false;
  bool wide() const { return covers && intersections_are_unions; }
};

BisectionSemigroup bisection_semigroup(const FiniteGroupoid& g, const std::vector<Bisection>& gens,
                                       std::size_t bound = kDefaultClosureBound);

/// h_U : d(U) -> r(U), d(gamma) -> r(gamma), on unit positions.
ActionOnFiniteSet canonical_action(const FiniteGroupoid& g, const BisectionSemigroup& s);

struct TransformationGroupoid {
  FiniteGroupoid groupoid;
  std::vector<std::pair<int, int>> germ;   // representative (t, x) of each arrow
  std::vector<int> unit_of_point;          // unit arrow of each x
  std::vector<Bisection> slices;           // U_t = {[t, x] : x in X_{t*}}
  /// Arrow [t, x], or -1 when x is outside X_{t*}.
  std::vector<std::vector<int>> arrow_of;
};

TransformationGroupoid transformation_groupoid(const ActionOnFiniteSet& action);

struct DeaconuRenault {
  FiniteGroupoid groupoid;
  struct Triple {
    int y, k, x, n, m;  // phi^n x = phi^m y, k = n - m, n minimal
  };
  std::vector<Triple> triples;
  std::vector<int> unit_of_point;
  BisectionSemigroup bisections;
};

/// phi[x] is the image of x, or -1 outside the domain. With bisections unset
/// the singleton bisection semigroup is not built.
DeaconuRenault deaconu_renault(int points, const std::vector<int>& phi, bool bisections = true);

enum class SearchStatus { Found, None, Inconclusive };

struct IsoSearch {
  SearchStatus status = SearchStatus::None;
  std::vector<int> phi;  // phi[a] is the image of arrow a
  std::size_t nodes = 0;
};

/// Backtracking search with propagation through products and inverses and
/// pruning by unit degree and isotropy invariants. When accept is given the
/// search continues past complete isomorphisms it rejects.
IsoSearch find_groupoid_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b,
                                    std::size_t node_limit = 2000000,
                                    const std::function<bool(const std::vector<int>&)>& accept = {});

bool is_groupoid_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, const std::vector<int>& phi);

}  // namespace lpg

#endif  // LPGROUPOID_GROUPOID_HPP
