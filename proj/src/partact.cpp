#include "lpgroupoid/partact.hpp"

namespace lpg {

std::string PartialAction::tuple(std::initializer_list<int> elems) const {
  std::string out = "(";
  bool first = true;
  for (int t : elems) {
    out += (first ? "" : ", ") + group.names[t];
    first = false;
  }
  return out + ")";
}

PartialAction validate_partial_action(FiniteGroup g, int points, std::vector<PartialBijection> theta) {
  const int n = g.size();
  if (static_cast<int>(theta.size()) != n) throw AxiomError("partial action: one map per group element is required");
  for (const auto& f : theta)
    if (static_cast<int>(f.ground()) != points) throw AxiomError("partial action: ground set size mismatch");
  PartialAction A{std::move(g), points, std::move(theta), {}};
  if (A.theta[A.group.identity] != PartialBijection::identity(points))
    throw AxiomError("partial action: theta_1 is not the identity");
  for (int t = 0; t < n; ++t)
    if (inverse(A.theta[t]) != A.theta[A.group.inverse(t)])
      throw AxiomError("partial action: theta_t^-1 != theta_{t^-1} at t = " + A.group.names[t]);
  for (int t = 0; t < n; ++t)
    for (int s = 0; s < n; ++s) {
      const auto ts = compose(A.theta[t], A.theta[s]);
      const auto& big = A.theta[A.group.mul(t, s)];
      for (int x : ts.domain())
        if (big(x) != ts(x))
          throw AxiomError("partial action: theta_ts does not extend theta_t theta_s at (t, s) = " +
                           A.tuple({t, s}) + ", x = " + std::to_string(x));
    }
  A.X.assign(n, std::vector<char>(points, 0));
  for (int t = 0; t < n; ++t)
    for (int y : A.theta[t].range()) A.X[t][y] = 1;
  return A;
}

PartialAction global_action(const FiniteGroup& g, const std::vector<std::vector<int>>& perm) {
  std::vector<PartialBijection> theta;
  for (const auto& row : perm) theta.emplace_back(row);
  const int points = perm.empty() ? 0 : static_cast<int>(perm[0].size());
  return validate_partial_action(g, points, std::move(theta));
}

PartialActionGroupoid partial_action_groupoid(const PartialAction& A) {
  const FiniteGroup& G = A.group;
  const int n = G.size();
  PartialActionGroupoid out;
  out.arrow_of.assign(n, std::vector<int>(A.points, -1));
  GroupoidTables t;
  for (int g = 0; g < n; ++g)
    for (int x : A[g].domain()) {
      out.arrow_of[g][x] = static_cast<int>(out.pair.size());
      out.pair.emplace_back(g, x);
      t.labels.push_back("(" + G.names[g] + "," + std::to_string(x) + ")");
    }
  const int m = static_cast<int>(out.pair.size());
  t.arrows = m;
  t.r.resize(m);
  t.d.resize(m);
  t.inv.resize(m);
  t.compose.assign(m, std::vector<int>(m, -1));
  for (int a = 0; a < m; ++a) {
    const auto [g, x] = out.pair[a];
    const int y = A[g](x);
    t.r[a] = out.arrow_of[G.identity][y];
    t.d[a] = out.arrow_of[G.identity][x];
    t.inv[a] = out.arrow_of[G.inverse(g)][y];
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const auto [s, y] = out.pair[a];
      const auto [h, x] = out.pair[b];
      if (A[h](x) != y) continue;
      const int c = out.arrow_of[G.mul(s, h)][x];
      if (c < 0) throw AxiomError("partial action groupoid: product leaves the arrow set");
      t.compose[a][b] = c;
    }
  out.groupoid = std::make_shared<const FiniteGroupoid>(FiniteGroupoid::validate(std::move(t)));
  for (int g = 0; g < n; ++g) {
    std::vector<int> arrows;
    for (int x = 0; x < A.points; ++x)
      if (out.arrow_of[g][x] >= 0) arrows.push_back(out.arrow_of[g][x]);
    if (!arrows.empty()) out.slices.push_back(make_bisection(*out.groupoid, std::move(arrows)));
  }
  return out;
}

}  // namespace lpg
