#include "lpgroupoid/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace lpg {

namespace {

std::string pair_label(const FiniteGroupoid& g, int a, int b) {
  return "(" + g.label(a) + ", " + g.label(b) + ")";
}

}  // namespace

FiniteGroupoid FiniteGroupoid::validate(GroupoidTables t) {
  const int n = t.arrows;
  if (n <= 0) throw AxiomError("groupoid: no arrows");
  if (static_cast<int>(t.r.size()) != n || static_cast<int>(t.d.size()) != n ||
      static_cast<int>(t.inv.size()) != n || static_cast<int>(t.compose.size()) != n)
    throw AxiomError("groupoid: table sizes disagree with the arrow count");
  if (!t.labels.empty() && static_cast<int>(t.labels.size()) != n)
    throw AxiomError("groupoid: label count mismatch");
  auto in_range = [n](int v) { return v >= 0 && v < n; };
  for (int a = 0; a < n; ++a) {
    if (!in_range(t.r[a]) || !in_range(t.d[a]) || !in_range(t.inv[a]))
      throw AxiomError("groupoid: r, d or inv out of range at arrow " + std::to_string(a));
    if (static_cast<int>(t.compose[a].size()) != n) throw AxiomError("groupoid: compose table is not square");
  }
  FiniteGroupoid g;
  g.t_ = std::move(t);
  const auto& T = g.t_;
  for (int a = 0; a < n; ++a) {
    int u = T.r[a], v = T.d[a];
    if (T.r[u] != u || T.d[u] != u) throw AxiomError("groupoid: r(" + g.label(a) + ") is not a unit");
    if (T.r[v] != v || T.d[v] != v) throw AxiomError("groupoid: d(" + g.label(a) + ") is not a unit");
  }
  for (int a = 0; a < n; ++a) {
    if (T.inv[T.inv[a]] != a) throw AxiomError("groupoid: inverse is not involutive at " + g.label(a));
    if (T.r[T.inv[a]] != T.d[a] || T.d[T.inv[a]] != T.r[a])
      throw AxiomError("groupoid: r(inv " + g.label(a) + ") != d(" + g.label(a) + ")");
    for (int b = 0; b < n; ++b) {
      int c = T.compose[a][b];
      bool comp = T.d[a] == T.r[b];
      if (comp != (c >= 0))
        throw AxiomError("groupoid: product defined exactly when d(a) = r(b) fails at " + pair_label(g, a, b));
      if (!comp) continue;
      if (!in_range(c)) throw AxiomError("groupoid: product out of range at " + pair_label(g, a, b));
      if (T.r[c] != T.r[a] || T.d[c] != T.d[b])
        throw AxiomError("groupoid: r/d of product wrong at " + pair_label(g, a, b));
    }
    if (T.compose[a][T.inv[a]] != T.r[a])
      throw AxiomError("groupoid: a a^-1 != r(a) at " + g.label(a));
    if (T.compose[T.inv[a]][a] != T.d[a])
      throw AxiomError("groupoid: a^-1 a != d(a) at " + g.label(a));
    if (T.compose[T.r[a]][a] != a || T.compose[a][T.d[a]] != a)
      throw AxiomError("groupoid: units do not act as identities at " + g.label(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = T.compose[a][b];
      if (ab < 0) continue;
      for (int c = 0; c < n; ++c) {
        int bc = T.compose[b][c];
        if (bc < 0) continue;
        if (T.compose[ab][c] != T.compose[a][bc])
          throw AxiomError("groupoid: associativity fails at (" + g.label(a) + ", " + g.label(b) + ", " +
                           g.label(c) + ")");
      }
    }
  g.unit_pos_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    if (T.r[a] == a) {
      g.unit_pos_[a] = static_cast<int>(g.units_.size());
      g.units_.push_back(a);
    }
  g.from_.assign(g.units_.size(), {});
  g.to_.assign(g.units_.size(), {});
  for (int a = 0; a < n; ++a) {
    g.from_[g.unit_pos_[T.d[a]]].push_back(a);
    g.to_[g.unit_pos_[T.r[a]]].push_back(a);
  }
  return g;
}

FiniteGroupoid pair_groupoid(int n) {
  if (n < 1) throw AxiomError("pair_groupoid: n must be positive");
  GroupoidTables t;
  t.arrows = n * n;
  t.compose.assign(t.arrows, std::vector<int>(t.arrows, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = i * n + j;
      t.r.push_back(i * n + i);
      t.d.push_back(j * n + j);
      t.inv.push_back(j * n + i);
      t.labels.push_back("(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      for (int k = 0; k < n; ++k) t.compose[a][j * n + k] = i * n + k;
    }
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid group_groupoid(const FiniteGroup& g) {
  GroupoidTables t;
  t.arrows = g.size();
  t.r.assign(g.size(), g.identity);
  t.d.assign(g.size(), g.identity);
  t.inv = g.inv;
  t.compose = g.mult;
  t.labels = g.names;
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid unit_groupoid(int n) {
  GroupoidTables t;
  t.arrows = n;
  t.compose.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) {
    t.r.push_back(x);
    t.d.push_back(x);
    t.inv.push_back(x);
    t.compose[x][x] = x;
  }
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid product_groupoid(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int na = a.size(), nb = b.size(), n = na * nb;
  GroupoidTables t;
  t.arrows = n;
  t.compose.assign(n, std::vector<int>(n, -1));
  auto idx = [nb](int x, int y) { return x * nb + y; };
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      t.r.push_back(idx(a.r(x), b.r(y)));
      t.d.push_back(idx(a.d(x), b.d(y)));
      t.inv.push_back(idx(a.inv(x), b.inv(y)));
      t.labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2) {
          int p = a.mul(x, x2), q = b.mul(y, y2);
          if (p >= 0 && q >= 0) t.compose[idx(x, y)][idx(x2, y2)] = idx(p, q);
        }
    }
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int na = a.size(), n = na + b.size();
  GroupoidTables t;
  t.arrows = n;
  t.compose.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) {
    bool left = x < na;
    int y = left ? x : x - na, off = left ? 0 : na;
    const auto& g = left ? a : b;
    t.r.push_back(g.r(y) + off);
    t.d.push_back(g.d(y) + off);
    t.inv.push_back(g.inv(y) + off);
    t.labels.push_back((left ? "L" : "R") + g.label(y));
    for (int z = 0; z < g.size(); ++z)
      if (g.mul(y, z) >= 0) t.compose[x][z + off] = g.mul(y, z) + off;
  }
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<int>& perm) {
  const int n = g.size();
  GroupoidTables t;
  t.arrows = n;
  t.r.assign(n, 0);
  t.d.assign(n, 0);
  t.inv.assign(n, 0);
  t.labels.assign(n, "");
  t.compose.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a) {
    t.r[perm[a]] = perm[g.r(a)];
    t.d[perm[a]] = perm[g.d(a)];
    t.inv[perm[a]] = perm[g.inv(a)];
    t.labels[perm[a]] = g.label(a);
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) >= 0) t.compose[perm[a]][perm[b]] = perm[g.mul(a, b)];
  }
  return FiniteGroupoid::validate(std::move(t));
}

bool Bisection::contains(int a) const { return std::binary_search(arrows.begin(), arrows.end(), a); }

bool is_bisection(const FiniteGroupoid& g, const std::vector<int>& arrows) {
  std::set<int> rs, ds, seen;
  for (int a : arrows) {
    if (a < 0 || a >= g.size() || !seen.insert(a).second) return false;
    if (!rs.insert(g.r(a)).second || !ds.insert(g.d(a)).second) return false;
  }
  return true;
}

Bisection make_bisection(const FiniteGroupoid& g, std::vector<int> arrows) {
  if (!is_bisection(g, arrows)) throw AxiomError("not a bisection: r or d fails to be injective");
  std::sort(arrows.begin(), arrows.end());
  return Bisection{std::move(arrows)};
}

Bisection bisection_product(const FiniteGroupoid& g, const Bisection& u, const Bisection& v) {
  std::vector<int> out;
  for (int a : u.arrows)
    for (int b : v.arrows)
      if (g.composable(a, b)) out.push_back(g.mul(a, b));
  std::sort(out.begin(), out.end());
  return Bisection{std::move(out)};
}

Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& u) {
  std::vector<int> out;
  for (int a : u.arrows) out.push_back(g.inv(a));
  std::sort(out.begin(), out.end());
  return Bisection{std::move(out)};
}

Bisection unit_bisection(const FiniteGroupoid& g) { return Bisection{g.units()}; }

ActionOnFiniteSet validate_action(ISemigroup s, int points, std::vector<PartialBijection> h) {
  const int n = static_cast<int>(s.size());
  if (static_cast<int>(h.size()) != n) throw AxiomError("action: one partial bijection per element required");
  for (const auto& f : h)
    if (static_cast<int>(f.ground()) != points) throw AxiomError("action: ground set size mismatch");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (compose(h[a], h[b]) != h[s.mul(a, b)])
        throw AxiomError("action: h_" + s.label(a) + " h_" + s.label(b) + " != h_" + s.label(s.mul(a, b)));
  std::vector<char> covered(points, 0);
  for (const auto& f : h)
    for (int y : f.range()) covered[y] = 1;
  for (int x = 0; x < points; ++x)
    if (!covered[x]) throw AxiomError("action: degenerate, point " + std::to_string(x) + " lies in no X_t");
  return ActionOnFiniteSet{std::move(s), points, std::move(h)};
}

BisectionSemigroup bisection_semigroup(const FiniteGroupoid& g, const std::vector<Bisection>& gens,
                                       std::size_t bound) {
  for (const auto& u : gens)
    if (!is_bisection(g, u.arrows)) throw AxiomError("bisection_semigroup: generator is not a bisection");
  std::map<Bisection, int> index;
  std::vector<Bisection> elems;
  auto add = [&](const Bisection& u) {
    auto [it, fresh] = index.emplace(u, static_cast<int>(elems.size()));
    if (fresh) {
      if (elems.size() >= bound)
        throw std::length_error("bisection_semigroup: closure exceeds bound " + std::to_string(bound));
      elems.push_back(u);
    }
    return it->second;
  };
  std::vector<Bisection> letters;
  for (const auto& u : gens) {
    letters.push_back(u);
    letters.push_back(bisection_inverse(g, u));
  }
  BisectionSemigroup out;
  for (const auto& u : letters) add(u);
  for (std::size_t k = 0; k < gens.size(); ++k) out.generators.push_back(index.at(gens[k]));
  for (std::size_t x = 0; x < elems.size(); ++x)
    for (const auto& l : letters) add(bisection_product(g, elems[x], l));
  const std::size_t n = elems.size();
  std::vector<int> flat(n * n), star(n);
  std::optional<int> zero;
  for (std::size_t a = 0; a < n; ++a) {
    star[a] = index.at(bisection_inverse(g, elems[a]));
    if (elems[a].arrows.empty()) zero = static_cast<int>(a);
    for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = index.at(bisection_product(g, elems[a], elems[b]));
  }
  std::vector<std::string> labels;
  for (const auto& u : elems) {
    std::string lab = "{";
    for (std::size_t k = 0; k < u.arrows.size(); ++k) lab += (k ? "," : "") + g.label(u.arrows[k]);
    labels.push_back(lab + "}");
  }
  out.semigroup = make_trusted_semigroup(std::move(flat), std::move(star), zero, std::move(labels));
  out.elements = std::move(elems);

  std::vector<char> covered(g.size(), 0);
  for (const auto& u : out.elements)
    for (int a : u.arrows) covered[a] = 1;
  out.covers = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
  out.intersections_are_unions = true;
  for (std::size_t a = 0; a < n && out.intersections_are_unions; ++a)
    for (std::size_t b = a + 1; b < n && out.intersections_are_unions; ++b) {
      std::vector<int> meet;
      std::set_intersection(out.elements[a].arrows.begin(), out.elements[a].arrows.end(),
                            out.elements[b].arrows.begin(), out.elements[b].arrows.end(),
                            std::back_inserter(meet));
      std::set<int> reached;
      for (const auto& w : out.elements)
        if (std::includes(meet.begin(), meet.end(), w.arrows.begin(), w.arrows.end()))
          reached.insert(w.arrows.begin(), w.arrows.end());
      out.intersections_are_unions = reached.size() == meet.size();
    }
  return out;
}

ActionOnFiniteSet canonical_action(const FiniteGroupoid& g, const BisectionSemigroup& s) {
  std::vector<PartialBijection> h;
  for (const auto& u : s.elements) {
    PartialBijection f = PartialBijection::empty(g.unit_count());
    for (int a : u.arrows) f.map[g.unit_index(g.d(a))] = g.unit_index(g.r(a));
    h.push_back(f);
  }
  return validate_action(s.semigroup, g.unit_count(), std::move(h));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

TransformationGroupoid transformation_groupoid(const ActionOnFiniteSet& action) {
  const auto& s = action.semigroup;
  const int n = static_cast<int>(s.size()), X = action.points;
  // Pairs (t, x) with x in X_{t*} = dom h_t.
  std::vector<std::vector<int>> pair_id(n, std::vector<int>(X, -1));
  std::vector<std::pair<int, int>> pairs;
  for (int t = 0; t < n; ++t)
    for (int x = 0; x < X; ++x)
      if (action.h[t].defined(x)) {
        pair_id[t][x] = static_cast<int>(pairs.size());
        pairs.emplace_back(t, x);
      }
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v)
    for (int t = 0; t < n; ++t) leq[v][t] = natural_order(s, v, t);
  UnionFind uf(pairs.size());
  for (int x = 0; x < X; ++x)
    for (int v = 0; v < n; ++v) {
      if (!action.h[v].defined(x)) continue;
      int first = -1;
      for (int t = 0; t < n; ++t)
        if (leq[v][t]) {
          if (first < 0)
            first = pair_id[t][x];
          else
            uf.unite(pair_id[t][x], first);
        }
    }
  // Canonical representative: the pair with the smallest (x, t).
  std::map<int, std::pair<int, int>> rep;
  for (const auto& [t, x] : pairs) {
    int c = uf.find(pair_id[t][x]);
    auto it = rep.find(c);
    if (it == rep.end() || std::make_pair(x, t) < std::make_pair(it->second.second, it->second.first))
      rep[c] = {t, x};
  }
  std::vector<std::pair<int, int>> reps;
  for (const auto& [c, tx] : rep) reps.push_back(tx);
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
    return std::make_pair(a.second, a.first) < std::make_pair(b.second, b.first);
  });
  std::map<int, int> class_to_arrow;
  for (std::size_t k = 0; k < reps.size(); ++k)
    class_to_arrow[uf.find(pair_id[reps[k].first][reps[k].second])] = static_cast<int>(k);

  TransformationGroupoid out;
  out.germ = reps;
  out.arrow_of.assign(n, std::vector<int>(X, -1));
  for (const auto& [t, x] : pairs) out.arrow_of[t][x] = class_to_arrow.at(uf.find(pair_id[t][x]));

  const int m = static_cast<int>(reps.size());
  out.unit_of_point.assign(X, -1);
  for (int x = 0; x < X; ++x)
    for (int e : s.idempotents())
      if (action.h[e].defined(x)) {
        out.unit_of_point[x] = out.arrow_of[e][x];
        break;
      }
  GroupoidTables t;
  t.arrows = m;
  t.compose.assign(m, std::vector<int>(m, -1));
  for (int a = 0; a < m; ++a) {
    auto [ta, xa] = reps[a];
    int y = action.h[ta](xa);
    t.r.push_back(out.unit_of_point[y]);
    t.d.push_back(out.unit_of_point[xa]);
    t.inv.push_back(out.arrow_of[s.star(ta)][y]);
    t.labels.push_back("[" + s.label(ta) + "," + std::to_string(xa) + "]");
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      auto [sa, ya] = reps[a];
      auto [tb, xb] = reps[b];
      if (action.h[tb](xb) != ya) continue;
      t.compose[a][b] = out.arrow_of[s.mul(sa, tb)][xb];
    }
  out.groupoid = FiniteGroupoid::validate(std::move(t));
  for (int a = 0; a < n; ++a) {
    std::vector<int> arrows;
    for (int x = 0; x < X; ++x)
      if (out.arrow_of[a][x] >= 0) arrows.push_back(out.arrow_of[a][x]);
    out.slices.push_back(make_bisection(out.groupoid, arrows));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (bisection_product(out.groupoid, out.slices[a], out.slices[b]) != out.slices[s.mul(a, b)])
        throw AxiomError("transformation_groupoid: t -> U_t is not multiplicative at (" + s.label(a) + ", " +
                         s.label(b) + ")");
  return out;
}

DeaconuRenault deaconu_renault(int points, const std::vector<int>& phi, bool bisections) {
  if (static_cast<int>(phi.size()) != points) throw AxiomError("deaconu_renault: map size mismatch");
  for (int y : phi)
    if (y < -1 || y >= points) throw AxiomError("deaconu_renault: image out of range");
  // Orbits phi^0 x, phi^1 x, ... ; a repeated point is a cycle.
  std::vector<std::vector<int>> orbit(points);
  for (int x = 0; x < points; ++x) {
    std::vector<int> path = {x};
    std::vector<char> seen(points, 0);
    seen[x] = 1;
    int cur = x;
    while (phi[cur] >= 0) {
      cur = phi[cur];
      if (seen[cur]) {
        std::string cyc;
        auto start = std::find(path.begin(), path.end(), cur);
        for (auto it = start; it != path.end(); ++it) cyc += std::to_string(*it) + " -> ";
        throw AxiomError("deaconu_renault: periodic point, cycle " + cyc + std::to_string(cur));
      }
      seen[cur] = 1;
      path.push_back(cur);
    }
    orbit[x] = std::move(path);
  }
  DeaconuRenault out;
  std::map<std::pair<int, int>, int> arrow;  // (y, x) -> index; the lag is unique
  for (int y = 0; y < points; ++y)
    for (int x = 0; x < points; ++x) {
      for (int n = 0; n < static_cast<int>(orbit[x].size()); ++n) {
        auto it = std::find(orbit[y].begin(), orbit[y].end(), orbit[x][n]);
        if (it == orbit[y].end()) continue;
        int m = static_cast<int>(it - orbit[y].begin());
        arrow[{y, x}] = static_cast<int>(out.triples.size());
        out.triples.push_back({y, n - m, x, n, m});
        break;
      }
    }
  const int count = static_cast<int>(out.triples.size());
  GroupoidTables t;
  t.arrows = count;
  t.compose.assign(count, std::vector<int>(count, -1));
  out.unit_of_point.assign(points, -1);
  for (int x = 0; x < points; ++x) out.unit_of_point[x] = arrow.at({x, x});
  for (int a = 0; a < count; ++a) {
    const auto& tr = out.triples[a];
    t.r.push_back(out.unit_of_point[tr.y]);
    t.d.push_back(out.unit_of_point[tr.x]);
    t.inv.push_back(arrow.at({tr.x, tr.y}));
    t.labels.push_back("(" + std::to_string(tr.y) + "," + std::to_string(tr.k) + "," + std::to_string(tr.x) + ")");
  }
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      const auto& p = out.triples[a];
      const auto& q = out.triples[b];
      if (p.x != q.y) continue;
      int c = arrow.at({p.y, q.x});
      if (out.triples[c].k != p.k + q.k) throw AxiomError("deaconu_renault: lag is not additive");
      t.compose[a][b] = c;
    }
  out.groupoid = FiniteGroupoid::validate(std::move(t));
  if (!bisections) return out;
  std::vector<Bisection> singles;
  for (int a = 0; a < count; ++a) singles.push_back(Bisection{{a}});
  out.bisections = bisection_semigroup(out.groupoid, singles);
  return out;
}

namespace {

struct ArrowInvariant {
  bool unit;
  bool loop;
  int out_degree;  // arrows with domain d(a)
  int isotropy;    // loops at r(a)
  int order;       // order of a in its isotropy group, 0 for non-loops
  auto operator<=>(const ArrowInvariant&) const = default;
};

std::vector<ArrowInvariant> invariants(const FiniteGroupoid& g) {
  std::vector<ArrowInvariant> out;
  for (int a = 0; a < g.size(); ++a) {
    ArrowInvariant v{};
    v.unit = g.is_unit(a);
    v.loop = g.r(a) == g.d(a);
    v.out_degree = static_cast<int>(g.arrows_from(g.d(a)).size());
    for (int b : g.arrows_to(g.r(a))) v.isotropy += g.d(b) == g.r(a);
    if (v.loop) {
      int p = a;
      v.order = 1;
      while (!g.is_unit(p)) {
        p = g.mul(p, a);
        ++v.order;
      }
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

bool is_groupoid_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, const std::vector<int>& phi) {
  if (a.size() != b.size() || static_cast<int>(phi.size()) != a.size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (int x : phi) {
    if (x < 0 || x >= b.size() || hit[x]) return false;
    hit[x] = 1;
  }
  for (int x = 0; x < a.size(); ++x) {
    if (phi[a.r(x)] != b.r(phi[x]) || phi[a.d(x)] != b.d(phi[x]) || phi[a.inv(x)] != b.inv(phi[x])) return false;
    for (int y = 0; y < a.size(); ++y) {
      int xy = a.mul(x, y);
      int img = b.mul(phi[x], phi[y]);
      if ((xy < 0) != (img < 0)) return false;
      if (xy >= 0 && phi[xy] != img) return false;
    }
  }
  return true;
}

IsoSearch find_groupoid_isomorphism(const FiniteGroupoid& a, const FiniteGroupoid& b, std::size_t node_limit,
                                    const std::function<bool(const std::vector<int>&)>& accept) {
  IsoSearch res;
  if (a.size() != b.size() || a.unit_count() != b.unit_count()) return res;
  auto ia = invariants(a), ib = invariants(b);
  {
    auto sa = ia, sb = ib;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return res;
  }
  const int n = a.size();
  std::vector<int> phi(n, -1), used(n, -1);
  std::vector<int> assigned;

  // Assigns x -> y and closes under inverses and products; records the trail.
  auto assign = [&](int x, int y, std::vector<int>& trail) {
    std::vector<std::pair<int, int>> queue = {{x, y}};
    while (!queue.empty()) {
      auto [p, q] = queue.back();
      queue.pop_back();
      if (phi[p] >= 0) {
        if (phi[p] != q) return false;
        continue;
      }
      if (used[q] >= 0 || ia[p] != ib[q]) return false;
      phi[p] = q;
      used[q] = p;
      trail.push_back(p);
      assigned.push_back(p);
      queue.emplace_back(a.inv(p), b.inv(q));
      queue.emplace_back(a.r(p), b.r(q));
      queue.emplace_back(a.d(p), b.d(q));
      for (std::size_t k = 0; k < assigned.size(); ++k) {
        int z = assigned[k];
        int w = phi[z];
        int pz = a.mul(p, z), qw = b.mul(q, w);
        if ((pz < 0) != (qw < 0)) return false;
        if (pz >= 0) queue.emplace_back(pz, qw);
        int zp = a.mul(z, p), wq = b.mul(w, q);
        if ((zp < 0) != (wq < 0)) return false;
        if (zp >= 0) queue.emplace_back(zp, wq);
      }
    }
    return true;
  };
  auto undo = [&](std::vector<int>& trail) {
    for (int p : trail) {
      used[phi[p]] = -1;
      phi[p] = -1;
    }
    assigned.resize(assigned.size() - trail.size());
    trail.clear();
  };
  // Branch on units first, then on remaining arrows.
  std::vector<int> order(a.units());
  for (int x = 0; x < n; ++x)
    if (!a.is_unit(x)) order.push_back(x);

  bool aborted = false;
  std::function<bool(std::size_t)> search = [&](std::size_t pos) {
    while (pos < order.size() && phi[order[pos]] >= 0) ++pos;
    if (pos == order.size()) return !accept || accept(phi);
    int x = order[pos];
    for (int y = 0; y < n; ++y) {
      if (used[y] >= 0 || ia[x] != ib[y]) continue;
      if (++res.nodes > node_limit) {
        aborted = true;
        return false;
      }
      std::vector<int> trail;
      if (assign(x, y, trail) && search(pos + 1)) return true;
      undo(trail);
      if (aborted) return false;
    }
    return false;
  };
  if (search(0)) {
    res.status = SearchStatus::Found;
    res.phi = phi;
    if (!is_groupoid_isomorphism(a, b, phi)) throw AxiomError("iso search returned a non-isomorphism");
  } else {
    res.status = aborted ? SearchStatus::Inconclusive : SearchStatus::None;
  }
  return res;
}

}  // namespace lpg
