// Twisted inverse semigroup actions on finite spaces and their groupoids.

#ifndef LPGROUPOID_TWIST_HPP
#define LPGROUPOID_TWIST_HPP

#include "lpgroupoid/cocycle.hpp"
#include "lpgroupoid/galg.hpp"
#include "lpgroupoid/groupoid.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace lpg {

/// (alpha, u) for an action of S on C(X), X = {0, ..., points-1}: alpha_t(a) = a o h_{t*}
/// and u(s, t) a unimodular function on X_{st}.
template <Scalar T>
struct TwistedActionData {
  ActionOnFiniteSet action;
  std::vector<std::vector<T>> u;  // u[s * |S| + t][x]; only x in X_{st} is read

  const ISemigroup& semigroup() const { return action.semigroup; }
  int points() const { return action.points; }
  const T& twist(int s, int t, int x) const { return u[static_cast<std::size_t>(s) * semigroup().size() + t][x]; }
  T& twist(int s, int t, int x) { return u[static_cast<std::size_t>(s) * semigroup().size() + t][x]; }
};

/// Untwisted data u = 1 for an action.
template <Scalar T>
TwistedActionData<T> untwisted(ActionOnFiniteSet action) {
  const std::size_t m = action.semigroup.size();
  TwistedActionData<T> out{std::move(action), {}};
  out.u.assign(m * m, std::vector<T>(out.points(), T(1)));
  return out;
}

/// c_U = 1 on every bisection.
template <Scalar T>
std::vector<std::vector<T>> constant_sections(const FiniteGroupoid& g, const BisectionSemigroup& s) {
  return std::vector<std::vector<T>>(s.elements.size(), std::vector<T>(g.size(), T(1)));
}

template <Scalar T>
bool nearly_equal(const AlgElement<T>& f, const AlgElement<T>& h) {
  for (int a = 0; a < f.size(); ++a)
    if (!nearly_equal(f[a], h[a], 1e-10)) return false;
  return true;
}

/// alpha_U(a) = c_U * a * c_U^*, u(U, V) = c_U * c_V * c_{UV}^*, evaluated in the
/// twisted convolution algebra. sections[i][gamma] is read for gamma in U_i.
template <Scalar T>
TwistedActionData<T> extract_twisted_action(std::shared_ptr<const Cocycle<T>> sigma, const BisectionSemigroup& s,
                                            const std::vector<std::vector<T>>& sections) {
  const FiniteGroupoid& G = sigma->groupoid();
  if (!s.wide()) throw DomainError("extract_twisted_action: the bisection semigroup is not wide");
  const std::size_t m = s.elements.size();
  if (sections.size() != m) throw DomainError("extract_twisted_action: one section per bisection is required");
  std::vector<AlgElement<T>> c, cstar;
  for (std::size_t i = 0; i < m; ++i) {
    if (static_cast<int>(sections[i].size()) != G.size())
      throw DomainError("extract_twisted_action: section " + std::to_string(i) + " has the wrong length");
    bool in_units = true;
    for (int a : s.elements[i].arrows) in_units = in_units && G.is_unit(a);
    AlgElement<T> ci(sigma);
    for (int a : s.elements[i].arrows) {
      const T& v = sections[i][a];
      if (!is_unimodular(v))
        throw DomainError("extract_twisted_action: section of bisection " + std::to_string(i) +
                          " is not unimodular at " + G.label(a));
      if (in_units && !nearly_equal(v, T(1)))
        throw DomainError("extract_twisted_action: section of unit bisection " + std::to_string(i) + " must be 1");
      ci[a] = v;
    }
    cstar.push_back(involute(ci));
    c.push_back(std::move(ci));
  }
  TwistedActionData<T> out{canonical_action(G, s), {}};
  const auto& S = out.semigroup();
  const auto& units = G.units();
  for (std::size_t i = 0; i < m; ++i)
    for (int x : out.action.h[i].domain()) {
      auto image = convolve(convolve(c[i], AlgElement<T>::delta(sigma, units[x])), cstar[i]);
      if (!nearly_equal(image, AlgElement<T>::delta(sigma, units[out.action.h[i](x)])))
        throw AxiomError("extract_twisted_action: c_U * a * c_U^* disagrees with the canonical action");
    }
  out.u.assign(m * m, std::vector<T>(out.points(), T(0)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      auto w = convolve(convolve(c[a], c[b]), cstar[S.mul(a, b)]);
      for (int g = 0; g < G.size(); ++g)
        if (!G.is_unit(g) && !is_zero(w[g]))
          throw AxiomError("extract_twisted_action: u(U, V) is not supported on the unit space");
      for (int x = 0; x < out.points(); ++x) out.twist(a, b, x) = w[units[x]];
    }
  return out;
}

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string witness;
  void fail(std::string w) {
    if (passed) witness = std::move(w);
    passed = false;
  }
};

struct TwistedActionReport {
  std::vector<AxiomCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const AxiomCheck& operator[](const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
  }
};

/// Exhaustive pointwise check of the axioms A1-A4 (commutative coefficient
/// algebra C(X), so Ad_u is trivial) plus domain coverage and unimodularity.
template <Scalar T>
TwistedActionReport validate_twisted_action(const TwistedActionData<T>& data) {
  const auto& S = data.semigroup();
  const int m = static_cast<int>(S.size());
  const int k = data.points();
  const auto& h = data.action.h;
  auto name = [&](int t) { return S.label(t); };
  auto range = [&](int t) {
    std::vector<char> in(k, 0);
    for (int x : h[t].range()) in[x] = 1;
    return in;
  };
  std::vector<std::vector<char>> X(m);
  for (int t = 0; t < m; ++t) X[t] = range(t);
  auto one = [](const T& v) { return nearly_equal(v, T(1), 1e-10); };

  AxiomCheck dom{"domains"}, a1{"A1"}, a2{"A2"}, a3{"A3"}, a4{"A4"};
  if (static_cast<std::size_t>(m) * m != data.u.size()) {
    dom.fail("u table has the wrong size");
    return {{dom}};
  }
  std::vector<char> covered(k, 0);
  for (int t = 0; t < m; ++t)
    for (int x = 0; x < k; ++x) covered[x] |= X[t][x];
  for (int x = 0; x < k; ++x)
    if (!covered[x]) dom.fail("point " + std::to_string(x) + " lies in no X_t");
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      for (int x = 0; x < k; ++x)
        if (X[S.mul(s, t)][x] && !is_unimodular(data.twist(s, t, x)))
          dom.fail("u(" + name(s) + ", " + name(t) + ") is not unimodular at " + std::to_string(x));

  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      if (compose(h[s], h[t]) != h[S.mul(s, t)]) a1.fail("alpha_" + name(s) + " alpha_" + name(t) + " != alpha_st");

  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t) {
        const int st = S.mul(s, t), rs = S.mul(r, s);
        for (int x : h[r].domain()) {
          if (!X[st][x]) continue;
          const int y = h[r](x);
          T lhs = data.twist(s, t, x) * data.twist(r, st, y);
          T rhs = data.twist(r, s, y) * data.twist(rs, t, y);
          if (!nearly_equal(lhs, rhs, 1e-10))
            a2.fail("(" + name(r) + ", " + name(s) + ", " + name(t) + ") at " + std::to_string(x) + ": " +
                    to_string(lhs) + " vs " + to_string(rhs));
        }
      }

  for (int e : S.idempotents())
    for (int f : S.idempotents())
      for (int x = 0; x < k; ++x)
        if (X[S.mul(e, f)][x] && !one(data.twist(e, f, x)))
          a3.fail("u(" + name(e) + ", " + name(f) + ") != 1 at " + std::to_string(x));
  for (int t = 0; t < m; ++t) {
    const int ts = S.star(t);
    for (int x = 0; x < k; ++x) {
      if (!X[t][x]) continue;
      if (!one(data.twist(t, S.mul(ts, t), x)))
        a3.fail("u(" + name(t) + ", " + name(t) + "*" + name(t) + ") != 1 at " + std::to_string(x));
      if (!one(data.twist(S.mul(t, ts), t, x)))
        a3.fail("u(" + name(t) + name(t) + "*, " + name(t) + ") != 1 at " + std::to_string(x));
    }
  }

  for (int t = 0; t < m; ++t) {
    const int ts = S.star(t);
    for (int e : S.idempotents()) {
      const int tse = S.mul(ts, e);
      const int tset = S.mul(tse, t);
      for (int x = 0; x < k; ++x) {
        if (!X[tset][x]) continue;
        T lhs = data.twist(ts, e, x) * data.twist(tse, t, x);
        if (!nearly_equal(lhs, data.twist(ts, t, x), 1e-10))
          a4.fail("(" + name(t) + ", " + name(e) + ") at " + std::to_string(x));
      }
    }
  }
  return {{dom, a1, a2, a3, a4}};
}

/// The transformation groupoid S x_h X with the cocycle of the line bundle of
/// classes [a, t, x], trivialized by the sections [1, t0, x] at the germ
/// representatives (t0, x).
template <Scalar T>
struct RebuiltTwistedGroupoid {
  TransformationGroupoid transformation;
  std::shared_ptr<const FiniteGroupoid> groupoid;
  Cocycle<T> sigma;
};

template <Scalar T>
RebuiltTwistedGroupoid<T> rebuild_twisted_groupoid(const TwistedActionData<T>& data) {
  const auto& S = data.semigroup();
  const int m = static_cast<int>(S.size());
  const auto& h = data.action.h;
  TransformationGroupoid tg = transformation_groupoid(data.action);
  auto G = std::make_shared<const FiniteGroupoid>(tg.groupoid);
  // [1, t, x] = lambda(t, x) [1, t0, x] with (t0, x) the representative.
  std::vector<std::vector<T>> lambda(m, std::vector<T>(data.points(), T(0)));
  for (int t = 0; t < m; ++t)
    for (int x : h[t].domain()) {
      const int t0 = tg.germ[tg.arrow_of[t][x]].first;
      std::optional<T> value;
      for (int v = 0; v < m; ++v) {
        if (!natural_order(S, v, t) || !natural_order(S, v, t0) || h[v](x) < 0) continue;
        const int y = h[v](x), e = S.mul(v, S.star(v));
        T l = data.twist(e, t, y) / data.twist(e, t0, y);
        if (value && !nearly_equal(*value, l, 1e-10))
          throw AxiomError("rebuild: the class of [1, " + S.label(t) + ", " + std::to_string(x) +
                           "] is not well defined");
        value = l;
      }
      if (!value) throw AxiomError("rebuild: no common minorant for a germ");
      lambda[t][x] = *value;
    }
  const int n = G->size();
  std::vector<T> values(static_cast<std::size_t>(n) * n, T(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!G->composable(a, b)) continue;
      const auto [s, y] = tg.germ[a];
      const auto [t, x] = tg.germ[b];
      if (h[t](x) != y) throw AxiomError("rebuild: germ representatives are not composable");
      const int st = S.mul(s, t);
      values[static_cast<std::size_t>(a) * n + b] = data.twist(s, t, h[st](x)) * lambda[st][x];
    }
  Cocycle<T> sigma = validate_cocycle(G, std::move(values));
  return {std::move(tg), std::move(G), std::move(sigma)};
}

/// Unimodular n-th roots of z available in the scalar mode: plus or minus one
/// for reals, the fourth roots of unity for Gaussian rationals, every root for
/// complex floats.
template <Scalar T>
std::vector<T> unimodular_roots(const T& z, int n) {
  std::vector<T> out;
  if constexpr (std::is_same_v<T, cdouble>) {
    const double arg = std::arg(z);
    for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, (arg + 2 * std::numbers::pi * k) / n));
  } else {
    std::vector<T> pool = {T(1), T(-1)};
    if constexpr (std::is_same_v<T, GaussRational>) {
      pool.push_back(GaussRational::i());
      pool.push_back(GaussRational(Rational(0), Rational(-1)));
    }
    for (const auto& w : pool) {
      T p(1);
      for (int i = 0; i < n; ++i) p *= w;
      if (nearly_equal(p, z, 1e-10)) out.push_back(w);
    }
  }
  return out;
}

/// A function c, equal to 1 on units, with c(a) c(b) = rho(a, b) c(ab) on
/// composable pairs, or nullopt when rho is not such a coboundary. Free
/// values are fixed along a spanning tree of each component; isotropy at the
/// base unit is searched over unimodular_roots.
template <Scalar T>
std::optional<std::vector<T>> find_gauge(const FiniteGroupoid& G, const std::function<T(int, int)>& rho) {
  const int n = G.size();
  using State = std::vector<std::optional<T>>;
  State c(n);
  for (int u : G.units()) c[u] = T(1);
  auto same = [](const T& x, const T& y) { return nearly_equal(x, y, 1e-9); };
  auto propagate = [&](State& st) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < n; ++a)
        for (int b : G.arrows_to(G.d(a))) {
          const int ab = G.mul(a, b);
          const T r = rho(a, b);
          auto set = [&](int z, T v) {
            if (st[z]) return same(*st[z], v);
            st[z] = v;
            changed = true;
            return true;
          };
          if (st[a] && st[b]) {
            if (!set(ab, *st[a] * *st[b] / r)) return false;
          } else if (st[a] && st[ab]) {
            if (!set(b, r * *st[ab] / *st[a])) return false;
          } else if (st[b] && st[ab]) {
            if (!set(a, r * *st[ab] / *st[b])) return false;
          }
        }
    }
    return true;
  };
  std::vector<char> seen(n, 0);
  for (int x0 : G.units()) {
    if (seen[x0]) continue;
    seen[x0] = 1;
    for (int a : G.arrows_from(x0)) {
      const int y = G.r(a);
      if (seen[y]) continue;
      seen[y] = 1;
      if (!c[a]) c[a] = T(1);
      if (!propagate(c)) return std::nullopt;
    }
  }
  std::function<std::optional<State>(State)> search = [&](State st) -> std::optional<State> {
    int a = 0;
    while (a < n && (st[a] || G.r(a) != G.d(a))) ++a;
    if (a == n) {
      a = 0;
      while (a < n && st[a]) ++a;
    }
    if (a == n) return st;
    if (G.r(a) != G.d(a)) {
      st[a] = T(1);
      if (!propagate(st)) return std::nullopt;
      return search(std::move(st));
    }
    int order = 1;
    T target(1);
    for (int p = a; !G.is_unit(p); p = G.mul(a, p), ++order) target *= rho(a, p);
    for (const T& w : unimodular_roots(target, order)) {
      State next = st;
      next[a] = w;
      if (!propagate(next)) continue;
      if (auto done = search(std::move(next))) return done;
    }
    return std::nullopt;
  };
  auto solved = search(c);
  if (!solved) return std::nullopt;
  std::vector<T> out;
  for (auto& v : *solved) out.push_back(*v);
  for (int a = 0; a < n; ++a)
    for (int b : G.arrows_to(G.d(a)))
      if (!same(out[a] * out[b], rho(a, b) * out[G.mul(a, b)])) return std::nullopt;
  return out;
}

template <Scalar T>
struct TwistComparison {
  SearchStatus status = SearchStatus::None;
  std::vector<int> phi;   // rebuilt arrow -> original arrow
  std::vector<T> gauge;   // sigma(phi a, phi b) = sigma'(a, b) c(a) c(b) / c(ab)
  std::string mismatch;
  std::size_t nodes = 0;
  std::optional<RebuiltTwistedGroupoid<T>> rebuilt;
};

/// Rebuilds (S x X, sigma') from the data and searches for a groupoid
/// isomorphism onto the original that carries sigma' to sigma up to a coboundary.
template <Scalar T>
TwistComparison<T> rebuild_and_compare(const TwistedActionData<T>& data, const Cocycle<T>& original,
                                       std::size_t node_limit = 2000000) {
  TwistComparison<T> out;
  auto rebuilt = rebuild_twisted_groupoid(data);
  const FiniteGroupoid& A = *rebuilt.groupoid;
  const FiniteGroupoid& B = original.groupoid();
  if (A.size() != B.size() || A.unit_count() != B.unit_count()) {
    out.mismatch = "rebuilt groupoid has " + std::to_string(A.size()) + " arrows and " +
                   std::to_string(A.unit_count()) + " units, original has " + std::to_string(B.size()) + " and " +
                   std::to_string(B.unit_count());
    out.rebuilt = std::move(rebuilt);
    return out;
  }
  bool any_iso = false;
  auto accept = [&](const std::vector<int>& phi) {
    any_iso = true;
    const Cocycle<T>& s2 = rebuilt.sigma;
    auto gauge = find_gauge<T>(A, [&](int a, int b) { return original(phi[a], phi[b]) / s2(a, b); });
    if (!gauge) return false;
    out.gauge = std::move(*gauge);
    return true;
  };
  IsoSearch iso = find_groupoid_isomorphism(A, B, node_limit, accept);
  out.status = iso.status;
  out.nodes = iso.nodes;
  out.phi = iso.phi;
  if (iso.status == SearchStatus::None)
    out.mismatch = any_iso ? "no isomorphism carries the rebuilt twist to the original up to a coboundary"
                           : "the rebuilt groupoid is not isomorphic to the original";
  else if (iso.status == SearchStatus::Inconclusive)
    out.mismatch = "search limit reached";
  out.rebuilt = std::move(rebuilt);
  return out;
}

}  // namespace lpg

#endif  // LPGROUPOID_TWIST_HPP
