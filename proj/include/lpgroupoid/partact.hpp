// Twisted partial actions of finite groups on finite sets, their
// transformation groupoids and the l^1 crossed product.

#ifndef LPGROUPOID_PARTACT_HPP
#define LPGROUPOID_PARTACT_HPP

#include "lpgroupoid/cocycle.hpp"
#include "lpgroupoid/galg.hpp"
#include "lpgroupoid/groupoid.hpp"
#include "lpgroupoid/reps.hpp"
#include "lpgroupoid/twist.hpp"

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace lpg {

/// theta[t] maps X_{t^-1} onto X_t.
struct PartialAction {
  FiniteGroup group;
  int points = 0;
  std::vector<PartialBijection> theta;

  std::vector<std::vector<char>> X;  // X[t][x] = 1 iff x in X_t

  const PartialBijection& operator[](int t) const { return theta[t]; }
  const std::vector<char>& domain_mask(int t) const { return X[t]; }
  std::string tuple(std::initializer_list<int> elems) const;
};

PartialAction validate_partial_action(FiniteGroup g, int points, std::vector<PartialBijection> theta);

/// The global action of G on X obtained from a table perm[t][x].
PartialAction global_action(const FiniteGroup& g, const std::vector<std::vector<int>>& perm);

/// Arrows (t, x) with x in X_{t^-1}, r(t, x) = theta_t(x), d(t, x) = x and
/// (s, theta_t(x)) (t, x) = (st, x).
struct PartialActionGroupoid {
  std::shared_ptr<const FiniteGroupoid> groupoid;
  std::vector<std::vector<int>> arrow_of;  // arrow_of[t][x], -1 outside X_{t^-1}
  std::vector<std::pair<int, int>> pair;   // (t, x) of each arrow
  std::vector<Bisection> slices;           // {t} x X_{t^-1}
};

PartialActionGroupoid partial_action_groupoid(const PartialAction& theta);

/// u(s, t) stored as a total function on X, zero outside X_s and X_{st}.
template <Scalar T>
struct PartialTwist {
  std::shared_ptr<const PartialAction> action;
  std::vector<std::vector<T>> u;  // u[s * |G| + t][x]

  const T& operator()(int s, int t, int x) const { return u[static_cast<std::size_t>(s) * action->group.size() + t][x]; }
};

template <Scalar T>
std::vector<std::vector<T>> trivial_partial_twist_table(const PartialAction& theta) {
  const int n = theta.group.size();
  std::vector<std::vector<T>> u(static_cast<std::size_t>(n) * n, std::vector<T>(theta.points, T(0)));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const auto &xs = theta.domain_mask(s), &xst = theta.domain_mask(theta.group.mul(s, t));
      for (int x = 0; x < theta.points; ++x)
        if (xs[x] && xst[x]) u[static_cast<std::size_t>(s) * n + t][x] = T(1);
    }
  return u;
}

/// Checks normalization, unimodularity on X_s and X_{st}, and
/// u(s,t)(z) u(r,st)(theta_r z) = u(r,s)(theta_r z) u(rs,t)(theta_r z) for z in
/// X_{r^-1}, X_s and X_{st}. Values outside the domains are reset to 0.
template <Scalar T>
PartialTwist<T> validate_partial_twist(std::shared_ptr<const PartialAction> theta, std::vector<std::vector<T>> u) {
  const PartialAction& A = *theta;
  const FiniteGroup& G = A.group;
  const int n = G.size(), k = A.points;
  if (u.size() != static_cast<std::size_t>(n) * n) throw AxiomError("partial twist: table size mismatch");
  const auto& X = A.X;
  auto at = [&](int s, int t) -> std::vector<T>& { return u[static_cast<std::size_t>(s) * n + t]; };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      auto& f = at(s, t);
      if (static_cast<int>(f.size()) != k) throw AxiomError("partial twist: u" + A.tuple({s, t}) + " has the wrong length");
      for (int x = 0; x < k; ++x) {
        if (!(X[s][x] && X[G.mul(s, t)][x])) {
          f[x] = T(0);
          continue;
        }
        if (!is_unimodular(f[x]))
          throw AxiomError("partial twist: u" + A.tuple({s, t}) + " is not unimodular at " + std::to_string(x));
        if ((s == G.identity || t == G.identity) && !nearly_equal(f[x], T(1)))
          throw AxiomError("partial twist: not normalized at u" + A.tuple({s, t}) + " point " + std::to_string(x));
      }
    }
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) {
        const int st = G.mul(s, t), rs = G.mul(r, s);
        for (int z : A[r].domain()) {
          if (!X[s][z] || !X[st][z]) continue;
          const int y = A[r](z);
          T lhs = at(s, t)[z] * at(r, st)[y];
          T rhs = at(r, s)[y] * at(rs, t)[y];
          if (!nearly_equal(lhs, rhs, 1e-10))
            throw AxiomError("partial twist: identity fails at (r, s, t) = " + A.tuple({r, s, t}) + ", x = " +
                             std::to_string(z));
        }
      }
  return PartialTwist<T>{std::move(theta), std::move(u)};
}

/// sigma_u((s, theta_t x), (t, x)) = u(s, t)(theta_{st} x).
template <Scalar T>
Cocycle<T> partial_twist_cocycle(const PartialActionGroupoid& g, const PartialTwist<T>& u) {
  const FiniteGroupoid& G = *g.groupoid;
  const auto& grp = u.action->group;
  const int n = G.size();
  std::vector<T> v(static_cast<std::size_t>(n) * n, T(0));
  for (int a = 0; a < n; ++a)
    for (int b : G.arrows_to(G.d(a))) {
      const int s = g.pair[a].first;
      const auto [t, x] = g.pair[b];
      v[static_cast<std::size_t>(a) * n + b] = u(s, t, (*u.action)[grp.mul(s, t)](x));
    }
  return validate_cocycle(g.groupoid, std::move(v));
}

template <Scalar T>
struct TwistedPartialGroupoid {
  PartialActionGroupoid groupoid;
  std::shared_ptr<const Cocycle<T>> sigma;
};

template <Scalar T>
TwistedPartialGroupoid<T> partial_action_groupoid(const PartialTwist<T>& u) {
  auto g = partial_action_groupoid(*u.action);
  auto sigma = std::make_shared<const Cocycle<T>>(partial_twist_cocycle(g, u));
  return {std::move(g), std::move(sigma)};
}

/// f(t) is a function on X supported in X_t.
template <Scalar T>
class CrossedElement {
 public:
  CrossedElement() = default;
  explicit CrossedElement(std::shared_ptr<const PartialTwist<T>> twist)
      : twist_(std::move(twist)),
        f_(twist_->action->group.size(), std::vector<T>(twist_->action->points, T(0))) {}
  CrossedElement(std::shared_ptr<const PartialTwist<T>> twist, std::vector<std::vector<T>> f)
      : twist_(std::move(twist)), f_(std::move(f)) {
    const auto& A = *twist_->action;
    if (static_cast<int>(f_.size()) != A.group.size())
      throw DomainError("CrossedElement: one function per group element is required");
    for (int t = 0; t < A.group.size(); ++t) {
      if (static_cast<int>(f_[t].size()) != A.points) throw DomainError("CrossedElement: function has the wrong length");
      const auto& X = A.domain_mask(t);
      for (int x = 0; x < A.points; ++x)
        if (!X[x] && !is_zero(f_[t][x]))
          throw DomainError("CrossedElement: f(" + A.group.names[t] + ") is nonzero at " + std::to_string(x) +
                            " outside X_" + A.group.names[t]);
    }
  }

  /// a delta_t with a = value on X_t.
  static CrossedElement delta(std::shared_ptr<const PartialTwist<T>> twist, int t, T value = T(1)) {
    CrossedElement out(std::move(twist));
    for (int x : out.action()[t].range()) out.f_[t][x] = value;
    return out;
  }
  static CrossedElement point(std::shared_ptr<const PartialTwist<T>> twist, int t, int x, T value = T(1)) {
    CrossedElement out(std::move(twist));
    if (!out.action().domain_mask(t)[x])
      throw DomainError("CrossedElement: point " + std::to_string(x) + " is outside X_" + out.action().group.names[t]);
    out.f_[t][x] = value;
    return out;
  }

  const PartialAction& action() const { return *twist_->action; }
  const PartialTwist<T>& partial_twist() const { return *twist_; }
  const std::shared_ptr<const PartialTwist<T>>& twist() const { return twist_; }
  const std::vector<T>& operator[](int t) const { return f_[t]; }
  const std::vector<std::vector<T>>& values() const { return f_; }

  CrossedElement& operator+=(const CrossedElement& o) {
    check_same(o);
    for (std::size_t t = 0; t < f_.size(); ++t)
      for (std::size_t x = 0; x < f_[t].size(); ++x) f_[t][x] += o.f_[t][x];
    return *this;
  }
  CrossedElement& operator*=(const T& s) {
    for (auto& row : f_)
      for (auto& v : row) v *= s;
    return *this;
  }
  friend CrossedElement operator+(CrossedElement a, const CrossedElement& b) { return a += b; }
  friend CrossedElement operator*(const T& s, CrossedElement a) { return a *= s; }
  friend bool operator==(const CrossedElement& a, const CrossedElement& b) {
    return a.twist_ == b.twist_ && a.f_ == b.f_;
  }

  void check_same(const CrossedElement& o) const {
    if (twist_ != o.twist_) throw DomainError("CrossedElement: operands belong to different twisted partial actions");
  }

  template <Scalar U>
  friend CrossedElement<U> crossed_convolve(const CrossedElement<U>&, const CrossedElement<U>&);
  template <Scalar U>
  friend CrossedElement<U> crossed_involute(const CrossedElement<U>&);

 private:
  std::shared_ptr<const PartialTwist<T>> twist_;
  std::vector<std::vector<T>> f_;
};

/// (f * g)(st)(y) += f(s)(y) g(t)(theta_{s^-1} y) u(s, t)(y).
template <Scalar T>
CrossedElement<T> crossed_convolve(const CrossedElement<T>& f, const CrossedElement<T>& g) {
  f.check_same(g);
  const auto& A = f.action();
  const auto& G = A.group;
  const auto& u = f.partial_twist();
  CrossedElement<T> out(f.twist());
  for (int s = 0; s < G.size(); ++s) {
    const auto& back = A[G.inverse(s)];
    for (int t = 0; t < G.size(); ++t) {
      const int st = G.mul(s, t);
      for (int y = 0; y < A.points; ++y) {
        if (is_zero(f.f_[s][y])) continue;
        const int z = back(y);
        if (z < 0 || is_zero(g.f_[t][z])) continue;
        out.f_[st][y] += f.f_[s][y] * g.f_[t][z] * u(s, t, y);
      }
    }
  }
  return out;
}

/// f*(t)(y) = conj f(t^-1)(theta_{t^-1} y) conj u(t, t^-1)(y).
template <Scalar T>
CrossedElement<T> crossed_involute(const CrossedElement<T>& f) {
  const auto& A = f.action();
  const auto& G = A.group;
  CrossedElement<T> out(f.twist());
  for (int t = 0; t < G.size(); ++t) {
    const int ti = G.inverse(t);
    for (int y : A[t].range()) out.f_[t][y] = conj(f.f_[ti][A[ti](y)]) * conj(f.partial_twist()(t, ti, y));
  }
  return out;
}

/// sum_t sup_x |f(t)(x)|.
template <Scalar T>
magnitude_t<T> l1_norm(const CrossedElement<T>& f) {
  using M = magnitude_t<T>;
  M total(0);
  for (const auto& row : f.values()) {
    M best(0);
    for (const auto& v : row) best = std::max(best, M(magnitude(v)));
    total += best;
  }
  return total;
}

/// f-hat(t, x) = f(t)(theta_t x) on (G_theta, sigma_u).
template <Scalar T>
AlgElement<T> embed_into_groupoid_algebra(const CrossedElement<T>& f, const TwistedPartialGroupoid<T>& g) {
  AlgElement<T> out(g.sigma);
  const auto& A = f.action();
  for (int a = 0; a < out.size(); ++a) {
    const auto [t, x] = g.groupoid.pair[a];
    out[a] = f[t][A[t](x)];
  }
  return out;
}

/// Inverse of the embedding.
template <Scalar T>
CrossedElement<T> restrict_from_groupoid_algebra(const AlgElement<T>& h, const TwistedPartialGroupoid<T>& g,
                                                 std::shared_ptr<const PartialTwist<T>> twist) {
  std::vector<std::vector<T>> f(twist->action->group.size(), std::vector<T>(twist->action->points, T(0)));
  for (int a = 0; a < h.size(); ++a) {
    const auto [t, x] = g.groupoid.pair[a];
    f[t][(*twist->action)[t](x)] = h[a];
  }
  return CrossedElement<T>(std::move(twist), std::move(f));
}

/// The closure S_theta of the slices {t} x X_{t^-1} under products of bisections.
inline BisectionSemigroup slice_semigroup(const PartialActionGroupoid& g) {
  return bisection_semigroup(*g.groupoid, g.slices);
}

/// The induced action of S(G): [theta]_{(A, g)} is theta_g with range cut down
/// to the intersection of X_a over a in A, twisted by [u]((A,g),(B,h)) = u(g, h).
template <Scalar T>
TwistedActionData<T> exel_twisted_action(const ExelSemigroup& ex, const PartialTwist<T>& u) {
  const PartialAction& A = *u.action;
  const int m = static_cast<int>(ex.elements.size());
  std::vector<PartialBijection> h;
  for (const auto& el : ex.elements) {
    std::vector<int> img(A.points, -1);
    for (int x : A[el.g].domain()) {
      const int y = A[el.g](x);
      bool inside = true;
      for (int a = 0; a < A.group.size(); ++a)
        if ((el.set >> a & 1U) && !A.domain_mask(a)[y]) inside = false;
      if (inside) img[x] = y;
    }
    h.emplace_back(std::move(img));
  }
  TwistedActionData<T> out{validate_action(ex.semigroup, A.points, std::move(h)), {}};
  out.u.assign(static_cast<std::size_t>(m) * m, std::vector<T>(A.points, T(0)));
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      for (int y : out.action.h[ex.semigroup.mul(s, t)].range())
        out.twist(s, t, y) = u(ex.elements[s].g, ex.elements[t].g, y);
  return out;
}

/// The identities v_s v_t v_{t^-1} = v_{st} v_{t^-1}, v_{s^-1} v_s v_t = v_{s^-1} v_{st},
/// v_t v_1 = v_t = v_1 v_t of a partial representation of G.
template <Scalar T>
AxiomCheck validate_partial_representation(const FiniteGroup& G, const std::vector<Mat<T>>& v) {
  AxiomCheck out{"partial representation"};
  const int n = G.size();
  if (static_cast<int>(v.size()) != n) {
    out.fail("one operator per group element is required");
    return out;
  }
  auto name = [&](int t) { return G.names[t]; };
  const auto& one = v[G.identity];
  for (int t = 0; t < n; ++t)
    if (!nearly_equal(Mat<T>(v[t] * one), v[t]) || !nearly_equal(Mat<T>(one * v[t]), v[t]))
      out.fail("v_1 is not a unit for v_" + name(t));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int ti = G.inverse(t), si = G.inverse(s), st = G.mul(s, t);
      if (!nearly_equal(Mat<T>(v[s] * v[t] * v[ti]), Mat<T>(v[st] * v[ti])))
        out.fail("v_s v_t v_t^-1 != v_st v_t^-1 at (" + name(s) + ", " + name(t) + ")");
      if (!nearly_equal(Mat<T>(v[si] * v[s] * v[t]), Mat<T>(v[si] * v[st])))
        out.fail("v_s^-1 v_s v_t != v_s^-1 v_st at (" + name(s) + ", " + name(t) + ")");
    }
  return out;
}

}  // namespace lpg

#endif  // LPGROUPOID_PARTACT_HPP
