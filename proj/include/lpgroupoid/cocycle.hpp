// Normalized 2-cocycles on finite groupoids.

#ifndef LPGROUPOID_COCYCLE_HPP
#define LPGROUPOID_COCYCLE_HPP

#include "lpgroupoid/groupoid.hpp"
#include "lpgroupoid/scalar.hpp"

#include <memory>
#include <string>
#include <vector>

namespace lpg {

template <Scalar T>
class Cocycle {
 public:
  Cocycle() = default;

  const FiniteGroupoid& groupoid() const { return *groupoid_; }
  std::shared_ptr<const FiniteGroupoid> groupoid_ptr() const { return groupoid_; }
  /// sigma(a, b) for composable a, b; 0 otherwise.
  const T& operator()(int a, int b) const { return values_[index(a, b)]; }
  bool trivial() const {
    for (const auto& v : values_)
      if (!(v == T(0) || v == T(1))) return false;
    return true;
  }

  template <Scalar U>
  friend Cocycle<U> validate_cocycle(std::shared_ptr<const FiniteGroupoid> g, std::vector<U> values);

 private:
  std::size_t index(int a, int b) const { return static_cast<std::size_t>(a) * groupoid_->size() + b; }

  std::shared_ptr<const FiniteGroupoid> groupoid_;
  std::vector<T> values_;
};

/// values[a * n + b] = sigma(a, b) on composable pairs (other entries ignored).
/// Checks |sigma| = 1, normalization and the cocycle identity
/// sigma(a,b) sigma(ab,c) = sigma(b,c) sigma(a,bc) on every composable triple.
template <Scalar T>
Cocycle<T> validate_cocycle(std::shared_ptr<const FiniteGroupoid> g, std::vector<T> values) {
  const FiniteGroupoid& G = *g;
  const int n = G.size();
  if (values.size() != static_cast<std::size_t>(n) * n) throw AxiomError("cocycle: table size mismatch");
  auto at = [&](int a, int b) -> T& { return values[static_cast<std::size_t>(a) * n + b]; };
  auto tol_equal = [](const T& x, const T& y) {
    if constexpr (scalar_traits<T>::exact) {
      return x == y;
    } else {
      return std::abs(x - y) <= 1e-12;
    }
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!G.composable(a, b)) {
        at(a, b) = T(0);
        continue;
      }
      if (!is_unimodular(at(a, b)))
        throw AxiomError("cocycle: modulus of sigma" + std::string("(") + G.label(a) + ", " + G.label(b) +
                         ") is not 1");
    }
  for (int a = 0; a < n; ++a) {
    if (!tol_equal(at(G.r(a), a), T(1)) || !tol_equal(at(a, G.d(a)), T(1)))
      throw AxiomError("cocycle: not normalized at " + G.label(a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!G.composable(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!G.composable(b, c)) continue;
        T lhs = at(a, b) * at(G.mul(a, b), c);
        T rhs = at(b, c) * at(a, G.mul(b, c));
        if (!tol_equal(lhs, rhs))
          throw AxiomError("cocycle: identity fails at (" + G.label(a) + ", " + G.label(b) + ", " + G.label(c) +
                           ")");
      }
    }
  Cocycle<T> out;
  out.groupoid_ = std::move(g);
  out.values_ = std::move(values);
  return out;
}

template <Scalar T>
Cocycle<T> trivial_cocycle(std::shared_ptr<const FiniteGroupoid> g) {
  const int n = g->size();
  std::vector<T> v(static_cast<std::size_t>(n) * n, T(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->composable(a, b)) v[static_cast<std::size_t>(a) * n + b] = T(1);
  return validate_cocycle(std::move(g), std::move(v));
}

/// sigma(a, b) = c(a) c(b) / c(ab) for a unimodular c with c = 1 on units.
template <Scalar T>
Cocycle<T> coboundary(std::shared_ptr<const FiniteGroupoid> g, const std::vector<T>& c) {
  const int n = g->size();
  std::vector<T> v(static_cast<std::size_t>(n) * n, T(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->composable(a, b)) v[static_cast<std::size_t>(a) * n + b] = c[a] * c[b] / c[g->mul(a, b)];
  return validate_cocycle(std::move(g), std::move(v));
}

/// sigma_op(a, b) = sigma(b^-1, a^-1), the twist of the opposite algebra.
template <Scalar T>
Cocycle<T> opposite_cocycle(const Cocycle<T>& s) {
  const auto& G = s.groupoid();
  const int n = G.size();
  std::vector<T> v(static_cast<std::size_t>(n) * n, T(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.composable(a, b)) v[static_cast<std::size_t>(a) * n + b] = s(G.inv(b), G.inv(a));
  return validate_cocycle(s.groupoid_ptr(), std::move(v));
}

/// Applies a scalar conversion to every value (exact to float, real to complex).
template <Scalar U, Scalar T, class F>
Cocycle<U> convert_cocycle(const Cocycle<T>& s, F&& f) {
  const auto& G = s.groupoid();
  const int n = G.size();
  std::vector<U> v(static_cast<std::size_t>(n) * n, U(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.composable(a, b)) v[static_cast<std::size_t>(a) * n + b] = f(s(a, b));
  return validate_cocycle(s.groupoid_ptr(), std::move(v));
}

}  // namespace lpg

#endif  // LPGROUPOID_COCYCLE_HPP
