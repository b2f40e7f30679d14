// The twisted convolution algebra of a finite groupoid and its norms.

#ifndef LPGROUPOID_GALG_HPP
#define LPGROUPOID_GALG_HPP

#include "lpgroupoid/cocycle.hpp"
#include "lpgroupoid/exactnum.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace lpg {

/// Finitely supported function on the arrows, relative to a fixed twist.
template <Scalar T>
class AlgElement {
 public:
  AlgElement() = default;
  explicit AlgElement(std::shared_ptr<const Cocycle<T>> twist)
      : twist_(std::move(twist)), coeff_(twist_->groupoid().size(), T(0)) {}
  AlgElement(std::shared_ptr<const Cocycle<T>> twist, std::vector<T> coeff)
      : twist_(std::move(twist)), coeff_(std::move(coeff)) {
    if (static_cast<int>(coeff_.size()) != twist_->groupoid().size())
      throw DomainError("AlgElement: coefficient count differs from arrow count");
  }

  static AlgElement delta(std::shared_ptr<const Cocycle<T>> twist, int arrow, T value = T(1)) {
    AlgElement f(std::move(twist));
    f.coeff_.at(arrow) = value;
    return f;
  }
  /// 1_X, the unit of the algebra.
  static AlgElement unit(std::shared_ptr<const Cocycle<T>> twist) {
    AlgElement f(std::move(twist));
    for (int u : f.groupoid().units()) f.coeff_[u] = T(1);
    return f;
  }

  const FiniteGroupoid& groupoid() const { return twist_->groupoid(); }
  const Cocycle<T>& cocycle() const { return *twist_; }
  const std::shared_ptr<const Cocycle<T>>& twist() const { return twist_; }
  const std::vector<T>& coefficients() const { return coeff_; }
  const T& operator[](int a) const { return coeff_[a]; }
  T& operator[](int a) { return coeff_[a]; }
  int size() const { return static_cast<int>(coeff_.size()); }

  std::vector<int> support() const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a)
      if (!is_zero(coeff_[a])) out.push_back(a);
    return out;
  }

  AlgElement& operator+=(const AlgElement& o) {
    check_same(o);
    for (int a = 0; a < size(); ++a) coeff_[a] += o.coeff_[a];
    return *this;
  }
  AlgElement& operator-=(const AlgElement& o) {
    check_same(o);
    for (int a = 0; a < size(); ++a) coeff_[a] -= o.coeff_[a];
    return *this;
  }
  AlgElement& operator*=(const T& s) {
    for (auto& c : coeff_) c *= s;
    return *this;
  }
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator*(const T& s, AlgElement a) { return a *= s; }
  friend bool operator==(const AlgElement& a, const AlgElement& b) {
    return a.twist_ == b.twist_ && a.coeff_ == b.coeff_;
  }

  void check_same(const AlgElement& o) const {
    if (twist_ != o.twist_) throw DomainError("AlgElement: operands live over different twisted groupoids");
  }

 private:
  std::shared_ptr<const Cocycle<T>> twist_;
  std::vector<T> coeff_;
};

/// (f * g)(c) = sum over r(a) = r(c) of sigma(a, a^-1 c) f(a) g(a^-1 c).
template <Scalar T>
AlgElement<T> convolve(const AlgElement<T>& f, const AlgElement<T>& g) {
  f.check_same(g);
  const auto& G = f.groupoid();
  const auto& s = f.cocycle();
  AlgElement<T> out(f.twist());
  for (int a = 0; a < G.size(); ++a) {
    if (is_zero(f[a])) continue;
    for (int b : G.arrows_to(G.d(a))) {
      if (is_zero(g[b])) continue;
      out[G.mul(a, b)] += s(a, b) * f[a] * g[b];
    }
  }
  return out;
}

/// f*(c) = conj(sigma(c, c^-1)) conj(f(c^-1)).
template <Scalar T>
AlgElement<T> involute(const AlgElement<T>& f) {
  const auto& G = f.groupoid();
  AlgElement<T> out(f.twist());
  for (int a = 0; a < G.size(); ++a) out[a] = conj(f.cocycle()(a, G.inv(a))) * conj(f[G.inv(a)]);
  return out;
}

enum class NormKind { Sup, DStar, RStar, INorm };

template <Scalar T>
magnitude_t<T> norm(const AlgElement<T>& f, NormKind which) {
  const auto& G = f.groupoid();
  using M = magnitude_t<T>;
  M best(0);
  switch (which) {
    case NormKind::Sup:
      for (int a = 0; a < G.size(); ++a) best = std::max(best, M(magnitude(f[a])));
      return best;
    case NormKind::DStar:
    case NormKind::RStar:
      for (int u : G.units()) {
        M s(0);
        for (int a : which == NormKind::DStar ? G.arrows_from(u) : G.arrows_to(u)) s += magnitude(f[a]);
        best = std::max(best, s);
      }
      return best;
    case NormKind::INorm:
      return std::max(norm(f, NormKind::DStar), norm(f, NormKind::RStar));
  }
  return best;
}

/// f-check(c) = f(c^-1), an element of the algebra with the opposite twist.
template <Scalar T>
AlgElement<T> opposite(const AlgElement<T>& f, std::shared_ptr<const Cocycle<T>> opposite_twist) {
  if (&opposite_twist->groupoid() != &f.groupoid())
    throw DomainError("opposite: twist lives on a different groupoid");
  AlgElement<T> out(std::move(opposite_twist));
  for (int a = 0; a < f.size(); ++a) out[a] = f[f.groupoid().inv(a)];
  return out;
}

template <Scalar T>
AlgElement<T> opposite(const AlgElement<T>& f) {
  return opposite(f, std::make_shared<const Cocycle<T>>(opposite_cocycle(f.cocycle())));
}

/// Optimal decomposition f = sum_U f_U with supp f_U in U, minimizing sum_U ||f_U||_inf.
struct ProjectiveNorm {
  Rational value{0};
  struct Piece {
    int bisection = -1;  // index into the family
    std::vector<std::pair<int, Rational>> entries;
    Rational sup{0};
  };
  std::vector<Piece> pieces;
};

class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

ProjectiveNorm norm_projective(const AlgElement<Rational>& f, const std::vector<Bisection>& family);

template <Scalar T>
ProjectiveNorm norm_projective(const AlgElement<T>&, const std::vector<Bisection>&) {
  throw UnsupportedError("norm_projective: only the real exact mode is supported");
}

template <Scalar T>
struct NormReport {
  magnitude_t<T> sup, dstar, rstar, inorm;
  std::optional<ProjectiveNorm> projective;
};

template <Scalar T>
NormReport<T> norm_report(const AlgElement<T>& f, const std::vector<Bisection>* family = nullptr) {
  NormReport<T> r{norm(f, NormKind::Sup), norm(f, NormKind::DStar), norm(f, NormKind::RStar),
                  norm(f, NormKind::INorm), std::nullopt};
  if (family) r.projective = norm_projective(f, *family);
  return r;
}

}  // namespace lpg

#endif  // LPGROUPOID_GALG_HPP
