// Spatial partial isometries, L^p-projections, regular and covariant
// representations, inclusion-exclusion and tightness.

#ifndef LPGROUPOID_REPS_HPP
#define LPGROUPOID_REPS_HPP

#include "lpgroupoid/exactnum.hpp"
#include "lpgroupoid/galg.hpp"
#include "lpgroupoid/twist.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace lpg {

template <Scalar T>
bool nearly_equal(const Mat<T>& a, const Mat<T>& b, double tol = 1e-10) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!nearly_equal(a(i, j), b(i, j), tol)) return false;
  return true;
}

inline bool same_space(const WeightedSpace& a, const WeightedSpace& b) {
  return a.weights == b.weights && a.p == b.p;
}

/// D^(1/p) M D^(-1/p) in double precision, for norms on weighted spaces.
template <Scalar T>
Eigen::MatrixXcd conjugated_complex(const Mat<T>& m, const WeightedSpace& space) {
  Eigen::MatrixXcd out = to_complex_matrix(m);
  if (space.p.is_infinite()) return out;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if (out(i, j) != 0.0) out(i, j) *= radon_nikodym_factor<cdouble>(space.weights[i], space.weights[j], space.p);
  return out;
}

/// omega U_Phi on l^p(D, w): Phi maps D* onto D and omega is a phase on D.
template <Scalar T>
struct SpatialPartialIsometry {
  WeightedSpace space;
  PartialBijection phi;
  std::vector<T> phase;  // read on the range of phi

  std::vector<int> domain() const { return phi.domain(); }
  std::vector<int> range() const { return phi.range(); }

  friend bool operator==(const SpatialPartialIsometry& a, const SpatialPartialIsometry& b) {
    if (!same_space(a.space, b.space) || a.phi != b.phi) return false;
    for (int x : a.range())
      if (!nearly_equal(a.phase[x], b.phase[x])) return false;
    return true;
  }
};

template <Scalar T>
SpatialPartialIsometry<T> make_spi(WeightedSpace space, PartialBijection phi, std::vector<T> phase) {
  if (phi.ground() != space.size() || phase.size() != space.size())
    throw DomainError("make_spi: map and phase must live on the points of the space");
  std::vector<char> in_range(space.size(), 0);
  for (int x : phi.range()) in_range[x] = 1;
  for (std::size_t x = 0; x < phase.size(); ++x) {
    if (!in_range[x]) {
      phase[x] = T(0);
    } else if (!is_unimodular(phase[x])) {
      throw DomainError("make_spi: phase is not unimodular at point " + std::to_string(x));
    }
  }
  return {std::move(space), std::move(phi), std::move(phase)};
}

template <Scalar T>
SpatialPartialIsometry<T> spi_idempotent(const WeightedSpace& space, const std::vector<int>& subset) {
  return make_spi<T>(space, PartialBijection::identity_on(space.size(), subset), std::vector<T>(space.size(), T(1)));
}

/// (omega U_Phi xi)(x) = omega(x) (w(phi*(x)) / w(x))^(1/p) xi(phi*(x)) for x in D.
template <Scalar T>
Mat<T> spi_matrix(const SpatialPartialIsometry<T>& s) {
  const auto n = static_cast<Eigen::Index>(s.space.size());
  Mat<T> m = zero_matrix<T>(n, n);
  for (int y : s.domain()) {
    const int x = s.phi(y);
    m(x, y) = s.phase[x] * radon_nikodym_factor<T>(s.space.weights[y], s.space.weights[x], s.space.p);
  }
  return m;
}

/// s o t = omega T_Phi(upsilon) U_{Phi o Psi}.
template <Scalar T>
SpatialPartialIsometry<T> spi_compose(const SpatialPartialIsometry<T>& s, const SpatialPartialIsometry<T>& t) {
  if (!same_space(s.space, t.space)) throw DomainError("spi_compose: the operands act on different spaces");
  PartialBijection phi = compose(s.phi, t.phi);
  std::vector<T> phase(s.space.size(), T(0));
  const PartialBijection back = inverse(s.phi);
  for (int x : phi.range()) phase[x] = s.phase[x] * t.phase[back(x)];
  return {s.space, std::move(phi), std::move(phase)};
}

/// (omega U_Phi)^* = T_{Phi*}(conj omega) U_{Phi*}.
template <Scalar T>
SpatialPartialIsometry<T> spi_star(const SpatialPartialIsometry<T>& s) {
  std::vector<T> phase(s.space.size(), T(0));
  for (int y : s.domain()) phase[y] = conj(s.phase[s.phi(y)]);
  return {s.space, inverse(s.phi), std::move(phase)};
}

struct LpProjectionCheck {
  bool projection = false;    // the verdict for the exponent of the space
  bool structural = false;    // conjugated matrix is a 0/1 diagonal
  bool definitional = false;  // ||xi||^p = ||P xi||^p + ||(1-P) xi||^p on the test vectors
  bool agree = true;          // structural == definitional, required when p != 2
  std::string witness;
};

/// Structural test plus the defining identity on basis vectors and 100 random
/// vectors; for p = 2 the definitional answer is returned.
template <Scalar T>
LpProjectionCheck is_lp_projection(const Mat<T>& P, const WeightedSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  if (P.rows() != n || P.cols() != n) throw DomainError("is_lp_projection: size mismatch");
  if (!nearly_equal(Mat<T>(P * P), P, 1e-12)) throw DomainError("is_lp_projection: P is not idempotent");
  LpProjectionCheck out;
  out.structural = true;
  for (Eigen::Index i = 0; i < n && out.structural; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const bool ok = i == j ? (nearly_equal(P(i, j), T(0)) || nearly_equal(P(i, j), T(1))) : is_zero(P(i, j));
      if (!ok) {
        out.structural = false;
        break;
      }
    }
  const Eigen::MatrixXcd Pc = to_complex_matrix(P);
  const Eigen::MatrixXcd Qc = Eigen::MatrixXcd::Identity(n, n) - Pc;
  std::vector<double> w;
  for (const auto& x : space.weights) w.push_back(to_double(x));
  const bool inf = space.p.is_infinite();
  const double p = inf ? 0.0 : space.p.to_double();
  auto test = [&](const Eigen::VectorXcd& xi) {
    const double a = weighted_pnorm(xi, w, inf ? INFINITY : p);
    const double b = weighted_pnorm(Pc * xi, w, inf ? INFINITY : p);
    const double c = weighted_pnorm(Qc * xi, w, inf ? INFINITY : p);
    double lhs, rhs;
    if (inf) {
      lhs = a;
      rhs = std::max(b, c);
    } else {
      lhs = std::pow(a, p);
      rhs = std::pow(b, p) + std::pow(c, p);
    }
    if (std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, lhs)) return true;
    std::ostringstream os;
    os << "xi = (";
    for (Eigen::Index i = 0; i < xi.size(); ++i) os << (i ? ", " : "") << xi(i).real();
    os << "): " << lhs << " vs " << rhs;
    out.witness = os.str();
    return false;
  };
  out.definitional = true;
  for (Eigen::Index i = 0; i < n && out.definitional; ++i)
    out.definitional = test(Eigen::VectorXcd::Unit(n, i));
  std::mt19937_64 gen(0x1b5);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 100 && out.definitional; ++k) {
    Eigen::VectorXcd xi(n);
    for (Eigen::Index i = 0; i < n; ++i)
      xi(i) = scalar_traits<T>::complex ? cdouble(normal(gen), normal(gen)) : cdouble(normal(gen), 0.0);
    out.definitional = test(xi);
  }
  const bool hilbert = !inf && space.p == Exponent(2);
  out.agree = out.structural == out.definitional;
  out.projection = hilbert ? out.definitional : out.structural;
  return out;
}

/// M[c, c'] = sigma(c c'^-1, c') f(c c'^-1) when d(c) = d(c'); the same matrix
/// acts on l^p(arrows) for every p.
template <Scalar T>
Mat<T> regular_representation(const AlgElement<T>& f) {
  const auto& G = f.groupoid();
  const auto& s = f.cocycle();
  const int n = G.size();
  Mat<T> m = zero_matrix<T>(n, n);
  for (int c = 0; c < n; ++c)
    for (int c2 : G.arrows_from(G.d(c))) {
      const int eta = G.mul(c, G.inv(c2));
      if (!is_zero(f[eta])) m(c, c2) = s(eta, c2) * f[eta];
    }
  return m;
}

/// A twisted groupoid together with a wide bisection semigroup S, unimodular
/// sections c_U and the twisted action they induce.
template <Scalar T>
struct TwistedGroupoidModel {
  std::shared_ptr<const Cocycle<T>> sigma;
  BisectionSemigroup bisections;
  std::vector<std::vector<T>> sections;
  TwistedActionData<T> action;

  const FiniteGroupoid& groupoid() const { return sigma->groupoid(); }
  /// The section c_t as an algebra element.
  AlgElement<T> section(int t) const {
    AlgElement<T> out(sigma);
    for (int a : bisections.elements[t].arrows) out[a] = sections[t][a];
    return out;
  }
};

template <Scalar T>
std::shared_ptr<const TwistedGroupoidModel<T>> make_model(std::shared_ptr<const Cocycle<T>> sigma,
                                                          BisectionSemigroup s, std::vector<std::vector<T>> c) {
  auto data = extract_twisted_action(sigma, s, c);
  return std::make_shared<const TwistedGroupoidModel<T>>(
      TwistedGroupoidModel<T>{std::move(sigma), std::move(s), std::move(c), std::move(data)});
}

template <Scalar T>
std::shared_ptr<const TwistedGroupoidModel<T>> make_model(std::shared_ptr<const Cocycle<T>> sigma,
                                                          BisectionSemigroup s) {
  auto c = constant_sections<T>(sigma->groupoid(), s);
  return make_model(std::move(sigma), std::move(s), std::move(c));
}

/// pi(1_x) for the points x of X and v_t for t in S, acting on a weighted space.
template <Scalar T>
struct CovariantRep {
  std::shared_ptr<const TwistedGroupoidModel<T>> model;
  WeightedSpace space;
  std::vector<Mat<T>> pi;
  std::vector<Mat<T>> v;

  Mat<T> pi_of(const std::vector<T>& a) const {
    const auto n = static_cast<Eigen::Index>(space.size());
    Mat<T> out = zero_matrix<T>(n, n);
    for (std::size_t x = 0; x < pi.size(); ++x)
      if (!is_zero(a[x])) out += a[x] * pi[x];
    return out;
  }
  Mat<T> pi_indicator(const std::vector<int>& points) const {
    std::vector<T> a(pi.size(), T(0));
    for (int x : points) a[x] = T(1);
    return pi_of(a);
  }
};

/// Checks that pi is a representation of C(X) and the finite covariance relations:
/// CR1 v_t pi(a) = pi(alpha_t(a)) v_t, CR2 pi(a) v_s v_t = pi(a u(s,t)) v_st,
/// CR3 pi(a) v_e = pi(a), and normalization v_t = pi(1_{X_t}) v_t.
template <Scalar T>
TwistedActionReport validate_covariant(const CovariantRep<T>& rep) {
  const auto& data = rep.model->action;
  const auto& S = data.semigroup();
  const int m = static_cast<int>(S.size());
  const int k = data.points();
  const auto& h = data.action.h;
  AxiomCheck pi{"pi"}, cr1{"CR1"}, cr2{"CR2"}, cr3{"CR3"}, nrm{"normalized"};
  if (static_cast<int>(rep.pi.size()) != k || static_cast<int>(rep.v.size()) != m) {
    pi.fail("wrong number of matrices");
    return {{pi}};
  }
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      Mat<T> prod = rep.pi[x] * rep.pi[y];
      if (!nearly_equal(prod, x == y ? rep.pi[x] : zero_matrix<T>(prod.rows(), prod.cols())))
        pi.fail("pi(1_" + std::to_string(x) + ") pi(1_" + std::to_string(y) + ")");
    }
  for (int t = 0; t < m; ++t) {
    for (int x : h[t].domain())
      if (!nearly_equal(Mat<T>(rep.v[t] * rep.pi[x]), Mat<T>(rep.pi[h[t](x)] * rep.v[t])))
        cr1.fail("t = " + S.label(t) + ", x = " + std::to_string(x));
    if (!nearly_equal(Mat<T>(rep.pi_indicator(h[t].range()) * rep.v[t]), rep.v[t])) nrm.fail("t = " + S.label(t));
  }
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      const int st = S.mul(s, t);
      Mat<T> vv = rep.v[s] * rep.v[t];
      for (int x : h[st].range())
        if (!nearly_equal(Mat<T>(rep.pi[x] * vv), Mat<T>(data.twist(s, t, x) * rep.pi[x] * rep.v[st])))
          cr2.fail("(" + S.label(s) + ", " + S.label(t) + ") at " + std::to_string(x));
    }
  for (int e : S.idempotents())
    for (int x : h[e].range())
      if (!nearly_equal(Mat<T>(rep.pi[x] * rep.v[e]), rep.pi[x]))
        cr3.fail("e = " + S.label(e) + ", x = " + std::to_string(x));
  return {{pi, cr1, cr2, cr3, nrm}};
}

/// A representation of the twisted groupoid algebra given by the images of
/// the point masses delta_c.
template <Scalar T>
struct IntegratedRep {
  std::shared_ptr<const TwistedGroupoidModel<T>> model;
  WeightedSpace space;
  std::vector<Mat<T>> basis;

  Mat<T> operator()(const AlgElement<T>& f) const {
    const auto n = static_cast<Eigen::Index>(space.size());
    Mat<T> out = zero_matrix<T>(n, n);
    for (int a = 0; a < f.size(); ++a)
      if (!is_zero(f[a])) out += f[a] * basis[a];
    return out;
  }
};

/// delta_c(c') delta_c'' = sigma(c, c'') delta_{cc''} on composable pairs, 0 otherwise.
template <Scalar T>
void check_multiplicative(const Cocycle<T>& sigma, const std::vector<Mat<T>>& basis, const char* who) {
  const auto& G = sigma.groupoid();
  if (static_cast<int>(basis.size()) != G.size())
    throw DomainError(std::string(who) + ": one matrix per arrow is required");
  for (int a = 0; a < G.size(); ++a)
    for (int b = 0; b < G.size(); ++b) {
      Mat<T> lhs = basis[a] * basis[b];
      const bool ok = G.composable(a, b) ? nearly_equal(lhs, Mat<T>(sigma(a, b) * basis[G.mul(a, b)]))
                                         : is_zero_matrix(lhs) || nearly_equal(lhs, Mat<T>(0 * lhs));
      if (!ok)
        throw AxiomError(std::string(who) + ": not multiplicative at (" + G.label(a) + ", " + G.label(b) + ")");
    }
}

/// pi x v: a_t delta_t -> pi(a_t) v_t. On a point mass, delta_c = (1_{r(c)} / c_t(c)) delta_t
/// for any t containing c; every such t is compared.
template <Scalar T>
IntegratedRep<T> integrate(const CovariantRep<T>& rep) {
  const auto& M = *rep.model;
  const auto& G = M.groupoid();
  IntegratedRep<T> out{rep.model, rep.space, {}};
  for (int c = 0; c < G.size(); ++c) {
    std::optional<Mat<T>> image;
    for (std::size_t t = 0; t < M.bisections.elements.size(); ++t) {
      if (!M.bisections.elements[t].contains(c)) continue;
      Mat<T> candidate = (T(1) / M.sections[t][c]) * rep.pi[G.unit_index(G.r(c))] * rep.v[t];
      if (image && !nearly_equal(*image, candidate))
        throw AxiomError("integrate: images of " + G.label(c) + " differ between bisections " +
                         std::to_string(t) + " and an earlier one");
      if (!image) image = std::move(candidate);
    }
    if (!image) throw DomainError("integrate: arrow " + G.label(c) + " lies in no bisection");
    out.basis.push_back(std::move(*image));
  }
  check_multiplicative(*M.sigma, out.basis, "integrate");
  return out;
}

/// pi(1_x) = psi(delta_x), v_t = psi(c_t).
template <Scalar T>
CovariantRep<T> disintegrate(std::shared_ptr<const TwistedGroupoidModel<T>> model, WeightedSpace space,
                             const std::vector<Mat<T>>& basis) {
  check_multiplicative(*model->sigma, basis, "disintegrate");
  const auto& G = model->groupoid();
  const auto n = static_cast<Eigen::Index>(space.size());
  CovariantRep<T> rep{model, std::move(space), {}, {}};
  for (int u : G.units()) rep.pi.push_back(basis[u]);
  for (std::size_t t = 0; t < model->bisections.elements.size(); ++t) {
    Mat<T> vt = zero_matrix<T>(n, n);
    for (int a : model->bisections.elements[t].arrows) vt += model->sections[t][a] * basis[a];
    rep.v.push_back(std::move(vt));
  }
  return rep;
}

template <Scalar T>
CovariantRep<T> disintegrate(const IntegratedRep<T>& psi) {
  return disintegrate(psi.model, psi.space, psi.basis);
}

/// The regular covariant pair on l^p(arrows): pi(a) xi(c) = a(r(c)) xi(c) and
/// v_t xi(c) = sigma(e, e^-1 c) c_t(e) xi(e^-1 c) with e the arrow of U_t ending at r(c).
template <Scalar T>
CovariantRep<T> regular_covariant_rep(std::shared_ptr<const TwistedGroupoidModel<T>> model, const Exponent& p) {
  const auto& G = model->groupoid();
  const int n = G.size();
  CovariantRep<T> rep{model, WeightedSpace::counting(n, p), {}, {}};
  for (int u : G.units()) {
    Mat<T> m = zero_matrix<T>(n, n);
    for (int c : G.arrows_to(u)) m(c, c) = T(1);
    rep.pi.push_back(std::move(m));
  }
  const auto& sigma = *model->sigma;
  for (std::size_t t = 0; t < model->bisections.elements.size(); ++t) {
    Mat<T> m = zero_matrix<T>(n, n);
    for (int e : model->bisections.elements[t].arrows)
      for (int c : G.arrows_to(G.r(e))) {
        const int src = G.mul(G.inv(e), c);
        m(c, src) = sigma(e, src) * model->sections[t][e];
      }
    rep.v.push_back(std::move(m));
  }
  return rep;
}

/// P_{F0} = sum over F0 <= G <= F of (-1)^{|G \ F0|} v_{meet G}, with P_{empty} = 0.
/// Keys are bitmasks over the positions of F.
template <Scalar T>
std::map<unsigned, Mat<T>> inclusion_exclusion(const std::vector<Mat<T>>& v) {
  const std::size_t k = v.size();
  if (k == 0 || k > 16) throw DomainError("inclusion_exclusion: family size must be between 1 and 16");
  const auto n = v[0].rows();
  for (std::size_t i = 0; i < k; ++i) {
    if (!nearly_equal(Mat<T>(v[i] * v[i]), v[i])) throw DomainError("inclusion_exclusion: a member is not idempotent");
    for (std::size_t j = 0; j < i; ++j)
      if (!nearly_equal(Mat<T>(v[i] * v[j]), Mat<T>(v[j] * v[i])))
        throw DomainError("inclusion_exclusion: members do not commute");
  }
  const unsigned full = (1u << k) - 1;
  std::vector<Mat<T>> meet(full + 1);
  meet[0] = identity_matrix<T>(n);
  for (unsigned g = 1; g <= full; ++g) {
    const unsigned low = g & (~g + 1);
    meet[g] = meet[g ^ low] * v[std::countr_zero(low)];
  }
  std::map<unsigned, Mat<T>> out;
  out[0] = zero_matrix<T>(n, n);
  for (unsigned f0 = 1; f0 <= full; ++f0) {
    Mat<T> acc = zero_matrix<T>(n, n);
    const unsigned rest = full & ~f0;
    for (unsigned extra = rest;; extra = (extra - 1) & rest) {
      if (std::popcount(extra) % 2) {
        acc -= meet[f0 | extra];
      } else {
        acc += meet[f0 | extra];
      }
      if (extra == 0) break;
    }
    out[f0] = std::move(acc);
  }
  for (unsigned a = 1; a <= full; ++a)
    for (unsigned b = 1; b <= full; ++b) {
      Mat<T> prod = out[a] * out[b];
      if (!nearly_equal(prod, a == b ? out[a] : zero_matrix<T>(n, n)))
        throw AxiomError("inclusion_exclusion: the family is not orthogonal");
    }
  for (std::size_t i = 0; i < k; ++i) {
    Mat<T> sum = zero_matrix<T>(n, n);
    for (unsigned f0 = 1; f0 <= full; ++f0)
      if (f0 >> i & 1u) sum += out[f0];
    if (!nearly_equal(sum, v[i])) throw AxiomError("inclusion_exclusion: v_e is not recovered");
  }
  return out;
}

enum class Verdict { Pass, Fail, ApproxPass, ApproxFail, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::ApproxPass: return "APPROX-PASS";
    case Verdict::ApproxFail: return "APPROX-FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

enum class FieldMode { Real, Complex };

struct ContractivityResult {
  Verdict verdict = Verdict::Pass;
  double worst = 0.0;  // largest norm seen (upper end when bracketed)
  std::vector<cdouble> witness;
  std::size_t evaluated = 0;
};

/// ||sum a_i P_i||_p <= 1: over {-1, 1}^F in the real mode (vertices suffice by
/// convexity), over a 16-phase grid and 10^4 random phases in the complex mode.
template <Scalar T>
ContractivityResult jointly_contractive_check(const std::vector<Mat<T>>& P, const WeightedSpace& space,
                                              FieldMode mode, std::uint64_t seed = 7) {
  const std::size_t k = P.size();
  if (k == 0) return {};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && !is_zero_matrix(Mat<T>(P[i] * P[j])) &&
          !nearly_equal(Mat<T>(P[i] * P[j]), zero_matrix<T>(P[i].rows(), P[i].cols())))
        throw DomainError("jointly_contractive_check: the family is not orthogonal");
  std::vector<Eigen::MatrixXcd> C;
  for (const auto& m : P) C.push_back(conjugated_complex(m, space));
  const double tol = 1e-9;
  ContractivityResult out;
  bool undecided = false, failed = false;
  BracketOptions quick;
  quick.random_starts = 4;
  quick.ascent_iterations = 150;
  auto eval = [&](const std::vector<cdouble>& a) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(C[0].rows(), C[0].cols());
    for (std::size_t i = 0; i < k; ++i) m += a[i] * C[i];
    NormBracket b = opnorm_any(m, space.p, quick);
    ++out.evaluated;
    if (b.upper > out.worst) {
      out.worst = b.upper;
      out.witness = a;
    }
    if (b.lower > 1 + tol) failed = true;
    else if (b.upper > 1 + tol) undecided = true;
  };
  if (mode == FieldMode::Real) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<cdouble> a(k);
      for (std::size_t i = 0; i < k; ++i) a[i] = (mask >> i) & 1u ? -1.0 : 1.0;
      eval(a);
    }
    out.verdict = failed ? Verdict::Fail : undecided ? Verdict::Inconclusive : Verdict::Pass;
    return out;
  }
  if (k > 4) throw DomainError("jointly_contractive_check: the complex phase grid supports at most 4 members");
  // A common phase does not change the norm, so the first coefficient is 1.
  const int grid = 16;
  std::size_t cells = 1;
  for (std::size_t i = 1; i < k; ++i) cells *= grid;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::vector<cdouble> a(k, 1.0);
    std::size_t rest = cell;
    for (std::size_t i = 1; i < k; ++i) {
      a[i] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(rest % grid) / grid);
      rest /= grid;
    }
    eval(a);
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int s = 0; s < 10000; ++s) {
    std::vector<cdouble> a(k, 1.0);
    for (std::size_t i = 1; i < k; ++i) a[i] = std::polar(1.0, angle(gen));
    eval(a);
  }
  out.verdict = failed ? Verdict::ApproxFail : undecided ? Verdict::Inconclusive : Verdict::ApproxPass;
  return out;
}

struct TightnessReport {
  bool tight = false;
  std::string witness;
  bool oracle_run = false;    // exhaustive cover enumeration performed (|E| <= 8)
  bool oracle_agrees = true;
  /// prod_{f in F} (v_e - v_f) != 0 for every e and every F <= e that is not a cover.
  bool separating = false;
};

/// Finite tightness test: v_0 = 0 and prod over atoms a <= e of (v_e - v_a) = 0
/// for every nonzero e. Checks first that v is a homomorphism into contractions.
template <Scalar T>
TightnessReport is_tight_rep(const ISemigroup& S, const std::vector<Mat<T>>& v,
                             const std::optional<WeightedSpace>& space = std::nullopt) {
  const int m = static_cast<int>(S.size());
  if (static_cast<int>(v.size()) != m) throw DomainError("is_tight_rep: one matrix per element is required");
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t)
      if (!nearly_equal(Mat<T>(v[s] * v[t]), v[S.mul(s, t)]))
        throw AxiomError("is_tight_rep: not a homomorphism at (" + S.label(s) + ", " + S.label(t) + ")");
  if (space)
    for (int s = 0; s < m; ++s) {
      NormBracket b = opnorm_any(conjugated_complex(v[s], *space), space->p);
      if (b.lower > 1 + 1e-9) throw AxiomError("is_tight_rep: v_" + S.label(s) + " is not contractive");
    }
  const auto& E = S.semilattice();
  const auto& idem = S.idempotents();
  const auto n = v.empty() ? 0 : v[0].rows();
  auto ve = [&](int e) -> const Mat<T>& { return v[idem[e]]; };
  auto product_vanishes = [&](int e, const std::vector<int>& F) {
    Mat<T> acc = identity_matrix<T>(n);
    for (int f : F) acc = acc * Mat<T>(ve(e) - ve(f));
    return nearly_equal(acc, zero_matrix<T>(n, n));
  };
  TightnessReport out;
  out.tight = true;
  if (E.zero() && !nearly_equal(ve(*E.zero()), zero_matrix<T>(n, n))) {
    out.tight = false;
    out.witness = "v_0 != 0";
  }
  for (int e = 0; e < static_cast<int>(E.size()) && out.tight; ++e) {
    if (E.is_zero(e)) continue;
    if (!product_vanishes(e, E.atoms_below(e))) {
      out.tight = false;
      out.witness = "prod over atoms below " + S.label(idem[e]) + " of (v_e - v_a) != 0";
    }
  }
  if (E.size() <= 8) {
    out.oracle_run = true;
    bool oracle = !E.zero() || nearly_equal(ve(*E.zero()), zero_matrix<T>(n, n));
    bool separating = true;
    for (int e = 0; e < static_cast<int>(E.size()); ++e) {
      if (E.is_zero(e)) continue;
      const auto below = E.down_set(e);
      for (unsigned mask = 1; mask < (1u << below.size()); ++mask) {
        std::vector<int> F;
        for (std::size_t i = 0; i < below.size(); ++i)
          if (mask >> i & 1u) F.push_back(below[i]);
        const bool vanishes = product_vanishes(e, F);
        if (is_cover(E, e, F)) {
          oracle = oracle && vanishes;
        } else {
          separating = separating && !vanishes;
        }
      }
    }
    out.oracle_agrees = oracle == out.tight;
    out.separating = separating;
  }
  return out;
}

}  // namespace lpg

#endif  // LPGROUPOID_REPS_HPP
