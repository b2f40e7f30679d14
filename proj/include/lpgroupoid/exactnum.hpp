// Dense matrices, exponents, weighted l^p spaces and operator p-norms.

#ifndef LPGROUPOID_EXACTNUM_HPP
#define LPGROUPOID_EXACTNUM_HPP

#include "lpgroupoid/scalar.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace lpg {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using MatG = Mat<GaussRational>;

/// An exponent p in [1, inf], rational or infinite.
class Exponent {
 public:
  Exponent() = default;
  Exponent(int p) : value_(p) {}  // NOLINT(google-explicit-constructor)
  explicit Exponent(Rational p) : value_(std::move(p)) {}
  static Exponent infinity() {
    Exponent e;
    e.infinite_ = true;
    return e;
  }
  /// Accepts "inf", "n" or "n/d".
  static Exponent parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  const Rational& value() const { return value_; }
  double to_double() const;
  bool operator==(const Exponent& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }
  std::string str() const;

 private:
  bool infinite_ = false;
  Rational value_{1};
};

/// q with 1/p + 1/q = 1, where 1 and inf are dual to each other.
Exponent p_dual(const Exponent& p);

/// Finite point set with positive rational weights and an exponent.
struct WeightedSpace {
  std::vector<Rational> weights;
  Exponent p{1};

  WeightedSpace() = default;
  WeightedSpace(std::vector<Rational> w, Exponent exponent);
  static WeightedSpace counting(std::size_t n, Exponent exponent);
  std::size_t size() const { return weights.size(); }
};

/// (w_to / w_from)^(1/p) for a finite p; 1 when p is infinite.
/// Exact when the root is rational, else throws DomainError for exact scalars.
template <Scalar T>
T radon_nikodym_factor(const Rational& w_to, const Rational& w_from, const Exponent& p);

template <>
Rational radon_nikodym_factor<Rational>(const Rational&, const Rational&, const Exponent&);
template <>
GaussRational radon_nikodym_factor<GaussRational>(const Rational&, const Rational&,
                                                  const Exponent&);
template <>
double radon_nikodym_factor<double>(const Rational&, const Rational&, const Exponent&);
template <>
cdouble radon_nikodym_factor<cdouble>(const Rational&, const Rational&, const Exponent&);

/// D^(1/p) M D^(-1/p) with D = diag(weights); M unchanged when p = inf.
template <Scalar T>
Mat<T> weighted_conjugate(const Mat<T>& m, const WeightedSpace& space) {
  if (m.rows() != static_cast<Eigen::Index>(space.size()) || m.cols() != m.rows())
    throw DomainError("weighted_conjugate: matrix must be square on the points of the space");
  if (space.p.is_infinite()) return m;
  Mat<T> out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j)))
        out(i, j) = m(i, j) * radon_nikodym_factor<T>(space.weights[i], space.weights[j], space.p);
  return out;
}

template <Scalar T>
bool exactly_equal(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <Scalar T>
bool is_zero_matrix(const Mat<T>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

template <Scalar T>
Mat<T> zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  return Mat<T>::Constant(rows, cols, T(0));
}

template <Scalar T>
Mat<T> identity_matrix(Eigen::Index n) {
  Mat<T> m = zero_matrix<T>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = T(1);
  return m;
}

/// Entrywise conjugate of the transpose.
template <Scalar T>
Mat<T> conjugate_transpose(const Mat<T>& a) {
  Mat<T> out(a.cols(), a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

template <Scalar T>
Eigen::MatrixXcd to_complex_matrix(const Mat<T>& a) {
  Eigen::MatrixXcd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = to_cdouble(a(i, j));
  return out;
}

template <Scalar T>
Eigen::MatrixXd to_real_matrix(const Mat<T>& a) {
  static_assert(!scalar_traits<T>::complex, "to_real_matrix needs a real scalar");
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = to_double(a(i, j));
  return out;
}

/// max_j sum_i |m_ij|: the 1 -> 1 norm. Exact for Rational.
template <Scalar T>
magnitude_t<T> max_column_sum(const Mat<T>& m) {
  magnitude_t<T> best(0);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    magnitude_t<T> s(0);
    for (Eigen::Index i = 0; i < m.rows(); ++i) s += magnitude(m(i, j));
    if (s > best) best = s;
  }
  return best;
}

/// max_i sum_j |m_ij|: the inf -> inf norm. Exact for Rational.
template <Scalar T>
magnitude_t<T> max_row_sum(const Mat<T>& m) {
  magnitude_t<T> best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    magnitude_t<T> s(0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += magnitude(m(i, j));
    if (s > best) best = s;
  }
  return best;
}

/// Largest singular value via the symmetric eigenproblem of M^H M.
double spectral_norm(const Eigen::MatrixXcd& m);

/// Closed-form operator norm for p in {1, 2, inf} on unweighted coordinates.
template <Scalar T>
double opnorm_exact(const Mat<T>& m, const Exponent& p) {
  if (m.size() == 0) return 0.0;
  if (p.is_infinite()) return static_cast<double>(max_row_sum(m));
  if (p == Exponent(1)) return static_cast<double>(max_column_sum(m));
  if (p == Exponent(2)) return spectral_norm(to_complex_matrix(m));
  throw DomainError("opnorm_exact: p must be 1, 2 or inf, got " + p.str());
}

/// Certified enclosure of the p -> p operator norm.
struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool converged = false;
  int iterations = 0;

  double width() const { return upper - lower; }
};

struct BracketOptions {
  int random_starts = 16;
  int ascent_iterations = 400;
  int boyd_iterations = 20000;
  double relative_width = 1e-6;
  std::uint64_t seed = 0x5eed;
};

/// Lower bound from multistart ascent (and Boyd iteration on nonnegative
/// matrices); upper bound min(Riesz-Thorin, Schur test on |M|).
NormBracket opnorm_bracket(const Eigen::MatrixXcd& m, const Exponent& p,
                           const BracketOptions& options = {});

template <Scalar T>
NormBracket opnorm_bracket(const Mat<T>& m, const Exponent& p, const BracketOptions& options = {}) {
  return opnorm_bracket(to_complex_matrix(m), p, options);
}

/// ||x||_p on a weighted space, in double precision.
double weighted_pnorm(const Eigen::VectorXcd& x, const std::vector<double>& weights, double p);

/// Any p: closed form for {1, 2, inf}, otherwise the bracket's upper end.
/// Returns (lower, upper).
NormBracket opnorm_any(const Eigen::MatrixXcd& m, const Exponent& p,
                       const BracketOptions& options = {});

}  // namespace lpg

#endif  // LPGROUPOID_EXACTNUM_HPP
