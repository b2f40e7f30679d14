// Scalar types shared by every module.
//
// Exact work happens over Rational (GMP backed) and GaussRational (pairs of
// rationals, the exact complex mode). Float work uses double and
// std::complex<double>. Every algorithm in the library is written against the
// free functions in this header so that the same code runs in all four modes.

#ifndef LPGROUPOID_SCALAR_HPP
#define LPGROUPOID_SCALAR_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace lpg {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using cdouble = std::complex<double>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact complex number a + bi with rational parts.
struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(const Rational& r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n == 0) throw DomainError("GaussRational: division by zero");
    GaussRational c{o.re / n, -o.im / n};
    return *this *= c;
  }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    return os << z.re << (z.im < 0 ? "-" : "+") << abs(z.im) << "i";
  }
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool complex = false;
  using magnitude = Rational;  // |x| stays exact
};
template <>
struct scalar_traits<GaussRational> {
  static constexpr bool exact = true;
  static constexpr bool complex = true;
  using magnitude = double;  // |z| is irrational in general
};
template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr bool complex = false;
  using magnitude = double;
};
template <>
struct scalar_traits<cdouble> {
  static constexpr bool exact = false;
  static constexpr bool complex = true;
  using magnitude = double;
};

template <class T>
concept Scalar = requires { scalar_traits<T>::exact; };

template <class T>
concept ExactScalar = Scalar<T> && scalar_traits<T>::exact;

template <class T>
using magnitude_t = typename scalar_traits<T>::magnitude;

inline Rational conj(const Rational& x) { return x; }
inline GaussRational conj(const GaussRational& z) { return {z.re, -z.im}; }
inline double conj(double x) { return x; }
inline cdouble conj(const cdouble& z) { return std::conj(z); }

inline Rational magnitude(const Rational& x) { return abs(x); }
inline double magnitude(const GaussRational& z) {
  return std::hypot(z.re.convert_to<double>(), z.im.convert_to<double>());
}
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cdouble& z) { return std::abs(z); }

/// |x|^2, exact for the exact modes.
inline Rational abs2(const Rational& x) { return x * x; }
inline Rational abs2(const GaussRational& z) { return z.re * z.re + z.im * z.im; }
inline double abs2(double x) { return x * x; }
inline double abs2(const cdouble& z) { return std::norm(z); }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline cdouble to_cdouble(const Rational& x) { return {x.convert_to<double>(), 0.0}; }
inline cdouble to_cdouble(const GaussRational& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}
inline cdouble to_cdouble(double x) { return {x, 0.0}; }
inline cdouble to_cdouble(const cdouble& z) { return z; }

template <Scalar T>
bool is_zero(const T& x) {
  if constexpr (scalar_traits<T>::exact) {
    return x == T(0);
  } else {
    return std::abs(x) == 0.0;
  }
}

/// |x| = 1, exactly in exact modes and within 1e-12 otherwise.
template <Scalar T>
bool is_unimodular(const T& x) {
  if constexpr (scalar_traits<T>::exact) {
    return abs2(x) == 1;
  } else {
    return std::abs(abs2(x) - 1.0) <= 1e-12;
  }
}

template <Scalar T>
bool nearly_equal(const T& x, const T& y, double tol = 1e-12) {
  if constexpr (scalar_traits<T>::exact) {
    return x == y;
  } else {
    return std::abs(x - y) <= tol;
  }
}

/// Multiplies by a rational factor; used for Radon-Nikodym weights.
template <Scalar T>
T scale(const T& x, const Rational& r) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x * r;
  } else if constexpr (std::is_same_v<T, GaussRational>) {
    return {x.re * r, x.im * r};
  } else {
    return x * r.convert_to<double>();
  }
}

/// Converts a rational into any scalar mode.
template <Scalar T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, GaussRational>) {
    return T(r);
  } else {
    return T(r.convert_to<double>());
  }
}

/// Parses "n", "n/d", "-n/d" or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);
std::string to_string(const GaussRational& z);
std::string to_string(double x);
std::string to_string(const cdouble& z);

/// Exact r^(num/den) when it is rational, nullopt otherwise. r must be positive.
std::optional<Rational> exact_power(const Rational& r, const Integer& num, const Integer& den);

}  // namespace lpg

namespace Eigen {
template <>
struct NumTraits<lpg::GaussRational> : GenericNumTraits<lpg::GaussRational> {
  using Real = lpg::GaussRational;
  using NonInteger = lpg::GaussRational;
  using Literal = lpg::GaussRational;
  using Nested = lpg::GaussRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif  // LPGROUPOID_SCALAR_HPP
