#include "lpgroupoid/exactnum.hpp"

#include <gmp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <iomanip>
#include <sstream>

namespace lpg {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw DomainError("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      Rational num = parse_rational(text.substr(0, slash));
      Rational den = parse_rational(text.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + raw + "'");
      return num / den;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      auto body = text.substr(text[0] == '-' || text[0] == '+' ? 1 : 0);
      if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("malformed rational literal '" + raw + "'");
      body.erase(0, std::min(body.find_first_not_of('0'), body.size() - 1));
      Integer n(body);
      return text[0] == '-' ? Rational(-n) : Rational(n);
    }
    bool negative = text[0] == '-';
    std::string digits = text.substr(negative || text[0] == '+' ? 1 : 0);
    dot = digits.find('.');
    std::string whole = digits.substr(0, dot);
    std::string frac = digits.substr(dot + 1);
    std::string all = whole + frac;
    all.erase(0, std::min(all.find_first_not_of('0'), all.size()));
    if (all.empty()) all = "0";
    if (all.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("malformed rational literal '" + raw + "'");
    Integer num(all);
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("malformed rational literal '" + raw + "'");
  }
}

std::string to_string(const Rational& x) { return x.str(); }

std::string to_string(const GaussRational& z) {
  if (z.im == 0) return z.re.str();
  std::ostringstream os;
  os << z;
  return os.str();
}

std::string to_string(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string to_string(const cdouble& z) {
  if (z.imag() == 0.0) return to_string(z.real());
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

namespace {

std::optional<Integer> exact_root(const Integer& n, unsigned long k) {
  if (n < 0) return std::nullopt;
  mpz_t root;
  mpz_init(root);
  int is_exact = mpz_root(root, n.backend().data(), k);
  Integer out;
  mpz_set(out.backend().data(), root);
  mpz_clear(root);
  if (!is_exact) return std::nullopt;
  return out;
}

}  // namespace

std::optional<Rational> exact_power(const Rational& r, const Integer& num, const Integer& den) {
  if (r <= 0) throw DomainError("exact_power: base must be positive");
  if (den <= 0) throw DomainError("exact_power: denominator of exponent must be positive");
  auto k = den.convert_to<unsigned long>();
  auto a = exact_root(numerator(r), k);
  auto b = exact_root(denominator(r), k);
  if (!a || !b) return std::nullopt;
  auto e = static_cast<unsigned>(abs(num).convert_to<unsigned long>());
  Rational out(boost::multiprecision::pow(*a, e), boost::multiprecision::pow(*b, e));
  if (num < 0) out = Rational(1) / out;
  return out;
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "∞") return infinity();
  Exponent e(parse_rational(text));
  if (e.value_ < 1) throw DomainError("exponent must lie in [1, inf], got " + text);
  return e;
}

double Exponent::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_.convert_to<double>();
}

std::string Exponent::str() const { return infinite_ ? "inf" : value_.str(); }

Exponent p_dual(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1);
  if (p.value() < 1) throw DomainError("p_dual: p must lie in [1, inf], got " + p.str());
  if (p.value() == 1) return Exponent::infinity();
  return Exponent(Rational(p.value() / (p.value() - 1)));
}

WeightedSpace::WeightedSpace(std::vector<Rational> w, Exponent exponent)
    : weights(std::move(w)), p(std::move(exponent)) {
  for (const auto& x : weights)
    if (x <= 0) throw DomainError("WeightedSpace: weights must be strictly positive");
  if (!p.is_infinite() && p.value() < 1) throw DomainError("WeightedSpace: p must be >= 1");
}

WeightedSpace WeightedSpace::counting(std::size_t n, Exponent exponent) {
  return WeightedSpace(std::vector<Rational>(n, Rational(1)), std::move(exponent));
}

namespace {

Rational exact_rn_factor(const Rational& w_to, const Rational& w_from, const Exponent& p) {
  if (p.is_infinite()) return Rational(1);
  Rational ratio = w_to / w_from;
  // 1/p = den/num
  auto root = exact_power(ratio, denominator(p.value()), numerator(p.value()));
  if (!root)
    throw DomainError("Radon-Nikodym factor (" + ratio.str() + ")^(1/" + p.str() +
                      ") is irrational; use a float scalar mode");
  return *root;
}

double float_rn_factor(const Rational& w_to, const Rational& w_from, const Exponent& p) {
  if (p.is_infinite()) return 1.0;
  return std::pow((w_to / w_from).convert_to<double>(), 1.0 / p.to_double());
}

}  // namespace

template <>
Rational radon_nikodym_factor<Rational>(const Rational& a, const Rational& b, const Exponent& p) {
  return exact_rn_factor(a, b, p);
}
template <>
GaussRational radon_nikodym_factor<GaussRational>(const Rational& a, const Rational& b,
                                                  const Exponent& p) {
  return GaussRational(exact_rn_factor(a, b, p));
}
template <>
double radon_nikodym_factor<double>(const Rational& a, const Rational& b, const Exponent& p) {
  return float_rn_factor(a, b, p);
}
template <>
cdouble radon_nikodym_factor<cdouble>(const Rational& a, const Rational& b, const Exponent& p) {
  return {float_rn_factor(a, b, p), 0.0};
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::MatrixXcd gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw DomainError("spectral_norm: eigen-iteration did not converge");
  double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

double weighted_pnorm(const Eigen::VectorXcd& x, const std::vector<double>& weights, double p) {
  if (std::isinf(p)) return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += weights[i] * std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

namespace {

double pnorm(const Eigen::VectorXcd& x, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

double pnorm(const Eigen::VectorXd& x, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
  return std::pow(s, 1.0 / p);
}

// Duality map |y|^(p-1) sgn(y).
Eigen::VectorXcd dual_map(const Eigen::VectorXcd& y, double p) {
  Eigen::VectorXcd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    double a = std::abs(y(i));
    out(i) = a == 0.0 ? cdouble(0.0) : y(i) / a * std::pow(a, p - 1.0);
  }
  return out;
}

// One local ascent of ||Mx||_p / ||x||_p from x0; returns the best ratio seen.
double ascend(const Eigen::MatrixXcd& m, Eigen::VectorXcd x, double p, double q, int iterations) {
  double best = 0.0;
  for (int it = 0; it < iterations; ++it) {
    double nx = pnorm(x, p);
    if (nx == 0.0) break;
    x /= nx;
    Eigen::VectorXcd y = m * x;
    double ratio = pnorm(y, p);
    if (ratio <= best * (1.0 + 1e-15) && it > 2) {
      best = std::max(best, ratio);
      break;
    }
    best = std::max(best, ratio);
    if (ratio == 0.0) break;
    Eigen::VectorXcd w = m.adjoint() * dual_map(y, p);
    x = dual_map(w, q);
  }
  return best;
}

struct Component {
  std::vector<Eigen::Index> rows, cols;
};

// Connected components of the bipartite row/column support graph.
std::vector<Component> support_components(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  std::vector<Eigen::Index> parent(m + n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(i, j) > 0) parent[find(i)] = find(m + j);
  std::vector<Component> comps;
  std::vector<Eigen::Index> slot(m + n, -1);
  for (Eigen::Index j = 0; j < n; ++j) {
    bool nonzero = a.col(j).maxCoeff() > 0;
    if (!nonzero) continue;
    auto root = find(m + j);
    if (slot[root] < 0) {
      slot[root] = static_cast<Eigen::Index>(comps.size());
      comps.emplace_back();
    }
    comps[slot[root]].cols.push_back(j);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    auto root = find(i);
    if (slot[root] >= 0) comps[slot[root]].rows.push_back(i);
  }
  return comps;
}

struct BoydResult {
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  Eigen::VectorXd x;  // optimiser on the full column index set
};

// Nonlinear power iteration on a nonnegative matrix. Every iterate yields a
// lower bound ||Ax||_p/||x||_p and, for positive x, the Schur-test upper bound
// (max_j (A^T (Ax)^(p-1))_j / x_j^(p-1))^(1/p).
BoydResult boyd_nonnegative(const Eigen::MatrixXd& a, double p, double q, int cap, double rel) {
  BoydResult res;
  res.x = Eigen::VectorXd::Zero(a.cols());
  double best_x_norm_ratio = -1.0;
  for (const auto& comp : support_components(a)) {
    Eigen::MatrixXd sub(comp.rows.size(), comp.cols.size());
    for (std::size_t i = 0; i < comp.rows.size(); ++i)
      for (std::size_t j = 0; j < comp.cols.size(); ++j) sub(i, j) = a(comp.rows[i], comp.cols[j]);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(sub.cols());
    double lo = 0.0, up = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < cap; ++it) {
      x /= pnorm(x, p);
      Eigen::VectorXd y = sub * x;
      lo = std::max(lo, pnorm(y, p));
      Eigen::VectorXd z = y.array().pow(p - 1.0).matrix();
      Eigen::VectorXd w = sub.transpose() * z;
      double ratio = 0.0;
      bool positive = true;
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x(j) <= 0.0) {
          positive = false;
          break;
        }
        ratio = std::max(ratio, w(j) / std::pow(x(j), p - 1.0));
      }
      if (positive) up = std::min(up, std::pow(ratio, 1.0 / p) * (1.0 + 1e-12));
      if (up - lo <= 0.1 * rel * up) break;
      Eigen::VectorXd next = w.array().pow(q - 1.0).matrix();
      if (next.maxCoeff() <= 0.0) break;
      x = next;
    }
    res.iterations = std::max(res.iterations, it + 1);
    res.lower = std::max(res.lower, lo);
    res.upper = std::max(res.upper, up);
    if (lo > best_x_norm_ratio) {
      best_x_norm_ratio = lo;
      res.x.setZero();
      for (std::size_t j = 0; j < comp.cols.size(); ++j) res.x(comp.cols[j]) = x(j);
    }
  }
  return res;
}

}  // namespace

NormBracket opnorm_bracket(const Eigen::MatrixXcd& m, const Exponent& p,
                           const BracketOptions& options) {
  NormBracket out;
  if (m.size() == 0) {
    out.converged = true;
    return out;
  }
  if (p.is_infinite() || p == Exponent(1)) {
    double v = p.is_infinite() ? max_row_sum(Mat<cdouble>(m)) : max_column_sum(Mat<cdouble>(m));
    out.lower = out.upper = v;
    out.converged = true;
    return out;
  }
  const double pd = p.to_double();
  const double qd = p_dual(p).to_double();

  Eigen::MatrixXd a = m.cwiseAbs();
  const bool is_real = m.imag().cwiseAbs().maxCoeff() == 0.0;
  const bool nonnegative = is_real && m.real().minCoeff() >= 0.0;

  double col1 = max_column_sum(Mat<cdouble>(m));
  double rowinf = max_row_sum(Mat<cdouble>(m));
  double interpolation = std::pow(col1, 1.0 / pd) * std::pow(rowinf, 1.0 / qd);
  if (col1 == 0.0 || rowinf == 0.0) {
    out.converged = true;
    return out;
  }

  BoydResult boyd = boyd_nonnegative(a, pd, qd, options.boyd_iterations, options.relative_width);
  out.iterations = boyd.iterations;
  out.upper = std::min(interpolation * (1.0 + 1e-12), boyd.upper);

  double lower = 0.0;
  if (nonnegative) lower = boyd.lower;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXcd> starts;
  starts.emplace_back(boyd.x.cast<cdouble>());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m.cols());
    e(j) = 1.0;
    starts.push_back(e);
  }
  for (int s = 0; s < options.random_starts; ++s) {
    Eigen::VectorXcd x(m.cols());
    for (Eigen::Index j = 0; j < x.size(); ++j)
      x(j) = is_real ? cdouble(gauss(rng), 0.0) : cdouble(gauss(rng), gauss(rng));
    starts.push_back(x);
  }
  for (const auto& x0 : starts)
    lower = std::max(lower, ascend(m, x0, pd, qd, options.ascent_iterations));

  out.lower = std::min(lower, out.upper);
  out.converged = out.upper - out.lower <= options.relative_width * out.upper;
  return out;
}

NormBracket opnorm_any(const Eigen::MatrixXcd& m, const Exponent& p, const BracketOptions& options) {
  if (p.is_infinite() || p == Exponent(1) || p == Exponent(2)) {
    NormBracket b;
    b.lower = b.upper = opnorm_exact(Mat<cdouble>(m), p);
    b.converged = true;
    return b;
  }
  return opnorm_bracket(m, p, options);
}

}  // namespace lpg
