#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpgroupoid/reps.hpp"
#include "support.hpp"

#include <deque>

using namespace lpg;
using namespace testing_support;

namespace {

template <Scalar T>
std::shared_ptr<const Cocycle<T>> trivial_twist(const FiniteGroupoid& g) {
  return std::make_shared<const Cocycle<T>>(trivial_cocycle<T>(std::make_shared<const FiniteGroupoid>(g)));
}

std::shared_ptr<const Cocycle<Rational>> sign_twist() {
  auto G = std::make_shared<const FiniteGroupoid>(group_groupoid(FiniteGroup::cyclic(2)));
  std::vector<Rational> v(4, Rational(1));
  v[3] = -1;
  return std::make_shared<const Cocycle<Rational>>(validate_cocycle(G, v));
}

std::shared_ptr<const Cocycle<Rational>> random_twist(std::mt19937_64& g, const FiniteGroupoid& G) {
  std::vector<Rational> c(G.size(), Rational(1));
  for (int a = 0; a < G.size(); ++a)
    if (!G.is_unit(a) && uniform_int(g, 0, 1)) c[a] = -1;
  return std::make_shared<const Cocycle<Rational>>(coboundary(std::make_shared<const FiniteGroupoid>(G), c));
}

AlgElement<Rational> random_element(std::mt19937_64& g, const std::shared_ptr<const Cocycle<Rational>>& t,
                                    bool nonnegative = false) {
  AlgElement<Rational> f(t);
  for (int a = 0; a < f.size(); ++a)
    if (uniform_int(g, 0, 2) == 0) {
      Rational v = random_rational(g);
      f[a] = nonnegative ? Rational(abs(v)) : v;
    }
  return f;
}

SpatialPartialIsometry<Rational> random_spi(std::mt19937_64& g, const WeightedSpace& space) {
  const int n = static_cast<int>(space.size());
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  std::shuffle(pts.begin(), pts.end(), g);
  std::vector<int> img(n, -1);
  std::vector<int> targets = pts;
  std::shuffle(targets.begin(), targets.end(), g);
  const int k = uniform_int(g, 0, n);
  for (int i = 0; i < k; ++i) img[pts[i]] = targets[i];
  std::vector<Rational> phase(n, Rational(1));
  for (auto& w : phase) w = uniform_int(g, 0, 1) ? 1 : -1;
  return make_spi<Rational>(space, PartialBijection(img), phase);
}

Rational square(int k) { return Rational(k * k); }

BisectionSemigroup all_bisections(const FiniteGroupoid& g) { return bisection_semigroup(g, singleton_bisections(g)); }

}  // namespace

TEST_CASE("spatial partial isometry matrices") {
  auto space = WeightedSpace({Rational(1), Rational(4)}, Exponent(2));
  auto id = make_spi<Rational>(space, PartialBijection::identity(2), {Rational(1), Rational(1)});
  CHECK(exactly_equal(spi_matrix(id), identity_matrix<Rational>(2)));
  auto swap = make_spi<Rational>(space, PartialBijection({1, 0}), {Rational(1), Rational(1)});
  MatQ expected(2, 2);
  expected << 0, 2, Rational(1, 2), 0;
  CHECK(exactly_equal(spi_matrix(swap), expected));
  MatQ conj(2, 2);
  conj << 0, 1, 1, 0;
  CHECK(exactly_equal(weighted_conjugate(spi_matrix(swap), space), conj));
  auto empty = make_spi<Rational>(space, PartialBijection::empty(2), {Rational(1), Rational(1)});
  CHECK(is_zero_matrix(spi_matrix(empty)));
  CHECK(spi_compose(swap, swap) == id);
  CHECK_THROWS_AS(make_spi<Rational>(space, PartialBijection({1, 0}), {Rational(2), Rational(1)}), DomainError);
  auto other = WeightedSpace({Rational(1), Rational(1)}, Exponent(2));
  auto swap2 = make_spi<Rational>(other, PartialBijection({1, 0}), {Rational(1), Rational(1)});
  CHECK_THROWS_AS(spi_compose(swap, swap2), DomainError);
  auto e0 = spi_idempotent<Rational>(space, {0});
  auto e1 = spi_idempotent<Rational>(space, {1});
  CHECK(spi_compose(e0, e1).domain().empty());
}

TEST_CASE("spatial partial isometries are isometric and compose like matrices") {
  auto& g = rng();
  for (int trial = 0; trial < 60; ++trial) {
    const int n = uniform_int(g, 1, 5);
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i) w.push_back(square(uniform_int(g, 1, 4)));
    for (Exponent p : {Exponent(1), Exponent(2), Exponent::infinity()}) {
      WeightedSpace space(w, p);
      auto s = random_spi(g, space), t = random_spi(g, space);
      MatQ ms = spi_matrix(s), mt = spi_matrix(t);
      CHECK(exactly_equal(spi_matrix(spi_compose(s, t)), MatQ(ms * mt)));
      CHECK(spi_compose(spi_compose(s, spi_star(s)), s) == s);
      CHECK(spi_compose(s, spi_star(s)) == spi_idempotent<Rational>(space, s.range()));
      CHECK(spi_compose(spi_star(s), s) == spi_idempotent<Rational>(space, s.domain()));
      MatQ c = weighted_conjugate(ms, space);
      if (!s.domain().empty()) {
        CHECK(opnorm_exact(c, p) == doctest::Approx(1.0).epsilon(1e-14));
        if (p != Exponent(2)) CHECK((p.is_infinite() ? max_row_sum(c) : max_column_sum(c)) == 1);
      }
    }
    // Non-closed-form exponent on arbitrary weights: bracket contains 1.
    std::vector<Rational> rw;
    for (int i = 0; i < n; ++i) rw.push_back(Rational(uniform_int(g, 1, 9), uniform_int(g, 1, 3)));
    WeightedSpace space(rw, Exponent(Rational(3)));
    auto s = random_spi(g, space);
    if (s.domain().empty()) continue;
    auto mc = conjugated_complex(spi_matrix(make_spi<cdouble>(space, s.phi, std::vector<cdouble>(n, 1.0))), space);
    auto b = opnorm_bracket(mc, space.p);
    CHECK(b.lower <= 1.0 + 1e-9);
    CHECK(b.upper >= 1.0 - 1e-9);
  }
}

TEST_CASE("generated spatial semigroups embed into matrices") {
  auto& g = rng();
  for (int trial = 0; trial < 10; ++trial) {
    const int n = uniform_int(g, 2, 4);
    std::vector<Rational> w;
    for (int i = 0; i < n; ++i) w.push_back(square(uniform_int(g, 1, 3)));
    WeightedSpace space(w, Exponent(2));
    std::vector<SpatialPartialIsometry<Rational>> elems;
    std::deque<SpatialPartialIsometry<Rational>> queue;
    for (int k = 0; k < 2; ++k) {
      queue.push_back(random_spi(g, space));
      queue.push_back(spi_star(queue.back()));
    }
    auto known = [&](const SpatialPartialIsometry<Rational>& s) {
      for (const auto& e : elems)
        if (e == s) return true;
      return false;
    };
    while (!queue.empty() && elems.size() < 300) {
      auto s = queue.front();
      queue.pop_front();
      if (known(s)) continue;
      elems.push_back(s);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        queue.push_back(spi_compose(s, elems[i]));
        queue.push_back(spi_compose(elems[i], s));
      }
    }
    std::vector<MatQ> mats;
    for (const auto& e : elems) mats.push_back(spi_matrix(e));
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(exactly_equal(mats[i], mats[j]));
      const bool idem = spi_compose(elems[i], elems[i]) == elems[i];
      auto check = is_lp_projection(MatQ(mats[i] * mats[i]) == mats[i] ? mats[i] : MatQ(mats[i] * 0), space);
      if (idem) {
        bool diag01 = true;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            diag01 = diag01 && (a == b ? (mats[i](a, b) == 0 || mats[i](a, b) == 1) : mats[i](a, b) == 0);
        CHECK(diag01);
        CHECK(check.structural);
      }
    }
    for (std::size_t i = 0; i < elems.size(); i += 3)
      for (std::size_t j = 0; j < elems.size(); j += 2)
        CHECK(exactly_equal(spi_matrix(spi_compose(elems[i], elems[j])), MatQ(mats[i] * mats[j])));
  }
}

TEST_CASE("L^p projections") {
  auto c4 = WeightedSpace::counting(2, Exponent(4));
  MatQ diag(2, 2);
  diag << 1, 0, 0, 0;
  CHECK(is_lp_projection(diag, c4).projection);
  MatQ avg(2, 2);
  avg << Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2);
  auto r4 = is_lp_projection(avg, c4);
  CHECK_FALSE(r4.projection);
  CHECK_FALSE(r4.definitional);
  CHECK(r4.agree);
  // Witness xi = (1, 0): 2^(2 - p) = 1/4 against 1.
  CHECK(r4.witness.find("xi = (1, 0)") != std::string::npos);
  CHECK(r4.witness.find("0.25") != std::string::npos);
  auto r2 = is_lp_projection(avg, WeightedSpace::counting(2, Exponent(2)));
  CHECK(r2.projection);
  CHECK(r2.definitional);
  CHECK_FALSE(r2.structural);
  MatQ notidem(2, 2);
  notidem << 1, 1, 0, 0;
  notidem(1, 1) = 2;
  CHECK_THROWS_AS(is_lp_projection(notidem, c4), DomainError);

  // Exhaustive over diagonal indicators and random oblique idempotents.
  auto& g = rng();
  for (int n = 1; n <= 6; ++n)
    for (Exponent p : {Exponent(1), Exponent(3), Exponent::infinity()}) {
      std::vector<Rational> w;
      for (int i = 0; i < n; ++i) w.push_back(Rational(uniform_int(g, 1, 5)));
      WeightedSpace space(w, p);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        MatQ d = zero_matrix<Rational>(n, n);
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1u) d(i, i) = 1;
        auto r = is_lp_projection(d, space);
        CHECK(r.projection);
        CHECK(r.agree);
      }
      for (int k = 0; k < 10; ++k) {
        // Rank-one idempotent x y^T / (y^T x) that is not diagonal.
        Eigen::Matrix<Rational, Eigen::Dynamic, 1> x(n), y(n);
        for (int i = 0; i < n; ++i) {
          x(i) = random_rational(g);
          y(i) = random_rational(g);
        }
        Rational s = (y.transpose() * x)(0, 0);
        if (s == 0) continue;
        MatQ P = x * y.transpose() / s;
        bool diagonal = true;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j && P(i, j) != 0) diagonal = false;
        auto r = is_lp_projection(P, space);
        CHECK(r.agree);
        CHECK(r.projection == diagonal);
      }
    }
}

TEST_CASE("regular representation examples") {
  auto P = pair_groupoid(2);
  auto t = trivial_twist<Rational>(P);
  for (int u : P.units()) {
    MatQ m = regular_representation(AlgElement<Rational>::delta(t, u));
    for (int c = 0; c < P.size(); ++c)
      for (int c2 = 0; c2 < P.size(); ++c2) CHECK(m(c, c2) == (c == c2 && P.r(c) == u ? 1 : 0));
  }
  AlgElement<Rational> ones(t, std::vector<Rational>(4, Rational(1)));
  CHECK(opnorm_exact(regular_representation(ones), Exponent(1)) == 2.0);
  CHECK(max_column_sum(regular_representation(ones)) == norm(ones, NormKind::DStar));
  auto s = sign_twist();
  MatQ m = regular_representation(AlgElement<Rational>::delta(s, 1));
  CHECK(exactly_equal(MatQ(m * m), MatQ(-identity_matrix<Rational>(2))));
}

TEST_CASE("regular representation properties") {
  auto& g = rng();
  for (int trial = 0; trial < 20; ++trial) {
    auto G = random_groupoid(g, 20);
    auto t = random_twist(g, G);
    auto op = std::make_shared<const Cocycle<Rational>>(opposite_cocycle(*t));
    for (int rep = 0; rep < 5; ++rep) {
      auto f = random_element(g, t), h = random_element(g, t);
      MatQ lf = regular_representation(f), lh = regular_representation(h);
      CHECK(exactly_equal(regular_representation(convolve(f, h)), MatQ(lf * lh)));
      // Injective: f(c) sits at (c, d(c)).
      for (int c = 0; c < G.size(); ++c) CHECK(lf(c, G.d(c)) == f[c]);
      CHECK(max_column_sum(lf) == norm(f, NormKind::DStar));
      CHECK(max_row_sum(lf) == norm(f, NormKind::RStar));
      CHECK(max_column_sum(lf) == max_row_sum(regular_representation(opposite(f, op))));
      const double bound_d = to_double(norm(f, NormKind::DStar)), bound_r = to_double(norm(f, NormKind::RStar));
      for (Rational pr : {Rational(3, 2), Rational(3), Rational(4)}) {
        Exponent p(pr);
        const double pp = to_double(pr), q = pp / (pp - 1);
        auto b = opnorm_bracket(lf, p);
        CHECK(b.lower <= std::pow(bound_d, 1 / pp) * std::pow(bound_r, 1 / q) + 1e-9);
      }
      const double n2 = opnorm_exact(lf, Exponent(2));
      const double n2s = opnorm_exact(regular_representation(convolve(involute(f), f)), Exponent(2));
      CHECK(std::abs(n2s - n2 * n2) <= 1e-8 * std::max(1.0, n2 * n2));
    }
  }
}

TEST_CASE("covariant representations: regular pair, integration and disintegration") {
  auto& g = rng();
  std::vector<std::shared_ptr<const TwistedGroupoidModel<Rational>>> models;
  models.push_back(make_model(trivial_twist<Rational>(pair_groupoid(2)), all_bisections(pair_groupoid(2))));
  {
    auto s = sign_twist();
    models.push_back(make_model(s, all_bisections(s->groupoid())));
  }
  for (int k = 0; k < 6; ++k) {
    auto G = random_groupoid(g, 12);
    auto t = random_twist(g, G);
    auto S = all_bisections(G);
    auto c = constant_sections<Rational>(G, S);
    for (std::size_t i = 0; i < S.elements.size(); ++i) {
      bool units_only = true;
      for (int a : S.elements[i].arrows) units_only = units_only && G.is_unit(a);
      if (!units_only)
        for (int a : S.elements[i].arrows) c[i][a] = uniform_int(g, 0, 1) ? 1 : -1;
    }
    models.push_back(make_model(t, S, c));
  }
  for (const auto& model : models) {
    const auto& G = model->groupoid();
    auto reg = regular_covariant_rep(model, Exponent(2));
    CHECK(validate_covariant(reg).ok());
    auto psi = integrate(reg);
    for (int c = 0; c < G.size(); ++c)
      CHECK(exactly_equal(psi.basis[c], regular_representation(AlgElement<Rational>::delta(model->sigma, c))));
    std::vector<MatQ> lambda;
    for (int c = 0; c < G.size(); ++c)
      lambda.push_back(regular_representation(AlgElement<Rational>::delta(model->sigma, c)));
    auto back = disintegrate(model, reg.space, lambda);
    for (std::size_t x = 0; x < reg.pi.size(); ++x) CHECK(exactly_equal(back.pi[x], reg.pi[x]));
    for (std::size_t t = 0; t < reg.v.size(); ++t) CHECK(exactly_equal(back.v[t], reg.v[t]));
    auto again = integrate(back);
    for (int c = 0; c < G.size(); ++c) CHECK(exactly_equal(again.basis[c], lambda[c]));
    auto f = random_element(g, model->sigma);
    CHECK(exactly_equal(psi(f), regular_representation(f)));
    CHECK(is_zero_matrix(psi(AlgElement<Rational>(model->sigma))));

    std::vector<MatQ> zero(G.size(), zero_matrix<Rational>(3, 3));
    auto zrep = disintegrate(model, WeightedSpace::counting(3, Exponent(2)), zero);
    for (const auto& m : zrep.v) CHECK(is_zero_matrix(m));
    for (const auto& m : zrep.pi) CHECK(is_zero_matrix(m));

    std::vector<MatQ> broken = lambda;
    broken[0] = 2 * broken[0];
    CHECK_THROWS_AS(disintegrate(model, reg.space, broken), AxiomError);
  }
}

TEST_CASE("spatial covariant pair on the unit space") {
  for (const auto& G : {pair_groupoid(3), product_groupoid(pair_groupoid(2), pair_groupoid(2))}) {
    auto model = make_model(trivial_twist<Rational>(G), all_bisections(G));
    const int k = G.unit_count();
    CovariantRep<Rational> rep{model, WeightedSpace::counting(k, Exponent(3)), {}, {}};
    for (int x = 0; x < k; ++x) {
      MatQ m = zero_matrix<Rational>(k, k);
      m(x, x) = 1;
      rep.pi.push_back(m);
    }
    for (const auto& h : model->action.action.h) {
      MatQ m = zero_matrix<Rational>(k, k);
      for (int x : h.domain()) m(h(x), x) = 1;
      rep.v.push_back(m);
    }
    CHECK(validate_covariant(rep).ok());
    auto psi = integrate(rep);
    for (int c = 0; c < G.size(); ++c) {
      MatQ unit = zero_matrix<Rational>(k, k);
      unit(G.unit_index(G.r(c)), G.unit_index(G.d(c))) = 1;
      CHECK(exactly_equal(psi.basis[c], unit));
    }
  }
}

TEST_CASE("covariance failures are reported") {
  auto s = sign_twist();
  auto model = make_model(s, all_bisections(s->groupoid()));
  auto reg = regular_covariant_rep(model, Exponent(2));
  auto untwisted = reg;
  for (std::size_t t = 0; t < untwisted.v.size(); ++t)
    for (Eigen::Index i = 0; i < untwisted.v[t].rows(); ++i)
      for (Eigen::Index j = 0; j < untwisted.v[t].cols(); ++j) untwisted.v[t](i, j) = abs(untwisted.v[t](i, j));
  auto report = validate_covariant(untwisted);
  CHECK_FALSE(report["CR2"].passed);
  CHECK(report["CR1"].passed);
  CHECK_THROWS_AS(integrate(untwisted), AxiomError);
}

TEST_CASE("inclusion-exclusion") {
  auto diag = [](std::vector<int> ones) {
    MatQ m = zero_matrix<Rational>(4, 4);
    for (int i : ones) m(i, i) = 1;
    return m;
  };
  auto single = inclusion_exclusion<Rational>({diag({0, 1})});
  CHECK(exactly_equal(single.at(1), diag({0, 1})));
  CHECK(is_zero_matrix(single.at(0)));
  auto two = inclusion_exclusion<Rational>({diag({0, 1, 2}), diag({1, 2, 3})});
  CHECK(exactly_equal(two.at(1), diag({0})));
  CHECK(exactly_equal(two.at(2), diag({3})));
  CHECK(exactly_equal(two.at(3), diag({1, 2})));
  auto same = inclusion_exclusion<Rational>({diag({0, 2}), diag({0, 2})});
  CHECK(is_zero_matrix(same.at(1)));
  CHECK(is_zero_matrix(same.at(2)));
  MatQ avg = zero_matrix<Rational>(4, 4);
  avg(0, 0) = avg(0, 1) = avg(1, 0) = avg(1, 1) = Rational(1, 2);
  CHECK_THROWS_AS(inclusion_exclusion<Rational>({avg, diag({0})}), DomainError);

  // Random commuting families: idempotents diagonal in a common random basis.
  auto& g = rng();
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4;
    MatQ B;
    do {
      B = random_rational_matrix(g, n, n);
    } while (B.fullPivLu().rank() < n);
    MatQ Binv = B.inverse();
    std::vector<MatQ> fam;
    const int k = uniform_int(g, 1, 4);
    for (int i = 0; i < k; ++i) {
      MatQ d = zero_matrix<Rational>(n, n);
      for (int j = 0; j < n; ++j) d(j, j) = uniform_int(g, 0, 1);
      fam.push_back(B * d * Binv);
    }
    auto P = inclusion_exclusion(fam);
    CHECK(P.size() == (1u << k));
    // Oracle: in the eigenbasis, P_{F0} is the indicator of coordinates whose
    // membership pattern is exactly F0.
    for (const auto& [mask, m] : P) {
      MatQ d = Binv * m * B;
      for (int j = 0; j < n; ++j) {
        unsigned pattern = 0;
        for (int i = 0; i < k; ++i)
          if ((Binv * fam[i] * B)(j, j) == 1) pattern |= 1u << i;
        CHECK(d(j, j) == (mask != 0 && pattern == mask ? 1 : 0));
      }
    }
  }
}

TEST_CASE("joint contractivity") {
  auto diag = [](std::vector<int> ones) {
    MatQ m = zero_matrix<Rational>(3, 3);
    for (int i : ones) m(i, i) = 1;
    return m;
  };
  std::vector<MatQ> fam = {diag({0}), diag({1, 2})};
  for (Exponent p : {Exponent(1), Exponent(2), Exponent(3), Exponent::infinity()}) {
    auto space = WeightedSpace({Rational(1), Rational(2), Rational(3)}, p);
    CHECK(jointly_contractive_check(fam, space, FieldMode::Real).verdict == Verdict::Pass);
    CHECK(jointly_contractive_check(fam, space, FieldMode::Complex).verdict == Verdict::ApproxPass);
  }
  MatQ avg(2, 2);
  avg << Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2);
  MatQ comp = identity_matrix<Rational>(2) - avg;
  auto c1 = WeightedSpace::counting(2, Exponent(1));
  auto real = jointly_contractive_check<Rational>({avg, comp}, c1, FieldMode::Real);
  CHECK(real.verdict == Verdict::Pass);
  CHECK(real.worst == doctest::Approx(1.0));
  auto cx = jointly_contractive_check<Rational>({avg, comp}, c1, FieldMode::Complex);
  CHECK(cx.verdict == Verdict::ApproxFail);
  CHECK(cx.worst == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(std::abs(cx.witness[1].imag()) - 1.0) < 1e-9);
  CHECK_THROWS_AS(jointly_contractive_check<Rational>({avg, avg}, c1, FieldMode::Real), DomainError);
}

TEST_CASE("tight representations") {
  // Diamond: 0 < a, b < 1 with a b = 0.
  MeetTable meet = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
  auto S = validate_inverse_semigroup(meet, {0, 1, 2, 3});
  MatQ I = identity_matrix<Rational>(2), Z = zero_matrix<Rational>(2, 2);
  auto loose = is_tight_rep<Rational>(S, {Z, Z, Z, I}, WeightedSpace::counting(2, Exponent(3)));
  CHECK_FALSE(loose.tight);
  CHECK(loose.oracle_run);
  CHECK(loose.oracle_agrees);
  auto tight = is_tight_rep<Rational>(S, {Z, I, Z, I});
  CHECK(tight.tight);
  CHECK(tight.oracle_agrees);
  CHECK_FALSE(tight.separating);
  CHECK_THROWS_AS(is_tight_rep<Rational>(S, {Z, I, I, I}), AxiomError);

  // Diagonal representations by characters: tight exactly when every
  // character used is tight.
  auto& g = rng();
  for (int trial = 0; trial < 40; ++trial) {
    auto E = random_semilattice(g, 4, uniform_int(g, 2, 5), 8);
    const int m = static_cast<int>(E.size());
    std::vector<int> star(m);
    std::iota(star.begin(), star.end(), 0);
    auto T = validate_inverse_semigroup(E.table(), star);
    auto filters = enumerate_filters(T.semilattice());
    std::vector<Character> chosen;
    for (const auto& f : filters)
      if (uniform_int(g, 0, 1)) chosen.push_back(character_of(T.semilattice(), f));
    if (chosen.empty()) continue;
    const int n = static_cast<int>(chosen.size());
    std::vector<MatQ> v;
    for (int s = 0; s < m; ++s) {
      MatQ d = zero_matrix<Rational>(n, n);
      for (int j = 0; j < n; ++j) d(j, j) = chosen[j](T.e_index(s)) ? 1 : 0;
      v.push_back(d);
    }
    bool expected = true;
    for (const auto& chi : chosen) expected = expected && is_tight_character(T.semilattice(), chi);
    auto r = is_tight_rep(T, v);
    CHECK(r.tight == expected);
    CHECK(r.oracle_agrees);
  }
}
