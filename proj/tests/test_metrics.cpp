#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adelab/metrics.hpp"

using namespace adelab;

namespace {

Eigen::VectorXcd vec2(std::complex<double> a, std::complex<double> b) {
  Eigen::VectorXcd x(2);
  x << a, b;
  return x;
}

}  // namespace

TEST_CASE("canonical local norm of a coordinate section") {
  auto m = MetricFamily::canonical(1);
  auto s = SectionSpec::coordinate(1, 0);
  CHECK(archimedean_local_norm(m, s, vec2(1, 2)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("fubini-study local norm at the balanced point") {
  auto m = MetricFamily::fubini_study(1);
  auto s = SectionSpec::coordinate(1, 0);
  CHECK(archimedean_local_norm(m, s, vec2(1, 1)) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("perturbed local norm rescales by exp(-t f)") {
  auto f = ElementaryFunction::constant(Rat(1));
  auto m = MetricFamily::perturbed(MetricFamily::canonical(1), Place::rational_archimedean(), f,
                                   Rat(1, 2));
  auto s = SectionSpec::coordinate(1, 0);
  CHECK(archimedean_local_norm(m, s, vec2(1, 2)) ==
        doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("local norm vanishing on the divisor raises") {
  auto m = MetricFamily::canonical(1);
  auto s = SectionSpec::coordinate(1, 0);
  CHECK_THROWS_AS(archimedean_local_norm(m, s, vec2(0, 1)), DivisorMembershipError);
}

TEST_CASE("local norms are scale invariant") {
  SplitMix64 rng(31);
  auto s = SectionSpec::monomial(2, {1, 1, 1});
  for (auto kind : {MetricFamily::canonical(2), MetricFamily::fubini_study(2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXcd x(3);
      for (int i = 0; i < 3; ++i) {
        x[i] = std::complex<double>(1.0 + rng.below(5), 1.0 + rng.below(5));
      }
      std::complex<double> lambda(0.25 + rng.below(7), 0.5 + rng.below(3));
      double a = archimedean_local_norm(kind, s, x);
      double b = archimedean_local_norm(kind, s, (x * lambda).eval());
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
  }
}

TEST_CASE("norms multiply over monomial section products") {
  auto m = MetricFamily::fubini_study(2);
  auto s1 = SectionSpec::monomial(2, {1, 1, 0});
  auto s2 = SectionSpec::monomial(2, {0, 1, 1});
  auto s12 = SectionSpec::monomial(2, {1, 2, 1});
  Eigen::VectorXcd x(3);
  x << std::complex<double>(1, 1), std::complex<double>(2, -1), std::complex<double>(0.5, 0.25);
  CHECK(archimedean_local_norm(m, s12, x) ==
        doctest::Approx(archimedean_local_norm(m, s1, x) * archimedean_local_norm(m, s2, x))
            .epsilon(1e-12));
}

TEST_CASE("perturbations compose additively in t") {
  auto f = ElementaryFunction::re_ratio(0, 1);
  auto base = MetricFamily::fubini_study(1);
  auto v = Place::rational_archimedean();
  auto m1 = MetricFamily::perturbed(MetricFamily::perturbed(base, v, f, Rat(1, 3)), v, f,
                                    Rat(1, 6));
  auto m2 = MetricFamily::perturbed(base, v, f, Rat(1, 2));
  auto s = SectionSpec::coordinate(1, 1);
  SplitMix64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXcd x = vec2({1.0 + rng.below(3), 0.5}, {2.0, -1.0 + rng.below(2)});
    CHECK(archimedean_local_norm(m1, s, x) ==
          doctest::Approx(archimedean_local_norm(m2, s, x)).epsilon(1e-12));
  }
}

TEST_CASE("metric distance basics") {
  auto can = MetricFamily::canonical(1);
  auto v = Place::rational_archimedean();
  auto d0 = metric_distance(can, can, v);
  CHECK(d0.value == 0.0);

  auto f = ElementaryFunction::constant(Rat(1));
  auto pert = MetricFamily::perturbed(can, v, f, Rat(1, 2));
  auto d1 = metric_distance(pert, can, v);
  CHECK(d1.analytic);
  CHECK(d1.value == doctest::Approx(0.5).epsilon(1e-14));

  auto fs = MetricFamily::fubini_study(1);
  auto d2 = metric_distance(fs, can, v);
  CHECK(d2.analytic);
  CHECK(d2.value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
  // grid estimate from below agrees with the closed form
  SplitMix64 rng(4);
  double best = 0.0;
  for (int i = 0; i < 20000; ++i) {
    double t = static_cast<double>(rng.below(1000000)) / 1e6 * M_PI / 2;
    Eigen::VectorXcd x = vec2(std::cos(t), std::sin(t));
    best = std::max(best, std::fabs(std::log(x.norm()) -
                                    std::log(std::max(std::abs(x[0]), std::abs(x[1])))));
  }
  CHECK(best == doctest::Approx(d2.value).epsilon(1e-4));
}

TEST_CASE("distance at a finite place is zero") {
  auto fs = MetricFamily::fubini_study(1);
  auto can = MetricFamily::canonical(1);
  auto d = metric_distance(fs, can, Place::rational_prime(Int(5)));
  CHECK(d.value == 0.0);
  CHECK(d.analytic);
}

TEST_CASE("finite local valuation over Q") {
  auto s = SectionSpec::coordinate(1, 0);
  auto p = ProjectivePoint::rational({2, 3});
  CHECK(finite_local_valuation(Place::rational_prime(Int(2)), s, p) == 1);
  CHECK(finite_local_valuation(Place::rational_prime(Int(3)), s, p) == 0);
  auto q = ProjectivePoint::rational({0, 1});
  CHECK_THROWS_AS(finite_local_valuation(Place::rational_prime(Int(2)), s, q),
                  DivisorMembershipError);
}

TEST_CASE("finite local valuation over F_q(t)") {
  auto ctx = FqContext::get(2, 1);
  auto p = ProjectivePoint::function_field(
      2, 1, {FqPoly::from_ints(ctx, {1}), FqPoly::from_ints(ctx, {0, 1})});
  auto s1 = SectionSpec::coordinate(1, 1);
  auto vt = Place::function_field_finite(FqPoly::from_ints(ctx, {0, 1}));
  CHECK(finite_local_valuation(vt, s1, p) == 1);
  auto vinf = Place::function_field_infinity(ctx);
  // ||x_1(p)||_inf = q^(deg t - max deg) = q^0 here: ord -1 minus min(-1) = 0
  CHECK(finite_local_valuation(vinf, s1, p) == 0);
  auto s0 = SectionSpec::coordinate(1, 0);
  CHECK(finite_local_valuation(vinf, s0, p) == 1);
}

TEST_CASE("elementary function values and invariance") {
  auto f = ElementaryFunction::parse("logratio:(1,1):(1,2)");
  Eigen::VectorXcd x = vec2(1, 1);
  CHECK(f.eval(x) == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-14));
  SplitMix64 rng(15);
  for (int i = 0; i < 30; ++i) {
    std::complex<double> lambda(1.0 + rng.below(4), 0.5 + rng.below(3));
    CHECK(f.eval((x * lambda).eval()) == doctest::Approx(f.eval(x)).epsilon(1e-12));
  }
  auto b = f.bounds();
  CHECK(b.exact);
  CHECK(b.lo == doctest::Approx(std::log(0.5)));
  CHECK(b.hi == doctest::Approx(0.0));

  auto g = ElementaryFunction::parse("re:0,1");
  CHECK(g.eval(vec2(1, 1)) == doctest::Approx(0.5));
  CHECK(g.bounds().lo == doctest::Approx(-0.5));
  CHECK(g.bounds().hi == doctest::Approx(0.5));

  auto h = ElementaryFunction::parse("add(scale(2;re:0,1);const:1/4)");
  CHECK(h.eval(vec2(1, 1)) == doctest::Approx(1.25));

  CHECK_THROWS_AS(ElementaryFunction::parse("bogus"), ConfigError);
}

TEST_CASE("section grammar") {
  auto s = SectionSpec::parse("mono:1,0,2", 2);
  CHECK(s.degree() == 3);
  CHECK(s.is_monomial());
  auto lin = SectionSpec::parse("lin:2:(1,1,1,0);(-1,0,1,1)", 2);
  CHECK(lin.degree() == 2);
  CHECK(lin.terms().size() == 2);
  CHECK_THROWS_AS(SectionSpec::parse("lin:2:(1,1,0,0)", 2), ConfigError);
  CHECK_THROWS_AS(SectionSpec::parse("mono:0,0,0", 2), DomainError);
}
