#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adelab/adelic.hpp"
#include "adelab/heights.hpp"

using namespace adelab;

namespace {

// Independent oracle: canonical height of a rational point by enumerating
// every place in the support of the coordinates.
double oracle_rational_canonical(const std::vector<long>& coords) {
  std::set<long> primes;
  double maxabs = 0.0;
  for (long c : coords) {
    maxabs = std::max(maxabs, std::fabs(static_cast<double>(c)));
    if (c != 0) {
      for (const auto& [p, e] : factor_integer(Int(c))) {
        primes.insert(p.get_si());
      }
    }
  }
  double h = std::log(maxabs);
  for (long p : primes) {
    long minord = std::numeric_limits<long>::max();
    for (long c : coords) {
      if (c == 0) continue;  // infinite valuation never realizes the min here
      long o = 0;
      long v = std::labs(c);
      while (v % p == 0) {
        v /= p;
        ++o;
      }
      minord = std::min(minord, o);
    }
    h -= static_cast<double>(minord) * std::log(static_cast<double>(p));
  }
  return h;
}

// Independent oracle over F_q(t): enumerate the places in the support and
// sum deg(v) * (-min_i ord_v) plus the infinity contribution.
long oracle_ff_canonical_multiple(const std::vector<FqPoly>& coords) {
  // collect irreducible factors of every coordinate
  std::map<std::string, std::pair<FqPoly, long>> min_ord;  // key -> (pi, min ord)
  for (const auto& c : coords) {
    if (c.is_zero()) continue;
    for (const auto& [pi, e] : fq_poly_factor(c)) {
      auto key = pi.hash_key();
      if (!min_ord.count(key)) min_ord[key] = {pi, std::numeric_limits<long>::max()};
    }
  }
  for (auto& [key, entry] : min_ord) {
    for (const auto& c : coords) {
      if (c.is_zero()) continue;
      long o = 0;
      FqPoly tmp = c;
      while (true) {
        FqPoly q, r;
        fq_poly_divmod(tmp, entry.first, q, r);
        if (!r.is_zero()) break;
        tmp = q;
        ++o;
      }
      entry.second = std::min(entry.second, o);
    }
  }
  long h = 0;
  for (const auto& [key, entry] : min_ord) {
    h -= entry.first.degree() * entry.second;
  }
  // infinity: ord = -deg, weight 1
  long min_ord_inf = std::numeric_limits<long>::max();
  for (const auto& c : coords) {
    if (c.is_zero()) continue;
    min_ord_inf = std::min(min_ord_inf, static_cast<long>(-c.degree()));
  }
  h -= min_ord_inf;
  return h;  // height = h * log q
}

GaloisOrbit torsion_orbit(long n) {
  auto ctx = CyclotomicContext::get(n);
  return galois_orbit(ProjectivePoint::cyclotomic(
      {CyclotomicElement::one(ctx), CyclotomicElement::root_of_unity(ctx, 1)}));
}

constexpr double kVeroneseFs = 1.5 + M_PI / 2.0;

}  // namespace

TEST_CASE("canonical height of torsion points vanishes") {
  auto m = MetricFamily::canonical(1);
  for (long n : {1L, 2L, 3L, 5L, 8L, 12L, 49L, 100L}) {
    auto h = height_point(m, torsion_orbit(n));
    CHECK(h.finite.empty());
    CHECK(std::fabs(h.total) < 1e-12);
  }
}

TEST_CASE("canonical height of (1:2) is log 2") {
  auto m = MetricFamily::canonical(1);
  auto h = height_point(m, galois_orbit(ProjectivePoint::rational({1, 2})));
  CHECK(h.total == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(h.total == doctest::Approx(oracle_rational_canonical({1, 2})).epsilon(1e-14));
}

TEST_CASE("rational canonical heights match the place-enumeration oracle") {
  auto m = MetricFamily::canonical(2);
  SplitMix64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long> c = {static_cast<long>(rng.below(500)) + 1,
                           static_cast<long>(rng.below(500)) + 1,
                           static_cast<long>(rng.below(500)) + 1};
    std::vector<Int> ci(c.begin(), c.end());
    auto h = height_point(m, galois_orbit(ProjectivePoint::rational(std::move(ci))));
    CHECK(h.total == doctest::Approx(oracle_rational_canonical(c)).epsilon(1e-12));
  }
}

TEST_CASE("fubini-study height of (1:1)") {
  auto m = MetricFamily::fubini_study(1);
  auto h = height_point(m, galois_orbit(ProjectivePoint::rational({1, 1})));
  CHECK(h.total == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("fubini-study height of torsion points is (1/2) log 2") {
  auto m = MetricFamily::fubini_study(1);
  for (long n : {4L, 5L, 7L, 9L}) {
    auto h = height_point(m, torsion_orbit(n));
    CHECK(h.total == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("function-field canonical height (1 : t^2 : t^3+1) over F_2") {
  auto ctx = FqContext::get(2, 1);
  std::vector<FqPoly> coords = {FqPoly::from_ints(ctx, {1}), FqPoly::from_ints(ctx, {0, 0, 1}),
                                FqPoly::from_ints(ctx, {1, 0, 0, 1})};
  auto p = ProjectivePoint::function_field(2, 1, coords);
  auto h = height_point(MetricFamily::canonical(2), galois_orbit(p));
  CHECK(h.archimedean == 0.0);
  REQUIRE(h.finite.size() == 1);
  CHECK((h.finite[0].coeff == 3));
  CHECK((h.finite[0].base == 2));
  CHECK(h.total == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(oracle_ff_canonical_multiple(coords) == 3);
}

TEST_CASE("random function-field heights match the oracle exactly") {
  auto ctx = FqContext::get(2, 1);
  SplitMix64 rng(77);
  int done = 0;
  while (done < 200) {
    std::vector<FqPoly> coords;
    for (int i = 0; i < 3; ++i) {
      std::vector<long> c(1 + rng.below(6));
      for (auto& v : c) v = static_cast<long>(rng.below(2));
      c.push_back(1);
      coords.push_back(FqPoly::from_ints(ctx, c));
    }
    auto p = ProjectivePoint::function_field(2, 1, coords);
    auto h = height_point(MetricFamily::canonical(2), galois_orbit(p));
    long maxdeg = 0;
    for (const auto& c : p.ff_coords()) maxdeg = std::max(maxdeg, static_cast<long>(c.degree()));
    // oracle runs on the normalized representative
    CHECK(oracle_ff_canonical_multiple(p.ff_coords()) == maxdeg);
    CHECK(h.total == doctest::Approx(maxdeg * std::log(2.0)).epsilon(1e-14));
    ++done;
  }
}

TEST_CASE("perturbing a function-field height is rejected") {
  auto ctx = FqContext::get(2, 1);
  auto p = ProjectivePoint::function_field(2, 1,
                                           {FqPoly::from_ints(ctx, {1}), FqPoly::x(ctx)});
  auto m = MetricFamily::perturbed(MetricFamily::canonical(1), Place::rational_archimedean(),
                                   ElementaryFunction::constant(Rat(1)), Rat(1, 2));
  CHECK_THROWS_AS(height_point(m, galois_orbit(p)), DomainError);
}

TEST_CASE("fubini-study height of projective space") {
  CHECK((fs_height_projective_space_exact(3) == Rat(13, 6)));
  CHECK((fs_normalized_height_projective_space_exact(3) == Rat(13, 24)));
  CHECK((fs_height_projective_space_exact(0) == 0));
  CHECK((fs_height_projective_space_exact(1) == Rat(1, 2)));
}

TEST_CASE("canonical curve height is exactly zero") {
  auto c = make_torsion_translate({0, 1, 2, 3}, 8);
  auto h = curve_height(MetricFamily::canonical(3), c);
  CHECK(h.exact_zero());
  CHECK(h.total == 0.0);
}

TEST_CASE("fubini-study height of the projective line as a degree-1 curve") {
  // closed form: h = 1/2, matching the ambient space value for n = 1
  auto c = make_torsion_translate({0, 1}, 1);
  auto h = curve_height(MetricFamily::fubini_study(1), c);
  CHECK(h.total == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("fubini-study height of translated Veronese curves") {
  for (long n : {1L, 4L, 8L}) {
    auto c = make_torsion_translate({0, 1, 2, 3}, n);
    auto h = curve_height(MetricFamily::fubini_study(3), c);
    CHECK(std::fabs(h.total - kVeroneseFs) < 1e-6);
    double normalized = h.total / 6.0;  // (dim+1) * deg = 2 * 3
    CHECK(std::fabs(normalized - (0.25 + M_PI / 12.0)) < 2e-7);
  }
}

TEST_CASE("quadrature non-convergence raises with both estimates") {
  auto c = make_torsion_translate({0, 1, 2, 3}, 1);
  QuadratureConfig quad;
  quad.radial_order = 2;
  quad.radial_panels = 1;
  quad.tolerance = 1e-14;
  CHECK_THROWS_AS(curve_height(MetricFamily::fubini_study(3), c, quad), NumericError);
}

TEST_CASE("boundary cycle of coordinate sections") {
  auto c = make_torsion_translate({0, 1, 2, 3}, 4);
  auto b3 = curve_section_boundary(c, SectionSpec::coordinate(3, 3));
  // x_3 pulls back to t^3: all mass at t=0
  REQUIRE(b3.points.size() == 1);
  CHECK((b3.points[0].first == 3));
  auto b0 = curve_section_boundary(c, SectionSpec::coordinate(3, 0));
  REQUIRE(b0.points.size() == 1);
  CHECK((b0.points[0].first == 3));
  auto b1 = curve_section_boundary(c, SectionSpec::coordinate(3, 1));
  CHECK((b1.degree() == 3));
  CHECK(b1.points.size() == 2);
}

TEST_CASE("boundary cycle of a binomial section has torsion middle roots") {
  auto c = make_torsion_translate({0, 1, 2, 3}, 4, {1, 1, 1});
  // x_0 x_3 - x_1 x_2 pulls back to (z - z^2) t^3 + ... weights 3 and 3: the
  // coefficients differ, so the section is proper with boundary at 0, oo
  SectionSpec::Term a, b;
  auto c1ctx = CyclotomicContext::get(1);
  a.coeff = CyclotomicElement::one(c1ctx);
  a.exponents = {1, 0, 0, 1};
  b.coeff = -CyclotomicElement::one(c1ctx);
  b.exponents = {0, 1, 1, 0};
  auto s = SectionSpec::combination(3, {a, b});
  auto bc = curve_section_boundary(c, s);
  CHECK((bc.degree() == s.degree() * c.degree()));
  // x_0^2 - x_1 x_2 pulls back to t^0 - z^2 t^3: three middle torsion roots
  SectionSpec::Term a2, b2;
  a2.coeff = CyclotomicElement::one(c1ctx);
  a2.exponents = {2, 0, 0, 0};
  b2.coeff = -CyclotomicElement::one(c1ctx);
  b2.exponents = {0, 1, 1, 0};
  auto s2 = SectionSpec::combination(3, {a2, b2});
  auto bc2 = curve_section_boundary(c, s2);
  CHECK((bc2.degree() == s2.degree() * c.degree()));
  int middle = 0;
  for (const auto& [mult, pt] : bc2.points) {
    if (pt.field() == CoordField::Cyclotomic) {
      ++middle;
      auto h = height_point(MetricFamily::canonical(3), galois_orbit(pt));
      CHECK(std::fabs(h.total) < 1e-12);
    }
  }
  CHECK(middle == 3);
}

TEST_CASE("correcting integrals") {
  auto can = MetricFamily::canonical(1);
  auto s0 = SectionSpec::coordinate(1, 0);
  auto s1 = SectionSpec::coordinate(1, 1);
  CHECK(std::fabs(correcting_integral(can, torsion_orbit(5), s0)) < 1e-12);
  auto two = galois_orbit(ProjectivePoint::rational({1, 2}));
  CHECK(correcting_integral(can, two, s1) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
  // improper pairing
  auto zero_pt = galois_orbit(ProjectivePoint::rational({0, 1}));
  CHECK_THROWS_AS(correcting_integral(can, zero_pt, s0), DivisorMembershipError);

  auto c = make_torsion_translate({0, 1, 2, 3}, 4);
  auto fs = MetricFamily::fubini_study(3);
  double i3 = correcting_integral(fs, c, SectionSpec::coordinate(3, 3));
  CHECK(std::fabs(i3 - kVeroneseFs) < 1e-6);
}

TEST_CASE("section independence of point correcting integrals") {
  auto fs = MetricFamily::fubini_study(1);
  auto orb = galois_orbit(ProjectivePoint::rational({2, 3}));
  auto v1 = correcting_integral(fs, orb, SectionSpec::coordinate(1, 0));
  auto v2 = correcting_integral(fs, orb, SectionSpec::coordinate(1, 1));
  auto v3 = correcting_integral(fs, orb, SectionSpec::monomial(1, {1, 1}));
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-13));
  CHECK(v1 == doctest::Approx(v3).epsilon(1e-13));
}

TEST_CASE("dictionary lower constants") {
  auto coords1 = SectionDictionary::coordinates(1);
  CHECK(dictionary_lower_constant(MetricFamily::canonical(1), coords1).value ==
        doctest::Approx(0.0));
  CHECK(dictionary_lower_constant(MetricFamily::fubini_study(1), coords1).value ==
        doctest::Approx(0.0));
  auto f = ElementaryFunction::parse("logratio:(1,1):(1,2)");
  auto b = f.bounds();
  auto pert = MetricFamily::perturbed(MetricFamily::canonical(1), Place::rational_archimedean(),
                                      f, Rat(1, 4));
  auto c = dictionary_lower_constant(pert, coords1);
  CHECK(c.value == doctest::Approx(0.25 * b.lo).epsilon(1e-12));
}

TEST_CASE("lower constant bounds every dictionary correcting integral") {
  auto fs = MetricFamily::fubini_study(3);
  auto dict = SectionDictionary::coordinates(3);
  double c = dictionary_lower_constant(fs, dict).value;
  auto curve = make_torsion_translate({0, 1, 2, 3}, 4);
  for (const auto& s : dict.sections()) {
    double i = correcting_integral(fs, curve, s);
    CHECK(i >= c * curve.degree() - 1e-9);
  }
  auto orb = galois_orbit(ProjectivePoint::rational({3, 7}));
  for (const auto& s : dict.sections()) {
    (void)s;
  }
  auto dict1 = SectionDictionary::coordinates(1);
  double c1 = dictionary_lower_constant(fs, dict1).value;
  for (const auto& s : dict1.sections()) {
    double i = correcting_integral(MetricFamily::fubini_study(1), orb, s);
    CHECK(i >= c1 * 1.0 - 1e-9);
  }
}

TEST_CASE("smallness functional") {
  auto can = MetricFamily::canonical(1);
  auto dict = SectionDictionary::coordinates(1);
  auto z = EffectiveCycle::of_orbit(torsion_orbit(7));
  auto s = smallness_functional(can, z, dict);
  CHECK(std::fabs(s.value) < 1e-12);
  CHECK(s.dictionary_lower_bound);

  // dimension zero: independent of the dictionary, equals the average height
  auto z2 = EffectiveCycle::of_orbit(galois_orbit(ProjectivePoint::rational({1, 2})));
  auto dict2 = SectionDictionary::with_binomials(1, 4);
  CHECK(smallness_functional(can, z2, dict).value ==
        doctest::Approx(smallness_functional(can, z2, dict2).value).epsilon(1e-13));
  CHECK(smallness_functional(can, z2, dict).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-13));

  // one Veronese translate under FS
  auto fs = MetricFamily::fubini_study(3);
  EffectiveCycle zc;
  zc.dim = 1;
  zc.label = "single curve";
  zc.pieces.push_back({Int(1), make_torsion_translate({0, 1, 2, 3}, 4)});
  auto sc = smallness_functional(fs, zc, SectionDictionary::coordinates(3));
  CHECK(std::fabs(sc.value - kVeroneseFs / 3.0) < 1e-6);

  EffectiveCycle empty;
  empty.dim = 0;
  CHECK_THROWS_AS(smallness_functional(can, empty, dict), DomainError);
}

TEST_CASE("minima filter") {
  std::vector<MinimaCandidate> cands = {
      {"torsion", 0.0, 1.0},
      {"(1:2)", std::log(2.0), 1.0},
  };
  auto all = minima_filter(cands, 0.0);
  REQUIRE(all.size() == 1);
  CHECK(all[0].label == "torsion");
  CHECK(minima_filter(cands, -1.0).empty());
  auto half = minima_filter(cands, 0.5);
  REQUIRE(half.size() == 1);
  CHECK(half[0].label == "torsion");
  // monotone in eta
  for (double lo : {-1.0, 0.0, 0.3}) {
    for (double hi : {0.5, 0.7, 1.0}) {
      if (lo > hi) continue;
      CHECK(minima_filter(cands, lo).size() <= minima_filter(cands, hi).size());
    }
  }
}

TEST_CASE("genericity fractions") {
  std::vector<EffectiveCycle> net;
  for (long n : {3L, 5L, 7L}) net.push_back(EffectiveCycle::of_orbit(torsion_orbit(n)));
  auto x0 = SectionSpec::coordinate(1, 0);
  auto frac = genericity_check(net, {x0});
  for (double f : frac) CHECK(f == 0.0);

  // the constant point (1:1) lies on x0 - x1
  SectionSpec::Term a, b;
  auto c1 = CyclotomicContext::get(1);
  a.coeff = CyclotomicElement::one(c1);
  a.exponents = {1, 0};
  b.coeff = -CyclotomicElement::one(c1);
  b.exponents = {0, 1};
  auto diff = SectionSpec::combination(1, {a, b});
  std::vector<EffectiveCycle> constant_net = {
      EffectiveCycle::of_orbit(galois_orbit(ProjectivePoint::rational({1, 1})))};
  CHECK(genericity_check(constant_net, {diff})[0] == 1.0);

  // Veronese translate lies on x0 x3 - x1 x2 iff zeta_3 = zeta_1 zeta_2
  SectionSpec::Term qa, qb;
  qa.coeff = CyclotomicElement::one(c1);
  qa.exponents = {1, 0, 0, 1};
  qb.coeff = -CyclotomicElement::one(c1);
  qb.exponents = {0, 1, 1, 0};
  auto quadric = SectionSpec::combination(3, {qa, qb});
  auto inside = EffectiveCycle::of_curve_cycle(make_torsion_translate({0, 1, 2, 3}, 5, {1, 2, 3}));
  auto outside = EffectiveCycle::of_curve_cycle(make_torsion_translate({0, 1, 2, 3}, 5, {1, 1, 1}));
  auto res = genericity_check({inside, outside}, {quadric});
  CHECK(res[0] == 1.0);
  CHECK(res[1] == 0.0);
}

TEST_CASE("essential minimum estimates") {
  auto can = MetricFamily::canonical(1);
  auto dict = SectionDictionary::coordinates(1);
  std::vector<EffectiveCycle> net;
  for (long n : {2L, 3L, 5L, 7L, 11L}) net.push_back(EffectiveCycle::of_orbit(torsion_orbit(n)));
  auto rep = essential_minimum_upper_estimate(can, net, dict, {});
  CHECK(std::fabs(rep.estimate) < 1e-12);

  auto fs = MetricFamily::fubini_study(1);
  auto rep_fs = essential_minimum_upper_estimate(fs, net, dict, {});
  CHECK(rep_fs.estimate == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-10));
  CHECK(rep_fs.dictionary_lower_bound);
}

TEST_CASE("zhang check semantics") {
  auto ok = zhang_check(0.0, 0.0, 1e-9);
  CHECK(ok.pass);
  CHECK(ok.verdict == "PASS");
  auto flagged = zhang_check(-0.1, 0.0, 1e-9);
  CHECK(!flagged.pass);
  CHECK(flagged.verdict == "dictionary bound insufficient");
}

TEST_CASE("perturbed point heights are exactly linear in t") {
  SplitMix64 rng(2024);
  auto v = Place::rational_archimedean();
  std::vector<ElementaryFunction> fs = {
      ElementaryFunction::parse("re:0,1"),
      ElementaryFunction::parse("logratio:(1,2):(2,1)"),
      ElementaryFunction::parse("add(scale(1/3;im:0,1);const:2/7)"),
  };
  for (int trial = 0; trial < 100; ++trial) {
    long n = 3 + static_cast<long>(rng.below(9));
    auto ctx = CyclotomicContext::get(n);
    auto p = ProjectivePoint::cyclotomic(
        {CyclotomicElement::one(ctx),
         CyclotomicElement::root_of_unity(ctx, 1 + static_cast<long>(rng.below(n - 1))) +
             CyclotomicElement::from_rational(ctx, Rat(static_cast<long>(rng.below(3))))});
    auto orbit = galois_orbit(p);
    const auto& f = fs[trial % fs.size()];
    Rat t(static_cast<long>(rng.below(101)) - 50, 101);
    t.canonicalize();
    for (auto base : {MetricFamily::canonical(1), MetricFamily::fubini_study(1)}) {
      auto pert = MetricFamily::perturbed(base, v, f, t);
      double h_base = height_point(base, orbit).total;
      double h_pert = height_point(pert, orbit).total;
      double favg = 0.0;
      for (const auto& member : orbit.members) {
        Eigen::VectorXcd x(2);
        x << member.cyclotomic_coords()[0].embed(1), member.cyclotomic_coords()[1].embed(1);
        favg += f.eval(x);
      }
      favg /= static_cast<double>(orbit.size());
      CHECK(std::fabs(h_pert - (h_base + t.get_d() * favg)) < 1e-12);
    }
  }
}

TEST_CASE("height response is Lipschitz in the metric distance") {
  auto v = Place::rational_archimedean();
  auto f = ElementaryFunction::parse("logratio:(1,1):(1,2)");
  SplitMix64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Rat t(static_cast<long>(rng.below(21)) - 10, 17);
    t.canonicalize();
    auto base = MetricFamily::fubini_study(1);
    auto pert = MetricFamily::perturbed(base, v, f, t);
    double dist = metric_distance(pert, base, v).value;
    auto orbit = torsion_orbit(3 + static_cast<long>(rng.below(20)));
    double gap =
        std::fabs(height_point(pert, orbit).total - height_point(base, orbit).total);
    CHECK(gap <= dist + 1e-12);
  }
}

TEST_CASE("perturbed curve heights are quadratic in t") {
  auto c = make_torsion_translate({0, 1, 2, 3}, 4);
  auto fsm = MetricFamily::fubini_study(3);
  auto v = Place::rational_archimedean();
  auto f = ElementaryFunction::parse("re:0,3");
  QuadratureConfig quad;
  quad.radial_order = 32;
  quad.radial_panels = 8;
  quad.angular_order = 64;
  double delta = 0.125;
  std::vector<double> ts = {-2 * delta, -delta, 0.0, delta, 2 * delta};
  std::vector<double> hs;
  for (double td : ts) {
    Rat t(static_cast<long>(std::lround(td * 8)), 8);
    t.canonicalize();
    auto m = (td == 0.0) ? fsm : MetricFamily::perturbed(fsm, v, f, t);
    hs.push_back(curve_height(m, c, quad).total);
  }
  // finite differences: cubic component must vanish
  double third = hs[4] - 2 * hs[3] + 2 * hs[1] - hs[0];
  CHECK(std::fabs(third) < 1e-6);
  // the linear coefficient matches 2 n_v int f dmu
  double lin_fit = (8.0 * (hs[3] - hs[1]) - (hs[4] - hs[0])) / (12.0 * delta);
  double lin_expected = 2.0 * curve_integral(fsm, c, f, quad);
  CHECK(std::fabs(lin_fit - lin_expected) < 1e-3);
}

TEST_CASE("correcting integrals are Galois invariant") {
  auto fs = MetricFamily::fubini_study(3);
  auto dict = SectionDictionary::coordinates(3);
  auto rep = make_torsion_translate({0, 1, 2, 3}, 5, {1, 2, 3});
  auto conjugates = curve_galois_orbit(rep);
  REQUIRE(conjugates.size() == 4);
  for (const auto& s : dict.sections()) {
    double base = correcting_integral(fs, rep, s);
    for (const auto& conj : conjugates) {
      CHECK(correcting_integral(fs, conj, s) == doctest::Approx(base).epsilon(1e-12));
    }
  }
  // orbit representative choice does not matter for point integrals
  auto c7 = CyclotomicContext::get(7);
  auto p = ProjectivePoint::cyclotomic(
      {CyclotomicElement::one(c7),
       CyclotomicElement::root_of_unity(c7, 1) + CyclotomicElement::one(c7)});
  auto orbit = galois_orbit(p);
  auto s0 = SectionSpec::coordinate(1, 0);
  double i_rep = correcting_integral(MetricFamily::fubini_study(1), orbit, s0);
  for (const auto& member : orbit.members) {
    double i_m = correcting_integral(MetricFamily::fubini_study(1), galois_orbit(member), s0);
    CHECK(i_m == doctest::Approx(i_rep).epsilon(1e-12));
  }
}

TEST_CASE("essential minimum of the canonical curve net vanishes") {
  auto can = MetricFamily::canonical(3);
  auto dict = SectionDictionary::coordinates(3);
  std::vector<EffectiveCycle> net;
  for (long n : {2L, 3L, 5L}) {
    net.push_back(EffectiveCycle::of_curve_cycle(make_torsion_translate({0, 1, 2, 3}, n)));
  }
  auto rep = essential_minimum_upper_estimate(can, net, dict, {});
  CHECK(rep.estimate == 0.0);
  for (double v : rep.member_values) CHECK(v == 0.0);
}

TEST_CASE("perturbed canonical curve heights follow the expansion") {
  auto c = make_torsion_translate({0, 1, 2}, 3);
  auto can = MetricFamily::canonical(2);
  auto v = Place::rational_archimedean();
  auto f = ElementaryFunction::parse("logratio:(1,1,2):(2,1,1)");
  QuadratureConfig quad;
  quad.radial_order = 32;
  quad.radial_panels = 8;
  quad.angular_order = 64;
  Rat t(1, 5);
  auto pert = MetricFamily::perturbed(can, v, f, t);
  double h = curve_height(pert, c, quad).total;
  double lin = 2.0 * t.get_d() * curve_integral(can, c, f, quad);
  double quad_coeff = curve_energy(c, f, f, quad);
  CHECK(h == doctest::Approx(lin + t.get_d() * t.get_d() * quad_coeff).epsilon(1e-10));
  // the energy form is negative semidefinite
  CHECK(quad_coeff <= 0.0);
}

TEST_CASE("lower constant bound holds under perturbed metrics") {
  auto f = ElementaryFunction::parse("logratio:(2,1,1,1):(1,1,1,2)");
  auto v = Place::rational_archimedean();
  auto dict = SectionDictionary::coordinates(3);
  auto curve = make_torsion_translate({0, 1, 2, 3}, 8);
  QuadratureConfig quad;
  quad.radial_order = 24;
  quad.radial_panels = 6;
  quad.angular_order = 48;
  for (long num : {-3L, -1L, 1L, 2L}) {
    Rat t(num, 7);
    t.canonicalize();
    auto m = MetricFamily::perturbed(MetricFamily::fubini_study(3), v, f, t);
    double c = dictionary_lower_constant(m, dict).value;
    for (const auto& s : dict.sections()) {
      CHECK(correcting_integral(m, curve, s, quad) >= c * curve.degree() - 1e-9);
    }
  }
}

TEST_CASE("binomial dictionaries only raise the smallness value") {
  auto fs = MetricFamily::fubini_study(3);
  EffectiveCycle z;
  z.dim = 1;
  z.pieces.push_back({Int(1), make_torsion_translate({0, 1, 2, 3}, 8)});
  auto coords = SectionDictionary::coordinates(3);
  auto bigger = SectionDictionary::with_binomials(3, 8);
  double small_coords = smallness_functional(fs, z, coords).value;
  double small_big = smallness_functional(fs, z, bigger).value;
  // the functional is a max over the dictionary, so enlarging it is monotone
  CHECK(small_big >= small_coords - 1e-9);
}

TEST_CASE("genericity counts conjugates individually for non-rational divisors") {
  auto c5 = CyclotomicContext::get(5);
  // x0 - zeta_5 x1 vanishes at the single conjugate (1 : zeta_5^4)
  SectionSpec::Term a, b;
  a.coeff = CyclotomicElement::one(c5);
  a.exponents = {1, 0};
  b.coeff = -CyclotomicElement::root_of_unity(c5, 1);
  b.exponents = {0, 1};
  auto h = SectionSpec::combination(1, {a, b});
  auto orbit = galois_orbit(ProjectivePoint::cyclotomic(
      {CyclotomicElement::one(c5), CyclotomicElement::root_of_unity(c5, 1)}));
  REQUIRE(orbit.size() == 4);
  int vanishing = 0;
  for (const auto& member : orbit.members) {
    if (section_vanishes_at(h, member)) ++vanishing;
  }
  CHECK(vanishing == 1);
  auto frac = genericity_check({EffectiveCycle::of_orbit(orbit)}, {h});
  CHECK(frac[0] == doctest::Approx(0.25));
}
