#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "adelab/cyclotomic.hpp"
#include "adelab/hnf.hpp"
#include "adelab/numeric.hpp"

using namespace adelab;

namespace {

CyclotomicElement random_element(const std::shared_ptr<const CyclotomicContext>& ctx,
                                 SplitMix64& rng) {
  std::vector<Rat> c(static_cast<std::size_t>(ctx->degree()));
  for (auto& r : c) {
    r = Rat(static_cast<long>(rng.below(11)) - 5, static_cast<long>(rng.below(4)) + 1);
    r.canonicalize();
  }
  return CyclotomicElement(ctx, std::move(c));
}

}  // namespace

TEST_CASE("zeta^N equals one exactly") {
  for (long n : {1L, 2L, 3L, 4L, 5L, 8L, 12L, 30L, 105L}) {
    auto ctx = CyclotomicContext::get(n);
    auto z = CyclotomicElement::root_of_unity(ctx, 1);
    CHECK(z.pow(n) == CyclotomicElement::one(ctx));
  }
}

TEST_CASE("ring axioms on random triples") {
  SplitMix64 rng(42);
  for (long n : {3L, 4L, 5L, 8L, 12L}) {
    auto ctx = CyclotomicContext::get(n);
    for (int i = 0; i < 40; ++i) {
      auto x = random_element(ctx, rng);
      auto y = random_element(ctx, rng);
      auto z = random_element(ctx, rng);
      CHECK((x + y) * z == x * z + y * z);
      CHECK(x * y == y * x);
      CHECK((x * y) * z == x * (y * z));
    }
  }
}

TEST_CASE("embedding basic values") {
  auto c4 = CyclotomicContext::get(4);
  auto i_unit = CyclotomicElement::root_of_unity(c4, 1).embed(1);
  CHECK(std::abs(i_unit - std::complex<double>(0, 1)) < 1e-15);

  auto c3 = CyclotomicContext::get(3);
  auto v = (CyclotomicElement::one(c3) + CyclotomicElement::root_of_unity(c3, 1)).embed(1);
  CHECK(std::abs(v - std::complex<double>(0.5, std::sqrt(3.0) / 2.0)) < 1e-14);
}

TEST_CASE("embedding respects two routes for zeta + zeta^-1") {
  auto c5 = CyclotomicContext::get(5);
  auto z = CyclotomicElement::root_of_unity(c5, 1);
  auto zi = CyclotomicElement::root_of_unity(c5, 4);  // zeta^-1
  auto s = z + zi;
  auto direct = s.embed(2);
  CHECK(std::abs(direct.imag()) < 1e-14);
  CHECK(direct.real() == doctest::Approx(2.0 * std::cos(4.0 * M_PI / 5.0)).epsilon(1e-13));
}

TEST_CASE("embedding rejects non-coprime exponent") {
  auto c4 = CyclotomicContext::get(4);
  auto z = CyclotomicElement::root_of_unity(c4, 1);
  CHECK_THROWS_AS(z.embed(2), DomainError);
}

TEST_CASE("embedding is a ring homomorphism") {
  SplitMix64 rng(77);
  auto ctx = CyclotomicContext::get(12);
  for (int i = 0; i < 50; ++i) {
    auto x = random_element(ctx, rng);
    auto y = random_element(ctx, rng);
    for (long k : {1L, 5L, 7L, 11L}) {
      auto lhs = (x * y).embed(k);
      auto rhs = x.embed(k) * y.embed(k);
      CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("inverse multiplies to one") {
  SplitMix64 rng(99);
  for (long n : {4L, 5L, 8L}) {
    auto ctx = CyclotomicContext::get(n);
    for (int i = 0; i < 20; ++i) {
      auto x = random_element(ctx, rng);
      if (x.is_zero()) continue;
      CHECK(x * x.inverse() == CyclotomicElement::one(ctx));
    }
  }
}

TEST_CASE("conjugation is a ring automorphism and has the right order") {
  auto ctx = CyclotomicContext::get(8);
  SplitMix64 rng(5);
  auto x = random_element(ctx, rng);
  auto y = random_element(ctx, rng);
  for (long k : {1L, 3L, 5L, 7L}) {
    CHECK(x.conjugate(k) * y.conjugate(k) == (x * y).conjugate(k));
    CHECK(x.conjugate(k) + y.conjugate(k) == (x + y).conjugate(k));
  }
  // sigma_3 twice = sigma_9 = sigma_1
  CHECK(x.conjugate(3).conjugate(3) == x);
}

TEST_CASE("root of unity detection") {
  auto ctx = CyclotomicContext::get(8);
  long j = -1;
  int sign = 0;
  auto z5 = CyclotomicElement::root_of_unity(ctx, 5);
  CHECK(z5.is_root_of_unity(&j, &sign));
  // zeta_8^5 = -zeta_8; either representation reconstructs the element
  auto rebuilt = CyclotomicElement::root_of_unity(ctx, j).scaled(Rat(sign));
  CHECK(rebuilt == z5);
  auto neg = -CyclotomicElement::root_of_unity(ctx, 2);
  CHECK(neg.is_root_of_unity(&j, &sign));
  CHECK(sign == -1);
  auto notroot = CyclotomicElement::one(ctx) + CyclotomicElement::root_of_unity(ctx, 1);
  CHECK(!notroot.is_root_of_unity());
}

TEST_CASE("content ideal norm examples") {
  // gcd ideal (2, 4) = (2) over Z
  auto c1 = CyclotomicContext::get(1);
  std::vector<CyclotomicElement> rational_pair = {
      CyclotomicElement::from_rational(c1, Rat(2)),
      CyclotomicElement::from_rational(c1, Rat(4))};
  CHECK((content_ideal_norm(rational_pair) == 2));
  CHECK(content_ideal_lognorm(rational_pair) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  // (1, i) is the unit ideal
  auto c4 = CyclotomicContext::get(4);
  std::vector<CyclotomicElement> unit_pair = {CyclotomicElement::one(c4),
                                              CyclotomicElement::root_of_unity(c4, 1)};
  CHECK((content_ideal_norm(unit_pair) == 1));

  // (1+i, 2) = (1+i) in Z[i], norm 2
  std::vector<CyclotomicElement> gauss = {
      CyclotomicElement::one(c4) + CyclotomicElement::root_of_unity(c4, 1),
      CyclotomicElement::from_rational(c4, Rat(2))};
  CHECK((content_ideal_norm(gauss) == 2));
}

TEST_CASE("content norm invariant under unit scaling") {
  auto c8 = CyclotomicContext::get(8);
  std::vector<CyclotomicElement> coords = {
      CyclotomicElement::one(c8) + CyclotomicElement::root_of_unity(c8, 1),
      CyclotomicElement::from_rational(c8, Rat(2)),
  };
  Int base = content_ideal_norm(coords);
  for (long j = 1; j < 8; ++j) {
    auto u = CyclotomicElement::root_of_unity(c8, j);
    std::vector<CyclotomicElement> scaled;
    for (const auto& c : coords) scaled.push_back(c * u);
    CHECK((content_ideal_norm(scaled) == base));
  }
}

TEST_CASE("content norm error paths") {
  auto c4 = CyclotomicContext::get(4);
  std::vector<CyclotomicElement> zeros = {CyclotomicElement::zero(c4),
                                          CyclotomicElement::zero(c4)};
  CHECK_THROWS_AS(content_ideal_norm(zeros), DomainError);
}

TEST_CASE("hermite normal form of a known lattice") {
  // rows (2,0),(0,2),(1,1): index-2 sublattice of Z^2
  std::vector<std::vector<Int>> rows = {{Int(2), Int(0)}, {Int(0), Int(2)}, {Int(1), Int(1)}};
  CHECK((row_module_index(rows, 2) == 2));
  // identity-containing spans
  std::vector<std::vector<Int>> rows2 = {{Int(1), Int(7)}, {Int(0), Int(3)}};
  CHECK((row_module_index(rows2, 2) == 3));
  // rank-deficient span
  std::vector<std::vector<Int>> bad = {{Int(1), Int(2)}, {Int(2), Int(4)}};
  CHECK_THROWS_AS(row_module_index(bad, 2), DomainError);
}

TEST_CASE("lift to larger conductor preserves value") {
  auto c4 = CyclotomicContext::get(4);
  auto x = CyclotomicElement::root_of_unity(c4, 1) + CyclotomicElement::one(c4);
  auto lifted = lift_to_conductor(x, 12);
  CHECK(std::abs(lifted.embed(1) - x.embed(1)) < 1e-14);
}
