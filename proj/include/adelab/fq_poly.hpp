#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adelab/finite_field.hpp"

namespace adelab {

// Univariate polynomials over F_q, little-endian coefficients, always
// normalized (no trailing zero coefficients).
class FqPoly {
 public:
  FqPoly() = default;
  explicit FqPoly(std::shared_ptr<const FqContext> ctx) : ctx_(std::move(ctx)) {}
  FqPoly(std::shared_ptr<const FqContext> ctx, std::vector<Fq> coeffs);

  static FqPoly zero(std::shared_ptr<const FqContext> ctx) { return FqPoly(ctx); }
  static FqPoly constant(std::shared_ptr<const FqContext> ctx, const Fq& c);
  static FqPoly x(std::shared_ptr<const FqContext> ctx);
  // from small integer coefficients reduced mod p (ascending degree)
  static FqPoly from_ints(std::shared_ptr<const FqContext> ctx,
                          const std::vector<long>& coeffs);

  const std::shared_ptr<const FqContext>& ctx() const { return ctx_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_constant() const { return c_.size() <= 1; }
  Fq coeff(int i) const;
  const Fq& leading() const { return c_.back(); }
  const std::vector<Fq>& coeffs() const { return c_; }

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly operator-() const;
  bool operator==(const FqPoly& o) const { return c_equal(o); }
  bool operator!=(const FqPoly& o) const { return !c_equal(o); }

  FqPoly scaled(const Fq& s) const;
  FqPoly monic() const;
  Fq eval(const Fq& at) const;
  FqPoly derivative() const;
  // coefficient-wise x -> x^(p^k); Galois action on constant-field extensions
  FqPoly coeff_frobenius(int k) const;

  std::string to_string() const;  // e.g. "t^3+t+1"
  std::string hash_key() const;

 private:
  bool c_equal(const FqPoly& o) const { return c_ == o.c_; }
  void normalize();
  std::shared_ptr<const FqContext> ctx_;
  std::vector<Fq> c_;
};

void fq_poly_divmod(const FqPoly& a, const FqPoly& b, FqPoly& quot, FqPoly& rem);
FqPoly fq_poly_gcd(FqPoly a, FqPoly b);  // monic gcd
FqPoly fq_poly_powmod(const FqPoly& base, const Int& exp, const FqPoly& mod);

bool fq_poly_is_irreducible(const FqPoly& f);

// Monic irreducible factors with multiplicities.  Distinct-degree splitting
// followed by Cantor-Zassenhaus equal-degree splitting; the random choices
// come from a SplitMix64 stream seeded with `seed`, so output is stable.
std::vector<std::pair<FqPoly, int>> fq_poly_factor(const FqPoly& f,
                                                   std::uint64_t seed = 0x9E3779B9ULL);

// Deterministic ordering used when emitting valuation supports.
bool fq_poly_less(const FqPoly& a, const FqPoly& b);

}  // namespace adelab
