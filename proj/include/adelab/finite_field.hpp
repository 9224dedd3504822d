#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "adelab/numeric.hpp"

namespace adelab {

// F_{p^e}, elements stored as coefficient vectors modulo a deterministic
// defining polynomial (the lexicographically smallest monic irreducible of
// degree e over F_p), so equal (p, e) always yields the same field.
class FqContext {
 public:
  static std::shared_ptr<const FqContext> get(std::uint64_t p, int e);

  std::uint64_t p() const { return p_; }
  int e() const { return e_; }
  std::uint64_t q() const { return q_; }
  // lower coefficients of the monic defining polynomial (size e; empty for e = 1)
  const std::vector<std::uint64_t>& defining() const { return defining_; }
  std::string describe() const;

  FqContext(std::uint64_t p, int e, std::vector<std::uint64_t> defining);

 private:
  std::uint64_t p_;
  int e_;
  std::uint64_t q_;
  std::vector<std::uint64_t> defining_;
};

class Fq {
 public:
  Fq() = default;
  Fq(std::shared_ptr<const FqContext> ctx, std::uint64_t scalar);
  Fq(std::shared_ptr<const FqContext> ctx, std::vector<std::uint64_t> coeffs);

  static Fq zero(std::shared_ptr<const FqContext> ctx) { return Fq(ctx, 0); }
  static Fq one(std::shared_ptr<const FqContext> ctx) { return Fq(ctx, 1); }
  // x mod defining polynomial; a generator of the field over F_p when e > 1
  static Fq gen(std::shared_ptr<const FqContext> ctx);

  const std::shared_ptr<const FqContext>& ctx() const { return ctx_; }
  bool is_zero() const;
  bool is_one() const;
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator-() const;
  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }

  Fq inverse() const;
  Fq pow(const Int& n) const;
  // x -> x^(p^k); k = e recovers the identity
  Fq frobenius(int k) const;

  std::string to_string() const;
  std::uint64_t hash_key() const;

 private:
  std::shared_ptr<const FqContext> ctx_;
  std::vector<std::uint64_t> c_;  // size e, entries in [0, p)
};

}  // namespace adelab
