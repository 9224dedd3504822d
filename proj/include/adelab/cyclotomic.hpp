#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "adelab/numeric.hpp"

namespace adelab {

// Shared data for Q(zeta_N): the N-th cyclotomic polynomial, the reduced
// power basis representations of zeta^j for j < N, and the unit group of
// Z/N.  Contexts are cached per conductor.
class CyclotomicContext {
 public:
  static std::shared_ptr<const CyclotomicContext> get(long N);

  long conductor() const { return n_; }
  long degree() const { return phi_; }  // phi(N)
  // monic Phi_N, ascending coefficients, size degree()+1
  const std::vector<Int>& cyclotomic_polynomial() const { return phi_poly_; }
  // acc += scale * (power basis row of zeta^j); rows below phi(N) are basis
  // vectors and are never materialized
  void accumulate_zeta_power(long j, const Rat& scale, std::vector<Rat>& acc) const;
  std::vector<Int> zeta_power_dense(long j) const;
  const std::vector<long>& units() const { return units_; }

  CyclotomicContext(long n, long phi, std::vector<Int> phi_poly);

 private:
  long n_;
  long phi_;
  std::vector<Int> phi_poly_;
  std::vector<std::vector<Int>> tail_rows_;  // reduced zeta^j for j in [phi, N)
  std::vector<long> units_;
};

// An element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).
// Elements of Z[zeta_N] are exactly those with integral coefficients.
class CyclotomicElement {
 public:
  CyclotomicElement() = default;
  explicit CyclotomicElement(std::shared_ptr<const CyclotomicContext> ctx);
  CyclotomicElement(std::shared_ptr<const CyclotomicContext> ctx, std::vector<Rat> coeffs);

  static CyclotomicElement zero(std::shared_ptr<const CyclotomicContext> ctx);
  static CyclotomicElement one(std::shared_ptr<const CyclotomicContext> ctx);
  static CyclotomicElement from_rational(std::shared_ptr<const CyclotomicContext> ctx, Rat r);
  static CyclotomicElement root_of_unity(std::shared_ptr<const CyclotomicContext> ctx, long j);

  const std::shared_ptr<const CyclotomicContext>& ctx() const { return ctx_; }
  long conductor() const { return ctx_->conductor(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_integral() const;
  bool is_rational() const;
  Rat rational_part() const;  // valid when is_rational()

  CyclotomicElement operator+(const CyclotomicElement& o) const;
  CyclotomicElement operator-(const CyclotomicElement& o) const;
  CyclotomicElement operator*(const CyclotomicElement& o) const;
  CyclotomicElement operator-() const;
  CyclotomicElement scaled(const Rat& r) const;
  bool operator==(const CyclotomicElement& o) const { return c_ == o.c_; }
  bool operator!=(const CyclotomicElement& o) const { return !(*this == o); }

  // Galois action zeta -> zeta^k; k must be coprime to the conductor.
  CyclotomicElement conjugate(long k) const;

  // numerical value under zeta -> exp(2 pi i k / N); gcd(k, N) = 1 required
  std::complex<double> embed(long k) const;

  CyclotomicElement inverse() const;
  CyclotomicElement pow(long e) const;

  // True when the element equals +-zeta^j; reports j and the sign.
  bool is_root_of_unity(long* j_out = nullptr, int* sign_out = nullptr) const;

  // Lossless serialization; identical strings iff identical elements.
  std::string key() const;
  std::string to_string() const;

 private:
  std::shared_ptr<const CyclotomicContext> ctx_;
  std::vector<Rat> c_;
};

// Lift x from Q(zeta_N) into Q(zeta_M); N must divide M.
CyclotomicElement lift_to_conductor(const CyclotomicElement& x, long M);

}  // namespace adelab
