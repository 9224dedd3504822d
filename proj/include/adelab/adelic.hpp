#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adelab/factor.hpp"
#include "adelab/fq_poly.hpp"
#include "adelab/numeric.hpp"

namespace adelab {

// Places of the two base adelic fields.  Over Q: the archimedean place and
// one place per prime, all with weight 1.  Over F_q(t): one place per monic
// irreducible pi (weight deg pi) plus the degree-1 place at infinity, with
// |x|_v = q^(-ord_v(x)).
enum class PlaceKind {
  RationalArchimedean,
  RationalPrime,
  FunctionFieldFinite,
  FunctionFieldInfinity,
};

class Place {
 public:
  static Place rational_archimedean();
  static Place rational_prime(Int p);
  static Place function_field_finite(FqPoly pi);  // monic irreducible
  static Place function_field_infinity(std::shared_ptr<const FqContext> field);

  PlaceKind kind() const { return kind_; }
  bool is_archimedean() const { return kind_ == PlaceKind::RationalArchimedean; }
  const Int& prime() const { return prime_; }
  const FqPoly& uniformizer() const { return pi_; }
  std::uint64_t field_size() const { return q_; }

  // n_v
  Rat weight() const;
  // log-scale base: log|x|_v is an integer multiple of log(base) at finite
  // places; base p over Q, base q over F_q(t).
  Int log_base() const;

  std::string describe() const;
  std::string sort_key() const;
  bool operator==(const Place& o) const { return sort_key() == o.sort_key(); }
  bool operator<(const Place& o) const { return sort_key() < o.sort_key(); }

  Place() = default;  // defaults to the archimedean place of Q

 private:
  PlaceKind kind_ = PlaceKind::RationalArchimedean;
  Int prime_;
  FqPoly pi_;
  std::uint64_t q_ = 0;
};

// Finite-support list of (place, ord) pairs, plus the archimedean magnitude
// over Q.  Ordered by place sort key so output is deterministic.
struct ValuationVector {
  std::vector<std::pair<Place, long>> finite;
  bool rational = true;       // base field tag
  double arch_magnitude = 1;  // |x| at the archimedean place (Q only)

  long ord(const Place& v) const;
};

// ord_v(x) at every finite place of the support, via integer factorization.
// x must be nonzero.
ValuationVector valuation_vector(const Rat& x);

// Function-field variant; the fraction num/den is reduced internally before
// valuations are read off its factorizations.  ord at infinity is
// deg(den) - deg(num).
ValuationVector valuation_vector(const FqPoly& num, const FqPoly& den);

// Componentwise sum (same base field).
ValuationVector valuation_sum(const ValuationVector& a, const ValuationVector& b);

// sum_v n_v log|x|_v in double precision; zero up to rounding.
double product_formula_defect(const Rat& x);
double product_formula_defect(const FqPoly& num, const FqPoly& den);

// Exact layers of the product formula.  Over Q: |x| equals the product of
// p^ord_p(x) as an exact rational identity.  Over F_q(t): the integer
// sum_v deg(v) * ord_v(x) vanishes.
bool product_formula_exact(const Rat& x);
Int product_formula_integer_layer(const FqPoly& num, const FqPoly& den);

}  // namespace adelab
