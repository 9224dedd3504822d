#include "adelab/adelic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace adelab {

Place Place::rational_archimedean() {
  Place v;
  v.kind_ = PlaceKind::RationalArchimedean;
  return v;
}

Place Place::rational_prime(Int p) {
  Place v;
  v.kind_ = PlaceKind::RationalPrime;
  v.prime_ = std::move(p);
  return v;
}

Place Place::function_field_finite(FqPoly pi) {
  if (pi.degree() < 1 || !pi.leading().is_one()) {
    throw DomainError("Place: uniformizer must be monic of positive degree");
  }
  Place v;
  v.kind_ = PlaceKind::FunctionFieldFinite;
  v.q_ = pi.ctx()->q();
  v.pi_ = std::move(pi);
  return v;
}

Place Place::function_field_infinity(std::shared_ptr<const FqContext> field) {
  Place v;
  v.kind_ = PlaceKind::FunctionFieldInfinity;
  v.q_ = field->q();
  return v;
}

Rat Place::weight() const {
  switch (kind_) {
    case PlaceKind::RationalArchimedean:
    case PlaceKind::RationalPrime:
    case PlaceKind::FunctionFieldInfinity:
      return Rat(1);
    case PlaceKind::FunctionFieldFinite:
      return Rat(pi_.degree());
  }
  return Rat(1);
}

Int Place::log_base() const {
  switch (kind_) {
    case PlaceKind::RationalArchimedean:
      return Int(1);
    case PlaceKind::RationalPrime:
      return prime_;
    case PlaceKind::FunctionFieldFinite:
    case PlaceKind::FunctionFieldInfinity:
      return Int(static_cast<unsigned long>(q_));
  }
  return Int(1);
}

std::string Place::describe() const {
  switch (kind_) {
    case PlaceKind::RationalArchimedean:
      return "oo";
    case PlaceKind::RationalPrime:
      return prime_.get_str();
    case PlaceKind::FunctionFieldFinite:
      return pi_.to_string();
    case PlaceKind::FunctionFieldInfinity:
      return "1/t";
  }
  return "?";
}

std::string Place::sort_key() const {
  std::ostringstream os;
  switch (kind_) {
    case PlaceKind::RationalArchimedean:
      os << "a";
      break;
    case PlaceKind::RationalPrime: {
      std::string s = prime_.get_str();
      os << "p" << s.size() << ":" << s;
      break;
    }
    case PlaceKind::FunctionFieldFinite: {
      char deg[16];
      std::snprintf(deg, sizeof(deg), "%06d", pi_.degree());
      os << "f" << deg << ":" << pi_.hash_key();
      break;
    }
    case PlaceKind::FunctionFieldInfinity:
      os << "z";
      break;
  }
  return os.str();
}

long ValuationVector::ord(const Place& v) const {
  for (const auto& [w, o] : finite) {
    if (w == v) return o;
  }
  return 0;
}

ValuationVector valuation_vector(const Rat& x_in) {
  Rat x = x_in;
  x.canonicalize();
  if (x == 0) throw DomainError("valuation_vector: zero input");
  ValuationVector out;
  out.rational = true;
  Int num = x.get_num();
  Int den = x.get_den();
  for (const auto& [p, e] : factor_integer(num)) {
    out.finite.emplace_back(Place::rational_prime(p), static_cast<long>(e));
  }
  for (const auto& [p, e] : factor_integer(den)) {
    out.finite.emplace_back(Place::rational_prime(p), -static_cast<long>(e));
  }
  std::sort(out.finite.begin(), out.finite.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.arch_magnitude = std::fabs(x.get_d());
  return out;
}

ValuationVector valuation_vector(const FqPoly& num_in, const FqPoly& den_in) {
  if (num_in.is_zero()) throw DomainError("valuation_vector: zero input");
  if (den_in.is_zero()) throw DomainError("valuation_vector: zero denominator");
  FqPoly g = fq_poly_gcd(num_in, den_in);
  FqPoly num, den, rem;
  fq_poly_divmod(num_in, g, num, rem);
  fq_poly_divmod(den_in, g, den, rem);

  ValuationVector out;
  out.rational = false;
  std::vector<std::pair<Place, long>> acc;
  for (const auto& [pi, e] : fq_poly_factor(num)) {
    acc.emplace_back(Place::function_field_finite(pi), e);
  }
  for (const auto& [pi, e] : fq_poly_factor(den)) {
    acc.emplace_back(Place::function_field_finite(pi), -e);
  }
  long ord_inf = den.degree() - num.degree();
  if (ord_inf != 0) {
    acc.emplace_back(Place::function_field_infinity(num_in.ctx()), ord_inf);
  }
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.finite = std::move(acc);
  return out;
}

ValuationVector valuation_sum(const ValuationVector& a, const ValuationVector& b) {
  ValuationVector out;
  out.rational = a.rational;
  out.arch_magnitude = a.arch_magnitude * b.arch_magnitude;
  std::vector<std::pair<Place, long>> acc = a.finite;
  acc.insert(acc.end(), b.finite.begin(), b.finite.end());
  std::sort(acc.begin(), acc.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [v, o] : acc) {
    if (!out.finite.empty() && out.finite.back().first == v) {
      out.finite.back().second += o;
    } else {
      out.finite.emplace_back(v, o);
    }
  }
  out.finite.erase(std::remove_if(out.finite.begin(), out.finite.end(),
                                  [](const auto& e) { return e.second == 0; }),
                   out.finite.end());
  return out;
}

double product_formula_defect(const Rat& x) {
  ValuationVector v = valuation_vector(x);
  double s = std::log(v.arch_magnitude);
  for (const auto& [w, o] : v.finite) {
    // n_v log|x|_v = -ord * log p
    s -= static_cast<double>(o) * std::log(w.log_base().get_d());
  }
  return s;
}

double product_formula_defect(const FqPoly& num, const FqPoly& den) {
  Int layer = product_formula_integer_layer(num, den);
  double q = static_cast<double>(num.ctx()->q());
  return -layer.get_d() * std::log(q);
}

bool product_formula_exact(const Rat& x) {
  ValuationVector v = valuation_vector(x);
  Rat prod(1);
  for (const auto& [w, o] : v.finite) {
    Rat pw(w.log_base());
    if (o >= 0) {
      for (long i = 0; i < o; ++i) prod *= pw;
    } else {
      for (long i = 0; i < -o; ++i) prod /= pw;
    }
  }
  return prod == abs(x);
}

Int product_formula_integer_layer(const FqPoly& num, const FqPoly& den) {
  ValuationVector v = valuation_vector(num, den);
  Int s = 0;
  for (const auto& [w, o] : v.finite) {
    s += Rat(w.weight()).get_num() * o;
  }
  return s;
}

}  // namespace adelab
