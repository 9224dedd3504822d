#include "adelab/points.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "adelab/factor.hpp"

namespace adelab {

namespace {

Int vector_gcd(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

}  // namespace

ProjectivePoint ProjectivePoint::rational(std::vector<Int> coords) {
  if (coords.empty()) throw DomainError("ProjectivePoint: empty coordinates");
  Int g = vector_gcd(coords);
  if (g == 0) throw DomainError("ProjectivePoint: all coordinates zero");
  for (auto& c : coords) c /= g;
  // sign convention: first nonzero coordinate positive
  for (const auto& c : coords) {
    if (c == 0) continue;
    if (c < 0) {
      for (auto& x : coords) x = -x;
    }
    break;
  }
  ProjectivePoint p;
  p.field_ = CoordField::Rational;
  p.rat_ = std::move(coords);
  return p;
}

ProjectivePoint ProjectivePoint::rational(std::initializer_list<long> coords) {
  std::vector<Int> v;
  v.reserve(coords.size());
  for (long c : coords) v.emplace_back(c);
  return rational(std::move(v));
}

ProjectivePoint ProjectivePoint::cyclotomic(std::vector<CyclotomicElement> coords) {
  if (coords.empty()) throw DomainError("ProjectivePoint: empty coordinates");
  for (const auto& c : coords) {
    if (c.conductor() != coords[0].conductor()) {
      throw DomainError("ProjectivePoint: coordinates must share one conductor");
    }
  }
  bool all_zero = std::all_of(coords.begin(), coords.end(),
                              [](const CyclotomicElement& c) { return c.is_zero(); });
  if (all_zero) throw DomainError("ProjectivePoint: all coordinates zero");
  // clear denominators (projective scaling by a rational)
  Int lcm = 1;
  for (const auto& c : coords) {
    for (const auto& r : c.coeffs()) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den().get_mpz_t());
    }
  }
  if (lcm != 1) {
    for (auto& c : coords) c = c.scaled(Rat(lcm));
  }
  ProjectivePoint p;
  p.field_ = CoordField::Cyclotomic;
  p.cyc_ = std::move(coords);
  return p;
}

ProjectivePoint ProjectivePoint::function_field(std::uint64_t q, int m,
                                                std::vector<FqPoly> coords) {
  if (coords.empty()) throw DomainError("ProjectivePoint: empty coordinates");
  bool all_zero =
      std::all_of(coords.begin(), coords.end(), [](const FqPoly& c) { return c.is_zero(); });
  if (all_zero) throw DomainError("ProjectivePoint: all coordinates zero");
  // divide by the gcd and scale the first nonzero coordinate monic
  FqPoly g = FqPoly::zero(coords[0].ctx());
  for (const auto& c : coords) g = fq_poly_gcd(g, c);
  if (!g.is_one() && !g.is_zero()) {
    for (auto& c : coords) {
      FqPoly quot, rem;
      fq_poly_divmod(c, g, quot, rem);
      c = quot;
    }
  }
  Fq lead = Fq::one(coords[0].ctx());
  for (const auto& c : coords) {
    if (!c.is_zero()) {
      lead = c.leading();
      break;
    }
  }
  Fq inv = lead.inverse();
  for (auto& c : coords) c = c.scaled(inv);
  ProjectivePoint p;
  p.field_ = CoordField::FunctionField;
  p.ff_ = std::move(coords);
  p.ff_q_ = q;
  p.ff_m_ = m;
  return p;
}

int ProjectivePoint::ambient_dim() const {
  switch (field_) {
    case CoordField::Rational:
      return static_cast<int>(rat_.size()) - 1;
    case CoordField::Cyclotomic:
      return static_cast<int>(cyc_.size()) - 1;
    case CoordField::FunctionField:
      return static_cast<int>(ff_.size()) - 1;
  }
  return 0;
}

long ProjectivePoint::conductor() const {
  if (field_ != CoordField::Cyclotomic) return 1;
  return cyc_[0].conductor();
}

Int ProjectivePoint::content_norm() const {
  switch (field_) {
    case CoordField::Rational:
    case CoordField::FunctionField:
      return Int(1);  // constructors normalize to content 1
    case CoordField::Cyclotomic:
      return content_ideal_norm(cyc_);
  }
  return Int(1);
}

ProjectivePoint ProjectivePoint::conjugate(long k) const {
  switch (field_) {
    case CoordField::Rational:
      return *this;
    case CoordField::Cyclotomic: {
      std::vector<CyclotomicElement> c;
      c.reserve(cyc_.size());
      for (const auto& x : cyc_) c.push_back(x.conjugate(k));
      ProjectivePoint p;
      p.field_ = CoordField::Cyclotomic;
      p.cyc_ = std::move(c);
      return p;
    }
    case CoordField::FunctionField: {
      // Frobenius of F_{q^m} over F_q applied k times: x -> x^(q^k)
      int e_base = 0;
      {
        std::uint64_t qq = ff_[0].ctx()->p();
        std::uint64_t acc = qq;
        e_base = 1;
        while (acc < ff_q_) {
          acc *= qq;
          ++e_base;
        }
      }
      std::vector<FqPoly> c;
      c.reserve(ff_.size());
      for (const auto& f : ff_) c.push_back(f.coeff_frobenius(e_base * static_cast<int>(k)));
      return function_field(ff_q_, ff_m_, std::move(c));
    }
  }
  return *this;
}

std::string ProjectivePoint::projective_key() const {
  std::ostringstream os;
  switch (field_) {
    case CoordField::Rational: {
      os << "rat:";
      for (const auto& c : rat_) os << c.get_str() << ",";
      break;
    }
    case CoordField::Cyclotomic: {
      // scale so the first nonzero coordinate is 1
      os << "cyc:" << conductor() << ":";
      const CyclotomicElement* first = nullptr;
      for (const auto& c : cyc_) {
        if (!c.is_zero()) {
          first = &c;
          break;
        }
      }
      if (first->is_rational() && first->rational_part() == 1) {
        for (const auto& c : cyc_) os << c.key() << "|";
      } else {
        CyclotomicElement inv = first->inverse();
        for (const auto& c : cyc_) os << (c * inv).key() << "|";
      }
      break;
    }
    case CoordField::FunctionField: {
      // constructor already produced the canonical representative
      os << "ff:" << ff_q_ << ":" << ff_m_ << ":";
      for (const auto& c : ff_) os << c.hash_key() << "|";
      break;
    }
  }
  return os.str();
}

std::string ProjectivePoint::to_string() const {
  std::ostringstream os;
  os << "(";
  int n = ambient_dim();
  for (int i = 0; i <= n; ++i) {
    if (i) os << " : ";
    switch (field_) {
      case CoordField::Rational:
        os << rat_[static_cast<std::size_t>(i)].get_str();
        break;
      case CoordField::Cyclotomic:
        os << cyc_[static_cast<std::size_t>(i)].to_string();
        break;
      case CoordField::FunctionField:
        os << ff_[static_cast<std::size_t>(i)].to_string();
        break;
    }
  }
  os << ")";
  return os.str();
}

GaloisOrbit galois_orbit(const ProjectivePoint& p) {
  GaloisOrbit orbit;
  orbit.representative = p;
  switch (p.field()) {
    case CoordField::Rational: {
      orbit.members = {p};
      orbit.group = "trivial";
      break;
    }
    case CoordField::Cyclotomic: {
      long n = p.conductor();
      auto ctx = CyclotomicContext::get(n);
      std::set<std::string> seen;
      for (long k : ctx->units()) {
        ProjectivePoint q = p.conjugate(k);
        std::string key = q.projective_key();
        if (seen.insert(key).second) orbit.members.push_back(std::move(q));
      }
      orbit.group = "(Z/" + std::to_string(n) + ")^*";
      break;
    }
    case CoordField::FunctionField: {
      std::set<std::string> seen;
      for (int i = 0; i < p.extension_degree(); ++i) {
        ProjectivePoint q = p.conjugate(i);
        std::string key = q.projective_key();
        if (seen.insert(key).second) orbit.members.push_back(std::move(q));
      }
      orbit.group = "Frobenius^" + std::to_string(p.extension_degree());
      break;
    }
  }
  return orbit;
}

MonomialCurve make_monomial_curve(std::vector<long> exponents,
                                  std::vector<CyclotomicElement> zetas) {
  if (exponents.size() < 2 || exponents[0] != 0) {
    throw DomainError("MonomialCurve: exponents must start at 0 and have length >= 2");
  }
  for (std::size_t i = 1; i < exponents.size(); ++i) {
    if (exponents[i] <= exponents[i - 1]) {
      throw DomainError("MonomialCurve: exponents must be strictly increasing");
    }
  }
  if (zetas.size() + 1 != exponents.size()) {
    throw DomainError("MonomialCurve: need one torsion coordinate per nonzero exponent");
  }
  MonomialCurve c;
  c.ambient = static_cast<int>(exponents.size()) - 1;
  c.exponents = std::move(exponents);
  c.conductor = zetas.empty() ? 1 : zetas[0].conductor();
  c.zetas = std::move(zetas);
  for (const auto& z : c.zetas) {
    if (!z.is_root_of_unity()) throw DomainError("MonomialCurve: translate must be torsion");
    if (z.conductor() != c.conductor) {
      throw DomainError("MonomialCurve: translate coordinates must share one conductor");
    }
  }
  return c;
}

MonomialCurve make_torsion_translate(std::vector<long> exponents, long conductor,
                                     const std::vector<long>& powers) {
  auto ctx = CyclotomicContext::get(conductor);
  std::vector<CyclotomicElement> zetas;
  const std::size_t n = exponents.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    long e = powers.empty() ? 1 : powers[i % powers.size()];
    zetas.push_back(CyclotomicElement::root_of_unity(ctx, e));
  }
  return make_monomial_curve(std::move(exponents), std::move(zetas));
}

ProjectivePoint MonomialCurve::point_at_torsion(long m, long j) const {
  long big = std::lcm(m, conductor);
  auto ctx = CyclotomicContext::get(big);
  std::vector<CyclotomicElement> coords;
  coords.push_back(CyclotomicElement::one(ctx));
  for (int i = 1; i <= ambient; ++i) {
    // zeta_i * t0^(a_i) with t0 = zeta_m^j
    CyclotomicElement t_pow = CyclotomicElement::root_of_unity(
        ctx, ((big / m) * j % big) * (exponents[static_cast<std::size_t>(i)] % big) % big);
    CyclotomicElement zi = lift_to_conductor(zetas[static_cast<std::size_t>(i - 1)], big);
    coords.push_back(zi * t_pow);
  }
  return ProjectivePoint::cyclotomic(std::move(coords));
}

std::string MonomialCurve::to_string() const {
  std::ostringstream os;
  os << "curve a=(";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) os << ",";
    os << exponents[i];
  }
  os << ") N=" << conductor;
  return os.str();
}

std::vector<MonomialCurve> curve_galois_orbit(const MonomialCurve& c) {
  auto ctx = CyclotomicContext::get(c.conductor);
  std::vector<MonomialCurve> out;
  std::set<std::string> seen;
  for (long k : ctx->units()) {
    MonomialCurve conj = c;
    std::ostringstream key;
    for (auto& z : conj.zetas) {
      z = z.conjugate(k);
      key << z.key() << "|";
    }
    if (seen.insert(key.str()).second) out.push_back(std::move(conj));
  }
  return out;
}

std::vector<double> curve_coordinate_profile(const MonomialCurve& c, double r) {
  if (!(r > 0)) throw DomainError("curve_coordinate_profile: radius must be positive");
  std::vector<double> out;
  out.reserve(c.exponents.size());
  for (long a : c.exponents) out.push_back(std::pow(r, static_cast<double>(a)));
  return out;
}

Int component_degree(const CycleComponent& comp) {
  if (std::holds_alternative<GaloisOrbit>(comp)) {
    return Int(std::get<GaloisOrbit>(comp).size());
  }
  return Int(std::get<MonomialCurve>(comp).degree());
}

Int EffectiveCycle::degree() const {
  Int d = 0;
  for (const auto& piece : pieces) d += piece.multiplicity * component_degree(piece.component);
  return d;
}

EffectiveCycle EffectiveCycle::of_orbit(GaloisOrbit o, Int mult) {
  EffectiveCycle z;
  z.dim = 0;
  z.label = "orbit " + o.representative.to_string();
  z.pieces.push_back({std::move(mult), std::move(o)});
  return z;
}

EffectiveCycle EffectiveCycle::of_curve_cycle(const MonomialCurve& c) {
  EffectiveCycle z;
  z.dim = 1;
  z.label = c.to_string() + " (Galois cycle)";
  for (auto& conj : curve_galois_orbit(c)) {
    z.pieces.push_back({Int(1), std::move(conj)});
  }
  return z;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip_parens(const std::string& s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ConfigError("point grammar: expected parenthesized list, got '" + s + "'");
  }
  return s.substr(1, s.size() - 2);
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw ConfigError("point grammar: empty rational");
  try {
    Rat r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ConfigError("point grammar: bad rational '" + s + "'");
  }
}

}  // namespace

ProjectivePoint parse_point(const std::string& text) {
  if (text.rfind("rat:", 0) == 0) {
    auto items = split(strip_parens(text.substr(4)), ',');
    std::vector<Int> coords;
    for (const auto& it : items) {
      Rat r = parse_rat(it);
      if (r.get_den() != 1) throw ConfigError("point grammar: rational coordinates must be integers");
      coords.push_back(r.get_num());
    }
    return ProjectivePoint::rational(std::move(coords));
  }
  if (text.rfind("cyc:", 0) == 0) {
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("point grammar: cyc:N:(...) expected");
    long n = std::stol(rest.substr(0, colon));
    auto ctx = CyclotomicContext::get(n);
    auto polys = split(strip_parens(rest.substr(colon + 1)), ';');
    std::vector<CyclotomicElement> coords;
    for (const auto& poly : polys) {
      std::vector<Rat> c;
      for (const auto& it : split(poly, ',')) c.push_back(parse_rat(it));
      if (static_cast<long>(c.size()) > ctx->degree()) {
        throw ConfigError("point grammar: coefficient list longer than phi(N)");
      }
      coords.emplace_back(ctx, std::move(c));
    }
    return ProjectivePoint::cyclotomic(std::move(coords));
  }
  if (text.rfind("ff:", 0) == 0) {
    auto parts = split(text.substr(3), ':');
    if (parts.size() != 3) throw ConfigError("point grammar: ff:q:m:(...) expected");
    std::uint64_t q = std::stoull(parts[0]);
    int m = std::stoi(parts[1]);
    // q = p^e with p prime
    std::uint64_t p = q;
    int e = 1;
    for (std::uint64_t cand = 2; cand * cand <= q; ++cand) {
      if (q % cand == 0) {
        p = cand;
        e = 0;
        std::uint64_t acc = 1;
        while (acc < q) {
          acc *= cand;
          ++e;
        }
        if (acc != q) throw ConfigError("point grammar: q must be a prime power");
        break;
      }
    }
    auto ctx = FqContext::get(p, e * m);
    auto polys = split(strip_parens(parts[2]), ';');
    std::vector<FqPoly> coords;
    for (const auto& poly : polys) {
      std::vector<long> c;
      for (const auto& it : split(poly, ',')) c.push_back(std::stol(it));
      coords.push_back(FqPoly::from_ints(ctx, c));
    }
    return ProjectivePoint::function_field(q, m, std::move(coords));
  }
  throw ConfigError("point grammar: expected rat:/cyc:/ff: prefix");
}

}  // namespace adelab
