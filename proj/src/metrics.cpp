#include "adelab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace adelab {

MetricFamily MetricFamily::canonical(int ambient) {
  MetricFamily m;
  m.kind_ = Kind::Canonical;
  m.ambient_ = ambient;
  return m;
}

MetricFamily MetricFamily::fubini_study(int ambient) {
  MetricFamily m;
  m.kind_ = Kind::FubiniStudy;
  m.ambient_ = ambient;
  return m;
}

MetricFamily MetricFamily::perturbed(MetricFamily base, Place v0, ElementaryFunction f, Rat t) {
  if (!v0.is_archimedean()) {
    throw DomainError("MetricFamily: perturbations are archimedean only");
  }
  MetricFamily m;
  m.kind_ = Kind::Perturbed;
  m.ambient_ = base.ambient();
  m.base_ = std::make_shared<const MetricFamily>(std::move(base));
  m.place_ = std::move(v0);
  m.f_ = std::move(f);
  t.canonicalize();
  m.t_ = std::move(t);
  return m;
}

MetricFamily::Kind MetricFamily::base_kind() const {
  const MetricFamily* m = this;
  while (m->kind_ == Kind::Perturbed) m = m->base_.get();
  return m->kind_;
}

double MetricFamily::arch_aggregate_log(const Eigen::VectorXcd& x) const {
  switch (kind_) {
    case Kind::Canonical: {
      double mx = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) mx = std::max(mx, std::abs(x[i]));
      if (!(mx > 0)) throw DomainError("arch_aggregate_log: zero vector");
      return std::log(mx);
    }
    case Kind::FubiniStudy: {
      double n = x.norm();
      if (!(n > 0)) throw DomainError("arch_aggregate_log: zero vector");
      return std::log(n);
    }
    case Kind::Perturbed:
      return base_->arch_aggregate_log(x) + t_.get_d() * f_.eval(x);
  }
  return 0.0;
}

std::string MetricFamily::describe() const {
  switch (kind_) {
    case Kind::Canonical:
      return "canonical";
    case Kind::FubiniStudy:
      return "fs";
    case Kind::Perturbed: {
      std::ostringstream os;
      os << "perturbed(" << base_->describe() << "; " << f_.describe() << "; t="
         << t_.get_str() << ")";
      return os.str();
    }
  }
  return "?";
}

SectionSpec SectionSpec::monomial(int ambient, std::vector<long> exponents) {
  if (static_cast<int>(exponents.size()) != ambient + 1) {
    throw DomainError("SectionSpec: exponent list must have length ambient+1");
  }
  long deg = 0;
  for (long e : exponents) {
    if (e < 0) throw DomainError("SectionSpec: negative exponent");
    deg += e;
  }
  if (deg < 1) throw DomainError("SectionSpec: degree must be at least 1");
  SectionSpec s;
  s.ambient_ = ambient;
  s.degree_ = deg;
  Term t;
  t.coeff = CyclotomicElement::one(CyclotomicContext::get(1));
  t.exponents = std::move(exponents);
  s.terms_.push_back(std::move(t));
  return s;
}

SectionSpec SectionSpec::coordinate(int ambient, int i) {
  std::vector<long> e(static_cast<std::size_t>(ambient) + 1, 0);
  e[static_cast<std::size_t>(i)] = 1;
  return monomial(ambient, std::move(e));
}

SectionSpec SectionSpec::combination(int ambient, std::vector<Term> terms) {
  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [](const Term& t) { return t.coeff.is_zero(); }),
              terms.end());
  if (terms.empty()) throw DomainError("SectionSpec: no terms");
  SectionSpec s;
  s.ambient_ = ambient;
  long deg = -1;
  long conductor = 1;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != ambient + 1) {
      throw DomainError("SectionSpec: exponent list must have length ambient+1");
    }
    long d = std::accumulate(t.exponents.begin(), t.exponents.end(), 0L);
    if (deg < 0) deg = d;
    if (d != deg) throw DomainError("SectionSpec: terms must share one degree");
    if (!t.coeff.is_integral()) throw DomainError("SectionSpec: coefficients must be integral");
    conductor = std::lcm(conductor, t.coeff.conductor());
  }
  // put all coefficients in one cyclotomic field
  for (auto& t : terms) {
    if (t.coeff.conductor() != conductor) t.coeff = lift_to_conductor(t.coeff, conductor);
  }
  bool all_zero = std::all_of(terms.begin(), terms.end(),
                              [](const Term& t) { return t.coeff.is_zero(); });
  if (all_zero) throw DomainError("SectionSpec: identically zero section");
  s.degree_ = deg;
  s.terms_ = std::move(terms);
  return s;
}

long SectionSpec::coefficient_conductor() const { return terms_[0].coeff.conductor(); }

std::complex<double> SectionSpec::eval_embedded(const Eigen::VectorXcd& x, long embed_k) const {
  std::complex<double> acc(0, 0);
  for (const auto& t : terms_) {
    std::complex<double> m = t.coeff.embed(embed_k);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      for (long e = 0; e < t.exponents[i]; ++e) m *= x[static_cast<Eigen::Index>(i)];
    }
    acc += m;
  }
  return acc;
}

Int SectionSpec::eval_rational(const std::vector<Int>& coords) const {
  Int acc = 0;
  for (const auto& t : terms_) {
    if (!t.coeff.is_rational()) {
      throw DomainError("SectionSpec: cyclotomic coefficients on a rational point");
    }
    Rat c = t.coeff.rational_part();
    if (c.get_den() != 1) throw DomainError("SectionSpec: non-integral coefficient");
    Int m = c.get_num();
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      for (long e = 0; e < t.exponents[i]; ++e) m *= coords[i];
    }
    acc += m;
  }
  return acc;
}

CyclotomicElement SectionSpec::eval_cyclotomic(const std::vector<CyclotomicElement>& coords) const {
  long n = std::lcm(coords[0].conductor(), coefficient_conductor());
  auto ctx = CyclotomicContext::get(n);
  CyclotomicElement acc = CyclotomicElement::zero(ctx);
  for (const auto& t : terms_) {
    CyclotomicElement m = lift_to_conductor(t.coeff, n);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      CyclotomicElement c = lift_to_conductor(coords[i], n);
      m = m * c.pow(t.exponents[i]);
    }
    acc = acc + m;
  }
  return acc;
}

FqPoly SectionSpec::eval_ff(const std::vector<FqPoly>& coords) const {
  auto ctx = coords[0].ctx();
  FqPoly acc = FqPoly::zero(ctx);
  for (const auto& t : terms_) {
    if (!t.coeff.is_rational()) {
      throw DomainError("SectionSpec: cyclotomic coefficients on a function-field point");
    }
    Rat c = t.coeff.rational_part();
    if (c.get_den() != 1) throw DomainError("SectionSpec: non-integral coefficient");
    long cl = static_cast<long>(mpz_fdiv_ui(c.get_num().get_mpz_t(), ctx->p()));
    FqPoly m = FqPoly::constant(ctx, Fq(ctx, static_cast<std::uint64_t>(cl)));
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      for (long e = 0; e < t.exponents[i]; ++e) m = m * coords[i];
    }
    acc = acc + m;
  }
  return acc;
}

std::string SectionSpec::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool unit = t.coeff == CyclotomicElement::one(t.coeff.ctx());
    if (!unit) os << "(" << t.coeff.to_string() << ")*";
    bool any = false;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (any) os << "*";
      any = true;
      os << "x" << i;
      if (t.exponents[i] > 1) os << "^" << t.exponents[i];
    }
    if (!any) os << "1";
  }
  return os.str();
}

SectionSpec SectionSpec::parse(const std::string& text, int ambient) {
  auto split = [](const std::string& s, char sep) {
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
  };
  if (text.rfind("mono:", 0) == 0) {
    std::vector<long> exps;
    for (const auto& it : split(text.substr(5), ',')) exps.push_back(std::stol(it));
    return monomial(ambient, std::move(exps));
  }
  if (text.rfind("lin:", 0) == 0) {
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw ConfigError("section grammar: lin:deg:(...) expected");
    long deg = std::stol(rest.substr(0, colon));
    auto body = rest.substr(colon + 1);
    std::vector<Term> terms;
    auto c1 = CyclotomicContext::get(1);
    for (const auto& part : split(body, ';')) {
      if (part.size() < 2 || part.front() != '(' || part.back() != ')') {
        throw ConfigError("section grammar: expected (c,e0,...,en)");
      }
      auto items = split(part.substr(1, part.size() - 2), ',');
      if (static_cast<int>(items.size()) != ambient + 2) {
        throw ConfigError("section grammar: expected coefficient plus ambient+1 exponents");
      }
      Term t;
      t.coeff = CyclotomicElement::from_rational(c1, Rat(std::stol(items[0])));
      for (std::size_t i = 1; i < items.size(); ++i) t.exponents.push_back(std::stol(items[i]));
      long d = std::accumulate(t.exponents.begin(), t.exponents.end(), 0L);
      if (d != deg) throw ConfigError("section grammar: term degree mismatch");
      terms.push_back(std::move(t));
    }
    return combination(ambient, std::move(terms));
  }
  throw ConfigError("section grammar: expected mono:/lin: prefix");
}

double archimedean_local_norm(const MetricFamily& m, const SectionSpec& s,
                              const Eigen::VectorXcd& x) {
  std::complex<double> val = s.eval_embedded(x);
  double av = std::abs(val);
  if (!(av > 0)) {
    throw DivisorMembershipError("archimedean_local_norm: section vanishes at the point");
  }
  return std::exp(std::log(av) - static_cast<double>(s.degree()) * m.arch_aggregate_log(x));
}

long finite_local_valuation(const Place& v, const SectionSpec& s, const ProjectivePoint& p) {
  switch (p.field()) {
    case CoordField::Rational: {
      if (v.kind() != PlaceKind::RationalPrime) {
        throw DomainError("finite_local_valuation: place/point field mismatch");
      }
      Int value = s.eval_rational(p.rational_coords());
      if (value == 0) {
        throw DivisorMembershipError("finite_local_valuation: section vanishes at the point");
      }
      long ord_val = 0;
      Int tmp = value;
      while (mpz_divisible_p(tmp.get_mpz_t(), v.prime().get_mpz_t())) {
        mpz_divexact(tmp.get_mpz_t(), tmp.get_mpz_t(), v.prime().get_mpz_t());
        ++ord_val;
      }
      long min_ord = 0;  // coprime coordinates: min_i ord = 0
      return ord_val - s.degree() * min_ord;
    }
    case CoordField::FunctionField: {
      FqPoly value = s.eval_ff(p.ff_coords());
      if (value.is_zero()) {
        throw DivisorMembershipError("finite_local_valuation: section vanishes at the point");
      }
      if (v.kind() == PlaceKind::FunctionFieldFinite) {
        long ord_val = 0;
        FqPoly tmp = value;
        while (true) {
          FqPoly q, r;
          fq_poly_divmod(tmp, v.uniformizer(), q, r);
          if (!r.is_zero()) break;
          tmp = q;
          ++ord_val;
        }
        return ord_val;  // coprime coordinates: min_i ord = 0
      }
      if (v.kind() == PlaceKind::FunctionFieldInfinity) {
        long ord_val = -value.degree();
        long min_ord = 0;
        for (const auto& c : p.ff_coords()) {
          if (!c.is_zero()) min_ord = std::min(min_ord, static_cast<long>(-c.degree()));
        }
        return ord_val - s.degree() * min_ord;
      }
      throw DomainError("finite_local_valuation: place/point field mismatch");
    }
    case CoordField::Cyclotomic:
      throw DomainError(
          "finite_local_valuation: finite places of cyclotomic fields are not enumerated; "
          "use the content-ideal aggregate");
  }
  throw DomainError("finite_local_valuation: unsupported point");
}

namespace {

// deterministic pseudo-random points on the unit sphere of C^(n+1)
Eigen::VectorXcd sphere_point(int dim, SplitMix64& rng) {
  Eigen::VectorXcd x(dim);
  for (int i = 0; i < dim; ++i) {
    // Box-Muller from uniform draws
    double u1 = (static_cast<double>(rng.next() >> 11) + 0.5) / 9007199254740992.0;
    double u2 = (static_cast<double>(rng.next() >> 11) + 0.5) / 9007199254740992.0;
    double r = std::sqrt(-2.0 * std::log(u1));
    x[i] = std::complex<double>(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
  }
  x.normalize();
  return x;
}

}  // namespace

MetricDistance metric_distance(const MetricFamily& m1, const MetricFamily& m2, const Place& v,
                               const DistanceGrid& grid) {
  MetricDistance out;
  if (!v.is_archimedean()) {
    // every metric family here agrees with the canonical one at finite places
    out.value = 0.0;
    out.analytic = true;
    out.note = "finite place: families coincide";
    return out;
  }
  // peel matching perturbation layers (difference of aggregates matters only)
  if (m1.base_kind() == m2.base_kind()) {
    // Perturbed vs its own base chain: collect the net t*f contributions
    // analytically when both sides decompose over the same base with exactly
    // bounded expression-class functions.
    // Single-layer case: Perturbed(M, v, f, t) vs M.
    if (m1.is_perturbed() && !m2.is_perturbed()) {
      const auto& f = m1.perturbation_f();
      auto b = f.bounds();
      if (f.is_expression_class() && b.exact &&
          metric_distance(m1.base(), m2, v, grid).value == 0.0) {
        double t = m1.perturbation_t().get_d();
        out.value = std::max(std::fabs(t * b.lo), std::fabs(t * b.hi));
        out.analytic = true;
        out.note = "perturbation magnitude |t| * sup|f|";
        return out;
      }
    }
    if (m2.is_perturbed() && !m1.is_perturbed()) {
      return metric_distance(m2, m1, v, grid);
    }
    if (!m1.is_perturbed() && !m2.is_perturbed()) {
      out.value = 0.0;
      out.analytic = true;
      out.note = "identical families";
      return out;
    }
  }
  if (!m1.is_perturbed() && !m2.is_perturbed() && m1.base_kind() != m2.base_kind()) {
    // |log(A_fs / A_can)| = (1/2) log (|x|^2 / max^2) peaks at the all-ones point
    out.value = 0.5 * std::log(static_cast<double>(m1.ambient() + 1));
    out.analytic = true;
    out.note = "fs/canonical aggregate ratio maximized at the balanced point";
    return out;
  }
  // grid estimate (certified lower bound of the sup)
  SplitMix64 rng(grid.seed);
  double best = 0.0;
  const int dim = m1.ambient() + 1;
  for (int it = 0; it < grid.samples; ++it) {
    Eigen::VectorXcd x = sphere_point(dim, rng);
    double d = std::fabs(m1.arch_aggregate_log(x) - m2.arch_aggregate_log(x));
    best = std::max(best, d);
  }
  // axis and balanced points
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
    x[i] = 1.0;
    best = std::max(best, std::fabs(m1.arch_aggregate_log(x) - m2.arch_aggregate_log(x)));
  }
  Eigen::VectorXcd ones = Eigen::VectorXcd::Constant(dim, std::complex<double>(1, 0));
  ones.normalize();
  best = std::max(best, std::fabs(m1.arch_aggregate_log(ones) - m2.arch_aggregate_log(ones)));
  out.value = best;
  out.lower_bound_only = true;
  out.note = "grid supremum estimate";
  return out;
}

}  // namespace adelab
