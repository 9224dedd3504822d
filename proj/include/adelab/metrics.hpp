#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "adelab/adelic.hpp"
#include "adelab/elementary.hpp"
#include "adelab/points.hpp"

namespace adelab {

// Metrics on O(1) over P^n.  Canonical: |s(p)| / max_i |p_i|^deg at every
// place.  Fubini-Study: the same at finite places, |s(p)| / (sum |p_i|^2)^(deg/2)
// at archimedean ones.  Perturbed: base metric rescaled by e^(-t f) at a
// single archimedean place.
class MetricFamily {
 public:
  enum class Kind { Canonical, FubiniStudy, Perturbed };

  static MetricFamily canonical(int ambient);
  static MetricFamily fubini_study(int ambient);
  static MetricFamily perturbed(MetricFamily base, Place v0, ElementaryFunction f, Rat t);

  Kind kind() const { return kind_; }
  int ambient() const { return ambient_; }
  Kind base_kind() const;  // resolved through perturbation layers
  bool is_perturbed() const { return kind_ == Kind::Perturbed; }
  const MetricFamily& base() const { return *base_; }
  const Place& perturbation_place() const { return place_; }
  const ElementaryFunction& perturbation_f() const { return f_; }
  const Rat& perturbation_t() const { return t_; }

  // log of the degree-1 archimedean aggregate A(x), where the local norm of
  // a degree-d section is |s(x)| / A(x)^d; perturbation layers contribute
  // +t f(x) each.
  double arch_aggregate_log(const Eigen::VectorXcd& x) const;

  std::string describe() const;

 private:
  MetricFamily() = default;
  Kind kind_ = Kind::Canonical;
  int ambient_ = 1;
  std::shared_ptr<const MetricFamily> base_;
  Place place_;
  ElementaryFunction f_;
  Rat t_;
};

// A global section of O(deg): an integer or cyclotomic-integer combination
// of degree-deg monomials.
class SectionSpec {
 public:
  struct Term {
    CyclotomicElement coeff;     // integral
    std::vector<long> exponents; // size ambient+1, sum == degree
  };

  static SectionSpec monomial(int ambient, std::vector<long> exponents);
  static SectionSpec coordinate(int ambient, int i);
  static SectionSpec combination(int ambient, std::vector<Term> terms);

  int ambient() const { return ambient_; }
  long degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_monomial() const { return terms_.size() == 1; }
  long coefficient_conductor() const;

  std::complex<double> eval_embedded(const Eigen::VectorXcd& x, long embed_k = 1) const;
  Int eval_rational(const std::vector<Int>& coords) const;
  CyclotomicElement eval_cyclotomic(const std::vector<CyclotomicElement>& coords) const;
  FqPoly eval_ff(const std::vector<FqPoly>& coords) const;

  std::string describe() const;

  // grammar: mono:e0,e1,...,en  or  lin:deg:(c,e0,...,en);(c,e0,...,en);...
  static SectionSpec parse(const std::string& text, int ambient);

 private:
  int ambient_ = 1;
  long degree_ = 1;
  std::vector<Term> terms_;
};

// ||s(p)||_v at an archimedean place, p given by embedded coordinates.
double archimedean_local_norm(const MetricFamily& m, const SectionSpec& s,
                              const Eigen::VectorXcd& x);

// Exact valuation data at a finite place: ||s(p)||_v = base^(-v) with
// v = ord_v(s(p)) - deg(s) * min_i ord_v(p_i).  Rational and function-field
// points only; finite places of cyclotomic fields are handled in aggregate
// by the content ideal and are never enumerated.
long finite_local_valuation(const Place& v, const SectionSpec& s, const ProjectivePoint& p);

struct MetricDistance {
  double value = 0.0;
  bool analytic = false;          // closed-form value
  bool lower_bound_only = false;  // grid estimate
  std::string note;
};

struct DistanceGrid {
  int samples = 4096;
  std::uint64_t seed = 2024;
};

// sup over the place's analytic space of |log(||s||_1 / ||s||_2)|, for any
// section (the ratio is section-independent).
MetricDistance metric_distance(const MetricFamily& m1, const MetricFamily& m2, const Place& v,
                               const DistanceGrid& grid = {});

}  // namespace adelab
