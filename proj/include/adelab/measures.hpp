#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "adelab/heights.hpp"
#include "adelab/metrics.hpp"
#include "adelab/points.hpp"

namespace adelab {

// Weighted archimedean sample measure; sample points are unit vectors.
struct EmpiricalMeasure {
  struct Atom {
    double weight = 0.0;
    Eigen::VectorXcd point;
  };
  std::vector<Atom> atoms;
  double mass = 0.0;
  std::string provenance;

  double total_weight() const;
};

// Equal weights 1/|O| at the k=1 embedding of each orbit member; mass 1.
EmpiricalMeasure atomic_measure(const GaloisOrbit& orbit);

// The measure c_1 ∧ delta_C at the archimedean place; total mass deg(C).
// Canonical: deg(C) times the pushforward of the uniform circle measure.
// Fubini-Study: per-annulus masses from the closed-form radial profile psi'
// against a uniform angular grid.  radial/angular orders below 8 are
// rejected; a mass defect beyond 1e-6 raises NumericError.
EmpiricalMeasure curve_measure(const MetricFamily& m, const MonomialCurve& c,
                               int radial_order = 64, int angular_order = 256,
                               double tail_mass = 1e-9);

// sum_j w_j prod_i (x_{j,i}/|x_{j,i}|)^(a_i) / mass.  In strict mode a
// vanishing coordinate raises; otherwise such atoms contribute zero and the
// skipped weight is reported through off_torus_weight.
std::complex<double> character_moment(const EmpiricalMeasure& mu, const std::vector<long>& a,
                                      bool strict = true, double* off_torus_weight = nullptr);

// Exact Ramanujan sum c_N(a) = mu(N/g) phi(N) / phi(N/g) with g = gcd(a, N).
long ramanujan_sum(long n, long a);

}  // namespace adelab
