#pragma once

#include <functional>
#include <vector>

#include "adelab/numeric.hpp"

namespace adelab {

// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
  static const GaussLegendre& of_order(int n);
};

// integral over [a, b] with `panels` equal subintervals of GL order `order`
double integrate(const std::function<double(double)>& f, double a, double b, int order,
                 int panels = 1);

// Radial potential data of the Fubini-Study metric restricted to a monomial
// curve, in the variable u = log|t|:
//   psi(u)   = (1/2) log sum_i exp(2 a_i u)
//   psi'(u)  = sum a_i w_i            (softmax weights w_i)
//   psi''(u) = 2 (sum a_i^2 w_i - (sum a_i w_i)^2)
// psi' is the radial mass profile: the measure of { |t| <= e^u } is psi'(u).
double fs_radial_psi(const std::vector<long>& exps, double u);
double fs_radial_psi_d1(const std::vector<long>& exps, double u);
double fs_radial_psi_d2(const std::vector<long>& exps, double u);

// u beyond which both radial tails of psi'' carry mass below `tail_mass`
double fs_radial_cutoff(const std::vector<long>& exps, double tail_mass);

}  // namespace adelab
