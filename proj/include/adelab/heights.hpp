#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelab/metrics.hpp"
#include "adelab/points.hpp"
#include "adelab/quadrature.hpp"

namespace adelab {

// A global height split into its exact finite-place part (rational
// combinations of logs of integers) and its archimedean part.
struct HeightValue {
  double total = 0.0;
  std::vector<LogTerm> finite;
  double archimedean = 0.0;
  std::string trace;

  double finite_value() const { return log_terms_value(finite); }
  bool exact_zero() const { return finite.empty() && archimedean == 0.0; }

  static HeightValue make(std::vector<LogTerm> finite, double arch, std::string trace);
};

struct QuadratureConfig {
  int radial_order = 64;    // Gauss-Legendre order per radial panel
  int radial_panels = 16;   // panels per half-line
  int angular_order = 256;  // uniform angular nodes
  double tolerance = 1e-6;  // agreement required between successive orders
  double tail_mass = 1e-9;  // radial truncation target
};

// Global height of the closed point underlying a Galois orbit: archimedean
// conjugate average of the metric aggregate plus the exact finite part
// (content ideal for cyclotomic points, degree bookkeeping over F_q(t)).
// Section-free: the product formula removes the section's contribution.
HeightValue height_point(const MetricFamily& m, const GaloisOrbit& orbit);

// h(P^n) under the Fubini-Study metric: (n+1)/2 * sum_{j=2}^{n+1} 1/j.
Rat fs_height_projective_space_exact(int n);
double fs_height_projective_space(int n);
// normalized variant: divide by (dim+1) * deg = (n+1)
Rat fs_normalized_height_projective_space_exact(int n);

// Height of a torsion-translated monomial curve.  Canonical: exactly zero
// (the curve is preperiodic under the power maps).  Fubini-Study: the
// canonical value plus the archimedean correction
//   deg/2 * log(n+1) + int (psi(u) - max(a_n u, 0)) psi''(u) du,
// a 1-D radial integral since |zeta_i| = 1.  Perturbed: quadratic response
// in t with the linear coefficient 2 t n_v int f dmu.
HeightValue curve_height(const MetricFamily& m, const MonomialCurve& c,
                         const QuadratureConfig& quad = {});

// int f d(c_1 ∧ delta_C) at the archimedean place; total mass = deg(C).
double curve_integral(const MetricFamily& m, const MonomialCurve& c,
                      const ElementaryFunction& f, const QuadratureConfig& quad = {});

// int_C f dd^c g = -(1/2pi) int (f_u g_u + f_th g_th) du dth over the
// parametrizing cylinder; the quadratic term of perturbed curve heights.
double curve_energy(const MonomialCurve& c, const ElementaryFunction& f,
                    const ElementaryFunction& g, const QuadratureConfig& quad = {});

// div(s) . C for the supported section shapes (monomials and binomials with
// unit coefficients): multiplicities at t = 0 and t = infinity read off the
// exponent gaps, plus simple torsion roots for binomials.
struct BoundaryCycle {
  std::vector<std::pair<Int, ProjectivePoint>> points;  // (multiplicity, point)
  Int degree() const;
};
BoundaryCycle curve_section_boundary(const MonomialCurve& c, const SectionSpec& s);

// I(Y, s) = h(Y) - h(div(s).Y)/deg(s); equals h(Y) for points.
double correcting_integral(const MetricFamily& m, const GaloisOrbit& orbit,
                           const SectionSpec& s, const QuadratureConfig& quad = {});
double correcting_integral(const MetricFamily& m, const MonomialCurve& c, const SectionSpec& s,
                           const QuadratureConfig& quad = {});

// Exact vanishing at one point.
bool section_vanishes_at(const SectionSpec& s, const ProjectivePoint& p);
// Exact identity tests on components: an orbit meets the divisor when some
// conjugate does; a curve lies inside it when the pullback is identically
// zero.
bool section_vanishes_on(const SectionSpec& s, const GaloisOrbit& orbit);
bool section_vanishes_on(const SectionSpec& s, const MonomialCurve& c);

class SectionDictionary {
 public:
  static SectionDictionary coordinates(int ambient);
  // coordinates plus the degree-2 binomials x_i x_j - zeta x_k x_l with
  // root-of-unity coefficients of the given conductor
  static SectionDictionary with_binomials(int ambient, long conductor);

  const std::vector<SectionSpec>& sections() const { return sections_; }
  std::string describe() const { return label_; }

 private:
  std::vector<SectionSpec> sections_;
  std::string label_;
};

struct DictionaryConstant {
  double value = 0.0;
  bool analytic = true;  // false when any sup bound came from a flagged estimate
  std::string note;
};

// min over dictionary sections of -sum_v n_v (1/deg s) log sup ||s||_v.
// Sup norms are analytic for the supported section shapes; overestimates of
// a sup only lower the constant, which keeps the bound direction valid.
DictionaryConstant dictionary_lower_constant(const MetricFamily& m, const SectionDictionary& d);

struct SmallnessResult {
  double value = 0.0;
  bool dictionary_lower_bound = true;  // under-approximates the sup over all sections
  std::string trace;
};

// (1/deg Z) sum_i a_i max over proper dictionary sections of I(Y_i, s),
// components expanded over their Galois conjugates.
SmallnessResult smallness_functional(const MetricFamily& m, const EffectiveCycle& z,
                                     const SectionDictionary& d,
                                     const QuadratureConfig& quad = {});

struct MinimaCandidate {
  std::string label;
  double functional_value = 0.0;  // dictionary-sup value of the component
  double degree = 1.0;
};

// members with value <= eta * degree; monotone in eta
std::vector<MinimaCandidate> minima_filter(const std::vector<MinimaCandidate>& candidates,
                                           double eta);

// degree fraction of each member lying inside the union of the divisors;
// membership decided exactly (cyclotomic evaluation / polynomial identity).
std::vector<double> genericity_check(const std::vector<EffectiveCycle>& net,
                                     const std::vector<SectionSpec>& hypersurfaces);

struct EssentialMinimumReport {
  double estimate = 0.0;  // liminf proxy: minimum over members past the warm-up
  std::vector<std::string> member_labels;
  std::vector<double> member_values;
  std::vector<double> genericity_fractions;
  bool dictionary_lower_bound = true;
  std::string caveats;
};

// Running liminf of the smallness functional along a net of cycles.  The
// dictionary sup under-approximates the true sup and the net is finite, so
// both caveat directions are recorded in the report.
EssentialMinimumReport essential_minimum_upper_estimate(
    const MetricFamily& m, const std::vector<EffectiveCycle>& net, const SectionDictionary& d,
    const std::vector<SectionSpec>& avoid_hypersurfaces, int warmup = 0,
    const QuadratureConfig& quad = {});

struct ZhangReport {
  bool pass = false;
  double estimate = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  std::string verdict;  // "PASS" or "dictionary bound insufficient"
};

// PASS iff estimate >= reference - tol.  A failure is reported as an
// insufficient dictionary bound, never as a violation of the inequality,
// since the dictionary sup only under-approximates.
ZhangReport zhang_check(double estimate, double reference, double tol);

}  // namespace adelab
