#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adelab/cyclotomic.hpp"
#include "adelab/fq_poly.hpp"
#include "adelab/hnf.hpp"
#include "adelab/numeric.hpp"

namespace adelab {

enum class CoordField { Rational, Cyclotomic, FunctionField };

// A point of projective space with exact coordinates: coprime integers,
// integral cyclotomic numbers, or coprime polynomials over a constant-field
// extension F_{q^m} of the base F_q(t).
class ProjectivePoint {
 public:
  ProjectivePoint() = default;  // empty; assign before use

  static ProjectivePoint rational(std::vector<Int> coords);
  static ProjectivePoint rational(std::initializer_list<long> coords);
  // denominators are cleared; the (possibly non-principal) content ideal is
  // kept with the coordinates rather than divided out
  static ProjectivePoint cyclotomic(std::vector<CyclotomicElement> coords);
  // q = size of the base constant field, m = extension degree; coordinates
  // live in F_{q^m}[t] and are divided by their gcd
  static ProjectivePoint function_field(std::uint64_t q, int m, std::vector<FqPoly> coords);

  CoordField field() const { return field_; }
  int ambient_dim() const;  // n for a point of P^n

  const std::vector<Int>& rational_coords() const { return rat_; }
  const std::vector<CyclotomicElement>& cyclotomic_coords() const { return cyc_; }
  const std::vector<FqPoly>& ff_coords() const { return ff_; }
  long conductor() const;          // Cyclotomic only
  std::uint64_t base_q() const { return ff_q_; }
  int extension_degree() const { return ff_m_; }

  // Norm of the content ideal of cyclotomic coordinates (1 for the other
  // coordinate types, whose constructors normalize to content 1).
  Int content_norm() const;

  // Galois conjugate: zeta -> zeta^k for cyclotomic points, coefficientwise
  // x -> x^(q^i) for function-field points; identity on rational points.
  ProjectivePoint conjugate(long k) const;

  // Projective canonical form key (first nonzero coordinate scaled to 1).
  std::string projective_key() const;
  std::string to_string() const;

 private:
  CoordField field_ = CoordField::Rational;
  std::vector<Int> rat_;
  std::vector<CyclotomicElement> cyc_;
  std::vector<FqPoly> ff_;
  std::uint64_t ff_q_ = 0;
  int ff_m_ = 1;
};

struct GaloisOrbit {
  ProjectivePoint representative;
  std::vector<ProjectivePoint> members;  // deduplicated, conjugation exponent ascending
  std::string group;                     // acting group description
  long size() const { return static_cast<long>(members.size()); }
};

GaloisOrbit galois_orbit(const ProjectivePoint& p);

// t -> (1 : z_1 t^(a_1) : ... : z_n t^(a_n)) with strictly increasing
// exponents a_0 = 0 < a_1 < ... < a_n and torsion translate z_i.
struct MonomialCurve {
  int ambient = 1;
  std::vector<long> exponents;              // size ambient+1, exponents[0] == 0
  std::vector<CyclotomicElement> zetas;     // size ambient, roots of unity
  long conductor = 1;

  long degree() const { return exponents.back(); }
  // the point param(t0) for a root of unity t0 = zeta_M^j, as a cyclotomic point
  ProjectivePoint point_at_torsion(long m, long j) const;
  std::string to_string() const;
};

MonomialCurve make_monomial_curve(std::vector<long> exponents,
                                  std::vector<CyclotomicElement> zetas);
// translate with all coordinates zeta_N^(powers[i]); powers default to all 1
MonomialCurve make_torsion_translate(std::vector<long> exponents, long conductor,
                                     const std::vector<long>& powers = {});

// conjugate curves under zeta -> zeta^k, deduplicated
std::vector<MonomialCurve> curve_galois_orbit(const MonomialCurve& c);

// radial coordinate magnitudes (r^(a_0), ..., r^(a_n)); torsion factors have
// modulus one and drop out
std::vector<double> curve_coordinate_profile(const MonomialCurve& c, double r);

using CycleComponent = std::variant<GaloisOrbit, MonomialCurve>;

struct EffectiveCycle {
  int dim = 0;  // 0 or 1
  struct Piece {
    Int multiplicity;
    CycleComponent component;
  };
  std::vector<Piece> pieces;
  std::string label;

  Int degree() const;
  static EffectiveCycle of_orbit(GaloisOrbit o, Int mult = Int(1));
  static EffectiveCycle of_curve_cycle(const MonomialCurve& c);  // Galois cycle
};

Int component_degree(const CycleComponent& comp);

// CLI point grammar: rat:(...), cyc:N:(...), ff:q:m:(...)
ProjectivePoint parse_point(const std::string& text);

}  // namespace adelab
