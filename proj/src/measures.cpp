#include "adelab/measures.hpp"

#include <cmath>
#include <numeric>

#include "adelab/factor.hpp"
#include "adelab/quadrature.hpp"

namespace adelab {

double EmpiricalMeasure::total_weight() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

EmpiricalMeasure atomic_measure(const GaloisOrbit& orbit) {
  EmpiricalMeasure mu;
  mu.mass = 1.0;
  mu.provenance = "atomic orbit, " + std::to_string(orbit.size()) + " conjugates";
  const double w = 1.0 / static_cast<double>(orbit.size());
  for (const auto& member : orbit.members) {
    Eigen::VectorXcd x;
    switch (member.field()) {
      case CoordField::Rational: {
        const auto& c = member.rational_coords();
        x.resize(static_cast<Eigen::Index>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) x[static_cast<Eigen::Index>(i)] = c[i].get_d();
        break;
      }
      case CoordField::Cyclotomic: {
        const auto& c = member.cyclotomic_coords();
        x.resize(static_cast<Eigen::Index>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) x[static_cast<Eigen::Index>(i)] = c[i].embed(1);
        break;
      }
      case CoordField::FunctionField:
        throw DomainError("atomic_measure: function-field points have no archimedean embedding");
    }
    x.normalize();
    mu.atoms.push_back({w, std::move(x)});
  }
  return mu;
}

EmpiricalMeasure curve_measure(const MetricFamily& m, const MonomialCurve& c, int radial_order,
                               int angular_order, double tail_mass) {
  if (radial_order < 8 || angular_order < 8) {
    throw ConfigError("curve_measure: quadrature orders must be at least 8");
  }
  const double deg = static_cast<double>(c.degree());
  EmpiricalMeasure mu;
  mu.mass = deg;

  std::vector<std::complex<double>> phases(static_cast<std::size_t>(c.ambient));
  for (int i = 1; i <= c.ambient; ++i) {
    phases[static_cast<std::size_t>(i - 1)] = c.zetas[static_cast<std::size_t>(i - 1)].embed(1);
  }
  auto sample = [&](double u, double theta) {
    Eigen::VectorXcd x(c.ambient + 1);
    x[0] = 1.0;
    for (int i = 1; i <= c.ambient; ++i) {
      double a = static_cast<double>(c.exponents[static_cast<std::size_t>(i)]);
      x[i] = phases[static_cast<std::size_t>(i - 1)] *
             std::exp(std::complex<double>(a * u, a * theta));
    }
    x.normalize();
    return x;
  };

  switch (m.kind()) {
    case MetricFamily::Kind::Canonical: {
      mu.provenance = "canonical curve measure (uniform circle pushforward)";
      const double w = deg / angular_order;
      for (int j = 0; j < angular_order; ++j) {
        mu.atoms.push_back({w, sample(0.0, 2.0 * M_PI * j / angular_order)});
      }
      break;
    }
    case MetricFamily::Kind::FubiniStudy: {
      mu.provenance = "fs curve measure (closed-form radial profile)";
      // keep the truncation inside the range where annulus masses stay
      // positive in double precision
      const double cutoff = fs_radial_cutoff(c.exponents, std::max(tail_mass * 1e-3, 1e-12));
      const int cells = radial_order;
      const double du = 2.0 * cutoff / cells;
      for (int r = 0; r < cells; ++r) {
        double u_lo = -cutoff + r * du;
        double u_hi = u_lo + du;
        // exact annulus mass psi'(u_hi) - psi'(u_lo); the two half-line
        // tails are folded into the extreme cells so the total is deg(C)
        double cell = fs_radial_psi_d1(c.exponents, u_hi) - fs_radial_psi_d1(c.exponents, u_lo);
        if (r == 0) cell += fs_radial_psi_d1(c.exponents, u_lo);
        if (r == cells - 1) cell += deg - fs_radial_psi_d1(c.exponents, u_hi);
        if (!(cell > 0)) continue;  // saturated tail cell carries no mass
        double u_mid = 0.5 * (u_lo + u_hi);
        double w = cell / angular_order;
        for (int j = 0; j < angular_order; ++j) {
          mu.atoms.push_back({w, sample(u_mid, 2.0 * M_PI * j / angular_order)});
        }
      }
      break;
    }
    case MetricFamily::Kind::Perturbed:
      throw DomainError("curve_measure: sample-based measures cover canonical and fs only");
  }

  double defect = std::fabs(mu.total_weight() - deg);
  if (defect > 1e-6) {
    throw NumericError("curve_measure: mass defect beyond tolerance", mu.total_weight(), deg);
  }
  return mu;
}

std::complex<double> character_moment(const EmpiricalMeasure& mu, const std::vector<long>& a,
                                      bool strict, double* off_torus_weight) {
  std::complex<double> acc(0, 0);
  double skipped = 0.0;
  for (const auto& atom : mu.atoms) {
    std::complex<double> chi(1, 0);
    bool off = false;
    for (std::size_t i = 0; i < a.size() && i < static_cast<std::size_t>(atom.point.size()); ++i) {
      if (a[i] == 0) continue;
      std::complex<double> z = atom.point[static_cast<Eigen::Index>(i)];
      double mag = std::abs(z);
      if (!(mag > 0)) {
        if (strict) {
          throw DomainError("character_moment: vanishing coordinate in strict mode");
        }
        off = true;
        break;
      }
      chi *= std::polar(1.0, std::arg(z) * static_cast<double>(a[i]));
    }
    if (off) {
      skipped += atom.weight;
      continue;
    }
    acc += atom.weight * chi;
  }
  if (off_torus_weight) *off_torus_weight = skipped;
  return acc / mu.mass;
}

long ramanujan_sum(long n, long a) {
  if (n <= 0) throw DomainError("ramanujan_sum: modulus must be positive");
  long am = ((a % n) + n) % n;
  long g = std::gcd(am == 0 ? n : am, n);
  long m = n / g;
  int mu = moebius(m);
  if (mu == 0) return 0;
  return mu * (euler_phi(n) / euler_phi(m));
}

}  // namespace adelab
