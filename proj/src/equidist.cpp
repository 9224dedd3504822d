#include "adelab/equidist.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "adelab/factor.hpp"

namespace adelab {

void NetConfig::validate() const {
  if (conductors.empty()) throw ConfigError("net: empty conductor schedule");
  for (std::size_t i = 1; i < conductors.size(); ++i) {
    if (conductors[i] <= conductors[i - 1]) {
      throw ConfigError("net: conductor schedule must be strictly increasing");
    }
  }
  if (family == Family::TorsionMonomialCurves) {
    if (exponents.size() < 2 || exponents[0] != 0) {
      throw ConfigError("net: curve family needs exponents 0 = a_0 < a_1 < ...");
    }
  }
  if (ambient < 1) throw ConfigError("net: ambient dimension must be positive");
  for (const auto& h : avoid_hypersurfaces) {
    if (h.coefficient_conductor() != 1) {
      throw ConfigError("net: avoid-list sections must have integer coefficients");
    }
  }
}

std::string NetConfig::family_name() const {
  return family == Family::TorsionPoints ? "torsion-points" : "torsion-curves";
}

EffectiveCycle net_member(const NetConfig& cfg, long conductor) {
  cfg.validate();
  if (cfg.family == NetConfig::Family::TorsionPoints) {
    auto ctx = CyclotomicContext::get(conductor);
    std::vector<CyclotomicElement> coords;
    for (int i = 0; i <= cfg.ambient; ++i) {
      coords.push_back(CyclotomicElement::root_of_unity(ctx, i % conductor));
    }
    auto cycle = EffectiveCycle::of_orbit(galois_orbit(ProjectivePoint::cyclotomic(coords)));
    cycle.label = "torsion point N=" + std::to_string(conductor);
    return cycle;
  }
  auto cycle = EffectiveCycle::of_curve_cycle(make_torsion_translate(cfg.exponents, conductor));
  cycle.label = "torsion curve N=" + std::to_string(conductor);
  return cycle;
}

namespace {

struct MemberData {
  long conductor = 0;
  long orbit_size = 0;
  double degree = 0.0;
  double height = 0.0;
  double normalized_height = 0.0;
  double smallness = 0.0;
  double genericity_fraction = 0.0;
  std::vector<std::complex<double>> moments;
  std::vector<std::complex<double>> oracles;
};

// Exact vanishing test for an integer-coefficient section at the diagonal
// torsion point (1 : z : ... : z^n); membership is Galois-stable, so the
// representative decides the whole orbit.
bool section_vanishes_at_diagonal(const SectionSpec& s, long n_amb, long conductor) {
  auto ctx = CyclotomicContext::get(conductor);
  std::vector<Rat> acc(static_cast<std::size_t>(ctx->degree()));
  for (const auto& term : s.terms()) {
    long e = 0;
    for (long i = 0; i <= n_amb; ++i) {
      e += static_cast<long>(i % conductor) * term.exponents[static_cast<std::size_t>(i)];
    }
    ctx->accumulate_zeta_power(e, term.coeff.rational_part(), acc);
  }
  return std::all_of(acc.begin(), acc.end(), [](const Rat& r) { return r == 0; });
}

MemberData compute_point_member(const NetConfig& cfg, const MetricFamily& m,
                                const std::vector<std::vector<long>>& moments, long conductor) {
  MemberData out;
  out.conductor = conductor;
  const auto units = unit_group_mod(conductor);
  const long phi = static_cast<long>(units.size());
  const int n = cfg.ambient;
  // conjugates (1 : z^k : ... : z^(kn)) are pairwise distinct over the units
  out.orbit_size = phi;
  out.degree = static_cast<double>(phi);

  EmpiricalMeasure mu;
  mu.mass = 1.0;
  mu.provenance = "atomic torsion orbit";
  double arch = 0.0;
  const double w = 1.0 / static_cast<double>(phi);
  for (long k : units) {
    Eigen::VectorXcd x(n + 1);
    for (int i = 0; i <= n; ++i) {
      double ang = 2.0 * M_PI * static_cast<double>((static_cast<long>(i) * k) % conductor) /
                   static_cast<double>(conductor);
      x[i] = std::polar(1.0, ang);
    }
    arch += m.arch_aggregate_log(x);
    x.normalize();
    mu.atoms.push_back({w, std::move(x)});
  }
  arch /= static_cast<double>(phi);
  // the coordinate x_0 = 1 generates the unit content ideal, so the finite
  // part vanishes exactly
  out.height = arch;
  out.normalized_height = arch;
  // I(p, s) = h(p) for every proper section, and torsion coordinates never
  // vanish, so the dictionary value is the height itself
  out.smallness = arch;

  for (const auto& h : cfg.avoid_hypersurfaces) {
    if (section_vanishes_at_diagonal(h, n, conductor)) {
      out.genericity_fraction = 1.0;
      break;
    }
  }

  for (const auto& a : moments) {
    out.moments.push_back(character_moment(mu, a));
    long b = 0;
    for (std::size_t i = 1; i < a.size() && i <= static_cast<std::size_t>(n); ++i) {
      b += a[i] * static_cast<long>(i);
    }
    out.oracles.emplace_back(
        static_cast<double>(ramanujan_sum(conductor, b)) / static_cast<double>(phi), 0.0);
  }
  return out;
}

MemberData compute_curve_member(const NetConfig& cfg, const MetricFamily& m,
                                const std::vector<std::vector<long>>& moments, long conductor,
                                const QuadratureConfig& quad) {
  MemberData out;
  out.conductor = conductor;
  const auto units = unit_group_mod(conductor);
  const long phi = static_cast<long>(units.size());
  MonomialCurve rep = make_torsion_translate(cfg.exponents, conductor);
  const long an = rep.degree();
  // conjugate translates are distinct over the units
  out.orbit_size = phi;
  out.degree = static_cast<double>(phi * an);

  HeightValue h = curve_height(m, rep, quad);
  out.height = h.total;
  out.normalized_height = h.total / (2.0 * static_cast<double>(an));

  // Galois cycle smallness from the representative: the coordinate
  // dictionary is defined over Q, so I(C^sigma, s) = I(C, s) for every
  // conjugate (checked against the materialized cycle in the test suite)
  auto dict = SectionDictionary::coordinates(cfg.ambient);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : dict.sections()) {
    if (section_vanishes_on(s, rep)) continue;
    best = std::max(best, correcting_integral(m, rep, s, quad));
  }
  if (!std::isfinite(best)) {
    throw DomainError("equidistribution: no proper dictionary section for a curve member");
  }
  out.smallness = best / static_cast<double>(an);

  for (const auto& hsurf : cfg.avoid_hypersurfaces) {
    if (section_vanishes_on(hsurf, rep)) {
      out.genericity_fraction = 1.0;
      break;
    }
  }

  // the translated measure is the phase-rotated untranslated one, so each
  // cycle moment factors into a Galois phase average and an angular factor
  MonomialCurve plain = make_torsion_translate(cfg.exponents, 1);
  EmpiricalMeasure mu0 = curve_measure(m, plain, quad.radial_order, quad.angular_order,
                                       quad.tail_mass);
  for (const auto& a : moments) {
    std::complex<double> angular = character_moment(mu0, a);
    long b = 0;
    for (std::size_t i = 1; i < a.size() && i <= static_cast<std::size_t>(cfg.ambient); ++i) {
      b += a[i];
    }
    long bm = ((b % conductor) + conductor) % conductor;
    std::complex<double> phase_avg(0, 0);
    for (long k : units) {
      phase_avg += std::polar(1.0, 2.0 * M_PI * static_cast<double>((bm * k) % conductor) /
                                       static_cast<double>(conductor));
    }
    phase_avg /= static_cast<double>(phi);
    out.moments.push_back(phase_avg * angular);

    // exact circle integral: nonzero only for angular-null exponents
    long m_ang = 0;
    for (std::size_t i = 1; i < a.size() && i <= static_cast<std::size_t>(cfg.ambient); ++i) {
      m_ang += a[i] * cfg.exponents[i];
    }
    double radial = static_cast<double>(ramanujan_sum(conductor, b)) / static_cast<double>(phi);
    out.oracles.emplace_back(m_ang == 0 ? radial : 0.0, 0.0);
  }
  return out;
}

}  // namespace

ExperimentResult run_equidistribution_experiment(const NetConfig& cfg, const MetricFamily& m,
                                                 const std::vector<std::vector<long>>& moments,
                                                 int threads,
                                                 const QuadratureConfig& quad) {
  cfg.validate();
  if (m.is_perturbed()) {
    throw ConfigError(
        "equidistribution: sample measures are defined for canonical and fs metrics");
  }
  if (quad.radial_order < 8 || quad.angular_order < 8) {
    throw ConfigError("equidistribution: quadrature orders must be at least 8");
  }
  const std::size_t n_members = cfg.conductors.size();
  std::vector<MemberData> members(n_members);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex error_mu;

  auto worker = [&]() {
    while (true) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= n_members) return;
      try {
        long conductor = cfg.conductors[idx];
        members[idx] = cfg.family == NetConfig::Family::TorsionPoints
                           ? compute_point_member(cfg, m, moments, conductor)
                           : compute_curve_member(cfg, m, moments, conductor, quad);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult res;
  for (std::size_t i = 0; i < n_members; ++i) {
    const auto& md = members[i];
    for (std::size_t j = 0; j < moments.size(); ++j) {
      MomentRow row;
      row.family = cfg.family_name();
      row.conductor = md.conductor;
      row.orbit_size = md.orbit_size;
      row.degree = md.degree;
      row.height = md.height;
      row.normalized_height = md.normalized_height;
      row.smallness_value = md.smallness;
      row.moment_index = static_cast<int>(j);
      row.moment = md.moments[j];
      row.oracle = md.oracles[j];
      row.abs_error = std::abs(row.moment - row.oracle);
      row.genericity_fraction = md.genericity_fraction;
      res.rows.push_back(std::move(row));
    }
  }
  return res;
}

}  // namespace adelab
