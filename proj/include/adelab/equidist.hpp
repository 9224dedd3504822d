#pragma once

#include <complex>
#include <string>
#include <vector>

#include "adelab/heights.hpp"
#include "adelab/measures.hpp"

namespace adelab {

// Families of Galois-cycle nets indexed by a strictly increasing conductor
// schedule.  Torsion points sit on the diagonal (1 : z : z^2 : ... : z^n);
// torsion curves are monomial curves translated by (z, ..., z) with z a
// primitive N-th root of unity.
struct NetConfig {
  enum class Family { TorsionPoints, TorsionMonomialCurves };
  Family family = Family::TorsionPoints;
  int ambient = 1;
  std::vector<long> exponents;   // curves only
  std::vector<long> conductors;  // strictly increasing
  std::vector<SectionSpec> avoid_hypersurfaces;
  std::uint64_t seed = 2024;

  void validate() const;
  std::string family_name() const;
};

// Materialized net member (Galois cycle); intended for moderate conductors,
// where exact orbit enumeration is cheap.
EffectiveCycle net_member(const NetConfig& cfg, long conductor);

struct MomentRow {
  std::string family;
  long conductor = 0;
  long orbit_size = 0;
  double degree = 0.0;
  double height = 0.0;
  double normalized_height = 0.0;
  double smallness_value = 0.0;
  int moment_index = 0;
  std::complex<double> moment;
  std::complex<double> oracle;
  double abs_error = 0.0;
  double genericity_fraction = 0.0;
};

struct ExperimentResult {
  std::vector<MomentRow> rows;
  std::vector<std::string> warnings;
};

// One row per (conductor, moment index), emitted in schedule-major order.
// Members are computed concurrently when threads > 1; output is identical
// for every thread count.
ExperimentResult run_equidistribution_experiment(const NetConfig& cfg, const MetricFamily& m,
                                                 const std::vector<std::vector<long>>& moments,
                                                 int threads = 1,
                                                 const QuadratureConfig& quad = {});

}  // namespace adelab
