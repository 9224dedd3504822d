#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adelab {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared across modules.  CLI maps these to exit codes.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A section vanishes on (a component of) the cycle it was paired with.
struct DivisorMembershipError : DomainError {
  using DomainError::DomainError;
};

struct NumericError : std::runtime_error {
  double estimate_coarse = 0.0;
  double estimate_fine = 0.0;
  NumericError(const std::string& what, double coarse, double fine)
      : std::runtime_error(what), estimate_coarse(coarse), estimate_fine(fine) {}
};

struct ResourceError : std::runtime_error {
  Int residue;  // unfactored part, when factorization gives up
  ResourceError(const std::string& what, Int r)
      : std::runtime_error(what), residue(std::move(r)) {}
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(const Int& z) { return z.get_d(); }

// Deterministic 64-bit stream; every randomized algorithm in the library
// draws from one of these so runs are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
 private:
  std::uint64_t state_;
};

// coeff * log(base); the exact finite-place layer of heights and defects.
struct LogTerm {
  Rat coeff;
  Int base;  // >= 2
};

// Collapse terms with equal bases; drop zero coefficients.
std::vector<LogTerm> merge_log_terms(std::vector<LogTerm> terms);
double log_terms_value(const std::vector<LogTerm>& terms);

// Shortest decimal string that round-trips a double (17 significant digits).
std::string format_double17(double x);

}  // namespace adelab
