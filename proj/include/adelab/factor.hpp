#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "adelab/numeric.hpp"

namespace adelab {

// Integer factorization: trial division up to 10^6, then Brent's cycle
// variant of Pollard rho.  Intended inputs stay below 2^64; larger inputs
// are still attempted and raise ResourceError with the unfactored residue
// if the iteration cap is hit.
std::map<Int, unsigned> factor_integer(const Int& n);

bool is_prime_u64(std::uint64_t n);

std::vector<long> primes_up_to(long bound);

// Smallest prime > n (64-bit range).
std::uint64_t next_prime_u64(std::uint64_t n);

long euler_phi(long n);
int moebius(long n);

// k in (Z/N)^* in ascending order.
std::vector<long> unit_group_mod(long n);

long gcd_long(long a, long b);
long power_mod_long(long base, long exp, long mod);

}  // namespace adelab
