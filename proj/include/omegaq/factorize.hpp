#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>

namespace omegaq {

using FactorMap = std::map<mpz_class, unsigned>;  // prime -> exponent

// Complete factorization by trial division up to sqrt(n); the
// independent correctness oracle for the window sieve. Throws when the
// required trial bound exceeds the budget (default: divisors up to 1e8,
// i.e. n up to ~1e16).
FactorMap oracle_factor(const mpz_class& n, uint64_t trial_budget = 100000000ull);

// Primality for arbitrary-precision n: deterministic Miller-Rabin for
// 64-bit values, BPSW-style mpz_probab_prime_p above.
bool is_prime_mpz(const mpz_class& n);

// Factors n into the given map (exponents accumulate) using trial
// division by primes <= small_bound, then Miller-Rabin + Brent-Pollard
// splitting. Throws if the Pollard budget is exhausted.
void factor_into(const mpz_class& n, FactorMap& out,
                 uint64_t small_bound = 65536);

unsigned omega_of(const FactorMap& f);

}  // namespace omegaq
