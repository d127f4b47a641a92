#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace omegaq {

// Primes in [2, limit], ascending.
std::vector<uint64_t> primes_upto(uint64_t limit);

// Shared prime table covering at least [2, limit]; grown on demand and
// returned as an immutable snapshot, so callers on other threads keep a
// valid view while the table is extended.
std::shared_ptr<const std::vector<uint64_t>> prime_table(uint64_t limit);

uint64_t isqrt_u64(uint64_t n);

// Deterministic Miller-Rabin for 64-bit inputs (fixed base set, proven
// for n < 3.3e24).
bool is_prime_u64(uint64_t n);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a mod m; requires gcd(a, m) = 1 (throws otherwise).
uint64_t invmod_u64(uint64_t a, uint64_t m);

}  // namespace omegaq
