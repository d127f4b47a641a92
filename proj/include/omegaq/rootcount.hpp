#pragma once

#include <cstdint>
#include <vector>

#include "omegaq/intpoly.hpp"
#include "omegaq/polysystem.hpp"

namespace omegaq {

/* Roots of a polynomial in Z/mZ. all_residues marks the degenerate case
   where the polynomial is identically zero mod m (possible only for
   content > 1); residues is then left empty and the count is m. */
struct RootSet {
  uint64_t modulus = 1;
  std::vector<uint64_t> residues;  // sorted, duplicate-free
  bool all_residues = false;

  uint64_t count() const {
    return all_residues ? modulus : residues.size();
  }
};

// Exact roots of P mod p. Residue enumeration (forward differences) for
// p <= 2^16; above that, gcd with X^p - X followed by seeded randomized
// equal-degree splitting. The result is seed-independent.
RootSet roots_mod_p(const IntPoly& P, uint64_t p, uint64_t seed = 1);

// rho(P, p) as a count, with the degree-1 closed form short-circuit.
uint64_t rho_prime(const IntPoly& P, uint64_t p);

// Count of roots mod p^nu via Hensel lifting: simple roots lift
// uniquely, non-simple roots branch over all p candidates per level.
// p^nu must stay below the magnitude bound (default 10^9).
uint64_t rho_prime_power(const IntPoly& P, uint64_t p, unsigned nu,
                         uint64_t magnitude_bound = 1000000000ull);

// rho(P, m) for general m >= 1 by CRT multiplicativity over the prime
// powers of m (trial-division factorization). rho(P, 1) = 1.
uint64_t rho(const IntPoly& P, uint64_t m,
             uint64_t magnitude_bound = 1000000000ull);

struct StewartViolation {
  uint64_t p;
  unsigned nu;
  uint64_t rho;  // observed root count mod p^nu
};

// Scans all prime powers p^nu <= limit and returns every violation of
// rho(p^nu) <= g * p^{nu(1-1/g)} (checked exactly as rho^g <= g^g *
// p^{nu(g-1)}). Expected empty for content-1 input; non-empty output on
// such input signals an implementation bug.
std::vector<StewartViolation> stewart_audit(const IntPoly& P, uint64_t limit);

struct RemarkIAudit {
  // primes p <= limit with Q mod p not identically zero and rho_0(p) > g;
  // provably empty, kept as a tripwire.
  std::vector<uint64_t> violations;
  // primes where Q mod p is identically zero (content degeneracy);
  // flagged observations, not failures.
  std::vector<uint64_t> degenerate_primes;
};

// Checks rho_0(p) <= g for the product polynomial of a system over all
// primes p <= limit, with the content-degenerate caveat reported
// separately.
RemarkIAudit remark_i_audit(const PolySystem& system, uint64_t limit);

}  // namespace omegaq
