#pragma once

// Dense polynomials over F_p with 64-bit prime p, internal to the
// library. Coefficients ascending; the zero polynomial is the empty
// vector.

#include <cstdint>
#include <vector>

#include "omegaq/intpoly.hpp"
#include "omegaq/primes.hpp"

namespace omegaq::fp {

using Poly = std::vector<uint64_t>;

inline void normalize(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

// Reduction of an integer polynomial mod p.
Poly reduce(const IntPoly& P, uint64_t p);

Poly mul(const Poly& a, const Poly& b, uint64_t p);

// Remainder of a mod b; b nonzero.
Poly rem(Poly a, const Poly& b, uint64_t p);

Poly monic(Poly f, uint64_t p);

// Monic gcd.
Poly gcd(Poly a, Poly b, uint64_t p);

// Quotient a / b; exact division expected.
Poly quotient(Poly a, const Poly& b, uint64_t p);

// (X^e) mod f, by square-and-multiply on residues mod f.
Poly x_pow_mod(uint64_t e, const Poly& f, uint64_t p);

// (base + a)^e mod f for the equal-degree splitting step.
Poly pow_mod(Poly base, uint64_t e, const Poly& f, uint64_t p);

// True iff f (deg >= 1) is irreducible over F_p.
bool irreducible_mod_p(const Poly& f, uint64_t p);

}  // namespace omegaq::fp
