#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace omegaq {

/* Integer polynomial with exact (arbitrary precision) coefficients,
   stored ascending: coeffs[i] is the coefficient of X^i. Normalized so
   the leading coefficient is nonzero; the zero polynomial is {0}. */
class IntPoly {
 public:
  IntPoly();  // zero polynomial
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  // Parses a comma-separated ascending coefficient list, e.g. "1,0,1"
  // for X^2+1. Throws std::invalid_argument on malformed input.
  static IntPoly from_string(const std::string& csv);
  std::string to_string() const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const;
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& coeff(int i) const;  // zero beyond the degree
  const mpz_class& lead() const { return coeffs_.back(); }

  // max |coeffs[i]| over 1 <= i <= degree (the constant term does not
  // count); zero for constants.
  mpz_class norm() const;
  mpz_class content() const;  // gcd of all coefficients, nonnegative

  // Cached discriminant; degree >= 1 required.
  const mpz_class& disc() const;

  IntPoly derivative() const;
  IntPoly shifted(const mpz_class& c) const;  // P(X + c)

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<mpz_class> coeffs_;
  mutable std::optional<mpz_class> disc_;  // fill guarded by a global mutex
};

// P(n), exact.
mpz_class eval(const IntPoly& P, const mpz_class& n);

// P(n) mod m for any 64-bit m >= 1 (128-bit Horner steps).
uint64_t eval_mod(const IntPoly& P, uint64_t n, uint64_t m);

// Sylvester-matrix resultant, computed by fraction-free (Bareiss)
// elimination. Zero iff U and V share a complex root. Throws on zero
// polynomial input.
mpz_class resultant(const IntPoly& U, const IntPoly& V);

// Standard discriminant: (-1)^{g(g-1)/2} res(P, P') / lead, which is 1
// for every degree-1 polynomial. Throws on constants.
mpz_class discriminant(const IntPoly& P);

struct ProductIdentityCheck {
  mpz_class lhs;  // disc(U*V), computed from the product polynomial
  mpz_class rhs;  // disc(U) * disc(V) * res(U,V)^2
  bool holds;
};

// Evaluates both sides of the product-discriminant identity through
// independent code paths. holds must be true for every valid input;
// a false result signals an arithmetic bug.
ProductIdentityCheck check_product_identity(const IntPoly& U, const IntPoly& V);

}  // namespace omegaq
