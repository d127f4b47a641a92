#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegaq/intpoly.hpp"

namespace omegaq {

enum class SystemErrorCode {
  constant_member,
  reducible_member,
  zero_pairwise_resultant,
  non_unit_content,
  fixed_prime_divisor,
};

class system_error : public std::runtime_error {
 public:
  system_error(SystemErrorCode code, std::string msg, uint64_t witness = 0,
               int member = -1)
      : std::runtime_error(std::move(msg)),
        code(code),
        witness(witness),
        member(member) {}

  SystemErrorCode code;
  uint64_t witness;  // offending prime for fixed_prime_divisor
  int member;        // offending member index, -1 if not applicable
};

enum class IrreducibilityMethod {
  linear,               // degree 1
  rational_root_search, // degrees 2-3: no rational root
  modular_certificate,  // irreducible mod some small prime
  factor_search,        // exhaustive bounded divisor search
};

const char* to_string(IrreducibilityMethod m);

struct ValidationCertificate {
  std::vector<IrreducibilityMethod> methods;    // one per member
  std::vector<mpz_class> pairwise_resultants;   // for i<j, row-major
  uint64_t scan_limit = 0;                      // fixed-divisor prime range
};

/* A validated family {Q_j}: pairwise coprime irreducible members with
   unit content and no fixed prime divisor, together with the product Q
   and the global invariants used everywhere downstream. */
class PolySystem {
 public:
  // Validates and constructs; throws system_error with a distinct code
  // per failure mode. scan_limit = 0 selects the provably sufficient
  // default (all primes <= g); larger values extend the scan.
  static PolySystem validate(std::vector<IntPoly> members,
                             uint64_t scan_limit = 0);

  // Parses "0,1;1,1" (semicolon-separated coefficient lists) and
  // validates.
  static PolySystem from_string(const std::string& spec,
                                uint64_t scan_limit = 0);

  const std::vector<IntPoly>& members() const { return members_; }
  const IntPoly& member(size_t j) const { return members_[j]; }
  const IntPoly& product() const { return product_; }
  size_t r() const { return members_.size(); }
  int g() const { return product_.degree(); }
  const mpz_class& beta() const { return product_.lead(); }
  const mpz_class& D() const { return D_; }
  const mpz_class& betaD() const { return betaD_; }
  mpz_class abs_betaD() const { return abs(betaD_); }
  const ValidationCertificate& certificate() const { return cert_; }
  std::string to_string() const;

 private:
  PolySystem() = default;
  std::vector<IntPoly> members_;
  IntPoly product_;
  mpz_class D_, betaD_;
  ValidationCertificate cert_;
};

// True iff P is irreducible over the rationals (content is ignored;
// callers check content separately). Desk-scale exact test; reports the
// method used through *method when non-null.
bool is_irreducible(const IntPoly& P, IrreducibilityMethod* method = nullptr);

}  // namespace omegaq
