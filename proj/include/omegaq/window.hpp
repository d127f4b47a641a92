#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "omegaq/factorize.hpp"
#include "omegaq/polysystem.hpp"

namespace omegaq {

struct MertensProfile;  // asymptotics.hpp

/* Window (x, x+y] with the decomposition parameters. epsilon must lie in
   the open interval (alpha/4g, alpha/3g); epsilon = 0 selects the
   midpoint. z_max = 0 selects the automatic sieving budget. */
struct WindowSpec {
  uint64_t x = 0;
  uint64_t y = 0;
  double alpha = 0.5;
  double epsilon = 0.0;
  uint64_t z_max = 0;

  // Resolves defaults against a concrete system and checks the interval
  // constraint; throws std::invalid_argument on violation.
  WindowSpec resolved(const PolySystem& system) const;
};

/* Per-window omega data. omega[i][j] = omega(|Q_j(x+1+i)|). Entries with
   any |Q_j(n)| <= 1 are flagged in excluded (and their omega values are
   still filled where defined). */
struct OmegaResult {
  WindowSpec spec;
  size_t r = 0;
  std::vector<std::vector<uint32_t>> omega;        // y rows, r columns
  std::vector<uint64_t> excluded;                  // n with some |Q_j(n)| <= 1
  std::vector<std::vector<FactorMap>> factorizations;  // optional, y rows
  bool has_factorizations = false;
};

// Segmented sieve over (x, x+y]: strikes every prime p <= z_max through
// the root progressions of each member, divides out full p-adic
// valuations from an exact cofactor ledger, then resolves the remaining
// cofactor (prime below z_max^2 by construction; primality test plus
// Brent-Pollard above). collect_factorizations gathers full prime->exp
// maps per n (memory: small windows only).
OmegaResult omega_window(const PolySystem& system, const WindowSpec& spec,
                         bool collect_factorizations = false);

/* Joint histogram of omega vectors with pointwise-sum merge. */
struct JointHistogram {
  size_t r = 0;
  WindowSpec window;
  std::map<std::vector<uint32_t>, uint64_t> counts;
  uint64_t total = 0;                 // sum of counts
  std::vector<uint64_t> excluded;     // n left out (some |Q_j(n)| <= 1)

  void merge(const JointHistogram& other);  // disjoint windows
};

JointHistogram joint_histogram(const OmegaResult& vectors);

// Segment-by-segment histogram without retaining the per-n vectors;
// equal to joint_histogram(omega_window(...)) by the merge law.
JointHistogram window_histogram(const PolySystem& system,
                                const WindowSpec& spec);

enum class NClass { N1, N2, N3 };
const char* to_string(NClass c);

/* Canonical decomposition of Q(n) = prod_j a_jn * b_n for one n:
   xi_n caps the smooth part at x^{2g eps}, a_jn is the xi_n-smooth part
   of |Q_j(n)|, b_n the rough rest, t/d splits a_jn by the primes of
   betaD. p_min_b = 0 encodes P^-(1) = infinity. */
struct FactorizationRecord {
  uint64_t n = 0;
  std::vector<FactorMap> qfactors;  // per member, factorization of |Q_j(n)|
  mpz_class xi;
  bool xi_unbounded = false;  // every prime of Q(n) fits under the cap
  std::vector<mpz_class> a;
  mpz_class b;
  mpz_class p_min_b;  // p_n, 0 if b = 1
  unsigned v = 0;     // p_n^v || b_n
  std::vector<mpz_class> t, d;            // a_jn = t_jn * d_jn
  std::vector<mpz_class> t_star, d_star;  // squarefree kernels
  NClass cls = NClass::N1;
  mpz_class q_max_a;  // P^+(prod a_jn), 1 if the smooth part is trivial
  unsigned omega_b = 0;
};

FactorizationRecord decompose(const PolySystem& system, uint64_t n,
                              const std::vector<FactorMap>& qfactors,
                              const WindowSpec& spec);

// Decomposition of every non-excluded n of a window.
std::vector<FactorizationRecord> decompose_window(const PolySystem& system,
                                                  const WindowSpec& spec);

struct AuditFinding {
  uint64_t n;
  std::string check;
  std::string detail;
};

struct ClassAuditReport {
  uint64_t x = 0, y = 0;
  double epsilon = 0, alpha = 0;
  double E = 0;  // 3(g+1)/epsilon
  uint64_t records = 0;
  uint64_t count_n1 = 0, count_n2 = 0, count_n3 = 0;
  std::vector<AuditFinding> violations;    // hard failures
  std::vector<AuditFinding> observations;  // below-threshold notes
  // N2 diagnostic: empirical count against the congruence-count proxy
  // sum_p (y rho_0(p^{nu(p)}) / p^{nu(p)} + rho_0(p^{nu(p)})), and the
  // Stewart-substituted variant y sum_p g p^{-nu(p)/g}.
  long double n2_proxy = 0, n2_stewart_proxy = 0, n2_ratio = 0;
  // N3 Rankin diagnostic: sum over N3 records of
  // (prod_j t_j d_j / x^{g eps})^{C / log q_n}; always >= count_n3.
  double rankin_C = 0;
  long double rankin_sum = 0;
  bool pass = false;
};

ClassAuditReport audit_classes(const std::vector<FactorizationRecord>& records,
                               const PolySystem& system,
                               const WindowSpec& spec,
                               double rankin_C = 0 /* 0 = auto */);

}  // namespace omegaq
