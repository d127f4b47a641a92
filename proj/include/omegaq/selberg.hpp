#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omegaq/polysystem.hpp"

namespace omegaq {

/* One sifting problem: count n in (x, x+y] with T | Q(n), d_j | Q_j(n),
   and no prime p <= z outside Td dividing Q(n). The t-vector carries
   squarefree divisors of betaD with product T; the d-vector is
   squarefree, pairwise coprime and coprime to betaD. */
struct SieveInstance {
  uint64_t x = 0, y = 0;
  std::vector<uint64_t> t;  // per member; empty means all 1
  std::vector<uint64_t> d;  // per member; empty means all 1
  uint64_t z = 2;
  uint64_t level = 0;  // lambda support bound; 0 = z

  uint64_t T() const;
  uint64_t d_product() const;

  // Checks the squarefree/coprimality invariants against a system.
  void validate(const PolySystem& system) const;
};

struct SieveResult {
  mpq_class upper_bound;       // exact Lambda^2 quadratic form over the window
  mpq_class main_term;         // X / G(level)
  mpq_class remainder_budget;  // pessimistic: sum |l1 l2| rho_0([d1,d2]) * R_cap
  mpq_class X;                 // y * rho_0(T)/T * prod rho_j(d_j)/d_j
  mpq_class R_cap;             // rho_0(T) * prod rho_j(d_j)
  uint64_t conditioned_count = 0;          // |A|
  std::optional<uint64_t> exact_count;     // oracle, when run
  std::map<uint64_t, mpq_class> lambda;    // d -> weight
  bool empty_by_density = false;  // some sifting prime has rho_0(p) = p
  bool empty_by_constraint = false;  // rho_0(T) prod rho_j(d_j) = 0
};

// Optimal Lambda^2 weights for a multiplicative density on the
// squarefree support {d <= level, p | d => p in sifting set}, normalized
// lambda_1 = 1, exact rationals. densities maps sifting prime ->
// rho_0(p)/p, each in [0, 1); a density of 1 throws (it would sift
// everything). Primes with density 0 carry no weight and are dropped.
std::map<uint64_t, mpq_class> selberg_weights(
    const std::map<uint64_t, mpq_class>& densities, uint64_t z,
    uint64_t level);

// Certified upper bound for the sifted count: evaluates the quadratic
// form sum_{n in A} (sum_{d | Q(n)} lambda_d)^2 exactly over the window,
// plus the analytic main term and a pessimistic remainder budget.
// run_oracle additionally enumerates the exact sifted count.
SieveResult sieve_upper_bound(const PolySystem& system,
                              const SieveInstance& instance,
                              bool run_oracle = true);

struct SieveStudyRow {
  SieveInstance instance;
  mpq_class bound;
  uint64_t exact = 0;
  long double ratio = 0;  // bound/exact; 0 when exact = 0
  bool violation = false; // bound < exact (impossible if correct)
};

struct SieveStudy {
  std::vector<SieveStudyRow> rows;
  uint64_t violations = 0;
};

// Random-instance sweep with the exact oracle on every row; flags any
// dominance violation as fatal.
SieveStudy sieve_ratio_study(const PolySystem& system, uint64_t x, uint64_t y,
                             size_t instances, uint64_t seed);

struct DensityDiscrepancy {
  uint64_t p;
  uint64_t rho_0;    // roots of the product mod p
  uint64_t rho_sum;  // sum of member root counts mod p
};

// At primes p dividing betaD, members may share roots mod p, so
// rho_0(p) can fall below sum_j rho_j(p); everywhere else the two
// agree. Returns the rows where they differ (measured, not assumed).
std::vector<DensityDiscrepancy> density_discrepancies(
    const PolySystem& system);

}  // namespace omegaq
