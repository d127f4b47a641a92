#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omegaq/polysystem.hpp"
#include "omegaq/window.hpp"

namespace omegaq {

// Throughout this module log2x means log log x (iterated natural
// logarithm), never a base-2 logarithm.

long double loglog(long double x);

/* Mertens-type profile of a system: per member, samples of
   S_j(x) = sum_{p <= x} rho_j(p)/p on a geometric grid, and the
   supremum M_j of |S_j - loglog| over [3, x_max], taken exactly over
   the prime-jump endpoints of every inter-prime interval. */
struct MemberProfile {
  std::vector<long double> grid_x;
  std::vector<long double> grid_S;
  long double M = 0;
  long double M_arg_x = 0;   // where the supremum is attained
  long double S_xmax = 0;    // S_j(x_max)
  long double tail = 0;      // S_j(x_max) - loglog(x_max)
  // The alternative inner sum sum_{p<=x_max} rho_j(p)/(p - rho_j(p));
  // alt_gap = S_alt - S_xmax (a convergent constant, reported not chosen).
  long double S_alt = 0;
  long double alt_gap = 0;
};

struct MertensProfile {
  std::vector<MemberProfile> members;
  long double M_total = 0;  // sum of M_j
  long double x_min = 3;
  long double x_max = 0;
};

// S(x) = sum_{p <= x} rho(P, p)/p, ascending prime order; 0 for x < 2.
long double mertens_sum(const IntPoly& P, long double x);

// One shared prime sweep per system; x_max >= 100 except in tests.
MertensProfile estimate_profile(const PolySystem& system, long double x_max);

/* phi_rho(P, n) = n * prod_{p | n} (1 - rho(P,p)/p), exact rational.
   degenerate flags rho(p) = p for some p | n (value 0; cannot occur for
   validated systems). */
struct PhiRho {
  mpq_class value;
  bool degenerate = false;
};
PhiRho phi_rho(const IntPoly& P, const mpz_class& n);

struct TheoremParams {
  double K = -1;      // exponent on betaD/phi_0(betaD); -1 = auto (r)
  double R = 2.0;     // k-range multiplier
  double alpha = 0.5; // window exponent
  bool fixed_constant_mode = false;  // compare against `constant` too
  double constant = 1.0;

  double effective_K(size_t r) const { return K < 0 ? double(r) : K; }
};

/* Right-hand side of the pairwise-independence bound:
     (|betaD|/phi_0(|betaD|))^K * e^M * y/(log x)^r
       * prod_j (loglog x + M_j)^{k_j - 1} / (k_j - 1)!
   evaluated in log space. Also exposes the coarser variant with
   e^{(R+1)M} and plain (loglog x)^{k_j-1}. */
struct RhsValue {
  long double value = 0;
  long double log_value = 0;
  long double variant_value = 0;  // the coarser bound, always >= value
  long double kfactor = 0;        // (|betaD|/phi_0)^K, printed separately
};

RhsValue rhs_bound(const PolySystem& system, const MertensProfile& profile,
                   const TheoremParams& params,
                   const std::vector<uint32_t>& ks, long double x,
                   long double y);

enum class YRule { y_equals_x, y_equals_x_alpha };

struct RatioRow {
  std::vector<uint32_t> ks;
  uint64_t count = 0;
  long double rhs = 0;
  long double ratio = 0;
};

struct VerifyPerX {
  uint64_t x = 0, y = 0, z_max = 0;
  uint64_t total = 0;        // histogram total
  uint64_t excluded = 0;     // |Q_j(n)| <= 1 entries
  long double k_cap = 0;     // R loglog x
  bool no_admissible_k = false;
  long double sup_ratio = 0;
  std::vector<uint32_t> argsup;
  std::vector<RatioRow> table;
  // fixed-constant mode: rows with count > constant * rhs
  uint64_t constant_exceedances = 0;
};

struct VerifyReport {
  std::string system;
  TheoremParams params;
  double epsilon = 0;
  long double profile_x_max = 0;
  long double M_total = 0;
  std::vector<long double> M_j;
  long double kfactor = 1;  // (|betaD|/phi_0)^K, printed separately
  std::vector<VerifyPerX> per_x;
  long double max_sup_ratio = 0;
  bool norm_warning = false;  // x below ||Q|| * norm_multiplier
};

/* The headline experiment: for each x, builds the joint histogram over
   (x, x+y], evaluates count/rhs for every admissible k-vector with a
   positive count, and reports the sup ratio sequence (the empirical
   implied constant). Deterministic; optional fan-out across xs. */
VerifyReport verify_theorem(const PolySystem& system,
                            const std::vector<uint64_t>& xs, YRule y_rule,
                            const TheoremParams& params,
                            long double profile_x_max = 1e6,
                            unsigned threads = 1,
                            double norm_multiplier = 1.0);

}  // namespace omegaq
