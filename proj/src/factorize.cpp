#include "omegaq/factorize.hpp"

#include <numeric>
#include <stdexcept>

#include "omegaq/primes.hpp"

namespace omegaq {

namespace {

// Brent's cycle variant of Pollard rho on 64-bit composites.
uint64_t brent_pollard_u64(uint64_t n, uint64_t c0) {
  if (n % 2 == 0) return 2;
  for (uint64_t c = c0;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = (mulmod_u64(y, y, n) + c) % n;
      ++lam;
      uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor; new c
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
    if (c > c0 + 64)
      throw std::runtime_error("pollard: splitting budget exhausted");
  }
}

void factor_u64(uint64_t n, FactorMap& out, uint64_t small_bound);

void split_u64(uint64_t n, FactorMap& out, uint64_t small_bound) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[mpz_class(static_cast<unsigned long>(n))] += 1;
    return;
  }
  uint64_t d = brent_pollard_u64(n, 1);
  split_u64(d, out, small_bound);
  split_u64(n / d, out, small_bound);
}

void factor_u64(uint64_t n, FactorMap& out, uint64_t small_bound) {
  if (n <= 1) return;
  auto table = prime_table(small_bound);
  for (uint64_t p : *table) {
    if (p > small_bound) break;
    if (p * p > n) break;
    while (n % p == 0) {
      out[mpz_class(static_cast<unsigned long>(p))] += 1;
      n /= p;
    }
  }
  if (n == 1) return;
  if (n <= small_bound * small_bound || is_prime_u64(n)) {
    // below the trial square it must be prime
    out[mpz_class(static_cast<unsigned long>(n))] += 1;
    return;
  }
  split_u64(n, out, small_bound);
}

}  // namespace

bool is_prime_mpz(const mpz_class& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

void factor_into(const mpz_class& n, FactorMap& out, uint64_t small_bound) {
  if (n <= 1) return;
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    factor_u64(n.get_ui(), out, small_bound);
    return;
  }
  mpz_class m = n;
  auto table = prime_table(small_bound);
  for (uint64_t p : *table) {
    if (p > small_bound) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      out[mpz_class(static_cast<unsigned long>(p))] += e;
      if (mpz_fits_ulong_p(m.get_mpz_t())) {
        factor_u64(m.get_ui(), out, small_bound);
        return;
      }
    }
  }
  // wide residue: mpz Pollard rho with a recursion guard
  struct Rec {
    uint64_t small_bound;
    void split(const mpz_class& v, FactorMap& out, int depth) {
      if (v == 1) return;
      if (mpz_fits_ulong_p(v.get_mpz_t())) {
        factor_u64(v.get_ui(), out, small_bound);
        return;
      }
      if (is_prime_mpz(v)) {
        out[v] += 1;
        return;
      }
      if (depth > 64)
        throw std::runtime_error("pollard: mpz splitting budget exhausted");
      // perfect power short-circuit keeps rho away from p^k inputs
      if (mpz_perfect_power_p(v.get_mpz_t())) {
        for (unsigned k = 2; k <= mpz_sizeinbase(v.get_mpz_t(), 2); ++k) {
          mpz_class root;
          if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k) != 0) {
            FactorMap sub;
            split(root, sub, depth + 1);
            for (const auto& [p, e] : sub) out[p] += e * k;
            return;
          }
        }
      }
      for (unsigned long c = 1; c <= 64; ++c) {
        // Floyd steps; desk-scale inputs do not need the batched
        // product trick.
        mpz_class x(2), y(2), d(1);
        while (true) {
          x = (x * x + c) % v;
          y = (y * y + c) % v;
          y = (y * y + c) % v;
          mpz_class diff = x > y ? x - y : y - x;
          if (diff == 0) break;  // cycle without factor; next c
          mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), v.get_mpz_t());
          if (d != 1) break;
        }
        if (d != 1 && d != v) {
          split(d, out, depth + 1);
          mpz_class q = v / d;
          split(q, out, depth + 1);
          return;
        }
      }
      throw std::runtime_error("pollard: mpz splitting budget exhausted");
    }
  } rec{small_bound};
  rec.split(m, out, 0);
}

FactorMap oracle_factor(const mpz_class& n, uint64_t trial_budget) {
  if (n < 1) throw std::invalid_argument("oracle_factor: n >= 1 required");
  FactorMap out;
  if (n == 1) return out;
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    uint64_t m = n.get_ui();
    uint64_t bound = isqrt_u64(m);
    if (bound > trial_budget)
      throw std::invalid_argument("oracle_factor: trial-division budget exceeded");
    auto table = prime_table(bound + 1);
    for (uint64_t p : *table) {
      if (p > bound) break;
      if (p * p > m) break;
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e) out[mpz_class(static_cast<unsigned long>(p))] += e;
    }
    if (m > 1) out[mpz_class(static_cast<unsigned long>(m))] += 1;
    return out;
  }
  mpz_class m = n;
  mpz_class bound_z;
  mpz_sqrt(bound_z.get_mpz_t(), m.get_mpz_t());
  if (bound_z > trial_budget)
    throw std::invalid_argument("oracle_factor: trial-division budget exceeded");
  uint64_t bound = bound_z.get_ui();
  auto table = prime_table(bound + 1);
  for (uint64_t p : *table) {
    if (p > bound) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e) {
      out[mpz_class(static_cast<unsigned long>(p))] += e;
      mpz_sqrt(bound_z.get_mpz_t(), m.get_mpz_t());
      bound = bound_z.get_ui();  // the residual shrank
    }
  }
  if (m > 1) out[m] += 1;
  return out;
}

unsigned omega_of(const FactorMap& f) { return static_cast<unsigned>(f.size()); }

}  // namespace omegaq
