#include "omegaq/rootcount.hpp"

#include <algorithm>
#include <stdexcept>

#include "fppoly.hpp"
#include "omegaq/factorize.hpp"
#include "omegaq/primes.hpp"

namespace omegaq {

namespace {

constexpr uint64_t kEnumerationThreshold = 1ull << 16;

/* Residue enumeration driven by the forward-difference table of the
   reduced polynomial: f(r+1) comes from f(r) with deg(f) modular
   additions and no multiplication. */
void enumerate_roots(const fp::Poly& f, uint64_t p,
                     std::vector<uint64_t>* out, uint64_t* count) {
  const int d = fp::deg(f);
  if (d <= 0 || p <= static_cast<uint64_t>(d) + 2) {
    for (uint64_t r = 0; r < p; ++r) {
      uint64_t acc = 0;
      for (int i = d; i >= 0; --i)
        acc = static_cast<uint64_t>(
            (static_cast<unsigned __int128>(acc) * r + f[static_cast<size_t>(i)]) % p);
      if (acc == 0) {
        if (out) out->push_back(r);
        ++*count;
      }
    }
    return;
  }
  std::vector<uint64_t> v(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    uint64_t acc = 0;
    for (int k = d; k >= 0; --k)
      acc = static_cast<uint64_t>(
          (static_cast<unsigned __int128>(acc) * static_cast<uint64_t>(i) +
           f[static_cast<size_t>(k)]) %
          p);
    v[static_cast<size_t>(i)] = acc;
  }
  for (int k = 1; k <= d; ++k)
    for (int i = d; i >= k; --i) {
      uint64_t& t = v[static_cast<size_t>(i)];
      uint64_t s = v[static_cast<size_t>(i - 1)];
      t = (t >= s) ? t - s : t + p - s;
    }
  for (uint64_t r = 0; r < p; ++r) {
    if (v[0] == 0) {
      if (out) out->push_back(r);
      ++*count;
    }
    for (int k = 0; k < d; ++k) {
      uint64_t& t = v[static_cast<size_t>(k)];
      t += v[static_cast<size_t>(k + 1)];
      if (t >= p) t -= p;
    }
  }
}

struct SplitRng {  // xorshift64*, deterministic per seed
  uint64_t state;
  explicit SplitRng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    return state * 0x2545f4914f6cdd1dull;
  }
};

// Collects the roots of a monic product of distinct linear factors by
// randomized splitting with gcd((X+a)^{(p-1)/2} - 1, f).
void split_linear_factors(fp::Poly f, uint64_t p, SplitRng& rng,
                          std::vector<uint64_t>& out) {
  while (true) {
    const int d = fp::deg(f);
    if (d <= 0) return;
    if (d == 1) {
      out.push_back(f[0] == 0 ? 0 : p - f[0]);  // monic X + c
      return;
    }
    uint64_t a = rng.next() % p;
    // w = (X+a)^{(p-1)/2} mod f
    fp::Poly base{a, 1};
    fp::Poly w = fp::pow_mod(std::move(base), (p - 1) / 2, f, p);
    if (w.empty()) continue;  // cannot happen for squarefree f; retry
    w[0] = (w[0] >= 1) ? w[0] - 1 : p - 1;
    fp::normalize(w);
    fp::Poly g1 = fp::gcd(w, f, p);
    const int dg = fp::deg(g1);
    if (dg <= 0 || dg >= d) continue;  // unlucky split, retry
    fp::Poly g2 = fp::quotient(f, g1, p);
    split_linear_factors(g1, p, rng, out);
    f = std::move(g2);
  }
}

}  // namespace

RootSet roots_mod_p(const IntPoly& P, uint64_t p, uint64_t seed) {
  if (!is_prime_u64(p))
    throw std::invalid_argument("roots_mod_p: modulus is not prime");
  RootSet rs;
  rs.modulus = p;
  fp::Poly f = fp::reduce(P, p);
  if (f.empty()) {
    rs.all_residues = true;  // content divisible by p
    return rs;
  }
  const int d = fp::deg(f);
  if (d == 0) return rs;
  if (d == 1) {
    // single root -c0/c1
    uint64_t r = mulmod_u64(f[0] == 0 ? 0 : p - f[0], invmod_u64(f[1], p), p);
    rs.residues.push_back(r);
    return rs;
  }
  if (p <= kEnumerationThreshold) {
    uint64_t count = 0;
    enumerate_roots(f, p, &rs.residues, &count);
    return rs;
  }
  // strip to the distinct-linear-factor part: gcd(f, X^p - X)
  f = fp::monic(std::move(f), p);
  fp::Poly xp = fp::x_pow_mod(p, f, p);
  // xp - X
  fp::Poly diff = xp;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] >= 1) ? diff[1] - 1 : p - 1;
  fp::normalize(diff);
  fp::Poly lin = fp::gcd(diff, f, p);
  if (fp::deg(lin) <= 0) return rs;
  SplitRng rng(seed * 0x5851f42d4c957f2dull + p);
  split_linear_factors(lin, p, rng, rs.residues);
  std::sort(rs.residues.begin(), rs.residues.end());
  return rs;
}

uint64_t rho_prime(const IntPoly& P, uint64_t p) {
  if (!is_prime_u64(p))
    throw std::invalid_argument("rho_prime: modulus is not prime");
  fp::Poly f = fp::reduce(P, p);
  if (f.empty()) return p;  // degenerate: content divisible by p
  const int d = fp::deg(f);
  if (d == 0) return 0;
  if (d == 1) return 1;
  if (p <= kEnumerationThreshold) {
    uint64_t count = 0;
    enumerate_roots(f, p, nullptr, &count);
    return count;
  }
  // count = deg gcd(f, X^p - X); no splitting needed
  f = fp::monic(std::move(f), p);
  fp::Poly xp = fp::x_pow_mod(p, f, p);
  fp::Poly diff = xp;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] >= 1) ? diff[1] - 1 : p - 1;
  fp::normalize(diff);
  fp::Poly lin = fp::gcd(diff, f, p);
  int dl = fp::deg(lin);
  return dl < 0 ? 0 : static_cast<uint64_t>(dl);
}

uint64_t rho_prime_power(const IntPoly& P, uint64_t p, unsigned nu,
                         uint64_t magnitude_bound) {
  if (nu == 0) throw std::invalid_argument("rho_prime_power: nu >= 1 required");
  // overflow-safe p^nu
  unsigned __int128 pk = 1;
  for (unsigned i = 0; i < nu; ++i) {
    pk *= p;
    if (pk > magnitude_bound)
      throw std::invalid_argument(
          "rho_prime_power: p^nu exceeds the magnitude bound");
  }
  RootSet base = roots_mod_p(P, p);
  std::vector<uint64_t> roots;
  if (base.all_residues) {
    roots.resize(p);
    for (uint64_t r = 0; r < p; ++r) roots[r] = r;
  } else {
    roots = base.residues;
  }
  if (nu == 1) return roots.size();

  const IntPoly dP = P.derivative();
  uint64_t mod = p;
  for (unsigned level = 1; level < nu; ++level) {
    const uint64_t next_mod = mod * p;
    std::vector<uint64_t> lifted;
    for (uint64_t r : roots) {
      uint64_t fpr = eval_mod(dP, r, next_mod);
      if (fpr % p != 0) {
        // simple root: unique Hensel lift r - f(r)/f'(r)
        uint64_t fr = eval_mod(P, r, next_mod);
        uint64_t inv = invmod_u64(fpr, next_mod);
        uint64_t delta = mulmod_u64(fr, inv, next_mod);
        lifted.push_back((r + next_mod - delta) % next_mod);
      } else {
        // branch over all p candidates at this level
        for (uint64_t s = 0; s < p; ++s) {
          uint64_t cand = r + s * mod;
          if (eval_mod(P, cand, next_mod) == 0) lifted.push_back(cand);
        }
      }
    }
    roots = std::move(lifted);
    mod = next_mod;
  }
  return roots.size();
}

uint64_t rho(const IntPoly& P, uint64_t m, uint64_t magnitude_bound) {
  if (m == 0) throw std::invalid_argument("rho: modulus zero");
  if (m == 1) return 1;
  FactorMap f;
  factor_into(mpz_class(static_cast<unsigned long>(m)), f);
  uint64_t result = 1;
  for (const auto& [pz, e] : f) {
    uint64_t p = pz.get_ui();
    result *= rho_prime_power(P, p, e, magnitude_bound);
    if (result == 0) return 0;
  }
  return result;
}

std::vector<StewartViolation> stewart_audit(const IntPoly& P, uint64_t limit) {
  const int g = P.degree();
  if (g < 1) throw std::invalid_argument("stewart_audit: degree >= 1 required");
  std::vector<StewartViolation> violations;
  mpz_class gg;
  mpz_ui_pow_ui(gg.get_mpz_t(), static_cast<unsigned long>(g),
                static_cast<unsigned long>(g));
  auto check = [&](uint64_t p, unsigned nu, uint64_t count) {
    // rho <= g p^{nu(1-1/g)}  <=>  rho^g <= g^g p^{nu(g-1)}
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(count),
                  static_cast<unsigned long>(g));
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(nu) *
                      static_cast<unsigned long>(g - 1));
    rhs *= gg;
    if (lhs > rhs) violations.push_back({p, nu, count});
  };
  for (uint64_t p : *prime_table(limit)) {
    if (p > limit) break;
    check(p, 1, rho_prime(P, p));
    unsigned __int128 pk = static_cast<unsigned __int128>(p) * p;
    unsigned nu = 2;
    while (pk <= limit) {
      check(p, nu, rho_prime_power(P, p, nu,
                                   std::max<uint64_t>(limit, 1000000000ull)));
      pk *= p;
      ++nu;
    }
  }
  return violations;
}

RemarkIAudit remark_i_audit(const PolySystem& system, uint64_t limit) {
  RemarkIAudit audit;
  const IntPoly& Q = system.product();
  const uint64_t g = static_cast<uint64_t>(system.g());
  for (uint64_t p : *prime_table(limit)) {
    if (p > limit) break;
    fp::Poly f = fp::reduce(Q, p);
    if (f.empty()) {
      audit.degenerate_primes.push_back(p);
      continue;
    }
    if (rho_prime(Q, p) > g) audit.violations.push_back(p);
  }
  return audit;
}

}  // namespace omegaq
