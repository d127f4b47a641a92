#include "omegaq/selberg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "omegaq/factorize.hpp"
#include "omegaq/primes.hpp"
#include "omegaq/rootcount.hpp"

namespace omegaq {

namespace {

mpq_class frac(uint64_t num, uint64_t den) {
  mpq_class q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

struct Support {
  // squarefree products of sifting primes, ascending, with mu and h
  std::vector<uint64_t> d;
  std::vector<int> mu;
  std::vector<mpq_class> h;  // prod g/(1-g) over p | d
};

Support build_support(const std::vector<std::pair<uint64_t, mpq_class>>& primes,
                      uint64_t level) {
  Support s;
  s.d = {1};
  s.mu = {1};
  s.h = {mpq_class(1)};
  for (const auto& [p, g] : primes) {
    const mpq_class hp = g / (1 - g);
    const size_t base = s.d.size();
    for (size_t i = 0; i < base; ++i) {
      unsigned __int128 nd = static_cast<unsigned __int128>(s.d[i]) * p;
      if (nd > level) continue;
      s.d.push_back(static_cast<uint64_t>(nd));
      s.mu.push_back(-s.mu[i]);
      s.h.push_back(s.h[i] * hp);
    }
  }
  // ascending order keeps every downstream sum deterministic
  std::vector<size_t> idx(s.d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return s.d[a] < s.d[b]; });
  Support out;
  for (size_t i : idx) {
    out.d.push_back(s.d[i]);
    out.mu.push_back(s.mu[i]);
    out.h.push_back(s.h[i]);
  }
  return out;
}

}  // namespace

uint64_t SieveInstance::T() const {
  uint64_t out = 1;
  for (uint64_t v : t) out *= v;
  return out;
}

uint64_t SieveInstance::d_product() const {
  uint64_t out = 1;
  for (uint64_t v : d) out *= v;
  return out;
}

void SieveInstance::validate(const PolySystem& system) const {
  const size_t r = system.r();
  if (!t.empty() && t.size() != r)
    throw std::invalid_argument("sieve: t-vector arity mismatch");
  if (!d.empty() && d.size() != r)
    throw std::invalid_argument("sieve: d-vector arity mismatch");
  if (y == 0) throw std::invalid_argument("sieve: empty window");
  const mpz_class betaD = system.abs_betaD();
  auto squarefree = [](uint64_t v) {
    if (v == 0) return false;
    FactorMap f;
    factor_into(mpz_class(static_cast<unsigned long>(v)), f);
    for (const auto& [p, e] : f)
      if (e > 1) return false;
    return true;
  };
  for (uint64_t tv : t) {
    if (!squarefree(tv))
      throw std::invalid_argument("sieve: t factors must be squarefree");
    FactorMap f;
    factor_into(mpz_class(static_cast<unsigned long>(tv)), f);
    for (const auto& [p, e] : f)
      if (!mpz_divisible_p(betaD.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("sieve: t carries a prime outside betaD");
  }
  uint64_t dprod = 1;
  for (uint64_t dv : d) {
    if (!squarefree(dv))
      throw std::invalid_argument("sieve: d factors must be squarefree");
    mpz_class g;
    mpz_class dz(static_cast<unsigned long>(dv));
    mpz_gcd(g.get_mpz_t(), dz.get_mpz_t(), betaD.get_mpz_t());
    if (g != 1)
      throw std::invalid_argument("sieve: gcd(d_j, betaD) != 1");
    if (std::gcd(dprod, dv) != 1)
      throw std::invalid_argument("sieve: d factors must be pairwise coprime");
    dprod *= dv;
  }
  if (!squarefree(dprod))
    throw std::invalid_argument("sieve: product of d must be squarefree");
}

std::map<uint64_t, mpq_class> selberg_weights(
    const std::map<uint64_t, mpq_class>& densities, uint64_t z,
    uint64_t level) {
  if (level < 1) throw std::invalid_argument("selberg: level >= 1 required");
  std::vector<std::pair<uint64_t, mpq_class>> primes;
  for (const auto& [p, g] : densities) {
    if (p > z) continue;
    if (g >= 1)
      throw std::invalid_argument(
          "selberg: density >= 1 at a sifting prime would sift everything");
    if (g < 0) throw std::invalid_argument("selberg: negative density");
    if (g == 0) continue;  // prime never divides; carries no weight
    primes.push_back({p, g});
  }
  Support s = build_support(primes, level);
  mpq_class G = 0;
  for (const auto& h : s.h) G += h;

  std::map<uint64_t, mpq_class> lambda;
  for (size_t i = 0; i < s.d.size(); ++i) {
    const uint64_t dv = s.d[i];
    // G_d(level/d) = sum of h(e) over support e with e*d <= level,
    // gcd(e, d) = 1
    mpq_class Gd = 0;
    for (size_t k = 0; k < s.d.size(); ++k) {
      unsigned __int128 prod = static_cast<unsigned __int128>(s.d[k]) * dv;
      if (prod > level) break;  // ascending order
      if (std::gcd(s.d[k], dv) != 1) continue;
      Gd += s.h[k];
    }
    mpq_class coeff(s.mu[i]);
    for (const auto& [p, g] : primes)
      if (dv % p == 0) coeff /= (1 - g);
    mpq_class l = coeff * Gd / G;
    l.canonicalize();
    lambda[dv] = l;
  }
  return lambda;
}

SieveResult sieve_upper_bound(const PolySystem& system,
                              const SieveInstance& instance, bool run_oracle) {
  instance.validate(system);
  SieveResult res;
  const uint64_t T = instance.T();
  const uint64_t dprod = instance.d_product();
  const uint64_t level = instance.level ? instance.level : instance.z;

  const uint64_t rho_T = rho(system.product(), T);
  res.R_cap = mpq_class(static_cast<unsigned long>(rho_T));
  res.X = mpq_class(static_cast<unsigned long>(instance.y)) * frac(rho_T, T);
  for (size_t j = 0; j < system.r(); ++j) {
    const uint64_t dj = instance.d.empty() ? 1 : instance.d[j];
    const uint64_t rj = rho(system.member(j), dj);
    res.R_cap *= static_cast<unsigned long>(rj);
    res.X *= frac(rj, dj);
  }
  if (res.R_cap == 0) {
    res.empty_by_constraint = true;
    if (run_oracle) res.exact_count = 0;
    return res;  // no n satisfies the congruence constraints
  }

  // sifting primes and densities
  std::map<uint64_t, mpq_class> densities;
  bool density_one = false;
  for (uint64_t p : primes_upto(instance.z)) {
    if (T % p == 0 || dprod % p == 0) continue;
    const uint64_t rp = rho_prime(system.product(), p);
    if (rp >= p) {
      density_one = true;  // every n has p | Q(n): the sifted set is empty
      break;
    }
    densities[p] = frac(rp, p);
  }
  if (density_one) {
    res.empty_by_density = true;
    if (run_oracle) res.exact_count = 0;
    return res;
  }

  res.lambda = selberg_weights(densities, instance.z, level);

  // conditioned set A and the exact quadratic form
  std::vector<uint64_t> members_of_A;
  for (uint64_t n = instance.x + 1; n <= instance.x + instance.y; ++n) {
    if (T > 1 && eval_mod(system.product(), n, T) != 0) continue;
    bool ok = true;
    for (size_t j = 0; j < system.r() && ok; ++j) {
      const uint64_t dj = instance.d.empty() ? 1 : instance.d[j];
      if (dj > 1 && eval_mod(system.member(j), n, dj) != 0) ok = false;
    }
    if (ok) members_of_A.push_back(n);
  }
  res.conditioned_count = members_of_A.size();

  mpq_class bound = 0;
  std::vector<uint64_t> sift_primes;
  for (const auto& [p, g] : densities) sift_primes.push_back(p);
  uint64_t exact = 0;
  for (uint64_t n : members_of_A) {
    mpq_class s = 0;
    for (const auto& [dv, l] : res.lambda) {
      if (dv == 1 || eval_mod(system.product(), n, dv) == 0) s += l;
    }
    bound += s * s;
    if (run_oracle) {
      bool sifted = true;
      for (uint64_t p : sift_primes)
        if (eval_mod(system.product(), n, p) == 0) {
          sifted = false;
          break;
        }
      if (sifted) ++exact;
    }
  }
  bound.canonicalize();
  res.upper_bound = bound;
  if (run_oracle) res.exact_count = exact;

  // analytic side: X/G(level) and the pessimistic remainder budget
  mpq_class G = 0;
  {
    std::vector<std::pair<uint64_t, mpq_class>> primes(densities.begin(),
                                                       densities.end());
    Support s = build_support(primes, level);
    for (const auto& h : s.h) G += h;
  }
  res.main_term = res.X / G;
  res.main_term.canonicalize();
  mpq_class budget = 0;
  for (const auto& [d1, l1] : res.lambda)
    for (const auto& [d2, l2] : res.lambda) {
      const uint64_t lc = std::lcm(d1, d2);
      const uint64_t rho_lc = rho(system.product(), lc);
      budget += abs(l1 * l2) * static_cast<unsigned long>(rho_lc);
    }
  res.remainder_budget = budget * res.R_cap;
  res.remainder_budget.canonicalize();
  return res;
}

std::vector<DensityDiscrepancy> density_discrepancies(
    const PolySystem& system) {
  std::vector<DensityDiscrepancy> rows;
  FactorMap f;
  factor_into(system.abs_betaD(), f);
  for (const auto& [pz, e] : f) {
    if (!pz.fits_ulong_p()) continue;  // a huge prime cannot collide roots
    const uint64_t p = pz.get_ui();
    uint64_t sum = 0;
    for (size_t j = 0; j < system.r(); ++j)
      sum += rho_prime(system.member(j), p);
    const uint64_t r0 = rho_prime(system.product(), p);
    if (r0 != sum) rows.push_back({p, r0, sum});
  }
  return rows;
}

SieveStudy sieve_ratio_study(const PolySystem& system, uint64_t x, uint64_t y,
                             size_t instances, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SieveStudy study;

  // squarefree divisors of |betaD| for the t draws
  std::vector<uint64_t> t_pool{1};
  {
    FactorMap f;
    factor_into(system.abs_betaD(), f);
    std::vector<uint64_t> primes;
    for (const auto& [p, e] : f)
      if (p.fits_ulong_p()) primes.push_back(p.get_ui());
    for (uint64_t p : primes) {
      const size_t base = t_pool.size();
      for (size_t i = 0; i < base; ++i) t_pool.push_back(t_pool[i] * p);
    }
  }
  // small primes coprime to betaD for the d draws
  std::vector<uint64_t> d_pool;
  for (uint64_t p : primes_upto(29))
    if (!mpz_divisible_ui_p(system.abs_betaD().get_mpz_t(), p))
      d_pool.push_back(p);

  for (size_t it = 0; it < instances; ++it) {
    SieveInstance inst;
    inst.x = x;
    inst.y = y;
    inst.z = 2 + rng() % 59;
    inst.t.resize(system.r(), 1);
    inst.d.resize(system.r(), 1);
    for (size_t j = 0; j < system.r(); ++j)
      inst.t[j] = t_pool[rng() % t_pool.size()];
    // disjoint prime draws keep the d's pairwise coprime
    std::vector<uint64_t> pool = d_pool;
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t cursor = 0;
    for (size_t j = 0; j < system.r(); ++j) {
      const size_t take = rng() % 3;  // 0..2 primes each
      for (size_t k = 0; k < take && cursor < pool.size(); ++k)
        inst.d[j] *= pool[cursor++];
    }
    SieveResult r = sieve_upper_bound(system, inst, true);
    SieveStudyRow row;
    row.instance = inst;
    row.bound = r.upper_bound;
    row.exact = r.exact_count.value_or(0);
    if (row.exact > 0)
      row.ratio = static_cast<long double>(row.bound.get_d()) /
                  static_cast<long double>(row.exact);
    row.violation =
        mpq_class(static_cast<unsigned long>(row.exact)) > row.bound;
    if (row.violation) ++study.violations;
    study.rows.push_back(std::move(row));
  }
  return study;
}

}  // namespace omegaq
