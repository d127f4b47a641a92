#include "omegaq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "omegaq/factorize.hpp"
#include "omegaq/primes.hpp"
#include "omegaq/rootcount.hpp"

namespace omegaq {

long double loglog(long double x) { return logl(logl(x)); }

long double mertens_sum(const IntPoly& P, long double x) {
  if (x < 2) return 0.0L;
  const uint64_t limit = static_cast<uint64_t>(floorl(x));
  long double s = 0.0L;
  auto table = prime_table(limit);
  for (uint64_t p : *table) {
    if (p > limit) break;
    s += static_cast<long double>(rho_prime(P, p)) / p;
  }
  return s;
}

MertensProfile estimate_profile(const PolySystem& system, long double x_max) {
  if (x_max < 3) throw std::invalid_argument("estimate_profile: x_max >= 3");
  const uint64_t limit = static_cast<uint64_t>(floorl(x_max));
  MertensProfile prof;
  prof.x_max = x_max;
  prof.members.resize(system.r());

  // geometric grid 3 * 1.1^k, clipped to x_max
  std::vector<long double> grid;
  for (long double t = 3;; t *= 1.1L) {
    if (t >= x_max) {
      grid.push_back(x_max);
      break;
    }
    grid.push_back(t);
  }
  for (auto& m : prof.members) {
    m.grid_x = grid;
    m.grid_S.assign(grid.size(), 0.0L);
  }

  auto table = prime_table(limit);
  std::vector<long double> S(system.r(), 0.0L);
  std::vector<size_t> gi(system.r(), 0);
  auto consider = [&](size_t j, long double value, long double at) {
    long double d = fabsl(value);
    if (d > prof.members[j].M) {
      prof.members[j].M = d;
      prof.members[j].M_arg_x = at;
    }
  };
  for (uint64_t p : *table) {
    if (p > limit) break;
    for (size_t j = 0; j < system.r(); ++j) {
      // grid samples carry S over primes <= grid point
      while (gi[j] < grid.size() && grid[gi[j]] < static_cast<long double>(p)) {
        prof.members[j].grid_S[gi[j]] = S[j];
        ++gi[j];
      }
      const uint64_t rj = rho_prime(system.member(j), p);
      if (p >= 3) {
        /* sup of |S - loglog| over [3, x_max]: on each inter-prime
           interval the function is monotone, so the endpoints at every
           prime jump (just before and just after adding rho/p) carry
           the supremum. */
        if (p > 3) consider(j, S[j] - loglog(static_cast<long double>(p)),
                            static_cast<long double>(p));
        S[j] += static_cast<long double>(rj) / p;
        consider(j, S[j] - loglog(static_cast<long double>(p)),
                 static_cast<long double>(p));
      } else {
        S[j] += static_cast<long double>(rj) / p;
      }
      if (rj < p)
        prof.members[j].S_alt +=
            static_cast<long double>(rj) / (static_cast<long double>(p) - rj);
    }
  }
  for (size_t j = 0; j < system.r(); ++j) {
    while (gi[j] < grid.size()) {
      prof.members[j].grid_S[gi[j]] = S[j];
      ++gi[j];
    }
    consider(j, S[j] - loglog(x_max), x_max);
    prof.members[j].S_xmax = S[j];
    prof.members[j].tail = S[j] - loglog(x_max);
    prof.members[j].alt_gap = prof.members[j].S_alt - S[j];
    prof.M_total += prof.members[j].M;
  }
  return prof;
}

PhiRho phi_rho(const IntPoly& P, const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("phi_rho: n >= 1 required");
  PhiRho out;
  out.value = mpq_class(n);
  if (n == 1) return out;
  FactorMap f;
  factor_into(n, f);
  for (const auto& [pz, e] : f) {
    if (!pz.fits_ulong_p())
      throw std::invalid_argument("phi_rho: prime factor beyond desk scale");
    const uint64_t p = pz.get_ui();
    const uint64_t rp = rho_prime(P, p);
    if (rp >= p) {
      out.degenerate = true;
      out.value = 0;
      return out;
    }
    mpq_class factor(static_cast<unsigned long>(p - rp),
                     static_cast<unsigned long>(p));
    factor.canonicalize();
    out.value *= factor;
  }
  return out;
}

RhsValue rhs_bound(const PolySystem& system, const MertensProfile& profile,
                   const TheoremParams& params,
                   const std::vector<uint32_t>& ks, long double x,
                   long double y) {
  const size_t r = system.r();
  if (ks.size() != r) throw std::invalid_argument("rhs_bound: k arity mismatch");
  if (!(x >= 3)) throw std::domain_error("rhs_bound: x >= 3 required");
  const long double xa = powl(x, static_cast<long double>(params.alpha));
  // floor(x^alpha) is admissible: windows have integer lengths
  if (y < floorl(xa) * (1 - 1e-12L) || y > x * (1 + 1e-12L))
    throw std::domain_error("rhs_bound: y outside [x^alpha, x]");
  const long double L = loglog(x);
  const long double kcap = params.R * L;
  for (uint32_t k : ks)
    if (k < 1 || static_cast<long double>(k) > kcap + 1e-9L)
      throw std::domain_error("rhs_bound: k_j outside [1, R loglog x]");

  const double K = params.effective_K(r);
  const mpz_class bd = system.abs_betaD();
  PhiRho phi0 = phi_rho(system.product(), bd);
  if (phi0.degenerate || phi0.value == 0)
    throw std::domain_error("rhs_bound: phi_0(betaD) vanishes");
  const long double log_kfactor =
      K * (logl(mpz_get_d(bd.get_mpz_t())) -
           logl(static_cast<long double>(phi0.value.get_d())));

  long double lg = log_kfactor + profile.M_total + logl(y) -
                   static_cast<long double>(r) * logl(logl(x));
  long double lg_variant = log_kfactor +
                           (params.R + 1) * profile.M_total + logl(y) -
                           static_cast<long double>(r) * logl(logl(x));
  for (size_t j = 0; j < r; ++j) {
    const long double Mj = profile.members[j].M;
    lg += (ks[j] - 1) * logl(L + Mj) - lgammal(static_cast<long double>(ks[j]));
    lg_variant +=
        (ks[j] - 1) * logl(L) - lgammal(static_cast<long double>(ks[j]));
  }
  RhsValue out;
  out.log_value = lg;
  out.value = expl(lg);
  out.variant_value = expl(lg_variant);
  out.kfactor = expl(log_kfactor);
  return out;
}

VerifyReport verify_theorem(const PolySystem& system,
                            const std::vector<uint64_t>& xs, YRule y_rule,
                            const TheoremParams& params,
                            long double profile_x_max, unsigned threads,
                            double norm_multiplier) {
  for (size_t i = 1; i < xs.size(); ++i)
    if (xs[i] <= xs[i - 1])
      throw std::invalid_argument("verify: xs must ascend");
  VerifyReport rep;
  rep.system = system.to_string();
  rep.params = params;
  rep.profile_x_max = profile_x_max;
  MertensProfile profile = estimate_profile(system, profile_x_max);
  rep.M_total = profile.M_total;
  for (const auto& m : profile.members) rep.M_j.push_back(m.M);
  {
    const mpz_class bd = system.abs_betaD();
    PhiRho phi0 = phi_rho(system.product(), bd);
    if (!phi0.degenerate && phi0.value != 0)
      rep.kfactor = powl(
          static_cast<long double>(mpz_get_d(bd.get_mpz_t())) /
              static_cast<long double>(phi0.value.get_d()),
          static_cast<long double>(params.effective_K(system.r())));
  }
  if (!xs.empty()) {
    const double norm = mpz_get_d(system.product().norm().get_mpz_t());
    if (norm * norm_multiplier > static_cast<double>(xs.front()))
      rep.norm_warning = true;
  }

  auto run_one = [&](uint64_t x) {
    VerifyPerX px;
    px.x = x;
    px.y = (y_rule == YRule::y_equals_x)
               ? x
               : static_cast<uint64_t>(
                     floorl(powl(static_cast<long double>(x),
                                 static_cast<long double>(params.alpha))));
    WindowSpec spec;
    spec.x = x;
    spec.y = px.y;
    spec.alpha = params.alpha;
    JointHistogram hist = window_histogram(system, spec);
    px.z_max = hist.window.z_max;
    px.total = hist.total;
    px.excluded = hist.excluded.size();
    const long double L = loglog(static_cast<long double>(x));
    px.k_cap = params.R * L;
    bool any = false;
    for (const auto& [ks, count] : hist.counts) {
      bool admissible = true;
      for (uint32_t k : ks)
        if (k < 1 || static_cast<long double>(k) > px.k_cap + 1e-9L) {
          admissible = false;
          break;
        }
      if (!admissible || count == 0) continue;
      any = true;
      RhsValue rhs = rhs_bound(system, profile, params, ks,
                               static_cast<long double>(x),
                               static_cast<long double>(px.y));
      RatioRow row;
      row.ks = ks;
      row.count = count;
      row.rhs = rhs.value;
      row.ratio = static_cast<long double>(count) / rhs.value;
      if (row.ratio > px.sup_ratio) {
        px.sup_ratio = row.ratio;
        px.argsup = ks;
      }
      if (params.fixed_constant_mode && row.ratio > params.constant)
        ++px.constant_exceedances;
      px.table.push_back(std::move(row));
    }
    px.no_admissible_k = !any;
    return px;
  };

  if (threads > 1 && xs.size() > 1) {
    std::vector<std::future<VerifyPerX>> futs;
    for (uint64_t x : xs)
      futs.push_back(std::async(std::launch::async, run_one, x));
    for (auto& f : futs) rep.per_x.push_back(f.get());  // ascending join
  } else {
    for (uint64_t x : xs) rep.per_x.push_back(run_one(x));
  }
  for (const auto& px : rep.per_x)
    rep.max_sup_ratio = std::max(rep.max_sup_ratio, px.sup_ratio);
  return rep;
}

}  // namespace omegaq
