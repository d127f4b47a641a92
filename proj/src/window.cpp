#include "omegaq/window.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "omegaq/primes.hpp"
#include "omegaq/rootcount.hpp"

namespace omegaq {

namespace {

constexpr uint64_t kSegmentSize = 1ull << 16;

// Conservative bound on |Q(n)| over (x, x+y]: sum |beta_i| (x+y)^i.
mpz_class value_bound(const IntPoly& P, uint64_t hi) {
  mpz_class bound = 0, pw = 1, h(static_cast<unsigned long>(hi));
  for (int i = 0; i <= P.degree(); ++i) {
    bound += abs(P.coeff(i)) * pw;
    pw *= h;
  }
  return bound;
}

struct MemberRoots {
  // roots[k] = sorted residues of member j mod primes[k]
  std::vector<std::vector<uint64_t>> roots;
};

}  // namespace

WindowSpec WindowSpec::resolved(const PolySystem& system) const {
  WindowSpec out = *this;
  if (out.x < 2) throw std::invalid_argument("window: x >= 2 required");
  const int g = system.g();
  const double lo = out.alpha / (4.0 * g), hi = out.alpha / (3.0 * g);
  if (out.epsilon == 0.0) out.epsilon = 0.5 * (lo + hi);
  if (!(out.epsilon > lo && out.epsilon < hi))
    throw std::invalid_argument(
        "window: epsilon must lie strictly inside (alpha/4g, alpha/3g)");
  if (!(out.alpha > 0.0 && out.alpha < 1.0))
    throw std::invalid_argument("window: alpha in (0,1) required");
  if (out.z_max == 0) {
    mpz_class bound = 1;
    for (const auto& m : system.members())
      bound = std::max(bound, value_bound(m, out.x + out.y));
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), bound.get_mpz_t());
    root += 1;
    uint64_t z = root.fits_ulong_p() ? root.get_ui() : kSegmentSize;
    out.z_max = std::clamp<uint64_t>(z, 1000, kSegmentSize);
  }
  return out;
}

namespace {

/* Segment worker: exact cofactor ledgers with a u64 fast path when the
   value bound fits 63 bits, mpz otherwise. The sink sees each n in
   order with its omega vector, exclusion flag and (optionally) full
   factorizations. */
class WindowSieve {
 public:
  WindowSieve(const PolySystem& system, const WindowSpec& spec, bool collect)
      : system_(system), spec_(spec), collect_(collect) {
    const uint64_t hi = spec.x + spec.y;
    r_ = system.r();
    small_mode_ = true;
    for (const auto& m : system.members()) {
      bounds_.push_back(value_bound(m, hi));
      if (bounds_.back() >= mpz_class(1) << 62) small_mode_ = false;
    }
    primes_ = primes_upto(spec.z_max);
    member_roots_.resize(r_);
    for (size_t j = 0; j < r_; ++j) {
      member_roots_[j].roots.resize(primes_.size());
      for (size_t k = 0; k < primes_.size(); ++k) {
        RootSet rs = roots_mod_p(system.member(j), primes_[k]);
        if (rs.all_residues)
          throw std::logic_error("window: member vanishes mod p (content > 1)");
        member_roots_[j].roots[k] = std::move(rs.residues);
      }
    }
    if (small_mode_) {
      coeffs_i64_.resize(r_);
      for (size_t j = 0; j < r_; ++j)
        for (const auto& c : system.member(j).coeffs())
          coeffs_i64_[j].push_back(c.get_si());
    }
  }

  using Sink = std::function<void(uint64_t n, const uint32_t* omega,
                                  bool excluded,
                                  std::vector<FactorMap>* factors)>;

  void run(const Sink& sink) {
    const uint64_t begin = spec_.x + 1, end = spec_.x + spec_.y;
    for (uint64_t lo = begin; lo <= end; lo += kSegmentSize) {
      const uint64_t hi = std::min(end, lo + kSegmentSize - 1);
      process_segment(lo, hi, sink);
    }
  }

 private:
  void process_segment(uint64_t lo, uint64_t hi, const Sink& sink);

  const PolySystem& system_;
  WindowSpec spec_;
  bool collect_;
  size_t r_;
  bool small_mode_;
  std::vector<mpz_class> bounds_;
  std::vector<uint64_t> primes_;
  std::vector<MemberRoots> member_roots_;
  std::vector<std::vector<int64_t>> coeffs_i64_;
};

void WindowSieve::process_segment(uint64_t lo, uint64_t hi, const Sink& sink) {
  const size_t len = static_cast<size_t>(hi - lo + 1);
  std::vector<uint32_t> omega(len * r_, 0);
  std::vector<uint8_t> excluded(len, 0);
  std::vector<std::vector<FactorMap>> factors;
  if (collect_) factors.assign(len, std::vector<FactorMap>(r_));

  std::vector<std::vector<uint64_t>> led_u;
  std::vector<std::vector<mpz_class>> led_z;
  if (small_mode_) {
    led_u.assign(r_, std::vector<uint64_t>(len));
    for (size_t j = 0; j < r_; ++j) {
      const auto& cs = coeffs_i64_[j];
      for (size_t i = 0; i < len; ++i) {
        __int128 acc = 0;
        const __int128 n = static_cast<__int128>(lo + i);
        for (size_t k = cs.size(); k-- > 0;) acc = acc * n + cs[k];
        const uint64_t v = static_cast<uint64_t>(acc < 0 ? -acc : acc);
        led_u[j][i] = v;
        if (v <= 1) excluded[i] = 1;
      }
    }
  } else {
    led_z.assign(r_, std::vector<mpz_class>(len));
    mpz_class n;
    for (size_t i = 0; i < len; ++i) {
      n = static_cast<unsigned long>(lo + i);
      for (size_t j = 0; j < r_; ++j) {
        led_z[j][i] = abs(eval(system_.member(j), n));
        if (led_z[j][i] <= 1) excluded[i] = 1;
      }
    }
  }

  // strike root progressions, dividing out full p-adic valuations
  for (size_t k = 0; k < primes_.size(); ++k) {
    const uint64_t p = primes_[k];
    for (size_t j = 0; j < r_; ++j) {
      for (uint64_t root : member_roots_[j].roots[k]) {
        uint64_t first = (root + p - (lo % p)) % p;
        for (uint64_t i = first; i < len; i += p) {
          if (excluded[i]) continue;
          unsigned e = 0;
          if (small_mode_) {
            uint64_t& v = led_u[j][i];
            while (v % p == 0) {
              v /= p;
              ++e;
            }
          } else {
            mpz_class& v = led_z[j][i];
            while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
              mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
              ++e;
            }
          }
          if (e) {
            ++omega[i * r_ + j];
            if (collect_)
              factors[i][j][mpz_class(static_cast<unsigned long>(p))] = e;
          }
        }
      }
    }
  }

  // resolve cofactors: <= z^2 is prime by construction, larger values
  // go through the primality test and a bounded Pollard split
  const mpz_class z2 =
      mpz_class(static_cast<unsigned long>(spec_.z_max)) * spec_.z_max;
  const uint64_t z2_u = spec_.z_max * spec_.z_max;
  for (size_t i = 0; i < len; ++i) {
    if (excluded[i]) continue;
    for (size_t j = 0; j < r_; ++j) {
      if (small_mode_) {
        const uint64_t v = led_u[j][i];
        if (v == 1) continue;
        if (v <= z2_u || is_prime_u64(v)) {
          ++omega[i * r_ + j];
          if (collect_) factors[i][j][mpz_class(static_cast<unsigned long>(v))] += 1;
        } else {
          FactorMap fm;
          try {
            factor_into(mpz_class(static_cast<unsigned long>(v)), fm, 3);
          } catch (const std::runtime_error&) {
            try {
              fm = oracle_factor(mpz_class(static_cast<unsigned long>(v)));
            } catch (const std::exception&) {
              throw std::runtime_error(
                  "window: cannot certify a cofactor at n=" +
                  std::to_string(lo + i) + "; increase z_max");
            }
          }
          omega[i * r_ + j] += omega_of(fm);
          if (collect_)
            for (const auto& [q, e] : fm) factors[i][j][q] += e;
        }
      } else {
        const mpz_class& v = led_z[j][i];
        if (v == 1) continue;
        if (v <= z2 || is_prime_mpz(v)) {
          ++omega[i * r_ + j];
          if (collect_) factors[i][j][v] += 1;
        } else {
          FactorMap fm;
          try {
            factor_into(v, fm, 3);
          } catch (const std::runtime_error&) {
            try {
              fm = oracle_factor(v);
            } catch (const std::exception&) {
              throw std::runtime_error(
                  "window: cannot certify a cofactor at n=" +
                  std::to_string(lo + i) + "; increase z_max");
            }
          }
          omega[i * r_ + j] += omega_of(fm);
          if (collect_)
            for (const auto& [q, e] : fm) factors[i][j][q] += e;
        }
      }
    }
  }

  for (size_t i = 0; i < len; ++i)
    sink(lo + i, &omega[i * r_], excluded[i] != 0,
         collect_ ? &factors[i] : nullptr);
}

}  // namespace

OmegaResult omega_window(const PolySystem& system, const WindowSpec& spec,
                         bool collect_factorizations) {
  WindowSpec resolved = spec.resolved(system);
  if (collect_factorizations && resolved.y > 10000000ull)
    throw std::invalid_argument(
        "omega_window: factorization storage is capped at 1e7 values");
  OmegaResult out;
  out.spec = resolved;
  out.r = system.r();
  out.has_factorizations = collect_factorizations;
  if (resolved.y == 0) return out;
  out.omega.reserve(resolved.y);
  WindowSieve sieve(system, resolved, collect_factorizations);
  sieve.run([&](uint64_t n, const uint32_t* om, bool excl,
                std::vector<FactorMap>* fm) {
    out.omega.emplace_back(om, om + out.r);
    if (excl) out.excluded.push_back(n);
    if (fm) out.factorizations.push_back(std::move(*fm));
  });
  return out;
}

void JointHistogram::merge(const JointHistogram& other) {
  if (r != other.r) throw std::invalid_argument("histogram merge: arity mismatch");
  for (const auto& [k, c] : other.counts) counts[k] += c;
  total += other.total;
  excluded.insert(excluded.end(), other.excluded.begin(), other.excluded.end());
}

JointHistogram joint_histogram(const OmegaResult& vectors) {
  JointHistogram h;
  h.r = vectors.r;
  h.window = vectors.spec;
  size_t excl_idx = 0;
  for (size_t i = 0; i < vectors.omega.size(); ++i) {
    const uint64_t n = vectors.spec.x + 1 + i;
    if (excl_idx < vectors.excluded.size() &&
        vectors.excluded[excl_idx] == n) {
      ++excl_idx;
      continue;
    }
    h.counts[vectors.omega[i]] += 1;
    h.total += 1;
  }
  h.excluded = vectors.excluded;
  return h;
}

JointHistogram window_histogram(const PolySystem& system,
                                const WindowSpec& spec) {
  WindowSpec resolved = spec.resolved(system);
  JointHistogram h;
  h.r = system.r();
  h.window = resolved;
  if (resolved.y == 0) return h;
  WindowSieve sieve(system, resolved, false);
  sieve.run([&](uint64_t n, const uint32_t* om, bool excl,
                std::vector<FactorMap>*) {
    if (excl) {
      h.excluded.push_back(n);
      return;
    }
    std::vector<uint32_t> key(om, om + system.r());
    h.counts[key] += 1;
    h.total += 1;
  });
  return h;
}

const char* to_string(NClass c) {
  switch (c) {
    case NClass::N1: return "N1";
    case NClass::N2: return "N2";
    case NClass::N3: return "N3";
  }
  return "?";
}

namespace {

mpz_class floor_pow(uint64_t x, double e) {
  long double v = powl(static_cast<long double>(x), static_cast<long double>(e));
  mpz_class out;
  mpz_set_d(out.get_mpz_t(), static_cast<double>(floorl(v)));
  return out;
}

mpz_class pow_map(const FactorMap& f) {
  mpz_class out = 1;
  for (const auto& [p, e] : f) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    out *= pe;
  }
  return out;
}

}  // namespace

FactorizationRecord decompose(const PolySystem& system, uint64_t n,
                              const std::vector<FactorMap>& qfactors,
                              const WindowSpec& spec) {
  const int g = system.g();
  FactorizationRecord rec;
  rec.n = n;
  rec.qfactors = qfactors;

  FactorMap merged;
  for (const auto& fm : qfactors)
    for (const auto& [p, e] : fm) merged[p] += e;

  const mpz_class cap2 = floor_pow(spec.x, 2.0 * g * spec.epsilon);

  // xi_n: largest integer whose <=xi prime-power block of Q(n) stays
  // under x^{2 g eps}; primes ascend, so stop at the first overflow.
  mpz_class acc = 1;
  rec.xi_unbounded = true;
  rec.xi = 1;
  for (const auto& [p, e] : merged) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    if (acc * pe <= cap2) {
      acc *= pe;
      rec.xi = p;
    } else {
      rec.xi = p - 1;
      rec.xi_unbounded = false;
      break;
    }
  }

  rec.a.assign(system.r(), mpz_class(1));
  rec.b = 1;
  rec.q_max_a = 1;
  rec.p_min_b = 0;
  rec.v = 0;
  rec.omega_b = 0;
  for (size_t j = 0; j < system.r(); ++j)
    for (const auto& [p, e] : qfactors[j]) {
      if (p <= rec.xi) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        rec.a[j] *= pe;
      }
    }
  for (const auto& [p, e] : merged) {
    if (p <= rec.xi) {
      rec.q_max_a = p;
    } else {
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      rec.b *= pe;
      if (rec.p_min_b == 0) {
        rec.p_min_b = p;
        rec.v = e;
      }
      ++rec.omega_b;
    }
  }

  // t/d split of each a_jn by the primes of betaD
  const mpz_class betaD = system.abs_betaD();
  rec.t.assign(system.r(), mpz_class(1));
  rec.d.assign(system.r(), mpz_class(1));
  rec.t_star.assign(system.r(), mpz_class(1));
  rec.d_star.assign(system.r(), mpz_class(1));
  for (size_t j = 0; j < system.r(); ++j)
    for (const auto& [p, e] : qfactors[j]) {
      if (p > rec.xi) continue;
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      if (mpz_divisible_p(betaD.get_mpz_t(), p.get_mpz_t())) {
        rec.t[j] *= pe;
        rec.t_star[j] *= p;
      } else {
        rec.d[j] *= pe;
        rec.d_star[j] *= p;
      }
    }

  const mpz_class cap1 = floor_pow(spec.x, static_cast<double>(g) * spec.epsilon);
  const mpz_class pbound = floor_pow(spec.x, spec.epsilon / 3.0);
  if (acc > cap1) {
    rec.cls = NClass::N3;
  } else if (rec.p_min_b == 0 || rec.p_min_b > pbound) {
    rec.cls = NClass::N1;
  } else {
    rec.cls = NClass::N2;
  }
  return rec;
}

std::vector<FactorizationRecord> decompose_window(const PolySystem& system,
                                                  const WindowSpec& spec) {
  WindowSpec resolved = spec.resolved(system);
  OmegaResult res = omega_window(system, resolved, true);
  std::vector<FactorizationRecord> records;
  records.reserve(res.omega.size());
  size_t excl_idx = 0;
  for (size_t i = 0; i < res.omega.size(); ++i) {
    const uint64_t n = resolved.x + 1 + i;
    if (excl_idx < res.excluded.size() && res.excluded[excl_idx] == n) {
      ++excl_idx;
      continue;
    }
    records.push_back(decompose(system, n, res.factorizations[i], resolved));
  }
  return records;
}

ClassAuditReport audit_classes(const std::vector<FactorizationRecord>& records,
                               const PolySystem& system,
                               const WindowSpec& spec, double rankin_C) {
  const WindowSpec rs = spec.resolved(system);
  const int g = system.g();
  const size_t r = system.r();
  ClassAuditReport rep;
  rep.x = rs.x;
  rep.y = rs.y;
  rep.alpha = rs.alpha;
  rep.epsilon = rs.epsilon;
  rep.E = 3.0 * (g + 1) / rs.epsilon;
  rep.records = records.size();
  if (rankin_C == 0.0)
    rankin_C = (1.0 + r * (g + 1) * std::log(3.0)) / (g * rs.epsilon) + 1.0;
  rep.rankin_C = rankin_C;

  const mpz_class betaD = system.abs_betaD();
  const mpz_class cap1 = floor_pow(rs.x, static_cast<double>(g) * rs.epsilon);
  const mpz_class cap2 = floor_pow(rs.x, 2.0 * g * rs.epsilon);
  const mpz_class pbound = floor_pow(rs.x, rs.epsilon / 3.0);
  mpz_class xg1;  // x^{g+1}, the explicit smallness threshold for the E bound
  mpz_ui_pow_ui(xg1.get_mpz_t(), rs.x, static_cast<unsigned long>(g) + 1);

  auto fail = [&](uint64_t n, const char* check, const std::string& detail) {
    rep.violations.push_back({n, check, detail});
  };
  auto note = [&](uint64_t n, const char* check, const std::string& detail) {
    rep.observations.push_back({n, check, detail});
  };

  for (const auto& rec : records) {
    // (1) product identity prod_j a_j * b = prod_j |Q_j(n)|
    mpz_class prod_a = 1, prod_q = 1;
    for (size_t j = 0; j < r; ++j) {
      prod_a *= rec.a[j];
      prod_q *= pow_map(rec.qfactors[j]);
    }
    if (prod_a * rec.b != prod_q)
      fail(rec.n, "product", "a-parts times b do not recompose Q(n)");

    // (2) smooth/rough boundary at xi
    for (size_t j = 0; j < r; ++j)
      for (const auto& [p, e] : rec.qfactors[j]) {
        const bool in_a = mpz_divisible_p(rec.a[j].get_mpz_t(), p.get_mpz_t());
        if ((p <= rec.xi) != in_a)
          fail(rec.n, "xi_boundary",
               "prime " + p.get_str() + " on the wrong side of xi");
      }
    if (rec.p_min_b != 0 && rec.p_min_b <= rec.xi)
      fail(rec.n, "xi_boundary", "P^-(b) <= xi");

    // (3) xi maximality: prod a <= x^{2g eps} < prod a * p_n^{v_n}
    if (prod_a > cap2) fail(rec.n, "xi_cap", "smooth part exceeds x^{2g eps}");
    if (!rec.xi_unbounded && rec.p_min_b != 0) {
      mpz_class pv;
      mpz_pow_ui(pv.get_mpz_t(), rec.p_min_b.get_mpz_t(), rec.v);
      if (prod_a * pv <= cap2)
        fail(rec.n, "xi_cap", "xi not maximal: next block still fits");
    }

    // (4) t/d split invariants
    for (size_t j = 0; j < r; ++j) {
      if (rec.t[j] * rec.d[j] != rec.a[j])
        fail(rec.n, "td_split", "t*d != a at member " + std::to_string(j));
      FactorMap tf;
      if (rec.t[j] > 1) factor_into(rec.t[j], tf);
      for (const auto& [p, e] : tf)
        if (!mpz_divisible_p(betaD.get_mpz_t(), p.get_mpz_t()))
          fail(rec.n, "td_split", "t carries prime " + p.get_str() +
                                      " outside betaD");
      mpz_class gcd_d;
      mpz_gcd(gcd_d.get_mpz_t(), rec.d[j].get_mpz_t(), betaD.get_mpz_t());
      if (gcd_d != 1)
        fail(rec.n, "td_split", "gcd(d_j, betaD) = " + gcd_d.get_str());
      // kernels: divide, squarefree, same prime support
      auto kernel_ok = [](const mpz_class& value, const mpz_class& kernel) {
        if (!mpz_divisible_p(value.get_mpz_t(), kernel.get_mpz_t()))
          return false;
        if (kernel > 1) {
          FactorMap kf;
          factor_into(kernel, kf);
          for (const auto& [p, e] : kf)
            if (e != 1) return false;
        }
        mpz_class residue = value, common;
        while (residue > 1) {
          mpz_gcd(common.get_mpz_t(), residue.get_mpz_t(),
                  kernel.get_mpz_t());
          if (common == 1) return false;  // prime of value outside kernel
          mpz_divexact(residue.get_mpz_t(), residue.get_mpz_t(),
                       common.get_mpz_t());
        }
        return true;
      };
      if (!kernel_ok(rec.t[j], rec.t_star[j]))
        fail(rec.n, "kernels", "t_star is not the kernel of t");
      if (!kernel_ok(rec.d[j], rec.d_star[j]))
        fail(rec.n, "kernels", "d_star is not the kernel of d");
    }
    for (size_t i = 0; i < r; ++i)
      for (size_t j = i + 1; j < r; ++j) {
        mpz_class c;
        mpz_gcd(c.get_mpz_t(), rec.d[i].get_mpz_t(), rec.d[j].get_mpz_t());
        if (c != 1)
          fail(rec.n, "d_coprime",
               "gcd(d_" + std::to_string(i) + ", d_" + std::to_string(j) +
                   ") has prime witness " +
                   oracle_factor(c).begin()->first.get_str());
      }

    // (5) class trichotomy recomputed
    NClass expect;
    if (prod_a > cap1)
      expect = NClass::N3;
    else if (rec.p_min_b == 0 || rec.p_min_b > pbound)
      expect = NClass::N1;
    else
      expect = NClass::N2;
    if (expect != rec.cls) fail(rec.n, "class", "class label mismatch");

    switch (rec.cls) {
      case NClass::N1: ++rep.count_n1; break;
      case NClass::N2: ++rep.count_n2; break;
      case NClass::N3: ++rep.count_n3; break;
    }

    // (6) N1: omega(b) <= E once x clears the explicit threshold
    if (rec.cls == NClass::N1) {
      if (prod_q <= xg1) {
        if (rec.omega_b > rep.E)
          fail(rec.n, "n1_E", "omega(b) exceeds 3(g+1)/eps");
      } else if (rec.omega_b > rep.E) {
        note(rec.n, "n1_E_below_threshold",
             "omega(b) > E but |Q(n)| > x^{g+1}");
      }
    }

    // (7) N2: p_n^{v_n} > x^{g eps} and p_n <= x^{eps/3}
    if (rec.cls == NClass::N2) {
      mpz_class pv;
      mpz_pow_ui(pv.get_mpz_t(), rec.p_min_b.get_mpz_t(), rec.v);
      if (pv <= cap1) fail(rec.n, "n2_pv", "p_n^{v_n} <= x^{g eps}");
      if (rec.p_min_b > pbound) fail(rec.n, "n2_p", "p_n > x^{eps/3}");
    }

    // (8) N3: omega(b) <= eta(q_n) = (g+1) log x / log q_n
    if (rec.cls == NClass::N3) {
      const double qn = mpz_get_d(rec.q_max_a.get_mpz_t());
      if (qn > 1.5) {
        const double eta = (g + 1) * std::log(static_cast<double>(rs.x)) /
                           std::log(qn);
        if (rec.omega_b > eta) fail(rec.n, "n3_eta", "omega(b) > eta(q_n)");
      } else {
        fail(rec.n, "n3_eta", "N3 record with trivial smooth part");
      }
      long double v = rankin_C / std::log(mpz_get_d(rec.q_max_a.get_mpz_t()));
      long double ratio =
          mpz_get_d(prod_a.get_mpz_t()) / mpz_get_d(cap1.get_mpz_t());
      rep.rankin_sum += powl(ratio, v);
    }

    // (9) omega accounting: omega(a_j) + omega(b) >= omega(Q_j(n)),
    // and in the small-smooth classes omega(a_j) < omega(Q_j(n)) as
    // soon as |Q_j(n)| > x^{g eps}
    for (size_t j = 0; j < r; ++j) {
      const unsigned omega_q = omega_of(rec.qfactors[j]);
      unsigned omega_a = 0;
      for (const auto& [p, e] : rec.qfactors[j])
        if (p <= rec.xi) ++omega_a;
      if (omega_a + rec.omega_b < omega_q)
        fail(rec.n, "omega_split", "omega(a_j) + omega(b) < omega(Q_j)");
      if (prod_a <= cap1) {
        if (pow_map(rec.qfactors[j]) > cap1 && omega_a >= omega_q &&
            omega_q > 0)
          fail(rec.n, "omega_upper", "omega(a_j) not strictly below k_j");
        if (rec.cls == NClass::N1 && prod_q <= xg1 &&
            omega_a + rep.E < omega_q)
          fail(rec.n, "omega_lower", "omega(a_j) < k_j - E");
      }
    }
  }

  // N2 congruence-count diagnostic
  if (pbound >= 2) {
    const uint64_t pb = pbound.get_ui();
    for (uint64_t p : primes_upto(pb)) {
      unsigned nu = 1;
      mpz_class pk(static_cast<unsigned long>(p));
      while (pk <= cap1) {
        pk *= p;
        ++nu;
      }
      // pk = p^nu is now the least power above x^{g eps}
      if (!pk.fits_ulong_p()) continue;
      uint64_t rho_pn = rho_prime_power(system.product(), p, nu,
                                        std::max<uint64_t>(pk.get_ui(), 2));
      rep.n2_proxy += static_cast<long double>(rs.y) * rho_pn /
                          mpz_get_d(pk.get_mpz_t()) +
                      rho_pn;
      rep.n2_stewart_proxy +=
          static_cast<long double>(rs.y) * g *
          powl(static_cast<long double>(p), -static_cast<long double>(nu) / g);
    }
  }
  rep.n2_ratio = rep.n2_proxy > 0
                     ? static_cast<long double>(rep.count_n2) / rep.n2_proxy
                     : 0.0L;
  if (rep.count_n2 > 0 && rep.n2_proxy > 0 && rep.n2_ratio > 1.0L)
    rep.violations.push_back(
        {0, "n2_proxy", "empirical N2 count exceeds the congruence proxy"});
  if (rep.rankin_sum + 1e-9L < static_cast<long double>(rep.count_n3))
    rep.violations.push_back(
        {0, "rankin", "Rankin-weighted sum fell below the N3 count"});

  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace omegaq
