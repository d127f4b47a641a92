#include "omegaq/polysystem.hpp"

#include <algorithm>
#include <sstream>

#include "fppoly.hpp"
#include "omegaq/factorize.hpp"
#include "omegaq/primes.hpp"

namespace omegaq {

const char* to_string(IrreducibilityMethod m) {
  switch (m) {
    case IrreducibilityMethod::linear: return "linear";
    case IrreducibilityMethod::rational_root_search: return "rational_root_search";
    case IrreducibilityMethod::modular_certificate: return "modular_certificate";
    case IrreducibilityMethod::factor_search: return "factor_search";
  }
  return "?";
}

namespace {

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  FactorMap f;
  factor_into(abs(n), f);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : f) {
    const size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

bool has_rational_root(const IntPoly& P) {
  const int g = P.degree();
  if (P.coeff(0) == 0) return true;  // X divides
  auto nums = positive_divisors(P.coeff(0));
  auto dens = positive_divisors(P.lead());
  for (const auto& pv : nums) {
    for (const auto& qv : dens) {
      mpz_class common;
      mpz_gcd(common.get_mpz_t(), pv.get_mpz_t(), qv.get_mpz_t());
      if (common != 1) continue;  // lowest terms suffice
      for (int sign = -1; sign <= 1; sign += 2) {
        // q^g P(p/q) = sum_i beta_i p^i q^{g-i}
        mpz_class acc = 0, ppow = 1;
        std::vector<mpz_class> qpow(static_cast<size_t>(g) + 1);
        qpow[static_cast<size_t>(g)] = 1;
        for (int i = g - 1; i >= 0; --i)
          qpow[static_cast<size_t>(i)] = qpow[static_cast<size_t>(i + 1)] * qv;
        for (int i = 0; i <= g; ++i) {
          acc += P.coeff(i) * ppow * qpow[static_cast<size_t>(g - i)];
          ppow *= sign > 0 ? pv : mpz_class(-pv);
        }
        if (acc == 0) return true;
      }
    }
  }
  return false;
}

struct QPoly {  // dense rational polynomial, ascending
  std::vector<mpq_class> c;
  int deg() const {
    int d = static_cast<int>(c.size()) - 1;
    while (d >= 0 && c[static_cast<size_t>(d)] == 0) --d;
    return d;
  }
};

// Lagrange interpolation through (pts[i], vals[i]).
QPoly interpolate(const std::vector<mpz_class>& pts,
                  const std::vector<mpz_class>& vals) {
  const size_t n = pts.size();
  QPoly f;
  f.c.assign(n, mpq_class(0));
  for (size_t t = 0; t < n; ++t) {
    // basis polynomial prod_{s != t} (X - pts[s]) / (pts[t] - pts[s])
    std::vector<mpq_class> basis{mpq_class(1)};
    mpq_class denom(1);
    for (size_t s = 0; s < n; ++s) {
      if (s == t) continue;
      std::vector<mpq_class> next(basis.size() + 1);
      for (size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * mpq_class(pts[s]);
      }
      basis = std::move(next);
      denom *= mpq_class(pts[t] - pts[s]);
    }
    mpq_class scale = mpq_class(vals[t]) / denom;
    for (size_t k = 0; k < basis.size(); ++k) f.c[k] += basis[k] * scale;
  }
  for (auto& q : f.c) q.canonicalize();
  return f;
}

// True iff f (integer coefficients, deg >= 1) divides P exactly.
bool divides_exactly(const IntPoly& P, const QPoly& f) {
  const int df = f.deg();
  if (df < 1) return false;
  std::vector<mpq_class> rem(static_cast<size_t>(P.degree()) + 1);
  for (int i = 0; i <= P.degree(); ++i)
    rem[static_cast<size_t>(i)] = mpq_class(P.coeff(i));
  int dr = P.degree();
  const mpq_class& lead = f.c[static_cast<size_t>(df)];
  while (dr >= df) {
    mpq_class q = rem[static_cast<size_t>(dr)] / lead;
    for (int i = 0; i <= df; ++i)
      rem[static_cast<size_t>(dr - df + i)] -= q * f.c[static_cast<size_t>(i)];
    while (dr >= 0 && rem[static_cast<size_t>(dr)] == 0) --dr;
  }
  return dr < 0;
}

/* Bounded search for a degree-k factor: a factor's values divide P's
   values, and k+1 values pin the factor, so enumerating signed divisor
   combinations at k+1 sample points is exhaustive. */
bool has_factor_of_degree(const IntPoly& P, int k) {
  std::vector<mpz_class> pts;
  for (long m = 0; static_cast<int>(pts.size()) < k + 1; ++m) {
    if (m == 0) {
      pts.emplace_back(0);
    } else {
      pts.emplace_back(m);
      if (static_cast<int>(pts.size()) < k + 1) pts.emplace_back(-m);
    }
  }
  std::vector<mpz_class> vals(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    vals[i] = eval(P, pts[i]);
    if (vals[i] == 0) return true;  // integer root
  }
  std::vector<std::vector<mpz_class>> choices(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    auto divs = positive_divisors(vals[i]);
    std::sort(divs.begin(), divs.end());
    for (const auto& d : divs) {
      choices[i].push_back(d);
      if (i > 0) choices[i].push_back(-d);  // fix the sign at the first point
    }
  }
  unsigned long combos = 1;
  for (const auto& ch : choices) {
    combos *= ch.size();
    if (combos > 8000000ul)
      throw std::runtime_error(
          "irreducibility: divisor search exceeds the desk-scale budget");
  }
  std::vector<size_t> idx(pts.size(), 0);
  std::vector<mpz_class> w(pts.size());
  while (true) {
    for (size_t i = 0; i < pts.size(); ++i) w[i] = choices[i][idx[i]];
    QPoly f = interpolate(pts, w);
    bool integral = true;
    for (const auto& q : f.c)
      if (q.get_den() != 1) {
        integral = false;
        break;
      }
    if (integral && f.deg() >= 1 && f.deg() <= k && divides_exactly(P, f))
      return true;
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == choices[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == idx.size()) break;
  }
  return false;
}

uint64_t count_roots_small(const IntPoly& P, uint64_t p) {
  uint64_t count = 0;
  for (uint64_t r = 0; r < p; ++r)
    if (eval_mod(P, r, p) == 0) ++count;
  return count;
}

}  // namespace

bool is_irreducible(const IntPoly& P, IrreducibilityMethod* method) {
  const int g = P.degree();
  if (g < 1) return false;
  if (g == 1) {
    if (method) *method = IrreducibilityMethod::linear;
    return true;
  }
  if (has_rational_root(P)) {
    if (method) *method = IrreducibilityMethod::rational_root_search;
    return false;
  }
  if (g <= 3) {
    // a reducible cubic or quadratic must have a linear, hence rational,
    // factor
    if (method) *method = IrreducibilityMethod::rational_root_search;
    return true;
  }
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull,
                     59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull, 89ull,
                     97ull}) {
    if (mpz_fdiv_ui(P.lead().get_mpz_t(), p) == 0) continue;
    fp::Poly f = fp::reduce(P, p);
    if (fp::deg(f) == g && fp::irreducible_mod_p(f, p)) {
      if (method) *method = IrreducibilityMethod::modular_certificate;
      return true;
    }
  }
  for (int k = 2; 2 * k <= g; ++k) {
    if (has_factor_of_degree(P, k)) {
      if (method) *method = IrreducibilityMethod::factor_search;
      return false;
    }
  }
  if (method) *method = IrreducibilityMethod::factor_search;
  return true;
}

PolySystem PolySystem::validate(std::vector<IntPoly> members,
                                uint64_t scan_limit) {
  if (members.empty())
    throw system_error(SystemErrorCode::constant_member,
                       "validate: empty system");
  PolySystem sys;
  sys.cert_.methods.resize(members.size());
  for (size_t j = 0; j < members.size(); ++j) {
    if (members[j].degree() < 1)
      throw system_error(SystemErrorCode::constant_member,
                         "validate: member " + std::to_string(j) +
                             " is constant",
                         0, static_cast<int>(j));
    if (members[j].content() != 1)
      throw system_error(SystemErrorCode::non_unit_content,
                         "validate: member " + std::to_string(j) +
                             " has content " + members[j].content().get_str(),
                         0, static_cast<int>(j));
    if (!is_irreducible(members[j], &sys.cert_.methods[j]))
      throw system_error(SystemErrorCode::reducible_member,
                         "validate: member " + std::to_string(j) +
                             " (" + members[j].to_string() + ") is reducible",
                         0, static_cast<int>(j));
  }
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = i + 1; j < members.size(); ++j) {
      mpz_class res = resultant(members[i], members[j]);
      sys.cert_.pairwise_resultants.push_back(res);
      if (res == 0)
        throw system_error(SystemErrorCode::zero_pairwise_resultant,
                           "validate: members " + std::to_string(i) + " and " +
                               std::to_string(j) + " share a factor",
                           0, static_cast<int>(i));
    }
  }

  IntPoly product({1});
  for (const auto& m : members) product = product * m;
  sys.members_ = std::move(members);
  sys.product_ = product;
  sys.D_ = sys.product_.disc();
  sys.betaD_ = product.lead() * sys.D_;

  /* Fixed-divisor scan. A content-1 member with rho_j(p) = p, or a
     family with sum_j rho_j(p) > p, forces p < g; likewise rho_0(p) = p
     needs p <= g. Scanning p <= max(g, scan_limit) is therefore a
     complete check, with scan_limit as defense in depth. */
  const uint64_t limit =
      std::max<uint64_t>(static_cast<uint64_t>(sys.g()), scan_limit);
  sys.cert_.scan_limit = limit;
  for (uint64_t p : primes_upto(limit)) {
    uint64_t total = 0;
    for (size_t j = 0; j < sys.members_.size(); ++j) {
      uint64_t rj = count_roots_small(sys.members_[j], p);
      if (rj >= p)
        throw system_error(SystemErrorCode::fixed_prime_divisor,
                           "validate: fixed prime divisor p=" +
                               std::to_string(p) + " of member " +
                               std::to_string(j),
                           p, static_cast<int>(j));
      total += rj;
    }
    if (total > p)
      throw system_error(
          SystemErrorCode::fixed_prime_divisor,
          "validate: fixed prime divisor p=" + std::to_string(p) +
              " (member root counts sum to " + std::to_string(total) +
              " > p)",
          p);
    if (mpz_fdiv_ui(sys.betaD_.get_mpz_t(), p) == 0 &&
        count_roots_small(sys.product_, p) >= p)
      throw system_error(
          SystemErrorCode::fixed_prime_divisor,
          "validate: fixed prime divisor p=" + std::to_string(p) +
              " divides betaD and every residue class",
          p);
  }
  return sys;
}

PolySystem PolySystem::from_string(const std::string& spec,
                                   uint64_t scan_limit) {
  std::vector<IntPoly> members;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ';'))
    members.push_back(IntPoly::from_string(token));
  return validate(std::move(members), scan_limit);
}

std::string PolySystem::to_string() const {
  std::string out;
  for (size_t j = 0; j < members_.size(); ++j) {
    if (j) out += ";";
    out += members_[j].to_string();
  }
  return out;
}

}  // namespace omegaq
