#include "fppoly.hpp"

namespace omegaq::fp {

Poly reduce(const IntPoly& P, uint64_t p) {
  Poly f(static_cast<size_t>(P.degree()) + 1);
  for (int i = 0; i <= P.degree(); ++i)
    f[static_cast<size_t>(i)] = mpz_fdiv_ui(P.coeff(i).get_mpz_t(), p);
  normalize(f);
  return f;
}

Poly mul(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<uint64_t>(
          (static_cast<unsigned __int128>(a[i]) * b[j] + c[i + j]) % p);
    }
  }
  normalize(c);
  return c;
}

Poly rem(Poly a, const Poly& b, uint64_t p) {
  const int db = deg(b);
  uint64_t inv_lead = invmod_u64(b.back(), p);
  while (deg(a) >= db) {
    uint64_t q = mulmod_u64(a.back(), inv_lead, p);
    const size_t shift = a.size() - b.size();
    if (q != 0) {
      for (size_t i = 0; i < b.size(); ++i) {
        uint64_t sub = mulmod_u64(q, b[i], p);
        uint64_t& t = a[shift + i];
        t = (t >= sub) ? t - sub : t + p - sub;
      }
    }
    a.pop_back();
    normalize(a);
    if (a.empty()) break;
  }
  return a;
}

Poly quotient(Poly a, const Poly& b, uint64_t p) {
  const int db = deg(b);
  if (deg(a) < db) return {};
  Poly q(a.size() - b.size() + 1, 0);
  uint64_t inv_lead = invmod_u64(b.back(), p);
  while (deg(a) >= db) {
    uint64_t coef = mulmod_u64(a.back(), inv_lead, p);
    const size_t shift = a.size() - b.size();
    q[shift] = coef;
    if (coef != 0) {
      for (size_t i = 0; i < b.size(); ++i) {
        uint64_t sub = mulmod_u64(coef, b[i], p);
        uint64_t& t = a[shift + i];
        t = (t >= sub) ? t - sub : t + p - sub;
      }
    }
    a.pop_back();
    normalize(a);
  }
  normalize(q);
  return q;
}

Poly monic(Poly f, uint64_t p) {
  if (f.empty()) return f;
  uint64_t inv = invmod_u64(f.back(), p);
  for (auto& c : f) c = mulmod_u64(c, inv, p);
  return f;
}

Poly gcd(Poly a, Poly b, uint64_t p) {
  while (!b.empty()) {
    a = rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return monic(std::move(a), p);
}

Poly x_pow_mod(uint64_t e, const Poly& f, uint64_t p) {
  Poly base{0, 1};
  base = rem(std::move(base), f, p);
  return pow_mod(std::move(base), e, f, p);
}

Poly pow_mod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
  Poly result{1};
  result = rem(std::move(result), f, p);
  while (e > 0) {
    if (e & 1) result = rem(mul(result, base, p), f, p);
    base = rem(mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

bool irreducible_mod_p(const Poly& f, uint64_t p) {
  const int n = deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  // Rabin's test: X^{p^n} = X mod f, and gcd(X^{p^{n/q}} - X, f) = 1
  // for every prime q | n. Exponents p^k can overflow 64 bits for large
  // p and k, so iterate the p-power Frobenius instead.
  auto frobenius_iter = [&](unsigned k) {
    // X^{p^k} mod f by repeated exponentiation by p
    Poly acc{0, 1};
    acc = rem(std::move(acc), f, p);
    for (unsigned i = 0; i < k; ++i) acc = pow_mod(std::move(acc), p, f, p);
    return acc;
  };
  Poly x{0, 1};
  x = rem(std::move(x), f, p);
  Poly xn = frobenius_iter(static_cast<unsigned>(n));
  if (xn != x) return false;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    bool q_prime = true;
    for (int w = 2; w * w <= q; ++w)
      if (q % w == 0) q_prime = false;
    if (!q_prime) continue;
    Poly h = frobenius_iter(static_cast<unsigned>(n / q));
    // h - x
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] >= 1) ? diff[1] - 1 : p - 1;
    normalize(diff);
    if (deg(gcd(diff, f, p)) != 0) return false;
  }
  return true;
}

}  // namespace omegaq::fp
