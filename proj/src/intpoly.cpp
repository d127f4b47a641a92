#include "omegaq/intpoly.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace omegaq {

namespace {

void strip_leading_zeros(std::vector<mpz_class>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

/* Fraction-free Gaussian elimination (Bareiss): every intermediate
   division is exact, so the determinant of an integer matrix comes out
   without ever leaving Z. Destroys its argument. */
mpz_class bareiss_det(std::vector<std::vector<mpz_class>>& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == 0) ++pivot;
      if (pivot == n) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(),
                     prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign < 0 ? mpz_class(-m[n - 1][n - 1]) : m[n - 1][n - 1];
}

}  // namespace

IntPoly::IntPoly() : coeffs_{mpz_class(0)} {}

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0);
  strip_leading_zeros(coeffs_);
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  if (coeffs_.empty()) coeffs_.push_back(0);
  strip_leading_zeros(coeffs_);
}

IntPoly IntPoly::from_string(const std::string& csv) {
  std::vector<mpz_class> coeffs;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    // trim spaces
    size_t a = token.find_first_not_of(" \t");
    size_t b = token.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw std::invalid_argument("empty coefficient in '" + csv + "'");
    token = token.substr(a, b - a + 1);
    mpz_class c;
    if (mpz_set_str(c.get_mpz_t(), token.c_str(), 10) != 0)
      throw std::invalid_argument("bad coefficient '" + token + "'");
    coeffs.push_back(c);
  }
  if (coeffs.empty())
    throw std::invalid_argument("empty polynomial spec '" + csv + "'");
  return IntPoly(std::move(coeffs));
}

std::string IntPoly::to_string() const {
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += coeffs_[i].get_str();
  }
  return out;
}

bool IntPoly::is_zero() const {
  return coeffs_.size() == 1 && coeffs_[0] == 0;
}

const mpz_class& IntPoly::coeff(int i) const {
  static const mpz_class zero = 0;
  if (i < 0 || i > degree()) return zero;
  return coeffs_[static_cast<size_t>(i)];
}

mpz_class IntPoly::norm() const {
  mpz_class best = 0;
  for (int i = 1; i <= degree(); ++i) {
    mpz_class a = abs(coeffs_[static_cast<size_t>(i)]);
    if (a > best) best = a;
  }
  return best;
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

const mpz_class& IntPoly::disc() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!disc_) disc_ = discriminant(*this);
  return *disc_;
}

IntPoly IntPoly::derivative() const {
  if (degree() < 1) return IntPoly();
  std::vector<mpz_class> d(static_cast<size_t>(degree()));
  for (int i = 1; i <= degree(); ++i)
    d[static_cast<size_t>(i - 1)] = coeffs_[static_cast<size_t>(i)] * i;
  return IntPoly(std::move(d));
}

IntPoly IntPoly::shifted(const mpz_class& c) const {
  // Horner on polynomial coefficients: result = P(X + c)
  std::vector<mpz_class> acc{coeffs_.back()};
  for (int i = degree() - 1; i >= 0; --i) {
    // acc = acc * (X + c) + coeffs_[i]
    std::vector<mpz_class> next(acc.size() + 1);
    for (size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] += acc[k] * c;
    }
    next[0] += coeffs_[static_cast<size_t>(i)];
    acc = std::move(next);
  }
  return IntPoly(std::move(acc));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> prod(
      static_cast<size_t>(a.degree() + b.degree()) + 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(prod));
}

mpz_class eval(const IntPoly& P, const mpz_class& n) {
  mpz_class acc = 0;
  for (int i = P.degree(); i >= 0; --i) {
    acc *= n;
    acc += P.coeff(i);
  }
  return acc;
}

uint64_t eval_mod(const IntPoly& P, uint64_t n, uint64_t m) {
  if (m == 0) throw std::invalid_argument("eval_mod: zero modulus");
  if (m == 1) return 0;
  uint64_t nm = n % m;
  uint64_t acc = 0;
  for (int i = P.degree(); i >= 0; --i) {
    acc = static_cast<uint64_t>(
        (static_cast<unsigned __int128>(acc) * nm +
         mpz_fdiv_ui(P.coeff(i).get_mpz_t(), m)) %
        m);
  }
  return acc;
}

mpz_class resultant(const IntPoly& U, const IntPoly& V) {
  if (U.is_zero() || V.is_zero())
    throw std::invalid_argument("resultant: undefined for the zero polynomial");
  const int m = U.degree(), n = V.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), U.lead().get_mpz_t(), static_cast<unsigned>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), V.lead().get_mpz_t(), static_cast<unsigned>(m));
    return r;
  }
  // Sylvester matrix: n rows of U's coefficients, m rows of V's,
  // descending order, each shifted one column right of the previous.
  const size_t dim = static_cast<size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(dim, std::vector<mpz_class>(dim, 0));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k)
      s[static_cast<size_t>(row)][static_cast<size_t>(row + k)] =
          U.coeff(m - k);
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k)
      s[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] =
          V.coeff(n - k);
  return bareiss_det(s);
}

mpz_class discriminant(const IntPoly& P) {
  const int g = P.degree();
  if (g < 1)
    throw std::invalid_argument("discriminant: degree >= 1 required");
  if (g == 1) return 1;
  mpz_class res = resultant(P, P.derivative());
  mpz_class d;
  if (!mpz_divisible_p(res.get_mpz_t(), P.lead().get_mpz_t()))
    throw std::logic_error("discriminant: inexact division by lead");
  mpz_divexact(d.get_mpz_t(), res.get_mpz_t(), P.lead().get_mpz_t());
  if ((static_cast<long>(g) * (g - 1) / 2) % 2 != 0) d = -d;
  return d;
}

ProductIdentityCheck check_product_identity(const IntPoly& U,
                                            const IntPoly& V) {
  if (U.degree() < 1 || V.degree() < 1)
    throw std::invalid_argument("check_product_identity: degree >= 1 required");
  ProductIdentityCheck out;
  out.lhs = discriminant(U * V);
  out.rhs = discriminant(U) * discriminant(V);
  mpz_class res = resultant(U, V);
  out.rhs *= res * res;
  out.holds = (out.lhs == out.rhs);
  return out;
}

}  // namespace omegaq
