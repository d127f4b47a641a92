#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omegaq/asymptotics.hpp"
#include "omegaq/polysystem.hpp"

using namespace omegaq;

static bool close_rel(long double a, long double b, long double tol) {
  return fabsl(a - b) <= tol * std::max(fabsl(a), fabsl(b));
}

TEST_CASE("mertens_sum: spec examples") {
  // {X} at 10: 1/2 + 1/3 + 1/5 + 1/7
  CHECK(close_rel(mertens_sum(IntPoly{0, 1}, 10),
                  0.5L + 1.0L / 3 + 0.2L + 1.0L / 7, 1e-15L));
  CHECK(mertens_sum(IntPoly{0, 1}, 1.9) == 0.0L);
  // X^2+1: rho(2)=1, rho(3)=0, rho(5)=2, rho(7)=0
  CHECK(close_rel(mertens_sum(IntPoly{1, 0, 1}, 10), 0.9L, 1e-15L));
}

TEST_CASE("estimate_profile: single point, supremum location, symmetry") {
  PolySystem sx = PolySystem::from_string("0,1");
  MertensProfile p3 = estimate_profile(sx, 3);
  const long double S3 = 0.5L + 1.0L / 3;
  CHECK(close_rel(p3.members[0].M, fabsl(S3 - loglog(3.0L)), 1e-15L));
  CHECK(p3.members[0].grid_x.size() == 1);

  MertensProfile p = estimate_profile(sx, 100000);
  CHECK(close_rel(p.members[0].M, S3 - loglog(3.0L), 1e-12L));
  CHECK(p.members[0].M_arg_x == 3.0L);

  // identical root densities for a shifted pair
  PolySystem sxy = PolySystem::from_string("0,1;1,1");
  MertensProfile q = estimate_profile(sxy, 100000);
  CHECK(q.members[0].M == q.members[1].M);
  CHECK(close_rel(q.M_total, 2 * q.members[0].M, 1e-15L));
}

TEST_CASE("estimate_profile: M monotone in x_max, S monotone in x") {
  PolySystem s = PolySystem::from_string("1,0,1");
  long double prev = 0;
  for (long double xm : {1000.0L, 10000.0L, 100000.0L}) {
    MertensProfile p = estimate_profile(s, xm);
    CHECK(p.members[0].M >= prev);
    prev = p.members[0].M;
    for (size_t i = 1; i < p.members[0].grid_S.size(); ++i)
      CHECK(p.members[0].grid_S[i] >= p.members[0].grid_S[i - 1]);
  }
}

TEST_CASE("phi_rho: examples and degeneracy") {
  CHECK(phi_rho(IntPoly{0, 1}, 12).value == 4);  // Euler phi
  CHECK(phi_rho(IntPoly{0, 1}, 1).value == 1);
  CHECK(phi_rho(IntPoly{1, 0, 1}, 5).value == 3);
  PhiRho d = phi_rho(IntPoly{2, 1, 1}, 2);  // rho(2) = 2
  CHECK(d.degenerate);
  CHECK(d.value == 0);
}

TEST_CASE("rhs_bound: closed form at k = 1, linearity in y") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  MertensProfile prof = estimate_profile(s, 10000);
  TheoremParams params;
  const long double x = 1e6L;
  RhsValue v1 = rhs_bound(s, prof, params, {1, 1}, x, x);
  // all k_j = 1: kfactor * e^M * y / (log x)^r, and betaD = 1
  const long double expect =
      expl(prof.M_total) * x / powl(logl(x), 2.0L);
  CHECK(close_rel(v1.value, expect, 1e-12L));
  CHECK(v1.kfactor == 1.0L);

  RhsValue v2 = rhs_bound(s, prof, params, {3, 2}, x, x / 2);
  RhsValue v3 = rhs_bound(s, prof, params, {3, 2}, x, x);
  CHECK(close_rel(v3.value, 2 * v2.value, 1e-12L));
}

TEST_CASE("rhs_bound: independent recomputation at k=(3,3)") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  MertensProfile prof = estimate_profile(s, 1e6L);
  TheoremParams params;
  const long double x = 1e6L;
  RhsValue v = rhs_bound(s, prof, params, {3, 3}, x, x);
  const long double L = logl(logl(x));
  const long double m1 = prof.members[0].M, m2 = prof.members[1].M;
  const long double expect = expl(m1 + m2) * x / powl(logl(x), 2.0L) *
                             (powl(L + m1, 2.0L) / 2) *
                             (powl(L + m2, 2.0L) / 2);
  CHECK(close_rel(v.value, expect, 1e-9L));
}

TEST_CASE("rhs_bound: domain errors") {
  PolySystem s = PolySystem::from_string("0,1");
  MertensProfile prof = estimate_profile(s, 1000);
  TheoremParams params;
  CHECK_THROWS_AS(rhs_bound(s, prof, params, {0}, 1e6L, 1e6L),
                  std::domain_error);
  CHECK_THROWS_AS(rhs_bound(s, prof, params, {50}, 1e6L, 1e6L),
                  std::domain_error);  // 50 > 2 loglog 1e6
  CHECK_THROWS_AS(rhs_bound(s, prof, params, {2}, 1e6L, 10.0L),
                  std::domain_error);  // y < x^alpha
  CHECK_THROWS_AS(rhs_bound(s, prof, params, {2}, 1e6L, 2e6L),
                  std::domain_error);  // y > x
  CHECK_NOTHROW(rhs_bound(s, prof, params, {2}, 1e6L, 1000.0L));
}

TEST_CASE("rhs_bound: log-concavity ratio and the coarse variant") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  MertensProfile prof = estimate_profile(s, 1e5L);
  TheoremParams params;
  const long double x = 1e7L, L = logl(logl(x));
  for (uint32_t k = 1; k <= 4; ++k) {
    RhsValue a = rhs_bound(s, prof, params, {k, 1}, x, x);
    RhsValue b = rhs_bound(s, prof, params, {k + 1, 1}, x, x);
    CHECK(close_rel(b.value / a.value, (L + prof.members[0].M) / k, 1e-9L));
    CHECK(a.variant_value >= a.value);
  }
}

TEST_CASE("verify_theorem: determinism and edge flags") {
  PolySystem s = PolySystem::from_string("0,1");
  TheoremParams params;
  VerifyReport r1 = verify_theorem(s, {2000, 5000}, YRule::y_equals_x, params,
                                   10000, 1);
  VerifyReport r2 = verify_theorem(s, {2000, 5000}, YRule::y_equals_x, params,
                                   10000, 2);
  REQUIRE(r1.per_x.size() == 2);
  CHECK(r1.max_sup_ratio > 0);
  for (size_t i = 0; i < 2; ++i) {
    CHECK(r1.per_x[i].sup_ratio == r2.per_x[i].sup_ratio);
    CHECK(r1.per_x[i].argsup == r2.per_x[i].argsup);
    CHECK(r1.per_x[i].table.size() == r2.per_x[i].table.size());
  }
  CHECK_THROWS_AS(
      verify_theorem(s, {5000, 2000}, YRule::y_equals_x, params, 1000, 1),
      std::invalid_argument);

  // x so small that every omega value exceeds R loglog x
  VerifyReport tiny =
      verify_theorem(s, {3}, YRule::y_equals_x, params, 100, 1);
  CHECK(tiny.per_x[0].no_admissible_k);
  CHECK(tiny.per_x[0].sup_ratio == 0.0L);
  CHECK(tiny.norm_warning == false);
}

TEST_CASE("verify_theorem: r = 1 local law stays bounded over three decades") {
  PolySystem s = PolySystem::from_string("0,1");
  TheoremParams params;
  VerifyReport r = verify_theorem(s, {100000, 1000000, 10000000},
                                  YRule::y_equals_x, params, 1e6L, 3);
  const long double base = r.per_x[0].sup_ratio;
  CHECK(base > 0);
  for (const auto& px : r.per_x) {
    CHECK(px.sup_ratio > 0);
    CHECK(px.sup_ratio <= 2.0L * base);  // loose desk-scale stability
  }
}

TEST_CASE("verify_theorem: fixed-constant mode flags exceedances") {
  PolySystem s = PolySystem::from_string("0,1");
  TheoremParams params;
  params.fixed_constant_mode = true;
  params.constant = 1e-9;  // absurdly small: every row exceeds
  VerifyReport r =
      verify_theorem(s, {2000}, YRule::y_equals_x, params, 2000, 1);
  CHECK(r.per_x[0].constant_exceedances == r.per_x[0].table.size());
  params.constant = 1e9;  // absurdly large: no row exceeds
  VerifyReport r2 =
      verify_theorem(s, {2000}, YRule::y_equals_x, params, 2000, 1);
  CHECK(r2.per_x[0].constant_exceedances == 0);
}

TEST_CASE("verify_theorem: y = x^alpha rule") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  TheoremParams params;
  VerifyReport r = verify_theorem(s, {100000}, YRule::y_equals_x_alpha,
                                  params, 10000, 1);
  CHECK(r.per_x[0].y == 316);
  CHECK(r.per_x[0].sup_ratio >= 0);
}
