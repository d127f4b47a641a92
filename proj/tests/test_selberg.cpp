#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegaq/selberg.hpp"
#include "oracles.hpp"

using namespace omegaq;

namespace {

mpq_class q(long num, long den = 1) {
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

std::map<uint64_t, mpq_class> classical_density(uint64_t z) {
  // system {X}: rho(p) = 1 at every prime
  std::map<uint64_t, mpq_class> d;
  for (uint64_t p = 2; p <= z; ++p) {
    bool prime = p >= 2;
    for (uint64_t w = 2; w * w <= p; ++w)
      if (p % w == 0) prime = false;
    if (prime) d[p] = q(1, static_cast<long>(p));
  }
  return d;
}

}  // namespace

TEST_CASE("selberg_weights: one-prime closed form and trivial level") {
  std::map<uint64_t, mpq_class> dens{{2, q(1, 2)}};
  auto l = selberg_weights(dens, 2, 2);
  REQUIRE(l.size() == 2);
  CHECK(l[1] == 1);
  CHECK(l[2] == -1);

  auto trivial = selberg_weights(dens, 2, 1);
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[1] == 1);

  std::map<uint64_t, mpq_class> bad{{2, q(1)}};
  CHECK_THROWS_AS(selberg_weights(bad, 2, 2), std::invalid_argument);
}

TEST_CASE("selberg_weights match the exact quadratic-form minimizer") {
  auto dens = classical_density(11);
  for (uint64_t level : {11ull, 30ull}) {
    auto mine = selberg_weights(dens, 11, level);
    auto oracle = oracles::qp_minimize(dens, 11, level);
    REQUIRE(mine.size() == oracle.lambda.size());
    for (const auto& [d, l] : oracle.lambda) {
      REQUIRE(mine.count(d) == 1);
      CHECK(mine[d] == l);
    }
    // minimal value of the form is 1/G(level); G = sum of h over support
    mpq_class G = 0;
    for (const auto& [d, l] : mine) {
      (void)l;
      mpq_class h = 1;
      for (const auto& [p, g] : dens)
        if (d % p == 0) h *= g / (1 - g);
      G += h;
    }
    CHECK(oracle.min_value * G == 1);
  }
}

TEST_CASE("lambda signs alternate with omega(d); |lambda| <= 1") {
  auto dens = classical_density(11);
  auto l = selberg_weights(dens, 11, 30);
  for (const auto& [d, v] : l) {
    unsigned omega = 0;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull})
      if (d % p == 0) ++omega;
    if (omega % 2 == 0)
      CHECK(v > 0);
    else
      CHECK(v < 0);
    CHECK(abs(v) <= 1);
  }
}

TEST_CASE("sieve_upper_bound: odd numbers in (0, 100]") {
  PolySystem s = PolySystem::from_string("0,1");
  SieveInstance inst;
  inst.x = 0;
  inst.y = 100;
  inst.z = 2;
  SieveResult r = sieve_upper_bound(s, inst, true);
  CHECK(r.upper_bound == 50);
  CHECK(r.exact_count == 50);
  CHECK(r.conditioned_count == 100);
}

TEST_CASE("sieve_upper_bound: constraint kills the set") {
  PolySystem s = PolySystem::from_string("3,2");  // 2X+3, betaD = 2
  SieveInstance inst;
  inst.x = 100;
  inst.y = 50;
  inst.z = 5;
  inst.t = {2};  // rho_0(2) = 0: 2X+3 is odd for every n
  SieveResult r = sieve_upper_bound(s, inst, true);
  CHECK(r.empty_by_constraint);
  CHECK(r.upper_bound == 0);
  CHECK(r.exact_count == 0);
}

TEST_CASE("sieve_upper_bound: density-1 prime certifies emptiness") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  SieveInstance inst;
  inst.x = 10000;
  inst.y = 10000;
  inst.z = 10;
  inst.d = {3, 1};  // 2 stays in the sifting set, rho_0(2) = 2
  SieveResult r = sieve_upper_bound(s, inst, true);
  CHECK(r.empty_by_density);
  CHECK(r.upper_bound == 0);
  CHECK(r.exact_count == 0);
}

TEST_CASE("sieve_upper_bound: non-trivial dominance and analytic side") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  SieveInstance inst;
  inst.x = 10000;
  inst.y = 10000;
  inst.z = 10;
  inst.d = {6, 1};  // 2 | d: sifting set {5, 7}
  SieveResult r = sieve_upper_bound(s, inst, true);
  REQUIRE(r.exact_count.has_value());
  CHECK(*r.exact_count > 0);
  CHECK(r.upper_bound >= mpq_class(static_cast<unsigned long>(*r.exact_count)));
  // quadform <= main term + pessimistic remainder (exact rationals)
  CHECK(r.upper_bound <= r.main_term + r.remainder_budget);
  // |A| = X + O(R): the progression-count error is capped by R
  mpq_class diff = mpq_class(static_cast<unsigned long>(r.conditioned_count)) -
                   r.X;
  CHECK(abs(diff) <= r.R_cap);
}

TEST_CASE("monotone sifting: exact count weakly decreases in z") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  uint64_t prev = UINT64_MAX;
  for (uint64_t z : {2ull, 3ull, 5ull, 7ull, 11ull}) {
    SieveInstance inst;
    inst.x = 10000;
    inst.y = 5000;
    inst.z = z;
    inst.d = {6, 1};
    SieveResult r = sieve_upper_bound(s, inst, true);
    REQUIRE(r.exact_count.has_value());
    CHECK(*r.exact_count <= prev);
    prev = *r.exact_count;
  }
}

TEST_CASE("instance validation rejects malformed constraints") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  SieveInstance inst;
  inst.x = 100;
  inst.y = 100;
  inst.z = 5;
  inst.d = {4, 1};  // not squarefree
  CHECK_THROWS_AS(sieve_upper_bound(s, inst), std::invalid_argument);
  inst.d = {15, 3};  // not pairwise coprime
  CHECK_THROWS_AS(sieve_upper_bound(s, inst), std::invalid_argument);
  inst.d = {3};  // arity
  CHECK_THROWS_AS(sieve_upper_bound(s, inst), std::invalid_argument);

  PolySystem s2 = PolySystem::from_string("3,2");  // betaD = 2
  SieveInstance i2;
  i2.x = 100;
  i2.y = 100;
  i2.z = 5;
  i2.t = {3};  // 3 does not divide betaD
  CHECK_THROWS_AS(sieve_upper_bound(s2, i2), std::invalid_argument);
}

TEST_CASE("sieve_ratio_study: seeded sweep has no dominance violations") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  SieveStudy study = sieve_ratio_study(s, 10000, 1000, 25, 7);
  CHECK(study.rows.size() == 25);
  CHECK(study.violations == 0);
  for (const auto& row : study.rows)
    if (row.exact > 0) CHECK(row.ratio >= 1.0L);
  // determinism
  SieveStudy again = sieve_ratio_study(s, 10000, 1000, 25, 7);
  for (size_t i = 0; i < study.rows.size(); ++i) {
    CHECK(study.rows[i].bound == again.rows[i].bound);
    CHECK(study.rows[i].exact == again.rows[i].exact);
  }
}

TEST_CASE("density discrepancy at primes of betaD is measured, not assumed") {
  // {X, X+2}: both members have root 0 mod 2, and 2 | betaD
  PolySystem s = PolySystem::from_string("0,1;2,1");
  auto rows = density_discrepancies(s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].p == 2);
  CHECK(rows[0].rho_0 == 1);
  CHECK(rows[0].rho_sum == 2);

  // {X, X+1}: betaD = 1, nothing to report
  CHECK(density_discrepancies(PolySystem::from_string("0,1;1,1")).empty());
}

TEST_CASE("main term scales linearly in y for fixed density and z") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  SieveInstance a;
  a.x = 10000;
  a.y = 3000;
  a.z = 10;
  a.d = {6, 1};
  SieveInstance b = a;
  b.y = 6000;
  SieveResult ra = sieve_upper_bound(s, a, false);
  SieveResult rb = sieve_upper_bound(s, b, false);
  CHECK(rb.main_term == 2 * ra.main_term);  // exact rationals
  CHECK(rb.X == 2 * ra.X);
}

TEST_CASE("sieve_ratio_study exercises t-constraints when betaD > 1") {
  PolySystem s = PolySystem::from_string("-2,0,1");  // X^2-2, betaD = 8
  SieveStudy study = sieve_ratio_study(s, 10000, 1000, 25, 11);
  CHECK(study.violations == 0);
  bool has_t = false;
  for (const auto& row : study.rows)
    if (row.instance.T() > 1) has_t = true;
  CHECK(has_t);
}
