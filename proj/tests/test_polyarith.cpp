#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "omegaq/intpoly.hpp"
#include "omegaq/polysystem.hpp"
#include "oracles.hpp"

using namespace omegaq;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long coeff_bound) {
  std::uniform_int_distribution<int> deg_dist(1, max_deg);
  std::uniform_int_distribution<long> c_dist(-coeff_bound, coeff_bound);
  while (true) {
    const int d = deg_dist(rng);
    std::vector<mpz_class> cs(static_cast<size_t>(d) + 1);
    for (auto& c : cs) c = c_dist(rng);
    if (cs.back() == 0) continue;
    return IntPoly(std::move(cs));
  }
}

}  // namespace

TEST_CASE("eval matches direct substitution") {
  CHECK(eval(IntPoly{1, 0, 1}, 2) == 5);
  CHECK(eval(IntPoly{0, 1}, 7) == 7);
  CHECK(eval(IntPoly{3, 2}, -1) == 1);
  CHECK(eval(IntPoly{1, -1, 0, 1}, -3) == -23);  // X^3 - X + 1 at -3
}

TEST_CASE("eval_mod agrees with exact eval") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    IntPoly P = random_poly(rng, 5, 100);
    const uint64_t n = rng() % 1000000, m = 1 + rng() % 1000000;
    mpz_class v = eval(P, mpz_class(static_cast<unsigned long>(n)));
    CHECK(eval_mod(P, n, m) == mpz_fdiv_ui(v.get_mpz_t(), m));
  }
}

TEST_CASE("norm excludes the constant term") {
  CHECK(IntPoly{100, 1}.norm() == 1);
  CHECK(IntPoly{1, -7, 3}.norm() == 7);
  CHECK(IntPoly{5}.norm() == 0);
}

TEST_CASE("resultant: examples and error paths") {
  CHECK(resultant(IntPoly{0, 1}, IntPoly{1, 1}) == 1);
  CHECK(resultant(IntPoly{1, 0, 1}, IntPoly{-1, 0, 1}) == 4);
  CHECK(resultant(IntPoly{1, 1}, IntPoly{1, 1}) == 0);
  CHECK_THROWS_AS(resultant(IntPoly(), IntPoly{1, 1}), std::invalid_argument);
  // degree-0 convention: res(c, V) = c^{deg V}
  CHECK(resultant(IntPoly{3}, IntPoly{1, 0, 1}) == 9);
}

TEST_CASE("resultant matches the Laplace/Sylvester oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    IntPoly U = random_poly(rng, 4, 30);
    IntPoly V = random_poly(rng, 4, 30);
    CHECK(resultant(U, V) == oracles::sylvester_resultant(U, V));
  }
}

TEST_CASE("resultant antisymmetry") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 150; ++i) {
    IntPoly U = random_poly(rng, 4, 30);
    IntPoly V = random_poly(rng, 4, 30);
    mpz_class lhs = resultant(U, V);
    mpz_class rhs = resultant(V, U);
    if ((U.degree() * V.degree()) % 2 != 0) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("discriminant: examples, closed forms, shifts") {
  CHECK(discriminant(IntPoly{1, 0, 1}) == -4);
  CHECK(discriminant(IntPoly{0, 1, 1}) == 1);
  CHECK(discriminant(IntPoly{9, 4}) == 1);   // degree-1 convention
  CHECK(discriminant(IntPoly{-7, -2}) == 1);
  CHECK_THROWS_AS(discriminant(IntPoly{5}), std::invalid_argument);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-40, 40);
  for (int i = 0; i < 100; ++i) {
    long a = c(rng), b = c(rng), cc = c(rng), d = c(rng);
    if (a == 0) a = 1;
    CHECK(discriminant(IntPoly{cc, b, a}) ==
          oracles::disc_quadratic(a, b, cc));
    CHECK(discriminant(IntPoly{d, cc, b, a}) ==
          oracles::disc_cubic(a, b, cc, d));
  }
  for (int i = 0; i < 50; ++i) {
    IntPoly P = random_poly(rng, 5, 30);
    if (P.degree() < 1) continue;
    for (long shift = -10; shift <= 10; ++shift)
      CHECK(discriminant(P.shifted(shift)) == discriminant(P));
  }
}

TEST_CASE("product identity: spec examples") {
  auto c1 = check_product_identity(IntPoly{0, 1}, IntPoly{1, 1});
  CHECK(c1.lhs == 1);
  CHECK(c1.rhs == 1);
  CHECK(c1.holds);
  auto c2 = check_product_identity(IntPoly{1, 1}, IntPoly{1, 1});
  CHECK(c2.lhs == 0);
  CHECK(c2.holds);
  auto c3 = check_product_identity(IntPoly{1, 0, 1}, IntPoly{-1, 0, 1});
  CHECK(c3.lhs == c3.rhs);
  CHECK(c3.holds);
}

TEST_CASE("product identity holds on random non-monic pairs") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    IntPoly U = random_poly(rng, 4, 50);
    IntPoly V = random_poly(rng, 4, 50);
    auto c = check_product_identity(U, V);
    CHECK(c.holds);
  }
}

TEST_CASE("irreducibility decisions") {
  IrreducibilityMethod m;
  CHECK(is_irreducible(IntPoly{3, 2}, &m));
  CHECK(m == IrreducibilityMethod::linear);
  CHECK(is_irreducible(IntPoly{-2, 0, 1}));       // X^2-2
  CHECK(is_irreducible(IntPoly{1, 0, 1}));        // X^2+1
  CHECK(is_irreducible(IntPoly{2, 1, 1}));        // X^2+X+2
  CHECK_FALSE(is_irreducible(IntPoly{0, 0, 1}));  // X^2
  CHECK_FALSE(is_irreducible(IntPoly{-1, 0, 1}));  // (X-1)(X+1)
  CHECK_FALSE(is_irreducible(IntPoly{0, -1, 0, 1}));  // X^3-X
  CHECK(is_irreducible(IntPoly{1, -1, 0, 1}));    // X^3-X+1

  // quartics without rational roots exercise the deep paths
  CHECK(is_irreducible(IntPoly{1, 0, 0, 0, 1}, &m));  // X^4+1
  CHECK_FALSE(is_irreducible(IntPoly{4, 0, 0, 0, 1}));  // X^4+4
  CHECK_FALSE(is_irreducible(IntPoly{1, 0, 1, 0, 1}));  // X^4+X^2+1
  CHECK(is_irreducible(IntPoly{1, 0, -1, 0, 1}));       // X^4-X^2+1
  CHECK(is_irreducible(IntPoly{1, -1, 0, 0, 0, 1}));    // X^5-X+1
  CHECK_FALSE(is_irreducible(IntPoly{1, 1, 0, 0, 0, 1}));  // X^5+X+1
}

TEST_CASE("validate_system: flagship accept/reject set") {
  PolySystem s1 = PolySystem::validate({IntPoly{0, 1}, IntPoly{1, 1}});
  CHECK(s1.g() == 2);
  CHECK(s1.betaD() == 1);
  CHECK(s1.D() == 1);

  CHECK_NOTHROW(PolySystem::validate({IntPoly{1, 0, 1}}));

  try {
    PolySystem::validate({IntPoly{0, 1}, IntPoly{1, 1}, IntPoly{2, 1}});
    FAIL("fixed divisor not detected");
  } catch (const system_error& e) {
    CHECK(e.code == SystemErrorCode::fixed_prime_divisor);
    CHECK(e.witness == 2);
  }

  try {
    PolySystem::validate({IntPoly{0, 0, 1}});
    FAIL("reducible member not detected");
  } catch (const system_error& e) {
    CHECK(e.code == SystemErrorCode::reducible_member);
  }

  try {
    PolySystem::validate({IntPoly{2, 2}});
    FAIL("content not detected");
  } catch (const system_error& e) {
    CHECK(e.code == SystemErrorCode::non_unit_content);
  }

  try {
    PolySystem::validate({IntPoly{1, 1}, IntPoly{1, 1}});
    FAIL("shared factor not detected");
  } catch (const system_error& e) {
    CHECK(e.code == SystemErrorCode::zero_pairwise_resultant);
  }

  // member-level fixed divisor: X^2+X+2 vanishes mod 2 as a function
  try {
    PolySystem::validate({IntPoly{2, 1, 1}});
    FAIL("member fixed divisor not detected");
  } catch (const system_error& e) {
    CHECK(e.code == SystemErrorCode::fixed_prime_divisor);
    CHECK(e.witness == 2);
  }

  // phi_0 degeneracy: rho_0(2) = 2 with 2 | betaD
  try {
    PolySystem::validate({IntPoly{2, 2, 1}, IntPoly{1, 1}});
    FAIL("betaD-degenerate system not detected");
  } catch (const system_error& e) {
    CHECK(e.code == SystemErrorCode::fixed_prime_divisor);
    CHECK(e.witness == 2);
  }
}

TEST_CASE("system accessors and parsing round-trip") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  CHECK(s.to_string() == "0,1;1,1");
  CHECK(s.r() == 2);
  CHECK(s.product() == IntPoly{0, 1, 1});
  CHECK(s.certificate().pairwise_resultants.size() == 1);
  CHECK(s.certificate().pairwise_resultants[0] == 1);
  CHECK_THROWS_AS(IntPoly::from_string("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(IntPoly::from_string("a,b"), std::invalid_argument);
}
