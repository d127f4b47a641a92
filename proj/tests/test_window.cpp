#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegaq/asymptotics.hpp"
#include "omegaq/factorize.hpp"
#include "omegaq/window.hpp"
#include "oracles.hpp"

using namespace omegaq;

TEST_CASE("oracle_factor: examples and budget") {
  FactorMap f12 = oracle_factor(12);
  CHECK(f12.size() == 2);
  CHECK(f12[mpz_class(2)] == 2);
  CHECK(f12[mpz_class(3)] == 1);
  CHECK(oracle_factor(1).empty());
  FactorMap f = oracle_factor(9991);
  CHECK(f.size() == 2);
  CHECK(f.count(mpz_class(97)) == 1);
  CHECK(f.count(mpz_class(103)) == 1);
  mpz_class huge("1000000007");
  huge = huge * huge * huge;  // ~1e27, sqrt ~ 3e13 over the budget
  CHECK_THROWS_AS(oracle_factor(huge), std::invalid_argument);
}

TEST_CASE("factor_into agrees with oracle_factor on mixed values") {
  for (unsigned long v :
       {2ul, 1024ul, 99991ul, 1000003ul, 123456789ul, 600851475143ul}) {
    FactorMap a, b = oracle_factor(mpz_class(v));
    factor_into(mpz_class(v), a);
    CHECK(a == b);
  }
}

TEST_CASE("omega_window: spec window (10,20] for {X}") {
  PolySystem s = PolySystem::from_string("0,1");
  WindowSpec spec;
  spec.x = 10;
  spec.y = 10;
  OmegaResult res = omega_window(s, spec);
  REQUIRE(res.omega.size() == 10);
  // oracle truth: omega(11..20); the distinct-prime counts
  std::vector<uint32_t> expect;
  for (uint64_t n = 11; n <= 20; ++n)
    expect.push_back(oracles::omega_brute(mpz_class(
        static_cast<unsigned long>(n))));
  CHECK(expect ==
        std::vector<uint32_t>{1, 2, 1, 2, 2, 1, 1, 2, 1, 2});
  for (size_t i = 0; i < 10; ++i) CHECK(res.omega[i][0] == expect[i]);
  CHECK(res.excluded.empty());
}

TEST_CASE("omega_window: y = 0 and pair vector example") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  WindowSpec spec;
  spec.x = 10;
  spec.y = 0;
  CHECK(omega_window(s, spec).omega.empty());

  spec.y = 10;
  OmegaResult res = omega_window(s, spec);
  // n = 14: (omega(14], omega(15)) = (2, 2)
  CHECK(res.omega[3] == std::vector<uint32_t>{2, 2});
}

TEST_CASE("omega_window matches the oracle across value regimes") {
  for (const char* sys_spec : {"0,1;1,1", "1,0,1", "2,0,0,1"}) {
    PolySystem s = PolySystem::from_string(sys_spec);
    WindowSpec spec;
    spec.x = 5000;
    spec.y = 300;
    OmegaResult res = omega_window(s, spec, true);
    for (size_t i = 0; i < res.omega.size(); ++i) {
      const uint64_t n = spec.x + 1 + i;
      for (size_t j = 0; j < s.r(); ++j) {
        mpz_class v = abs(eval(s.member(j), mpz_class(
            static_cast<unsigned long>(n))));
        CAPTURE(sys_spec);
        CAPTURE(n);
        CHECK(res.omega[i][j] == oracle_factor(v).size());
        CHECK(res.factorizations[i][j] == oracle_factor(v));
      }
    }
  }
}

TEST_CASE("exclusions: zero and unit values are listed") {
  PolySystem s = PolySystem::from_string("-12,1");  // X - 12
  WindowSpec spec;
  spec.x = 10;
  spec.y = 4;
  OmegaResult res = omega_window(s, spec);
  CHECK(res.excluded == std::vector<uint64_t>{11, 12, 13});
  JointHistogram h = joint_histogram(res);
  CHECK(h.total == 1);  // only n = 14 survives
  CHECK(h.counts[{1}] == 1);
  CHECK(h.excluded.size() == 3);
}

TEST_CASE("joint histogram: spec example, totals, merge laws") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  WindowSpec spec;
  spec.x = 10;
  spec.y = 10;
  JointHistogram h = joint_histogram(omega_window(s, spec));
  CHECK(h.counts[{2, 2}] == 2);  // n = 14 and n = 20
  CHECK(h.total == 10);

  WindowSpec lo = spec, hi = spec;
  lo.y = 5;
  hi.x = 15;
  hi.y = 5;
  JointHistogram hl = joint_histogram(omega_window(s, lo));
  JointHistogram hh = joint_histogram(omega_window(s, hi));
  JointHistogram merged = hl;
  merged.merge(hh);
  CHECK(merged.counts == h.counts);
  CHECK(merged.total == h.total);

  JointHistogram other = hh;
  other.merge(hl);  // commutative
  CHECK(other.counts == merged.counts);

  // associativity over a three-way split
  WindowSpec a = spec, b = spec, c = spec;
  a.y = 3;
  b.x = 13;
  b.y = 4;
  c.x = 17;
  c.y = 3;
  JointHistogram ha = joint_histogram(omega_window(s, a));
  JointHistogram hb = joint_histogram(omega_window(s, b));
  JointHistogram hc = joint_histogram(omega_window(s, c));
  JointHistogram left = ha;
  left.merge(hb);
  left.merge(hc);
  JointHistogram right_inner = hb;
  right_inner.merge(hc);
  JointHistogram right = ha;
  right.merge(right_inner);
  CHECK(left.counts == right.counts);
  CHECK(left.counts == h.counts);
  CHECK(left.total == h.total);

  JointHistogram bad;
  bad.r = 1;
  CHECK_THROWS_AS(merged.merge(bad), std::invalid_argument);
}

TEST_CASE("window_histogram equals the two-step pipeline across segments") {
  PolySystem s = PolySystem::from_string("0,1");
  WindowSpec spec;
  spec.x = 1000;
  spec.y = 70000;  // straddles the segment size
  JointHistogram fused = window_histogram(s, spec);
  JointHistogram staged = joint_histogram(omega_window(s, spec));
  CHECK(fused.counts == staged.counts);
  CHECK(fused.total == staged.total);
}

TEST_CASE("windowspec: epsilon interval enforcement") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  WindowSpec spec;
  spec.x = 100;
  spec.y = 10;
  spec.epsilon = 0.2;  // outside (alpha/8, alpha/6) for alpha = 0.5
  CHECK_THROWS_AS(omega_window(s, spec), std::invalid_argument);
  spec.epsilon = 0.07;
  CHECK_NOTHROW(omega_window(s, spec));
  spec.epsilon = 0.0;  // midpoint auto
  WindowSpec r = spec.resolved(s);
  CHECK(r.epsilon == doctest::Approx(0.5 * (0.5 / 8 + 0.5 / 6)));
}

TEST_CASE("decompose: spec example n = 10007, x = 1e4") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  WindowSpec spec;
  spec.x = 10000;
  spec.y = 10;
  spec.alpha = 0.8;  // puts 0.12 inside (alpha/8, alpha/6)
  spec.epsilon = 0.12;
  WindowSpec rs = spec.resolved(s);

  const uint64_t n = 10007;
  std::vector<FactorMap> qf = {
      oracle_factor(mpz_class(10007)),
      oracle_factor(mpz_class(10008)),
  };
  FactorizationRecord rec = decompose(s, n, qf, rs);
  // x^{2g eps} = 1e4^{0.48} ~ 83.2; blocks 8, 9 fit, 139 does not
  CHECK(rec.xi == 138);
  CHECK_FALSE(rec.xi_unbounded);
  CHECK(rec.a[0] == 1);
  CHECK(rec.a[1] == 72);
  CHECK(rec.b == mpz_class(139) * 10007);
  CHECK(rec.p_min_b == 139);
  CHECK(rec.v == 1);
  CHECK(rec.omega_b == 2);
  CHECK(rec.q_max_a == 3);
  CHECK(rec.cls == NClass::N3);  // 72 > x^{g eps} ~ 9.1
  // betaD = 1: everything lands in d
  CHECK(rec.t[0] == 1);
  CHECK(rec.t[1] == 1);
  CHECK(rec.d[1] == 72);
  CHECK(rec.d_star[1] == 6);

  ClassAuditReport audit = audit_classes({rec}, s, rs);
  CHECK(audit.pass);
  CHECK(audit.count_n3 == 1);
}

TEST_CASE("decompose_window: partition and audit at desk scale") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  WindowSpec spec;
  spec.x = 10000;
  spec.y = 100;
  auto records = decompose_window(s, spec);
  CHECK(records.size() == 100);
  ClassAuditReport rep = audit_classes(records, s, spec);
  CHECK(rep.pass);
  CHECK(rep.count_n1 + rep.count_n2 + rep.count_n3 == rep.records);
  CHECK(rep.rankin_sum >= static_cast<long double>(rep.count_n3));
  if (rep.count_n2 > 0) CHECK(rep.n2_ratio <= 1.0L);
}

TEST_CASE("audit flags an injected d-coprimality fault") {
  PolySystem s = PolySystem::from_string("0,1;1,1");
  WindowSpec spec;
  spec.x = 10000;
  spec.y = 50;
  auto records = decompose_window(s, spec);
  // corrupt one record: force a shared prime 3 into both d's
  FactorizationRecord bad = records[5];
  bad.d[0] *= 3;
  bad.d[1] *= 3;
  ClassAuditReport rep = audit_classes({bad}, s, spec);
  CHECK_FALSE(rep.pass);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.check == std::string("d_coprime") &&
        v.detail.find("3") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("higher-degree window: mpz ledger path self-certifies") {
  PolySystem s = PolySystem::from_string("1,-1,0,0,0,1");  // X^5 - X + 1
  WindowSpec spec;
  spec.x = 100000;
  spec.y = 40;
  spec.z_max = 3000;
  OmegaResult res = omega_window(s, spec, true);
  for (size_t i = 0; i < res.omega.size(); ++i) {
    const uint64_t n = spec.x + 1 + i;
    mpz_class v = abs(eval(s.member(0), mpz_class(
        static_cast<unsigned long>(n))));
    // values ~1e25 are beyond the trial oracle, but a factorization
    // certificate is checkable: exact recomposition into primes
    const FactorMap& fm = res.factorizations[i][0];
    mpz_class recomposed = 1;
    for (const auto& [p, e] : fm) {
      CHECK(is_prime_mpz(p));
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
      recomposed *= pe;
    }
    CHECK(recomposed == v);
    CHECK(res.omega[i][0] == fm.size());
  }
}
