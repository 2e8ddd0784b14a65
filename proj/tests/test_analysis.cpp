#include <doctest.h>

#include "sclean/analysis.hpp"
#include "sclean/errors.hpp"
#include "sclean/oracles.hpp"
#include "sclean/verify.hpp"
#include "test_support.hpp"

using namespace sclean;
using namespace testsupport;

TEST_CASE("decide_strongly_clean on the two-block polynomial") {
  const Ring r = Ring::build({{"type", "product"}, {"factors", {{{"type", "zloc"}, {"p", 2}}, {{"type", "zloc"}, {"p", 2}}}}});
  const MonicPoly h(Poly(r, {r.element({Rational(2), Rational(3)}), r.element({Rational(3), Rational(1)}), r.one()}));
  const Matrix a = companion(h);
  const Decision d = decide_strongly_clean(a);
  CHECK(d.verdict == Verdict::Yes);
  CHECK(d.route == Route::gSRC);
  REQUIRE(d.gsrc);
  CHECK(d.gsrc->blocks.size() == 2);
  REQUIRE(d.strong_clean);
  CHECK(verify_strong_clean(a, *d.strong_clean));
}

TEST_CASE("companion negation over Z_(2)") {
  const Ring r = Ring::zloc(2);
  const Decision d = decide_strongly_clean(companion(MonicPoly::from_ints(r, {2, -1, 1})));
  CHECK(d.verdict == Verdict::No);
  CHECK(d.route == Route::companion_negation);
}

TEST_CASE("ring-level decisions") {
  const Decision no = decide_ring_strongly_clean(Ring::zloc(2), 2);
  CHECK(no.verdict == Verdict::No);
  REQUIRE(no.witness_a);
  CHECK(*no.witness_a == Ring::zloc(2).from_int(2));
  REQUIRE(no.witness_poly);
  CHECK(*no.witness_poly == MonicPoly::from_ints(Ring::zloc(2), {2, -1, 1}));
  CHECK(gsrc_search(*no.witness_poly).status == SearchStatus::Absent);
  for (int n : {2, 4, 8, 16}) {
    const Decision yes = decide_ring_strongly_clean(Ring::zmod(n), 2);
    CHECK(yes.verdict == Verdict::Yes);
    CHECK(yes.ring_certificates.size() == static_cast<std::size_t>(n * n));
    for (const auto& pc : yes.ring_certificates) CHECK(verify_gsrc(pc.gsrc));
  }
}

TEST_CASE("J-clean criterion matches exhaustive route on finite rings") {
  for (int n : {2, 3, 4, 5, 8, 9, 12, 25}) {
    const Ring r = Ring::zmod(n);
    const Decision j = jclean_quadratic_criterion(r);
    const Decision e = decide_ring_strongly_clean(r, 2);
    INFO(r.label());
    CHECK(j.verdict == e.verdict);
    for (const auto& [a, root] : j.roots) CHECK((root * root - root + a).is_zero());
  }
  CHECK(jclean_quadratic_criterion(Ring::zloc(2)).verdict == Verdict::No);
}

TEST_CASE("square roots in 1 + rad(R)") {
  const Ring r = Ring::zmod(9);
  const auto s = sqrt_one_plus_radical(r.from_int(4));
  REQUIRE(s);
  CHECK(*s * *s == r.from_int(4));
  CHECK(radical_membership(*s - r.one()).in_jacobson);
  CHECK_THROWS_AS(sqrt_one_plus_radical(Ring::zmod(4).from_int(1)), Error);
  CHECK_THROWS_AS(sqrt_one_plus_radical(r.from_int(2)), Error);
}

TEST_CASE("decide_pi_regular certificates verify and imply strong cleanness") {
  for (int n : {4, 6, 12}) {
    const Ring r = Ring::zmod(n);
    for (const auto& h : all_monic(r, 2)) {
      const Matrix a = companion(h);
      const Decision d = decide_pi_regular(a);
      if (d.verdict == Verdict::Yes) {
        REQUIRE(d.pi_regular);
        CHECK(verify_pi_regular(a, *d.pi_regular));
        CHECK(decide_strongly_clean(a).verdict == Verdict::Yes);
      }
    }
  }
}

TEST_CASE("certificates from gSRC on similar matrices") {
  const Ring r = Ring::zmod(12);
  for (const auto& h : all_monic(r, 2)) {
    const auto g = gsrc_search(h);
    if (!g.found()) continue;
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const Matrix a = random_with_charpoly(h, seed);
      CHECK(verify_strong_clean(a, strong_clean_from_gsrc(a, *g.value)));
    }
  }
}

TEST_CASE("audits over small rings") {
  AuditOptions o;
  o.workers = 2;
  const auto rep = theorem_main_audit(Ring::zmod(6), 2, o);
  CHECK(rep.instances == 36);
  CHECK(rep.disagreements.empty());
  CHECK(rep.max_blocks <= 3);
  const auto pi = pi_regular_audit(Ring::zmod(4), 2, o);
  CHECK(pi.instances == 16);
  CHECK(pi.disagreements.empty());
  const auto tri = triangular_sweep(Ring::zmod(4), 2, o);
  CHECK(tri.instances == 64);
  CHECK(tri.agreements == 64);
}

TEST_CASE("audits are independent of the worker count") {
  AuditOptions one, many;
  one.workers = 1;
  many.workers = 3;
  const auto a = theorem_main_audit(Ring::zmod(8), 2, one);
  const auto b = theorem_main_audit(Ring::zmod(8), 2, many);
  CHECK(a.route_counts == b.route_counts);
  CHECK(a.agreements == b.agreements);
}

TEST_CASE("triangular certificates") {
  const Ring r = Ring::zmod(2);
  const Matrix a = Matrix::from_ints(r, {{1, 1, 0}, {0, 0, 1}, {0, 0, 1}});
  const auto c = triangular_certificate(a);
  REQUIRE(c);
  CHECK(verify_strong_clean(a, *c));
}

TEST_CASE("enumerate_monic budget") {
  CHECK(enumerate_monic(Ring::zmod(3), 2, 100).size() == 9);
  CHECK_THROWS_AS(enumerate_monic(Ring::zmod(10), 3, 100), Error);
}
