#include <doctest.h>

#include <set>

#include "sclean/errors.hpp"
#include "sclean/factor.hpp"
#include "sclean/verify.hpp"
#include "test_support.hpp"

using namespace sclean;
using namespace testsupport;

namespace {

bool comaximal_bruteforce(const Poly& f0, const Poly& f1) {
  const Ring& r = f0.ring();
  const Poly one = Poly::constant(r.one());
  for (const auto& u : all_polys_below(r, std::max(f1.degree(), 0)))
    for (const auto& v : all_polys_below(r, std::max(f0.degree(), 0)))
      if (u * f0 + v * f1 == one) return true;
  return false;
}

// Over a single local finite stalk: does some divisor split h as required?
bool local_src_bruteforce(const MonicPoly& h) {
  const Ring& r = h.ring();
  for (int d = 0; d <= h.degree(); ++d)
    for (const auto& f0 : all_monic(r, d)) {
      const auto div = monic_divide(h, f0);
      if (!div.exact) continue;
      const Poly& f1 = div.quotient;
      if (!f0.eval(r.zero()).is_unit() || !f1.eval(r.one()).is_unit()) continue;
      if (comaximal_bruteforce(f0, f1)) return true;
    }
  return false;
}

bool local_sp_bruteforce(const MonicPoly& h) {
  const Ring& r = h.ring();
  for (int d = 0; d <= h.degree(); ++d)
    for (const auto& p0 : all_monic(r, d)) {
      bool nil = true;
      for (int i = 0; i < d; ++i) nil = nil && radical_membership(p0.coeff(i)).in_nil;
      if (!nil) continue;
      const auto div = monic_divide(h, p0);
      if (div.exact && div.quotient.eval(r.zero()).is_unit()) return true;
    }
  return false;
}

bool global_bruteforce(const MonicPoly& h, bool sp) {
  for (std::size_t s = 0; s < h.ring().num_stalks(); ++s) {
    const MonicPoly hs = h.restrict(s);
    if (!(sp ? local_sp_bruteforce(hs) : local_src_bruteforce(hs))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Bezout pair from the Sylvester matrix") {
  const Ring r = Ring::zmod(8);
  const auto f0 = Poly::from_ints(r, {1, 1});
  const auto f1 = Poly::from_ints(r, {2, 1});
  const auto b = comaximality(f0, f1);
  REQUIRE(b);
  CHECK(b->u * f0 + b->v * f1 == Poly::constant(r.one()));
  CHECK_FALSE(comaximality(Poly::from_ints(Ring::zmod(4), {1, 1}), Poly::from_ints(Ring::zmod(4), {3, 1})));
}

TEST_CASE("comaximality agrees with brute force over Z/4 and Z/9") {
  for (int n : {4, 9}) {
    const Ring r = Ring::zmod(n);
    for (const auto& f0 : all_monic(r, 1))
      for (const auto& f1 : all_monic(r, 2)) {
        const auto b = comaximality(f0, f1);
        CHECK(b.has_value() == comaximal_bruteforce(f0, f1));
        if (b) CHECK(b->u * f0.poly() + b->v * f1.poly() == Poly::constant(r.one()));
      }
  }
}

TEST_CASE("gSRC existence agrees with per-stalk brute force") {
  for (int n : {2, 4, 6, 8, 9, 12}) {
    const Ring r = Ring::zmod(n);
    for (int deg : {1, 2}) {
      for (const auto& h : all_monic(r, deg)) {
        const auto g = gsrc_search(h);
        INFO(r.label(), " ", h.to_string());
        CHECK(g.found() == global_bruteforce(h, false));
        if (g.found()) {
          CHECK(verify_gsrc(*g.value));
          CHECK(g.value->blocks.size() <= static_cast<std::size_t>(deg + 1));
        }
      }
    }
  }
  const Ring r = Ring::zmod(4);
  for (const auto& h : all_monic(r, 3)) CHECK(gsrc_search(h).found() == global_bruteforce(h, false));
}

TEST_CASE("gSP existence agrees with per-stalk brute force") {
  for (int n : {4, 6, 8, 12}) {
    const Ring r = Ring::zmod(n);
    for (const auto& h : all_monic(r, 2)) {
      const auto g = gsp_search(h);
      INFO(r.label(), " ", h.to_string());
      CHECK(g.found() == global_bruteforce(h, true));
      if (g.found()) CHECK(verify_gsp(*g.value));
    }
  }
}

TEST_CASE("local SRC results verify") {
  const Ring r = Ring::zmod(8);
  for (const auto& h : all_monic(r, 2)) {
    const auto s = src_search_local(h, FactorMode::SRC);
    if (s.found()) CHECK(verify_src(h, *s.value));
    CHECK(s.found() == local_src_bruteforce(h));
  }
}

TEST_CASE("two-block polynomial over Z_(2) x Z_(2)") {
  const Ring r = Ring::build({{"type", "product"}, {"factors", {{{"type", "zloc"}, {"p", 2}}, {{"type", "zloc"}, {"p", 2}}}}});
  const MonicPoly h(Poly(r, {r.element({Rational(2), Rational(3)}), r.element({Rational(3), Rational(1)}), r.one()}));
  const auto single = sr_search_single_block(h, FactorMode::SR);
  CHECK(single.status == SearchStatus::Absent);
  CHECK_FALSE(single.transcript.empty());
  const auto g = gsrc_search(h);
  REQUIRE(g.found());
  REQUIRE(g.value->blocks.size() == 2);
  CHECK(g.value->blocks[0].idempotent == r.element({Rational(1), Rational(0)}));
  CHECK(g.value->blocks[1].idempotent == r.element({Rational(0), Rational(1)}));
  CHECK(verify_gsrc(*g.value));
}

TEST_CASE("t^2 - t + 2 over Z_(2) has no SRC factorization") {
  const Ring r = Ring::zloc(2);
  const auto h = MonicPoly::from_ints(r, {2, -1, 1});
  CHECK(gsrc_search(h).status == SearchStatus::Absent);
  CHECK(src_search_local(h, FactorMode::SR).status == SearchStatus::Absent);
}

TEST_CASE("Z_(p) quadratics with rational roots split") {
  const Ring r = Ring::zloc(3);
  // (t - 1)(t - 3)
  const auto h = MonicPoly::from_ints(r, {3, -4, 1});
  const auto s = src_search_local(h, FactorMode::SRC);
  REQUIRE(s.found());
  CHECK(verify_src(h, *s.value));
  // t^2 + 1: the trivial split f0 = h works
  const auto h2 = MonicPoly::from_ints(r, {1, 0, 1});
  const auto s2 = src_search_local(h2, FactorMode::SRC);
  REQUIRE(s2.found());
  CHECK(verify_src(h2, *s2.value));
}

TEST_CASE("SP over Z/6: t^2 + 3t + 2") {
  const Ring r = Ring::zmod(6);
  const auto h = MonicPoly::from_ints(r, {2, 3, 1});
  CHECK(sp_search_single_block(h).status == SearchStatus::Absent);
  const auto g = gsp_search(h);
  REQUIRE(g.found());
  std::multiset<int> degrees;
  for (const auto& b : g.value->blocks) degrees.insert(b.cert.p0.degree());
  CHECK(degrees == std::multiset<int>{0, 1});
}

TEST_CASE("monic division") {
  const Ring r = Ring::zmod(9);
  const auto f = Poly::from_ints(r, {2, 3, 0, 1});
  const auto g = Poly::from_ints(r, {4, 1});
  const auto d = monic_divide(f, g);
  CHECK(d.quotient * g + d.remainder == f);
  CHECK(d.remainder.degree() < 1);
  CHECK_THROWS_AS(monic_divide(f, Poly::from_ints(r, {1, 3})), Error);
}
