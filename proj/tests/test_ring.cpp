#include <doctest.h>

#include <numeric>
#include <random>

#include "sclean/errors.hpp"
#include "sclean/matrix.hpp"
#include "sclean/ring.hpp"

using namespace sclean;

namespace {

TableRing::Table zmod_table(int n, bool mul) {
  TableRing::Table t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = mul ? a * b % n : (a + b) % n;
  return t;
}

// F4 = F2[x]/(x^2+x+1), elements a + b x encoded as a + 2b.
TableRing::Table f4_table(bool mul) {
  TableRing::Table t(4, std::vector<int>(4));
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      const int a = u & 1, b = u >> 1, c = v & 1, d = v >> 1;
      int r0, r1;
      if (mul) {
        r0 = (a * c + b * d) & 1;
        r1 = (a * d + b * c + b * d) & 1;
      } else {
        r0 = a ^ c;
        r1 = b ^ d;
      }
      t[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = r0 + 2 * r1;
    }
  return t;
}

}  // namespace

TEST_CASE("zmod splits into prime-power stalks") {
  const Ring r = Ring::zmod(360);
  REQUIRE(r.num_stalks() == 3);
  CHECK(r.stalk(0).modulus() == 8);
  CHECK(r.stalk(1).modulus() == 9);
  CHECK(r.stalk(2).modulus() == 5);
  CHECK(r.order() == 360);
  for (const auto& s : r.stalks()) CHECK(s.verify_local());
}

TEST_CASE("zmod arithmetic matches integer arithmetic mod n") {
  const Ring r = Ring::zmod(84);
  for (int a = -90; a < 90; a += 7)
    for (int b = -50; b < 50; b += 11) {
      CHECK(r.from_int(a) * r.from_int(b) == r.from_int(a * b));
      CHECK(r.from_int(a) + r.from_int(b) == r.from_int(a + b));
    }
  CHECK(r.from_int(5).is_unit());
  CHECK_FALSE(r.from_int(14).is_unit());
  CHECK(*r.from_int(5).inverse() * r.from_int(5) == r.one());
}

TEST_CASE("idempotents of zmod agree with a scan of all elements") {
  for (int n : {2, 6, 12, 30, 36, 60, 210}) {
    const Ring r = Ring::zmod(n);
    std::size_t scanned = 0;
    for (std::uint64_t i = 0; i < r.order(); ++i)
      if (r.element_at(i).is_idempotent()) ++scanned;
    CHECK(enumerate_idempotents(r).size() == scanned);
    CHECK(scanned == (std::size_t{1} << r.num_stalks()));
  }
}

TEST_CASE("element_at and index_of are inverse") {
  const Ring r = Ring::zmod(72);
  for (std::uint64_t i = 0; i < r.order(); ++i) CHECK(r.index_of(r.element_at(i)) == i);
}

TEST_CASE("pierce glue inverts restrictions") {
  std::mt19937_64 rng(7);
  for (int n : {6, 12, 100, 997, 1000}) {
    const Ring r = Ring::zmod(n);
    const auto prim = pierce_decomposition(r);
    for (int trial = 0; trial < 20; ++trial) {
      const Element x = random_element(r, rng);
      const auto parts = restrictions(x);
      std::vector<GlueBlock> blocks;
      for (std::size_t i = 0; i < parts.size(); ++i) blocks.push_back({prim.idempotents()[i], parts[i]});
      CHECK(pierce_glue(r, blocks) == x);
    }
  }
}

TEST_CASE("localization Z_(p)") {
  const Ring r = Ring::zloc(3);
  CHECK_FALSE(r.is_finite());
  const Element half = r.element({Rational(1, 2)});
  CHECK(half.is_unit());
  CHECK(*half.inverse() == r.from_int(2));
  CHECK_FALSE(r.from_int(6).is_unit());
  CHECK(radical_membership(r.from_int(3)).in_jacobson);
  CHECK_FALSE(radical_membership(r.from_int(3)).in_nil);
  CHECK_THROWS_AS(r.element({Rational(1, 3)}), Error);
}

TEST_CASE("table ring Z/6 decomposes into Z/2 x Z/3") {
  const Ring r = Ring::table(zmod_table(6, false), zmod_table(6, true));
  REQUIRE(r.num_stalks() == 2);
  CHECK(r.order() == 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      CHECK(r.to_table_index(r.from_table_index(a) * r.from_table_index(b)) == a * b % 6);
  CHECK(enumerate_idempotents(r).size() == 4);
}

TEST_CASE("table ring F4 is a local field") {
  const Ring r = Ring::table(f4_table(false), f4_table(true));
  REQUIRE(r.num_stalks() == 1);
  for (int i = 1; i < 4; ++i) CHECK(r.from_table_index(i).is_unit());
  CHECK(classify_ring(r).is_local);
  CHECK(classify_ring(r).is_j_clean);
}

TEST_CASE("table ring validation rejects non-rings") {
  auto add = zmod_table(4, false);
  auto mul = zmod_table(4, true);
  mul[2][3] = 1;
  CHECK_THROWS_AS(Ring::table(add, mul), Error);
}

TEST_CASE("descriptor round trip") {
  const nlohmann::json d = {{"type", "product"},
                            {"factors", {{{"type", "zmod"}, {"n", 12}}, {{"type", "zloc"}, {"p", 5}}}}};
  const Ring r = Ring::build(d);
  CHECK(r.num_stalks() == 3);
  CHECK(Ring::build(r.descriptor()) == r);
  CHECK_THROWS_AS(Ring::build({{"type", "zloc"}, {"p", 4}}), Error);
  CHECK_THROWS_AS(Ring::build({{"type", "zmod"}, {"n", 0}}), Error);
}

TEST_CASE("strongly clean elements") {
  for (int n : {8, 12, 30}) {
    const Ring r = Ring::zmod(n);
    for (std::uint64_t i = 0; i < r.order(); ++i) {
      const Element x = r.element_at(i);
      const auto c = strongly_clean_element(x);
      REQUIRE(c);
      CHECK(c->idempotent.is_idempotent());
      CHECK(c->unit.is_unit());
      CHECK(c->idempotent + c->unit == x);
    }
  }
}
