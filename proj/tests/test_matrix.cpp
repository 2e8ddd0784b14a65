#include <doctest.h>

#include <random>

#include "sclean/errors.hpp"
#include "sclean/oracles.hpp"
#include "sclean/verify.hpp"
#include "test_support.hpp"

using namespace sclean;
using namespace testsupport;

namespace {

Matrix random_matrix(const Ring& r, std::size_t n, std::mt19937_64& rng) {
  std::vector<Element> e;
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_element(r, rng));
  return Matrix(r, n, n, e);
}

TableRing::Table z4(bool mul) {
  TableRing::Table t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = mul ? a * b % 4 : (a + b) % 4;
  return t;
}

bool strongly_clean_scan(const Matrix& a) {
  bool found = false;
  for_each_matrix(a.ring(), a.rows(), [&](const Matrix& e) {
    if (found || !(e * e == e)) return;
    const Matrix u = a - e;
    if (e * u == u * e && det(u).is_unit()) found = true;
  });
  return found;
}

bool pi_regular_scan(const Matrix& a, unsigned max_k) {
  for (unsigned k = 0; k <= max_k; ++k) {
    const Matrix ak = a.pow(k), ak1 = a.pow(k + 1);
    bool right = false, left = false;
    for_each_matrix(a.ring(), a.rows(), [&](const Matrix& x) {
      if (!right && ak1 * x == ak) right = true;
      if (!left && x * ak1 == ak) left = true;
    });
    if (right && left) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("Berkowitz determinant matches cofactor expansion") {
  std::mt19937_64 rng(11);
  const std::vector<Ring> rings{Ring::zmod(12), Ring::zloc(5), Ring::zmod(2 * 27 * 25)};
  for (const auto& r : rings)
    for (std::size_t n = 1; n <= 5; ++n)
      for (int trial = 0; trial < 6; ++trial) {
        const Matrix a = random_matrix(r, n, rng);
        CHECK(det(a) == cofactor_det(a));
      }
}

TEST_CASE("characteristic polynomial is det(tI - A) and annihilates A") {
  std::mt19937_64 rng(3);
  const Ring r = Ring::zmod(36);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix a = random_matrix(r, n, rng);
      const MonicPoly chi = char_poly(a);
      CHECK(chi.degree() == static_cast<int>(n));
      CHECK(eval_poly(chi, a) == Matrix(r, n, n));
      for (int x = 0; x < 5; ++x) {
        const Matrix shifted = Matrix::identity(r, n) * r.from_int(x) - a;
        CHECK(chi.eval(r.from_int(x)) == cofactor_det(shifted));
      }
    }
}

TEST_CASE("adjugate and inverse") {
  std::mt19937_64 rng(5);
  const Ring r = Ring::zloc(7);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix a = random_matrix(r, n, rng);
      CHECK(adjugate(a) * a == Matrix::identity(r, n) * det(a));
      if (auto inv = inverse(a)) CHECK(*inv * a == Matrix::identity(r, n));
      else CHECK_FALSE(det(a).is_unit());
    }
}

TEST_CASE("companion matrices and similar matrices keep the polynomial") {
  const Ring r = Ring::zmod(10);
  const auto h = MonicPoly::from_ints(r, {3, 0, 7, 1});
  CHECK(char_poly(companion(h)) == h);
  CHECK(is_companion(companion(h)));
  for (std::uint64_t seed = 1; seed < 6; ++seed) CHECK(char_poly(random_with_charpoly(h, seed)) == h);
}

TEST_CASE("linear_solve agrees with exhaustive search over Z/4") {
  const Ring r = Ring::zmod(4);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Matrix a = random_matrix(r, 2, rng);
    Matrix b(r, 2, 1);
    b.set(0, 0, random_element(r, rng));
    b.set(1, 0, random_element(r, rng));
    bool exists = false;
    for (int x0 = 0; x0 < 4 && !exists; ++x0)
      for (int x1 = 0; x1 < 4 && !exists; ++x1) {
        Matrix x(r, 2, 1);
        x.set(0, 0, r.from_int(x0));
        x.set(1, 0, r.from_int(x1));
        exists = a * x == b;
      }
    const auto sol = linear_solve(a, b);
    CHECK(sol.has_value() == exists);
    if (sol) CHECK(a * *sol == b);
  }
}

TEST_CASE("linear_solve over Z_(p)") {
  const Ring r = Ring::zloc(3);
  const Matrix a = Matrix::from_ints(r, {{3, 1}, {6, 2}});
  const Matrix b = Matrix::from_ints(r, {{1}, {2}});
  const auto x = linear_solve(a, b);
  REQUIRE(x);
  CHECK(a * *x == b);
  CHECK_FALSE(linear_solve(Matrix::from_ints(r, {{3, 0}, {0, 3}}), Matrix::from_ints(r, {{1}, {0}})));
}

TEST_CASE("strong-clean oracle agrees with an idempotent scan") {
  for (int n : {2, 3, 4}) {
    const Ring r = Ring::zmod(n);
    int checked = 0;
    for_each_matrix(r, 2, [&](const Matrix& a) {
      if (n > 2 && ++checked % 7) return;
      const auto c = strongly_clean_bruteforce(a);
      CHECK(c.has_value() == strongly_clean_scan(a));
      if (c) CHECK(verify_strong_clean(a, *c));
    });
  }
}

TEST_CASE("strong-clean oracle budget and infinite rings") {
  CHECK_THROWS_AS(strongly_clean_bruteforce(Matrix::identity(Ring::zloc(2), 2)), Error);
  CHECK_THROWS_AS(strongly_clean_bruteforce(Matrix::identity(Ring::zmod(64), 3), 1000), Error);
}

TEST_CASE("pi-regular oracle agrees with naive X enumeration on a table ring") {
  const Ring r = Ring::table(z4(false), z4(true));
  int idx = 0;
  for_each_matrix(r, 2, [&](const Matrix& a) {
    if (++idx % 5) return;
    const auto c = pi_regular_oracle(a);
    CHECK(c.has_value() == pi_regular_scan(a, 4));
    if (c) CHECK(verify_pi_regular(a, *c));
  });
}

TEST_CASE("verifiers reject broken certificates") {
  const Ring r = Ring::zmod(6);
  const Matrix a = Matrix::from_ints(r, {{2, 1}, {0, 3}});
  auto c = strongly_clean_bruteforce(a);
  REQUIRE(c);
  CHECK(verify_strong_clean(a, *c));
  auto bad = *c;
  bad.U = bad.U + Matrix::identity(r, 2);
  CHECK_FALSE(verify_strong_clean(a, bad));
  auto p = pi_regular_oracle(a);
  REQUIRE(p);
  auto badp = *p;
  badp.X = Matrix(r, 2, 2);
  CHECK_FALSE(verify_pi_regular(a, badp));
}
