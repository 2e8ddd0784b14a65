#include <doctest.h>

#include "sclean/errors.hpp"
#include "sclean/quad_z5.hpp"

using namespace sclean::z5;

namespace {

bool is_unit_z(const QuadInt& x) { return x.norm() == 1; }

// Degree-1 splits t^2 + bt + c = (t - r)(t - s) found by scanning a box for r.
bool sr_bruteforce(const QuadPoly2& h, int box) {
  if (is_unit_z(h.c) || is_unit_z(QuadInt{1, 0} + h.b + h.c)) return true;  // f0 = h or f1 = h
  for (std::int64_t a = -box; a <= box; ++a)
    for (std::int64_t b = -box; b <= box; ++b) {
      const QuadInt r{a, b};
      if (!h.eval(r).is_zero()) continue;
      const QuadInt s = -h.b - r;
      if (is_unit_z(-r) && is_unit_z(QuadInt{1, 0} - s)) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("Z[theta] arithmetic") {
  const QuadInt t = QuadInt::theta();
  CHECK(t * t == QuadInt{-5, 0});
  CHECK((QuadInt{1, 1} * QuadInt{1, -1}) == QuadInt{6, 0});
  CHECK(QuadInt{2, 3}.norm() == 49);
  CHECK(exact_div(QuadInt{6, 0}, QuadInt{1, 1}) == QuadInt{1, -1});
  CHECK_FALSE(exact_div(QuadInt{3, 0}, QuadInt{2, 0}));
  CHECK(quad_sqrt(QuadInt{-5, 0}) == QuadInt{0, 1});
  CHECK_FALSE(quad_sqrt(QuadInt{2, 0}));
  CHECK_THROWS_AS((QuadInt{INT64_MAX, 0} + QuadInt{1, 0}), sclean::Error);
}

TEST_CASE("quad_sqrt agrees with squaring") {
  for (std::int64_t a = -12; a <= 12; ++a)
    for (std::int64_t b = -12; b <= 12; ++b) {
      const QuadInt x{a, b};
      const auto s = quad_sqrt(x * x);
      REQUIRE(s);
      CHECK(*s * *s == x * x);
    }
}

TEST_CASE("ideal membership parity criterion matches search") {
  for (std::int64_t a = -10; a <= 10; ++a)
    for (std::int64_t b = -10; b <= 10; ++b) CHECK(ideal_membership({a, b}) == ideal_membership_search({a, b}, 12));
}

TEST_CASE("basis conversions") {
  const auto& f = basis();
  CHECK(f[0].valid());
  CHECK(f[1].valid());
  const MElem m1{{2, 0}, {0, 0}};
  CHECK(from_coords(basis_coords(m1)) == m1);
  CHECK(basis_coords(m1) == BasisCoords{{2, 0}, {1, -1}});
  CHECK_THROWS_AS((basis_coords(MElem{QuadInt{1, 0}, QuadInt{}})), sclean::Error);
}

TEST_CASE("phi matrix and characteristic polynomial") {
  const PhiMatrix pm = phi_matrix();
  CHECK(pm.A == QuadMatrix{{QuadInt{5, -1}, QuadInt{-1, -2}, QuadInt{-3, -1}, QuadInt{-2, 1}}});
  CHECK(pm.chi.b == QuadInt{-3, 0});
  CHECK(pm.chi.c == QuadInt{2, 0});
  CHECK(pm.chi.discriminant() == QuadInt{1, 0});
  // Cayley-Hamilton
  const QuadMatrix a = pm.A;
  const QuadMatrix id = QuadMatrix::identity();
  QuadMatrix b = id, c = id;
  for (auto& x : b.e) x = x * pm.chi.b;
  for (auto& x : c.e) x = x * pm.chi.c;
  CHECK(a * a + b * a + c == QuadMatrix{});
}

TEST_CASE("SR decision matches degree-1 brute force") {
  for (std::int64_t b0 = -4; b0 <= 4; ++b0)
    for (std::int64_t b1 = -2; b1 <= 2; ++b1)
      for (std::int64_t c0 = -4; c0 <= 4; ++c0)
        for (std::int64_t c1 = -2; c1 <= 2; ++c1) {
          const QuadPoly2 h{{b0, b1}, {c0, c1}};
          INFO(h.to_string());
          CHECK(sr_exists_deg2(h).exists == sr_bruteforce(h, 12));
        }
  CHECK(sr_exists_deg2(phi_matrix().chi).exists);
  CHECK_FALSE(sr_exists_deg2(QuadPoly2{{-3, 0}, {2, -8}}).exists);
}

TEST_CASE("strong clean certificate for phi") {
  const auto c = phi_strong_clean_certificate();
  std::string why;
  CHECK(verify_quad_strong_clean(phi_matrix().A, c, &why));
  auto bad = c;
  bad.U(0, 0) = bad.U(0, 0) + QuadInt{1, 0};
  CHECK_FALSE(verify_quad_strong_clean(phi_matrix().A, bad));
}

TEST_CASE("audit is verified and deterministic") {
  const auto a = run_audit();
  CHECK(a.verified());
  CHECK_FALSE(a.discrepancies.empty());
  CHECK(to_json(a).dump() == to_json(run_audit()).dump());
}
