#include "sclean/quad_z5.hpp"

#include <cmath>

#include "sclean/errors.hpp"

namespace sclean::z5 {

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) fail(ErrorCode::UnsupportedSize, "Z[θ] arithmetic overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) fail(ErrorCode::UnsupportedSize, "Z[θ] arithmetic overflow");
  return r;
}

std::int64_t checked_neg(std::int64_t x) { return checked_mul(x, -1); }

std::optional<std::int64_t> exact_isqrt(std::int64_t n) {
  if (n < 0) return std::nullopt;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

bool is_integer(const QuadInt& x) { return x.b == 0; }

}  // namespace

QuadInt QuadInt::operator+(const QuadInt& o) const { return {checked_add(a, o.a), checked_add(b, o.b)}; }
QuadInt QuadInt::operator-(const QuadInt& o) const { return *this + -o; }
QuadInt QuadInt::operator-() const { return {checked_neg(a), checked_neg(b)}; }

QuadInt QuadInt::operator*(const QuadInt& o) const {
  // (a + bθ)(c + dθ) = ac - 5bd + (ad + bc)θ
  return {checked_add(checked_mul(a, o.a), checked_mul(-5, checked_mul(b, o.b))),
          checked_add(checked_mul(a, o.b), checked_mul(b, o.a))};
}

std::int64_t QuadInt::norm() const { return checked_add(checked_mul(a, a), checked_mul(5, checked_mul(b, b))); }

std::string QuadInt::to_string() const {
  if (b == 0) return std::to_string(a);
  std::string t = b == 1 ? "θ" : b == -1 ? "-θ" : std::to_string(b) + "θ";
  if (a == 0) return t;
  if (b < 0) return std::to_string(a) + " - " + t.substr(1);
  return std::to_string(a) + " + " + t;
}

std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y) {
  const std::int64_t n = y.norm();
  if (n == 0) return std::nullopt;
  const QuadInt p = x * y.conj();
  if (p.a % n != 0 || p.b % n != 0) return std::nullopt;
  return QuadInt{p.a / n, p.b / n};
}

std::optional<QuadInt> quad_sqrt(const QuadInt& d) {
  const auto m = exact_isqrt(d.norm());
  if (!m) return std::nullopt;
  for (std::int64_t v = 0; 5 * v * v <= *m; ++v) {
    const auto u = exact_isqrt(*m - 5 * v * v);
    if (!u) continue;
    for (const QuadInt& s : {QuadInt{*u, v}, QuadInt{*u, -v}})
      if (s * s == d) return s;
  }
  return std::nullopt;
}

bool ideal_membership(const QuadInt& x) { return (x.a + x.b) % 2 == 0; }

bool ideal_membership_search(const QuadInt& x, int bound) {
  // x - (1+θ)v must be 2u, i.e. have even coordinates.
  for (std::int64_t c = -bound; c <= bound; ++c)
    for (std::int64_t d = -bound; d <= bound; ++d) {
      const QuadInt r = x - QuadInt{1, 1} * QuadInt{c, d};
      if (r.a % 2 == 0 && r.b % 2 == 0) return true;
    }
  return false;
}

std::string MElem::to_string() const { return "[" + a.to_string() + ", " + b.to_string() + "]"; }

MElem operator*(const QuadInt& r, const MElem& m) { return {r * m.a, r * m.b}; }

const std::array<MElem, 2>& basis() {
  static const std::array<MElem, 2> f{MElem{{-2, 0}, {1, -1}}, MElem{{1, 1}, {-2, 0}}};
  return f;
}

BasisCoords basis_coords(const MElem& m) {
  const auto& [f1, f2] = basis();
  // Cramer's rule on c1·f1 + c2·f2 = m.
  const QuadInt det = f1.a * f2.b - f2.a * f1.b;
  const auto c1 = exact_div(m.a * f2.b - f2.a * m.b, det);
  const auto c2 = exact_div(f1.a * m.b - m.a * f1.b, det);
  if (!c1 || !c2) fail(ErrorCode::NotInModule, m.to_string() + " has non-integral coordinates");
  return {*c1, *c2};
}

MElem from_coords(const BasisCoords& c) { return c.c1 * basis()[0] + c.c2 * basis()[1]; }

MElem phi_apply(const MElem& m) { return {m.a + m.b, QuadInt{2, 0} * m.b}; }

QuadMatrix QuadMatrix::operator+(const QuadMatrix& o) const {
  QuadMatrix r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

QuadMatrix QuadMatrix::operator-(const QuadMatrix& o) const {
  QuadMatrix r;
  for (std::size_t i = 0; i < 4; ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

QuadMatrix QuadMatrix::operator*(const QuadMatrix& o) const {
  QuadMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
  return r;
}

QuadInt QuadMatrix::det() const { return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0); }
QuadInt QuadMatrix::trace() const { return (*this)(0, 0) + (*this)(1, 1); }

std::string QuadMatrix::to_string() const {
  return "[[" + e[0].to_string() + ", " + e[1].to_string() + "], [" + e[2].to_string() + ", " + e[3].to_string() + "]]";
}

QuadInt QuadPoly2::eval(const QuadInt& x) const { return x * x + b * x + c; }
QuadInt QuadPoly2::discriminant() const { return b * b - QuadInt{4, 0} * c; }

std::string QuadPoly2::to_string() const {
  std::string s = "t^2";
  if (!b.is_zero()) {
    if (is_integer(b)) {
      const std::int64_t v = b.a < 0 ? -b.a : b.a;
      s += (b.a < 0 ? " - " : " + ") + (v == 1 ? std::string() : std::to_string(v)) + "t";
    } else {
      s += " + (" + b.to_string() + ")t";
    }
  }
  if (is_integer(c) && !c.is_zero()) {
    s += (c.a < 0 ? " - " : " + ") + std::to_string(c.a < 0 ? -c.a : c.a);
  } else if (!c.is_zero()) {
    s += c.a > 0 ? " + " + c.to_string() : " + (" + c.to_string() + ")";
  }
  return s;
}

PhiMatrix phi_matrix() {
  PhiMatrix out;
  for (int i = 0; i < 2; ++i) {
    const BasisCoords c = basis_coords(phi_apply(basis()[static_cast<std::size_t>(i)]));
    out.A(i, 0) = c.c1;
    out.A(i, 1) = c.c2;
  }
  out.chi = {-out.A.trace(), out.A.det()};
  return out;
}

namespace {

std::string linear(const QuadInt& root) {
  return root.is_zero() ? "t" : "t - (" + root.to_string() + ")";
}

}  // namespace

SrDecision sr_exists_deg2(const QuadPoly2& h) {
  SrDecision d;
  auto& tr = d.transcript;
  const QuadInt one{1, 0};
  const QuadInt h0 = h.c, h1 = h.eval(one);
  tr.push_back("h = " + h.to_string());
  tr.push_back("f0 = 1, f1 = h: h(1) = " + h1.to_string() + (h1.is_unit() ? " is a unit" : " is not a unit"));
  if (h1.is_unit()) {
    d.exists = true;
    d.f0 = {one};
    d.f1 = {h.c, h.b, one};
    return d;
  }
  const QuadInt disc = h.discriminant();
  tr.push_back("discriminant = " + disc.to_string() + ", norm " + std::to_string(disc.norm()));
  const auto s = quad_sqrt(disc);
  if (!s) {
    tr.push_back(exact_isqrt(disc.norm()) ? "no x with x^2 = discriminant among the solutions of the norm equation"
                                          : "norm is not a perfect square: the discriminant is not a square in Z[θ]");
    tr.push_back("h has no monic factor of degree 1");
  } else {
    tr.push_back("discriminant = (" + s->to_string() + ")^2");
    const auto r1 = exact_div(-h.b + *s, QuadInt{2, 0});
    const auto r2 = exact_div(-h.b - *s, QuadInt{2, 0});
    if (!r1 || !r2) {
      tr.push_back("roots (-b ± s)/2 are not in Z[θ]");
    } else {
      for (const auto& [alpha, beta] : {std::pair{*r1, *r2}, std::pair{*r2, *r1}}) {
        const QuadInt f00 = -alpha, f11 = one - beta;
        tr.push_back("f0 = " + linear(alpha) + ", f1 = " + linear(beta) + ": f0(0) = " + f00.to_string() +
                     (f00.is_unit() ? " unit" : " non-unit") + ", f1(1) = " + f11.to_string() +
                     (f11.is_unit() ? " unit" : " non-unit"));
        if (f00.is_unit() && f11.is_unit() && !d.exists) {
          d.exists = true;
          d.f0 = {-alpha, one};
          d.f1 = {-beta, one};
        }
      }
      if (d.exists) return d;
    }
  }
  tr.push_back("f0 = h, f1 = 1: h(0) = " + h0.to_string() + (h0.is_unit() ? " is a unit" : " is not a unit"));
  if (h0.is_unit()) {
    d.exists = true;
    d.f0 = {h.c, h.b, one};
    d.f1 = {one};
    return d;
  }
  tr.push_back("no SR-factorization");
  return d;
}

bool verify_quad_strong_clean(const QuadMatrix& a, const QuadStrongClean& c, std::string* why) {
  auto reject = [&](const char* r) {
    if (why) *why = r;
    return false;
  };
  if (!(c.E * c.E == c.E)) return reject("E is not idempotent");
  if (!(c.E + c.U == a)) return reject("E + U differs from A");
  if (!(c.E * c.U == c.U * c.E)) return reject("E and U do not commute");
  if (!(c.U * c.U_inv == QuadMatrix::identity()) || !(c.U_inv * c.U == QuadMatrix::identity()))
    return reject("U_inv is not the inverse of U");
  return true;
}

QuadStrongClean phi_strong_clean_certificate() {
  const PhiMatrix phi = phi_matrix();
  // ε([a,b]) = [b,b] projects onto Y along X.
  QuadMatrix e;
  for (int i = 0; i < 2; ++i) {
    const MElem& f = basis()[static_cast<std::size_t>(i)];
    const BasisCoords c = basis_coords({f.b, f.b});
    e(i, 0) = c.c1;
    e(i, 1) = c.c2;
  }
  QuadStrongClean out{e, phi.A - e, {}};
  const QuadInt d = out.U.det();
  if (!d.is_unit()) fail(ErrorCode::VerificationFailed, "det(U) = " + d.to_string() + " is not ±1");
  out.U_inv(0, 0) = d * out.U(1, 1);
  out.U_inv(0, 1) = -(d * out.U(0, 1));
  out.U_inv(1, 0) = -(d * out.U(1, 0));
  out.U_inv(1, 1) = d * out.U(0, 0);
  std::string why;
  if (!verify_quad_strong_clean(phi.A, out, &why)) fail(ErrorCode::VerificationFailed, why);
  return out;
}

bool Z5Audit::verified() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

namespace {

BasisCoords row_times(const BasisCoords& v, const QuadMatrix& m) {
  return {v.c1 * m(0, 0) + v.c2 * m(1, 0), v.c1 * m(0, 1) + v.c2 * m(1, 1)};
}

std::string coords_str(const BasisCoords& c) { return "(" + c.c1.to_string() + ")f1 + (" + c.c2.to_string() + ")f2"; }

}  // namespace

Z5Audit run_audit() {
  Z5Audit audit;
  auto check = [&](std::string name, bool ok, std::string detail) {
    audit.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& [f1, f2] = basis();
  check("basis elements lie in M", f1.valid() && f2.valid(), f1.to_string() + ", " + f2.to_string());
  const QuadInt det = f1.a * f2.b - f2.a * f1.b;
  check("basis determinant generates 𝔄^2 = (2)", det == QuadInt{-2, 0}, "det = " + det.to_string());

  const QuadInt two{2, 0}, one_theta{1, 1};
  const std::vector<std::pair<MElem, BasisCoords>> table{
      {{two, {}}, {two, {1, -1}}},
      {{one_theta, {}}, {one_theta, {3, 0}}},
      {{{}, two}, {one_theta, two}},
      {{{}, one_theta}, {{-2, 1}, one_theta}},
  };
  for (const auto& [m, expected] : table) {
    const BasisCoords got = basis_coords(m);
    check("conversion " + m.to_string(), got == expected && from_coords(got) == m,
          "computed " + coords_str(got) + ", printed " + coords_str(expected));
  }
  const MElem phi_f1 = phi_apply(f1), phi_f2 = phi_apply(f2);
  check("φ(f1) = [-1 - θ, 2 - 2θ]", phi_f1 == MElem{{-1, -1}, {2, -2}}, phi_f1.to_string());
  check("φ(f2) = [-1 + θ, -4]", phi_f2 == MElem{{-1, 1}, {-4, 0}}, phi_f2.to_string());

  audit.phi = phi_matrix();
  const QuadMatrix printed{{QuadInt{5, -1}, QuadInt{-1, -2}, QuadInt{-3, -1}, QuadInt{-2, 1}}};
  check("matrix of φ", audit.phi.A == printed, "computed " + audit.phi.A.to_string());
  check("trace of φ is 3", audit.phi.A.trace() == QuadInt{3, 0}, audit.phi.A.trace().to_string());

  audit.discriminant = audit.phi.chi.discriminant();
  audit.sr_computed = sr_exists_deg2(audit.phi.chi);
  const QuadPoly2 printed_chi{{-3, 0}, {2, -8}};
  const QuadInt printed_disc{1, -32};
  audit.sr_printed = sr_exists_deg2(printed_chi);

  audit.certificate = phi_strong_clean_certificate();
  std::string why;
  check("strong-clean certificate for φ", verify_quad_strong_clean(audit.phi.A, audit.certificate, &why),
        why.empty() ? "E^2 = E, EU = UE, A = E + U, det U = " + audit.certificate.U.det().to_string() : why);
  // E kills the coordinates of X and fixes those of Y.
  const BasisCoords x = basis_coords({two, {}}), y = basis_coords({two, two});
  check("E annihilates X", row_times(x, audit.certificate.E) == BasisCoords{}, coords_str(row_times(x, audit.certificate.E)));
  check("E fixes Y", row_times(y, audit.certificate.E) == y, coords_str(row_times(y, audit.certificate.E)));
  check("A acts as φ on coordinates", row_times(basis_coords({two, two}), audit.phi.A) == basis_coords(phi_apply({two, two})),
        "checked on [2, 2]");

  if (!(audit.phi.chi == printed_chi))
    audit.discrepancies.push_back({"characteristic polynomial", printed_chi.to_string(), audit.phi.chi.to_string(),
                                   "det A = " + audit.phi.A.det().to_string() + " recomputed from the verified entries"});
  if (!(audit.discriminant == printed_disc))
    audit.discrepancies.push_back({"discriminant", printed_disc.to_string(), audit.discriminant.to_string(),
                                   "the printed polynomial itself has discriminant " +
                                       printed_chi.discriminant().to_string() + " (norm " +
                                       std::to_string(printed_chi.discriminant().norm()) + ")"});
  if (audit.sr_computed.exists != audit.sr_printed.exists)
    audit.discrepancies.push_back(
        {"SR-factorization of χ(A)", audit.sr_printed.exists ? "exists" : "does not exist",
         audit.sr_computed.exists ? "exists" : "does not exist",
         "the claim holds for the printed polynomial but not for the recomputed one"});
  return audit;
}

nlohmann::json to_json(const QuadInt& x) { return nlohmann::json::array({x.a, x.b}); }

QuadInt quad_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return {j.get<std::int64_t>(), 0};
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::InvalidInput, "Z[θ] element must be [a, b]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

nlohmann::json to_json(const QuadMatrix& m) {
  return nlohmann::json::array({nlohmann::json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                                nlohmann::json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

QuadMatrix quad_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
    fail(ErrorCode::InvalidInput, "Z[θ] matrix must be 2×2");
  QuadMatrix m;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) m(i, k) = quad_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  return m;
}

namespace {

nlohmann::json sr_json(const SrDecision& d) {
  auto poly = [](const std::vector<QuadInt>& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : p) a.push_back(to_json(c));
    return a;
  };
  nlohmann::json j{{"exists", d.exists}, {"transcript", d.transcript}};
  if (d.exists) j["factorization"] = {{"f0", poly(d.f0)}, {"f1", poly(d.f1)}};
  return j;
}

}  // namespace

nlohmann::json to_json(const Z5Audit& audit) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : audit.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  nlohmann::json disc = nlohmann::json::array();
  for (const auto& d : audit.discrepancies)
    disc.push_back({{"quantity", d.quantity}, {"printed", d.printed}, {"computed", d.computed}, {"note", d.note}});
  const auto& c = audit.certificate;
  return {
      {"kind", "z5_audit"},
      {"basis", {{"f1", basis()[0].to_string()}, {"f2", basis()[1].to_string()}}},
      {"checks", checks},
      {"matrix", {{"A", to_json(audit.phi.A)}, {"text", audit.phi.A.to_string()}}},
      {"char_poly", {{"computed", audit.phi.chi.to_string()}, {"b", to_json(audit.phi.chi.b)}, {"c", to_json(audit.phi.chi.c)}}},
      {"discriminant", {{"computed", audit.discriminant.to_string()}, {"norm", audit.discriminant.norm()}}},
      {"sr_decision", {{"recomputed_char_poly", sr_json(audit.sr_computed)}, {"printed_char_poly", sr_json(audit.sr_printed)}}},
      {"certificate",
       {{"kind", "strong_clean_z5"}, {"A", to_json(audit.phi.A)}, {"E", to_json(c.E)}, {"U", to_json(c.U)}, {"U_inv", to_json(c.U_inv)}}},
      {"DISCREPANCY", disc},
      {"verified", audit.verified()},
  };
}

}  // namespace sclean::z5
