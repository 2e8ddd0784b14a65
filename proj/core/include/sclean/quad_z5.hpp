#pragma once

/**
 * @file quad_z5.hpp
 * @brief Z[θ] with θ^2 = -5, the ideal (2, 1+θ), the module M = 𝔄⊕𝔄 with the
 * free basis f1 = [-2, 1-θ], f2 = [1+θ, -2], and the endomorphism
 * φ([a,b]) = [a+b, 2b].
 *
 * Matrices use the row convention: row i holds the coordinates of the image
 * of f_i, so coordinates transform as row vectors, coords(ψ(m)) = coords(m)·M.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sclean::z5 {

/// a + bθ. Arithmetic throws UnsupportedSize on int64 overflow.
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  static constexpr QuadInt theta() { return {0, 1}; }

  QuadInt operator+(const QuadInt& o) const;
  QuadInt operator-(const QuadInt& o) const;
  QuadInt operator*(const QuadInt& o) const;
  QuadInt operator-() const;
  bool operator==(const QuadInt& o) const = default;

  QuadInt conj() const { return {a, -b}; }
  /// a^2 + 5b^2
  std::int64_t norm() const;
  bool is_unit() const { return norm() == 1; }
  bool is_zero() const { return a == 0 && b == 0; }
  std::string to_string() const;
};

/// x / y when the quotient lies in Z[θ].
std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y);
/// A square root in Z[θ], found through the norm equation N(s)^2 = N(d).
std::optional<QuadInt> quad_sqrt(const QuadInt& d);

/// x ∈ (2, 1+θ) iff a + b is even.
bool ideal_membership(const QuadInt& x);
/// x = 2u + (1+θ)v with the coefficients of v bounded by `bound`.
bool ideal_membership_search(const QuadInt& x, int bound);

struct MElem {
  QuadInt a;
  QuadInt b;

  MElem operator+(const MElem& o) const { return {a + o.a, b + o.b}; }
  bool operator==(const MElem& o) const = default;
  bool valid() const { return ideal_membership(a) && ideal_membership(b); }
  std::string to_string() const;
};
MElem operator*(const QuadInt& r, const MElem& m);

struct BasisCoords {
  QuadInt c1;
  QuadInt c2;
  bool operator==(const BasisCoords& o) const = default;
};

const std::array<MElem, 2>& basis();
/// Unique coordinates over Z[θ]; throws NotInModule when they are not integral.
BasisCoords basis_coords(const MElem& m);
MElem from_coords(const BasisCoords& c);

MElem phi_apply(const MElem& m);

struct QuadMatrix {
  std::array<QuadInt, 4> e{};

  static QuadMatrix identity() { return {{QuadInt{1, 0}, QuadInt{}, QuadInt{}, QuadInt{1, 0}}}; }
  const QuadInt& operator()(int i, int j) const { return e[static_cast<std::size_t>(2 * i + j)]; }
  QuadInt& operator()(int i, int j) { return e[static_cast<std::size_t>(2 * i + j)]; }
  QuadMatrix operator+(const QuadMatrix& o) const;
  QuadMatrix operator-(const QuadMatrix& o) const;
  QuadMatrix operator*(const QuadMatrix& o) const;
  bool operator==(const QuadMatrix& o) const = default;
  QuadInt det() const;
  QuadInt trace() const;
  std::string to_string() const;
};

/// t^2 + b·t + c
struct QuadPoly2 {
  QuadInt b;
  QuadInt c;
  QuadInt eval(const QuadInt& x) const;
  QuadInt discriminant() const;
  bool operator==(const QuadPoly2& o) const = default;
  std::string to_string() const;
};

/// The matrix of φ in the basis (rows from basis_coords(φ(f_i))) and its
/// characteristic polynomial t^2 - trace·t + det.
struct PhiMatrix {
  QuadMatrix A;
  QuadPoly2 chi;
};
PhiMatrix phi_matrix();

/// Monic factors are listed low degree first.
struct SrDecision {
  bool exists = false;
  std::vector<QuadInt> f0;
  std::vector<QuadInt> f1;
  std::vector<std::string> transcript;
};
/// Complete decision: trivial splits, then degree-1 splits through a square
/// root of the discriminant.
SrDecision sr_exists_deg2(const QuadPoly2& h);

struct QuadStrongClean {
  QuadMatrix E;
  QuadMatrix U;
  QuadMatrix U_inv;
};
/// E is the projection of M onto Y = {[b,b]} along X = {[a,0]}, written in
/// the basis. Throws VerificationFailed if a check fails.
QuadStrongClean phi_strong_clean_certificate();
/// Re-checks E^2 = E, A = E + U, EU = UE and U·U_inv = U_inv·U = I.
bool verify_quad_strong_clean(const QuadMatrix& a, const QuadStrongClean& c, std::string* why = nullptr);

struct AuditCheck {
  std::string name;
  bool ok;
  std::string detail;
};

struct Discrepancy {
  std::string quantity;
  std::string printed;
  std::string computed;
  std::string note;
};

struct Z5Audit {
  std::vector<AuditCheck> checks;
  PhiMatrix phi;
  QuadInt discriminant;
  SrDecision sr_computed;
  SrDecision sr_printed;
  QuadStrongClean certificate;
  std::vector<Discrepancy> discrepancies;

  bool verified() const;
};

/// Recomputes every quantity of the example and compares with the printed
/// values t^2 - 3t + 2 - 8θ and 1 - 32θ.
Z5Audit run_audit();

nlohmann::json to_json(const QuadInt& x);
QuadInt quad_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QuadMatrix& m);
QuadMatrix quad_matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Z5Audit& audit);

}  // namespace sclean::z5
