#pragma once

#include <span>
#include <string>
#include <vector>

#include "sclean/ring.hpp"

namespace sclean {

/// Dense univariate polynomial over a Ring, coefficients low degree first.
/// Trailing zero coefficients are trimmed, so the zero polynomial has degree -1.
class Poly {
 public:
  explicit Poly(Ring ring) : ring_(std::move(ring)) {}
  Poly(Ring ring, std::vector<Element> coeffs);

  static Poly constant(const Element& c);
  /// c·t^k
  static Poly monomial(const Element& c, int k);
  /// t - a
  static Poly linear(const Element& a);
  /// Builds from integers via the canonical map Z -> R.
  static Poly from_ints(const Ring& ring, std::initializer_list<std::int64_t> coeffs);

  const Ring& ring() const noexcept { return ring_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Element>& coeffs() const noexcept { return c_; }
  /// Coefficient of t^i (zero past the degree).
  Element coeff(int i) const;
  Element leading() const;
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Element& s) const;
  bool operator==(const Poly& o) const;

  /// Horner evaluation.
  Element eval(const Element& x) const;

  /// Coefficient-wise image in a stalk / corner.
  Poly restrict(std::size_t stalk) const;
  Poly project(std::span<const std::size_t> positions) const;
  /// Places a corner polynomial into `target`, zero outside the positions.
  static Poly embed(const Ring& target, const Poly& corner_poly, std::span<const std::size_t> positions);

  std::string to_string() const;

 private:
  void trim();

  Ring ring_;
  std::vector<Element> c_;
};

/// A polynomial whose leading coefficient is exactly 1.
class MonicPoly {
 public:
  /// Throws InvalidInput unless p is monic.
  explicit MonicPoly(Poly p);
  static MonicPoly from_ints(const Ring& ring, std::initializer_list<std::int64_t> coeffs);
  /// t^k over the ring.
  static MonicPoly power_of_t(const Ring& ring, int k);

  const Poly& poly() const noexcept { return p_; }
  operator const Poly&() const noexcept { return p_; }
  const Ring& ring() const noexcept { return p_.ring(); }
  int degree() const noexcept { return p_.degree(); }
  Element coeff(int i) const { return p_.coeff(i); }
  Element eval(const Element& x) const { return p_.eval(x); }
  MonicPoly restrict(std::size_t stalk) const { return MonicPoly(p_.restrict(stalk)); }
  MonicPoly project(std::span<const std::size_t> positions) const { return MonicPoly(p_.project(positions)); }
  MonicPoly operator*(const MonicPoly& o) const { return MonicPoly(p_ * o.p_); }
  bool operator==(const MonicPoly& o) const { return p_ == o.p_; }
  std::string to_string() const { return p_.to_string(); }

 private:
  Poly p_;
};

struct Division {
  Poly quotient;
  Poly remainder;
  bool exact;
};

/// Long division by a monic divisor; total over any commutative ring.
/// Throws NonMonicDivisor when the divisor's leading coefficient is not 1.
Division monic_divide(const Poly& f, const Poly& g);

/// Glues per-block polynomials (over the corners of a complete orthogonal
/// set) into one polynomial over `ring`.
Poly glue_polys(const Ring& ring, std::span<const Element> idempotents, std::span<const Poly> parts);

}  // namespace sclean
