#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sclean/poly.hpp"
#include "sclean/ring.hpp"

namespace sclean {

/// Dense row-major matrix over a Ring.
class Matrix {
 public:
  Matrix(Ring ring, std::size_t rows, std::size_t cols);
  Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Element> entries);

  static Matrix identity(const Ring& ring, std::size_t n);
  static Matrix from_ints(const Ring& ring, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const Element& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Element v);
  const std::vector<Element>& entries() const noexcept { return e_; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Element& s) const;
  Matrix operator-() const;
  bool operator==(const Matrix& o) const;
  Matrix pow(unsigned k) const;
  Matrix transpose() const;

  Matrix restrict(std::size_t stalk) const;
  Matrix project(std::span<const std::size_t> positions) const;
  static Matrix embed(const Ring& target, const Matrix& corner, std::span<const std::size_t> positions);

  std::string to_string() const;

 private:
  void check_shape(const Matrix& o) const;

  Ring ring_;
  std::size_t rows_, cols_;
  std::vector<Element> e_;
};

/// Characteristic polynomial det(tI - A) by Berkowitz's division-free
/// recurrence; valid over any commutative ring.
MonicPoly char_poly(const Matrix& a);
Element det(const Matrix& a);
/// adj(A) from the Cayley-Hamilton identity, division-free.
Matrix adjugate(const Matrix& a);
/// adj(A)·det(A)^-1 when det(A) is a unit.
std::optional<Matrix> inverse(const Matrix& a);

/// n×n companion matrix: ones on the subdiagonal, last column -h_0..-h_{n-1}.
Matrix companion(const MonicPoly& h);
bool is_companion(const Matrix& a);

/// f(A) by Horner's rule.
Matrix eval_poly(const Poly& f, const Matrix& a);

struct MatrixClass {
  bool is_unit;
  std::optional<Matrix> inverse;
  bool is_idempotent;
  bool is_nilpotent;
};
MatrixClass matrix_classify(const Matrix& a);

/// companion(h) conjugated by a seeded random invertible matrix.
Matrix random_with_charpoly(const MonicPoly& h, std::uint64_t seed);

/// Seeded random element (uniform on finite stalks, small fractions on Z_(p)).
template <class Rng>
Element random_element(const Ring& ring, Rng& rng) {
  std::vector<StalkValue> v;
  for (const auto& s : ring.stalks()) {
    if (s.finite()) {
      v.push_back(s.at(rng() % s.order()));
    } else {
      const auto num = static_cast<std::int64_t>(rng() % 19) - 9;
      std::int64_t den = static_cast<std::int64_t>(rng() % 5) + 1;
      while (den % s.prime() == 0) ++den;
      v.push_back(Rational(num, den));
    }
  }
  return ring.element(std::move(v));
}

}  // namespace sclean
