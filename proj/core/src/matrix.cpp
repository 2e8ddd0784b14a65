#include "sclean/matrix.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "sclean/errors.hpp"

namespace sclean {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, ring_.zero()) {}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_) fail(ErrorCode::InvalidInput, "matrix entry count does not match its shape");
  for (const auto& x : e_)
    if (!(x.ring() == ring_)) fail(ErrorCode::RingMismatch, "matrix entry from " + x.ring().label());
}

Matrix Matrix::identity(const Ring& ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = ring.one();
  return m;
}

Matrix Matrix::from_ints(const Ring& ring, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<Element> e;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    if (cols && r.size() != cols) fail(ErrorCode::InvalidInput, "ragged matrix");
    cols = r.size();
    for (auto x : r) e.push_back(ring.from_int(x));
  }
  return Matrix(ring, rows.size(), cols, std::move(e));
}

void Matrix::set(std::size_t i, std::size_t j, Element v) {
  if (!(v.ring() == ring_)) fail(ErrorCode::RingMismatch, "entry from " + v.ring().label());
  e_.at(i * cols_ + j) = std::move(v);
}

void Matrix::check_shape(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::InvalidInput, "matrix shapes differ");
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_shape(o);
  std::vector<Element> v;
  v.reserve(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) v.push_back(e_[i] + o.e_[i]);
  return Matrix(ring_, rows_, cols_, std::move(v));
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_shape(o);
  std::vector<Element> v;
  v.reserve(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) v.push_back(e_[i] - o.e_[i]);
  return Matrix(ring_, rows_, cols_, std::move(v));
}

Matrix Matrix::operator-() const {
  std::vector<Element> v;
  for (const auto& x : e_) v.push_back(-x);
  return Matrix(ring_, rows_, cols_, std::move(v));
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::InvalidInput, "matrix shapes do not compose");
  if (!(ring_ == o.ring_)) fail(ErrorCode::RingMismatch, ring_.label() + " vs " + o.ring_.label());
  Matrix out(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Element acc = ring_.zero();
      for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * o(k, j);
      out.e_[i * o.cols_ + j] = std::move(acc);
    }
  return out;
}

Matrix Matrix::operator*(const Element& s) const {
  std::vector<Element> v;
  for (const auto& x : e_) v.push_back(x * s);
  return Matrix(ring_, rows_, cols_, std::move(v));
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || !(ring_ == o.ring_)) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (!(e_[i] == o.e_[i])) return false;
  return true;
}

Matrix Matrix::pow(unsigned k) const {
  Matrix acc = identity(ring_, rows_), base = *this;
  while (k) {
    if (k & 1U) acc = acc * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return acc;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.e_[j * rows_ + i] = (*this)(i, j);
  return out;
}

Matrix Matrix::restrict(std::size_t stalk) const {
  std::vector<Element> v;
  for (const auto& x : e_) v.push_back(x.restrict(stalk));
  return Matrix(ring_.stalk_ring(stalk), rows_, cols_, std::move(v));
}

Matrix Matrix::project(std::span<const std::size_t> positions) const {
  Ring sub = ring_.sub_ring(positions);
  std::vector<Element> v;
  for (const auto& x : e_) v.push_back(Element(sub, x.project(positions).values()));
  return Matrix(std::move(sub), rows_, cols_, std::move(v));
}

Matrix Matrix::embed(const Ring& target, const Matrix& corner, std::span<const std::size_t> positions) {
  std::vector<Element> v;
  for (const auto& x : corner.entries()) v.push_back(target.embed(x, positions));
  return Matrix(target, corner.rows(), corner.cols(), std::move(v));
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

void require_square(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0) fail(ErrorCode::InvalidInput, "square matrix of size >= 1 required");
}

/// Coefficients of det(tI - A), highest degree first.
std::vector<Element> berkowitz(const Matrix& a) {
  const Ring& ring = a.ring();
  const std::size_t n = a.rows();
  std::vector<Element> c{ring.one(), -a(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // Leading block [[M, S], [R, a_rr]] with M = A[0..r)[0..r).
    std::vector<Element> toeplitz{ring.one(), -a(r, r)};
    std::vector<Element> vec;
    for (std::size_t i = 0; i < r; ++i) vec.push_back(a(i, r));
    for (std::size_t k = 0; k < r; ++k) {
      Element dot = ring.zero();
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * vec[i];
      toeplitz.push_back(-dot);
      std::vector<Element> next;
      for (std::size_t i = 0; i < r; ++i) {
        Element acc = ring.zero();
        for (std::size_t j = 0; j < r; ++j) acc += a(i, j) * vec[j];
        next.push_back(std::move(acc));
      }
      vec = std::move(next);
    }
    std::vector<Element> next_c;
    for (std::size_t i = 0; i <= r + 1; ++i) {
      Element acc = ring.zero();
      for (std::size_t j = 0; j <= std::min(i, r); ++j) acc += toeplitz[i - j] * c[j];
      next_c.push_back(std::move(acc));
    }
    c = std::move(next_c);
  }
  return c;
}

}  // namespace

MonicPoly char_poly(const Matrix& a) {
  require_square(a);
  auto c = berkowitz(a);
  std::reverse(c.begin(), c.end());
  return MonicPoly(Poly(a.ring(), std::move(c)));
}

Element det(const Matrix& a) {
  require_square(a);
  const auto c = berkowitz(a);
  return a.rows() % 2 == 0 ? c.back() : -c.back();
}

Matrix adjugate(const Matrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  const auto c = berkowitz(a);  // c[i] is the coefficient of t^(n-i)
  // adj(A) = (-1)^(n+1) (A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I)
  Matrix acc = Matrix::identity(a.ring(), n);
  for (std::size_t i = 1; i < n; ++i) acc = acc * a + Matrix::identity(a.ring(), n) * c[i];
  return n % 2 == 1 ? acc : -acc;
}

std::optional<Matrix> inverse(const Matrix& a) {
  auto d = det(a).inverse();
  if (!d) return std::nullopt;
  return adjugate(a) * *d;
}

Matrix companion(const MonicPoly& h) {
  const int n = h.degree();
  if (n < 1) fail(ErrorCode::InvalidInput, "companion matrix needs degree >= 1");
  const auto un = static_cast<std::size_t>(n);
  Matrix c(h.ring(), un, un);
  for (std::size_t i = 0; i + 1 < un; ++i) c.set(i + 1, i, h.ring().one());
  for (std::size_t i = 0; i < un; ++i) c.set(i, un - 1, -h.coeff(static_cast<int>(i)));
  return c;
}

bool is_companion(const Matrix& a) {
  if (!a.is_square()) return false;
  return a == companion(char_poly(a));
}

Matrix eval_poly(const Poly& f, const Matrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  Matrix acc(a.ring(), n, n);
  const Matrix id = Matrix::identity(a.ring(), n);
  for (int i = f.degree(); i >= 0; --i) acc = acc * a + id * f.coeff(i);
  return acc;
}

MatrixClass matrix_classify(const Matrix& a) {
  require_square(a);
  MatrixClass out{};
  out.inverse = inverse(a);
  out.is_unit = out.inverse.has_value();
  out.is_idempotent = a * a == a;
  const MonicPoly chi = char_poly(a);
  out.is_nilpotent = true;
  for (int i = 0; i < chi.degree(); ++i) out.is_nilpotent = out.is_nilpotent && radical_membership(chi.coeff(i)).in_nil;
  return out;
}

Matrix random_with_charpoly(const MonicPoly& h, std::uint64_t seed) {
  const Matrix c = companion(h);
  const std::size_t n = c.rows();
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Element> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_element(h.ring(), rng));
    Matrix p(h.ring(), n, n, std::move(e));
    if (auto pinv = inverse(p)) return p * c * *pinv;
  }
  return c;
}

}  // namespace sclean
