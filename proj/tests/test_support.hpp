#pragma once

#include <functional>
#include <vector>

#include "sclean/matrix.hpp"
#include "sclean/poly.hpp"

namespace testsupport {

using namespace sclean;

/// Every polynomial of degree < k (coefficients over a finite ring).
inline std::vector<Poly> all_polys_below(const Ring& r, int k) {
  std::vector<Poly> out;
  std::vector<std::uint64_t> idx(static_cast<std::size_t>(k), 0);
  const std::uint64_t q = r.order();
  while (true) {
    std::vector<Element> c;
    for (auto i : idx) c.push_back(r.element_at(i));
    Poly p(r, c);
    out.push_back(p);
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == q) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return out;
}

inline std::vector<MonicPoly> all_monic(const Ring& r, int d) {
  std::vector<MonicPoly> out;
  for (const auto& p : all_polys_below(r, d)) out.emplace_back(p + Poly::monomial(r.one(), d));
  return out;
}

/// det by cofactor expansion along the first row.
inline Element cofactor_det(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Element acc = a.ring().zero();
  for (std::size_t j = 0; j < n; ++j) {
    Matrix m(a.ring(), n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) m.set(i - 1, c++, a(i, k));
    const Element term = a(0, j) * cofactor_det(m);
    acc = j % 2 ? acc - term : acc + term;
  }
  return acc;
}

/// Every n×n matrix over a finite ring, row-major odometer.
inline void for_each_matrix(const Ring& r, std::size_t n, const std::function<void(const Matrix&)>& fn) {
  std::vector<std::uint64_t> idx(n * n, 0);
  const std::uint64_t q = r.order();
  while (true) {
    std::vector<Element> e;
    for (auto i : idx) e.push_back(r.element_at(i));
    fn(Matrix(r, n, n, e));
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == q) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
}

}  // namespace testsupport
