#include "sclean/poly.hpp"

#include "sclean/errors.hpp"

namespace sclean {

Poly::Poly(Ring ring, std::vector<Element> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (!(c.ring() == ring_)) fail(ErrorCode::RingMismatch, "coefficient from " + c.ring().label());
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const Element& c) { return Poly(c.ring(), {c}); }

Poly Poly::monomial(const Element& c, int k) {
  std::vector<Element> v(static_cast<std::size_t>(k) + 1, c.ring().zero());
  v.back() = c;
  return Poly(c.ring(), std::move(v));
}

Poly Poly::linear(const Element& a) { return Poly(a.ring(), {-a, a.ring().one()}); }

Poly Poly::from_ints(const Ring& ring, std::initializer_list<std::int64_t> coeffs) {
  std::vector<Element> v;
  for (auto c : coeffs) v.push_back(ring.from_int(c));
  return Poly(ring, std::move(v));
}

Element Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return ring_.zero();
  return c_[static_cast<std::size_t>(i)];
}

Element Poly::leading() const { return c_.empty() ? ring_.zero() : c_.back(); }

Poly Poly::operator+(const Poly& o) const {
  const std::size_t n = std::max(c_.size(), o.c_.size());
  std::vector<Element> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)));
  return Poly(ring_, std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Element> v;
  for (const auto& c : c_) v.push_back(-c);
  return Poly(ring_, std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
  if (!(ring_ == o.ring_)) fail(ErrorCode::RingMismatch, ring_.label() + " vs " + o.ring_.label());
  if (c_.empty() || o.c_.empty()) return Poly(ring_);
  std::vector<Element> v(c_.size() + o.c_.size() - 1, ring_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Poly(ring_, std::move(v));
}

Poly Poly::operator*(const Element& s) const {
  std::vector<Element> v;
  for (const auto& c : c_) v.push_back(c * s);
  return Poly(ring_, std::move(v));
}

bool Poly::operator==(const Poly& o) const {
  if (!(ring_ == o.ring_) || c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

Element Poly::eval(const Element& x) const {
  Element acc = ring_.zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::restrict(std::size_t stalk) const {
  std::vector<Element> v;
  for (const auto& c : c_) v.push_back(c.restrict(stalk));
  return Poly(ring_.stalk_ring(stalk), std::move(v));
}

Poly Poly::project(std::span<const std::size_t> positions) const {
  Ring sub = ring_.sub_ring(positions);
  std::vector<Element> v;
  for (const auto& c : c_) v.push_back(Element(sub, c.project(positions).values()));
  return Poly(std::move(sub), std::move(v));
}

Poly Poly::embed(const Ring& target, const Poly& corner_poly, std::span<const std::size_t> positions) {
  std::vector<Element> v;
  for (const auto& c : corner_poly.coeffs()) v.push_back(target.embed(c, positions));
  return Poly(target, std::move(v));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Element& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    const bool negative = cs.starts_with('-');
    if (negative) cs.erase(0, 1);
    if (out.empty()) out = negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (i > 0 && cs == "1") cs.clear();
    out += cs;
    if (i > 0) out += i == 1 ? "t" : "t^" + std::to_string(i);
  }
  return out;
}

MonicPoly::MonicPoly(Poly p) : p_(std::move(p)) {
  if (!p_.is_monic()) fail(ErrorCode::InvalidInput, "polynomial " + p_.to_string() + " is not monic");
}

MonicPoly MonicPoly::from_ints(const Ring& ring, std::initializer_list<std::int64_t> coeffs) {
  return MonicPoly(Poly::from_ints(ring, coeffs));
}

MonicPoly MonicPoly::power_of_t(const Ring& ring, int k) { return MonicPoly(Poly::monomial(ring.one(), k)); }

Division monic_divide(const Poly& f, const Poly& g) {
  if (!g.is_monic()) fail(ErrorCode::NonMonicDivisor, "divisor " + g.to_string() + " is not monic");
  const Ring& ring = f.ring();
  if (f.degree() < g.degree()) return {Poly(ring), f, f.is_zero()};
  std::vector<Element> rem = f.coeffs();
  const int dg = g.degree();
  std::vector<Element> quo(static_cast<std::size_t>(f.degree() - dg + 1), ring.zero());
  for (int i = f.degree(); i >= dg; --i) {
    const Element lead = rem[static_cast<std::size_t>(i)];
    if (lead.is_zero()) continue;
    quo[static_cast<std::size_t>(i - dg)] = lead;
    for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= lead * g.coeff(j);
  }
  Poly r(ring, std::move(rem));
  const bool exact = r.is_zero();
  return {Poly(ring, std::move(quo)), std::move(r), exact};
}

Poly glue_polys(const Ring& ring, std::span<const Element> idempotents, std::span<const Poly> parts) {
  Poly out(ring);
  for (std::size_t i = 0; i < idempotents.size(); ++i) {
    const auto pos = support(idempotents[i]);
    out = out + Poly::embed(ring, parts[i], pos);
  }
  return out;
}

}  // namespace sclean
