#include "sclean/ring.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "sclean/errors.hpp"

namespace sclean {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_norm(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

/// Inverse of a modulo m, or -1 when gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = mod_norm(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) return -1;
  return mod_norm(old_s, m);
}

Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(ErrorCode::InvalidInput, "expected an integer or \"a/b\" string, got " + j.dump());
  const auto s = j.get<std::string>();
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator in " + s);
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidInput, "malformed fraction \"" + s + "\"");
  }
}

std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace

// ---------------------------------------------------------------- LocalStalk

LocalStalk LocalStalk::prime_power(std::int64_t p, int k) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) fail(ErrorCode::InvalidInput, "exponent must be positive");
  LocalStalk s;
  s.kind_ = Kind::PrimePower;
  s.p_ = p;
  s.k_ = k;
  s.modulus_ = 1;
  for (int i = 0; i < k; ++i) {
    if (s.modulus_ > (std::int64_t{1} << 40) / p) fail(ErrorCode::UnsupportedSize, "modulus too large");
    s.modulus_ *= p;
  }
  return s;
}

LocalStalk LocalStalk::localized(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  LocalStalk s;
  s.kind_ = Kind::Localized;
  s.p_ = p;
  s.k_ = 0;
  return s;
}

LocalStalk LocalStalk::table(std::shared_ptr<const TableRing> t) {
  LocalStalk s;
  s.kind_ = Kind::Table;
  s.modulus_ = static_cast<std::int64_t>(t->size());
  s.table_ = std::move(t);
  return s;
}

std::uint64_t LocalStalk::order() const {
  if (kind_ == Kind::Localized) fail(ErrorCode::InfiniteRing, label() + " is infinite");
  return static_cast<std::uint64_t>(modulus_);
}

std::string LocalStalk::label() const {
  switch (kind_) {
    case Kind::PrimePower:
      return "Z/" + std::to_string(modulus_);
    case Kind::Localized:
      return "Z_(" + std::to_string(p_) + ")";
    case Kind::Table:
      return "T" + std::to_string(table_->size());
  }
  return {};
}

nlohmann::json LocalStalk::descriptor() const {
  switch (kind_) {
    case Kind::PrimePower:
      return {{"type", "zmod"}, {"n", modulus_}};
    case Kind::Localized:
      return {{"type", "zloc"}, {"p", p_}};
    case Kind::Table:
      return table_->descriptor();
  }
  return {};
}

StalkValue LocalStalk::zero() const {
  if (kind_ == Kind::Localized) return Rational(0);
  if (kind_ == Kind::Table) return std::int64_t{table_->zero()};
  return std::int64_t{0};
}

StalkValue LocalStalk::one() const {
  if (kind_ == Kind::Localized) return Rational(1);
  if (kind_ == Kind::Table) return std::int64_t{table_->one()};
  return std::int64_t{modulus_ == 1 ? 0 : 1};
}

StalkValue LocalStalk::from_int(std::int64_t v) const {
  switch (kind_) {
    case Kind::PrimePower:
      return mod_norm(v, modulus_);
    case Kind::Localized:
      return Rational(v);
    case Kind::Table: {
      // v·1 by double-and-add; negative v via negation.
      const TableRing& t = *table_;
      int acc = t.zero(), base = t.one();
      std::uint64_t m = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
      while (m) {
        if (m & 1) acc = t.add(acc, base);
        base = t.add(base, base);
        m >>= 1;
      }
      return std::int64_t{v < 0 ? t.neg(acc) : acc};
    }
  }
  return {};
}

StalkValue LocalStalk::add(const StalkValue& a, const StalkValue& b) const {
  switch (kind_) {
    case Kind::PrimePower: {
      std::int64_t s = res(a) + res(b);
      return s >= modulus_ ? s - modulus_ : s;
    }
    case Kind::Localized:
      return Rational(frac(a) + frac(b));
    case Kind::Table:
      return std::int64_t{table_->add(static_cast<int>(res(a)), static_cast<int>(res(b)))};
  }
  return {};
}

StalkValue LocalStalk::neg(const StalkValue& a) const {
  switch (kind_) {
    case Kind::PrimePower:
      return res(a) == 0 ? std::int64_t{0} : modulus_ - res(a);
    case Kind::Localized:
      return Rational(-frac(a));
    case Kind::Table:
      return std::int64_t{table_->neg(static_cast<int>(res(a)))};
  }
  return {};
}

StalkValue LocalStalk::sub(const StalkValue& a, const StalkValue& b) const { return add(a, neg(b)); }

StalkValue LocalStalk::mul(const StalkValue& a, const StalkValue& b) const {
  switch (kind_) {
    case Kind::PrimePower:
      return mod_mul(res(a), res(b), modulus_);
    case Kind::Localized:
      return Rational(frac(a) * frac(b));
    case Kind::Table:
      return std::int64_t{table_->mul(static_cast<int>(res(a)), static_cast<int>(res(b)))};
  }
  return {};
}

bool LocalStalk::equal(const StalkValue& a, const StalkValue& b) const {
  if (kind_ == Kind::Localized) return frac(a) == frac(b);
  return res(a) == res(b);
}

std::optional<StalkValue> LocalStalk::inverse(const StalkValue& a) const {
  switch (kind_) {
    case Kind::PrimePower: {
      const std::int64_t inv = mod_inverse(res(a), modulus_);
      if (inv < 0) return std::nullopt;
      return inv;
    }
    case Kind::Localized: {
      const BigInt num = boost::multiprecision::numerator(frac(a));
      if (num == 0 || num % p_ == 0) return std::nullopt;
      return Rational(1 / frac(a));
    }
    case Kind::Table: {
      const int inv = table_->inverse(static_cast<int>(res(a)));
      if (inv < 0) return std::nullopt;
      return std::int64_t{inv};
    }
  }
  return std::nullopt;
}

bool LocalStalk::is_unit(const StalkValue& a) const {
  switch (kind_) {
    case Kind::PrimePower:
      return std::gcd(res(a), p_) == 1;
    case Kind::Localized: {
      const BigInt num = boost::multiprecision::numerator(frac(a));
      return num != 0 && num % p_ != 0;
    }
    case Kind::Table:
      return table_->inverse(static_cast<int>(res(a))) >= 0;
  }
  return false;
}

bool LocalStalk::is_nilpotent(const StalkValue& a) const {
  switch (kind_) {
    case Kind::PrimePower:
      return res(a) % p_ == 0;
    case Kind::Localized:
      return frac(a) == 0;
    case Kind::Table:
      return table_->is_nilpotent(static_cast<int>(res(a)));
  }
  return false;
}

std::strong_ordering LocalStalk::compare(const StalkValue& a, const StalkValue& b) const {
  if (kind_ == Kind::Localized) {
    if (frac(a) < frac(b)) return std::strong_ordering::less;
    if (frac(b) < frac(a)) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return res(a) <=> res(b);
}

StalkValue LocalStalk::at(std::uint64_t index) const {
  if (kind_ == Kind::Localized) fail(ErrorCode::InfiniteRing, label() + " cannot be enumerated");
  return static_cast<std::int64_t>(index);
}

std::uint64_t LocalStalk::index_of(const StalkValue& a) const {
  if (kind_ == Kind::Localized) fail(ErrorCode::InfiniteRing, label() + " cannot be enumerated");
  return static_cast<std::uint64_t>(res(a));
}

int LocalStalk::nilpotency_index() const {
  switch (kind_) {
    case Kind::PrimePower:
      return k_;
    case Kind::Localized:
      return 1;
    case Kind::Table:
      return table_->nilpotency_index();
  }
  return 1;
}

std::optional<int> LocalStalk::valuation(const StalkValue& a) const {
  switch (kind_) {
    case Kind::PrimePower: {
      std::int64_t r = res(a);
      if (r == 0) return std::nullopt;
      int v = 0;
      while (r % p_ == 0) {
        r /= p_;
        ++v;
      }
      return v;
    }
    case Kind::Localized: {
      BigInt num = boost::multiprecision::numerator(frac(a));
      if (num == 0) return std::nullopt;
      int v = 0;
      while (num % p_ == 0) {
        num /= p_;
        ++v;
      }
      return v;
    }
    case Kind::Table:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<StalkValue> LocalStalk::solve_scalar(const StalkValue& d, const StalkValue& c) const {
  switch (kind_) {
    case Kind::PrimePower: {
      const auto vd = valuation(d);
      if (!vd) return res(c) == 0 ? std::optional<StalkValue>(std::int64_t{0}) : std::nullopt;
      const auto vc = valuation(c);
      if (vc && *vc < *vd) return std::nullopt;
      std::int64_t pv = 1;
      for (int i = 0; i < *vd; ++i) pv *= p_;
      const std::int64_t m = modulus_ / pv;
      const std::int64_t dd = (res(d) / pv) % m, cc = (res(c) / pv) % m;
      return mod_mul(cc, mod_inverse(dd, m), m);
    }
    case Kind::Localized: {
      if (frac(d) == 0) return frac(c) == 0 ? std::optional<StalkValue>(Rational(0)) : std::nullopt;
      Rational q = frac(c) / frac(d);
      if (boost::multiprecision::denominator(q) % p_ == 0) return std::nullopt;
      return q;
    }
    case Kind::Table: {
      const TableRing& t = *table_;
      for (int y = 0; y < static_cast<int>(t.size()); ++y)
        if (t.mul(static_cast<int>(res(d)), y) == res(c)) return std::int64_t{y};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string LocalStalk::format(const StalkValue& a) const {
  if (kind_ == Kind::Localized) return format_rational(frac(a));
  return std::to_string(res(a));
}

nlohmann::json LocalStalk::to_json(const StalkValue& a) const {
  if (kind_ == Kind::Localized) return format_rational(frac(a));
  return res(a);
}

StalkValue LocalStalk::parse(const nlohmann::json& j) const {
  if (kind_ == Kind::Localized) return normalize(parse_rational(j));
  std::int64_t v = 0;
  if (j.is_number_integer()) {
    v = j.get<std::int64_t>();
  } else if (j.is_string()) {
    try {
      std::size_t used = 0;
      v = std::stoll(j.get<std::string>(), &used);
      if (used != j.get<std::string>().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "malformed integer " + j.dump());
    }
  } else {
    fail(ErrorCode::InvalidInput, "expected an integer stalk value, got " + j.dump());
  }
  return normalize(v);
}

StalkValue LocalStalk::normalize(const StalkValue& a) const {
  switch (kind_) {
    case Kind::PrimePower:
      if (std::holds_alternative<Rational>(a)) fail(ErrorCode::InvalidInput, "fraction given for " + label());
      return mod_norm(res(a), modulus_);
    case Kind::Localized: {
      const Rational q = std::holds_alternative<Rational>(a) ? frac(a) : Rational(res(a));
      if (boost::multiprecision::denominator(q) % p_ == 0)
        fail(ErrorCode::InvalidInput, format_rational(q) + " is not in " + label());
      return q;
    }
    case Kind::Table:
      if (std::holds_alternative<Rational>(a) || res(a) < 0 || res(a) >= modulus_)
        fail(ErrorCode::InvalidInput, "table index out of range for " + label());
      return a;
  }
  return a;
}

bool LocalStalk::verify_local() const {
  if (kind_ == Kind::Localized) return true;
  if (kind_ == Kind::Table) return table_->is_local();
  std::vector<std::int64_t> nonunits;
  for (std::int64_t r = 0; r < modulus_; r += p_) nonunits.push_back(r);
  const auto q = static_cast<std::uint64_t>(nonunits.size());
  if (q * q > 20'000'000) return is_prime(p_);
  for (std::int64_t a : nonunits) {
    for (std::int64_t b : nonunits)
      if (is_unit(add(a, b))) return false;
  }
  for (std::int64_t a : nonunits)
    for (std::int64_t r = 0; r < modulus_; ++r)
      if (is_unit(mul(a, r))) return false;
  return true;
}

bool LocalStalk::operator==(const LocalStalk& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::PrimePower:
      return modulus_ == o.modulus_;
    case Kind::Localized:
      return p_ == o.p_;
    case Kind::Table:
      return table_ == o.table_ || *table_ == *o.table_;
  }
  return false;
}

// ---------------------------------------------------------------- Ring

namespace detail {
struct RingData {
  std::vector<LocalStalk> stalks;
  std::optional<nlohmann::json> descriptor;
  std::vector<Ring> factors;
  std::vector<Ring> stalk_rings;  // empty for single-stalk rings
  // Table descriptors only.
  std::shared_ptr<const TableRing> whole;
  std::vector<TableRing::Corner> corners;
};
}  // namespace detail

Ring Ring::make(std::vector<LocalStalk> stalks, std::optional<nlohmann::json> descriptor, std::vector<Ring> factors) {
  if (stalks.empty()) fail(ErrorCode::InvalidInput, "a ring needs at least one stalk");
  auto d = std::make_shared<detail::RingData>();
  d->stalks = std::move(stalks);
  d->descriptor = std::move(descriptor);
  d->factors = std::move(factors);
  if (d->stalks.size() > 1) {
    d->stalk_rings.reserve(d->stalks.size());
    for (const auto& s : d->stalks) d->stalk_rings.push_back(make({s}, std::nullopt, {}));
  }
  return Ring(std::move(d));
}

Ring Ring::zmod(std::int64_t n) {
  if (n < 2) fail(ErrorCode::InvalidInput, "zmod needs n >= 2");
  std::vector<LocalStalk> stalks;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (k) stalks.push_back(LocalStalk::prime_power(p, k));
  }
  if (m > 1) stalks.push_back(LocalStalk::prime_power(m, 1));
  return make(std::move(stalks), nlohmann::json{{"type", "zmod"}, {"n", n}}, {});
}

Ring Ring::zloc(std::int64_t p) {
  return make({LocalStalk::localized(p)}, nlohmann::json{{"type", "zloc"}, {"p", p}}, {});
}

Ring Ring::product(const std::vector<Ring>& factors) {
  if (factors.empty()) fail(ErrorCode::InvalidInput, "product needs at least one factor");
  std::vector<LocalStalk> stalks;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : factors) {
    stalks.insert(stalks.end(), f.stalks().begin(), f.stalks().end());
    fs.push_back(f.descriptor());
  }
  return make(std::move(stalks), nlohmann::json{{"type", "product"}, {"factors", fs}}, factors);
}

Ring Ring::table(const TableRing::Table& add, const TableRing::Table& mul) {
  auto whole = std::make_shared<TableRing>(add, mul);
  std::vector<TableRing::Corner> corners;
  std::vector<LocalStalk> stalks;
  for (int e : whole->primitive_idempotents()) {
    auto c = whole->corner(e);
    if (!c.ring->is_local()) fail(ErrorCode::NonRing, "corner at idempotent " + std::to_string(e) + " is not local");
    stalks.push_back(LocalStalk::table(c.ring));
    corners.push_back(std::move(c));
  }
  Ring r = make(std::move(stalks), whole->descriptor(), {});
  auto d = std::const_pointer_cast<detail::RingData>(r.d_);
  d->whole = std::move(whole);
  d->corners = std::move(corners);
  return r;
}

Ring Ring::from_stalks(std::vector<LocalStalk> stalks) { return make(std::move(stalks), std::nullopt, {}); }

Ring Ring::build(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    fail(ErrorCode::InvalidInput, "ring descriptor must be an object with a \"type\" field");
  const auto type = j["type"].get<std::string>();
  auto need_int = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
      fail(ErrorCode::InvalidInput, std::string(type) + " descriptor needs integer \"" + key + "\"");
    return j[key].get<std::int64_t>();
  };
  if (type == "zmod") return zmod(need_int("n"));
  if (type == "zloc") return zloc(need_int("p"));
  if (type == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
      fail(ErrorCode::InvalidInput, "product descriptor needs a non-empty \"factors\" array");
    std::vector<Ring> factors;
    for (const auto& f : j["factors"]) factors.push_back(build(f));
    return product(factors);
  }
  if (type == "table") {
    if (!j.contains("add") || !j.contains("mul")) fail(ErrorCode::InvalidInput, "table descriptor needs add and mul");
    TableRing::Table add, mul;
    try {
      add = j["add"].get<TableRing::Table>();
      mul = j["mul"].get<TableRing::Table>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorCode::InvalidInput, "table entries must be integer arrays");
    }
    if (add.size() > TableRing::kMaxSize)
      fail(ErrorCode::UnsupportedSize, "table ring has " + std::to_string(add.size()) + " elements (max 64)");
    return table(add, mul);
  }
  fail(ErrorCode::InvalidInput, "unsupported ring type \"" + type + "\"");
}

std::size_t Ring::num_stalks() const { return d_->stalks.size(); }
const LocalStalk& Ring::stalk(std::size_t i) const { return d_->stalks.at(i); }
const std::vector<LocalStalk>& Ring::stalks() const { return d_->stalks; }

const Ring& Ring::stalk_ring(std::size_t i) const {
  if (d_->stalks.size() == 1) {
    if (i != 0) fail(ErrorCode::InvalidInput, "stalk index out of range");
    return *this;
  }
  return d_->stalk_rings.at(i);
}

Ring Ring::sub_ring(std::span<const std::size_t> positions) const {
  if (positions.size() == d_->stalks.size()) return *this;
  if (positions.size() == 1) return stalk_ring(positions[0]);
  std::vector<LocalStalk> stalks;
  for (auto p : positions) stalks.push_back(stalk(p));
  return from_stalks(std::move(stalks));
}

bool Ring::is_finite() const {
  return std::all_of(d_->stalks.begin(), d_->stalks.end(), [](const LocalStalk& s) { return s.finite(); });
}

std::uint64_t Ring::order() const {
  std::uint64_t n = 1;
  for (const auto& s : d_->stalks) {
    const auto q = s.order();
    if (n > (std::uint64_t{1} << 62) / q) fail(ErrorCode::UnsupportedSize, "ring order overflows");
    n *= q;
  }
  return n;
}

Element Ring::zero() const {
  std::vector<StalkValue> v;
  for (const auto& s : d_->stalks) v.push_back(s.zero());
  return Element(*this, std::move(v));
}

Element Ring::one() const {
  std::vector<StalkValue> v;
  for (const auto& s : d_->stalks) v.push_back(s.one());
  return Element(*this, std::move(v));
}

Element Ring::from_int(std::int64_t n) const {
  std::vector<StalkValue> v;
  for (const auto& s : d_->stalks) v.push_back(s.from_int(n));
  return Element(*this, std::move(v));
}

Element Ring::element(std::vector<StalkValue> values) const {
  if (values.size() != d_->stalks.size())
    fail(ErrorCode::InvalidInput, "expected " + std::to_string(d_->stalks.size()) + " stalk values");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = d_->stalks[i].normalize(values[i]);
  return Element(*this, std::move(values));
}

Element Ring::element_at(std::uint64_t index) const {
  std::vector<StalkValue> v(d_->stalks.size());
  for (std::size_t i = d_->stalks.size(); i-- > 0;) {
    const auto q = d_->stalks[i].order();
    v[i] = d_->stalks[i].at(index % q);
    index /= q;
  }
  return Element(*this, std::move(v));
}

std::uint64_t Ring::index_of(const Element& e) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < d_->stalks.size(); ++i)
    idx = idx * d_->stalks[i].order() + d_->stalks[i].index_of(e.stalk_value(i));
  return idx;
}

Element Ring::indicator(std::span<const std::size_t> positions) const {
  Element e = zero();
  std::vector<StalkValue> v = e.values();
  for (auto p : positions) v.at(p) = d_->stalks.at(p).one();
  return Element(*this, std::move(v));
}

Element Ring::embed(const Element& corner_value, std::span<const std::size_t> positions) const {
  if (corner_value.ring().num_stalks() != positions.size())
    fail(ErrorCode::RingMismatch, "corner value does not match the block size");
  std::vector<StalkValue> v = zero().values();
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!(corner_value.ring().stalk(i) == stalk(positions[i])))
      fail(ErrorCode::RingMismatch, "corner stalk differs from " + stalk(positions[i]).label());
    v.at(positions[i]) = corner_value.stalk_value(i);
  }
  return Element(*this, std::move(v));
}

nlohmann::json Ring::descriptor() const {
  if (d_->descriptor) return *d_->descriptor;
  if (d_->stalks.size() == 1) return d_->stalks[0].descriptor();
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& s : d_->stalks) fs.push_back(s.descriptor());
  return {{"type", "product"}, {"factors", fs}};
}

std::string Ring::label() const {
  std::string out;
  for (std::size_t i = 0; i < d_->stalks.size(); ++i) {
    if (i) out += " x ";
    out += d_->stalks[i].label();
  }
  return out;
}

bool Ring::operator==(const Ring& o) const { return d_ == o.d_ || d_->stalks == o.d_->stalks; }

bool Ring::has_whole_table() const { return d_->whole != nullptr; }

Element Ring::from_table_index(int index) const {
  if (!d_->whole) fail(ErrorCode::InvalidInput, "ring was not built from a table");
  if (index < 0 || static_cast<std::size_t>(index) >= d_->whole->size())
    fail(ErrorCode::InvalidInput, "table index out of range");
  std::vector<StalkValue> v;
  for (const auto& c : d_->corners) v.push_back(std::int64_t{c.compact[index]});
  return Element(*this, std::move(v));
}

int Ring::to_table_index(const Element& e) const {
  if (!d_->whole) fail(ErrorCode::InvalidInput, "ring was not built from a table");
  int acc = d_->whole->zero();
  for (std::size_t i = 0; i < d_->corners.size(); ++i)
    acc = d_->whole->add(acc, d_->corners[i].members[std::get<std::int64_t>(e.stalk_value(i))]);
  return acc;
}

const std::vector<Ring>& Ring::factors() const { return d_->factors; }

// ---------------------------------------------------------------- Element

void Element::check_same_ring(const Element& o) const {
  if (!(ring_ == o.ring_)) fail(ErrorCode::RingMismatch, ring_.label() + " vs " + o.ring_.label());
}

Element Element::operator+(const Element& o) const {
  check_same_ring(o);
  std::vector<StalkValue> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v[i] = ring_.stalk(i).add(v_[i], o.v_[i]);
  return Element(ring_, std::move(v));
}

Element Element::operator-(const Element& o) const {
  check_same_ring(o);
  std::vector<StalkValue> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v[i] = ring_.stalk(i).sub(v_[i], o.v_[i]);
  return Element(ring_, std::move(v));
}

Element Element::operator*(const Element& o) const {
  check_same_ring(o);
  std::vector<StalkValue> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v[i] = ring_.stalk(i).mul(v_[i], o.v_[i]);
  return Element(ring_, std::move(v));
}

Element Element::operator-() const {
  std::vector<StalkValue> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) v[i] = ring_.stalk(i).neg(v_[i]);
  return Element(ring_, std::move(v));
}

bool Element::operator==(const Element& o) const {
  check_same_ring(o);
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!ring_.stalk(i).equal(v_[i], o.v_[i])) return false;
  return true;
}

bool Element::is_zero() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!ring_.stalk(i).is_zero(v_[i])) return false;
  return true;
}

bool Element::is_one() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!ring_.stalk(i).equal(v_[i], ring_.stalk(i).one())) return false;
  return true;
}

std::optional<Element> Element::inverse() const {
  std::vector<StalkValue> v(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) {
    auto inv = ring_.stalk(i).inverse(v_[i]);
    if (!inv) return std::nullopt;
    v[i] = std::move(*inv);
  }
  return Element(ring_, std::move(v));
}

bool Element::is_unit() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!ring_.stalk(i).is_unit(v_[i])) return false;
  return true;
}

Element Element::pow(unsigned e) const {
  Element acc = ring_.one(), base = *this;
  while (e) {
    if (e & 1U) acc = acc * base;
    base = base * base;
    e >>= 1U;
  }
  return acc;
}

Element Element::restrict(std::size_t stalk) const { return Element(ring_.stalk_ring(stalk), {v_.at(stalk)}); }

Element Element::project(std::span<const std::size_t> positions) const {
  std::vector<StalkValue> v;
  v.reserve(positions.size());
  for (auto p : positions) v.push_back(v_.at(p));
  return Element(ring_.sub_ring(positions), std::move(v));
}

std::string Element::to_string() const {
  if (v_.size() == 1) return ring_.stalk(0).format(v_[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) out += ",";
    out += ring_.stalk(i).format(v_[i]);
  }
  return out + ")";
}

std::strong_ordering compare(const Element& a, const Element& b) {
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    const auto c = a.ring().stalk(i).compare(a.stalk_value(i), b.stalk_value(i));
    if (c != std::strong_ordering::equal) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- Pierce layer

CompleteOrthogonalSet::CompleteOrthogonalSet(std::vector<Element> idempotents) : e_(std::move(idempotents)) {
  if (e_.empty()) fail(ErrorCode::IncompleteCover, "empty idempotent set");
  const Ring& ring = e_.front().ring();
  Element sum = ring.zero();
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (!e_[i].is_idempotent()) fail(ErrorCode::InvalidInput, e_[i].to_string() + " is not idempotent");
    for (std::size_t j = i + 1; j < e_.size(); ++j)
      if (!(e_[i] * e_[j]).is_zero())
        fail(ErrorCode::InvalidInput, e_[i].to_string() + " and " + e_[j].to_string() + " are not orthogonal");
    sum += e_[i];
  }
  if (!sum.is_one()) fail(ErrorCode::IncompleteCover, "idempotents sum to " + sum.to_string() + ", not 1");
}

std::vector<std::size_t> support(const Element& e) {
  std::vector<std::size_t> out;
  const Ring& ring = e.ring();
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    const auto& s = ring.stalk(i);
    if (s.equal(e.stalk_value(i), s.one()))
      out.push_back(i);
    else if (!s.is_zero(e.stalk_value(i)))
      fail(ErrorCode::InvalidInput, e.to_string() + " is not idempotent");
  }
  return out;
}

std::vector<Element> enumerate_idempotents(const Ring& ring) {
  const std::size_t s = ring.num_stalks();
  if (s > 20) fail(ErrorCode::UnsupportedSize, "too many stalks to enumerate idempotents");
  std::vector<Element> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1U) pos.push_back(i);
    out.push_back(ring.indicator(pos));
  }
  std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) { return compare(a, b) < 0; });
  return out;
}

CompleteOrthogonalSet pierce_decomposition(const Ring& ring) {
  std::vector<Element> prim;
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    const std::size_t pos[] = {i};
    prim.push_back(ring.indicator(pos));
  }
  return CompleteOrthogonalSet(std::move(prim));
}

RadicalMembership radical_membership(const Element& r) {
  RadicalMembership out{true, true};
  const Ring& ring = r.ring();
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    const auto& s = ring.stalk(i);
    const auto& v = r.stalk_value(i);
    const bool jac = s.kind() == LocalStalk::Kind::Table ? s.table().in_jacobson(static_cast<int>(std::get<std::int64_t>(v)))
                                                         : s.in_maximal_ideal(v);
    out.in_jacobson = out.in_jacobson && jac;
    out.in_nil = out.in_nil && s.is_nilpotent(v);
  }
  return out;
}

namespace {

// Constructive J-clean witness: e = 1 exactly on the stalks where r is a unit.
bool jclean_witness_ok(const Element& r) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < r.ring().num_stalks(); ++i)
    if (r.ring().stalk(i).is_unit(r.stalk_value(i))) pos.push_back(i);
  const Element e = r.ring().indicator(pos);
  const Element one = r.ring().one();
  return (r * e + (one - e)).is_unit() && radical_membership(r * (one - e)).in_jacobson;
}

std::vector<Element> sample_elements(const Ring& ring) {
  std::vector<Element> out;
  for (std::int64_t a = -6; a <= 6; ++a)
    for (std::int64_t b : {1, 3, 5, 7}) {
      std::vector<StalkValue> v;
      for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
        const auto& s = ring.stalk(i);
        if (s.kind() == LocalStalk::Kind::Localized) {
          std::int64_t den = b;
          while (den % s.prime() == 0) ++den;
          v.push_back(Rational(a + static_cast<std::int64_t>(i), den));
        } else {
          v.push_back(s.at(static_cast<std::uint64_t>(a + 6 + b + static_cast<std::int64_t>(i)) % s.order()));
        }
      }
      out.push_back(ring.element(std::move(v)));
    }
  return out;
}

}  // namespace

RingClass classify_ring(const Ring& ring) {
  RingClass c{ring.is_local(), true, true};
  for (const auto& s : ring.stalks()) c.is_clean = c.is_clean && s.verify_local();
  const bool small = ring.is_finite() && ring.order() <= 4096;
  if (small) {
    const auto idem = enumerate_idempotents(ring);
    const Element one = ring.one();
    for (std::uint64_t i = 0; i < ring.order(); ++i) {
      const Element r = ring.element_at(i);
      bool clean = false, jclean = false;
      for (const auto& e : idem) {
        clean = clean || (r - e).is_unit();
        jclean = jclean || ((r * e + (one - e)).is_unit() && radical_membership(r * (one - e)).in_jacobson);
      }
      c.is_clean = c.is_clean && clean;
      c.is_j_clean = c.is_j_clean && jclean;
    }
  } else {
    for (const auto& r : sample_elements(ring)) c.is_j_clean = c.is_j_clean && jclean_witness_ok(r);
    c.is_j_clean = c.is_j_clean && c.is_clean;
  }
  return c;
}

std::optional<CleanPair> strongly_clean_element(const Element& r) {
  for (const auto& e : enumerate_idempotents(r.ring())) {
    Element u = r - e;
    if (u.is_unit()) return CleanPair{e, std::move(u)};
  }
  return std::nullopt;
}

Element pierce_glue(const Ring& ring, std::span<const GlueBlock> blocks) {
  std::vector<Element> idem;
  for (const auto& b : blocks) {
    if (!(b.idempotent.ring() == ring)) fail(ErrorCode::RingMismatch, "idempotent from another ring");
    idem.push_back(b.idempotent);
  }
  CompleteOrthogonalSet cover(std::move(idem));
  Element out = ring.zero();
  for (const auto& b : blocks) {
    if (b.value.ring() == ring) {
      out += b.value * b.idempotent;
      continue;
    }
    const auto pos = support(b.idempotent);
    out += ring.embed(b.value, pos);
  }
  return out;
}

std::vector<Element> restrictions(const Element& r) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < r.ring().num_stalks(); ++i) out.push_back(r.restrict(i));
  return out;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonRing: return "NonRing";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::UnsupportedSize: return "UnsupportedSize";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::IncompleteCover: return "IncompleteCover";
    case ErrorCode::NonMonicDivisor: return "NonMonicDivisor";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InfiniteRing: return "InfiniteRing";
    case ErrorCode::NotCleanRing: return "NotCleanRing";
    case ErrorCode::PreconditionNotJClean: return "PreconditionNotJClean";
    case ErrorCode::TwoNotUnit: return "TwoNotUnit";
    case ErrorCode::NotInModule: return "NotInModule";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace sclean
