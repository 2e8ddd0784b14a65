#pragma once

/**
 * @file ring.hpp
 * @brief Commutative rings with finitely many idempotents, stored through
 * their Pierce decomposition.
 *
 * Every ring handled here is a finite product of local rings ("stalks"):
 *
 * - Z/p^k, from the prime factorization of a ZMod(n) descriptor;
 * - Z_(p), the integers localized at a prime (exact reduced fractions);
 * - a finite local ring given by tables, cut out of a Table descriptor by its
 *   primitive idempotents.
 *
 * An Element is the tuple of its stalk values. Idempotents are exactly the
 * 0/1 tuples, so the primitive idempotents are the stalk indicators and a
 * corner e·R is the sub-product over the support of e.
 */

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "sclean/table_ring.hpp"

namespace sclean {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Residue (Z/p^k), reduced fraction (Z_(p)) or table index.
using StalkValue = std::variant<std::int64_t, Rational>;

/// One local factor of a ring.
class LocalStalk {
 public:
  enum class Kind { PrimePower, Localized, Table };

  static LocalStalk prime_power(std::int64_t p, int k);
  static LocalStalk localized(std::int64_t p);
  static LocalStalk table(std::shared_ptr<const TableRing> t);

  Kind kind() const noexcept { return kind_; }
  /// The residue characteristic for Z/p^k and Z_(p); 0 for tables.
  std::int64_t prime() const noexcept { return p_; }
  int exponent() const noexcept { return k_; }
  std::int64_t modulus() const noexcept { return modulus_; }
  const TableRing& table() const { return *table_; }
  const std::shared_ptr<const TableRing>& table_ptr() const { return table_; }

  bool finite() const noexcept { return kind_ != Kind::Localized; }
  /// Number of elements; throws InfiniteRing for Z_(p).
  std::uint64_t order() const;
  std::string label() const;
  nlohmann::json descriptor() const;

  StalkValue zero() const;
  StalkValue one() const;
  StalkValue from_int(std::int64_t v) const;
  StalkValue add(const StalkValue& a, const StalkValue& b) const;
  StalkValue sub(const StalkValue& a, const StalkValue& b) const;
  StalkValue mul(const StalkValue& a, const StalkValue& b) const;
  StalkValue neg(const StalkValue& a) const;
  bool equal(const StalkValue& a, const StalkValue& b) const;
  bool is_zero(const StalkValue& a) const { return equal(a, zero()); }
  std::optional<StalkValue> inverse(const StalkValue& a) const;
  bool is_unit(const StalkValue& a) const;
  /// Membership in the unique maximal ideal (= Jacobson radical of the stalk).
  bool in_maximal_ideal(const StalkValue& a) const { return !is_unit(a); }
  bool is_nilpotent(const StalkValue& a) const;
  /// Canonical order: residue / index order, numeric order for fractions.
  std::strong_ordering compare(const StalkValue& a, const StalkValue& b) const;

  /// Finite stalks only: the value with the given canonical index.
  StalkValue at(std::uint64_t index) const;
  std::uint64_t index_of(const StalkValue& a) const;

  /// Least m with x^m = 0 for every nilpotent x (1 for Z_(p)).
  int nilpotency_index() const;
  /// p-adic valuation for Z/p^k and Z_(p); nullopt for zero (or tables).
  std::optional<int> valuation(const StalkValue& a) const;
  /// The smallest y (canonical order) with d·y = c, if any. For Z_(p) the
  /// solution is unique when d != 0.
  std::optional<StalkValue> solve_scalar(const StalkValue& d, const StalkValue& c) const;

  std::string format(const StalkValue& a) const;
  nlohmann::json to_json(const StalkValue& a) const;
  StalkValue parse(const nlohmann::json& j) const;
  /// Reduce/validate an arbitrary value into canonical form.
  StalkValue normalize(const StalkValue& a) const;

  /// Exhaustive for finite stalks: non-units closed under addition and
  /// absorption. Z_(p) is local by valuation.
  bool verify_local() const;

  bool operator==(const LocalStalk& other) const;

 private:
  LocalStalk() = default;
  std::int64_t res(const StalkValue& a) const { return std::get<std::int64_t>(a); }
  const Rational& frac(const StalkValue& a) const { return std::get<Rational>(a); }

  Kind kind_ = Kind::PrimePower;
  std::int64_t p_ = 0;
  int k_ = 0;
  std::int64_t modulus_ = 0;
  std::shared_ptr<const TableRing> table_;
};

class Element;

namespace detail {
struct RingData;
}

/// Immutable handle to a commutative ring with an explicit Pierce
/// decomposition. Copies share the same underlying data.
class Ring {
 public:
  static Ring zmod(std::int64_t n);
  static Ring zloc(std::int64_t p);
  static Ring product(const std::vector<Ring>& factors);
  static Ring table(const TableRing::Table& add, const TableRing::Table& mul);
  static Ring from_stalks(std::vector<LocalStalk> stalks);
  /// Parses a JSON ring descriptor (zmod / zloc / product / table).
  static Ring build(const nlohmann::json& descriptor);

  std::size_t num_stalks() const;
  const LocalStalk& stalk(std::size_t i) const;
  const std::vector<LocalStalk>& stalks() const;
  /// The local ring R_x for stalk x, as a single-stalk Ring.
  const Ring& stalk_ring(std::size_t i) const;
  /// The corner ring over a subset of stalk positions.
  Ring sub_ring(std::span<const std::size_t> positions) const;

  bool is_finite() const;
  bool is_local() const { return num_stalks() == 1; }
  /// Total number of elements; throws InfiniteRing or UnsupportedSize.
  std::uint64_t order() const;

  Element zero() const;
  Element one() const;
  Element from_int(std::int64_t v) const;
  Element element(std::vector<StalkValue> values) const;
  Element element_at(std::uint64_t index) const;
  std::uint64_t index_of(const Element& e) const;
  /// Idempotent equal to 1 on the given stalks and 0 elsewhere.
  Element indicator(std::span<const std::size_t> positions) const;
  /// Places a value of sub_ring(positions) into this ring, zero elsewhere.
  Element embed(const Element& corner_value, std::span<const std::size_t> positions) const;

  nlohmann::json descriptor() const;
  std::string label() const;

  /// Structural equality: same stalks in the same order.
  bool operator==(const Ring& other) const;

  /// Set for rings built from a Table descriptor: maps between the original
  /// table indices and per-stalk values.
  bool has_whole_table() const;
  Element from_table_index(int index) const;
  int to_table_index(const Element& e) const;
  const std::vector<Ring>& factors() const;

 private:
  explicit Ring(std::shared_ptr<const detail::RingData> d) : d_(std::move(d)) {}
  static Ring make(std::vector<LocalStalk> stalks, std::optional<nlohmann::json> descriptor, std::vector<Ring> factors);

  std::shared_ptr<const detail::RingData> d_;
  friend class Element;
};

/// A ring element, stored as one value per stalk.
class Element {
 public:
  Element(Ring ring, std::vector<StalkValue> values) : ring_(std::move(ring)), v_(std::move(values)) {}

  const Ring& ring() const noexcept { return ring_; }
  const StalkValue& stalk_value(std::size_t i) const { return v_[i]; }
  const std::vector<StalkValue>& values() const noexcept { return v_; }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator-() const;
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }
  bool operator==(const Element& o) const;

  bool is_zero() const;
  bool is_one() const;
  /// Inverse when every stalk component is a unit.
  std::optional<Element> inverse() const;
  bool is_unit() const;
  bool is_idempotent() const { return *this * *this == *this; }
  Element pow(unsigned e) const;

  /// Image r_x in the stalk ring.
  Element restrict(std::size_t stalk) const;
  /// Image in sub_ring(positions).
  Element project(std::span<const std::size_t> positions) const;

  std::string to_string() const;

 private:
  void check_same_ring(const Element& o) const;

  Ring ring_;
  std::vector<StalkValue> v_;
};

/// Canonical order: lexicographic over stalk values, stalk 0 most significant.
std::strong_ordering compare(const Element& a, const Element& b);

/// A finite set of pairwise orthogonal idempotents summing to 1. Construction
/// throws IncompleteCover when the sum differs from 1 and InvalidInput when an
/// entry is not idempotent or two entries are not orthogonal.
class CompleteOrthogonalSet {
 public:
  explicit CompleteOrthogonalSet(std::vector<Element> idempotents);
  const std::vector<Element>& idempotents() const noexcept { return e_; }
  std::size_t size() const noexcept { return e_.size(); }

 private:
  std::vector<Element> e_;
};

/// Stalk positions where an idempotent equals 1. Throws InvalidInput for
/// non-idempotents.
std::vector<std::size_t> support(const Element& idempotent);

/// All 2^s idempotents, in canonical element order.
std::vector<Element> enumerate_idempotents(const Ring& ring);
/// One primitive idempotent per stalk, in stalk order.
CompleteOrthogonalSet pierce_decomposition(const Ring& ring);

struct RadicalMembership {
  bool in_jacobson;
  bool in_nil;
};
RadicalMembership radical_membership(const Element& r);

struct RingClass {
  bool is_local;
  bool is_clean;
  bool is_j_clean;
};
RingClass classify_ring(const Ring& ring);

struct CleanPair {
  Element idempotent;
  Element unit;
};
/// r = e + u with e idempotent and u a unit, scanning idempotents in
/// enumeration order (0 first).
std::optional<CleanPair> strongly_clean_element(const Element& r);

struct GlueBlock {
  Element idempotent;
  /// Either an element of e·R (over the corner ring) or an element of R,
  /// which is then multiplied by e.
  Element value;
};
/// The unique element whose restriction to each block is the given value.
Element pierce_glue(const Ring& ring, std::span<const GlueBlock> blocks);

std::vector<Element> restrictions(const Element& r);

}  // namespace sclean
