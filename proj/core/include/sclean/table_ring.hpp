#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <nlohmann/json.hpp>

namespace sclean {

/// A finite commutative unital ring given by explicit addition and
/// multiplication tables over the indices 0..size-1 (size at most 64).
///
/// Construction checks every ring axiom and throws NonRing naming the first
/// failing index triple. The same class represents both a user-supplied table
/// and each local corner e·R cut out of it by a primitive idempotent.
class TableRing {
 public:
  static constexpr std::size_t kMaxSize = 64;

  using Table = std::vector<std::vector<int>>;

  TableRing(const Table& add, const Table& mul);

  std::size_t size() const noexcept { return n_; }
  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  int neg(int a) const { return neg_[a]; }
  int zero() const noexcept { return zero_; }
  int one() const noexcept { return one_; }
  /// -1 when a is not a unit.
  int inverse(int a) const { return inv_[a]; }
  bool is_nilpotent(int a) const { return nil_[a] != 0; }
  /// Largest m such that some nilpotent x has x^(m-1) != 0; 1 for reduced rings.
  int nilpotency_index() const noexcept { return nil_index_; }
  /// r in J(R) iff 1 + r·s is a unit for every s.
  bool in_jacobson(int a) const;

  std::vector<int> idempotents() const;
  std::vector<int> primitive_idempotents() const;
  /// Non-units closed under addition, checked exhaustively.
  bool is_local() const;

  /// The corner e·R for an idempotent e, re-indexed compactly in increasing
  /// order of the original indices. When e = 1 the indexing is unchanged.
  struct Corner {
    std::shared_ptr<const TableRing> ring;
    std::vector<int> members;  // compact index -> original index
    std::vector<int> compact;  // original index -> compact index of e·r
    int idempotent;
  };
  Corner corner(int idempotent) const;

  nlohmann::json descriptor() const;

  bool operator==(const TableRing& other) const { return add_ == other.add_ && mul_ == other.mul_; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b); }
  void validate();

  std::size_t n_ = 0;
  std::vector<int> add_, mul_;
  std::vector<int> neg_, inv_;
  std::vector<char> nil_;
  int zero_ = -1, one_ = -1;
  int nil_index_ = 1;
};

}  // namespace sclean
