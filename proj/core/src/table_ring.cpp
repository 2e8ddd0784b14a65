#include "sclean/table_ring.hpp"

#include <algorithm>
#include <sstream>

#include "sclean/errors.hpp"

namespace sclean {

namespace {

std::string triple(const char* axiom, int a, int b, int c) {
  std::ostringstream os;
  os << axiom << " fails at (" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

TableRing::TableRing(const Table& add, const Table& mul) {
  n_ = add.size();
  if (n_ == 0) fail(ErrorCode::NonRing, "empty table");
  if (n_ > kMaxSize) fail(ErrorCode::UnsupportedSize, "table ring has " + std::to_string(n_) + " elements (max 64)");
  if (mul.size() != n_) fail(ErrorCode::NonRing, "addition and multiplication tables differ in size");
  add_.resize(n_ * n_);
  mul_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (add[i].size() != n_ || mul[i].size() != n_) fail(ErrorCode::NonRing, "table rows must be square");
    for (std::size_t j = 0; j < n_; ++j) {
      const int s = add[i][j], p = mul[i][j];
      if (s < 0 || p < 0 || static_cast<std::size_t>(s) >= n_ || static_cast<std::size_t>(p) >= n_)
        fail(ErrorCode::NonRing, "table entry out of range at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      add_[i * n_ + j] = s;
      mul_[i * n_ + j] = p;
    }
  }
  validate();
}

void TableRing::validate() {
  const int n = static_cast<int>(n_);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a)) fail(ErrorCode::NonRing, triple("additive commutativity", a, b, 0));
      if (mul(a, b) != mul(b, a)) fail(ErrorCode::NonRing, triple("multiplicative commutativity", a, b, 0));
    }
  for (int z = 0; z < n && zero_ < 0; ++z) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = add(z, a) == a;
    if (ok) zero_ = z;
  }
  if (zero_ < 0) fail(ErrorCode::NonRing, "no additive identity");
  for (int u = 0; u < n && one_ < 0; ++u) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(u, a) == a;
    if (ok) one_ = u;
  }
  if (one_ < 0) fail(ErrorCode::NonRing, "no multiplicative identity");
  neg_.assign(n_, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
    if (neg_[a] < 0) fail(ErrorCode::NonRing, triple("additive inverse", a, 0, 0));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) fail(ErrorCode::NonRing, triple("additive associativity", a, b, c));
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          fail(ErrorCode::NonRing, triple("multiplicative associativity", a, b, c));
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail(ErrorCode::NonRing, triple("distributivity", a, b, c));
      }

  inv_.assign(n_, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == one_) {
        inv_[a] = b;
        break;
      }
  nil_.assign(n_, 0);
  nil_index_ = 1;
  for (int a = 0; a < n; ++a) {
    int x = a;
    for (int m = 1; m <= n; ++m) {
      if (x == zero_) {
        nil_[a] = 1;
        nil_index_ = std::max(nil_index_, m);
        break;
      }
      x = mul(x, a);
    }
  }
}

bool TableRing::in_jacobson(int a) const {
  for (int s = 0; s < static_cast<int>(n_); ++s)
    if (inv_[add(one_, mul(a, s))] < 0) return false;
  return true;
}

std::vector<int> TableRing::idempotents() const {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(n_); ++e)
    if (mul(e, e) == e) out.push_back(e);
  return out;
}

std::vector<int> TableRing::primitive_idempotents() const {
  const auto all = idempotents();
  std::vector<int> out;
  for (int e : all) {
    if (e == zero_) continue;
    bool primitive = true;
    for (int f : all) {
      const int fe = mul(f, e);
      if (fe != zero_ && fe != e) {
        primitive = false;
        break;
      }
    }
    if (primitive) out.push_back(e);
  }
  return out;
}

bool TableRing::is_local() const {
  std::vector<int> nonunits;
  for (int a = 0; a < static_cast<int>(n_); ++a)
    if (inv_[a] < 0) nonunits.push_back(a);
  for (int a : nonunits)
    for (int b : nonunits)
      if (inv_[add(a, b)] >= 0) return false;
  return true;
}

TableRing::Corner TableRing::corner(int e) const {
  Corner c;
  c.idempotent = e;
  std::vector<char> seen(n_, 0);
  for (int r = 0; r < static_cast<int>(n_); ++r) seen[mul(e, r)] = 1;
  for (int r = 0; r < static_cast<int>(n_); ++r)
    if (seen[r]) c.members.push_back(r);
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < c.members.size(); ++i) pos[c.members[i]] = static_cast<int>(i);
  const std::size_t m = c.members.size();
  Table add_t(m, std::vector<int>(m)), mul_t(m, std::vector<int>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      add_t[i][j] = pos[add(c.members[i], c.members[j])];
      mul_t[i][j] = pos[mul(c.members[i], c.members[j])];
    }
  c.ring = std::make_shared<TableRing>(add_t, mul_t);
  c.compact.resize(n_);
  for (int r = 0; r < static_cast<int>(n_); ++r) c.compact[r] = pos[mul(e, r)];
  return c;
}

nlohmann::json TableRing::descriptor() const {
  nlohmann::json add = nlohmann::json::array(), mul = nlohmann::json::array();
  for (std::size_t i = 0; i < n_; ++i) {
    nlohmann::json ra = nlohmann::json::array(), rm = nlohmann::json::array();
    for (std::size_t j = 0; j < n_; ++j) {
      ra.push_back(add_[i * n_ + j]);
      rm.push_back(mul_[i * n_ + j]);
    }
    add.push_back(std::move(ra));
    mul.push_back(std::move(rm));
  }
  nlohmann::json d = nlohmann::json::object();
  d["type"] = "table";
  d["add"] = std::move(add);
  d["mul"] = std::move(mul);
  return d;
}

}  // namespace sclean
