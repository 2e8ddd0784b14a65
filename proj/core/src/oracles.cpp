#include "sclean/oracles.hpp"

#include <algorithm>
#include <utility>

#include "sclean/errors.hpp"

namespace sclean {

namespace {

using StalkMatrix = std::vector<std::vector<StalkValue>>;

std::optional<std::vector<StalkValue>> solve_valuation(const LocalStalk& s, StalkMatrix m, std::vector<StalkValue> b) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  StalkMatrix q(cols, std::vector<StalkValue>(cols, s.zero()));
  for (std::size_t i = 0; i < cols; ++i) q[i][i] = s.one();
  std::size_t r = 0;
  for (; r < std::min(rows, cols); ++r) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    int best_v = 0;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = r; j < cols; ++j)
        if (const auto v = s.valuation(m[i][j]); v && (!best || *v < best_v)) {
          best = {i, j};
          best_v = *v;
        }
    if (!best) break;
    std::swap(m[r], m[best->first]);
    std::swap(b[r], b[best->first]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][r], m[i][best->second]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(q[i][r], q[i][best->second]);
    const StalkValue piv = m[r][r];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const StalkValue f = *s.solve_scalar(piv, m[i][r]);
      for (std::size_t j = r; j < cols; ++j) m[i][j] = s.sub(m[i][j], s.mul(f, m[r][j]));
      b[i] = s.sub(b[i], s.mul(f, b[r]));
    }
    for (std::size_t j = r + 1; j < cols; ++j) {
      const StalkValue f = *s.solve_scalar(piv, m[r][j]);
      for (std::size_t i = 0; i < rows; ++i) m[i][j] = s.sub(m[i][j], s.mul(f, m[i][r]));
      for (std::size_t i = 0; i < cols; ++i) q[i][j] = s.sub(q[i][j], s.mul(f, q[i][r]));
    }
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!s.is_zero(b[i])) return std::nullopt;
  std::vector<StalkValue> y(cols, s.zero());
  for (std::size_t i = 0; i < r; ++i) {
    auto v = s.solve_scalar(m[i][i], b[i]);
    if (!v) return std::nullopt;
    y[i] = *v;
  }
  std::vector<StalkValue> x(cols, s.zero());
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < r; ++j) x[i] = s.add(x[i], s.mul(q[i][j], y[j]));
  return x;
}

std::optional<std::vector<StalkValue>> solve_enumerate(const LocalStalk& s, const StalkMatrix& m,
                                                       const std::vector<StalkValue>& b) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  const std::uint64_t q = s.order();
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < cols; ++j) {
    total *= q;
    if (total > 4'000'000) fail(ErrorCode::BudgetExceeded, "table-stalk linear system too large to enumerate");
  }
  std::vector<std::uint64_t> idx(cols, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    for (std::size_t j = cols; j-- > 0;) {
      idx[j] = rest % q;
      rest /= q;
    }
    bool ok = true;
    for (std::size_t i = 0; i < rows && ok; ++i) {
      StalkValue acc = s.zero();
      for (std::size_t j = 0; j < cols; ++j) acc = s.add(acc, s.mul(m[i][j], s.at(idx[j])));
      ok = s.equal(acc, b[i]);
    }
    if (ok) {
      std::vector<StalkValue> x;
      for (auto i : idx) x.push_back(s.at(i));
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Matrix> linear_solve(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring())) fail(ErrorCode::RingMismatch, a.ring().label() + " vs " + b.ring().label());
  if (a.rows() != b.rows()) fail(ErrorCode::InvalidInput, "linear_solve: row counts differ");
  const Ring& ring = a.ring();
  std::vector<std::vector<StalkValue>> x(a.cols() * b.cols());  // per entry, per stalk
  for (std::size_t st = 0; st < ring.num_stalks(); ++st) {
    const LocalStalk& s = ring.stalk(st);
    StalkMatrix m(a.rows(), std::vector<StalkValue>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j).stalk_value(st);
    for (std::size_t c = 0; c < b.cols(); ++c) {
      std::vector<StalkValue> rhs;
      for (std::size_t i = 0; i < b.rows(); ++i) rhs.push_back(b(i, c).stalk_value(st));
      auto sol = s.kind() == LocalStalk::Kind::Table ? solve_enumerate(s, m, rhs) : solve_valuation(s, m, rhs);
      if (!sol) return std::nullopt;
      for (std::size_t i = 0; i < a.cols(); ++i) x[i * b.cols() + c].push_back((*sol)[i]);
    }
  }
  std::vector<Element> entries;
  for (auto& v : x) entries.push_back(ring.element(std::move(v)));
  return Matrix(ring, a.cols(), b.cols(), std::move(entries));
}

std::optional<StrongCleanCertificate> certificate_from_idempotent(const Matrix& a, const Matrix& e) {
  if (!(e * e == e) || !(e * a == a * e)) return std::nullopt;
  Matrix u = a - e;
  auto inv = inverse(u);
  if (!inv) return std::nullopt;
  return StrongCleanCertificate{e, std::move(u), std::move(*inv)};
}

namespace {

void require_finite(const Ring& ring) {
  if (!ring.is_finite()) fail(ErrorCode::InfiniteRing, ring.label() + " has a Z_(p) stalk");
}

/// Index arithmetic on a finite ring, tabulated for small orders.
class IndexArith {
 public:
  explicit IndexArith(const Ring& ring) : ring_(ring), q_(ring.order()) {
    if (q_ > kTableLimit) return;
    std::vector<Element> el;
    for (std::uint64_t i = 0; i < q_; ++i) el.push_back(ring.element_at(i));
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    for (std::uint64_t i = 0; i < q_; ++i)
      for (std::uint64_t j = 0; j < q_; ++j) {
        add_[i * q_ + j] = static_cast<std::uint32_t>(ring.index_of(el[i] + el[j]));
        mul_[i * q_ + j] = static_cast<std::uint32_t>(ring.index_of(el[i] * el[j]));
      }
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (!add_.empty()) return add_[a * q_ + b];
    return ring_.index_of(ring_.element_at(a) + ring_.element_at(b));
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (!mul_.empty()) return mul_[a * q_ + b];
    return ring_.index_of(ring_.element_at(a) * ring_.element_at(b));
  }

 private:
  static constexpr std::uint64_t kTableLimit = 256;
  const Ring& ring_;
  std::uint64_t q_;
  std::vector<std::uint32_t> add_, mul_;
};

}  // namespace

std::optional<StrongCleanCertificate> strongly_clean_bruteforce(const Matrix& a, std::uint64_t budget) {
  if (!a.is_square() || a.rows() == 0) fail(ErrorCode::InvalidInput, "square matrix of size >= 1 required");
  const Ring& ring = a.ring();
  require_finite(ring);
  const std::size_t n = a.rows(), nn = n * n;
  const std::uint64_t q = ring.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < nn; ++i) {
    if (total > budget / q) fail(ErrorCode::BudgetExceeded, "|R|^(n^2) exceeds the brute-force budget of " + std::to_string(budget));
    total *= q;
  }
  const IndexArith ar(ring);
  std::vector<std::uint64_t> ai(nn);
  for (std::size_t i = 0; i < nn; ++i) ai[i] = ring.index_of(a.entries()[i]);
  std::vector<std::uint64_t> e(nn, 0), tmp1(nn), tmp2(nn);
  auto product = [&](const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y, std::vector<std::uint64_t>& out) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc = ar.add(acc, ar.mul(x[i * n + k], y[k * n + j]));
        out[i * n + j] = acc;
      }
  };
  for (std::uint64_t t = 0; t < total; ++t) {
    if (t > 0) {
      std::size_t i = nn;
      while (i-- > 0) {
        if (++e[i] < q) break;
        e[i] = 0;
      }
    }
    product(e, e, tmp1);
    if (tmp1 != e) continue;
    product(e, ai, tmp1);
    product(ai, e, tmp2);
    if (tmp1 != tmp2) continue;
    std::vector<Element> entries;
    for (auto x : e) entries.push_back(ring.element_at(x));
    if (auto c = certificate_from_idempotent(a, Matrix(ring, n, n, std::move(entries)))) return c;
  }
  return std::nullopt;
}

int max_nilpotency_index(const Ring& ring) {
  int m = 1;
  for (const auto& s : ring.stalks()) m = std::max(m, s.nilpotency_index());
  return m;
}

std::optional<PiRegularCertificate> pi_regular_oracle(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0) fail(ErrorCode::InvalidInput, "square matrix of size >= 1 required");
  require_finite(a.ring());
  const unsigned bound = static_cast<unsigned>(a.rows()) * static_cast<unsigned>(max_nilpotency_index(a.ring()));
  Matrix ak = a;
  for (unsigned k = 1; k <= bound; ++k) {
    const Matrix ak1 = ak * a;
    if (auto x = linear_solve(ak1, ak)) {
      if (auto yt = linear_solve(ak1.transpose(), ak.transpose())) return PiRegularCertificate{k, *x, yt->transpose()};
    }
    ak = ak1;
  }
  return std::nullopt;
}

}  // namespace sclean
