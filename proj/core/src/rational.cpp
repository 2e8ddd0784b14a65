#include "sclean/rational.hpp"

#include <algorithm>
#include <set>

namespace sclean {

namespace {

std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

constexpr long long kTrialLimit = 1'000'000'000'000LL;

std::optional<std::vector<BigInt>> divisors(BigInt n) {
  if (n < 0) n = -n;
  if (n == 0 || n > kTrialLimit) return std::nullopt;
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::optional<Rational> rational_sqrt(const Rational& q) {
  const auto num = exact_isqrt(boost::multiprecision::numerator(q));
  const auto den = exact_isqrt(boost::multiprecision::denominator(q));
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

std::optional<std::vector<Rational>> rational_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = coeffs;
  std::set<Rational> roots;
  // Strip the factor t^m first.
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0) roots.insert(Rational(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() >= 2) {
    BigInt lcm = 1;
    for (const auto& x : c) {
      const BigInt d = boost::multiprecision::denominator(x);
      lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<BigInt> ints;
    for (const auto& x : c) ints.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    const auto nums = divisors(ints.front());
    const auto dens = divisors(ints.back());
    if (!nums || !dens) return std::nullopt;
    for (const auto& a : *nums)
      for (const auto& b : *dens)
        for (int sign : {1, -1}) {
          const Rational r(BigInt(sign) * a, b);
          Rational acc = 0;
          for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + c[i];
          if (acc == 0) roots.insert(r);
        }
  }
  return std::vector<Rational>(roots.begin(), roots.end());
}

}  // namespace sclean
