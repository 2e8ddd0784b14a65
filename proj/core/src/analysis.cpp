#include "sclean/analysis.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "sclean/errors.hpp"
#include "sclean/rational.hpp"
#include "sclean/verify.hpp"

namespace sclean {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "";
}

std::string_view to_string(Route r) {
  switch (r) {
    case Route::gSRC: return "gSRC";
    case Route::gSP: return "gSP";
    case Route::brute_force: return "brute_force";
    case Route::jclean_root: return "jclean_root";
    case Route::companion_negation: return "companion_negation";
  }
  return "";
}

namespace {

void require_square(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0) fail(ErrorCode::InvalidInput, "square matrix of size >= 1 required");
}

void require_clean(const Ring& ring) {
  if (!classify_ring(ring).is_clean) fail(ErrorCode::NotCleanRing, ring.label() + " is not clean");
}

void require_ok(const Check& c, const std::string& what) {
  if (!c) fail(ErrorCode::VerificationFailed, what + ": " + c.reason);
}

unsigned chain_bound(const Matrix& a) {
  return static_cast<unsigned>(a.rows()) * static_cast<unsigned>(max_nilpotency_index(a.ring()));
}

}  // namespace

StrongCleanCertificate strong_clean_from_gsrc(const Matrix& a, const GSRCCertificate& g) {
  require_square(a);
  const Ring& ring = a.ring();
  Matrix e(ring, a.rows(), a.cols());
  for (const auto& block : g.blocks) {
    const auto pos = support(block.idempotent);
    if (!block.cert.bezout) fail(ErrorCode::VerificationFailed, "gSRC block without a Bezout pair");
    const Matrix ab = a.project(pos);
    e = e + Matrix::embed(ring, eval_poly(block.cert.bezout->u * block.cert.f0.poly(), ab), pos);
  }
  auto c = certificate_from_idempotent(a, e);
  if (!c) fail(ErrorCode::VerificationFailed, "idempotent built from the gSRC factorization does not split A");
  return std::move(*c);
}

PiRegularCertificate pi_regular_from_gsp(const Matrix& a, const GSPCertificate& g) {
  require_square(a);
  const Ring& ring = a.ring();
  Matrix x(ring, a.rows(), a.cols());
  for (const auto& block : g.blocks) {
    const auto pos = support(block.idempotent);
    const auto& cert = block.cert;
    if (!cert.bezout) fail(ErrorCode::VerificationFailed, "gSP block without a Bezout pair");
    const Matrix ab = a.project(pos);
    const auto c0_inv = cert.h0.coeff(0).inverse();
    if (!c0_inv) fail(ErrorCode::VerificationFailed, "h0(0) is not a unit");
    const auto& hc = cert.h0.poly().coeffs();
    const Poly q(cert.h0.ring(), std::vector<Element>(hc.begin() + 1, hc.end()));
    const Matrix xb = eval_poly(q, ab) * eval_poly(cert.bezout->v * cert.p0.poly(), ab) * -*c0_inv;
    x = x + Matrix::embed(ring, xb, pos);
  }
  Matrix ak = a;
  for (unsigned k = 1; k <= chain_bound(a); ++k) {
    const Matrix ak1 = ak * a;
    if (ak1 * x == ak) return PiRegularCertificate{k, x, x};
    ak = ak1;
  }
  fail(ErrorCode::VerificationFailed, "matrix built from the gSP factorization does not stabilize the power chain");
}

Decision decide_strongly_clean(const Matrix& a, const DecideOptions& opts) {
  require_square(a);
  require_clean(a.ring());
  Decision d;
  const MonicPoly h = char_poly(a);
  d.char_poly = h;
  auto g = gsrc_search(h, opts.limits);
  d.transcript = std::move(g.transcript);
  if (g.found()) {
    require_ok(verify_gsrc(*g.value), "gSRC certificate");
    d.strong_clean = strong_clean_from_gsrc(a, *g.value);
    require_ok(verify_strong_clean(a, *d.strong_clean), "strong-clean certificate");
    d.verdict = Verdict::Yes;
    d.route = Route::gSRC;
    d.gsrc = std::move(g.value);
    return d;
  }
  if (g.status == SearchStatus::Absent && is_companion(a)) {
    d.verdict = Verdict::No;
    d.route = Route::companion_negation;
    d.reason = "A is the companion matrix of its characteristic polynomial, which has no gSRC factorization";
    return d;
  }
  const std::string why = g.status == SearchStatus::Absent
                              ? "no gSRC factorization of the characteristic polynomial and A is not a companion matrix"
                              : "gSRC search incomplete";
  if (!a.ring().is_finite()) {
    d.verdict = Verdict::Unknown;
    d.reason = why + "; brute force needs a finite ring";
    return d;
  }
  try {
    d.route = Route::brute_force;
    if (auto c = strongly_clean_bruteforce(a, opts.budget)) {
      require_ok(verify_strong_clean(a, *c), "brute-force certificate");
      d.verdict = Verdict::Yes;
      d.strong_clean = std::move(c);
    } else {
      d.verdict = Verdict::No;
      d.reason = "exhaustive scan of all idempotent candidates found no strongly clean decomposition";
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    d.verdict = Verdict::Unknown;
    d.reason = why + "; " + e.what();
  }
  return d;
}

Decision decide_pi_regular(const Matrix& a, const DecideOptions& opts) {
  require_square(a);
  require_clean(a.ring());
  Decision d;
  d.route = Route::gSP;
  const MonicPoly h = char_poly(a);
  d.char_poly = h;
  auto g = gsp_search(h, opts.limits);
  d.transcript = std::move(g.transcript);
  const bool finite = a.ring().is_finite();
  if (g.status == SearchStatus::Incomplete) {
    d.reason = "gSP search incomplete";
    return d;
  }
  const auto oracle = finite ? pi_regular_oracle(a) : std::nullopt;
  if (g.found()) {
    require_ok(verify_gsp(*g.value), "gSP certificate");
    d.pi_regular = pi_regular_from_gsp(a, *g.value);
    require_ok(verify_pi_regular(a, *d.pi_regular), "pi-regular certificate");
    if (finite && !oracle) fail(ErrorCode::VerificationFailed, "chain oracle finds no pi-regular certificate");
    d.verdict = Verdict::Yes;
    d.gsp = std::move(g.value);
    return d;
  }
  if (oracle) fail(ErrorCode::VerificationFailed, "chain oracle finds a certificate although no gSP factorization exists");
  d.verdict = Verdict::No;
  d.reason = "the characteristic polynomial has no gSP factorization";
  return d;
}

std::vector<MonicPoly> enumerate_monic(const Ring& ring, int n, std::uint64_t budget) {
  if (n < 1) fail(ErrorCode::InvalidInput, "degree must be at least 1");
  const std::uint64_t q = ring.order();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget / q) fail(ErrorCode::BudgetExceeded, "|R|^n exceeds the budget of " + std::to_string(budget));
    total *= q;
  }
  std::vector<MonicPoly> out;
  out.reserve(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<Element> c(static_cast<std::size_t>(n), ring.zero());
    std::uint64_t rest = t;
    for (int i = n; i-- > 0;) {
      c[static_cast<std::size_t>(i)] = ring.element_at(rest % q);
      rest /= q;
    }
    c.push_back(ring.one());
    out.emplace_back(Poly(ring, std::move(c)));
  }
  return out;
}

namespace {

/// A root of t^2 - t + a in a single stalk.
std::optional<StalkValue> quadratic_root(const LocalStalk& s, const StalkValue& a) {
  if (s.finite()) {
    for (std::uint64_t i = 0; i < s.order(); ++i) {
      const StalkValue r = s.at(i);
      if (s.is_zero(s.add(s.sub(s.mul(r, r), r), a))) return r;
    }
    return std::nullopt;
  }
  const Rational disc = 1 - 4 * std::get<Rational>(a);
  const auto root = rational_sqrt(disc);
  if (!root) return std::nullopt;
  const std::vector<Rational> roots{(1 + *root) / 2, (1 - *root) / 2};
  for (const Rational& r : roots)
    if (boost::multiprecision::denominator(r) % s.prime() != 0) return StalkValue(r);
  return std::nullopt;
}

}  // namespace

Decision jclean_quadratic_criterion(const Ring& ring) {
  if (!classify_ring(ring).is_j_clean) fail(ErrorCode::PreconditionNotJClean, ring.label() + " is not J-clean");
  Decision d;
  d.route = Route::jclean_root;
  bool sampled = false;
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    const LocalStalk& s = ring.stalk(i);
    const std::size_t pos[] = {i};
    std::vector<StalkValue> radical;
    if (s.finite()) {
      for (std::uint64_t k = 0; k < s.order(); ++k)
        if (!s.is_unit(s.at(k))) radical.push_back(s.at(k));
    } else {
      // rad Z_(p) = pZ_(p) is infinite. For a = p the discriminant 1 - 4p is
      // negative, so a = p already decides the criterion; for p = 2 every
      // a = 2u gives 1 - 4a = 5 mod 8, never a square.
      radical = {s.zero(), s.from_int(s.prime())};
      sampled = true;
      d.transcript.push_back("stalk " + std::to_string(i) + " (" + s.label() + "): testing a in {0, " +
                             std::to_string(s.prime()) + "}; a root exists iff 1 - 4a is a square in " + s.label());
    }
    for (const auto& a : radical) {
      const Element a_r = ring.embed(ring.stalk_ring(i).element({a}), pos);
      const auto r = quadratic_root(s, a);
      if (!r) {
        d.verdict = Verdict::No;
        d.witness_a = a_r;
        d.witness_poly = MonicPoly(Poly(ring, {a_r, -ring.one(), ring.one()}));
        std::string line = "a = " + a_r.to_string() + ": t^2 - t + a has no root in " + s.label();
        if (!s.finite()) line += " (discriminant " + s.format(s.sub(s.one(), s.mul(s.from_int(4), a))) + " is not a rational square)";
        d.transcript.push_back(line);
        return d;
      }
      const Element r_r = ring.embed(ring.stalk_ring(i).element({*r}), pos);
      d.transcript.push_back("a = " + a_r.to_string() + ": root " + r_r.to_string());
      d.roots.emplace_back(a_r, r_r);
    }
  }
  if (sampled) {
    d.verdict = Verdict::Unknown;
    d.reason = "Z_(p) radical tested on representatives only";
  } else {
    d.verdict = Verdict::Yes;
  }
  return d;
}

std::optional<Element> sqrt_one_plus_radical(const Element& v) {
  const Ring& ring = v.ring();
  if (!ring.from_int(2).is_unit()) fail(ErrorCode::TwoNotUnit, "2 is not a unit of " + ring.label());
  if (!radical_membership(v - ring.one()).in_jacobson) fail(ErrorCode::InvalidInput, "v - 1 is not in rad(R)");
  std::vector<StalkValue> out;
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    const LocalStalk& s = ring.stalk(i);
    const StalkValue& x = v.stalk_value(i);
    std::optional<StalkValue> found;
    if (s.finite()) {
      for (std::uint64_t k = 0; k < s.order() && !found; ++k) {
        const StalkValue c = s.at(k);
        if (s.equal(s.mul(c, c), x) && !s.is_unit(s.sub(c, s.one()))) found = c;
      }
    } else if (const auto r = rational_sqrt(std::get<Rational>(x))) {
      for (const StalkValue& c : std::vector<StalkValue>{*r, Rational(-*r)})
        if (!found && !s.is_unit(s.sub(c, s.one()))) found = c;
    }
    if (!found) return std::nullopt;
    out.push_back(*found);
  }
  return ring.element(std::move(out));
}

Decision decide_ring_strongly_clean(const Ring& ring, int n, const DecideOptions& opts) {
  if (n < 1) fail(ErrorCode::InvalidInput, "degree must be at least 1");
  require_clean(ring);
  Decision d;
  d.route = Route::gSRC;
  if (ring.is_finite()) {
    for (const auto& h : enumerate_monic(ring, n, opts.budget)) {
      auto g = gsrc_search(h, opts.limits);
      if (g.found()) {
        require_ok(verify_gsrc(*g.value), "gSRC certificate for " + h.to_string());
        d.ring_certificates.push_back({h, std::move(*g.value)});
        continue;
      }
      d.transcript = std::move(g.transcript);
      if (g.status == SearchStatus::Incomplete) {
        d.verdict = Verdict::Unknown;
        d.reason = "gSRC search incomplete for " + h.to_string();
        d.ring_certificates.clear();
        return d;
      }
      d.verdict = Verdict::No;
      d.witness_poly = h;
      d.ring_certificates.clear();
      try {
        if (strongly_clean_bruteforce(companion(h), opts.budget))
          fail(ErrorCode::VerificationFailed, "companion of " + h.to_string() + " is strongly clean without a gSRC factorization");
        d.transcript.push_back("brute force: companion(h) has no strongly clean decomposition");
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        d.transcript.push_back(std::string("brute force skipped: ") + e.what());
      }
      d.reason = "h has no gSRC factorization, so its companion matrix is not strongly clean";
      return d;
    }
    d.verdict = Verdict::Yes;
    d.reason = "all " + std::to_string(d.ring_certificates.size()) + " monic polynomials of degree " + std::to_string(n) +
               " have gSRC factorizations";
    return d;
  }
  if (n == 1) {
    d.verdict = Verdict::Yes;
    d.reason = "Mat_1(R) = R is commutative and clean";
    return d;
  }
  std::size_t zloc = 0;
  while (ring.stalk(zloc).finite()) ++zloc;
  const std::size_t pos[] = {zloc};
  const Element a = ring.embed(ring.stalk_ring(zloc).from_int(ring.stalk(zloc).prime()), pos);
  if (ring.num_stalks() == 1 && n == 2) {
    d = jclean_quadratic_criterion(ring);
    if (d.verdict == Verdict::No) d.reason = "t^2 - t + a has no root for a = " + d.witness_a->to_string() + " in rad(R)";
  }
  const MonicPoly h = MonicPoly(Poly(ring, {a, -ring.one(), ring.one()}) * Poly::monomial(ring.one(), n - 2));
  auto g = gsrc_search(h, opts.limits);
  d.transcript.insert(d.transcript.end(), g.transcript.begin(), g.transcript.end());
  d.witness_poly = h;
  d.witness_a = a;
  if (g.status == SearchStatus::Absent) {
    d.verdict = Verdict::No;
    if (d.reason.empty()) d.reason = h.to_string() + " has no gSRC factorization";
  } else {
    d.verdict = Verdict::Unknown;
    d.reason = "gSRC search for the candidate witness " + h.to_string() + " is incomplete";
  }
  return d;
}

std::optional<StrongCleanCertificate> triangular_certificate(const Matrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!a(i, j).is_zero()) return std::nullopt;
  const Ring& ring = a.ring();
  Matrix e(ring, n, n);
  for (std::size_t x = 0; x < ring.num_stalks(); ++x) {
    const Ring& s = ring.stalk_ring(x);
    const Matrix ax = a.restrict(x);
    Poly f0 = Poly::constant(s.one()), f1 = f0;
    for (std::size_t i = 0; i < n; ++i) {
      const Poly lin = Poly::linear(ax(i, i));
      (ax(i, i).is_unit() ? f0 : f1) = (ax(i, i).is_unit() ? f0 : f1) * lin;
    }
    const auto bez = comaximality(f0, f1);
    if (!bez) return std::nullopt;
    const std::size_t pos[] = {x};
    e = e + Matrix::embed(ring, eval_poly(bez->u * f0, ax), pos);
  }
  return certificate_from_idempotent(a, e);
}

namespace {

/// Runs f(i) for i < count on a pool; results land by index, so aggregation
/// order never depends on scheduling.
template <class F>
void parallel_for(std::size_t count, unsigned workers, F&& f) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct ItemResult {
  bool agree = true;
  std::string detail;
  std::vector<std::string> routes;
  std::size_t blocks = 0;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

AuditReport collect(std::string kind, const Ring& ring, int n, const std::vector<ItemResult>& items) {
  AuditReport r;
  r.kind = std::move(kind);
  r.ring = ring.descriptor();
  r.degree = n;
  r.instances = items.size();
  for (const auto& it : items) {
    if (it.agree) {
      ++r.agreements;
    } else {
      r.disagreements.push_back(it.detail);
    }
    for (const auto& route : it.routes) ++r.route_counts[route];
    r.max_blocks = std::max(r.max_blocks, it.blocks);
  }
  return r;
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t item, unsigned sample) {
  return seed * 1'000'003ULL + item * 131ULL + sample;
}

}  // namespace

AuditReport theorem_main_audit(const Ring& ring, int n, const AuditOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (!ring.is_finite()) fail(ErrorCode::InfiniteRing, "the audit enumerates a finite ring");
  const auto polys = enumerate_monic(ring, n, opts.budget);
  std::vector<ItemResult> items(polys.size());
  parallel_for(polys.size(), opts.workers, [&](std::size_t i) {
    const MonicPoly& h = polys[i];
    ItemResult& it = items[i];
    const Matrix c = companion(h);
    const auto g = gsrc_search(h);
    const auto bf = strongly_clean_bruteforce(c, opts.budget);
    auto disagree = [&](const std::string& why) {
      it.agree = false;
      if (it.detail.empty()) it.detail = h.to_string() + ": " + why;
    };
    if (g.status == SearchStatus::Incomplete) disagree("gSRC search incomplete");
    if (g.found() != bf.has_value())
      disagree(std::string("gSRC ") + (g.found() ? "exists" : "absent") + " but brute force " +
               (bf ? "finds" : "rules out") + " a strongly clean companion");
    if (bf && !verify_strong_clean(c, *bf)) disagree("brute-force certificate rejected");
    it.routes.push_back(g.found() ? "gSRC" : "no_gSRC");
    if (!g.found()) return;
    it.blocks = g.value->blocks.size();
    if (auto ok = verify_gsrc(*g.value); !ok) disagree("gSRC certificate rejected: " + ok.reason);
    for (unsigned s = 0; s < opts.samples; ++s) {
      const Matrix a = random_with_charpoly(h, sample_seed(opts.seed, i, s));
      try {
        const auto cert = strong_clean_from_gsrc(a, *g.value);
        if (auto ok = verify_strong_clean(a, cert); !ok) {
          disagree("similar matrix " + a.to_string() + ": " + ok.reason);
        } else {
          it.routes.push_back("similar_certified");
        }
      } catch (const Error& e) {
        disagree("similar matrix " + a.to_string() + ": " + e.what());
      }
    }
  });
  AuditReport r = collect("theorem_main", ring, n, items);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

AuditReport pi_regular_audit(const Ring& ring, int n, const AuditOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (!ring.is_finite()) fail(ErrorCode::InfiniteRing, "the audit enumerates a finite ring");
  const auto polys = enumerate_monic(ring, n, opts.budget);
  std::vector<ItemResult> items(polys.size());
  parallel_for(polys.size(), opts.workers, [&](std::size_t i) {
    const MonicPoly& h = polys[i];
    ItemResult& it = items[i];
    const Matrix c = companion(h);
    const auto g = gsp_search(h);
    const auto oracle = pi_regular_oracle(c);
    auto disagree = [&](const std::string& why) {
      it.agree = false;
      if (it.detail.empty()) it.detail = h.to_string() + ": " + why;
    };
    if (g.found() != oracle.has_value())
      disagree(std::string("gSP ") + (g.found() ? "exists" : "absent") + " but the chain oracle " +
               (oracle ? "finds" : "rules out") + " a certificate");
    if (oracle && !verify_pi_regular(c, *oracle)) disagree("oracle certificate rejected");
    it.routes.push_back(g.found() ? "gSP" : "no_gSP");
    if (!g.found()) return;
    it.blocks = g.value->blocks.size();
    if (auto ok = verify_gsp(*g.value); !ok) disagree("gSP certificate rejected: " + ok.reason);
    try {
      if (auto ok = verify_pi_regular(c, pi_regular_from_gsp(c, *g.value)); !ok) disagree(ok.reason);
    } catch (const Error& e) {
      disagree(e.what());
    }
    // An SP block h0·p0 is also an SRC block with f0 = h0, f1 = p0.
    GSRCCertificate as_src{h, {}};
    for (const auto& b : g.value->blocks)
      as_src.blocks.push_back({b.idempotent, SRCCertificate{b.cert.h0, b.cert.p0, b.cert.bezout, FactorKind::SRC}});
    if (auto ok = verify_gsrc(as_src); !ok) disagree("gSP certificate does not re-verify as gSRC: " + ok.reason);
    if (auto sc = strongly_clean_bruteforce(c, opts.budget); sc && verify_strong_clean(c, *sc)) {
      it.routes.push_back("strongly_clean");
    } else {
      disagree("pi-regular companion is not strongly clean");
    }
  });
  AuditReport r = collect("pi_regular", ring, n, items);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

AuditReport triangular_sweep(const Ring& ring, int n, const AuditOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  if (n < 1) fail(ErrorCode::InvalidInput, "size must be at least 1");
  if (!ring.is_finite()) fail(ErrorCode::InfiniteRing, "the sweep enumerates a finite ring");
  const auto un = static_cast<std::size_t>(n);
  const std::size_t slots = un * (un + 1) / 2;
  const std::uint64_t q = ring.order();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    if (total > opts.budget / q) fail(ErrorCode::BudgetExceeded, "|R|^(n(n+1)/2) exceeds the budget");
    total *= q;
  }
  std::vector<ItemResult> items(total);
  parallel_for(total, opts.workers, [&](std::size_t t) {
    Matrix a(ring, un, un);
    std::uint64_t rest = t;
    for (std::size_t k = slots; k-- > 0;) {
      std::size_t i = 0, j = k;
      while (j >= un - i) j -= un - i++;
      a.set(i, i + j, ring.element_at(rest % q));
      rest /= q;
    }
    ItemResult& it = items[t];
    if (auto c = triangular_certificate(a); c && verify_strong_clean(a, *c)) {
      it.routes.push_back("diagonal");
      return;
    }
    if (auto c = strongly_clean_bruteforce(a, opts.budget); c && verify_strong_clean(a, *c)) {
      it.routes.push_back("brute_force");
      return;
    }
    it.agree = false;
    it.detail = a.to_string() + ": no strongly clean certificate";
  });
  AuditReport r = collect("triangular", ring, n, items);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

}  // namespace sclean
