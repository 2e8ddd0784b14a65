#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "sclean/analysis.hpp"
#include "sclean/errors.hpp"
#include "sclean/oracles.hpp"
#include "sclean/quad_z5.hpp"
#include "sclean/serialize.hpp"
#include "sclean/verify.hpp"

using namespace sclean;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::size_t g_max_blocks = 0;
std::size_t g_block_certificates = 0;
bool g_block_bound_ok = true;

void note_blocks(std::size_t blocks, int n) {
  ++g_block_certificates;
  g_max_blocks = std::max(g_max_blocks, blocks);
  if (blocks > static_cast<std::size_t>(n + 1)) g_block_bound_ok = false;
}

void note_report(const AuditReport& r) {
  g_max_blocks = std::max(g_max_blocks, r.max_blocks);
  if (r.max_blocks > static_cast<std::size_t>(r.degree + 1)) g_block_bound_ok = false;
  ++g_block_certificates;
}

Ring z2z2() {
  return Ring::build({{"type", "product"}, {"factors", {{{"type", "zloc"}, {"p", 2}}, {{"type", "zloc"}, {"p", 2}}}}});
}

void criterion1(Outcome& o) {
  const auto t0 = Clock::now();
  const Ring r = z2z2();
  const MonicPoly h(Poly(r, {r.element({Rational(2), Rational(3)}), r.element({Rational(3), Rational(1)}), r.one()}));
  const auto single = sr_search_single_block(h, FactorMode::SR);
  o.require(single.status == SearchStatus::Absent, "single-block SR absent");
  for (const char* needle : {"stalk 0 (Z_(2)): degree 0", "stalk 0 (Z_(2)): degree 1", "stalk 0 (Z_(2)): degree 2",
                             "stalk 1 (Z_(2)): degree 0", "stalk 1 (Z_(2)): degree 1", "stalk 1 (Z_(2)): degree 2"}) {
    bool seen = false;
    for (const auto& line : single.transcript) seen = seen || line.rfind(needle, 0) == 0;
    o.require(seen, std::string("transcript covers ") + needle);
  }
  const auto g = gsrc_search(h);
  o.require(g.found(), "gSRC found");
  if (g.found()) {
    o.require(static_cast<bool>(verify_gsrc(*g.value)), "gSRC verifies");
    o.require(verify_certificate_json(certificate_json(*g.value)).ok, "gSRC JSON verifies");
    o.require(g.value->blocks.size() == 2, "two blocks");
    std::set<std::string> idem;
    for (const auto& b : g.value->blocks) idem.insert(to_json(b.idempotent).dump());
    o.require(idem == std::set<std::string>{R"(["0","1"])", R"(["1","0"])"}, "blocks (1,0) and (0,1)");
    note_blocks(g.value->blocks.size(), 2);
    const Matrix a = companion(h);
    const Decision d = decide_strongly_clean(a);
    o.require(d.verdict == Verdict::Yes && d.strong_clean && verify_strong_clean(a, *d.strong_clean).ok,
              "companion certified strongly clean");
  }
  const double s = seconds_since(t0);
  o.require(s < 1.0, "runtime < 1 s");
  o.detail << "single-block SR absent (" << single.transcript.size() << " transcript lines), gSRC blocks="
           << (g.value ? g.value->blocks.size() : 0) << ", " << s << " s";
}

void criterion2(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t instances = 0, disagreements = 0, similar = 0;
  for (int n : {2, 3, 4, 6, 8, 9, 12}) {
    const auto rep = theorem_main_audit(Ring::zmod(n), 2, AuditOptions{});
    o.require(rep.instances == static_cast<std::size_t>(n * n), "Z/" + std::to_string(n) + " covers |R|^2 polynomials");
    o.require(rep.agreements == rep.instances, "Z/" + std::to_string(n) + " full agreement");
    instances += rep.instances;
    disagreements += rep.disagreements.size();
    const std::size_t positive = rep.route_counts.count("gSRC") ? rep.route_counts.at("gSRC") : 0;
    const std::size_t certified = rep.route_counts.count("similar_certified") ? rep.route_counts.at("similar_certified") : 0;
    o.require(certified == 5 * positive, "Z/" + std::to_string(n) + " 5 similar matrices per gSRC-positive h");
    similar += certified;
    note_report(rep);
  }
  o.require(disagreements == 0, "zero disagreements");
  const double s = seconds_since(t0);
  o.require(s < 300.0, "runtime < 5 min");
  o.detail << instances << " instances, " << disagreements << " disagreements, " << similar << " similar matrices certified, "
           << s << " s";
}

void criterion3(Outcome& o) {
  const Ring zl = Ring::zloc(2);
  const Decision no = decide_ring_strongly_clean(zl, 2);
  o.require(no.verdict == Verdict::No, "Z_(2) verdict No");
  o.require(no.witness_a && *no.witness_a == zl.from_int(2), "witness a = 2");
  const auto h = MonicPoly::from_ints(zl, {2, -1, 1});
  o.require(no.witness_poly && *no.witness_poly == h, "witness h = t^2 - t + 2");
  o.require(gsrc_search(h).status == SearchStatus::Absent, "witness has no gSRC factorization");
  const Decision neg = decide_strongly_clean(companion(h));
  o.require(neg.verdict == Verdict::No && neg.route == Route::companion_negation, "companion of witness not strongly clean");
  o.require(jclean_quadratic_criterion(zl).verdict == Verdict::No, "J-clean criterion agrees");
  std::size_t certs = 0;
  for (int k = 1; k <= 4; ++k) {
    const Ring r = Ring::zmod(1 << k);
    const Decision yes = decide_ring_strongly_clean(r, 2);
    o.require(yes.verdict == Verdict::Yes, "Z/2^" + std::to_string(k) + " verdict Yes");
    o.require(yes.ring_certificates.size() == static_cast<std::size_t>(1 << (2 * k)), "one certificate per monic quadratic");
    for (const auto& pc : yes.ring_certificates) {
      o.require(verify_gsrc(pc.gsrc).ok && pc.gsrc.h == pc.h, "ring certificate verifies");
      note_blocks(pc.gsrc.blocks.size(), 2);
      ++certs;
    }
  }
  o.detail << "Z_(2): No (a=2, h=t^2 - t + 2); Z/2..Z/16: Yes with " << certs << " verified certificates";
}

void criterion4(Outcome& o) {
  std::size_t instances = 0, disagreements = 0;
  for (int n : {4, 6}) {
    const auto rep = pi_regular_audit(Ring::zmod(n), 2, AuditOptions{});
    o.require(rep.instances == static_cast<std::size_t>(n * n) && rep.disagreements.empty(), "Z/" + std::to_string(n) + " agreement");
    instances += rep.instances;
    disagreements += rep.disagreements.size();
    note_report(rep);
  }
  const Ring r = Ring::zmod(6);
  const auto h = MonicPoly::from_ints(r, {2, 3, 1});
  o.require(sp_search_single_block(h).status == SearchStatus::Absent, "t^2+3t+2 single-block SP absent");
  const auto g = gsp_search(h);
  o.require(g.found(), "t^2+3t+2 gSP found");
  if (g.found()) {
    std::multiset<int> degrees;
    for (const auto& b : g.value->blocks) degrees.insert(b.cert.p0.degree());
    o.require(degrees == std::multiset<int>{0, 1}, "p0 degrees {1, 0}");
    o.require(verify_gsp(*g.value).ok, "gSP verifies");
    note_blocks(g.value->blocks.size(), 2);
    const Matrix a = companion(h);
    const auto cert = pi_regular_from_gsp(a, *g.value);
    o.require(verify_pi_regular(a, cert).ok, "pi-regular certificate verifies");
    o.require(pi_regular_oracle(a).has_value(), "oracle agrees");
  }
  o.detail << instances << " instances, " << disagreements << " disagreements; t^2+3t+2 over Z/6: gSP blocks p0-degrees {1,0}, single-block SP absent";
}

void criterion5(Outcome& o) {
  const auto t0 = Clock::now();
  const auto t2 = triangular_sweep(Ring::zmod(4), 2, AuditOptions{});
  const auto t3 = triangular_sweep(Ring::zmod(2), 3, AuditOptions{});
  o.require(t2.instances == 64 && t2.agreements == 64, "T2(Z/4) 64/64");
  o.require(t3.instances == 64 && t3.agreements == 64, "T3(Z/2) 64/64");
  const double s = seconds_since(t0);
  o.require(s < 30.0, "runtime < 30 s");
  o.detail << "T2(Z/4) " << t2.agreements << "/" << t2.instances << ", T3(Z/2) " << t3.agreements << "/" << t3.instances << ", " << s
           << " s";
}

void criterion6(Outcome& o) {
  o.require(g_block_bound_ok, "every certificate has <= n+1 blocks");
  o.require(g_block_certificates > 0, "certificates observed");
  o.detail << g_block_certificates << " certificate groups, max blocks " << g_max_blocks << " (n = 2 or 3)";
}

void criterion7(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t checked = 0;
  for (int n = 2; n <= 1000; ++n) {
    const Ring r = Ring::build({{"type", "zmod"}, {"n", n}});
    const auto cos = pierce_decomposition(r);
    const auto& prim = cos.idempotents();
    Element sum = r.zero();
    bool ok = true;
    for (std::size_t i = 0; i < prim.size(); ++i) {
      ok = ok && prim[i].is_idempotent() && !prim[i].is_zero();
      for (std::size_t j = i + 1; j < prim.size(); ++j) ok = ok && (prim[i] * prim[j]).is_zero();
      sum += prim[i];
    }
    ok = ok && sum == r.one();
    for (const auto& s : r.stalks()) ok = ok && s.verify_local();
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    for (int k = 0; k < 100; ++k) {
      const Element x = random_element(r, rng);
      const auto parts = restrictions(x);
      std::vector<GlueBlock> blocks;
      for (std::size_t i = 0; i < parts.size(); ++i) blocks.push_back({prim[i], parts[i]});
      ok = ok && pierce_glue(r, blocks) == x;
      ++checked;
    }
    o.require(ok, "ZMod(" + std::to_string(n) + ")");
    if (!ok) break;
  }
  const double s = seconds_since(t0);
  o.require(s < 60.0, "runtime < 1 min");
  o.detail << "n = 2..1000, " << checked << " glue/restrict round trips, " << s << " s";
}

void criterion8(Outcome& o) {
  const auto audit = z5::run_audit();
  for (const auto& c : audit.checks) o.require(c.ok, c.name);
  o.require(audit.verified(), "audit verified");
  std::string why;
  o.require(z5::verify_quad_strong_clean(audit.phi.A, audit.certificate, &why), "strong clean certificate");
  const std::string first = z5::to_json(audit).dump();
  const std::string second = z5::to_json(z5::run_audit()).dump();
  o.require(first == second, "deterministic report");
  const json j = json::parse(first);
  o.require(j.contains("DISCREPANCY"), "DISCREPANCY section present");
  o.require(verify_certificate_json(j["certificate"]).ok, "certificate JSON re-verifies");
  o.detail << audit.checks.size() << " checks passed, chi(A) = " << audit.phi.chi.to_string() << ", discriminant "
           << audit.discriminant.to_string() << ", SR on recomputed chi: " << (audit.sr_computed.exists ? "exists" : "absent")
           << ", " << audit.discrepancies.size() << " discrepancies reported";
}

// Small local table rings: F4 and F2[x]/(x^2).
Ring table_ring(bool field) {
  TableRing::Table add(4, std::vector<int>(4)), mul(4, std::vector<int>(4));
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      const int a = u & 1, b = u >> 1, c = v & 1, d = v >> 1;
      add[u][v] = (a ^ c) + 2 * (b ^ d);
      const int r0 = (a * c + (field ? b * d : 0)) & 1;
      const int r1 = (a * d + b * c + (field ? b * d : 0)) & 1;
      mul[u][v] = r0 + 2 * r1;
    }
  return Ring::table(add, mul);
}

void criterion9(Outcome& o) {
  std::vector<Ring> pool;
  for (int n : {2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 25, 27, 30, 36, 49, 60}) pool.push_back(Ring::zmod(n));
  for (int p : {2, 3, 5}) pool.push_back(Ring::zloc(p));
  pool.push_back(z2z2());
  pool.push_back(Ring::build({{"type", "product"}, {"factors", {{{"type", "zmod"}, {"n", 4}}, {{"type", "zloc"}, {"p", 3}}}}}));
  pool.push_back(table_ring(true));
  pool.push_back(table_ring(false));
  pool.push_back(Ring::product({table_ring(false), Ring::zmod(3)}));

  DecideOptions dopt;
  dopt.budget = 4096;
  std::size_t emitted = 0, rejected = 0, unknown = 0;
  std::mt19937_64 rng(20260101);
  auto check = [&](bool ok, const std::string& what) {
    ++emitted;
    if (!ok) {
      ++rejected;
      if (rejected <= 5) o.detail << " [rejected: " << what << "]";
    }
  };
  for (int i = 0; i < 10000; ++i) {
    const Ring& r = pool[rng() % pool.size()];
    const int n = 1 + static_cast<int>(rng() % 3);
    try {
      if (i % 4 < 2) {
        std::vector<Element> c;
        for (int k = 0; k < n; ++k) c.push_back(random_element(r, rng));
        c.push_back(r.one());
        const MonicPoly h(Poly(r, c));
        if (i % 4 == 0) {
          const auto g = gsrc_search(h);
          if (g.value) {
            check(verify_gsrc(*g.value).ok, "gsrc " + h.to_string());
            check(verify_certificate_json(certificate_json(*g.value)).ok, "gsrc json " + h.to_string());
            if (g.value->blocks.size() > static_cast<std::size_t>(n + 1)) check(false, "block bound");
          }
          if (g.status == SearchStatus::Incomplete) ++unknown;
          const auto s = sr_search_single_block(h, FactorMode::SRC);
          if (s.value) check(verify_src(h, *s.value).ok && verify_certificate_json(certificate_json(*s.value, h)).ok, "src");
        } else {
          const auto g = gsp_search(h);
          if (g.value) {
            check(verify_gsp(*g.value).ok, "gsp " + h.to_string());
            check(verify_certificate_json(certificate_json(*g.value)).ok, "gsp json");
            const Matrix a = random_with_charpoly(h, rng());
            const auto cert = pi_regular_from_gsp(a, *g.value);
            check(verify_pi_regular(a, cert).ok && verify_certificate_json(certificate_json(cert, a)).ok, "pi from gsp");
          }
        }
      } else {
        std::vector<Element> e;
        for (int k = 0; k < n * n; ++k) e.push_back(random_element(r, rng));
        const Matrix a(r, static_cast<std::size_t>(n), static_cast<std::size_t>(n), e);
        const Decision d = i % 4 == 2 ? decide_strongly_clean(a, dopt) : decide_pi_regular(a, dopt);
        if (d.verdict == Verdict::Unknown) ++unknown;
        if (d.strong_clean) {
          check(verify_strong_clean(a, *d.strong_clean).ok, "strong clean " + a.to_string());
          check(verify_certificate_json(certificate_json(*d.strong_clean, a)).ok, "strong clean json");
        }
        if (d.pi_regular) {
          check(verify_pi_regular(a, *d.pi_regular).ok, "pi regular " + a.to_string());
          check(verify_certificate_json(certificate_json(*d.pi_regular, a)).ok, "pi regular json");
        }
        if (d.gsrc) check(verify_gsrc(*d.gsrc).ok, "decision gsrc");
        if (d.gsp) check(verify_gsp(*d.gsp).ok, "decision gsp");
        std::size_t count = 0;
        const json doc = to_json(d, &a);
        check(verify_all_certificates(doc, count).ok, "decision document");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::InfiniteRing) {
        ++unknown;
      } else {
        check(false, std::string("exception ") + std::string(to_string(e.code())) + ": " + e.what());
      }
    }
  }
  o.require(rejected == 0, "no verifier rejections");
  o.detail << " 10000 instances, " << emitted << " certificate checks, " << rejected << " rejected, " << unknown
           << " undecided within budget";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"two-block example over Z_(2) x Z_(2)", criterion1}, {"main equivalence audit", criterion2},
      {"ring-level negative and positive instances", criterion3}, {"pi-regularity equivalence", criterion4},
      {"triangular matrices", criterion5}, {"block bound", criterion6},
      {"Pierce layer for ZMod(n), n <= 1000", criterion7}, {"Z[sqrt(-5)] audit", criterion8},
      {"certificate soundness fuzz", criterion9}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail.str() << std::endl;
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
