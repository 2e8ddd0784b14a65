#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sclean/errors.hpp"
#include "sclean/quad_z5.hpp"
#include "sclean/serialize.hpp"

namespace sclean::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string ring, poly, matrix, verify, kind = "theorem", mode = "src", sqrt;
  int degree = 0;
  std::uint64_t seed = 1, budget = 1'000'000;
  unsigned samples = 5, workers = 0;
  bool pretty = false, json_out = false, companion = false, timing = false;
};

json load(const std::string& text, const char* what) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) fail(ErrorCode::InvalidInput, std::string("cannot read ") + what + " file " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error&) {
    fail(ErrorCode::InvalidInput, std::string("malformed JSON for ") + what);
  }
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  void emit(const json& j) const { out_ << (o_.pretty ? j.dump(2) : j.dump()) << "\n"; }

  Ring ring() const {
    if (o_.ring.empty()) fail(ErrorCode::InvalidInput, "--ring is required");
    return Ring::build(load(o_.ring, "--ring"));
  }

  MonicPoly poly(const Ring& r) const {
    if (o_.poly.empty()) fail(ErrorCode::InvalidInput, "--poly is required");
    return monic_from_json(r, load(o_.poly, "--poly"));
  }

  std::optional<Matrix> subject(const Ring& r) const {
    if (!o_.matrix.empty()) {
      Matrix m = matrix_from_json(r, load(o_.matrix, "--matrix"));
      if (!m.is_square()) fail(ErrorCode::InvalidInput, "--matrix must be square");
      return m;
    }
    if (!o_.poly.empty()) {
      if (!o_.companion) fail(ErrorCode::InvalidInput, "--poly needs --companion here");
      return companion(poly(r));
    }
    return std::nullopt;
  }

  DecideOptions decide_options() const {
    DecideOptions d;
    d.budget = o_.budget;
    return d;
  }

  AuditOptions audit_options() const {
    AuditOptions a;
    a.budget = o_.budget;
    a.samples = o_.samples;
    a.seed = o_.seed;
    a.workers = o_.workers;
    return a;
  }

  int ring_cmd() const {
    const Ring r = ring();
    json stalks = json::array();
    for (const auto& s : r.stalks())
      stalks.push_back({{"label", s.label()}, {"descriptor", s.descriptor()}, {"local", s.verify_local()},
                        {"nilpotency_index", s.nilpotency_index()}});
    json prim = json::array();
    const auto cos = pierce_decomposition(r);
    for (const auto& e : cos.idempotents()) prim.push_back(to_json(e));
    const RingClass c = classify_ring(r);
    json j{{"command", "ring"},
           {"ring", r.descriptor()},
           {"label", r.label()},
           {"stalks", stalks},
           {"finite", r.is_finite()},
           {"primitive_idempotents", prim},
           {"classification", {{"local", c.is_local}, {"clean", c.is_clean}, {"j_clean", c.is_j_clean}}}};
    if (r.is_finite()) j["order"] = r.order();
    if (r.num_stalks() <= 10) {
      json all = json::array();
      for (const auto& e : enumerate_idempotents(r)) all.push_back(to_json(e));
      j["idempotents"] = all;
    }
    emit(j);
    return kOk;
  }

  int factor_cmd() const {
    const Ring r = ring();
    const MonicPoly h = poly(r);
    json j{{"command", "factor"}, {"ring", r.descriptor()}, {"h", to_json(h.poly())}, {"h_text", h.to_string()}, {"mode", o_.mode}};
    SearchStatus global;
    if (o_.mode == "sp") {
      const auto single = sp_search_single_block(h);
      const auto g = gsp_search(h);
      j["single_block"] = search_json(single, single.value ? certificate_json(*single.value, h) : json());
      j["global"] = search_json(g, g.value ? certificate_json(*g.value) : json());
      global = g.status;
    } else if (o_.mode == "src" || o_.mode == "sr") {
      const auto single = sr_search_single_block(h, o_.mode == "sr" ? FactorMode::SR : FactorMode::SRC);
      const auto g = gsrc_search(h);
      j["single_block"] = search_json(single, single.value ? certificate_json(*single.value, h) : json());
      j["global"] = search_json(g, g.value ? certificate_json(*g.value) : json());
      global = g.status;
    } else {
      fail(ErrorCode::InvalidInput, "--mode must be src, sr or sp");
    }
    emit(j);
    return global == SearchStatus::Incomplete ? kUnknown : kOk;
  }

  int decide_cmd(bool pi) const {
    const Ring r = ring();
    const auto a = subject(r);
    json j{{"command", pi ? "pi-regular" : "decide"}, {"ring", r.descriptor()}};
    Decision d;
    if (a) {
      j["matrix"] = to_json(*a);
      d = pi ? decide_pi_regular(*a, decide_options()) : decide_strongly_clean(*a, decide_options());
    } else if (!pi && o_.degree > 0) {
      j["degree"] = o_.degree;
      d = decide_ring_strongly_clean(r, o_.degree, decide_options());
    } else {
      fail(ErrorCode::InvalidInput, pi ? "give --matrix, or --poly with --companion"
                                       : "give --matrix, --poly with --companion, or --degree");
    }
    j.update(to_json(d, a ? &*a : nullptr));
    emit(j);
    return d.verdict == Verdict::Unknown ? kUnknown : kOk;
  }

  int audit_cmd(bool triangular) const {
    const Ring r = ring();
    if (o_.degree < 1) fail(ErrorCode::InvalidInput, "--degree is required");
    AuditReport rep;
    if (triangular) {
      rep = triangular_sweep(r, o_.degree, audit_options());
    } else if (o_.kind == "theorem") {
      rep = theorem_main_audit(r, o_.degree, audit_options());
    } else if (o_.kind == "pi-regular") {
      rep = pi_regular_audit(r, o_.degree, audit_options());
    } else {
      fail(ErrorCode::InvalidInput, "--kind must be theorem or pi-regular");
    }
    emit(to_json(rep, o_.timing));
    return rep.disagreements.empty() ? kOk : kVerification;
  }

  int jclean_cmd() const {
    const Ring r = ring();
    if (!o_.sqrt.empty()) {
      const Element v = element_from_json(r, load(o_.sqrt, "--sqrt"));
      const auto s = sqrt_one_plus_radical(v);
      emit({{"command", "jclean"}, {"ring", r.descriptor()}, {"v", to_json(v)}, {"sqrt", s ? to_json(*s) : json()}});
      return kOk;
    }
    const Decision d = jclean_quadratic_criterion(r);
    json j{{"command", "jclean"}, {"ring", r.descriptor()}};
    j.update(to_json(d));
    emit(j);
    return d.verdict == Verdict::Unknown ? kUnknown : kOk;
  }

  int z5_cmd() const {
    const auto audit = z5::run_audit();
    emit(z5::to_json(audit));
    return audit.verified() ? kOk : kVerification;
  }

  int verify_cmd() const {
    std::size_t count = 0;
    const Check c = verify_all_certificates(load(o_.verify, "--verify"), count);
    json j{{"command", "verify"}, {"certificates", count}, {"ok", c.ok && count > 0}};
    if (!c.ok) j["reason"] = c.reason;
    if (count == 0) j["reason"] = "no certificate found";
    emit(j);
    if (count == 0) return kUsage;
    return c.ok ? kOk : kVerification;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Decide strong cleanness and strong pi-regularity of matrices over commutative clean rings", "sclean"};
  app.fallthrough();
  app.add_option("--verify", o.verify, "Re-verify every certificate in a JSON document (or @file)");
  app.add_flag("--pretty", o.pretty, "Indented JSON");
  app.add_flag("--json", o.json_out, "Compact JSON (default)");

  auto with_ring = [&](CLI::App* s) { s->add_option("--ring", o.ring, "Ring descriptor JSON or @file"); };
  auto with_subject = [&](CLI::App* s) {
    s->add_option("--matrix", o.matrix, "Square matrix as JSON rows or @file");
    s->add_option("--poly", o.poly, "Monic polynomial, coefficients low degree first");
    s->add_flag("--companion", o.companion, "Use the companion matrix of --poly");
  };
  auto with_budget = [&](CLI::App* s) { s->add_option("--budget", o.budget, "Brute-force / enumeration budget"); };

  auto* ring_cmd = app.add_subcommand("ring", "Pierce decomposition and classification of a ring");
  with_ring(ring_cmd);
  auto* factor_cmd = app.add_subcommand("factor", "SR/SRC/SP factorization searches");
  with_ring(factor_cmd);
  factor_cmd->add_option("--poly", o.poly, "Monic polynomial, coefficients low degree first");
  factor_cmd->add_option("--mode", o.mode, "src (default), sr or sp");
  auto* decide_cmd = app.add_subcommand("decide", "Decide strong cleanness of a matrix, or of Mat_n(R) with --degree");
  with_ring(decide_cmd);
  with_subject(decide_cmd);
  with_budget(decide_cmd);
  decide_cmd->add_option("--degree", o.degree, "Matrix size for the ring-level decision");
  auto* pi_cmd = app.add_subcommand("pi-regular", "Decide strong pi-regularity of a matrix");
  with_ring(pi_cmd);
  with_subject(pi_cmd);
  auto* audit_cmd = app.add_subcommand("audit", "Exhaustive audit over all monic polynomials of a degree");
  with_ring(audit_cmd);
  with_budget(audit_cmd);
  audit_cmd->add_option("--degree", o.degree, "Polynomial degree");
  audit_cmd->add_option("--kind", o.kind, "theorem (default) or pi-regular");
  audit_cmd->add_option("--samples", o.samples, "Similar matrices per polynomial");
  audit_cmd->add_option("--seed", o.seed, "Seed for similar matrices");
  audit_cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
  audit_cmd->add_flag("--timing", o.timing, "Include wall time (output no longer byte-stable)");
  auto* tri_cmd = app.add_subcommand("triangular", "Certify every upper-triangular matrix");
  with_ring(tri_cmd);
  with_budget(tri_cmd);
  tri_cmd->add_option("--degree", o.degree, "Matrix size");
  tri_cmd->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
  tri_cmd->add_flag("--timing", o.timing, "Include wall time");
  auto* jclean_cmd = app.add_subcommand("jclean", "Quadratic root criterion for Mat_2(R) over a J-clean ring");
  with_ring(jclean_cmd);
  jclean_cmd->add_option("--sqrt", o.sqrt, "Square root in 1 + rad(R) of this element instead");
  auto* z5_cmd = app.add_subcommand("z5-example", "Audit of the Z[sqrt(-5)] endomorphism example");
  app.require_subcommand(0, 1);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  const Runner run(o, out);
  try {
    if (!o.verify.empty()) return run.verify_cmd();
    if (*ring_cmd) return run.ring_cmd();
    if (*factor_cmd) return run.factor_cmd();
    if (*decide_cmd) return run.decide_cmd(false);
    if (*pi_cmd) return run.decide_cmd(true);
    if (*audit_cmd) return run.audit_cmd(false);
    if (*tri_cmd) return run.audit_cmd(true);
    if (*jclean_cmd) return run.jclean_cmd();
    if (*z5_cmd) return run.z5_cmd();
    err << app.help();
    return kUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::VerificationFailed) {
      err << "verification failed: " << e.what() << "\n";
      return kVerification;
    }
    if (e.code() == ErrorCode::BudgetExceeded) {
      run.emit({{"verdict", "Unknown"}, {"error", std::string(to_string(e.code()))}, {"reason", e.what()}});
      return kUnknown;
    }
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error [InvalidInput]: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace sclean::cli
