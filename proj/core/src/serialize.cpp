#include "sclean/serialize.hpp"

#include <algorithm>
#include <tuple>

#include "sclean/errors.hpp"
#include "sclean/quad_z5.hpp"

namespace sclean {

using nlohmann::json;

namespace {

bool is_zmod(const Ring& ring) {
  const json d = ring.descriptor();
  return d.value("type", "") == "zmod";
}

/// Residue mod n of an element of a zmod ring, by CRT over the stalks.
std::int64_t crt_value(const Element& e) {
  __int128 x = 0, m = 1;
  for (std::size_t i = 0; i < e.ring().num_stalks(); ++i) {
    const LocalStalk& s = e.ring().stalk(i);
    const __int128 q = s.modulus();
    const __int128 r = std::get<std::int64_t>(e.stalk_value(i));
    // x + m·t ≡ r (mod q)
    __int128 old_r = m % q, rr = q, old_s = 1, ss = 0;
    while (rr != 0) {
      const __int128 k = old_r / rr;
      std::tie(old_r, rr) = std::make_tuple(rr, old_r - k * rr);
      std::tie(old_s, ss) = std::make_tuple(ss, old_s - k * ss);
    }
    __int128 t = ((r - x) % q + q) % q * ((old_s % q + q) % q) % q;
    x += m * t;
    m *= q;
  }
  return static_cast<std::int64_t>(x);
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidInput, what);
}

const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), std::string("missing field \"") + key + "\"");
  return j[key];
}

std::optional<Bezout> bezout_from_json(const Ring& ring, const json& j) {
  if (!j.contains("bezout") || j["bezout"].is_null()) return std::nullopt;
  const json& b = j["bezout"];
  return Bezout{poly_from_json(ring, field(b, "u")), poly_from_json(ring, field(b, "v"))};
}

void put_bezout(json& j, const std::optional<Bezout>& b) {
  if (b) j["bezout"] = {{"u", to_json(b->u)}, {"v", to_json(b->v)}};
}

json positions_json(const std::vector<std::size_t>& pos) { return json(pos); }

}  // namespace

json to_json(const Element& e) {
  const Ring& ring = e.ring();
  if (ring.has_whole_table()) return ring.to_table_index(e);
  if (is_zmod(ring)) return crt_value(e);
  if (ring.num_stalks() == 1) return ring.stalk(0).to_json(e.stalk_value(0));
  json a = json::array();
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) a.push_back(ring.stalk(i).to_json(e.stalk_value(i)));
  return a;
}

Element element_from_json(const Ring& ring, const json& j) {
  if (j.is_number_integer()) {
    if (ring.has_whole_table()) return ring.from_table_index(j.get<int>());
    if (ring.num_stalks() == 1) return ring.element({ring.stalk(0).parse(j)});
    return ring.from_int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    std::vector<StalkValue> v;
    for (const auto& s : ring.stalks()) v.push_back(s.parse(j));
    return ring.element(std::move(v));
  }
  require(j.is_array(), "element must be a number, string or array, got " + j.dump());
  const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return !x.is_array(); });
  if (flat && j.size() == ring.num_stalks()) {
    std::vector<StalkValue> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(ring.stalk(i).parse(j[i]));
    return ring.element(std::move(v));
  }
  const auto& factors = ring.factors();
  require(!factors.empty() && j.size() == factors.size(),
          "element " + j.dump() + " does not match the " + std::to_string(ring.num_stalks()) + " stalks of " + ring.label());
  std::vector<StalkValue> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Element part = element_from_json(factors[i], j[i]);
    v.insert(v.end(), part.values().begin(), part.values().end());
  }
  return ring.element(std::move(v));
}

json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

Poly poly_from_json(const Ring& ring, const json& j) {
  require(j.is_array(), "polynomial must be an array of coefficients, low degree first");
  std::vector<Element> c;
  for (const auto& x : j) c.push_back(element_from_json(ring, x));
  return Poly(ring, std::move(c));
}

MonicPoly monic_from_json(const Ring& ring, const json& j) {
  Poly p = poly_from_json(ring, j);
  if (!p.is_monic()) fail(ErrorCode::InvalidInput, "polynomial " + j.dump() + " is not monic");
  return MonicPoly(std::move(p));
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Ring& ring, const json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a non-empty array of rows");
  std::vector<Element> e;
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  for (const auto& row : j) {
    require(row.is_array() && row.size() == cols && cols > 0, "matrix rows must be non-empty arrays of equal length");
    for (const auto& x : row) e.push_back(element_from_json(ring, x));
  }
  return Matrix(ring, j.size(), cols, std::move(e));
}

json certificate_json(const SRCCertificate& c, const MonicPoly& h) {
  json j{{"kind", "src"},
         {"ring", h.ring().descriptor()},
         {"h", to_json(h.poly())},
         {"f0", to_json(c.f0.poly())},
         {"f1", to_json(c.f1.poly())},
         {"factor_kind", std::string(to_string(c.kind))},
         {"verify", {"f0*f1 == h", "f0(0) is a unit", "f1(1) is a unit", "u*f0 + v*f1 == 1 (SRC only)"}}};
  put_bezout(j, c.bezout);
  return j;
}

json certificate_json(const SPCertificate& c, const MonicPoly& h) {
  json j{{"kind", "sp"},
         {"ring", h.ring().descriptor()},
         {"h", to_json(h.poly())},
         {"h0", to_json(c.h0.poly())},
         {"p0", to_json(c.p0.poly())},
         {"verify", {"h0*p0 == h", "h0(0) is a unit", "p0 - t^deg(p0) has nilpotent coefficients"}}};
  put_bezout(j, c.bezout);
  return j;
}

namespace {

template <class Cert, class Fill>
json block_certificate(const char* kind, const MonicPoly& h, const std::vector<CertBlock<Cert>>& blocks, Fill fill,
                       std::vector<std::string> verify) {
  json bs = json::array();
  for (const auto& b : blocks) {
    const auto pos = support(b.idempotent);
    json bj{{"idempotent", to_json(b.idempotent)},
            {"support", positions_json(pos)},
            {"corner_ring", h.ring().sub_ring(pos).descriptor()}};
    fill(bj, b.cert);
    bs.push_back(std::move(bj));
  }
  return {{"kind", kind}, {"ring", h.ring().descriptor()}, {"h", to_json(h.poly())}, {"blocks", bs}, {"verify", verify}};
}

}  // namespace

json certificate_json(const GSRCCertificate& c) {
  return block_certificate(
      "gsrc", c.h, c.blocks,
      [](json& j, const SRCCertificate& s) {
        j["f0"] = to_json(s.f0.poly());
        j["f1"] = to_json(s.f1.poly());
        put_bezout(j, s.bezout);
      },
      {"idempotents are orthogonal and sum to 1", "F0*F1 == e*h per block (corner factors embedded)",
       "F0(0) + (1 - e) is a unit", "F1(1) + (1 - e) is a unit", "U*F0 + V*F1 == e"});
}

json certificate_json(const GSPCertificate& c) {
  return block_certificate(
      "gsp", c.h, c.blocks,
      [](json& j, const SPCertificate& s) {
        j["h0"] = to_json(s.h0.poly());
        j["p0"] = to_json(s.p0.poly());
        put_bezout(j, s.bezout);
      },
      {"idempotents are orthogonal and sum to 1", "H0*P0 == e*h per block (corner factors embedded)",
       "H0(0) + (1 - e) is a unit", "p0 - t^deg(p0) has nilpotent coefficients"});
}

json certificate_json(const StrongCleanCertificate& c, const Matrix& a) {
  return {{"kind", "strong_clean"}, {"ring", a.ring().descriptor()}, {"A", to_json(a)},
          {"E", to_json(c.E)},      {"U", to_json(c.U)},               {"U_inv", to_json(c.U_inv)},
          {"verify", {"E*E == E", "E + U == A", "E*U == U*E", "U*U_inv == U_inv*U == I"}}};
}

json certificate_json(const PiRegularCertificate& c, const Matrix& a) {
  return {{"kind", "pi_regular"}, {"ring", a.ring().descriptor()}, {"A", to_json(a)},
          {"k", c.k},             {"X", to_json(c.X)},               {"Y", to_json(c.Y)},
          {"verify", {"A^(k+1)*X == A^k", "Y*A^(k+1) == A^k"}}};
}

GSRCCertificate gsrc_from_json(const json& j) {
  const Ring ring = Ring::build(field(j, "ring"));
  GSRCCertificate c{monic_from_json(ring, field(j, "h")), {}};
  for (const auto& b : field(j, "blocks")) {
    Element e = element_from_json(ring, field(b, "idempotent"));
    const Ring corner = ring.sub_ring(support(e));
    auto bez = bezout_from_json(corner, b);
    const FactorKind kind = bez ? FactorKind::SRC : FactorKind::SR_only;
    c.blocks.push_back({std::move(e), SRCCertificate{monic_from_json(corner, field(b, "f0")),
                                                     monic_from_json(corner, field(b, "f1")), std::move(bez), kind}});
  }
  return c;
}

GSPCertificate gsp_from_json(const json& j) {
  const Ring ring = Ring::build(field(j, "ring"));
  GSPCertificate c{monic_from_json(ring, field(j, "h")), {}};
  for (const auto& b : field(j, "blocks")) {
    Element e = element_from_json(ring, field(b, "idempotent"));
    const Ring corner = ring.sub_ring(support(e));
    c.blocks.push_back({std::move(e), SPCertificate{monic_from_json(corner, field(b, "h0")),
                                                    monic_from_json(corner, field(b, "p0")), bezout_from_json(corner, b)}});
  }
  return c;
}

Check verify_certificate_json(const json& doc) {
  try {
    const std::string kind = field(doc, "kind").get<std::string>();
    if (kind == "strong_clean_z5") {
      const z5::QuadStrongClean c{z5::quad_matrix_from_json(field(doc, "E")), z5::quad_matrix_from_json(field(doc, "U")),
                                  z5::quad_matrix_from_json(field(doc, "U_inv"))};
      std::string why;
      if (!z5::verify_quad_strong_clean(z5::quad_matrix_from_json(field(doc, "A")), c, &why)) return Check::failure(why);
      return {};
    }
    const Ring ring = Ring::build(field(doc, "ring"));
    if (kind == "gsrc") return verify_gsrc(gsrc_from_json(doc));
    if (kind == "gsp") return verify_gsp(gsp_from_json(doc));
    if (kind == "src") {
      auto bez = bezout_from_json(ring, doc);
      const FactorKind fk = field(doc, "factor_kind").get<std::string>() == "SRC" ? FactorKind::SRC : FactorKind::SR_only;
      return verify_src(monic_from_json(ring, field(doc, "h")),
                        SRCCertificate{monic_from_json(ring, field(doc, "f0")), monic_from_json(ring, field(doc, "f1")),
                                       std::move(bez), fk});
    }
    if (kind == "sp")
      return verify_sp(monic_from_json(ring, field(doc, "h")),
                       SPCertificate{monic_from_json(ring, field(doc, "h0")), monic_from_json(ring, field(doc, "p0")),
                                     bezout_from_json(ring, doc)});
    const Matrix a = matrix_from_json(ring, field(doc, "A"));
    if (kind == "strong_clean")
      return verify_strong_clean(a, StrongCleanCertificate{matrix_from_json(ring, field(doc, "E")),
                                                           matrix_from_json(ring, field(doc, "U")),
                                                           matrix_from_json(ring, field(doc, "U_inv"))});
    if (kind == "pi_regular") {
      const auto k = field(doc, "k").get<unsigned>();
      return verify_pi_regular(a, PiRegularCertificate{k, matrix_from_json(ring, field(doc, "X")),
                                                       matrix_from_json(ring, field(doc, "Y"))});
    }
    return Check::failure("unknown certificate kind \"" + kind + "\"");
  } catch (const Error& e) {
    return Check::failure(e.what());
  } catch (const json::exception& e) {
    return Check::failure(e.what());
  }
}

namespace {

bool is_certificate(const json& j) {
  static const std::vector<std::string> kinds{"src", "gsrc", "sp", "gsp", "strong_clean", "pi_regular", "strong_clean_z5"};
  return j.is_object() && j.contains("kind") && j["kind"].is_string() &&
         std::find(kinds.begin(), kinds.end(), j["kind"].get<std::string>()) != kinds.end();
}

void walk(const json& j, std::size_t& count, Check& result) {
  if (is_certificate(j)) {
    ++count;
    if (auto c = verify_certificate_json(j); !c && result.ok) result = c;
    return;
  }
  if (j.is_object() || j.is_array())
    for (const auto& x : j) walk(x, count, result);
}

}  // namespace

Check verify_all_certificates(const json& doc, std::size_t& count) {
  count = 0;
  Check result;
  walk(doc, count, result);
  return result;
}

json to_json(const Decision& d, const Matrix* subject) {
  json j{{"verdict", std::string(to_string(d.verdict))}, {"route", std::string(to_string(d.route))}, {"transcript", d.transcript}};
  if (!d.reason.empty()) j["reason"] = d.reason;
  if (d.char_poly) j["char_poly"] = to_json(d.char_poly->poly());
  if (d.gsrc) j["gsrc"] = certificate_json(*d.gsrc);
  if (d.gsp) j["gsp"] = certificate_json(*d.gsp);
  if (d.strong_clean && subject) j["certificate"] = certificate_json(*d.strong_clean, *subject);
  if (d.pi_regular && subject) j["certificate"] = certificate_json(*d.pi_regular, *subject);
  if (d.witness_a || d.witness_poly) {
    json w = json::object();
    if (d.witness_a) w["a"] = to_json(*d.witness_a);
    if (d.witness_poly) {
      w["h"] = to_json(d.witness_poly->poly());
      w["h_text"] = d.witness_poly->to_string();
    }
    j["witness"] = w;
  }
  if (!d.roots.empty()) {
    json roots = json::array();
    for (const auto& [a, r] : d.roots) roots.push_back({{"a", to_json(a)}, {"root", to_json(r)}});
    j["roots"] = roots;
  }
  if (!d.ring_certificates.empty()) {
    json certs = json::array();
    for (const auto& pc : d.ring_certificates) certs.push_back(certificate_json(pc.gsrc));
    j["certificates"] = certs;
  }
  return j;
}

json to_json(const AuditReport& r, bool timing) {
  json j{{"kind", "audit"},
         {"audit", r.kind},
         {"ring", r.ring},
         {"degree", r.degree},
         {"instances", r.instances},
         {"agreements", r.agreements},
         {"disagreements", r.disagreements},
         {"route_counts", r.route_counts},
         {"max_blocks", r.max_blocks}};
  if (timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

}  // namespace sclean
