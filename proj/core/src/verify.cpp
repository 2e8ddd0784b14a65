#include "sclean/verify.hpp"

#include <algorithm>

#include "sclean/errors.hpp"

namespace sclean {

namespace {

bool is_identity(const Matrix& m) { return m == Matrix::identity(m.ring(), m.rows()); }

/// Nilpotency by powering up to the stalk bound.
bool nilpotent(const Element& x) {
  int bound = 1;
  for (const auto& s : x.ring().stalks()) bound = std::max(bound, s.nilpotency_index());
  return x.pow(static_cast<unsigned>(bound)).is_zero();
}

const Ring& cert_ring(const SRCCertificate& c) { return c.f0.ring(); }
const Ring& cert_ring(const SPCertificate& c) { return c.h0.ring(); }

struct BlockView {
  std::vector<std::size_t> positions;
  Element complement;
};

template <class Block>
std::optional<Check> check_blocks(const MonicPoly& h, const std::vector<Block>& blocks, std::vector<BlockView>& out) {
  const Ring& ring = h.ring();
  if (blocks.empty()) return Check::failure("no blocks");
  std::vector<Element> es;
  for (const auto& b : blocks) {
    if (!(b.idempotent.ring() == ring)) return Check::failure("block idempotent from another ring");
    es.push_back(b.idempotent);
  }
  try {
    CompleteOrthogonalSet set(es);
    for (const auto& e : set.idempotents()) out.push_back({support(e), ring.one() - e});
  } catch (const Error& err) {
    return Check::failure(std::string("block idempotents: ") + err.what());
  }
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (!(cert_ring(blocks[i].cert) == ring.sub_ring(out[i].positions)))
      return Check::failure("block " + std::to_string(i) + " certificate is not over its corner ring");
  return std::nullopt;
}

}  // namespace

Check verify_strong_clean(const Matrix& a, const StrongCleanCertificate& c) {
  if (!(c.E * c.E == c.E)) return Check::failure("E is not idempotent");
  if (!(c.E + c.U == a)) return Check::failure("E + U differs from A");
  if (!(c.E * c.U == c.U * c.E)) return Check::failure("E and U do not commute");
  if (!is_identity(c.U * c.U_inv) || !is_identity(c.U_inv * c.U)) return Check::failure("U_inv is not the inverse of U");
  return {};
}

Check verify_pi_regular(const Matrix& a, const PiRegularCertificate& c) {
  if (c.k < 1) return Check::failure("k must be at least 1");
  const Matrix ak = a.pow(c.k), ak1 = ak * a;
  if (!(ak1 * c.X == ak)) return Check::failure("A^(k+1)·X differs from A^k");
  if (!(c.Y * ak1 == ak)) return Check::failure("Y·A^(k+1) differs from A^k");
  return {};
}

Check verify_src(const MonicPoly& h, const SRCCertificate& c) {
  const Ring& ring = h.ring();
  if (!(c.f0.ring() == ring) || !(c.f1.ring() == ring)) return Check::failure("factors over another ring");
  if (!(c.f0 * c.f1 == h)) return Check::failure("f0·f1 differs from h");
  if (!c.f0.coeff(0).is_unit()) return Check::failure("f0(0) is not a unit");
  if (!c.f1.eval(ring.one()).is_unit()) return Check::failure("f1(1) is not a unit");
  if (c.kind == FactorKind::SRC) {
    if (!c.bezout) return Check::failure("SRC certificate without a Bezout pair");
    if (!(c.bezout->u * c.f0.poly() + c.bezout->v * c.f1.poly() == Poly::constant(ring.one())))
      return Check::failure("u·f0 + v·f1 differs from 1");
  }
  return {};
}

Check verify_sp(const MonicPoly& h, const SPCertificate& c) {
  const Ring& ring = h.ring();
  if (!(c.h0.ring() == ring) || !(c.p0.ring() == ring)) return Check::failure("factors over another ring");
  if (!(c.h0 * c.p0 == h)) return Check::failure("h0·p0 differs from h");
  if (!c.h0.coeff(0).is_unit()) return Check::failure("h0(0) is not a unit");
  for (int i = 0; i < c.p0.degree(); ++i)
    if (!nilpotent(c.p0.coeff(i))) return Check::failure("p0 - t^deg(p0) has a non-nilpotent coefficient");
  if (c.bezout && !(c.bezout->u * c.h0.poly() + c.bezout->v * c.p0.poly() == Poly::constant(ring.one())))
    return Check::failure("u·h0 + v·p0 differs from 1");
  return {};
}

Check verify_gsrc(const GSRCCertificate& c) {
  const Ring& ring = c.h.ring();
  std::vector<BlockView> views;
  if (auto bad = check_blocks(c.h, c.blocks, views)) return *bad;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const auto& cert = c.blocks[i].cert;
    const Element& e = c.blocks[i].idempotent;
    const auto& pos = views[i].positions;
    const Poly f0 = Poly::embed(ring, cert.f0.poly(), pos), f1 = Poly::embed(ring, cert.f1.poly(), pos);
    const std::string tag = "block " + std::to_string(i) + ": ";
    if (!(f0 * f1 == c.h.poly() * e)) return Check::failure(tag + "f0·f1 differs from e·h");
    if (!(f0.coeff(0) + views[i].complement).is_unit()) return Check::failure(tag + "f0(0) is not a unit of eR");
    if (!(f1.eval(ring.one()) + views[i].complement).is_unit()) return Check::failure(tag + "f1(1) is not a unit of eR");
    if (!cert.bezout) return Check::failure(tag + "missing Bezout pair");
    const Poly u = Poly::embed(ring, cert.bezout->u, pos), v = Poly::embed(ring, cert.bezout->v, pos);
    if (!(u * f0 + v * f1 == Poly::constant(e))) return Check::failure(tag + "u·f0 + v·f1 differs from e");
  }
  return {};
}

Check verify_gsp(const GSPCertificate& c) {
  const Ring& ring = c.h.ring();
  std::vector<BlockView> views;
  if (auto bad = check_blocks(c.h, c.blocks, views)) return *bad;
  for (std::size_t i = 0; i < c.blocks.size(); ++i) {
    const auto& cert = c.blocks[i].cert;
    const Element& e = c.blocks[i].idempotent;
    const auto& pos = views[i].positions;
    const Poly h0 = Poly::embed(ring, cert.h0.poly(), pos), p0 = Poly::embed(ring, cert.p0.poly(), pos);
    const std::string tag = "block " + std::to_string(i) + ": ";
    if (!(h0 * p0 == c.h.poly() * e)) return Check::failure(tag + "h0·p0 differs from e·h");
    if (!(h0.coeff(0) + views[i].complement).is_unit()) return Check::failure(tag + "h0(0) is not a unit of eR");
    for (int j = 0; j < cert.p0.degree(); ++j)
      if (!nilpotent(cert.p0.coeff(j))) return Check::failure(tag + "p0 - t^deg(p0) has a non-nilpotent coefficient");
  }
  return {};
}

}  // namespace sclean
