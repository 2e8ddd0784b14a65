#pragma once

/**
 * @file serialize.hpp
 * @brief JSON forms of elements, polynomials, matrices, certificates,
 * decisions and audit reports, plus re-verification of certificate documents.
 *
 * Elements of a zmod ring are written as residues, elements of a table ring
 * as original table indices, other single-stalk elements as the stalk value
 * and the rest as per-stalk arrays. Keys are sorted, so output is
 * deterministic.
 */

#include <nlohmann/json.hpp>

#include "sclean/analysis.hpp"
#include "sclean/verify.hpp"

namespace sclean {

nlohmann::json to_json(const Element& e);
/// Accepts the canonical form, a scalar integer (image of Z), a per-stalk
/// array, or a per-factor array for product rings.
Element element_from_json(const Ring& ring, const nlohmann::json& j);

nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const Ring& ring, const nlohmann::json& j);
MonicPoly monic_from_json(const Ring& ring, const nlohmann::json& j);

nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const Ring& ring, const nlohmann::json& j);

/// Certificate documents carry "kind", the ring descriptor, the subject and
/// a "verify" list naming the identities a checker replays.
nlohmann::json certificate_json(const SRCCertificate& c, const MonicPoly& h);
nlohmann::json certificate_json(const GSRCCertificate& c);
nlohmann::json certificate_json(const SPCertificate& c, const MonicPoly& h);
nlohmann::json certificate_json(const GSPCertificate& c);
nlohmann::json certificate_json(const StrongCleanCertificate& c, const Matrix& a);
nlohmann::json certificate_json(const PiRegularCertificate& c, const Matrix& a);

GSRCCertificate gsrc_from_json(const nlohmann::json& j);
GSPCertificate gsp_from_json(const nlohmann::json& j);

/// Rebuilds a certificate document of any kind and runs its verifier.
Check verify_certificate_json(const nlohmann::json& doc);
/// Verifies every certificate document nested anywhere in `doc`; `count`
/// receives the number found.
Check verify_all_certificates(const nlohmann::json& doc, std::size_t& count);

/// `subject` is the matrix the decision is about, when there is one.
nlohmann::json to_json(const Decision& d, const Matrix* subject = nullptr);
nlohmann::json to_json(const AuditReport& r, bool timing);

template <class T>
nlohmann::json search_json(const SearchResult<T>& r, nlohmann::json cert) {
  nlohmann::json j{{"status", std::string(to_string(r.status))}, {"transcript", r.transcript}};
  if (r.value) j["certificate"] = std::move(cert);
  return j;
}

}  // namespace sclean
