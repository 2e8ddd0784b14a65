#pragma once

/**
 * @file analysis.hpp
 * @brief Deciders for strong cleanness and strong pi-regularity of matrices,
 * ring-level sweeps, and exhaustive audits of the factorization criteria.
 *
 * A Yes verdict always carries a certificate that has been re-verified. A No
 * verdict carries either an exhausted search or the negation for a companion
 * matrix. Absence of a gSRC factorization for a non-companion matrix is never
 * reported as No unless the brute-force scan completed.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sclean/factor.hpp"
#include "sclean/oracles.hpp"

namespace sclean {

enum class Verdict { Yes, No, Unknown };
enum class Route { gSRC, gSP, brute_force, jclean_root, companion_negation };

std::string_view to_string(Verdict v);
std::string_view to_string(Route r);

struct PolyCertificate {
  MonicPoly h;
  GSRCCertificate gsrc;
};

struct Decision {
  Verdict verdict = Verdict::Unknown;
  Route route = Route::gSRC;
  std::optional<MonicPoly> char_poly;
  std::optional<GSRCCertificate> gsrc;
  std::optional<GSPCertificate> gsp;
  std::optional<StrongCleanCertificate> strong_clean;
  std::optional<PiRegularCertificate> pi_regular;
  /// Ring-level Yes: one certificate per monic polynomial.
  std::vector<PolyCertificate> ring_certificates;
  std::optional<MonicPoly> witness_poly;
  std::optional<Element> witness_a;
  /// Root r of t^2 - t + a, for each tested a (J-clean route).
  std::vector<std::pair<Element, Element>> roots;
  std::vector<std::string> transcript;
  std::string reason;
};

struct DecideOptions {
  std::uint64_t budget = 1'000'000;
  SearchLimits limits{};
};

/// Yes with a glued certificate when a gSRC factorization of χ(A) exists.
/// Throws NotCleanRing when the ring fails classify_ring().is_clean.
Decision decide_strongly_clean(const Matrix& a, const DecideOptions& opts = {});
Decision decide_pi_regular(const Matrix& a, const DecideOptions& opts = {});

/// Whether Mat_n(R) is strongly clean: every monic h of degree n has a gSRC
/// factorization. Finite rings are swept exhaustively (BudgetExceeded past
/// budget polynomials); Z_(p) stalks use the J-clean quadratic witness.
Decision decide_ring_strongly_clean(const Ring& ring, int n, const DecideOptions& opts = {});

/// Mat_2(R) strongly clean iff t^2 - t + a has a root for every a in rad(R).
/// Throws PreconditionNotJClean.
Decision jclean_quadratic_criterion(const Ring& ring);

/// s with s^2 = v and s - 1 in rad(R). Throws TwoNotUnit when 2 is not a
/// unit and InvalidInput when v - 1 is not in rad(R).
std::optional<Element> sqrt_one_plus_radical(const Element& v);

/// Strong-clean certificate assembled block by block from a gSRC
/// factorization of χ(A): E restricted to a block is (u·f0)(A).
StrongCleanCertificate strong_clean_from_gsrc(const Matrix& a, const GSRCCertificate& g);
/// X = -h0(0)^-1·q(A)·(v·p0)(A) per block, where h0 = h0(0) + t·q.
PiRegularCertificate pi_regular_from_gsp(const Matrix& a, const GSPCertificate& g);

struct AuditReport {
  std::string kind;
  nlohmann::json ring;
  int degree = 0;
  std::size_t instances = 0;
  std::size_t agreements = 0;
  std::vector<std::string> disagreements;
  std::map<std::string, std::size_t> route_counts;
  std::size_t max_blocks = 0;
  double wall_time_ms = 0;
};

struct AuditOptions {
  std::uint64_t budget = 1'000'000;
  unsigned samples = 5;
  std::uint64_t seed = 1;
  /// 0 picks the hardware concurrency.
  unsigned workers = 0;
};

/// Every monic h of degree n: gSRC existence against the brute-force scan of
/// companion(h), plus seeded similar matrices certified from the gSRC data.
AuditReport theorem_main_audit(const Ring& ring, int n, const AuditOptions& opts = {});
/// Every monic h of degree n: gSP existence against pi_regular_oracle on
/// companion(h); pi-regular instances must also be strongly clean.
AuditReport pi_regular_audit(const Ring& ring, int n, const AuditOptions& opts = {});
/// Every upper-triangular n×n matrix, certified from its diagonal with a
/// brute-force fallback.
AuditReport triangular_sweep(const Ring& ring, int n, const AuditOptions& opts = {});

/// All monic polynomials of degree n in canonical order (constant term most
/// significant). Throws BudgetExceeded past `budget`.
std::vector<MonicPoly> enumerate_monic(const Ring& ring, int n, std::uint64_t budget);

/// Certificate built from the diagonal of an upper-triangular matrix.
std::optional<StrongCleanCertificate> triangular_certificate(const Matrix& a);

}  // namespace sclean
