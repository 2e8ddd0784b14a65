#pragma once

/**
 * @file factor.hpp
 * @brief Factorization searches on monic polynomials.
 *
 * A factorization h = f0·f1 into monic factors is an SR-factorization when
 * f0(0) and f1(1) are units, and an SRC-factorization when moreover
 * u·f0 + v·f1 = 1 for some u, v. An SP-factorization h = h0·p0 has h0(0) a
 * unit and p0 - t^deg(p0) with nilpotent coefficients.
 *
 * The local searches run on single-stalk rings. The global ("g") forms run
 * the local search on every stalk and group stalks by the degree of the
 * distinguished factor, so the resulting idempotent blocks number at most
 * deg(h) + 1.
 */

#include <optional>
#include <string>
#include <vector>

#include "sclean/poly.hpp"

namespace sclean {

enum class SearchStatus { Found, Absent, Incomplete };
enum class FactorMode { SR, SRC };
enum class FactorKind { SR_only, SRC };

std::string_view to_string(SearchStatus s);
std::string_view to_string(FactorKind k);

struct Bezout {
  Poly u;
  Poly v;
};

/// Sylvester resultant of two polynomials (up to sign).
Element sylvester_resultant(const Poly& f, const Poly& g);

/// For monic f0, f1: a Bezout pair u·f0 + v·f1 = 1 with deg u < deg f1 and
/// deg v < deg f0 when the resultant is a unit; nullopt otherwise.
std::optional<Bezout> comaximality(const Poly& f0, const Poly& f1);

struct SRCCertificate {
  MonicPoly f0;
  MonicPoly f1;
  std::optional<Bezout> bezout;  // present iff kind == SRC
  FactorKind kind;
};

struct SPCertificate {
  MonicPoly h0;
  MonicPoly p0;
  std::optional<Bezout> bezout;  // (h0, p0) comaximal
};

/// A certificate over the corner ring sub_ring(support(idempotent)).
template <class Cert>
struct CertBlock {
  Element idempotent;
  Cert cert;
};

struct GSRCCertificate {
  MonicPoly h;
  std::vector<CertBlock<SRCCertificate>> blocks;
};

struct GSPCertificate {
  MonicPoly h;
  std::vector<CertBlock<SPCertificate>> blocks;
};

template <class T>
struct SearchResult {
  SearchStatus status = SearchStatus::Absent;
  std::optional<T> value;
  std::vector<std::string> transcript;

  bool found() const { return status == SearchStatus::Found; }
};

/// Per-degree outcome of a local search (degree of f0, or of p0 for SP).
struct DegreeOutcome {
  int degree;
  SearchStatus status;
  std::optional<SRCCertificate> src;
  std::optional<SPCertificate> sp;
  std::vector<std::string> notes;
};

/// Tuning knobs for the finite and Z_(p) searches.
struct SearchLimits {
  /// Candidate factors examined per degree on a finite stalk.
  std::uint64_t max_candidates_per_degree = 4'000'000;
  /// Coefficient bound of the integer search used for middle-degree splits
  /// over Z_(p) when deg h >= 4.
  int zloc_height = 3;
};

std::vector<DegreeOutcome> src_profile_local(const MonicPoly& h, FactorMode mode, const SearchLimits& limits = {});
std::vector<DegreeOutcome> sp_profile_local(const MonicPoly& h, const SearchLimits& limits = {});

/// Minimal deg f0 first, then lexicographically smallest coefficients.
SearchResult<SRCCertificate> src_search_local(const MonicPoly& h, FactorMode mode, const SearchLimits& limits = {});
/// A single factorization over the whole ring (one idempotent block).
SearchResult<SRCCertificate> sr_search_single_block(const MonicPoly& h, FactorMode mode, const SearchLimits& limits = {});
SearchResult<GSRCCertificate> gsrc_search(const MonicPoly& h, const SearchLimits& limits = {});

SearchResult<SPCertificate> sp_search_local(const MonicPoly& h, const SearchLimits& limits = {});
SearchResult<SPCertificate> sp_search_single_block(const MonicPoly& h, const SearchLimits& limits = {});
SearchResult<GSPCertificate> gsp_search(const MonicPoly& h, const SearchLimits& limits = {});

/// Every non-leading coefficient of p - t^deg(p) is nilpotent.
bool is_nil_perturbed_power(const Poly& p);

}  // namespace sclean
