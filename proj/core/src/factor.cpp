#include "sclean/factor.hpp"

#include <algorithm>
#include <map>

#include "sclean/errors.hpp"
#include "sclean/matrix.hpp"
#include "sclean/rational.hpp"

namespace sclean {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Absent: return "absent";
    case SearchStatus::Incomplete: return "incomplete";
  }
  return "";
}

std::string_view to_string(FactorKind k) { return k == FactorKind::SRC ? "SRC" : "SR"; }

namespace {

Matrix sylvester(const Poly& f, const Poly& g) {
  const int m = f.degree(), k = g.degree();
  const auto n = static_cast<std::size_t>(m + k);
  Matrix s(f.ring(), n, n);
  // Column i < k holds t^i·f, column k + i holds t^i·g; row j is the t^j coefficient.
  for (std::size_t j = 0; j < n; ++j) {
    for (int i = 0; i < k; ++i) s.set(j, static_cast<std::size_t>(i), f.coeff(static_cast<int>(j) - i));
    for (int i = 0; i < m; ++i) s.set(j, static_cast<std::size_t>(k + i), g.coeff(static_cast<int>(j) - i));
  }
  return s;
}

void require_monic_pair(const Poly& f0, const Poly& f1) {
  if (!(f0.ring() == f1.ring())) fail(ErrorCode::RingMismatch, f0.ring().label() + " vs " + f1.ring().label());
  if (!f0.is_monic() || !f1.is_monic()) fail(ErrorCode::InvalidInput, "comaximality expects monic polynomials");
}

}  // namespace

Element sylvester_resultant(const Poly& f, const Poly& g) {
  if (f.degree() + g.degree() <= 0) return f.ring().one();
  return det(sylvester(f, g));
}

std::optional<Bezout> comaximality(const Poly& f0, const Poly& f1) {
  require_monic_pair(f0, f1);
  const Ring& ring = f0.ring();
  if (f0.degree() == 0) return Bezout{Poly::constant(ring.one()), Poly(ring)};
  if (f1.degree() == 0) return Bezout{Poly(ring), Poly::constant(ring.one())};
  const Matrix s = sylvester(f0, f1);
  const auto inv = det(s).inverse();
  if (!inv) return std::nullopt;
  // S x = e_0 has the solution adj(S) e_0 / det(S).
  const Matrix adj = adjugate(s);
  const auto k = static_cast<std::size_t>(f1.degree());
  std::vector<Element> u, v;
  for (std::size_t r = 0; r < s.rows(); ++r) (r < k ? u : v).push_back(adj(r, 0) * *inv);
  return Bezout{Poly(ring, std::move(u)), Poly(ring, std::move(v))};
}

bool is_nil_perturbed_power(const Poly& p) {
  if (!p.is_monic()) return false;
  for (int i = 0; i < p.degree(); ++i)
    if (!radical_membership(p.coeff(i)).in_nil) return false;
  return true;
}

namespace {

constexpr std::size_t kMaxNotesPerDegree = 8;

void note(std::vector<std::string>& notes, std::string line) {
  if (notes.size() < kMaxNotesPerDegree) {
    notes.push_back(std::move(line));
  } else if (notes.size() == kMaxNotesPerDegree) {
    notes.push_back("...");
  }
}

void require_local(const MonicPoly& h) {
  if (h.ring().num_stalks() != 1) fail(ErrorCode::InvalidInput, "local search needs a single-stalk ring");
}

/// Checks one candidate divisor f0 of h for the SR(C) conditions.
std::optional<SRCCertificate> try_split(const MonicPoly& h, const Poly& f0, FactorMode mode,
                                        std::vector<std::string>& notes) {
  const Division div = monic_divide(h.poly(), f0);
  if (!div.exact) return std::nullopt;
  const Poly& f1 = div.quotient;
  const Ring& ring = h.ring();
  const std::string split = "(" + f0.to_string() + ")(" + f1.to_string() + ")";
  const Element f00 = f0.coeff(0), f11 = f1.eval(ring.one());
  if (!f00.is_unit()) {
    note(notes, split + ": f0(0) = " + f00.to_string() + " is not a unit");
    return std::nullopt;
  }
  if (!f11.is_unit()) {
    note(notes, split + ": f1(1) = " + f11.to_string() + " is not a unit");
    return std::nullopt;
  }
  auto bez = comaximality(f0, f1);
  if (mode == FactorMode::SRC && !bez) {
    note(notes, split + ": SR but the factors are not comaximal");
    return std::nullopt;
  }
  note(notes, split + ": f0(0) = " + f00.to_string() + ", f1(1) = " + f11.to_string() + " units" +
                  (bez ? ", comaximal" : ", not comaximal"));
  const FactorKind kind = bez ? FactorKind::SRC : FactorKind::SR_only;
  return SRCCertificate{MonicPoly(f0), MonicPoly(f1), std::move(bez), kind};
}

std::optional<SPCertificate> try_sp(const MonicPoly& h, const Poly& p0, std::vector<std::string>& notes) {
  const Division div = monic_divide(h.poly(), p0);
  if (!div.exact) return std::nullopt;
  const Poly& h0 = div.quotient;
  const std::string split = "(" + h0.to_string() + ")(" + p0.to_string() + ")";
  if (!h0.coeff(0).is_unit()) {
    note(notes, split + ": h0(0) = " + h0.coeff(0).to_string() + " is not a unit");
    return std::nullopt;
  }
  note(notes, split + ": h0(0) unit, p0 nil-perturbed power of t");
  return SPCertificate{MonicPoly(h0), MonicPoly(p0), comaximality(h0, p0)};
}

/// Monic polynomial of degree d with the given lower coefficients.
Poly monic_with(const Ring& ring, const std::vector<Element>& lower) {
  std::vector<Element> c = lower;
  c.push_back(ring.one());
  return Poly(ring, std::move(c));
}

/// Odometer over lexicographic coefficient sequences (c_0 most significant).
/// `choices[i]` lists the allowed values of c_i. Stops when `visit` returns true.
template <class Visit>
void for_each_sequence(const std::vector<const std::vector<Element>*>& choices, Visit&& visit) {
  const std::size_t d = choices.size();
  for (const auto* c : choices)
    if (c->empty()) return;
  std::vector<std::size_t> idx(d, 0);
  std::vector<Element> cur;
  for (std::size_t i = 0; i < d; ++i) cur.push_back((*choices[i])[0]);
  while (true) {
    if (visit(cur)) return;
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++idx[i] < choices[i]->size()) {
        cur[i] = (*choices[i])[idx[i]];
        break;
      }
      idx[i] = 0;
      cur[i] = (*choices[i])[0];
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

std::vector<Element> all_elements(const Ring& ring) {
  std::vector<Element> out;
  for (std::uint64_t i = 0; i < ring.order(); ++i) out.push_back(ring.element_at(i));
  return out;
}

std::vector<Rational> rational_coeffs(const Poly& p) {
  std::vector<Rational> out;
  for (const auto& c : p.coeffs()) out.push_back(std::get<Rational>(c.stalk_value(0)));
  return out;
}

bool poly_less(const Poly& a, const Poly& b) {
  for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) {
    const auto c = compare(a.coeff(i), b.coeff(i));
    if (c != std::strong_ordering::equal) return c < 0;
  }
  return false;
}

DegreeOutcome finite_src_degree(const MonicPoly& h, int d, FactorMode mode, const SearchLimits& limits) {
  DegreeOutcome out{d, SearchStatus::Absent, std::nullopt, std::nullopt, {}};
  const Ring& ring = h.ring();
  const std::uint64_t q = ring.order();
  std::vector<Element> elems = all_elements(ring), units;
  for (const auto& e : elems)
    if (e.is_unit()) units.push_back(e);
  std::uint64_t count = units.size();
  for (int i = 1; i < d; ++i) {
    if (count > limits.max_candidates_per_degree / q + 1) {
      count = limits.max_candidates_per_degree + 1;
      break;
    }
    count *= q;
  }
  if (count > limits.max_candidates_per_degree) {
    out.status = SearchStatus::Incomplete;
    out.notes.push_back("candidate budget exceeded at degree " + std::to_string(d));
    return out;
  }
  std::vector<const std::vector<Element>*> choices{&units};
  for (int i = 1; i < d; ++i) choices.push_back(&elems);
  for_each_sequence(choices, [&](const std::vector<Element>& lower) {
    if (auto c = try_split(h, monic_with(ring, lower), mode, out.notes)) {
      out.status = SearchStatus::Found;
      out.src = std::move(c);
      return true;
    }
    return false;
  });
  if (out.status == SearchStatus::Absent) out.notes.push_back("no monic divisor of degree " + std::to_string(d) + " qualifies");
  return out;
}

DegreeOutcome zloc_src_degree(const MonicPoly& h, int d, FactorMode mode, const SearchLimits& limits) {
  DegreeOutcome out{d, SearchStatus::Absent, std::nullopt, std::nullopt, {}};
  const Ring& ring = h.ring();
  const int n = h.degree();
  const std::int64_t p = ring.stalk(0).prime();
  auto elem = [&](const Rational& q) { return ring.element({q}); };
  auto in_zloc = [&](const Rational& q) { return boost::multiprecision::denominator(q) % p != 0; };

  std::vector<Poly> candidates;
  if (n == 2) {
    const Rational b = std::get<Rational>(h.coeff(1).stalk_value(0));
    const Rational c = std::get<Rational>(h.coeff(0).stalk_value(0));
    const Rational disc = b * b - 4 * c;
    const auto s = rational_sqrt(disc);
    if (!s) {
      out.notes.push_back("discriminant " + elem(disc).to_string() + " is not a rational square: h is irreducible");
      return out;
    }
    out.notes.push_back("discriminant " + elem(disc).to_string() + " = (" + elem(*s).to_string() + ")^2");
    std::vector<Rational> roots{(-b + *s) / 2, (-b - *s) / 2};
    for (const auto& r : roots) {
      if (!in_zloc(r)) continue;
      candidates.push_back(Poly::linear(elem(r)));
    }
  } else if (d == 1 || d == n - 1) {
    const auto roots = rational_roots(rational_coeffs(h.poly()));
    if (!roots) {
      out.status = SearchStatus::Incomplete;
      out.notes.push_back("coefficients too large for the rational root test");
      return out;
    }
    if (roots->empty()) out.notes.push_back("h has no rational root");
    for (const auto& r : *roots) {
      if (!in_zloc(r)) continue;
      const Poly lin = Poly::linear(elem(r));
      candidates.push_back(d == 1 ? lin : monic_divide(h.poly(), lin).quotient);
    }
  } else {
    // Middle split of a degree >= 4 polynomial: bounded integer search only.
    std::vector<Element> ints;
    for (int v = -limits.zloc_height; v <= limits.zloc_height; ++v) ints.push_back(ring.from_int(v));
    std::vector<const std::vector<Element>*> choices(static_cast<std::size_t>(d), &ints);
    for_each_sequence(choices, [&](const std::vector<Element>& lower) {
      if (auto c = try_split(h, monic_with(ring, lower), mode, out.notes)) {
        out.status = SearchStatus::Found;
        out.src = std::move(c);
        return true;
      }
      return false;
    });
    if (out.status != SearchStatus::Found) {
      out.status = SearchStatus::Incomplete;
      out.notes.push_back("integer coefficients up to height " + std::to_string(limits.zloc_height) +
                          " exhausted; larger factors not excluded");
    }
    return out;
  }
  std::sort(candidates.begin(), candidates.end(), poly_less);
  for (const auto& f0 : candidates) {
    if (auto c = try_split(h, f0, mode, out.notes)) {
      out.status = SearchStatus::Found;
      out.src = std::move(c);
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<DegreeOutcome> src_profile_local(const MonicPoly& h, FactorMode mode, const SearchLimits& limits) {
  require_local(h);
  const Ring& ring = h.ring();
  const int n = h.degree();
  std::vector<DegreeOutcome> out;
  for (int d = 0; d <= n; ++d) {
    if (d == 0 || d == n) {
      DegreeOutcome o{d, SearchStatus::Absent, std::nullopt, std::nullopt, {}};
      const Poly f0 = d == 0 ? Poly::constant(ring.one()) : h.poly();
      if (auto c = try_split(h, f0, mode, o.notes)) {
        o.status = SearchStatus::Found;
        o.src = std::move(c);
      }
      out.push_back(std::move(o));
      continue;
    }
    out.push_back(ring.stalk(0).finite() ? finite_src_degree(h, d, mode, limits) : zloc_src_degree(h, d, mode, limits));
  }
  return out;
}

std::vector<DegreeOutcome> sp_profile_local(const MonicPoly& h, const SearchLimits& limits) {
  require_local(h);
  const Ring& ring = h.ring();
  const LocalStalk& stalk = ring.stalk(0);
  std::vector<Element> nil;
  if (stalk.finite()) {
    for (std::uint64_t i = 0; i < ring.order(); ++i) {
      Element e = ring.element_at(i);
      if (radical_membership(e).in_nil) nil.push_back(std::move(e));
    }
  } else {
    nil.push_back(ring.zero());  // Z_(p) is a domain
  }
  std::vector<DegreeOutcome> out;
  for (int d = 0; d <= h.degree(); ++d) {
    DegreeOutcome o{d, SearchStatus::Absent, std::nullopt, std::nullopt, {}};
    std::uint64_t count = 1;
    for (int i = 0; i < d && count <= limits.max_candidates_per_degree; ++i) count *= nil.size();
    if (count > limits.max_candidates_per_degree) {
      o.status = SearchStatus::Incomplete;
      o.notes.push_back("candidate budget exceeded at degree " + std::to_string(d));
      out.push_back(std::move(o));
      continue;
    }
    std::vector<const std::vector<Element>*> choices(static_cast<std::size_t>(d), &nil);
    for_each_sequence(choices, [&](const std::vector<Element>& lower) {
      if (auto c = try_sp(h, monic_with(ring, lower), o.notes)) {
        o.status = SearchStatus::Found;
        o.sp = std::move(c);
        return true;
      }
      return false;
    });
    if (o.status == SearchStatus::Absent) o.notes.push_back("no SP split with deg p0 = " + std::to_string(d));
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

void append_profile(std::vector<std::string>& transcript, const std::string& prefix,
                    const std::vector<DegreeOutcome>& profile) {
  for (const auto& o : profile) {
    transcript.push_back(prefix + "degree " + std::to_string(o.degree) + ": " + std::string(to_string(o.status)));
    for (const auto& n : o.notes) transcript.push_back(prefix + "  " + n);
  }
}

template <class T, class Pick>
SearchResult<T> first_found(std::vector<DegreeOutcome>& profile, Pick pick) {
  SearchResult<T> r;
  bool incomplete = false;
  for (auto& o : profile) {
    if (o.status == SearchStatus::Found && !r.value) r.value = std::move(*pick(o));
    incomplete = incomplete || o.status == SearchStatus::Incomplete;
  }
  r.status = r.value ? SearchStatus::Found : incomplete ? SearchStatus::Incomplete : SearchStatus::Absent;
  return r;
}

Poly glue_stalk_polys(const Ring& target, const std::vector<Poly>& parts) {
  Poly out(target);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    const std::size_t pos[] = {j};
    out = out + Poly::embed(target, parts[j], pos);
  }
  return out;
}

std::optional<Bezout> glue_bezout(const Ring& target, const std::vector<const std::optional<Bezout>*>& parts) {
  std::vector<Poly> us, vs;
  for (const auto* b : parts) {
    if (!*b) return std::nullopt;
    us.push_back((*b)->u);
    vs.push_back((*b)->v);
  }
  return Bezout{glue_stalk_polys(target, us), glue_stalk_polys(target, vs)};
}

SRCCertificate glue_src(const Ring& target, const std::vector<const SRCCertificate*>& parts) {
  std::vector<Poly> f0, f1;
  std::vector<const std::optional<Bezout>*> bez;
  for (const auto* c : parts) {
    f0.push_back(c->f0.poly());
    f1.push_back(c->f1.poly());
    bez.push_back(&c->bezout);
  }
  auto b = glue_bezout(target, bez);
  const FactorKind kind = b ? FactorKind::SRC : FactorKind::SR_only;
  return SRCCertificate{MonicPoly(glue_stalk_polys(target, f0)), MonicPoly(glue_stalk_polys(target, f1)), std::move(b),
                        kind};
}

SPCertificate glue_sp(const Ring& target, const std::vector<const SPCertificate*>& parts) {
  std::vector<Poly> h0, p0;
  std::vector<const std::optional<Bezout>*> bez;
  for (const auto* c : parts) {
    h0.push_back(c->h0.poly());
    p0.push_back(c->p0.poly());
    bez.push_back(&c->bezout);
  }
  return SPCertificate{MonicPoly(glue_stalk_polys(target, h0)), MonicPoly(glue_stalk_polys(target, p0)),
                       glue_bezout(target, bez)};
}

std::string stalk_prefix(const Ring& ring, std::size_t i) {
  return "stalk " + std::to_string(i) + " (" + ring.stalk(i).label() + "): ";
}

/// One factorization over the whole ring exists iff every stalk admits one
/// with the same degree for the distinguished factor.
template <class Cert, class Profile, class Pick, class Glue>
SearchResult<Cert> single_block(const MonicPoly& h, Profile profile_of, Pick pick, Glue glue) {
  const Ring& ring = h.ring();
  SearchResult<Cert> r;
  std::vector<std::vector<DegreeOutcome>> profiles;
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    profiles.push_back(profile_of(h.restrict(i)));
    append_profile(r.transcript, stalk_prefix(ring, i), profiles.back());
  }
  bool incomplete = false;
  for (int d = 0; d <= h.degree(); ++d) {
    bool all_found = true, some_absent = false;
    for (const auto& p : profiles) {
      all_found = all_found && p[static_cast<std::size_t>(d)].status == SearchStatus::Found;
      some_absent = some_absent || p[static_cast<std::size_t>(d)].status == SearchStatus::Absent;
    }
    if (all_found) {
      std::vector<const Cert*> parts;
      for (auto& p : profiles) parts.push_back(&*pick(p[static_cast<std::size_t>(d)]));
      r.value = glue(ring, parts);
      r.status = SearchStatus::Found;
      r.transcript.push_back("common degree " + std::to_string(d) + " on every stalk: single-block factorization exists");
      return r;
    }
    incomplete = incomplete || !some_absent;
  }
  r.status = incomplete ? SearchStatus::Incomplete : SearchStatus::Absent;
  r.transcript.push_back(incomplete ? "no common degree established; some degrees undecided"
                                    : "no degree works on every stalk: no single-block factorization");
  return r;
}

/// Runs a local search per stalk and groups stalks by the degree of the
/// distinguished factor into at most deg(h) + 1 idempotent blocks.
template <class Cert, class Global, class Local, class DegreeOf, class Glue>
SearchResult<Global> globalize(const MonicPoly& h, Local local, DegreeOf degree_of, Glue glue) {
  const Ring& ring = h.ring();
  SearchResult<Global> r;
  std::vector<Cert> certs;
  bool incomplete = false;
  for (std::size_t i = 0; i < ring.num_stalks(); ++i) {
    auto s = local(h.restrict(i));
    const std::string prefix = stalk_prefix(ring, i);
    for (const auto& line : s.transcript) r.transcript.push_back(prefix + line);
    if (s.status == SearchStatus::Absent) {
      r.status = SearchStatus::Absent;
      r.transcript.push_back(prefix + "no factorization: no global certificate exists");
      return r;
    }
    if (s.status == SearchStatus::Incomplete) {
      incomplete = true;
      continue;
    }
    certs.push_back(std::move(*s.value));
  }
  if (incomplete) {
    r.status = SearchStatus::Incomplete;
    r.transcript.push_back("some stalk searches were incomplete");
    return r;
  }
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < certs.size(); ++i) by_degree[degree_of(certs[i])].push_back(i);
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [deg, pos] : by_degree) groups.push_back(pos);
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  Global g{h, {}};
  for (const auto& pos : groups) {
    const Ring corner = ring.sub_ring(pos);
    std::vector<const Cert*> parts;
    for (auto i : pos) parts.push_back(&certs[i]);
    g.blocks.push_back({ring.indicator(pos), glue(corner, parts)});
  }
  r.transcript.push_back(std::to_string(g.blocks.size()) + " idempotent block(s)");
  r.status = SearchStatus::Found;
  r.value = std::move(g);
  return r;
}

}  // namespace

SearchResult<SRCCertificate> src_search_local(const MonicPoly& h, FactorMode mode, const SearchLimits& limits) {
  auto profile = src_profile_local(h, mode, limits);
  auto r = first_found<SRCCertificate>(profile, [](DegreeOutcome& o) { return &o.src; });
  append_profile(r.transcript, "", profile);
  return r;
}

SearchResult<SRCCertificate> sr_search_single_block(const MonicPoly& h, FactorMode mode, const SearchLimits& limits) {
  return single_block<SRCCertificate>(
      h, [&](const MonicPoly& hx) { return src_profile_local(hx, mode, limits); },
      [](DegreeOutcome& o) -> std::optional<SRCCertificate>& { return o.src; }, glue_src);
}

SearchResult<GSRCCertificate> gsrc_search(const MonicPoly& h, const SearchLimits& limits) {
  return globalize<SRCCertificate, GSRCCertificate>(
      h, [&](const MonicPoly& hx) { return src_search_local(hx, FactorMode::SRC, limits); },
      [](const SRCCertificate& c) { return c.f0.degree(); }, glue_src);
}

SearchResult<SPCertificate> sp_search_local(const MonicPoly& h, const SearchLimits& limits) {
  auto profile = sp_profile_local(h, limits);
  auto r = first_found<SPCertificate>(profile, [](DegreeOutcome& o) { return &o.sp; });
  append_profile(r.transcript, "", profile);
  return r;
}

SearchResult<SPCertificate> sp_search_single_block(const MonicPoly& h, const SearchLimits& limits) {
  return single_block<SPCertificate>(
      h, [&](const MonicPoly& hx) { return sp_profile_local(hx, limits); },
      [](DegreeOutcome& o) -> std::optional<SPCertificate>& { return o.sp; }, glue_sp);
}

SearchResult<GSPCertificate> gsp_search(const MonicPoly& h, const SearchLimits& limits) {
  return globalize<SPCertificate, GSPCertificate>(
      h, [&](const MonicPoly& hx) { return sp_search_local(hx, limits); },
      [](const SPCertificate& c) { return c.p0.degree(); }, glue_sp);
}

}  // namespace sclean
