#pragma once

/**
 * @file verify.hpp
 * @brief Independent re-checks of every certificate kind. The checks only
 * multiply, add and invert; they never call the searches that produced the
 * certificates.
 */

#include <string>

#include "sclean/factor.hpp"
#include "sclean/oracles.hpp"

namespace sclean {

struct Check {
  bool ok = true;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
  static Check failure(std::string why) { return {false, std::move(why)}; }
};

Check verify_strong_clean(const Matrix& a, const StrongCleanCertificate& c);
Check verify_pi_regular(const Matrix& a, const PiRegularCertificate& c);

/// h = f0·f1 with f0(0), f1(1) units, plus the Bezout identity for SRC.
Check verify_src(const MonicPoly& h, const SRCCertificate& c);
/// h = h0·p0 with h0(0) a unit and p0 - t^deg(p0) nilpotent.
Check verify_sp(const MonicPoly& h, const SPCertificate& c);

/// Blocks form a complete orthogonal set; each corner certificate is checked
/// after embedding into the whole ring.
Check verify_gsrc(const GSRCCertificate& c);
Check verify_gsp(const GSPCertificate& c);

}  // namespace sclean
