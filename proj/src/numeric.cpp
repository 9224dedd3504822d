#include "adelab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace adelab {

std::vector<LogTerm> merge_log_terms(std::vector<LogTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const LogTerm& a, const LogTerm& b) { return a.base < b.base; });
  std::vector<LogTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().base == t.base) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const LogTerm& t) { return t.coeff == 0; }),
            out.end());
  return out;
}

double log_terms_value(const std::vector<LogTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) {
    // log of a big integer, computed from its mantissa/exponent split so the
    // value stays accurate when the base exceeds double range.
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, t.base.get_mpz_t());
    s += t.coeff.get_d() * (std::log(mant) + static_cast<double>(exp2) * std::log(2.0));
  }
  return s;
}

std::string format_double17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace adelab
