#ifndef KODAIRA_TESTUTIL_HPP
#define KODAIRA_TESTUTIL_HPP

#include <cstdlib>
#include <string>

#include "kodaira/factor.hpp"
#include "kodaira/textio.hpp"

namespace kt {

inline uint64_t test_seed() {
  if (const char* s = std::getenv("KODAIRA_SEED")) return std::strtoull(s, nullptr, 10);
  return 20260810u;
}

inline kodaira::Rng make_rng() { return kodaira::Rng(test_seed()); }

inline kodaira::FqRat rat(const kodaira::FieldPtr& k, const std::string& s) {
  return kodaira::parse_rat(s, k);
}
inline kodaira::FqPoly poly(const kodaira::FieldPtr& k, const std::string& s) {
  return kodaira::parse_poly(s, k);
}

// Random nonzero polynomial of degree <= maxdeg.
inline kodaira::FqPoly random_poly(const kodaira::FieldPtr& k, int maxdeg, kodaira::Rng& rng,
                                   bool nonzero = true) {
  for (;;) {
    std::vector<kodaira::FieldElement> cs;
    int d = static_cast<int>(rng.below(static_cast<uint64_t>(maxdeg + 1)));
    for (int i = 0; i <= d; ++i) cs.push_back(k->sample(rng));
    kodaira::FqPoly f(k->zero(), std::move(cs));
    if (!nonzero || !f.isZero()) return f;
  }
}

inline kodaira::FqRat random_rat(const kodaira::FieldPtr& k, int maxdeg, kodaira::Rng& rng) {
  return kodaira::FqRat(random_poly(k, maxdeg, rng, false), random_poly(k, maxdeg, rng, true));
}

}  // namespace kt

#endif
