#ifndef KODAIRA_PLACE_HPP
#define KODAIRA_PLACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "kodaira/factor.hpp"

namespace kodaira {

// A closed point of P^1 over F_q: a monic irreducible polynomial in t, or the
// point at infinity (local parameter 1/t). Valuations are normalized so that
// v(pi) = 1 and v_inf(t) = -1.
class Place {
public:
  static Place finite(FqPoly monic_irreducible);
  static Place finiteUnchecked(FqPoly monic_irreducible);
  static Place infinity(FieldPtr k);

  bool isInfinity() const { return infinite_; }
  const FqPoly& pi() const { return pi_; }
  const FieldPtr& baseField() const { return k_; }
  int degree() const { return infinite_ ? 1 : static_cast<int>(pi_.deg()); }

  FqRat uniformizer() const;

  bool operator==(const Place& o) const;
  bool operator<(const Place& o) const;  // finite places (by degree, then lex), infinity last

private:
  Place() = default;
  bool infinite_ = false;
  FqPoly pi_{FieldElement{}};
  FieldPtr k_;
};

constexpr long VAL_INF = 1L << 60;  // valuation of the zero function

long valuation(const FqRat& r, const Place& v);
long valuation(const FqPoly& f, const Place& v);

// Residue arithmetic at one place: the residue field (an extension of the
// base when deg(pi) > 1), reduction of integral functions, and lifts back to
// rational functions.
class LocalRing {
public:
  LocalRing(const Place& v, Rng& rng);

  const Place& place() const { return v_; }
  const FieldPtr& residueField() const { return R_; }

  FieldElement residue(const FqRat& r) const;  // requires valuation >= 0
  FqRat lift(const FieldElement& e) const;     // a canonical preimage
  FieldElement embed(const FieldElement& base_elt) const;

  // residue(r / pi^valuation(r)); the leading local coefficient.
  FieldElement leadingCoefficient(const FqRat& r) const;

private:
  Place v_;
  FieldPtr R_;
};

struct LocalExpansion {
  bool zero = false;  // infinite-valuation marker
  long lead = 0;      // exponent of the first returned coefficient
  std::vector<FieldElement> coeffs;  // residue-field coefficients, ascending powers
};

// Truncated Laurent expansion of r at v: `precision` coefficients starting at
// the valuation; the leading coefficient is nonzero.
LocalExpansion local_expand(const FqRat& r, const Place& v, int precision, Rng& rng);

std::string place_text(const Place& v);

}  // namespace kodaira

#endif
