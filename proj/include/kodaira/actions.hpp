#ifndef KODAIRA_ACTIONS_HPP
#define KODAIRA_ACTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kodaira/mpoly.hpp"
#include "kodaira/weierstrass.hpp"

namespace kodaira {

using ChartPoly = MPoly<FieldElement>;
// k(t)[x] and k(t)(x) for derivation arithmetic on the affine chart.
using XPoly = Poly<FqRat>;
using XRat = RatFunc<FqRat>;

// Substitution data for an infinitesimal (or additive-group) action on a
// Weierstrass chart: a formula in the chart coordinates and the parameter a
// for each coordinate it moves. Parameter relation: a^{p^n} = 0 (alpha case),
// a^{p^n} = 1 (mu case), or none (the G_a case).
struct Coaction {
  enum class Kind { Alpha, Mu, Ga } kind = Kind::Alpha;
  int paramExponent = 1;  // p^n for Alpha/Mu
  std::map<int, ChartPoly> subst;

  bool usesS() const { return subst.count(VS) > 0; }
  MPoly<FieldElement>::Relation relation() const {
    switch (kind) {
      case Kind::Alpha: return MPoly<FieldElement>::Relation::Nilpotent;
      case Kind::Mu: return MPoly<FieldElement>::Relation::Multiplicative;
      case Kind::Ga: return MPoly<FieldElement>::Relation::Free;
    }
    return MPoly<FieldElement>::Relation::Free;
  }
};

struct VerifyResult {
  bool ok = false;
  std::string witness;  // a nonzero residual monomial when !ok
};

// The chart polynomial the coaction must preserve: the affine Weierstrass
// polynomial in (t, x, y), or its weighted homogenization in (s, t, x, y)
// when the substitution involves s. Model coefficients must be polynomial.
ChartPoly chart_polynomial(const WeierstrassModel& m, bool homogeneous);

// Substitute the coaction into the chart polynomial and test membership in
// the ideal it generates over the parameter ring.
VerifyResult verify_coaction(const WeierstrassModel& m, const Coaction& c);

// Evaluate the substitution at a concrete parameter value and verify exactly.
VerifyResult verify_coaction_at(const WeierstrassModel& m, const Coaction& c,
                                const FieldElement& value);

// Compose with two independent parameters and compare against the composite
// parameter (a + b for Alpha/Ga, a * b for Mu), modulo both relations.
VerifyResult coaction_group_law(const Coaction& c, uint64_t p);

// Conjugate a coaction by a coordinate change (u a nonzero constant, r, s, w
// polynomial in t), acting on the changed model's coordinates.
Coaction conjugate_coaction(const Coaction& c, const CoordinateChange& change);

// Coaction text format:
//   relation = a^4=0 | a^3=1 | free
//   act.t = t + a^2 + a*t^4     (one line per moved coordinate; s,t,x,y,z)
Coaction parse_coaction(const std::string& text, const FieldPtr& k);

// A rational vector field on the affine chart: components D(t), D(x) in
// k(t, x); the action on y is determined by tangency to the Weierstrass
// equation, or supplied explicitly.
struct SurfFn {  // alpha + beta * y with alpha, beta in k(t,x)
  XRat a, b;
  bool isZero() const { return a.isZero() && b.isZero(); }
};

struct Derivation {
  XRat Dt, Dx;
  std::optional<SurfFn> Dy;
};

// Differentiate a (t,x,y)-coaction at the identity parameter.
Derivation derivation_from_coaction(const WeierstrassModel& m, const Coaction& c);

enum class PClosedKind { Multiplicative, Additive, PClosedWithLambda, NotPClosed };
struct PClosedResult {
  PClosedKind kind;
  std::optional<XRat> lambda;  // D^p = lambda D when p-closed but not 0/1
};

PClosedResult classify_p_closed(const Derivation& D, const WeierstrassModel& m);

// Zero-scheme ledger on the affine chart: fiber components where every
// derivation component vanishes (the divisorial part), the length of the
// isolated part away from the excluded fiber, and the margin compared against
// the regularity threshold (case I: excluded fiber of type II, margin must
// exceed c2 - 4|S|; case II: p = 2, |S| >= 2, type III, multiplicative D,
// margin must exceed c2 - 6).
struct MarginResult {
  std::vector<std::pair<Place, long>> divisorialPart;
  long isolatedLength = 0;
  long margin = 0;
  enum class Case { NotApplicable, CaseI, CaseII } lemmaCase = Case::NotApplicable;
  bool holds = false;
  long threshold = 0;
};

MarginResult zero_scheme_margin(const Derivation& D, const WeierstrassModel& m,
                                const Place& excluded, int sections, Rng& rng);

}  // namespace kodaira

#endif
