#ifndef KODAIRA_TWISTS_HPP
#define KODAIRA_TWISTS_HPP

#include "kodaira/tate.hpp"

namespace kodaira {

// Twist parameter: the multiplicative square class d (p != 2, d != 0) or the
// Artin-Schreier class d (p = 2, any d).
struct TwistParameter {
  enum class Mode { MultiplicativeClass, ArtinSchreierClass } mode;
  FqRat d;

  static TwistParameter forModel(const WeierstrassModel& m, FqRat d);
};

// y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6 after completing the square (p != 2),
// or a2 += d a1^2, a6 += d a3^2 on the long form (p = 2).
WeierstrassModel quadratic_twist(const WeierstrassModel& m, const TwistParameter& d);

// Geometric twist-equivalence over the algebraic closure of the constant
// field: square classes are detected by valuation parity alone (p != 2), and
// the Artin-Schreier class by stripping even-order pole parts (p = 2).
bool twist_is_trivial(const TwistParameter& d1, const TwistParameter& d2, Rng& rng);

// a_i(t) -> a_i(t^{p^n}).
WeierstrassModel frobenius_pullback(const WeierstrassModel& m, int iterations);

// The II -> III construction at a place where the fiber is II with swan 2 and
// v(a3) = v(a6) = 1 on the minimal model: d = (c6/c3^2) / pi with c3, c6 the
// leading local coefficients of a3, a6. (The source text omits the local
// parameter; the valuation bookkeeping - a simple pole at v, pi^2 | a6 + d a3^2 -
// forces it.) The parameter applies to the model minimized at v.
TwistParameter construct_twist_II_to_III(const WeierstrassModel& m, const Place& v, Rng& rng);

}  // namespace kodaira

#endif
