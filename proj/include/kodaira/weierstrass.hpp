#ifndef KODAIRA_WEIERSTRASS_HPP
#define KODAIRA_WEIERSTRASS_HPP

#include <string>

#include "kodaira/place.hpp"

namespace kodaira {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t).
// Delta != 0 is enforced at construction (smooth generic fiber).
class WeierstrassModel {
public:
  WeierstrassModel(FieldPtr k, FqRat a1, FqRat a2, FqRat a3, FqRat a4, FqRat a6);

  const FieldPtr& k() const { return k_; }
  uint64_t p() const { return k_->p(); }
  const FqRat& a1() const { return a1_; }
  const FqRat& a2() const { return a2_; }
  const FqRat& a3() const { return a3_; }
  const FqRat& a4() const { return a4_; }
  const FqRat& a6() const { return a6_; }

  bool operator==(const WeierstrassModel& o) const;

private:
  FieldPtr k_;
  FqRat a1_, a2_, a3_, a4_, a6_;
};

struct StandardQuantities {
  FqRat b2, b4, b6, b8, c4, c6, delta, j;
};

StandardQuantities standard_quantities(const WeierstrassModel& m);

// The (u; r, s, w) substitution x -> u^2 x' + r, y -> u^3 y' + u^2 s x' + w.
struct CoordinateChange {
  FqRat u, r, s, w;

  static CoordinateChange identity(const FieldPtr& k);
  static CoordinateChange scale(const FqRat& u);
  CoordinateChange then(const CoordinateChange& second) const;  // apply *this, then second
  CoordinateChange inverse() const;
  bool isIdentity() const;
};

WeierstrassModel apply_change(const WeierstrassModel& m, const CoordinateChange& c);

// Integral, Tate-minimal model at one place together with the change that
// produced it.
std::pair<WeierstrassModel, CoordinateChange> integral_minimal_at(const WeierstrassModel& m,
                                                                  const Place& v, Rng& rng);

// Substitute t -> 1/s and rescale by u = s^-w with the least w >= 0 making all
// coefficients integral at s = 0; analyzing the result at the place s = 0 is
// by definition the analysis of the original model at infinity. The returned
// model's variable is the local parameter s.
WeierstrassModel chart_at_infinity(const WeierstrassModel& m);

// Completed-square (p != 2) / completed-cube (p != 2,3) form; non-destructive.
WeierstrassModel short_form(const WeierstrassModel& m);

std::string model_text(const WeierstrassModel& m);

}  // namespace kodaira

#endif
