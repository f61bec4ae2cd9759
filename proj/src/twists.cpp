#include "kodaira/twists.hpp"

#include "kodaira/textio.hpp"

namespace kodaira {

TwistParameter TwistParameter::forModel(const WeierstrassModel& m, FqRat d) {
  TwistParameter t{m.p() == 2 ? Mode::ArtinSchreierClass : Mode::MultiplicativeClass,
                   std::move(d)};
  if (t.mode == Mode::MultiplicativeClass && t.d.isZero())
    fail(errc::zero_twist, "twist parameter must be nonzero when p != 2");
  return t;
}

WeierstrassModel quadratic_twist(const WeierstrassModel& m, const TwistParameter& tw) {
  const FieldPtr& k = m.k();
  const FqRat& d = tw.d;
  if (m.p() == 2) {
    if (tw.mode != TwistParameter::Mode::ArtinSchreierClass)
      fail(errc::mode_mismatch, "p = 2 needs an Artin-Schreier class parameter");
    return WeierstrassModel(k, m.a1(), m.a2() + d * m.a1() * m.a1(), m.a3(), m.a4(),
                            m.a6() + d * m.a3() * m.a3());
  }
  if (tw.mode != TwistParameter::Mode::MultiplicativeClass)
    fail(errc::mode_mismatch, "p != 2 needs a multiplicative class parameter");
  if (d.isZero()) fail(errc::zero_twist, "twist by zero");
  WeierstrassModel s = short_form(m);
  return WeierstrassModel(k, FqRat(k->zero()), d * s.a2(), FqRat(k->zero()), d * d * s.a4(),
                          d * d * d * s.a6());
}

namespace {

// Strip Artin-Schreier images: repeatedly remove even-order pole parts at
// every pole (including infinity) using c with c^2 matching the leading term.
// Over the algebraic closure the class is trivial iff nothing but a constant
// remains.
bool artin_schreier_trivial(FqRat r, Rng& rng) {
  const FieldPtr k = r.zeroC().field();
  for (int guard = 0; guard < 4096; ++guard) {
    if (r.isZero()) return true;
    if (r.isConstant()) return true;  // geometric statement: F_pbar is AS-closed

    // Find a pole of even order (finite or infinite).
    std::optional<Place> pole;
    long order = 0;
    if (r.den().deg() > 0) {
      for (auto& [pi, mult] : factorize(r.den(), rng).factors) {
        (void)mult;
        Place v = Place::finiteUnchecked(pi);
        long val = valuation(r, v);
        if (val < 0 && (-val) % 2 == 0) {
          pole = v;
          order = -val;
          break;
        }
      }
    }
    if (!pole) {
      Place inf = Place::infinity(k);
      long val = valuation(r, inf);
      if (val < 0 && (-val) % 2 == 0) {
        pole = inf;
        order = -val;
      }
    }
    if (!pole) {
      // Only odd-order poles (and a constant part) remain.
      bool has_pole = r.den().deg() > 0 || valuation(r, Place::infinity(k)) < 0;
      return !has_pole;
    }

    LocalRing ring(*pole, rng);
    FieldElement lead = ring.leadingCoefficient(r);
    // c = sqrt(lead) / pi^{order/2}; subtract c^2 + c.
    FqRat c = ring.lift(lead.pthRoot());
    FqRat u = pole->uniformizer();
    for (long i = 0; i < order / 2; ++i) c = c / u;
    r = r - c * c - c;
    require_internal(valuation(r, *pole) > -order, "Artin-Schreier stripping must reduce the pole");
  }
  fail(errc::internal, "Artin-Schreier reduction did not terminate");
}

}  // namespace

bool twist_is_trivial(const TwistParameter& d1, const TwistParameter& d2, Rng& rng) {
  if (d1.mode != d2.mode) fail(errc::mode_mismatch, "twist parameters of different modes");
  if (d1.mode == TwistParameter::Mode::MultiplicativeClass) {
    if (d1.d.isZero() || d2.d.isZero()) fail(errc::zero_twist, "twist class of zero");
    FqRat r = d1.d / d2.d;
    // Geometric square class: every valuation must be even (the leading unit
    // is a square over the closed constant field).
    if (r.isConstant()) return true;
    for (const FqPoly* f : {&r.num(), &r.den()}) {
      if (f->deg() < 1) continue;
      for (auto& [pi, mult] : factorize(*f, rng).factors) {
        (void)mult;
        if (valuation(r, Place::finiteUnchecked(pi)) % 2 != 0) return false;
      }
    }
    return valuation(r, Place::infinity(r.zeroC().field())) % 2 == 0;
  }
  return artin_schreier_trivial(d1.d - d2.d, rng);
}

WeierstrassModel frobenius_pullback(const WeierstrassModel& m, int iterations) {
  if (iterations < 0) fail(errc::zero_input, "iterations must be >= 0");
  if (iterations == 0) return m;
  const FieldPtr& k = m.k();
  uint64_t q = 1;
  for (int i = 0; i < iterations; ++i) {
    require_internal(q <= 100000 / m.p(), "Frobenius pullback exponent too large");
    q *= m.p();
  }
  auto subst = [&](const FqRat& r) {
    auto blow = [&](const FqPoly& f) {
      std::vector<FieldElement> cs(static_cast<size_t>(f.deg() * static_cast<long>(q)) + 1,
                                   k->zero());
      for (long i = 0; i <= f.deg(); ++i)
        cs[static_cast<size_t>(i) * q] = f[static_cast<size_t>(i)];
      return FqPoly(k->zero(), std::move(cs));
    };
    if (r.isZero()) return r;
    return FqRat(blow(r.num()), blow(r.den()));
  };
  return WeierstrassModel(k, subst(m.a1()), subst(m.a2()), subst(m.a3()), subst(m.a4()),
                          subst(m.a6()));
}

TwistParameter construct_twist_II_to_III(const WeierstrassModel& m, const Place& v, Rng& rng) {
  if (m.p() != 2) fail(errc::not_applicable, "construction requires characteristic 2");
  auto [mm, change] = integral_minimal_at(m, v, rng);
  (void)change;
  LocalFiberData d = tate_local(mm, v, rng);
  if (d.type.kind != FiberKind::II || d.swan != 2)
    fail(errc::not_applicable,
         "fiber at " + place_text(v) + " is " + type_pretty(d.type) + " with swan " +
             std::to_string(d.swan) + "; need II with swan 2");
  if (valuation(mm.a3(), v) != 1)
    fail(errc::not_applicable, "v(a3) = " + std::to_string(valuation(mm.a3(), v)) +
                                   " on the minimal model; need exactly 1");
  if (valuation(mm.a6(), v) != 1)
    fail(errc::not_applicable, "v(a6) = " + std::to_string(valuation(mm.a6(), v)) +
                                   " on the minimal model; need exactly 1");
  LocalRing ring(v, rng);
  FieldElement c3 = ring.leadingCoefficient(mm.a3());
  FieldElement c6 = ring.leadingCoefficient(mm.a6());
  FqRat dparam = ring.lift(c6 / (c3 * c3)) / v.uniformizer();
  return TwistParameter{TwistParameter::Mode::ArtinSchreierClass, dparam};
}

}  // namespace kodaira
