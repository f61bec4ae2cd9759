#include "kodaira/place.hpp"

#include "kodaira/textio.hpp"

namespace kodaira {

Place Place::finite(FqPoly monic_irreducible) {
  if (monic_irreducible.deg() < 1 || !monic_irreducible.lead().isOne() ||
      (monic_irreducible.deg() > 1 && !is_irreducible(monic_irreducible)))
    fail(errc::not_irreducible, "a finite place needs a monic irreducible polynomial");
  return finiteUnchecked(std::move(monic_irreducible));
}

Place Place::finiteUnchecked(FqPoly monic_irreducible) {
  Place p;
  p.infinite_ = false;
  p.k_ = monic_irreducible.zeroC().field();
  p.pi_ = std::move(monic_irreducible);
  return p;
}

Place Place::infinity(FieldPtr k) {
  Place p;
  p.infinite_ = true;
  p.k_ = std::move(k);
  p.pi_ = FqPoly(p.k_->zero());
  return p;
}

FqRat Place::uniformizer() const {
  if (infinite_) {
    FqPoly one = FqPoly::constant(k_->one());
    return FqRat(one, FqPoly::gen(k_->zero()));  // 1/t
  }
  return FqRat(pi_);
}

bool Place::operator==(const Place& o) const {
  if (infinite_ != o.infinite_) return false;
  if (infinite_) return true;
  return pi_ == o.pi_;
}

bool Place::operator<(const Place& o) const {
  if (infinite_ != o.infinite_) return !infinite_;  // finite places first
  if (infinite_) return false;
  return poly_less(pi_, o.pi_);
}

namespace {

long multiplicity(FqPoly f, const FqPoly& pi) {
  long n = 0;
  while (f.deg() >= pi.deg()) {
    FqPoly q(f.zeroC()), r(f.zeroC());
    FqPoly::divmod(f, pi, q, r);
    if (!r.isZero()) break;
    f = q;
    ++n;
  }
  return n;
}

}  // namespace

long valuation(const FqPoly& f, const Place& v) {
  if (f.isZero()) return VAL_INF;
  if (v.isInfinity()) return -f.deg();
  return multiplicity(f, v.pi());
}

long valuation(const FqRat& r, const Place& v) {
  if (r.isZero()) return VAL_INF;
  return valuation(r.num(), v) - valuation(r.den(), v);
}

LocalRing::LocalRing(const Place& v, Rng& rng) : v_(v) {
  (void)rng;
  if (v.isInfinity() || v.degree() == 1) {
    R_ = v.baseField();
  } else {
    std::vector<FieldElement> cs(v.pi().coeffs());
    R_ = Field::extension_unchecked(v.baseField(), std::move(cs));
  }
}

FieldElement LocalRing::residue(const FqRat& r) const {
  long val = valuation(r, v_);
  if (val == VAL_INF) return R_->zero();
  require_internal(val >= 0, "residue of a function with a pole");
  if (v_.isInfinity()) {
    if (r.num().deg() < r.den().deg()) return R_->zero();
    return r.num().lead() / r.den().lead();
  }
  if (v_.degree() == 1) {
    FieldElement root = -v_.pi()[0];
    return r.num().eval(root) / r.den().eval(root);
  }
  auto to_R = [&](const FqPoly& f) {
    FqPoly rem = f % v_.pi();
    return R_->fromBaseCoeffs(std::vector<FieldElement>(rem.coeffs()));
  };
  return to_R(r.num()) / to_R(r.den());
}

FqRat LocalRing::lift(const FieldElement& e) const {
  const FieldPtr k = v_.baseField();
  if (v_.isInfinity() || v_.degree() == 1) {
    require_internal(e.field()->same(*k), "lift expects a residue-field element");
    return FqRat(FqPoly::constant(e));
  }
  require_internal(e.field()->same(*R_), "lift expects a residue-field element");
  std::vector<FieldElement> cs(e.extCoeffs());
  return FqRat(FqPoly(k->zero(), std::move(cs)));
}

FieldElement LocalRing::embed(const FieldElement& base_elt) const {
  if (R_->same(*base_elt.field())) return base_elt;
  require_internal(base_elt.field()->same(*v_.baseField()), "embed expects a base-field element");
  return R_->fromBaseCoeffs({base_elt});
}

FieldElement LocalRing::leadingCoefficient(const FqRat& r) const {
  if (r.isZero()) fail(errc::zero_input, "leading coefficient of zero");
  long val = valuation(r, v_);
  FqRat shifted = r;
  FqRat u = v_.uniformizer();
  if (val > 0)
    for (long i = 0; i < val; ++i) shifted = shifted / u;
  else
    for (long i = 0; i < -val; ++i) shifted = shifted * u;
  return residue(shifted);
}

LocalExpansion local_expand(const FqRat& r, const Place& v, int precision, Rng& rng) {
  if (precision < 1) fail(errc::zero_input, "precision must be >= 1");
  LocalExpansion out;
  if (r.isZero()) {
    out.zero = true;
    return out;
  }
  LocalRing ring(v, rng);
  const FqRat u = v.uniformizer();
  long val = valuation(r, v);
  out.lead = val;
  FqRat cur = r;
  if (val > 0)
    for (long i = 0; i < val; ++i) cur = cur / u;
  else
    for (long i = 0; i < -val; ++i) cur = cur * u;
  for (int i = 0; i < precision; ++i) {
    FieldElement c = ring.residue(cur);
    out.coeffs.push_back(c);
    cur = (cur - ring.lift(c)) / u;
    if (cur.isZero()) {
      // exact termination: pad with zeros
      while (static_cast<int>(out.coeffs.size()) < precision) out.coeffs.push_back(ring.residueField()->zero());
      break;
    }
  }
  out.coeffs.resize(static_cast<size_t>(precision), ring.residueField()->zero());
  return out;
}

std::string place_text(const Place& v) {
  if (v.isInfinity()) return "inf";
  return poly_text(v.pi(), "t");
}

}  // namespace kodaira
