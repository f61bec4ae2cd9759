#include "kodaira/weierstrass.hpp"

#include "kodaira/textio.hpp"

namespace kodaira {

namespace {

FqRat rc(const FieldPtr& k, long long n) { return FqRat(FqPoly::constant(k->fromInt(n))); }

}  // namespace

WeierstrassModel::WeierstrassModel(FieldPtr k, FqRat a1, FqRat a2, FqRat a3, FqRat a4, FqRat a6)
    : k_(std::move(k)), a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)),
      a4_(std::move(a4)), a6_(std::move(a6)) {
  StandardQuantities q = standard_quantities(*this);
  if (q.delta.isZero())
    fail(errc::singular_model, "discriminant vanishes identically; the generic fiber is singular");
  // Universal identities, asserted for every constructed model.
  require_internal(rc(k_, 4) * q.b8 == q.b2 * q.b6 - q.b4 * q.b4, "4*b8 = b2*b6 - b4^2");
  require_internal(rc(k_, 1728) * q.delta == q.c4 * q.c4 * q.c4 - q.c6 * q.c6,
                   "1728*Delta = c4^3 - c6^2");
}

bool WeierstrassModel::operator==(const WeierstrassModel& o) const {
  return k_->same(*o.k_) && a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ &&
         a6_ == o.a6_;
}

StandardQuantities standard_quantities(const WeierstrassModel& m) {
  const FieldPtr& k = m.k();
  const FqRat &a1 = m.a1(), &a2 = m.a2(), &a3 = m.a3(), &a4 = m.a4(), &a6 = m.a6();
  StandardQuantities q;
  q.b2 = a1 * a1 + rc(k, 4) * a2;
  q.b4 = rc(k, 2) * a4 + a1 * a3;
  q.b6 = a3 * a3 + rc(k, 4) * a6;
  q.b8 = a1 * a1 * a6 + rc(k, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  q.c4 = q.b2 * q.b2 - rc(k, 24) * q.b4;
  q.c6 = -(q.b2 * q.b2 * q.b2) + rc(k, 36) * q.b2 * q.b4 - rc(k, 216) * q.b6;
  q.delta = -(q.b2 * q.b2 * q.b8) - rc(k, 8) * q.b4 * q.b4 * q.b4 - rc(k, 27) * q.b6 * q.b6 +
            rc(k, 9) * q.b2 * q.b4 * q.b6;
  if (!q.delta.isZero()) q.j = q.c4 * q.c4 * q.c4 / q.delta;
  else q.j = FqRat(k->zero());
  return q;
}

CoordinateChange CoordinateChange::identity(const FieldPtr& k) {
  FqRat zero(k->zero());
  return CoordinateChange{FqRat(FqPoly::constant(k->one())), zero, zero, zero};
}

CoordinateChange CoordinateChange::scale(const FqRat& u) {
  FqRat zero(u.zeroC());
  return CoordinateChange{u, zero, zero, zero};
}

bool CoordinateChange::isIdentity() const {
  return u == u.oneLike() && r.isZero() && s.isZero() && w.isZero();
}

CoordinateChange CoordinateChange::then(const CoordinateChange& second) const {
  // x = u1^2 x1 + r1 composed with x1 = u2^2 x2 + r2, likewise for y.
  const CoordinateChange& c1 = *this;
  const CoordinateChange& c2 = second;
  CoordinateChange out{c1.u * c2.u,
                       c1.r + c1.u * c1.u * c2.r,
                       c1.s + c1.u * c2.s,
                       c1.w + c1.u * c1.u * c1.s * c2.r + c1.u * c1.u * c1.u * c2.w};
  return out;
}

CoordinateChange CoordinateChange::inverse() const {
  FqRat iu = u.inverse();
  FqRat iu2 = iu * iu;
  FqRat iu3 = iu2 * iu;
  return CoordinateChange{iu, -r * iu2, -s * iu, (s * r - w) * iu3};
}

WeierstrassModel apply_change(const WeierstrassModel& m, const CoordinateChange& c) {
  if (c.u.isZero()) fail(errc::zero_input, "coordinate change with u = 0");
  const FieldPtr& k = m.k();
  const FqRat &a1 = m.a1(), &a2 = m.a2(), &a3 = m.a3(), &a4 = m.a4(), &a6 = m.a6();
  const FqRat &u = c.u, &r = c.r, &s = c.s, &w = c.w;
  FqRat iu = u.inverse();
  FqRat iu2 = iu * iu, iu3 = iu2 * iu, iu4 = iu2 * iu2, iu6 = iu3 * iu3;
  FqRat two = rc(k, 2), three = rc(k, 3);
  FqRat na1 = (a1 + two * s) * iu;
  FqRat na2 = (a2 - s * a1 + three * r - s * s) * iu2;
  FqRat na3 = (a3 + r * a1 + two * w) * iu3;
  FqRat na4 = (a4 - s * a3 + two * r * a2 - (w + r * s) * a1 + three * r * r - two * s * w) * iu4;
  FqRat na6 = (a6 + r * a4 + r * r * a2 + r * r * r - w * a3 - w * w - r * w * a1) * iu6;
  return WeierstrassModel(k, na1, na2, na3, na4, na6);
}

WeierstrassModel short_form(const WeierstrassModel& m) {
  const FieldPtr& k = m.k();
  if (k->p() == 2) return m;
  StandardQuantities q = standard_quantities(m);
  FqRat zero(k->zero());
  FqRat i4 = rc(k, 4).inverse();
  FqRat i2 = rc(k, 2).inverse();
  // y -> y - (a1 x + a3)/2: y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4.
  WeierstrassModel sq(k, zero, q.b2 * i4, zero, q.b4 * i2, q.b6 * i4);
  if (k->p() == 3) return sq;
  // x -> x - b2/12 completes the cube: y^2 = x^3 - (c4/48) x - c6/864.
  FqRat i48 = rc(k, 48).inverse();
  FqRat i864 = rc(k, 864).inverse();
  return WeierstrassModel(k, zero, zero, zero, -q.c4 * i48, -q.c6 * i864);
}

namespace {

long ceil_div(long a, long b) { return (a >= 0) ? (a + b - 1) / b : -((-a) / b); }

}  // namespace

WeierstrassModel chart_at_infinity(const WeierstrassModel& m) {
  const FieldPtr& k = m.k();
  auto invert_var = [&](const FqRat& r) {
    // r(1/s) = rev(num)(s) * s^{deg den - deg num} / rev(den)(s)
    auto rev = [&](const FqPoly& f) {
      std::vector<FieldElement> cs(f.coeffs());
      std::reverse(cs.begin(), cs.end());
      return FqPoly(k->zero(), std::move(cs));
    };
    if (r.isZero()) return r;
    long dn = r.num().deg(), dd = r.den().deg();
    FqPoly n = rev(r.num()), d = rev(r.den());
    if (dd >= dn) n = n.shifted(static_cast<size_t>(dd - dn));
    else d = d.shifted(static_cast<size_t>(dn - dd));
    return FqRat(n, d);
  };
  FqRat a1 = invert_var(m.a1()), a2 = invert_var(m.a2()), a3 = invert_var(m.a3()),
        a4 = invert_var(m.a4()), a6 = invert_var(m.a6());
  Place s0 = Place::finiteUnchecked(FqPoly::gen(k->zero()));
  long w = 0;
  const int weights[5] = {1, 2, 3, 4, 6};
  const FqRat* as[5] = {&a1, &a2, &a3, &a4, &a6};
  for (int i = 0; i < 5; ++i) {
    if (as[i]->isZero()) continue;
    long val = valuation(*as[i], s0);
    if (val < 0) w = std::max(w, ceil_div(-val, weights[i]));
  }
  FqRat s(FqPoly::gen(k->zero()));
  FqRat sw = FqRat(FqPoly::constant(k->one()));
  for (long i = 0; i < w; ++i) sw = sw * s;
  // u = s^-w scales a_i by s^{i*w}.
  FqRat m1 = sw, m2 = sw * sw, m3 = m2 * sw, m4 = m2 * m2, m6 = m3 * m3;
  return WeierstrassModel(k, a1 * m1, a2 * m2, a3 * m3, a4 * m4, a6 * m6);
}

std::string model_text(const WeierstrassModel& m) {
  std::string out = "p=" + std::to_string(m.p()) + "\n";
  if (!m.k()->isPrime()) {
    FqPoly mod(m.k()->base()->zero(), std::vector<FieldElement>(m.k()->modulus()));
    out += "fieldmod=" + poly_text(mod, "x") + "\n";
  }
  out += "a1=" + rat_text(m.a1()) + "\n";
  out += "a2=" + rat_text(m.a2()) + "\n";
  out += "a3=" + rat_text(m.a3()) + "\n";
  out += "a4=" + rat_text(m.a4()) + "\n";
  out += "a6=" + rat_text(m.a6()) + "\n";
  return out;
}

}  // namespace kodaira
