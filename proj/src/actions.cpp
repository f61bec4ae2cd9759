#include "kodaira/actions.hpp"

#include <algorithm>
#include <sstream>

#include "kodaira/invariants.hpp"
#include "kodaira/textio.hpp"

namespace kodaira {

namespace {

FqRat frc(const FieldPtr& k, long long n) { return FqRat(FqPoly::constant(k->fromInt(n))); }

// ----- chart polynomial construction -------------------------------------

void add_coeff_times(ChartPoly& W, const FqRat& coeff, Mono base, int sign,
                     const FieldPtr& k) {
  if (coeff.isZero()) return;
  require_internal(coeff.isPolynomial(), "chart polynomial needs polynomial coefficients");
  FqPoly p = coeff.num().scaled(coeff.den()[0].inverse());
  for (long i = 0; i <= p.deg(); ++i) {
    const FieldElement& c = p[static_cast<size_t>(i)];
    if (c.isZero()) continue;
    Mono m = base;
    m[VT] = static_cast<uint16_t>(m[VT] + i);
    W.addTerm(m, sign > 0 ? c : -c);
  }
  (void)k;
}

Mono mono_of(std::initializer_list<std::pair<int, int>> exps) {
  Mono m{};
  for (auto [v, e] : exps) m[v] = static_cast<uint16_t>(e);
  return m;
}

}  // namespace

ChartPoly chart_polynomial(const WeierstrassModel& m, bool homogeneous) {
  const FieldPtr& k = m.k();
  ChartPoly W(k->zero());
  if (!homogeneous) {
    W.addTerm(mono_of({{VY, 2}}), k->one());
    add_coeff_times(W, m.a1(), mono_of({{VX, 1}, {VY, 1}}), +1, k);
    add_coeff_times(W, m.a3(), mono_of({{VY, 1}}), +1, k);
    W.addTerm(mono_of({{VX, 3}}), -k->one());
    add_coeff_times(W, m.a2(), mono_of({{VX, 2}}), -1, k);
    add_coeff_times(W, m.a4(), mono_of({{VX, 1}}), -1, k);
    add_coeff_times(W, m.a6(), Mono{}, -1, k);
    return W;
  }
  // Weighted homogenization in P(1,1,2,3): s, t of weight 1, x of weight 2,
  // y of weight 3, with w minimal so every coefficient homogenizes.
  const FqRat* as[5] = {&m.a1(), &m.a2(), &m.a3(), &m.a4(), &m.a6()};
  const int weights[5] = {1, 2, 3, 4, 6};
  long w = 1;
  for (int i = 0; i < 5; ++i) {
    if (as[i]->isZero()) continue;
    require_internal(as[i]->isPolynomial(), "chart polynomial needs polynomial coefficients");
    long d = as[i]->num().deg();
    w = std::max(w, (d + weights[i] - 1) / weights[i]);
  }
  auto add_homog = [&](const FqRat& coeff, Mono base, int sign, int weight) {
    if (coeff.isZero()) return;
    FqPoly p = coeff.num().scaled(coeff.den()[0].inverse());
    for (long i = 0; i <= p.deg(); ++i) {
      const FieldElement& c = p[static_cast<size_t>(i)];
      if (c.isZero()) continue;
      Mono mm = base;
      mm[VT] = static_cast<uint16_t>(mm[VT] + i);
      mm[VS] = static_cast<uint16_t>(mm[VS] + (weight * w - i));
      W.addTerm(mm, sign > 0 ? c : -c);
    }
  };
  W.addTerm(mono_of({{VY, 2}}), k->one());
  add_homog(m.a1(), mono_of({{VX, 1}, {VY, 1}}), +1, 1);
  add_homog(m.a3(), mono_of({{VY, 1}}), +1, 3);
  W.addTerm(mono_of({{VX, 3}}), -k->one());
  add_homog(m.a2(), mono_of({{VX, 2}}), -1, 2);
  add_homog(m.a4(), mono_of({{VX, 1}}), -1, 4);
  add_homog(m.a6(), Mono{}, -1, 6);
  return W;
}

namespace {

// Plane-cubic chart in P^2 over k[t]: y^2 z + a1 xyz + a3 y z^2 - x^3 - ...
ChartPoly chart_polynomial_z(const WeierstrassModel& m) {
  const FieldPtr& k = m.k();
  ChartPoly W(k->zero());
  W.addTerm(mono_of({{VY, 2}, {VZ, 1}}), k->one());
  add_coeff_times(W, m.a1(), mono_of({{VX, 1}, {VY, 1}, {VZ, 1}}), +1, k);
  add_coeff_times(W, m.a3(), mono_of({{VY, 1}, {VZ, 2}}), +1, k);
  W.addTerm(mono_of({{VX, 3}}), -k->one());
  add_coeff_times(W, m.a2(), mono_of({{VX, 2}, {VZ, 1}}), -1, k);
  add_coeff_times(W, m.a4(), mono_of({{VX, 1}, {VZ, 2}}), -1, k);
  add_coeff_times(W, m.a6(), mono_of({{VZ, 3}}), -1, k);
  return W;
}

ChartPoly chart_for(const WeierstrassModel& m, const Coaction& c) {
  if (c.usesS()) return chart_polynomial(m, true);
  if (c.subst.count(VZ)) return chart_polynomial_z(m);
  return chart_polynomial(m, false);
}

FieldElement identity_param_value(const Coaction& c, const FieldPtr& k) {
  return c.kind == Coaction::Kind::Mu ? k->one() : k->zero();
}

// Substitution list for the coaction (coordinates only).
std::vector<std::pair<int, ChartPoly>> subst_list(const Coaction& c) {
  std::vector<std::pair<int, ChartPoly>> subs;
  for (const auto& [v, poly] : c.subst) subs.emplace_back(v, poly);
  return subs;
}

std::string leading_term_text(const ChartPoly& q) {
  require_internal(!q.isZero(), "witness of a zero residual");
  auto it = q.terms().rbegin();
  ChartPoly one_term(q.zeroC());
  one_term.addTerm(it->first, it->second);
  return one_term.text();
}

void check_identity_at_identity(const WeierstrassModel& m, const Coaction& c) {
  const FieldPtr& k = m.k();
  ChartPoly idval = ChartPoly::constant(identity_param_value(c, k));
  for (const auto& [v, poly] : c.subst) {
    ChartPoly at_id = poly.substituted({{VA, idval}});
    if (at_id != ChartPoly::var(k->zero(), v))
      fail(errc::malformed_coaction,
           std::string("substitution for ") + var_name(v) +
               " does not reduce to the identity at the identity parameter");
  }
}

}  // namespace

VerifyResult verify_coaction(const WeierstrassModel& m, const Coaction& c) {
  check_identity_at_identity(m, c);
  ChartPoly W = chart_for(m, c);
  ChartPoly Wp = W.substituted(subst_list(c)).reduced(VA, c.relation(), c.paramExponent);
  ChartPoly r = Wp.remainder(W);
  r = r.reduced(VA, c.relation(), c.paramExponent);
  if (r.isZero()) return {true, ""};
  return {false, leading_term_text(r)};
}

VerifyResult verify_coaction_at(const WeierstrassModel& m, const Coaction& c,
                                const FieldElement& value) {
  check_identity_at_identity(m, c);
  if (!value.field()->same(*m.k()))
    fail(errc::field_mismatch, "parameter value must lie in the model's field");
  if (c.kind == Coaction::Kind::Alpha && !value.isZero())
    fail(errc::zero_input, "alpha-case parameters square to zero; sample with value 0 only");
  ChartPoly W = chart_for(m, c);
  auto subs = subst_list(c);
  subs.emplace_back(VA, ChartPoly::constant(value));
  ChartPoly Wp = W.substituted(subs);
  ChartPoly r = Wp.remainder(W);
  if (r.isZero()) return {true, ""};
  return {false, leading_term_text(r)};
}

VerifyResult coaction_group_law(const Coaction& c, uint64_t p) {
  (void)p;
  auto rel = c.relation();
  const int e = c.paramExponent;
  // sigma_b: the same formulas with the parameter renamed to b.
  std::vector<std::pair<int, ChartPoly>> sigma_b;
  for (const auto& [v, poly] : c.subst) {
    ChartPoly zb(poly.zeroC());
    ChartPoly renamed = poly.substituted({{VA, ChartPoly::var(poly.zeroC(), VB)}});
    sigma_b.emplace_back(v, renamed);
  }
  auto reduce_both = [&](ChartPoly q) {
    return q.reduced(VA, rel, e).reduced(VB, rel, e);
  };
  for (const auto& [v, poly] : c.subst) {
    // Compose: apply sigma_a, then substitute the coordinates by sigma_b.
    ChartPoly composed = poly.substituted(sigma_b);
    // Combined parameter: a + b (alpha / Ga) or a * b (mu).
    ChartPoly a = ChartPoly::var(poly.zeroC(), VA);
    ChartPoly b = ChartPoly::var(poly.zeroC(), VB);
    ChartPoly combined = c.kind == Coaction::Kind::Mu ? a * b : a + b;
    ChartPoly target = poly.substituted({{VA, combined}});
    ChartPoly diff = reduce_both(composed - target);
    if (!diff.isZero()) return {false, leading_term_text(diff)};
  }
  return {true, ""};
}

Coaction conjugate_coaction(const Coaction& c, const CoordinateChange& change) {
  if (c.usesS() || c.subst.count(VZ))
    fail(errc::unsupported, "conjugation is implemented for affine (t,x,y) coactions");
  const FqRat &u = change.u, &r = change.r, &s = change.s, &w = change.w;
  if (!u.isConstant() || u.isZero())
    fail(errc::unsupported, "conjugation needs a constant nonzero u");
  for (const FqRat* f : {&r, &s, &w})
    if (!f->isPolynomial()) fail(errc::unsupported, "conjugation needs polynomial r, s, w");
  const FieldPtr k = u.zeroC().field();
  const FieldElement uc = u.num()[0] / u.den()[0];

  auto poly_in_t = [&](const FqRat& f) {
    ChartPoly out(k->zero());
    add_coeff_times(out, f, Mono{}, +1, k);
    return out;
  };
  ChartPoly rp = poly_in_t(r), sp = poly_in_t(s), wp = poly_in_t(w);
  ChartPoly X = ChartPoly::var(k->zero(), VX), Y = ChartPoly::var(k->zero(), VY);
  ChartPoly u2 = ChartPoly::constant(uc * uc), u3 = ChartPoly::constant(uc * uc * uc);

  // Pullback of coordinates along the change.
  std::vector<std::pair<int, ChartPoly>> phi = {
      {VX, u2 * X + rp}, {VY, u3 * Y + u2 * sp * X + wp}};

  auto get = [&](int v) {
    auto it = c.subst.find(v);
    if (it != c.subst.end()) return it->second;
    return ChartPoly::var(k->zero(), v);
  };
  ChartPoly st = get(VT).substituted(phi);
  ChartPoly sx = get(VX).substituted(phi);
  ChartPoly sy = get(VY).substituted(phi);
  auto eval_at_t = [&](const ChartPoly& f, const ChartPoly& arg) {
    return f.substituted({{VT, arg}});
  };
  FieldElement iu2 = (uc * uc).inverse();
  FieldElement iu3 = (uc * uc * uc).inverse();
  ChartPoly nx = (sx - eval_at_t(rp, st)).scaled(iu2);
  ChartPoly ny = (sy - eval_at_t(wp, st) - eval_at_t(sp, st) * (sx - eval_at_t(rp, st)))
                     .scaled(iu3);
  Coaction out = c;
  out.subst.clear();
  out.subst.emplace(VT, st);
  out.subst.emplace(VX, nx);
  out.subst.emplace(VY, ny);
  return out;
}

Coaction parse_coaction(const std::string& text, const FieldPtr& k) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Coaction c;
  bool have_relation = false;
  auto strip = [](std::string v) {
    size_t b = v.find_first_not_of(" \t\r");
    size_t e = v.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    if (strip(line).empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("expected key = value", lineno, 1);
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key == "relation") {
      have_relation = true;
      if (val == "free" || val == "none") {
        c.kind = Coaction::Kind::Ga;
        c.paramExponent = 1;
        continue;
      }
      // a^<e>=0 or a^<e>=1
      size_t caret = val.find('^');
      size_t eq2 = val.find('=', caret);
      if (caret == std::string::npos || eq2 == std::string::npos || val.substr(0, caret) != "a")
        throw parse_error("relation must be 'a^<e>=0', 'a^<e>=1', or 'free'", lineno, 1);
      int e = std::stoi(strip(val.substr(caret + 1, eq2 - caret - 1)));
      std::string rhs = strip(val.substr(eq2 + 1));
      if (e < 1) throw parse_error("relation exponent must be positive", lineno, 1);
      c.paramExponent = e;
      if (rhs == "0") c.kind = Coaction::Kind::Alpha;
      else if (rhs == "1") c.kind = Coaction::Kind::Mu;
      else throw parse_error("relation right-hand side must be 0 or 1", lineno, 1);
      continue;
    }
    if (key.rfind("act.", 0) == 0 && key.size() == 5) {
      int var = -1;
      switch (key[4]) {
        case 's': var = VS; break;
        case 't': var = VT; break;
        case 'x': var = VX; break;
        case 'y': var = VY; break;
        case 'z': var = VZ; break;
        default: break;
      }
      if (var >= 0) {
        c.subst.emplace(var, parse_chart_poly(val, k));
        continue;
      }
    }
    throw parse_error("unknown key '" + key + "'", lineno, 1, errc::parse_unknown_key);
  }
  if (!have_relation) throw parse_error("missing relation", lineno, 1);
  if (c.subst.empty()) throw parse_error("missing act.* lines", lineno, 1);
  return c;
}

// ----- derivations ---------------------------------------------------------

namespace {

XRat xr_zero(const FieldPtr& k) { return XRat(FqRat(k->zero())); }
XRat xr_const(const FqRat& c) { return XRat(XPoly::constant(c)); }
XRat xr_x(const FieldPtr& k) { return XRat(XPoly::gen(FqRat(k->zero()))); }

// Partial derivatives of elements of k(t)(x).
XRat partial_x(const XRat& f) { return f.derivative(); }

XPoly poly_partial_t(const XPoly& f) {
  std::vector<FqRat> cs;
  for (long i = 0; i <= f.deg(); ++i) cs.push_back(f[static_cast<size_t>(i)].derivative());
  return XPoly(f.zeroC(), std::move(cs));
}

XRat partial_t(const XRat& f) {
  XPoly nt = poly_partial_t(f.num());
  XPoly dt = poly_partial_t(f.den());
  return XRat(nt * f.den() - f.num() * dt, f.den() * f.den());
}

// Function-field context: elements alpha + beta*y with y^2 + L y = C.
struct SurfCtx {
  explicit SurfCtx(const WeierstrassModel& m) : k(m.k()) {
    XRat x = xr_x(k);
    L = xr_const(m.a1()) * x + xr_const(m.a3());
    C = x * x * x + xr_const(m.a2()) * x * x + xr_const(m.a4()) * x + xr_const(m.a6());
    Wx = SurfFn{-(xr_const(frc(k, 3)) * x * x + xr_const(frc(k, 2)) * xr_const(m.a2()) * x +
                  xr_const(m.a4())),
                xr_const(m.a1())};
    Wy = SurfFn{L, xr_const(frc(k, 2))};
    Wt = SurfFn{-(xr_const(m.a2().derivative()) * x * x + xr_const(m.a4().derivative()) * x +
                  xr_const(m.a6().derivative())),
                xr_const(m.a1().derivative()) * x + xr_const(m.a3().derivative())};
  }

  FieldPtr k;
  XRat L, C;
  SurfFn Wx, Wy, Wt;

  SurfFn add(const SurfFn& f, const SurfFn& g) const { return {f.a + g.a, f.b + g.b}; }
  SurfFn sub(const SurfFn& f, const SurfFn& g) const { return {f.a - g.a, f.b - g.b}; }
  SurfFn mul(const SurfFn& f, const SurfFn& g) const {
    // (a1 + b1 y)(a2 + b2 y) with y^2 = -L y + C.
    XRat bb = f.b * g.b;
    return {f.a * g.a + bb * C, f.a * g.b + f.b * g.a - bb * L};
  }
  SurfFn scale(const SurfFn& f, const XRat& c) const { return {f.a * c, f.b * c}; }
  SurfFn inverse(const SurfFn& f) const {
    // Conjugate (a - bL) - b y; norm = f * conj lies in k(t,x).
    SurfFn conj{f.a - f.b * L, -f.b};
    SurfFn n = mul(f, conj);
    require_internal(n.b.isZero(), "norm must be y-free");
    if (n.a.isZero()) fail(errc::division_by_zero, "inverse of zero surface function");
    return scale(conj, n.a.inverse());
  }

  // D applied to alpha + beta y given the coordinate images.
  SurfFn applyD(const SurfFn& h, const XRat& Dt, const XRat& Dx, const SurfFn& Dy) const {
    SurfFn out{partial_t(h.a) * Dt + partial_x(h.a) * Dx,
               partial_t(h.b) * Dt + partial_x(h.b) * Dx};
    return add(out, scale(mul(SurfFn{xr_zero(k), xr_const(FqRat(FqPoly::constant(k->one())))},
                              Dy),
                          h.b));
  }
};

SurfFn derived_Dy(const SurfCtx& ctx, const XRat& Dt, const XRat& Dx) {
  // Tangency: Wy * Dy + Wx * Dx + Wt * Dt = 0.
  SurfFn rhs = ctx.add(ctx.scale(ctx.Wx, Dx), ctx.scale(ctx.Wt, Dt));
  return ctx.scale(ctx.mul(ctx.inverse(ctx.Wy), rhs), -xr_const(FqRat(FqPoly::constant(ctx.k->one()))).oneLike());
}

}  // namespace

Derivation derivation_from_coaction(const WeierstrassModel& m, const Coaction& c) {
  if (c.usesS() || c.subst.count(VZ))
    fail(errc::unsupported, "derivations come from affine (t,x,y) coactions");
  const FieldPtr& k = m.k();
  ChartPoly idval = ChartPoly::constant(identity_param_value(c, k));
  auto component = [&](int v) {
    auto it = c.subst.find(v);
    ChartPoly d = it == c.subst.end() ? ChartPoly(k->zero())
                                      : it->second.derivative(VA).substituted({{VA, idval}});
    return d;
  };
  auto to_xrat = [&](const ChartPoly& q) {
    XRat out = xr_zero(k);
    for (const auto& [mono, coeff] : q.terms()) {
      require_internal(mono[VY] == 0 && mono[VS] == 0 && mono[VZ] == 0 && mono[VA] == 0 &&
                           mono[VB] == 0,
                       "derivation component must live in k(t,x)");
      FqPoly tpow = FqPoly::constant(coeff);
      for (int i = 0; i < mono[VT]; ++i) tpow = tpow * FqPoly::gen(k->zero());
      XRat term = xr_const(FqRat(tpow));
      for (int i = 0; i < mono[VX]; ++i) term = term * xr_x(k);
      out = out + term;
    }
    return out;
  };
  Derivation D;
  D.Dt = to_xrat(component(VT));
  D.Dx = to_xrat(component(VX));
  ChartPoly dy = component(VY);
  if (!dy.isZero()) {
    // Allow an explicit y-linear component.
    XRat a = xr_zero(k), b = xr_zero(k);
    for (const auto& [mono, coeff] : dy.terms()) {
      Mono stripped = mono;
      bool has_y = mono[VY] > 0;
      require_internal(mono[VY] <= 1, "derivation y-component must be y-linear");
      stripped[VY] = 0;
      ChartPoly part(k->zero());
      part.addTerm(stripped, coeff);
      if (has_y) b = b + to_xrat(part);
      else a = a + to_xrat(part);
    }
    D.Dy = SurfFn{a, b};
  }
  return D;
}

PClosedResult classify_p_closed(const Derivation& D, const WeierstrassModel& m) {
  const uint64_t p = m.p();
  if (p > 50) fail(errc::unsupported, "p-fold iteration supports p <= 50");
  SurfCtx ctx(m);
  SurfFn Dy = D.Dy ? *D.Dy : derived_Dy(ctx, D.Dt, D.Dx);
  {
    SurfFn residual = ctx.add(ctx.mul(ctx.Wy, Dy),
                              ctx.add(ctx.scale(ctx.Wx, D.Dx), ctx.scale(ctx.Wt, D.Dt)));
    if (!residual.isZero())
      fail(errc::tangency_violated, "derivation is not tangent to the surface");
  }
  auto applyD = [&](const XRat& f) { return partial_t(f) * D.Dt + partial_x(f) * D.Dx; };
  XRat ft = D.Dt, fx = D.Dx;
  for (uint64_t i = 1; i < p; ++i) {
    ft = applyD(ft);
    fx = applyD(fx);
  }
  if (ft == D.Dt && fx == D.Dx) return {PClosedKind::Multiplicative, {}};
  if (ft.isZero() && fx.isZero()) return {PClosedKind::Additive, {}};
  XRat lambda = xr_zero(m.k());
  if (!D.Dt.isZero()) lambda = ft / D.Dt;
  else if (!D.Dx.isZero()) lambda = fx / D.Dx;
  else return {PClosedKind::Additive, {}};
  if (ft == lambda * D.Dt && fx == lambda * D.Dx)
    return {PClosedKind::PClosedWithLambda, lambda};
  return {PClosedKind::NotPClosed, {}};
}

// ----- zero-scheme margin ---------------------------------------------------

namespace {

// Embed an element of a lower field of a tower into the tower.
FieldElement embed_scalar(const FieldElement& e, const FieldPtr& K) {
  if (K->same(*e.field())) return e;
  require_internal(!K->isPrime(), "element does not live below the target field");
  return K->fromBaseCoeffs({embed_scalar(e, K->base())});
}

FieldElement eval_fqrat(const FqRat& f, const FieldElement& t0) {
  const FieldPtr K = t0.field();
  auto eval_poly = [&](const FqPoly& p) {
    FieldElement acc = K->zero();
    for (long i = p.deg(); i >= 0; --i)
      acc = acc * t0 + embed_scalar(p[static_cast<size_t>(i)], K);
    return acc;
  };
  FieldElement den = eval_poly(f.den());
  if (den.isZero()) fail(errc::not_applicable, "pole of a derivation component at a candidate zero");
  return eval_poly(f.num()) / den;
}

FieldElement eval_xrat(const XRat& f, const FieldElement& t0, const FieldElement& x0) {
  const FieldPtr K = t0.field();
  auto eval_xpoly = [&](const XPoly& p) {
    FieldElement acc = K->zero();
    for (long i = p.deg(); i >= 0; --i) acc = acc * x0 + eval_fqrat(p[static_cast<size_t>(i)], t0);
    return acc;
  };
  FieldElement den = eval_xpoly(f.den());
  if (den.isZero()) fail(errc::not_applicable, "pole of a derivation component at a candidate zero");
  return eval_xpoly(f.num()) / den;
}

// Content valuation of an XRat at a finite place: min over coefficients.
long content_valuation(const XRat& f, const Place& v) {
  if (f.isZero()) return VAL_INF;
  auto content = [&](const XPoly& p) {
    long best = VAL_INF;
    for (long i = 0; i <= p.deg(); ++i) {
      const FqRat& c = p[static_cast<size_t>(i)];
      if (c.isZero()) continue;
      best = std::min(best, valuation(c, v));
    }
    return best;
  };
  return content(f.num()) - content(f.den());
}

long content_valuation(const SurfFn& h, const Place& v) {
  return std::min(h.a.isZero() ? VAL_INF : content_valuation(h.a, v),
                  h.b.isZero() ? VAL_INF : content_valuation(h.b, v));
}

// Gather the t-content numerator of a surface function (for divisorial
// candidate places).
FqPoly content_numerator(const SurfFn& h, const FieldPtr& k) {
  FqPoly g(k->zero());
  auto fold = [&](const XRat& f) {
    if (f.isZero()) return;
    for (long i = 0; i <= f.num().deg(); ++i) {
      const FqRat& c = f.num()[static_cast<size_t>(i)];
      if (c.isZero()) continue;
      g = g.isZero() ? c.num() : gcd_poly(g, c.num());
    }
  };
  fold(h.a);
  fold(h.b);
  return g;
}

// Truncated bivariate power series over a field: coefficient of u^i v^j kept
// for i < prec, j < prec.
struct TPS2 {
  FieldPtr K;
  int prec;
  std::vector<std::vector<FieldElement>> c;  // c[j][i]

  TPS2(FieldPtr k, int p) : K(std::move(k)), prec(p) {}

  static TPS2 constant(const FieldPtr& k, int prec, const FieldElement& v) {
    TPS2 r(k, prec);
    if (!v.isZero()) r.set(0, 0, v);
    return r;
  }
  static TPS2 variable(const FieldPtr& k, int prec, bool u) {
    TPS2 r(k, prec);
    if (u) r.set(1, 0, k->one());
    else r.set(0, 1, k->one());
    return r;
  }

  FieldElement get(int i, int j) const {
    if (j >= static_cast<int>(c.size())) return K->zero();
    if (i >= static_cast<int>(c[static_cast<size_t>(j)].size())) return K->zero();
    return c[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  void set(int i, int j, const FieldElement& v) {
    if (i >= prec || j >= prec) return;
    if (j >= static_cast<int>(c.size())) c.resize(static_cast<size_t>(j) + 1);
    auto& row = c[static_cast<size_t>(j)];
    if (i >= static_cast<int>(row.size())) row.resize(static_cast<size_t>(i) + 1, K->zero());
    row[static_cast<size_t>(i)] = v;
  }
  bool isZero() const {
    for (const auto& row : c)
      for (const auto& v : row)
        if (!v.isZero()) return false;
    return true;
  }
  int vdeg() const {
    for (int j = static_cast<int>(c.size()) - 1; j >= 0; --j)
      for (const auto& v : c[static_cast<size_t>(j)])
        if (!v.isZero()) return j;
    return -1;
  }

  TPS2 operator+(const TPS2& o) const {
    TPS2 r = *this;
    for (int j = 0; j < static_cast<int>(o.c.size()); ++j)
      for (int i = 0; i < static_cast<int>(o.c[static_cast<size_t>(j)].size()); ++i)
        r.set(i, j, r.get(i, j) + o.get(i, j));
    return r;
  }
  TPS2 operator-(const TPS2& o) const {
    TPS2 r = *this;
    for (int j = 0; j < static_cast<int>(o.c.size()); ++j)
      for (int i = 0; i < static_cast<int>(o.c[static_cast<size_t>(j)].size()); ++i)
        r.set(i, j, r.get(i, j) - o.get(i, j));
    return r;
  }
  TPS2 operator*(const TPS2& o) const {
    TPS2 r(K, prec);
    for (int j1 = 0; j1 < static_cast<int>(c.size()) && j1 < prec; ++j1)
      for (int i1 = 0; i1 < static_cast<int>(c[static_cast<size_t>(j1)].size()) && i1 < prec; ++i1) {
        const FieldElement& a = c[static_cast<size_t>(j1)][static_cast<size_t>(i1)];
        if (a.isZero()) continue;
        for (int j2 = 0; j2 + j1 < prec && j2 < static_cast<int>(o.c.size()); ++j2)
          for (int i2 = 0; i2 + i1 < prec &&
                           i2 < static_cast<int>(o.c[static_cast<size_t>(j2)].size());
               ++i2) {
            const FieldElement& b = o.c[static_cast<size_t>(j2)][static_cast<size_t>(i2)];
            if (b.isZero()) continue;
            r.set(i1 + i2, j1 + j2, r.get(i1 + i2, j1 + j2) + a * b);
          }
      }
    return r;
  }
  // Multiplicative inverse (unit constant term).
  TPS2 inverseSeries() const {
    FieldElement c0 = get(0, 0);
    require_internal(!c0.isZero(), "series inverse needs a unit");
    TPS2 inv = constant(K, prec, c0.inverse());
    // Newton: inv <- inv * (2 - f * inv), doubling correct terms.
    TPS2 two = constant(K, prec, K->fromInt(2));
    for (int it = 0; it < 16; ++it) inv = inv * (two - *this * inv);
    return inv;
  }
};

// Evaluate a chart polynomial (vars t, x, y over k) at series arguments over
// an extension field.
TPS2 compose_chart(const ChartPoly& P, const FieldPtr& K, int prec, const TPS2& tt,
                   const TPS2& xx, const TPS2& yy) {
  std::array<std::vector<TPS2>, 3> pows;  // t, x, y powers
  const TPS2* bases[3] = {&tt, &xx, &yy};
  auto power_of = [&](int which, int e) -> const TPS2& {
    auto& cache = pows[static_cast<size_t>(which)];
    if (cache.empty()) cache.push_back(TPS2::constant(K, prec, K->one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *bases[which]);
    return cache[static_cast<size_t>(e)];
  };
  TPS2 out(K, prec);
  for (const auto& [mono, coeff] : P.terms()) {
    require_internal(mono[VS] == 0 && mono[VZ] == 0 && mono[VA] == 0 && mono[VB] == 0,
                     "chart polynomial in t, x, y expected");
    TPS2 term = TPS2::constant(K, prec, embed_scalar(coeff, K));
    if (mono[VT]) term = term * power_of(0, mono[VT]);
    if (mono[VX]) term = term * power_of(1, mono[VX]);
    if (mono[VY]) term = term * power_of(2, mono[VY]);
    out = out + term;
  }
  return out;
}

// ord_u of the v-resultant of two truncated series viewed as polynomials in v
// (fraction-free Bareiss over k'[u]). Returns VAL_INF when the determinant
// vanishes identically to this precision.
long resultant_ord(const TPS2& f, const TPS2& g, int prec) {
  using UPoly = Poly<FieldElement>;
  const FieldPtr K = f.K;
  int df = f.vdeg(), dg = g.vdeg();
  require_internal(df >= 0 && dg >= 0, "resultant of a zero series");
  if (df == 0 && dg == 0) return VAL_INF;  // no elimination possible
  auto coeff_poly = [&](const TPS2& h, int j) {
    std::vector<FieldElement> cs;
    for (int i = 0; i < prec; ++i) cs.push_back(h.get(i, j));
    return UPoly(K->zero(), std::move(cs));
  };
  int n = df + dg;
  if (n > 48) fail(errc::precision_cap, "resultant dimension exceeds the supported cap");
  std::vector<std::vector<UPoly>> M(static_cast<size_t>(n),
                                    std::vector<UPoly>(static_cast<size_t>(n), UPoly(K->zero())));
  // Sylvester: dg rows of f coefficients, df rows of g coefficients.
  for (int r = 0; r < dg; ++r)
    for (int j = 0; j <= df; ++j) M[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = coeff_poly(f, df - j);
  for (int r = 0; r < df; ++r)
    for (int j = 0; j <= dg; ++j)
      M[static_cast<size_t>(dg + r)][static_cast<size_t>(r + j)] = coeff_poly(g, dg - j);

  UPoly prev = UPoly::constant(K->one());
  for (int k = 0; k + 1 < n; ++k) {
    // Pivot.
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!M[static_cast<size_t>(i)][static_cast<size_t>(k)].isZero()) {
        piv = i;
        break;
      }
    if (piv < 0) return VAL_INF;
    if (piv != k) std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(k)]);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        UPoly num = M[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                        M[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                    M[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                        M[static_cast<size_t>(k)][static_cast<size_t>(j)];
        if (num.isZero()) {
          M[static_cast<size_t>(i)][static_cast<size_t>(j)] = num;
          continue;
        }
        UPoly q(K->zero()), r(K->zero());
        UPoly::divmod(num, prev, q, r);
        require_internal(r.isZero(), "Bareiss division must be exact");
        M[static_cast<size_t>(i)][static_cast<size_t>(j)] = q;
      }
      M[static_cast<size_t>(i)][static_cast<size_t>(k)] = UPoly(K->zero());
    }
    prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  const UPoly& det = M[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
  if (det.isZero()) return VAL_INF;
  for (long i = 0; i <= det.deg(); ++i)
    if (!det[static_cast<size_t>(i)].isZero()) return i;
  return VAL_INF;
}

struct ZeroPoint {
  FieldPtr K;                  // residue field of the point (a tower over k)
  FieldElement t0, x0, y0;
  FqPoly place_pi;             // minimal polynomial of t0 over k (the fiber place)
};

// Local length of (f1, f2) at the origin of the (u, v) chart, where the
// surface chart variable `solved` is expressed as a power series via Newton.
long local_length_at(const ZeroPoint& pt, const WeierstrassModel& m,
                     const std::vector<SurfFn>& comps, Rng& rng) {
  const FieldPtr K = pt.K;
  ChartPoly W = chart_polynomial(m, false);
  // Translate the point to the origin over K.
  auto shift = [&](int var, const FieldElement& val) {
    return ChartPoly::var(K->zero(), var) + ChartPoly::constant(val);
  };
  ChartPoly Wk(K->zero());
  for (const auto& [mono, coeff] : W.terms()) {
    Mono mm = mono;
    Wk.addTerm(mm, embed_scalar(coeff, K));
  }
  ChartPoly Wloc = Wk.substituted(
      {{VT, shift(VT, pt.t0)}, {VX, shift(VX, pt.x0)}, {VY, shift(VY, pt.y0)}});

  // Clear each component into A + B y with chart-polynomial data over K,
  // translated the same way.
  std::vector<std::pair<ChartPoly, ChartPoly>> cleared;
  for (const SurfFn& h : comps) {
    // common denominator in k[t][x]
    XPoly den = h.a.den() * h.b.den();
    XRat A = h.a * XRat(den), B = h.b * XRat(den);
    auto to_chart = [&](const XRat& f) {
      require_internal(f.isPolynomial(), "cleared component must be polynomial in x");
      ChartPoly out(K->zero());
      const XPoly& p = f.num();
      FqRat lead = f.den()[0];
      for (long i = 0; i <= p.deg(); ++i) {
        FqRat c = p[static_cast<size_t>(i)] / lead;
        // c in k(t); clear its denominator as well by multiplying through.
        // To stay polynomial, multiply every coefficient by the lcm later;
        // here we require polynomial entries.
        if (c.isZero()) continue;
        if (!c.isPolynomial()) fail(errc::not_applicable, "component has non-polynomial content");
        FqPoly cp = c.num().scaled(c.den()[0].inverse());
        for (long jt = 0; jt <= cp.deg(); ++jt) {
          if (cp[static_cast<size_t>(jt)].isZero()) continue;
          Mono mm{};
          mm[VT] = static_cast<uint16_t>(jt);
          mm[VX] = static_cast<uint16_t>(i);
          out.addTerm(mm, embed_scalar(cp[static_cast<size_t>(jt)], K));
        }
      }
      return out;
    };
    ChartPoly A_c = to_chart(A), B_c = to_chart(B);
    cleared.emplace_back(
        A_c.substituted({{VT, shift(VT, pt.t0)}, {VX, shift(VX, pt.x0)}}),
        B_c.substituted({{VT, shift(VT, pt.t0)}, {VX, shift(VX, pt.x0)}}));
  }

  // Choose the solved variable by an invertible partial derivative.
  FieldElement wt = Wloc.derivative(VT).substituted({{VT, ChartPoly(K->zero())},
                                                     {VX, ChartPoly(K->zero())},
                                                     {VY, ChartPoly(K->zero())}})
                        .terms()
                        .empty()
                        ? K->zero()
                        : Wloc.derivative(VT)
                              .substituted({{VT, ChartPoly(K->zero())},
                                            {VX, ChartPoly(K->zero())},
                                            {VY, ChartPoly(K->zero())}})
                              .terms()
                              .begin()
                              ->second;
  auto value_at_origin = [&](const ChartPoly& q) {
    ChartPoly v = q.substituted({{VT, ChartPoly(K->zero())},
                                 {VX, ChartPoly(K->zero())},
                                 {VY, ChartPoly(K->zero())}});
    return v.isZero() ? K->zero() : v.terms().begin()->second;
  };
  wt = value_at_origin(Wloc.derivative(VT));
  FieldElement wx = value_at_origin(Wloc.derivative(VX));
  FieldElement wy = value_at_origin(Wloc.derivative(VY));
  int solved;
  std::array<int, 2> frame{};
  std::vector<int> use_comps;  // indices into comps forming the local frame
  if (!wy.isZero()) {
    solved = VY;
    frame = {VT, VX};
    use_comps = {0, 1};
  } else if (!wx.isZero()) {
    solved = VX;
    frame = {VT, VY};
    use_comps = {0, 2};
  } else if (!wt.isZero()) {
    solved = VT;
    frame = {VX, VY};
    use_comps = {1, 2};
  } else {
    fail(errc::not_applicable,
         "isolated zero at a singular point of the chart; the ledger stops here");
  }

  long prev1 = -1, prev2 = -2;
  for (int prec = 8; prec <= 512; prec *= 2) {
    // Newton-solve Wloc for the chosen variable.
    TPS2 uu = TPS2::variable(K, prec, true);
    TPS2 vv = TPS2::variable(K, prec, false);
    TPS2 zz(K, prec);  // starts at 0
    auto coords = [&](const TPS2& z) {
      TPS2 tt(K, prec), xx(K, prec), yy(K, prec);
      auto pick = [&](int var) {
        if (var == solved) return z;
        if (var == frame[0]) return uu;
        return vv;
      };
      tt = pick(VT);
      xx = pick(VX);
      yy = pick(VY);
      return std::array<TPS2, 3>{tt, xx, yy};
    };
    ChartPoly dW = Wloc.derivative(solved);
    for (int it = 0; it < 14; ++it) {
      auto cs = coords(zz);
      TPS2 val = compose_chart(Wloc, K, prec, cs[0], cs[1], cs[2]);
      if (val.isZero()) break;
      TPS2 dval = compose_chart(dW, K, prec, cs[0], cs[1], cs[2]);
      zz = zz - val * dval.inverseSeries();
    }
    auto cs = coords(zz);
    {
      TPS2 resid = compose_chart(Wloc, K, prec, cs[0], cs[1], cs[2]);
      require_internal(resid.isZero(), "Newton solution must satisfy the chart equation");
    }

    // Compose the two frame components: P = A + B y.
    auto composed = [&](int idx) {
      TPS2 A = compose_chart(cleared[static_cast<size_t>(idx)].first, K, prec, cs[0], cs[1],
                             TPS2::constant(K, prec, K->zero()));
      TPS2 B = compose_chart(cleared[static_cast<size_t>(idx)].second, K, prec, cs[0], cs[1],
                             TPS2::constant(K, prec, K->zero()));
      return A + B * cs[2];
    };
    TPS2 f = composed(use_comps[0]);
    TPS2 g = composed(use_comps[1]);
    if (f.isZero() || g.isZero())
      fail(errc::not_applicable, "a frame component vanishes identically near the zero");

    // Shear until both are v-distinguished: f(0, v) != 0 and g(0, v) != 0.
    long ord = VAL_INF;
    for (uint64_t lam = 0; lam < 32; ++lam) {
      FieldElement l = K->fromUint(lam);
      // u -> u + l v.
      auto sheared = [&](const TPS2& h) {
        TPS2 out(K, prec);
        // substitute: compute via power expansion of (u + l v)^i
        std::vector<TPS2> upows;
        TPS2 ushift = TPS2::variable(K, prec, true) +
                      TPS2::variable(K, prec, false) * TPS2::constant(K, prec, l);
        upows.push_back(TPS2::constant(K, prec, K->one()));
        for (int j = 0; j < static_cast<int>(h.c.size()); ++j)
          for (int i = 0; i < static_cast<int>(h.c[static_cast<size_t>(j)].size()); ++i) {
            (void)i;
          }
        TPS2 outv(K, prec);
        for (int j = 0; j < static_cast<int>(h.c.size()); ++j) {
          for (int i = 0; i < static_cast<int>(h.c[static_cast<size_t>(j)].size()); ++i) {
            const FieldElement& cval = h.c[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (cval.isZero()) continue;
            while (static_cast<int>(upows.size()) <= i) upows.push_back(upows.back() * ushift);
            TPS2 term = upows[static_cast<size_t>(i)];
            // multiply by v^j and the coefficient
            TPS2 shiftv(K, prec);
            for (int jj = 0; jj < static_cast<int>(term.c.size()); ++jj)
              for (int ii = 0; ii < static_cast<int>(term.c[static_cast<size_t>(jj)].size()); ++ii) {
                FieldElement tv = term.c[static_cast<size_t>(jj)][static_cast<size_t>(ii)];
                if (tv.isZero()) continue;
                shiftv.set(ii, jj + j, shiftv.get(ii, jj + j) + tv * cval);
              }
            outv = outv + shiftv;
          }
        }
        return outv;
      };
      TPS2 fs = sheared(f);
      TPS2 gs = sheared(g);
      auto v_distinguished = [&](const TPS2& h) {
        for (int j = 0; j < static_cast<int>(h.c.size()); ++j)
          if (!h.get(0, j).isZero()) return true;
        return false;
      };
      if (!v_distinguished(fs) || !v_distinguished(gs)) continue;
      ord = resultant_ord(fs, gs, prec);
      break;
    }
    if (ord == VAL_INF) {
      prev1 = -1;
      prev2 = -2;
      continue;  //需要 higher precision
    }
    if (ord == prev1 && ord == prev2) return ord;
    prev2 = prev1;
    prev1 = ord;
  }
  fail(errc::precision_cap, "local length did not stabilize below the precision cap");
}

}  // namespace

MarginResult zero_scheme_margin(const Derivation& D, const WeierstrassModel& m,
                                const Place& excluded, int sections, Rng& rng) {
  const FieldPtr& k = m.k();
  SurfCtx ctx(m);
  SurfFn Dy = D.Dy ? *D.Dy : derived_Dy(ctx, D.Dt, D.Dx);
  {
    SurfFn residual = ctx.add(ctx.mul(ctx.Wy, Dy),
                              ctx.add(ctx.scale(ctx.Wx, D.Dx), ctx.scale(ctx.Wt, D.Dt)));
    if (!residual.isZero())
      fail(errc::tangency_violated, "derivation is not tangent to the surface");
  }
  std::vector<SurfFn> comps = {SurfFn{D.Dt, xr_zero(k)}, SurfFn{D.Dx, xr_zero(k)}, Dy};
  bool all_zero = true;
  for (const auto& c : comps) all_zero = all_zero && c.isZero();
  if (all_zero) fail(errc::zero_input, "the zero derivation has no zero scheme");

  MarginResult out;

  // Divisorial part: fiber components along which every component vanishes.
  std::vector<std::pair<Place, long>> divisorial;
  {
    FqPoly common(k->zero());
    bool first = true;
    for (const auto& c : comps) {
      if (c.isZero()) continue;
      FqPoly g = content_numerator(c, k);
      common = first ? g : gcd_poly(common, g);
      first = false;
    }
    if (common.deg() > 0) {
      for (const auto& [pi, mult] : factorize(common, rng).factors) {
        (void)mult;
        Place v = Place::finiteUnchecked(pi);
        long mval = VAL_INF;
        for (const auto& c : comps) {
          if (c.isZero()) continue;
          mval = std::min(mval, content_valuation(c, v));
        }
        if (mval > 0) divisorial.emplace_back(v, mval);
      }
    }
  }
  out.divisorialPart = divisorial;

  // Saturate off the divisorial part.
  std::vector<SurfFn> sat = comps;
  for (const auto& [v, mult] : divisorial) {
    XRat scale = xr_const(FqRat(FqPoly::constant(k->one())));
    for (long i = 0; i < mult; ++i) scale = scale / xr_const(FqRat(v.pi()));
    for (auto& c : sat) c = SurfFn{c.a * scale, c.b * scale};
  }

  // Isolated zeros.
  long isolated = 0;
  bool unit_found = false;
  for (const auto& c : sat) {
    if (c.b.isZero() && !c.a.isZero() && c.a.isPolynomial() && c.a.num().isConstant() &&
        c.a.num()[0].isConstant())
      unit_found = true;
  }
  if (!unit_found) {
    // Eliminants E = A^2 - L A B - C B^2 in k[t, x], one per component.
    auto clear_xrat = [&](const XRat& f, const XPoly& den) { return f * XRat(den); };
    std::vector<XRat> elim;
    for (const auto& c : sat) {
      if (c.isZero()) continue;
      XPoly den = c.a.den() * c.b.den();
      XRat A = clear_xrat(c.a, den), B = clear_xrat(c.b, den);
      elim.push_back(A * A - ctx.L * A * B - ctx.C * B * B);
    }
    if (elim.size() < 2)
      fail(errc::not_applicable, "zero scheme is not isolated on the chart");
    // Pick the two of lowest x-degree with x-dependence if possible.
    std::sort(elim.begin(), elim.end(), [](const XRat& a, const XRat& b) {
      return a.num().deg() < b.num().deg();
    });
    const XRat &E1 = elim[0], &E2 = elim[1];
    // Resultant in x over k(t), then factor the numerator in t.
    auto resultant_x = [&](const XRat& a, const XRat& b) -> FqRat {
      XPoly A = a.num(), B = b.num();
      long da = A.deg(), db = B.deg();
      if (da < 0 || db < 0) return FqRat(k->zero());
      if (da == 0) return A[0];  // x-free
      if (db == 0) return B[0];
      long n = da + db;
      std::vector<std::vector<FqRat>> M(static_cast<size_t>(n),
                                        std::vector<FqRat>(static_cast<size_t>(n), FqRat(k->zero())));
      for (long r = 0; r < db; ++r)
        for (long j = 0; j <= da; ++j)
          M[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = A[static_cast<size_t>(da - j)];
      for (long r = 0; r < da; ++r)
        for (long j = 0; j <= db; ++j)
          M[static_cast<size_t>(db + r)][static_cast<size_t>(r + j)] = B[static_cast<size_t>(db - j)];
      // Gaussian elimination over k(t).
      FqRat det = FqRat(FqPoly::constant(k->one()));
      for (long kk = 0; kk < n; ++kk) {
        long piv = -1;
        for (long i = kk; i < n; ++i)
          if (!M[static_cast<size_t>(i)][static_cast<size_t>(kk)].isZero()) {
            piv = i;
            break;
          }
        if (piv < 0) return FqRat(k->zero());
        if (piv != kk) std::swap(M[static_cast<size_t>(piv)], M[static_cast<size_t>(kk)]);
        const FqRat& pv = M[static_cast<size_t>(kk)][static_cast<size_t>(kk)];
        det = det * pv;
        for (long i = kk + 1; i < n; ++i) {
          FqRat factor = M[static_cast<size_t>(i)][static_cast<size_t>(kk)] / pv;
          if (factor.isZero()) continue;
          for (long j = kk; j < n; ++j)
            M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                M[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                factor * M[static_cast<size_t>(kk)][static_cast<size_t>(j)];
        }
      }
      return det;
    };
    FqRat rest = resultant_x(E1, E2);
    if (rest.isZero())
      fail(errc::not_applicable, "derivation components share a positive-dimensional zero set");
    FqPoly tpoly = rest.num();
    if (tpoly.deg() > 0) {
      for (const auto& [pi, mult] : factorize(tpoly, rng).factors) {
        (void)mult;
        if (!excluded.isInfinity() && pi == excluded.pi()) continue;
        // Residue field of the fiber.
        FieldPtr K1 = pi.deg() == 1 ? k : make_extension(k, pi);
        FieldElement t0 = pi.deg() == 1 ? -pi[0] : K1->gen();
        // Substitute t -> t0 in both eliminants; x-gcd must be nonzero.
        auto specialize = [&](const XRat& E) {
          std::vector<FieldElement> cs;
          for (long i = 0; i <= E.num().deg(); ++i)
            cs.push_back(eval_fqrat(E.num()[static_cast<size_t>(i)], t0));
          return FqPoly(K1->zero(), std::move(cs));
        };
        FqPoly e1 = specialize(E1), e2 = specialize(E2);
        FqPoly g = e1.isZero() ? e2 : (e2.isZero() ? e1 : gcd_poly(e1, e2));
        if (g.isZero())
          fail(errc::not_applicable, "zero scheme contains the whole fiber at t = " + place_text(Place::finiteUnchecked(pi)));
        if (g.deg() == 0) continue;  // no common x above this fiber
        for (const auto& [xfac, xm] : factorize(g, rng).factors) {
          (void)xm;
          FieldPtr K2 = xfac.deg() == 1 ? K1 : make_extension(K1, xfac);
          FieldElement x0 = xfac.deg() == 1 ? -xfac[0] : K2->gen();
          FieldElement t0e = embed_scalar(t0, K2);
          // y-candidates with y^2 + L y - C = 0 at (t0, x0).
          FieldElement Lv = eval_xrat(ctx.L, t0e, x0);
          FieldElement Cv = eval_xrat(ctx.C, t0e, x0);
          std::vector<std::pair<FieldPtr, FieldElement>> ys;
          FqPoly quad(K2->zero(), {-Cv, Lv, K2->one()});
          auto yroots = roots_in_field(quad, rng);
          if (!yroots.empty()) {
            for (const auto& y0 : yroots) ys.emplace_back(K2, y0);
          } else {
            FieldPtr K3 = make_extension(K2, quad);
            ys.emplace_back(K3, K3->gen());
          }
          for (const auto& [K3, y0] : ys) {
            FieldElement t0f = embed_scalar(t0, K3);
            FieldElement x0f = embed_scalar(x0, K3);
            // Verify every component vanishes at the point.
            bool all_vanish = true;
            for (const auto& c : sat) {
              FieldElement val = (c.a.isZero() ? K3->zero() : eval_xrat(c.a, t0f, x0f)) +
                                 (c.b.isZero() ? K3->zero() : eval_xrat(c.b, t0f, x0f)) * y0;
              if (!val.isZero()) {
                all_vanish = false;
                break;
              }
            }
            if (!all_vanish) continue;
            ZeroPoint pt{K3, t0f, x0f, y0, pi};
            long ell = local_length_at(pt, m, sat, rng);
            long degree = K3->absDeg() / k->absDeg();
            isolated += ell * degree;
          }
        }
      }
    }
  }
  out.isolatedLength = isolated;

  // Margin: isolated length minus the self-intersection ledger of the
  // divisorial part (fiber components at the place v contribute
  // -mult * deg(v) * vDelta(v); the excluded fiber is restricted away).
  long fiber_term = 0;
  for (const auto& [v, mult] : divisorial) {
    if (v == excluded) continue;
    LocalFiberData d = tate_local(m, v, rng);
    fiber_term += mult * static_cast<long>(v.degree()) * d.vDelta;
  }
  out.margin = isolated + fiber_term;

  // Threshold comparison at the excluded fiber.
  SurfaceReport rep = analyze(m, rng);
  LocalFiberData excl = tate_local(m, excluded, rng);
  if (excl.type.kind == FiberKind::II) {
    out.lemmaCase = MarginResult::Case::CaseI;
    out.threshold = rep.c2 - 4 * sections;
    out.holds = out.margin > out.threshold;
  } else if (m.p() == 2 && excl.type.kind == FiberKind::III && sections >= 2 &&
             classify_p_closed(D, m).kind == PClosedKind::Multiplicative) {
    out.lemmaCase = MarginResult::Case::CaseII;
    out.threshold = rep.c2 - 6;
    out.holds = out.margin > out.threshold;
  } else {
    out.lemmaCase = MarginResult::Case::NotApplicable;
  }
  return out;
}

}  // namespace kodaira
