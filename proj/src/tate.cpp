#include "kodaira/tate.hpp"

#include <algorithm>
#include <set>

namespace kodaira {

long KodairaType::euler() const {
  switch (kind) {
    case FiberKind::I0: return 0;
    case FiberKind::In: return n;
    case FiberKind::II: return 2;
    case FiberKind::III: return 3;
    case FiberKind::IV: return 4;
    case FiberKind::I0star: return 6;
    case FiberKind::Instar: return n + 6;
    case FiberKind::IVstar: return 8;
    case FiberKind::IIIstar: return 9;
    case FiberKind::IIstar: return 10;
  }
  return 0;
}

long KodairaType::components() const {
  switch (kind) {
    case FiberKind::I0: return 1;
    case FiberKind::In: return std::max(n, 1L);
    case FiberKind::II: return 1;
    case FiberKind::III: return 2;
    case FiberKind::IV: return 3;
    case FiberKind::I0star: return 5;
    case FiberKind::Instar: return n + 5;
    case FiberKind::IVstar: return 7;
    case FiberKind::IIIstar: return 8;
    case FiberKind::IIstar: return 9;
  }
  return 1;
}

std::string type_text(const KodairaType& t) {
  switch (t.kind) {
    case FiberKind::I0: return "I0";
    case FiberKind::In: return "In";
    case FiberKind::II: return "II";
    case FiberKind::III: return "III";
    case FiberKind::IV: return "IV";
    case FiberKind::I0star: return "I0star";
    case FiberKind::Instar: return "Instar";
    case FiberKind::IVstar: return "IVstar";
    case FiberKind::IIIstar: return "IIIstar";
    case FiberKind::IIstar: return "IIstar";
  }
  return "I0";
}

std::string type_pretty(const KodairaType& t) {
  switch (t.kind) {
    case FiberKind::In: return "I" + std::to_string(t.n);
    case FiberKind::Instar: return "I" + std::to_string(t.n) + "*";
    case FiberKind::I0star: return "I0*";
    case FiberKind::IVstar: return "IV*";
    case FiberKind::IIIstar: return "III*";
    case FiberKind::IIstar: return "II*";
    default: return type_text(t);
  }
}

KodairaType parse_type(const std::string& s) {
  auto mk = [](FiberKind k, long n = 0) { return KodairaType{k, n}; };
  if (s == "II") return mk(FiberKind::II);
  if (s == "III") return mk(FiberKind::III);
  if (s == "IV") return mk(FiberKind::IV);
  if (s == "IIstar" || s == "II*") return mk(FiberKind::IIstar);
  if (s == "IIIstar" || s == "III*") return mk(FiberKind::IIIstar);
  if (s == "IVstar" || s == "IV*") return mk(FiberKind::IVstar);
  if (s == "I0") return mk(FiberKind::I0);
  if (s == "I0star" || s == "I0*") return mk(FiberKind::I0star);
  // I<n> or I<n>star / I<n>*
  if (!s.empty() && s[0] == 'I') {
    size_t i = 1;
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    std::string rest = s.substr(i);
    if (!digits.empty() && (rest.empty() || rest == "star" || rest == "*")) {
      long n = std::stol(digits);
      if (rest.empty()) return n == 0 ? mk(FiberKind::I0) : mk(FiberKind::In, n);
      return n == 0 ? mk(FiberKind::I0star) : mk(FiberKind::Instar, n);
    }
  }
  fail(errc::parse_malformed, "unknown Kodaira type '" + s + "'");
}

long swan_lower_bound(const KodairaType& t, uint64_t p) {
  if (p != 2 && p != 3) return 0;
  if (!t.additive()) return 0;
  if (p == 3) {
    if (t.kind == FiberKind::III || t.kind == FiberKind::IIIstar ||
        t.kind == FiberKind::Instar || t.kind == FiberKind::I0star)
      return 0;
    return 1;
  }
  // p == 2
  if (t.kind == FiberKind::IV || t.kind == FiberKind::IVstar) return 0;
  if (t.kind == FiberKind::II) return 2;
  if (t.kind == FiberKind::Instar && t.n != 1) return 2;
  if (t.kind == FiberKind::I0star) return 2;
  return 1;
}

bool swan_zero_possible(const KodairaType& t, uint64_t p) {
  return swan_lower_bound(t, p) == 0;
}

bool swan_constraint_ok(const KodairaType& t, uint64_t p, long swan) {
  if (p != 2 && p != 3) return swan == 0;
  if (!t.additive()) return swan == 0;
  long lb = swan_lower_bound(t, p);
  if (lb == 0 && (p == 3 || (p == 2 && (t.kind == FiberKind::IV || t.kind == FiberKind::IVstar))))
    return swan == 0;  // the table pins these to exactly zero
  return swan >= lb;
}

namespace {

// All residue computations of one Tate run, bundled around a LocalRing.
struct TateEngine {
  TateEngine(const WeierstrassModel& m0, const Place& v, Rng& rng)
      : ring(v, rng), u(v.uniformizer()), model(m0), change(CoordinateChange::identity(m0.k())) {}

  LocalRing ring;
  FqRat u;
  WeierstrassModel model;
  CoordinateChange change;

  long val(const FqRat& r) const { return valuation(r, ring.place()); }

  // residue(a / pi^j); requires v(a) >= j.
  FieldElement digit(const FqRat& a, long j) const {
    FqRat shifted = a;
    for (long i = 0; i < j; ++i) shifted = shifted / u;
    for (long i = 0; i < -j; ++i) shifted = shifted * u;
    return ring.residue(shifted);
  }

  void apply(const CoordinateChange& c) {
    model = apply_change(model, c);
    change = change.then(c);
  }
  void translate_x(const FqRat& r) {
    CoordinateChange c = CoordinateChange::identity(model.k());
    c.r = r;
    apply(c);
  }
  void translate_y_slope(const FqRat& s) {
    CoordinateChange c = CoordinateChange::identity(model.k());
    c.s = s;
    apply(c);
  }
  void translate_y(const FqRat& w) {
    CoordinateChange c = CoordinateChange::identity(model.k());
    c.w = w;
    apply(c);
  }

  FqRat upow(long k) const {
    FqRat r = FqRat(FqPoly::constant(model.k()->one()));
    for (long i = 0; i < k; ++i) r = r * u;
    for (long i = 0; i < -k; ++i) r = r / u;
    return r;
  }

  FieldElement half() const { return ring.residueField()->fromInt(2).inverse(); }

  // Move the singular point of the reduced curve to (0, 0).
  void center_singular_point() {
    const FieldPtr R = ring.residueField();
    const uint64_t p = model.k()->p();
    FieldElement x0 = R->zero(), y0 = R->zero();
    FieldElement ra1 = digit(model.a1(), 0), ra2 = digit(model.a2(), 0),
                 ra3 = digit(model.a3(), 0), ra4 = digit(model.a4(), 0),
                 ra6 = digit(model.a6(), 0);
    if (p == 2) {
      if (!ra1.isZero()) {
        x0 = ra3 / ra1;
        y0 = (x0 * x0 + ra4) / ra1;
      } else {
        require_internal(ra3.isZero(), "singular reduction must satisfy a3 = 0 when a1 = 0 (char 2)");
        x0 = ra4.pthRoot();
        y0 = (x0 * x0 * x0 + ra2 * x0 * x0 + ra4 * x0 + ra6).pthRoot();
      }
    } else {
      // Complete the square: eta^2 = g(x) = x^3 + (b2/4)x^2 + (b4/2)x + b6/4.
      FieldElement i2 = half(), i4 = i2 * i2;
      FieldElement rb2 = ra1 * ra1 + R->fromInt(4) * ra2;
      FieldElement rb4 = R->fromInt(2) * ra4 + ra1 * ra3;
      FieldElement rb6 = ra3 * ra3 + R->fromInt(4) * ra6;
      FieldElement c2 = rb2 * i4, c1 = rb4 * i2, c0 = rb6 * i4;
      x0 = multiple_root_cubic(c2, c1, c0);
      y0 = -(ra1 * x0 + ra3) * i2;
    }
    if (!x0.isZero() || !y0.isZero()) {
      CoordinateChange c = CoordinateChange::identity(model.k());
      c.r = ring.lift(x0);
      c.w = ring.lift(y0);
      apply(c);
    }
  }

  // The multiple root of a monic cubic x^3 + c2 x^2 + c1 x + c0 over the
  // residue field (the caller guarantees one exists).
  FieldElement multiple_root_cubic(const FieldElement& c2, const FieldElement& c1,
                                   const FieldElement& c0) const {
    const FieldPtr R = ring.residueField();
    const uint64_t p = model.k()->p();
    if (p == 3) {
      // g' = 2 c2 x + c1.
      FieldElement two_c2 = c2 + c2;
      if (!two_c2.isZero()) return -c1 / two_c2;
      require_internal(c1.isZero(), "cubic without multiple root (char 3)");
      return (-c0).pthRoot();  // triple root of x^3 + c0
    }
    // gcd(g, g') via one generic step; g' = 3x^2 + 2c2 x + c1.
    const FieldElement z = R->zero();
    FqPoly g(z, {c0, c1, c2, R->one()});
    FqPoly gp = g.derivative();
    FqPoly h = gcd_poly(g, gp);
    if (h.deg() == 1) return -h[0];
    if (h.deg() == 2) {
      // Triple root: h = (x - r)^2.
      if (p == 2) return h[0].pthRoot();
      return -h[1] * half();
    }
    require_internal(false, "cubic without multiple root");
    return z;
  }

  // Structure of P(T) = T^3 + a T^2 + b T + c over the residue field.
  // kind: 0 = no multiple root, 1 = exactly double (root out), 2 = triple (root out).
  int cubic_root_structure(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                           FieldElement& root) const {
    const FieldPtr R = ring.residueField();
    const uint64_t p = model.k()->p();
    const FieldElement z = R->zero();
    FqPoly g(z, {c, b, a, R->one()});
    FqPoly gp = g.derivative();
    if (gp.isZero()) {
      require_internal(p == 3, "vanishing cubic derivative outside char 3");
      root = (-c).pthRoot();
      return 2;
    }
    FqPoly h = gcd_poly(g, gp);
    if (h.deg() == 0) return 0;
    if (h.deg() == 1) {
      // Exactly a double root: a triple root in char 3 forces g' = 0, and in
      // char != 3 it shows up as deg(gcd) = 2.
      root = -h[0];
      return 1;
    }
    // deg 2: triple root, h = (x - r)^2.
    if (p == 2) root = h[0].pthRoot();
    else root = -h[1] * half();
    return 2;
  }

  // Double root of the monic quadratic Y^2 + bY - c (caller guarantees disc = 0).
  FieldElement quad_double_root(const FieldElement& b, const FieldElement& c) const {
    if (model.k()->p() == 2) {
      require_internal(b.isZero(), "degenerate quadratic expected (char 2)");
      return c.pthRoot();
    }
    return -b * half();
  }
};

struct TateOutcome {
  KodairaType type;
  long vDelta = 0;
  WeierstrassModel model;
  CoordinateChange change;
};

TateOutcome run_tate(const WeierstrassModel& input, const Place& v, Rng& rng) {
  TateEngine e(input, v, rng);
  const FieldPtr R = e.ring.residueField();

  // Integrality first: u = pi^-k lifts every coefficient into the local ring.
  {
    long k = 0;
    const FqRat* as[5] = {&input.a1(), &input.a2(), &input.a3(), &input.a4(), &input.a6()};
    const int weights[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
      if (as[i]->isZero()) continue;
      long val = e.val(*as[i]);
      if (val < 0) k = std::max(k, (-val + weights[i] - 1) / weights[i]);
    }
    if (k > 0) e.apply(CoordinateChange::scale(e.upow(-k)));
  }

  for (int restart = 0;; ++restart) {
    require_internal(restart < 64, "Tate loop did not terminate");
    StandardQuantities q = standard_quantities(e.model);
    long vd = e.val(q.delta);
    require_internal(vd >= 0 && vd != VAL_INF, "minimal-model bookkeeping");

    // Step 1: good reduction.
    if (vd == 0) return {KodairaType{FiberKind::I0, 0}, 0, e.model, e.change};

    // Step 2: move the singular point to the origin; node means I_n.
    e.center_singular_point();
    q = standard_quantities(e.model);
    if (!e.digit(q.b2, 0).isZero())
      return {KodairaType{FiberKind::In, vd}, vd, e.model, e.change};

    // Step 3: type II.
    if (e.val(e.model.a6()) < 2) return {KodairaType{FiberKind::II, 0}, vd, e.model, e.change};
    // Step 4: type III.
    if (e.val(q.b8) < 3) return {KodairaType{FiberKind::III, 0}, vd, e.model, e.change};
    // Step 5: type IV.
    if (e.val(q.b6) < 3) return {KodairaType{FiberKind::IV, 0}, vd, e.model, e.change};

    // Step 6 normalization: v(a1), v(a2) >= 1, v(a3) >= 2, v(a4) >= 2, v(a6) >= 3.
    {
      // Cusp slope: (y - alpha x)^2 is the tangent cone.
      FieldElement alpha;
      if (e.model.k()->p() == 2) {
        require_internal(e.digit(e.model.a1(), 0).isZero(), "char-2 cusp normalization");
        alpha = e.digit(e.model.a2(), 0).pthRoot();
      } else {
        alpha = -e.digit(e.model.a1(), 0) * e.half();
      }
      if (!alpha.isZero()) e.translate_y_slope(e.ring.lift(alpha));
      // Kill a3 mod pi^2, a6 mod pi^3 via y += lift(beta) * pi.
      FieldElement beta = e.quad_double_root(e.digit(e.model.a3(), 1), e.digit(e.model.a6(), 2));
      if (!beta.isZero()) e.translate_y(e.ring.lift(beta) * e.upow(1));
      require_internal(e.val(e.model.a1()) >= 1 && e.val(e.model.a2()) >= 1 &&
                           e.val(e.model.a3()) >= 2 && e.val(e.model.a4()) >= 2 &&
                           e.val(e.model.a6()) >= 3,
                       "step-6 normalization");
    }

    FieldElement root;
    int structure = e.cubic_root_structure(e.digit(e.model.a2(), 1), e.digit(e.model.a4(), 2),
                                           e.digit(e.model.a6(), 3), root);
    if (structure == 0)
      return {KodairaType{FiberKind::I0star, 0}, vd, e.model, e.change};

    if (structure == 1) {
      // Step 7: type I_n*, n >= 1.
      if (!root.isZero()) e.translate_x(e.ring.lift(root) * e.upow(1));
      require_internal(e.val(e.model.a3()) >= 2 && e.val(e.model.a4()) >= 3 &&
                           e.val(e.model.a6()) >= 4,
                       "I_n* ladder entry");
      for (long m = 1;; ++m) {
        require_internal(m <= vd, "I_n* ladder did not terminate");
        if (m % 2 == 1) {
          long idx = (m + 3) / 2;
          FieldElement b = e.digit(e.model.a3(), idx);
          FieldElement c = e.digit(e.model.a6(), 2 * idx);
          FieldElement disc = b * b + R->fromInt(4) * c;
          if (!disc.isZero())
            return {KodairaType{FiberKind::Instar, m}, vd, e.model, e.change};
          FieldElement beta = e.quad_double_root(b, c);
          if (!beta.isZero()) e.translate_y(e.ring.lift(beta) * e.upow(idx));
        } else {
          long idx = (m + 4) / 2;
          FieldElement a = e.digit(e.model.a2(), 1);
          FieldElement b = e.digit(e.model.a4(), idx);
          FieldElement c = e.digit(e.model.a6(), 2 * idx - 1);
          FieldElement disc = b * b - R->fromInt(4) * a * c;
          if (!disc.isZero())
            return {KodairaType{FiberKind::Instar, m}, vd, e.model, e.change};
          FieldElement gamma;
          if (e.model.k()->p() == 2) {
            require_internal(b.isZero(), "char-2 ladder quadratic");
            gamma = (c / a).pthRoot();
          } else {
            gamma = -b / (R->fromInt(2) * a);
          }
          if (!gamma.isZero()) e.translate_x(e.ring.lift(gamma) * e.upow(idx - 1));
        }
      }
    }

    // Triple root path (steps 8-11).
    if (!root.isZero()) e.translate_x(e.ring.lift(root) * e.upow(1));
    require_internal(e.val(e.model.a2()) >= 2 && e.val(e.model.a4()) >= 3 &&
                         e.val(e.model.a6()) >= 4,
                     "triple-root normalization");
    {
      FieldElement b = e.digit(e.model.a3(), 2);
      FieldElement c = e.digit(e.model.a6(), 4);
      FieldElement disc = b * b + R->fromInt(4) * c;
      if (!disc.isZero())
        return {KodairaType{FiberKind::IVstar, 0}, vd, e.model, e.change};
      FieldElement beta = e.quad_double_root(b, c);
      if (!beta.isZero()) e.translate_y(e.ring.lift(beta) * e.upow(2));
    }
    if (e.val(e.model.a4()) < 4)
      return {KodairaType{FiberKind::IIIstar, 0}, vd, e.model, e.change};
    if (e.val(e.model.a6()) < 6)
      return {KodairaType{FiberKind::IIstar, 0}, vd, e.model, e.change};

    // Step 11: the equation was not minimal; rescale and start over.
    e.apply(CoordinateChange::scale(e.u));
  }
}

}  // namespace

LocalFiberData tate_local(const WeierstrassModel& m, const Place& v, Rng& rng) {
  TateOutcome out = run_tate(m, v, rng);
  LocalFiberData d{v, out.type, out.vDelta, out.type.euler(),
                   out.vDelta - out.type.euler(), out.type.components()};
  require_internal(d.swan >= 0, "negative Swan conductor");
  require_internal(swan_constraint_ok(d.type, m.p(), d.swan), "Swan conductor constraint table");
  return d;
}

std::pair<WeierstrassModel, CoordinateChange> integral_minimal_at(const WeierstrassModel& m,
                                                                  const Place& v, Rng& rng) {
  TateOutcome out = run_tate(m, v, rng);
  return {out.model, out.change};
}

std::vector<Place> bad_places(const WeierstrassModel& m, Rng& rng) {
  const FieldPtr& k = m.k();
  std::set<std::vector<uint64_t>> seen;
  std::vector<Place> candidates;
  auto add_factors_of = [&](const FqPoly& f) {
    if (f.deg() < 1) return;
    for (const auto& [pi, mult] : factorize(f, rng).factors) {
      (void)mult;
      std::vector<uint64_t> key;
      for (long i = 0; i <= pi.deg(); ++i) key.push_back(pi[static_cast<size_t>(i)].toUint());
      if (seen.insert(key).second) candidates.push_back(Place::finiteUnchecked(pi));
    }
  };
  StandardQuantities q = standard_quantities(m);
  add_factors_of(q.delta.num());
  add_factors_of(q.delta.den());
  for (const FqRat* a : {&m.a1(), &m.a2(), &m.a3(), &m.a4(), &m.a6()}) add_factors_of(a->den());

  std::sort(candidates.begin(), candidates.end());
  candidates.push_back(Place::infinity(k));

  std::vector<Place> bad;
  for (const auto& v : candidates) {
    LocalFiberData d = tate_local(m, v, rng);
    if (d.type.kind != FiberKind::I0) bad.push_back(v);
  }
  return bad;
}

}  // namespace kodaira
