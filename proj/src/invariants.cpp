#include "kodaira/invariants.hpp"

#include <algorithm>

namespace kodaira {

SurfaceReport analyze(const WeierstrassModel& m, Rng& rng) {
  StandardQuantities q = standard_quantities(m);
  SurfaceReport rep{m, {}, 0, 0, q.j.isConstant(), q.j, {}};
  for (const Place& v : bad_places(m, rng)) {
    LocalFiberData d = tate_local(m, v, rng);
    rep.c2 += static_cast<long>(v.degree()) * d.vDelta;
    // I_{8k+4}* in characteristic 2: the local Euler-number arithmetic pins
    // the Swan conductor to n/2 = 4k+2.
    if (m.p() == 2 && d.type.kind == FiberKind::Instar && d.type.n % 8 == 4 &&
        d.swan == d.type.n / 2) {
      rep.notes.push_back("fiber " + type_pretty(d.type) + " at " + place_text(v) +
                          ": swan = " + std::to_string(d.swan) +
                          " = n/2 is forced by v(Delta) = e(F) + swan");
    }
    rep.fibers.push_back(std::move(d));
  }
  require_internal(rep.c2 % 12 == 0, "Noether divisibility 12 | c2");
  rep.chi = rep.c2 / 12;
  return rep;
}

RootLatticeDatum root_lattice(const KodairaType& t) {
  RootLatticeDatum d;
  switch (t.kind) {
    case FiberKind::II: d = {RootLatticeDatum::Name::Zero, 0, 0, 1}; break;
    case FiberKind::III: d = {RootLatticeDatum::Name::A1, 0, 1, 2}; break;
    case FiberKind::IV: d = {RootLatticeDatum::Name::A2, 0, 2, 3}; break;
    case FiberKind::I0star: d = {RootLatticeDatum::Name::D, 4, 4, 4}; break;
    case FiberKind::Instar: d = {RootLatticeDatum::Name::D, t.n + 4, t.n + 4, 4}; break;
    case FiberKind::IVstar: d = {RootLatticeDatum::Name::E6, 0, 6, 3}; break;
    case FiberKind::IIIstar: d = {RootLatticeDatum::Name::E7, 0, 7, 2}; break;
    case FiberKind::IIstar: d = {RootLatticeDatum::Name::E8, 0, 8, 1}; break;
    default: fail(errc::not_applicable, "root lattice is defined for additive fibers");
  }
  return d;
}

namespace {

bool is_power_of(long n, uint64_t p) {
  if (n < 1) return false;
  while (n % static_cast<long>(p) == 0) n /= static_cast<long>(p);
  return n == 1;
}

// discriminant product = p-power times a square?
bool disc_class_ok(long disc, uint64_t p) {
  long squarefree = 1;
  for (long d = 2; d * d <= disc; ++d)
    while (disc % (d * d) == 0) disc /= d * d;
  squarefree = disc;
  if (squarefree == 1) return true;
  return is_power_of(squarefree, p);
}

LatticeCheck two_additive_check(const KodairaType& t1, const KodairaType& t2, uint64_t p) {
  LatticeCheck out;
  // Both fibers need Swan conductor zero for the Euler/rank bookkeeping.
  if (!swan_zero_possible(t1, p) || !swan_zero_possible(t2, p))
    return {LatticeVerdict::Excluded, LatticeReason::WildSwan, ""};
  RootLatticeDatum l1 = root_lattice(t1), l2 = root_lattice(t2);
  // c2 = e1 + e2 = rk(T1) + rk(T2) + 4 must be divisible by 12.
  if ((l1.rank + l2.rank + 4) % 12 != 0)
    return {LatticeVerdict::Excluded, LatticeReason::RankNoether, ""};
  if (!disc_class_ok(l1.discriminant * l2.discriminant, p))
    return {LatticeVerdict::Excluded, LatticeReason::DiscriminantClass, ""};
  const bool d1 = l1.name == RootLatticeDatum::Name::D;
  const bool d2 = l2.name == RootLatticeDatum::Name::D;
  if (d1 || d2) {
    // Quadratic-twist reduction: D_m with E8 or 0 never occurs, and two
    // D-lattices force D4 + D4.
    if (d1 && d2 && l1.dIndex == 4 && l2.dIndex == 4)
      return {LatticeVerdict::Admissible, LatticeReason::None, "two-additive (I0*,I0*)"};
    return {LatticeVerdict::Excluded, LatticeReason::QuadraticTwist, ""};
  }
  auto pair_is = [&](RootLatticeDatum::Name a, RootLatticeDatum::Name b) {
    return (l1.name == a && l2.name == b) || (l1.name == b && l2.name == a);
  };
  if (pair_is(RootLatticeDatum::Name::Zero, RootLatticeDatum::Name::E8))
    return {LatticeVerdict::Admissible, LatticeReason::None, "two-additive (II,II*)"};
  if (pair_is(RootLatticeDatum::Name::A1, RootLatticeDatum::Name::E7))
    return {LatticeVerdict::Admissible, LatticeReason::None, "two-additive (III,III*)"};
  if (pair_is(RootLatticeDatum::Name::A2, RootLatticeDatum::Name::E6))
    return {LatticeVerdict::Admissible, LatticeReason::None, "two-additive (IV,IV*)"};
  // Remaining rank-compatible combinations have no admissible lattice.
  return {LatticeVerdict::Excluded, LatticeReason::DiscriminantClass, ""};
}

// Wild two-fiber check: F1 is the wild fiber (II at p=3 with swan 1, II/III at
// p=2 with swan 2/1), F2 has Swan conductor zero.
LatticeCheck wild_check(const KodairaType& wild, const KodairaType& other, uint64_t p) {
  const long v1 = wild.euler() + swan_lower_bound(wild, p);  // v(Delta) of the wild fiber
  if (!swan_zero_possible(other, p))
    return {LatticeVerdict::Excluded, LatticeReason::WildSwan, ""};
  const std::string tag = p == 3 ? "wild-3 " : "wild-2 ";
  if (other.multiplicative()) {
    long n = other.n;
    if ((v1 + n) % 12 != 0)
      return {LatticeVerdict::Excluded, LatticeReason::RankNoether, ""};
    // disc(Num) a p-power and no prime-to-p torsion force n = p^i.
    if (!is_power_of(n, p))
      return {LatticeVerdict::Excluded, LatticeReason::DiscriminantClass, ""};
    return {LatticeVerdict::Admissible, LatticeReason::None,
            tag + type_pretty(wild) + " with In"};
  }
  // other additive with swan 0: v2 = e2.
  long v2 = other.euler();
  if ((v1 + v2) % 12 != 0)
    return {LatticeVerdict::Excluded, LatticeReason::RankNoether, ""};
  if (other.kind == FiberKind::Instar) {
    // Twisting In* <-> In (p = 3 only; at p = 2 In* cannot have swan 0).
    if (!is_power_of(other.n, p))
      return {LatticeVerdict::Excluded, LatticeReason::DiscriminantClass, ""};
    return {LatticeVerdict::Admissible, LatticeReason::None,
            tag + type_pretty(wild) + " with In*"};
  }
  if ((p == 3 && other.kind == FiberKind::IIIstar) ||
      (p == 2 && other.kind == FiberKind::IVstar))
    return {LatticeVerdict::Admissible, LatticeReason::None,
            tag + type_pretty(wild) + " isotrivial"};
  return {LatticeVerdict::Excluded, LatticeReason::DiscriminantClass, ""};
}

bool is_wild_shape(const KodairaType& t, uint64_t p) {
  return (p == 3 && t.kind == FiberKind::II) ||
         (p == 2 && (t.kind == FiberKind::II || t.kind == FiberKind::III));
}

}  // namespace

LatticeCheck lattice_check(const KodairaType& t1, const KodairaType& t2, uint64_t p) {
  const bool add1 = t1.additive(), add2 = t2.additive();
  if (p == 2 || p == 3) {
    const bool w1 = is_wild_shape(t1, p), w2 = is_wild_shape(t2, p);
    if (w1 && !w2) return wild_check(t1, t2, p);
    if (w2 && !w1) return wild_check(t2, t1, p);
    if (w1 && w2) {
      // Two wild fibers can never reach c2 = 0 mod 12.
      return {LatticeVerdict::Excluded, LatticeReason::RankNoether, ""};
    }
    if (add1 && add2) return two_additive_check(t1, t2, p);
    return {LatticeVerdict::NotApplicable, LatticeReason::None, ""};
  }
  if (add1 && add2) return two_additive_check(t1, t2, p);
  return {LatticeVerdict::NotApplicable, LatticeReason::None, ""};
}

MuPVerdict mu_p_fiber_restrictions(const KodairaType& t, uint64_t p) {
  if (p <= 3) return MuPVerdict::NotApplicable;
  if (!t.additive()) return MuPVerdict::NotApplicable;
  if (t.kind == FiberKind::Instar && t.n >= 1) return MuPVerdict::Forbidden;
  switch (p % 12) {
    case 1:
      return t.kind == FiberKind::I0star ? MuPVerdict::Allowed : MuPVerdict::Forbidden;
    case 7:
      return (t.kind == FiberKind::III || t.kind == FiberKind::IIIstar ||
              t.kind == FiberKind::I0star)
                 ? MuPVerdict::Allowed
                 : MuPVerdict::Forbidden;
    case 5:
      return (t.kind == FiberKind::II || t.kind == FiberKind::IV ||
              t.kind == FiberKind::IVstar || t.kind == FiberKind::IIstar ||
              t.kind == FiberKind::I0star)
                 ? MuPVerdict::Allowed
                 : MuPVerdict::Forbidden;
    default:  // p = 11 mod 12: only the In* exclusion applies
      return MuPVerdict::Allowed;
  }
}

std::vector<long> fixed_euler_options(const KodairaType& t, uint64_t pn) {
  if (t.kind == FiberKind::I0) return {0};  // pointwise-fixed smooth fiber
  if (t.kind == FiberKind::II) {
    std::vector<long> opts = {2};
    if (pn == 3) opts.push_back(3);
    if (pn == 2) {
      opts.push_back(3);
      opts.push_back(4);
    }
    return opts;
  }
  if (t.kind == FiberKind::III) {
    std::vector<long> opts = {3};
    if (pn == 2) opts.push_back(4);
    return opts;
  }
  return {t.euler()};
}

LedgerResult fixed_point_ledger(const SurfaceReport& report, uint64_t pn) {
  // Validate pn = p^n for the model's characteristic.
  uint64_t p = report.model.p();
  uint64_t q = pn;
  while (q > 1 && q % p == 0) q /= p;
  if (q != 1 || pn < 2) fail(errc::zero_input, "pn must be a positive power of p");

  if (report.fibers.size() != 2) return {LedgerResult::Status::NotApplicable, {}};
  auto o1 = fixed_euler_options(report.fibers[0].type, pn);
  auto o2 = fixed_euler_options(report.fibers[1].type, pn);
  LedgerResult out{LedgerResult::Status::Inconsistent, {}};
  for (long e1 : o1)
    for (long e2 : o2)
      if (e1 + e2 == report.c2) out.assignments.push_back({e1, e2});
  if (!out.assignments.empty()) out.status = LedgerResult::Status::Consistent;
  return out;
}

}  // namespace kodaira
