#ifndef KODAIRA_INVARIANTS_HPP
#define KODAIRA_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "kodaira/tate.hpp"

namespace kodaira {

struct SurfaceReport {
  WeierstrassModel model;
  std::vector<LocalFiberData> fibers;  // bad places only, deterministically ordered
  long c2 = 0;
  long chi = 0;
  bool isotrivial = false;
  FqRat jMap;
  std::vector<std::string> notes;
};

SurfaceReport analyze(const WeierstrassModel& m, Rng& rng);

// Root lattice attached to an additive fiber type (the span of the components
// missing the identity component).
struct RootLatticeDatum {
  enum class Name { Zero, A1, A2, D, E6, E7, E8 } name = Name::Zero;
  long dIndex = 0;  // n for D_n
  long rank = 0;
  long discriminant = 1;
};

RootLatticeDatum root_lattice(const KodairaType& t);

// Two-fiber admissibility from rank bookkeeping (rk T = 2 + rk T1 + rk T2
// against b2 = c2 - 2), the discriminant class (a p-power times a square), and
// the quadratic-twist reduction that pins the D-lattice cases.
enum class LatticeVerdict { Admissible, Excluded, NotApplicable };
enum class LatticeReason {
  None,
  RankNoether,        // component/Euler bookkeeping fails c2 = 0 mod 12
  DiscriminantClass,  // discriminant product is not a p-power times a square
  QuadraticTwist,     // D_m + (E8 or 0) and D_m + D_n with (m,n) != (4,4)
  WildSwan,           // a fiber cannot carry the Swan conductor the case needs
};

struct LatticeCheck {
  LatticeVerdict verdict = LatticeVerdict::NotApplicable;
  LatticeReason reason = LatticeReason::None;
  std::string caseName;  // matching case, e.g. "two-additive (ii)" or "wild-3 In"
};

LatticeCheck lattice_check(const KodairaType& t1, const KodairaType& t2, uint64_t p);

// mod-12 restrictions on the additive fiber of a surface whose generic fiber
// carries mu_p, p > 3 (In* with n >= 1 is excluded for every such p).
enum class MuPVerdict { Allowed, Forbidden, NotApplicable };
MuPVerdict mu_p_fiber_restrictions(const KodairaType& t, uint64_t p);

// Fixed-point Euler-number ledger for a two-fiber surface: enumerate the
// allowed e(F^{mu_{p^n}}) for each fiber and look for a pair summing to c2.
struct LedgerAssignment {
  long e1 = 0, e2 = 0;
};
struct LedgerResult {
  enum class Status { Consistent, Inconsistent, NotApplicable } status;
  std::vector<LedgerAssignment> assignments;
};

LedgerResult fixed_point_ledger(const SurfaceReport& report, uint64_t pn);

// Allowed fixed-locus Euler numbers for one fiber type under mu_{p^n}.
std::vector<long> fixed_euler_options(const KodairaType& t, uint64_t pn);

}  // namespace kodaira

#endif
