#ifndef KODAIRA_TATE_HPP
#define KODAIRA_TATE_HPP

#include <string>
#include <vector>

#include "kodaira/weierstrass.hpp"

namespace kodaira {

enum class FiberKind { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct KodairaType {
  FiberKind kind = FiberKind::I0;
  long n = 0;  // the index for In / Instar (n = 0 encodes I0 / I0star)

  bool multiplicative() const { return kind == FiberKind::In && n >= 1; }
  bool additive() const { return !(kind == FiberKind::I0 || multiplicative()); }
  long euler() const;
  long components() const;
  bool operator==(const KodairaType& o) const { return kind == o.kind && n == o.n; }
  bool operator!=(const KodairaType& o) const { return !(*this == o); }
};

std::string type_text(const KodairaType& t);         // frozen spellings: II, In, I0star, ...
std::string type_pretty(const KodairaType& t);       // I5, I3*, ...
KodairaType parse_type(const std::string& s);

struct LocalFiberData {
  Place place;
  KodairaType type;
  long vDelta = 0;
  long eulerNumber = 0;
  long swan = 0;
  long components = 1;
};

// Lower bound on the Swan conductor from the characteristic/type table; the
// exact value comes out of Ogg's formula as vDelta - euler.
long swan_lower_bound(const KodairaType& t, uint64_t p);
bool swan_constraint_ok(const KodairaType& t, uint64_t p, long swan);
// Whether the type admits Swan conductor zero at characteristic p.
bool swan_zero_possible(const KodairaType& t, uint64_t p);

// Tate's algorithm at one place (the model is made integral and minimal at v
// internally). The returned data is geometric: it is stable under base field
// extension, and split/non-split distinctions are deliberately not surfaced.
LocalFiberData tate_local(const WeierstrassModel& m, const Place& v, Rng& rng);

// Exactly the places where tate_local returns a type other than I0,
// deterministically ordered (finite places sorted, then infinity).
std::vector<Place> bad_places(const WeierstrassModel& m, Rng& rng);

}  // namespace kodaira

#endif
