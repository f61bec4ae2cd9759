#ifndef KODAIRA_FACTOR_HPP
#define KODAIRA_FACTOR_HPP

#include <utility>
#include <vector>

#include "kodaira/field.hpp"
#include "kodaira/poly.hpp"

namespace kodaira {

using FqPoly = Poly<FieldElement>;
using FqRat = RatFunc<FieldElement>;

// Monic irreducible factors with multiplicities, sorted canonically; the
// leading unit of the input is returned separately.
struct Factorization {
  FieldElement unit;
  std::vector<std::pair<FqPoly, int>> factors;
};

// Squarefree decomposition (characteristic-p aware), distinct-degree and
// equal-degree splitting (Cantor-Zassenhaus; the randomized split is
// deterministic given the Rng seed).
Factorization factorize(const FqPoly& f, Rng& rng);

std::vector<std::pair<FqPoly, int>> squarefree_decomposition(const FqPoly& f);

bool is_irreducible(const FqPoly& f);

// Roots of f lying in its coefficient field, with multiplicity collapsed.
std::vector<FieldElement> roots_in_field(const FqPoly& f, Rng& rng);

// Random monic irreducible of the exact degree d over K.
FqPoly find_irreducible(const FieldPtr& K, int d, Rng& rng);

// Verified extension construction (spec: modulus irreducibility is checked
// when the field is built).
FieldPtr make_extension(const FieldPtr& base, const FqPoly& monic_modulus);

// F_{q^d} for d >= 2 with a deterministically chosen modulus.
FieldPtr make_extension_of_degree(const FieldPtr& base, int d, Rng& rng);

// Canonical ordering used wherever factor lists must be deterministic.
bool poly_less(const FqPoly& a, const FqPoly& b);

}  // namespace kodaira

#endif
