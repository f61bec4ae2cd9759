#ifndef KODAIRA_IGUSA_HPP
#define KODAIRA_IGUSA_HPP

#include <cstdint>
#include <string>

#include "kodaira/field.hpp"

namespace kodaira {

// Exact rational arithmetic for the genus formula.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<=(const Rational& o) const;
  bool isInteger() const { return den == 1; }
  std::string str() const;
};

// Number of distinct supersingular j-invariants in characteristic p, by the
// Hasse-polynomial method: roots of sum_i binom(m,i)^2 x^i over F_{p^2}
// (m = (p-1)/2), mapped to j with multiplicity collapsed. For p in {2, 3}
// only j = 0 is supersingular.
long supersingular_count(uint64_t p, Rng& rng);

// h_p = ss count + (0 | 1/3 | 3/8).
Rational class_number_hp(uint64_t p, Rng& rng);

// (1/48)(p-1)(p^{2n-1} - 12 p^{n-1} + 1) + 1 - h_p/2, for p^n >= 3 validated
// to be a non-negative integer; p^n = 2 is refused (the formula value 1/8 has
// no moduli meaning there).
long igusa_genus(uint64_t p, int n, Rng& rng);

// The same expression as a rational, defined for all p, n >= 1.
Rational theorem_c_bound(uint64_t p, int n, Rng& rng);

// Largest n with theorem_c_bound(p, n) <= g (0 when even n = 1 exceeds g).
int max_admissible_n(uint64_t p, long g, Rng& rng);

// Brute-force oracle: for each j in F_{p^2} build a curve with that
// j-invariant, count points naively and test trace = 0 mod p. O(p^4); test
// support for p <= 50.
long supersingular_count_bruteforce(uint64_t p, Rng& rng);

}  // namespace kodaira

#endif
