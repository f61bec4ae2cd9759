#include "kodaira/igusa.hpp"

#include <numeric>
#include <set>

#include "kodaira/factor.hpp"

namespace kodaira {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  require_internal(den != 0, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
bool Rational::operator<=(const Rational& o) const {
  return static_cast<__int128>(num) * o.den <= static_cast<__int128>(o.num) * den;
}
std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

constexpr uint64_t kPrimeCap = 1000;

void check_prime(uint64_t p) {
  if (!is_prime_u64(p)) fail(errc::non_prime, "p must be prime");
  if (p > kPrimeCap) fail(errc::unsupported, "p exceeds the configured cap");
}

// All roots of f (over K) lying in K, by full factorization.
std::vector<FieldElement> all_roots(const FqPoly& f, Rng& rng) { return roots_in_field(f, rng); }

FieldElement j_of_lambda(const FieldElement& lam) {
  // j = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)
  const FieldPtr K = lam.field();
  FieldElement one = K->one();
  FieldElement n = lam * lam - lam + one;
  FieldElement den = lam * lam * (lam - one) * (lam - one);
  return K->fromInt(256) * n * n * n / den;
}

}  // namespace

long supersingular_count(uint64_t p, Rng& rng) {
  check_prime(p);
  if (p == 2 || p == 3) return 1;  // j = 0 alone
  auto Fp = Field::prime(p);
  auto Fp2 = make_extension_of_degree(Fp, 2, rng);

  // Hasse polynomial sum_i binom(m, i)^2 x^i over F_{p^2}.
  const uint64_t m = (p - 1) / 2;
  std::vector<FieldElement> cs;
  FieldElement binom = Fp2->one();
  for (uint64_t i = 0; i <= m; ++i) {
    cs.push_back(binom * binom);
    // binom(m, i+1) = binom(m, i) * (m - i) / (i + 1)
    binom = binom * Fp2->fromInt(static_cast<long long>(m - i)) /
            Fp2->fromInt(static_cast<long long>(i + 1));
  }
  FqPoly hasse(Fp2->zero(), std::move(cs));

  std::set<uint64_t> js;
  for (const FieldElement& lam : all_roots(hasse, rng)) {
    require_internal(!lam.isZero() && !lam.isOne(), "Hasse polynomial root at 0 or 1");
    js.insert(j_of_lambda(lam).toUint());
  }
  require_internal(!js.empty(), "no supersingular j-invariants found");
  return static_cast<long>(js.size());
}

Rational class_number_hp(uint64_t p, Rng& rng) {
  Rational extra(0);
  if (p == 3) extra = Rational(1, 3);
  if (p == 2) extra = Rational(3, 8);
  return Rational(supersingular_count(p, rng)) + extra;
}

Rational theorem_c_bound(uint64_t p, int n, Rng& rng) {
  check_prime(p);
  if (n < 1) fail(errc::zero_input, "n must be >= 1");
  // p^{2n-1} with overflow guard.
  long double approx = 1;
  for (int i = 0; i < 2 * n - 1; ++i) approx *= static_cast<long double>(p);
  if (approx > 9e17L) fail(errc::unsupported, "p^n too large for exact evaluation");
  long long p2n1 = 1, pn1 = 1;
  for (int i = 0; i < 2 * n - 1; ++i) p2n1 *= static_cast<long long>(p);
  for (int i = 0; i < n - 1; ++i) pn1 *= static_cast<long long>(p);
  Rational main(static_cast<long long>(p - 1) * (p2n1 - 12 * pn1 + 1), 48);
  return main + Rational(1) - class_number_hp(p, rng) * Rational(1, 2);
}

long igusa_genus(uint64_t p, int n, Rng& rng) {
  check_prime(p);
  if (n < 1) fail(errc::zero_input, "n must be >= 1");
  // p^n >= 3 is required for the moduli curve to exist.
  if (p == 2 && n == 1) fail(errc::not_applicable, "p^n = 2 is below the representability bound");
  Rational g = theorem_c_bound(p, n, rng);
  if (!g.isInteger() || g.num < 0)
    fail(errc::internal, "genus formula produced a non-integral or negative value " + g.str());
  return g.num;
}

int max_admissible_n(uint64_t p, long g, Rng& rng) {
  int n = 0;
  for (int cand = 1; cand < 64; ++cand) {
    Rational bound(0);
    try {
      bound = theorem_c_bound(p, cand, rng);
    } catch (const error&) {
      break;  // exact evaluation range exceeded; the bound only grows
    }
    if (bound <= Rational(g)) n = cand;
    else break;
  }
  return n;
}

long supersingular_count_bruteforce(uint64_t p, Rng& rng) {
  check_prime(p);
  if (p > 50) fail(errc::unsupported, "brute-force oracle supports p <= 50");
  auto Fp = Field::prime(p);
  auto K = make_extension_of_degree(Fp, 2, rng);
  bool ovf = false;
  const uint64_t q = K->order(&ovf);
  require_internal(!ovf, "oracle field order overflow");

  // Enumerate all field elements once.
  std::vector<FieldElement> elems;
  elems.reserve(q);
  for (uint64_t i = 0; i < q; ++i) elems.push_back(K->fromUint(i));

  // Per-element tables so the j-loop stays O(q) field multiplications.
  // Odd p: quadratic character; p = 2: absolute trace to F_2.
  std::vector<int8_t> table(q, 0);
  if (p == 2) {
    for (uint64_t i = 0; i < q; ++i) {
      FieldElement tr = K->zero(), cur = elems[i];
      for (long b = 0; b < K->absDeg(); ++b) {
        tr = tr + cur;
        cur = cur * cur;
      }
      table[i] = tr.isZero() ? 1 : 0;
    }
  } else {
    for (uint64_t i = 1; i < q; ++i)
      table[i] = elems[i].pow((q - 1) / 2).isOne() ? 1 : -1;
  }

  // Count points of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over K,
  // including the point at infinity.
  auto count_points = [&](const FieldElement& a1, const FieldElement& a2, const FieldElement& a3,
                          const FieldElement& a4, const FieldElement& a6) -> uint64_t {
    uint64_t count = 1;
    if (p == 2) {
      for (const auto& x : elems) {
        FieldElement rhs = x * x * x + a2 * x * x + a4 * x + a6;
        FieldElement b = a1 * x + a3;
        if (b.isZero()) {
          count += 1;  // y^2 = rhs has exactly one root
        } else {
          // y^2 + by = rhs: 2 roots iff Tr(rhs / b^2) = 0 over F_2.
          if (table[(rhs / (b * b)).toUint()]) count += 2;
        }
      }
      return count;
    }
    for (const auto& x : elems) {
      // complete the square: (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2
      FieldElement rhs = x * x * x + a2 * x * x + a4 * x + a6;
      FieldElement disc = K->fromInt(4) * rhs + (a1 * x + a3) * (a1 * x + a3);
      int8_t chi = table[disc.toUint()];
      if (chi == 0) count += 1;
      else if (chi == 1) count += 2;
    }
    return count;
  };

  long ss = 0;
  for (const auto& j : elems) {
    FieldElement zero = K->zero(), one = K->one();
    uint64_t npts = 0;
    if (p == 2) {
      if (j.isZero()) npts = count_points(zero, zero, one, zero, zero);  // y^2 + y = x^3
      else npts = count_points(one, zero, zero, zero, j.inverse());      // y^2 + xy = x^3 + 1/j
    } else if (p == 3) {
      if (j.isZero()) npts = count_points(zero, zero, zero, one, zero);  // y^2 = x^3 + x
      else npts = count_points(zero, one, zero, zero, -j.inverse());     // y^2 = x^3 + x^2 - 1/j
    } else {
      FieldElement j1728 = K->fromInt(1728);
      if (j.isZero()) {
        npts = count_points(zero, zero, zero, zero, one);  // y^2 = x^3 + 1
      } else if (j == j1728) {
        npts = count_points(zero, zero, zero, one, zero);  // y^2 = x^3 + x
      } else {
        // y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2
        FieldElement c = j * (j1728 - j);
        npts = count_points(zero, zero, zero, K->fromInt(3) * c, K->fromInt(2) * c * (j1728 - j));
      }
    }
    // #E(F_{p^2}) = p^2 + 1 - a; supersingular iff p | a.
    long long a = static_cast<long long>(q) + 1 - static_cast<long long>(npts);
    if (a % static_cast<long long>(p) == 0) ++ss;
  }
  return ss;
}

}  // namespace kodaira
