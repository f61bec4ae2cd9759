#include "kodaira/factor.hpp"

#include <algorithm>
#include <map>

namespace kodaira {

bool poly_less(const FqPoly& a, const FqPoly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (long i = a.deg(); i >= 0; --i) {
    uint64_t x = a[static_cast<size_t>(i)].toUint();
    uint64_t y = b[static_cast<size_t>(i)].toUint();
    if (x != y) return x < y;
  }
  return false;
}

namespace {

FqPoly pth_root_poly(const FqPoly& f) {
  // f = g(x^p); recover g by taking p-th roots of the surviving coefficients.
  const uint64_t p = f.zeroC().field()->p();
  std::vector<FieldElement> cs;
  for (long i = 0; i <= f.deg(); i += static_cast<long>(p)) {
    cs.push_back(f[static_cast<size_t>(i)].pthRoot());
  }
  return FqPoly(f.zeroC(), std::move(cs));
}

void squarefree_rec(const FqPoly& f, int mult, std::vector<std::pair<FqPoly, int>>& out) {
  const FqPoly fp = f.derivative();
  if (fp.isZero()) {
    squarefree_rec(pth_root_poly(f), mult * static_cast<int>(f.zeroC().field()->p()), out);
    return;
  }
  FqPoly c = gcd_poly(f, fp);
  FqPoly w = f / c;
  int i = 1;
  while (w.deg() > 0) {
    FqPoly y = gcd_poly(w, c);
    FqPoly z = w / y;
    if (z.deg() > 0) out.emplace_back(z.monic(), mult * i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.deg() > 0) squarefree_rec(pth_root_poly(c), mult * static_cast<int>(f.zeroC().field()->p()), out);
}

// Trace map of the quotient algebra k[x]/(f) relative to F_q with q = |K|:
// r + r^q + ... + r^{q^{d-1}}.
FqPoly rel_trace(const FqPoly& r, int d, uint64_t q, const FqPoly& f) {
  FqPoly acc = r % f;
  FqPoly cur = acc;
  for (int i = 1; i < d; ++i) {
    cur = powmod(cur, q, f);
    acc = (acc + cur) % f;
  }
  return acc;
}

// Absolute trace down to F_2 (characteristic 2 splitting).
FqPoly abs_trace2(const FqPoly& r, long bits, const FqPoly& f) {
  FqPoly acc = r % f;
  FqPoly cur = acc;
  for (long i = 1; i < bits; ++i) {
    cur = (cur * cur) % f;
    acc = (acc + cur) % f;
  }
  return acc;
}

void equal_degree_split(const FqPoly& f, int d, Rng& rng, std::vector<FqPoly>& out) {
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const FieldPtr K = f.zeroC().field();
  bool ovf = false;
  const uint64_t q = K->order(&ovf);
  require_internal(!ovf, "field too large for equal-degree splitting");
  FqPoly g(f.zeroC());
  for (int attempt = 0; attempt < 256; ++attempt) {
    // Random element of k[x]/(f).
    std::vector<FieldElement> cs;
    for (long i = 0; i < f.deg(); ++i) cs.push_back(K->sample(rng));
    FqPoly r(f.zeroC(), std::move(cs));
    if (r.isZero()) continue;
    FqPoly s(f.zeroC());
    if (K->p() == 2) {
      s = abs_trace2(r, static_cast<long>(d) * K->absDeg(), f);
      g = gcd_poly(s, f);
    } else {
      s = rel_trace(r, d, q, f);
      FqPoly u = powmod(s, (q - 1) / 2, f);
      g = gcd_poly(u - FqPoly::constant(f.zeroC().oneLike()), f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
  fail(errc::internal, "equal-degree splitting did not converge");
}

}  // namespace

std::vector<std::pair<FqPoly, int>> squarefree_decomposition(const FqPoly& f) {
  std::vector<std::pair<FqPoly, int>> out;
  if (f.deg() <= 0) return out;
  squarefree_rec(f.monic(), 1, out);
  return out;
}

Factorization factorize(const FqPoly& f, Rng& rng) {
  if (f.isZero()) fail(errc::zero_input, "cannot factor the zero polynomial");
  Factorization result{f.lead(), {}};
  if (f.deg() == 0) return result;

  const FieldPtr K = f.zeroC().field();
  bool ovf = false;
  const uint64_t q = K->order(&ovf);
  require_internal(!ovf, "field too large for factorization");

  std::map<std::vector<uint64_t>, std::pair<FqPoly, int>> acc;  // keyed for determinism
  auto add_factor = [&](const FqPoly& g, int mult) {
    std::vector<uint64_t> key;
    key.reserve(static_cast<size_t>(g.deg()) + 1);
    for (long i = 0; i <= g.deg(); ++i) key.push_back(g[static_cast<size_t>(i)].toUint());
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(std::move(key), std::make_pair(g, mult));
    else it->second.second += mult;
  };

  for (const auto& [sqf, mult] : squarefree_decomposition(f)) {
    // Distinct-degree phase.
    FqPoly rest = sqf;
    FqPoly h = FqPoly::gen(f.zeroC()) % rest;
    const FqPoly x = FqPoly::gen(f.zeroC());
    for (int d = 1; rest.deg() > 0 && 2 * d <= rest.deg(); ++d) {
      h = powmod(h, q, rest);
      FqPoly g = gcd_poly(h - x, rest);
      if (g.deg() > 0) {
        std::vector<FqPoly> irr;
        equal_degree_split(g, d, rng, irr);
        for (const auto& pi : irr) add_factor(pi, mult);
        rest = rest / g;
        h = h % rest;
      }
    }
    if (rest.deg() > 0) add_factor(rest.monic(), mult);
  }

  for (auto& [key, fm] : acc) result.factors.push_back(fm);
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return result;
}

bool is_irreducible(const FqPoly& f) {
  if (f.deg() <= 0) return false;
  if (f.deg() == 1) return true;
  const FieldPtr K = f.zeroC().field();
  bool ovf = false;
  const uint64_t q = K->order(&ovf);
  require_internal(!ovf, "field too large for irreducibility test");
  const FqPoly x = FqPoly::gen(f.zeroC());
  const long n = f.deg();

  // x^{q^n} == x mod f, and gcd(x^{q^{n/l}} - x, f) == 1 for prime l | n.
  std::vector<FqPoly> powers;  // powers[i] = x^{q^{i+1}} mod f
  FqPoly h = x % f;
  for (long i = 0; i < n; ++i) {
    h = powmod(h, q, f);
    powers.push_back(h);
  }
  if (powers.back() != x % f) return false;
  long m = n;
  for (long l = 2; l <= m; ++l) {
    if (m % l != 0) continue;
    while (m % l == 0) m /= l;
    FqPoly g = gcd_poly(powers[static_cast<size_t>(n / l - 1)] - x, f);
    if (g.deg() != 0) return false;
  }
  return true;
}

std::vector<FieldElement> roots_in_field(const FqPoly& f, Rng& rng) {
  std::vector<FieldElement> out;
  if (f.deg() <= 0) return out;
  for (const auto& [pi, mult] : factorize(f, rng).factors) {
    (void)mult;
    if (pi.deg() == 1) out.push_back(-pi[0]);
  }
  return out;
}

FqPoly find_irreducible(const FieldPtr& K, int d, Rng& rng) {
  require_internal(d >= 1, "irreducible degree must be positive");
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::vector<FieldElement> cs;
    for (int i = 0; i < d; ++i) cs.push_back(K->sample(rng));
    cs.push_back(K->one());
    FqPoly f(K->zero(), std::move(cs));
    if (is_irreducible(f)) return f;
  }
  fail(errc::internal, "failed to find an irreducible polynomial");
}

FieldPtr make_extension(const FieldPtr& base, const FqPoly& monic_modulus) {
  if (monic_modulus.deg() < 2)
    fail(errc::not_irreducible, "extension modulus must have degree >= 2");
  if (!(monic_modulus.lead().isOne()))
    fail(errc::not_irreducible, "extension modulus must be monic");
  if (!is_irreducible(monic_modulus))
    fail(errc::not_irreducible, "extension modulus is reducible");
  std::vector<FieldElement> cs(monic_modulus.coeffs());
  (void)base;
  return Field::extension_unchecked(monic_modulus.zeroC().field(), std::move(cs));
}

FieldPtr make_extension_of_degree(const FieldPtr& base, int d, Rng& rng) {
  require_internal(d >= 2, "extension degree must be >= 2");
  return make_extension(base, find_irreducible(base, d, rng));
}

}  // namespace kodaira
