#ifndef KODAIRA_POLY_HPP
#define KODAIRA_POLY_HPP

#include <vector>
#include <cstdint>
#include <utility>

#include "kodaira/error.hpp"

namespace kodaira {

// Dense univariate polynomial over a field-like coefficient type C.
// C provides: zeroLike(), oneLike(), isZero(), ==, +, -, unary -, *, /, inverse().
// Coefficients are stored by ascending degree; the leading coefficient of a
// nonzero polynomial is nonzero (canonical form, structural equality).
template <class C>
class Poly {
public:
  explicit Poly(const C& zero) : z_(zero.zeroLike()) {}
  Poly(const C& zero, std::vector<C> coeffs) : z_(zero.zeroLike()), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const C& v) {
    Poly r(v);
    if (!v.isZero()) r.c_ = {v};
    return r;
  }
  // The generator (the variable itself).
  static Poly gen(const C& zero) {
    Poly r(zero);
    r.c_ = {r.z_, r.z_.oneLike()};
    return r;
  }

  long deg() const { return static_cast<long>(c_.size()) - 1; }  // deg(0) = -1
  bool isZero() const { return c_.empty(); }
  bool isConstant() const { return c_.size() <= 1; }
  bool isOne() const { return c_.size() == 1 && c_[0] == z_.oneLike(); }

  const C& zeroC() const { return z_; }
  const C& operator[](size_t i) const { return i < c_.size() ? c_[i] : z_; }
  const C& lead() const {
    require_internal(!c_.empty(), "lead of zero polynomial");
    return c_.back();
  }
  const std::vector<C>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const {
    std::vector<C> r(std::max(c_.size(), o.c_.size()), z_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return Poly(z_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<C> r(std::max(c_.size(), o.c_.size()), z_);
    for (size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] - o[i];
    return Poly(z_, std::move(r));
  }
  Poly operator-() const {
    std::vector<C> r(c_);
    for (auto& v : r) v = -v;
    return Poly(z_, std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (isZero() || o.isZero()) return Poly(z_);
    std::vector<C> r(c_.size() + o.c_.size() - 1, z_);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].isZero()) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(z_, std::move(r));
  }
  Poly scaled(const C& s) const {
    std::vector<C> r(c_);
    for (auto& v : r) v = v * s;
    return Poly(z_, std::move(r));
  }
  // Multiply by x^k.
  Poly shifted(size_t k) const {
    if (isZero()) return *this;
    std::vector<C> r(c_.size() + k, z_);
    for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return Poly(z_, std::move(r));
  }

  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.isZero()) fail(errc::division_by_zero, "polynomial division by zero");
    q = Poly(a.z_);
    r = a;
    const C inv_lead = b.lead().inverse();
    while (!r.isZero() && r.deg() >= b.deg()) {
      C f = r.lead() * inv_lead;
      size_t k = static_cast<size_t>(r.deg() - b.deg());
      std::vector<C> qs(k + 1, a.z_);
      qs[k] = f;
      Poly term(a.z_, std::move(qs));
      q = q + term;
      r = r - b.shifted(k).scaled(f);
    }
  }
  Poly operator/(const Poly& o) const {
    Poly q(z_), r(z_);
    divmod(*this, o, q, r);
    return q;
  }
  Poly operator%(const Poly& o) const {
    Poly q(z_), r(z_);
    divmod(*this, o, q, r);
    return r;
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  C eval(const C& v) const {
    C acc = z_;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(z_);
    std::vector<C> r(c_.size() - 1, z_);
    for (size_t i = 1; i < c_.size(); ++i) {
      C m = z_;
      for (size_t k = 0; k < i; ++k) m = m + c_[i];  // i * c_i in the prime field
      r[i - 1] = m;
    }
    return Poly(z_, std::move(r));
  }

  Poly monic() const {
    if (isZero()) return *this;
    return scaled(lead().inverse());
  }

  // Coefficient-wise map (e.g. a base-field embedding); F: C -> C2.
  template <class C2, class F>
  Poly<C2> mapped(const C2& zero2, F&& f) const {
    std::vector<C2> r;
    r.reserve(c_.size());
    for (const auto& v : c_) r.push_back(f(v));
    return Poly<C2>(zero2, std::move(r));
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().isZero()) c_.pop_back();
  }

  C z_;
  std::vector<C> c_;
};

template <class C>
Poly<C> gcd_poly(Poly<C> a, Poly<C> b) {
  while (!b.isZero()) {
    Poly<C> r = a % b;
    a = b;
    b = r;
  }
  return a.isZero() ? a : a.monic();
}

// g = gcd(a, m) together with u such that u*a == g (mod m).
template <class C>
void half_ext_gcd(const Poly<C>& a, const Poly<C>& m, Poly<C>& g, Poly<C>& u) {
  Poly<C> r0 = a, r1 = m;
  Poly<C> u0 = Poly<C>::constant(a.zeroC().oneLike()), u1(a.zeroC());
  while (!r1.isZero()) {
    Poly<C> q(a.zeroC()), r(a.zeroC());
    Poly<C>::divmod(r0, r1, q, r);
    Poly<C> u2 = u0 - q * u1;
    r0 = r1; r1 = r;
    u0 = u1; u1 = u2;
  }
  g = r0;
  u = u0;
  if (!g.isZero()) {
    C il = g.lead().inverse();
    g = g.scaled(il);
    u = u.scaled(il);
  }
}

template <class C>
Poly<C> powmod(const Poly<C>& base, uint64_t e, const Poly<C>& mod) {
  Poly<C> result = Poly<C>::constant(base.zeroC().oneLike()) % mod;
  Poly<C> b = base % mod;
  while (e) {
    if (e & 1) result = (result * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return result;
}

// Rational function num/den in canonical form: den monic, gcd(num, den) = 1.
// Doubles as a field-like coefficient type, so towers such as k(t)[x] and
// k(t)(x) reuse the same templates.
template <class C>
class RatFunc {
public:
  explicit RatFunc(const C& zero)
      : n_(Poly<C>(zero)), d_(Poly<C>::constant(zero.oneLike())) {}
  explicit RatFunc(const Poly<C>& num)
      : n_(num), d_(Poly<C>::constant(num.zeroC().oneLike())) {}
  RatFunc(const Poly<C>& num, const Poly<C>& den) : n_(num), d_(den) { canonicalize(); }

  const Poly<C>& num() const { return n_; }
  const Poly<C>& den() const { return d_; }
  const C& zeroC() const { return n_.zeroC(); }

  bool isZero() const { return n_.isZero(); }
  bool isPolynomial() const { return d_.isConstant(); }
  bool isConstant() const { return n_.isConstant() && d_.isConstant(); }

  RatFunc zeroLike() const { return RatFunc(n_.zeroC()); }
  RatFunc oneLike() const { return RatFunc(Poly<C>::constant(n_.zeroC().oneLike())); }

  RatFunc operator+(const RatFunc& o) const { return RatFunc(n_ * o.d_ + o.n_ * d_, d_ * o.d_); }
  RatFunc operator-(const RatFunc& o) const { return RatFunc(n_ * o.d_ - o.n_ * d_, d_ * o.d_); }
  RatFunc operator-() const { return RatFunc(-n_, d_); }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(n_ * o.n_, d_ * o.d_); }
  RatFunc operator/(const RatFunc& o) const {
    if (o.isZero()) fail(errc::division_by_zero, "rational function division by zero");
    return RatFunc(n_ * o.d_, d_ * o.n_);
  }
  RatFunc inverse() const {
    if (isZero()) fail(errc::division_by_zero, "inverse of zero rational function");
    return RatFunc(d_, n_);
  }

  bool operator==(const RatFunc& o) const { return n_ == o.n_ && d_ == o.d_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc derivative() const {
    return RatFunc(n_.derivative() * d_ - n_ * d_.derivative(), d_ * d_);
  }

  template <class C2, class F>
  RatFunc<C2> mapped(const C2& zero2, F&& f) const {
    return RatFunc<C2>(n_.mapped(zero2, f), d_.mapped(zero2, f));
  }

private:
  void canonicalize() {
    if (d_.isZero()) fail(errc::division_by_zero, "zero denominator");
    if (n_.isZero()) {
      d_ = Poly<C>::constant(n_.zeroC().oneLike());
      return;
    }
    Poly<C> g = gcd_poly(n_, d_);
    if (g.deg() > 0) {
      n_ = n_ / g;
      d_ = d_ / g;
    }
    C il = d_.lead().inverse();
    n_ = n_.scaled(il);
    d_ = d_.scaled(il);
  }

  Poly<C> n_, d_;
};

}  // namespace kodaira

#endif
