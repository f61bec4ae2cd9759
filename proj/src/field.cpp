#include "kodaira/field.hpp"

#include <algorithm>

#include "kodaira/poly.hpp"

namespace kodaira {

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldPtr Field::prime(uint64_t p) {
  if (!is_prime_u64(p)) fail(errc::non_prime, "characteristic must be prime, got " + std::to_string(p));
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->ext_deg_ = 1;
  f->abs_deg_ = 1;
  return f;
}

FieldPtr Field::extension_unchecked(const FieldPtr& base, std::vector<FieldElement> monic_modulus) {
  require_internal(base != nullptr, "extension over null field");
  require_internal(monic_modulus.size() >= 3, "extension modulus must have degree >= 2");
  require_internal(monic_modulus.back().isOne(), "extension modulus must be monic");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = base->p_;
  f->base_ = base;
  f->mod_ = std::move(monic_modulus);
  f->ext_deg_ = static_cast<int>(f->mod_.size()) - 1;
  f->abs_deg_ = base->abs_deg_ * f->ext_deg_;
  return f;
}

uint64_t Field::order(bool* overflow) const {
  if (overflow) *overflow = false;
  uint64_t r = 1;
  for (long i = 0; i < abs_deg_; ++i) {
    if (r > UINT64_MAX / p_) {
      if (overflow) *overflow = true;
      return 0;
    }
    r *= p_;
  }
  return r;
}

bool Field::same(const Field& o) const {
  if (this == &o) return true;
  if (p_ != o.p_ || ext_deg_ != o.ext_deg_ || (base_ == nullptr) != (o.base_ == nullptr)) return false;
  if (base_ == nullptr) return true;
  if (!base_->same(*o.base_)) return false;
  if (mod_.size() != o.mod_.size()) return false;
  for (size_t i = 0; i < mod_.size(); ++i)
    if (mod_[i] != o.mod_[i]) return false;
  return true;
}

FieldElement Field::zero() const {
  if (isPrime()) return FieldElement(shared_from_this(), uint64_t{0});
  return FieldElement(shared_from_this(), std::vector<FieldElement>{});
}

FieldElement Field::one() const {
  if (isPrime()) return FieldElement(shared_from_this(), uint64_t{1});
  return FieldElement(shared_from_this(), std::vector<FieldElement>{base_->one()});
}

FieldElement Field::fromInt(long long v) const {
  long long m = static_cast<long long>(p_);
  long long r = ((v % m) + m) % m;
  if (isPrime()) return FieldElement(shared_from_this(), static_cast<uint64_t>(r));
  if (r == 0) return zero();
  return FieldElement(shared_from_this(), std::vector<FieldElement>{base_->fromInt(r)});
}

FieldElement Field::fromUint(uint64_t encoded) const {
  if (isPrime()) return FieldElement(shared_from_this(), encoded % p_);
  bool ovf = false;
  uint64_t b = base_->order(&ovf);
  if (ovf) fail(errc::unsupported, "field too large for integer encoding");
  std::vector<FieldElement> cs;
  while (encoded) {
    cs.push_back(base_->fromUint(encoded % b));
    encoded /= b;
  }
  if (static_cast<int>(cs.size()) > ext_deg_)
    fail(errc::parse_malformed, "integer encodes an element outside the field");
  return FieldElement(shared_from_this(), std::move(cs));
}

FieldElement Field::gen() const {
  require_internal(!isPrime(), "prime field has no extension generator");
  return FieldElement(shared_from_this(), std::vector<FieldElement>{base_->zero(), base_->one()});
}

FieldElement Field::fromBaseCoeffs(std::vector<FieldElement> cs) const {
  require_internal(!isPrime(), "fromBaseCoeffs needs an extension field");
  require_internal(static_cast<int>(cs.size()) <= ext_deg_, "coefficient vector too long");
  for (const auto& c : cs) require_internal(c.field()->same(*base_), "coefficient outside base field");
  return FieldElement(shared_from_this(), std::move(cs));
}

FieldElement Field::sample(Rng& rng) const {
  if (isPrime()) return FieldElement(shared_from_this(), rng.below(p_));
  std::vector<FieldElement> cs;
  cs.reserve(ext_deg_);
  for (int i = 0; i < ext_deg_; ++i) cs.push_back(base_->sample(rng));
  return FieldElement(shared_from_this(), std::move(cs));
}

void FieldElement::checkSame(const FieldElement& o) const {
  if (!f_ || !o.f_ || !f_->same(*o.f_))
    fail(errc::field_mismatch, "operands live in different fields");
}

bool FieldElement::isZero() const {
  return f_->isPrime() ? v_ == 0 : cs_.empty();
}

bool FieldElement::isOne() const {
  if (f_->isPrime()) return v_ == 1 % f_->p();
  return cs_.size() == 1 && cs_[0].isOne();
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  checkSame(o);
  if (f_->isPrime()) return FieldElement(f_, (v_ + o.v_) % f_->p());
  std::vector<FieldElement> cs(std::max(cs_.size(), o.cs_.size()), f_->base()->zero());
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i < cs_.size() && i < o.cs_.size()) cs[i] = cs_[i] + o.cs_[i];
    else if (i < cs_.size()) cs[i] = cs_[i];
    else cs[i] = o.cs_[i];
  }
  return FieldElement(f_, std::move(cs));
}

FieldElement FieldElement::operator-() const {
  if (f_->isPrime()) return FieldElement(f_, v_ == 0 ? 0 : f_->p() - v_);
  std::vector<FieldElement> cs(cs_);
  for (auto& c : cs) c = -c;
  return FieldElement(f_, std::move(cs));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  checkSame(o);
  if (f_->isPrime()) {
    return FieldElement(f_, (static_cast<__uint128_t>(v_) * o.v_) % f_->p());
  }
  if (cs_.empty() || o.cs_.empty()) return f_->zero();
  const auto zero = f_->base()->zero();
  std::vector<FieldElement> prod(cs_.size() + o.cs_.size() - 1, zero);
  for (size_t i = 0; i < cs_.size(); ++i)
    for (size_t j = 0; j < o.cs_.size(); ++j) prod[i + j] = prod[i + j] + cs_[i] * o.cs_[j];
  // Reduce modulo the field modulus.
  const auto& m = f_->modulus();
  size_t d = m.size() - 1;
  for (size_t k = prod.size(); k-- > d;) {
    if (prod[k].isZero()) continue;
    FieldElement c = prod[k];
    for (size_t i = 0; i < d; ++i) prod[k - d + i] = prod[k - d + i] - c * m[i];
    prod[k] = f_->base()->zero();
  }
  prod.resize(d, zero);
  return FieldElement(f_, std::move(prod));
}

FieldElement FieldElement::inverse() const {
  if (isZero()) fail(errc::division_by_zero, "inverse of zero field element");
  if (f_->isPrime()) {
    // Extended Euclid on integers.
    long long a = static_cast<long long>(v_), m = static_cast<long long>(f_->p());
    long long t0 = 0, t1 = 1, r0 = m, r1 = a;
    while (r1 != 0) {
      long long q = r0 / r1;
      long long tmp = t0 - q * t1; t0 = t1; t1 = tmp;
      tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    }
    require_internal(r0 == 1, "prime-field inverse");
    long long inv = ((t0 % m) + m) % m;
    return FieldElement(f_, static_cast<uint64_t>(inv));
  }
  // Extended Euclid over the base field.
  const auto bz = f_->base()->zero();
  Poly<FieldElement> a(bz, cs_);
  Poly<FieldElement> m(bz, f_->modulus());
  Poly<FieldElement> g(bz), u(bz);
  half_ext_gcd(a, m, g, u);
  require_internal(g.deg() == 0, "modulus not coprime to element");
  Poly<FieldElement> inv = u.scaled(g.lead().inverse()) % m;
  std::vector<FieldElement> cs(inv.coeffs());
  return FieldElement(f_, std::move(cs));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(uint64_t e) const {
  FieldElement r = f_->one();
  FieldElement b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

FieldElement FieldElement::frobenius() const { return pow(f_->p()); }

FieldElement FieldElement::pthRoot() const {
  // Frobenius is an automorphism of order absDeg; its inverse is absDeg-1 powers.
  FieldElement r = *this;
  for (long i = 0; i + 1 < f_->absDeg(); ++i) r = r.frobenius();
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (!f_ || !o.f_ || !f_->same(*o.f_)) return false;
  if (f_->isPrime()) return v_ == o.v_;
  return cs_ == o.cs_;
}

uint64_t FieldElement::toUint() const {
  if (f_->isPrime()) return v_;
  bool ovf = false;
  uint64_t b = f_->base()->order(&ovf);
  if (ovf) fail(errc::unsupported, "field too large for integer encoding");
  uint64_t r = 0;
  for (size_t i = cs_.size(); i-- > 0;) r = r * b + cs_[i].toUint();
  return r;
}

std::string FieldElement::str() const { return std::to_string(toUint()); }

}  // namespace kodaira
