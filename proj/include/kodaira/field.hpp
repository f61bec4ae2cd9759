#ifndef KODAIRA_FIELD_HPP
#define KODAIRA_FIELD_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "kodaira/error.hpp"

namespace kodaira {

class Field;
class FieldElement;
using FieldPtr = std::shared_ptr<const Field>;

// Explicit randomness source; every randomized routine takes one so runs are
// reproducible from a single seed.
struct Rng {
  explicit Rng(uint64_t seed) : eng(seed) {}
  uint64_t u64() { return eng(); }
  uint64_t below(uint64_t n) { return n ? eng() % n : 0; }
  std::mt19937_64 eng;
};

// A finite field F_{p^m}, either the prime field or an extension of another
// Field by a monic irreducible modulus. Values are immutable; all arithmetic
// is pure, so fields and their elements are safe to share across threads.
class Field : public std::enable_shared_from_this<Field> {
public:
  static FieldPtr prime(uint64_t p);
  // Extension by a monic modulus over `base` (degree >= 2). Irreducibility is
  // the caller's contract here; use make_extension() (factor.hpp) to verify.
  static FieldPtr extension_unchecked(const FieldPtr& base, std::vector<FieldElement> monic_modulus);

  uint64_t p() const { return p_; }
  bool isPrime() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  const std::vector<FieldElement>& modulus() const { return mod_; }
  // Degree of this field over its base (1 for the prime field).
  int extDeg() const { return ext_deg_; }
  // Degree over F_p.
  long absDeg() const { return abs_deg_; }
  // Field order as uint64; sets *overflow when p^absDeg does not fit.
  uint64_t order(bool* overflow = nullptr) const;

  bool same(const Field& o) const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement fromInt(long long v) const;
  // Base-p digit encoding: n = sum d_i * B^i with B the base-field order.
  FieldElement fromUint(uint64_t encoded) const;
  FieldElement gen() const;  // the class of the modulus variable (extension fields)
  // Element of an extension field from coefficients over the base (ascending).
  FieldElement fromBaseCoeffs(std::vector<FieldElement> cs) const;
  FieldElement sample(Rng& rng) const;

private:
  friend class FieldElement;
  Field() = default;

  uint64_t p_ = 0;
  FieldPtr base_;
  std::vector<FieldElement> mod_;  // monic, over base_; empty for prime field
  int ext_deg_ = 1;
  long abs_deg_ = 1;
};

class FieldElement {
public:
  FieldElement() = default;  // empty shell; any use other than assignment is a bug

  const FieldPtr& field() const { return f_; }
  bool isZero() const;
  bool isOne() const;

  FieldElement zeroLike() const { return f_->zero(); }
  FieldElement oneLike() const { return f_->one(); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement inverse() const;
  FieldElement pow(uint64_t e) const;
  FieldElement frobenius() const;  // x -> x^p
  FieldElement pthRoot() const;    // the unique p-th root
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  // Digit encoding (see Field::fromUint); requires the field order to fit u64.
  uint64_t toUint() const;
  std::string str() const;

  // Coefficients over the base field (extension elements), ascending, trimmed.
  const std::vector<FieldElement>& extCoeffs() const { return cs_; }
  uint64_t primeValue() const { return v_; }

private:
  friend class Field;
  FieldElement(FieldPtr f, uint64_t v) : f_(std::move(f)), v_(v) {}
  FieldElement(FieldPtr f, std::vector<FieldElement> cs) : f_(std::move(f)), cs_(std::move(cs)) {
    trim();
  }
  void trim() {
    while (!cs_.empty() && cs_.back().isZero()) cs_.pop_back();
  }
  void checkSame(const FieldElement& o) const;

  FieldPtr f_;
  uint64_t v_ = 0;               // prime-field value
  std::vector<FieldElement> cs_; // extension coefficients over base
};

bool is_prime_u64(uint64_t n);

}  // namespace kodaira

#endif
