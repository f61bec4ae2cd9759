#ifndef KODAIRA_MPOLY_HPP
#define KODAIRA_MPOLY_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kodaira/error.hpp"

namespace kodaira {

// Variable universe for chart polynomials: base coordinates s, t, chart
// coordinates x, y (z for the plane cubic chart), and up to two group-scheme
// parameters a, b.
enum ChartVar : int { VS = 0, VT = 1, VX = 2, VY = 3, VZ = 4, VA = 5, VB = 6 };
constexpr int kNumVars = 7;
inline const char* var_name(int v) {
  static const char* names[kNumVars] = {"s", "t", "x", "y", "z", "a", "b"};
  return names[v];
}

using Mono = std::array<uint16_t, kNumVars>;

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = 0, db = 0;
    for (int i = 0; i < kNumVars; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db;
    for (int i = 0; i < kNumVars; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

// Sparse multivariate polynomial over a field-like coefficient type.
template <class C>
class MPoly {
public:
  explicit MPoly(const C& zero) : z_(zero.zeroLike()) {}

  static MPoly constant(const C& c) {
    MPoly r(c);
    if (!c.isZero()) r.terms_[Mono{}] = c;
    return r;
  }
  static MPoly var(const C& zero, int v) {
    MPoly r(zero);
    Mono m{};
    m[v] = 1;
    r.terms_[m] = zero.oneLike();
    return r;
  }

  bool isZero() const { return terms_.empty(); }
  const C& zeroC() const { return z_; }
  const std::map<Mono, C, MonoLess>& terms() const { return terms_; }

  void addTerm(const Mono& m, const C& c) {
    if (c.isZero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.addTerm(m, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.addTerm(m, -c);
    return r;
  }
  MPoly operator-() const {
    MPoly r(z_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r(z_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) {
        Mono m;
        for (int i = 0; i < kNumVars; ++i) m[i] = static_cast<uint16_t>(m1[i] + m2[i]);
        r.addTerm(m, c1 * c2);
      }
    return r;
  }
  MPoly scaled(const C& c) const {
    MPoly r(z_);
    if (c.isZero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
  }
  MPoly pow(int e) const {
    MPoly r = constant(z_.oneLike());
    MPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  bool operator==(const MPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
      if (it->first != jt->first || !(it->second == jt->second)) return false;
    return true;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // Simultaneous substitution of the listed variables; others stay themselves.
  MPoly substituted(const std::vector<std::pair<int, MPoly>>& subs) const {
    std::array<const MPoly*, kNumVars> map{};
    for (const auto& [v, poly] : subs) map[static_cast<size_t>(v)] = &poly;
    // Lazy power caches.
    std::array<std::vector<MPoly>, kNumVars> powers;
    auto power_of = [&](int v, int e) -> const MPoly& {
      auto& cache = powers[static_cast<size_t>(v)];
      if (cache.empty()) cache.push_back(constant(z_.oneLike()));
      while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *map[static_cast<size_t>(v)]);
      return cache[static_cast<size_t>(e)];
    };
    MPoly out(z_);
    for (const auto& [m, c] : terms_) {
      MPoly term = constant(c);
      for (int v = 0; v < kNumVars; ++v) {
        if (m[v] == 0) continue;
        if (map[static_cast<size_t>(v)]) {
          term = term * power_of(v, m[v]);
        } else {
          MPoly mv(z_);
          Mono mono{};
          mono[v] = m[v];
          mv.terms_.emplace(mono, z_.oneLike());
          term = term * mv;
        }
      }
      out = out + term;
    }
    return out;
  }

  MPoly derivative(int v) const {
    MPoly r(z_);
    for (const auto& [m, c] : terms_) {
      if (m[v] == 0) continue;
      C factor = z_;
      for (int i = 0; i < m[v]; ++i) factor = factor + c;  // m[v] * c in char p
      if (factor.isZero()) continue;
      Mono mm = m;
      mm[v] -= 1;
      r.addTerm(mm, factor);
    }
    return r;
  }

  // Parameter relation reduction on one variable: nilpotent drops exponents
  // >= e; multiplicative wraps them mod e; free leaves them alone.
  enum class Relation { Nilpotent, Multiplicative, Free };
  MPoly reduced(int v, Relation rel, int e) const {
    if (rel == Relation::Free) return *this;
    MPoly r(z_);
    for (const auto& [m, c] : terms_) {
      if (rel == Relation::Nilpotent) {
        if (m[v] >= e) continue;
        r.addTerm(m, c);
      } else {
        Mono mm = m;
        mm[v] = static_cast<uint16_t>(m[v] % e);
        r.addTerm(mm, c);
      }
    }
    return r;
  }

  // Remainder of division by a single divisor (membership test for the
  // principal ideal: remainder zero iff divisible, since the divisor's
  // leading coefficient is a unit).
  MPoly remainder(const MPoly& divisor) const {
    require_internal(!divisor.isZero(), "division by zero polynomial");
    const auto& lead = *divisor.terms_.rbegin();
    C lead_inv = lead.second.inverse();
    MPoly r = *this;
    for (int guard = 0; guard < 100000; ++guard) {
      bool reduced_any = false;
      for (auto it = r.terms_.rbegin(); it != r.terms_.rend(); ++it) {
        bool divisible = true;
        for (int i = 0; i < kNumVars; ++i)
          if (it->first[i] < lead.first[i]) {
            divisible = false;
            break;
          }
        if (!divisible) continue;
        Mono q;
        for (int i = 0; i < kNumVars; ++i)
          q[i] = static_cast<uint16_t>(it->first[i] - lead.first[i]);
        MPoly qm(z_);
        qm.terms_.emplace(q, it->second * lead_inv);
        r = r - qm * divisor;
        reduced_any = true;
        break;
      }
      if (!reduced_any) return r;
    }
    fail(errc::internal, "multivariate reduction did not terminate");
  }

  std::string text() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) out += " + ";
      first = false;
      bool any = false;
      std::string mono;
      for (int v = 0; v < kNumVars; ++v) {
        if (it->first[v] == 0) continue;
        if (any) mono += "*";
        any = true;
        mono += var_name(v);
        if (it->first[v] > 1) mono += "^" + std::to_string(it->first[v]);
      }
      std::string coeff = it->second.str();
      if (coeff == "1" && any) coeff = "";
      if (!coeff.empty() && any) coeff += "*";
      out += coeff + mono;
      if (!any && coeff.empty()) out += "1";
    }
    return out;
  }

private:
  C z_;
  std::map<Mono, C, MonoLess> terms_;
};

}  // namespace kodaira

#endif
