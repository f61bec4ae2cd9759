#ifndef KODAIRA_ERROR_HPP
#define KODAIRA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kodaira {

enum class errc {
  division_by_zero,
  field_mismatch,
  zero_input,
  non_prime,
  not_irreducible,
  singular_model,
  zero_twist,
  mode_mismatch,
  not_applicable,
  malformed_coaction,
  tangency_violated,
  parse_unknown_key,
  parse_malformed,
  precision_cap,
  unsupported,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "division_by_zero";
    case errc::field_mismatch:   return "field_mismatch";
    case errc::zero_input:       return "zero_input";
    case errc::non_prime:        return "non_prime";
    case errc::not_irreducible:  return "not_irreducible";
    case errc::singular_model:   return "singular_model";
    case errc::zero_twist:       return "zero_twist";
    case errc::mode_mismatch:    return "mode_mismatch";
    case errc::not_applicable:   return "not_applicable";
    case errc::malformed_coaction: return "malformed_coaction";
    case errc::tangency_violated:  return "tangency_violated";
    case errc::parse_unknown_key:  return "parse_unknown_key";
    case errc::parse_malformed:    return "parse_malformed";
    case errc::precision_cap:      return "precision_cap";
    case errc::unsupported:        return "unsupported";
    case errc::internal:           return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

// Internal consistency checks: a failure here signals a bug, never a user error.
inline void require_internal(bool cond, const char* what) {
  if (!cond) fail(errc::internal, std::string("internal consistency violated: ") + what);
}

}  // namespace kodaira

#endif
