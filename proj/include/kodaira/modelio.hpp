#ifndef KODAIRA_MODELIO_HPP
#define KODAIRA_MODELIO_HPP

#include <string>

#include "kodaira/weierstrass.hpp"

namespace kodaira {

// Stanza format, one model per text block:
//   p=<prime>
//   fieldmod=<monic irreducible polynomial in x>   (optional, for F_{p^m})
//   a1=...  a2=...  a3=...  a4=...  a6=...          (missing a_i default to 0)
// '#' starts a comment; blank lines are ignored.
WeierstrassModel parse_model(const std::string& text);

}  // namespace kodaira

#endif
