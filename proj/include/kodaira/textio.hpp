#ifndef KODAIRA_TEXTIO_HPP
#define KODAIRA_TEXTIO_HPP

#include <string>
#include <vector>

#include "kodaira/factor.hpp"

namespace kodaira {

// Parse error with position information.
class parse_error : public error {
public:
  parse_error(const std::string& msg, int line, int col, errc code = errc::parse_malformed)
      : error(code, msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

private:
  int line_, col_;
};

// Shared expression grammar: integer coefficients (base-p digit encoding in
// extension fields), `^` for powers, `*` optional, `/` for quotients,
// parentheses, unary minus. Whitespace insignificant.
FqRat parse_rat(const std::string& text, const FieldPtr& k, const std::string& var = "t");
FqPoly parse_poly(const std::string& text, const FieldPtr& k, const std::string& var = "t");

std::string poly_text(const FqPoly& f, const std::string& var = "t");
std::string rat_text(const FqRat& r, const std::string& var = "t");

}  // namespace kodaira

#endif
