#include "kodaira/modelio.hpp"

#include <map>
#include <sstream>

#include "kodaira/textio.hpp"

namespace kodaira {

WeierstrassModel parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, std::pair<std::string, int>> entries;  // key -> (value, line)
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw parse_error("expected key=value", lineno, 1);
    auto strip = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    static const char* known[] = {"p", "fieldmod", "a1", "a2", "a3", "a4", "a6"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok)
      throw parse_error("unknown key '" + key + "'", lineno, 1, errc::parse_unknown_key);
    if (entries.count(key)) throw parse_error("duplicate key '" + key + "'", lineno, 1);
    entries[key] = {val, lineno};
  }
  if (!entries.count("p")) throw parse_error("missing characteristic 'p='", lineno, 1);

  uint64_t p = 0;
  try {
    p = std::stoull(entries["p"].first);
  } catch (...) {
    throw parse_error("malformed characteristic", entries["p"].second, 1);
  }
  if (!is_prime_u64(p))
    throw parse_error("characteristic must be prime, got " + std::to_string(p),
                      entries["p"].second, 1, errc::non_prime);

  FieldPtr k = Field::prime(p);
  if (entries.count("fieldmod")) {
    FqPoly mod = parse_poly(entries["fieldmod"].first, k, "x");
    k = make_extension(k, mod);  // verifies irreducibility
  }

  auto coeff = [&](const char* key) {
    auto it = entries.find(key);
    if (it == entries.end()) return FqRat(k->zero());
    return parse_rat(it->second.first, k, "t");
  };
  return WeierstrassModel(k, coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"), coeff("a6"));
}

}  // namespace kodaira
