#ifndef CHEBCERT_POLY_IO_HPP
#define CHEBCERT_POLY_IO_HPP

#include <string>

#include <json.hpp>

#include "chebcert/poly.hpp"

namespace chebcert {

// {"nvars": n, "basis": "monomial"|"chebyshev", "terms": [{"alpha": [...], "c": ...}]}
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, std::string var_group = "x");

// Expressions like "x1^2*x2 - 0.5*x1 + 1" (monomial basis only).
// If nvars == 0 the variable count is taken from the highest index used.
Poly parse_poly(const std::string& text, std::size_t nvars = 0);

// Reads either a JSON document or a plain-text expression from a file,
// deciding by the first non-space character.
Poly read_poly_file(const std::string& path);

}  // namespace chebcert

#endif
