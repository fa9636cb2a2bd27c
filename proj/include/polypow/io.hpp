#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "polypow/holo.hpp"
#include "polypow/matrix.hpp"

namespace polypow {

// Text formats. A Poly is one line of coefficients, constant term first
// ("0" for zero). A BiPoly is a line with deg_y (-1 for zero) followed by one
// Poly line per y-coefficient. Instance files start with "p r d"; p = 0
// leaves the prime to the command line, POLYPOW_PRIME, or the default.
// Blank lines and lines starting with '#' are ignored.

// --prime beats the file header, which beats POLYPOW_PRIME, which beats the default.
const Field& resolve_field(std::optional<u64> cli_prime, u64 header_prime);

struct BivariateInstance {
  BiPoly P, Q;
};

CFiniteSpec parse_spec(std::istream& in, std::optional<u64> cli_prime = std::nullopt);
PolyMatrix parse_matrix(std::istream& in, std::optional<u64> cli_prime = std::nullopt);
BivariateInstance parse_bivariate(std::istream& in, std::optional<u64> cli_prime = std::nullopt);

std::string format_poly(const Poly& p);
std::string format_bipoly(const BiPoly& b);
std::string format_spec(const CFiniteSpec& s);
std::string format_matrix(const PolyMatrix& m);
std::string format_bivariate(const BivariateInstance& b);

BiPoly parse_bipoly(std::istream& in, const Field& f);

u64 content_hash(const Poly& p);
u64 content_hash(const BiPoly& b);
u64 content_hash(const PolyMatrix& m);
std::string hash_hex(u64 h);

}  // namespace polypow
