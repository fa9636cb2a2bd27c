#include "polypow/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>

namespace polypow {

namespace {

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    return true;
  }
  return false;
}

std::string require_line(std::istream& in, const char* what) {
  std::string line;
  if (!next_line(in, line)) throw Error(Error::Kind::Parse, "parse", std::string("unexpected end of input, expected ") + what);
  return line;
}

u64 parse_u64(const std::string& tok, const char* what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(Error::Kind::Parse, "parse", std::string("bad ") + what + " '" + tok + "'");
  }
  errno = 0;
  unsigned long long v = std::strtoull(tok.c_str(), nullptr, 10);
  if (errno == ERANGE) throw Error(Error::Kind::Parse, "parse", std::string(what) + " out of range");
  return v;
}

struct Header {
  u64 p, r, d;
};

Header read_header(std::istream& in) {
  std::istringstream ss(require_line(in, "header 'p r d'"));
  std::string a, b, c, extra;
  if (!(ss >> a >> b >> c) || (ss >> extra)) throw Error(Error::Kind::Parse, "parse", "header must be 'p r d'");
  Header h{parse_u64(a, "prime"), parse_u64(b, "order"), parse_u64(c, "degree")};
  if (h.r == 0 || h.r > 64) throw Error(Error::Kind::Parse, "parse", "order r must be in 1..64");
  return h;
}

Poly read_poly(std::istream& in, const Field& f, u64 max_deg, const char* what) {
  Poly p = parse_poly(f, require_line(in, what));
  if (p.degree() > static_cast<int>(max_deg)) {
    throw Error(Error::Kind::Parse, "parse", std::string(what) + " exceeds the degree in the header");
  }
  return p;
}

void expect_end(std::istream& in) {
  std::string line;
  if (next_line(in, line)) throw Error(Error::Kind::Parse, "parse", "trailing data after instance");
}

}  // namespace

const Field& resolve_field(std::optional<u64> cli_prime, u64 header_prime) {
  u64 p = Field::kDefaultPrime;
  if (cli_prime) {
    p = *cli_prime;
  } else if (header_prime != 0) {
    p = header_prime;
  } else if (const char* env = std::getenv("POLYPOW_PRIME"); env && *env) {
    p = parse_u64(env, "POLYPOW_PRIME");
  }
  return Field::of(p);
}

CFiniteSpec parse_spec(std::istream& in, std::optional<u64> cli_prime) {
  Header h = read_header(in);
  const Field& f = resolve_field(cli_prime, h.p);
  std::vector<Poly> c, init;
  for (u64 i = 0; i < h.r; ++i) c.push_back(read_poly(in, f, h.d, "recurrence coefficient"));
  for (u64 i = 0; i < h.r; ++i) init.push_back(parse_poly(f, require_line(in, "initial term")));
  expect_end(in);
  return CFiniteSpec(f, std::move(c), std::move(init));
}

PolyMatrix parse_matrix(std::istream& in, std::optional<u64> cli_prime) {
  Header h = read_header(in);
  const Field& f = resolve_field(cli_prime, h.p);
  std::vector<Poly> e;
  for (u64 i = 0; i < h.r * h.r; ++i) e.push_back(read_poly(in, f, h.d, "matrix entry"));
  expect_end(in);
  return PolyMatrix(f, h.r, std::move(e));
}

BiPoly parse_bipoly(std::istream& in, const Field& f) {
  std::string line = require_line(in, "deg_y");
  std::istringstream ss(line);
  long dy = 0;
  std::string extra;
  if (!(ss >> dy) || (ss >> extra) || dy < -1) throw Error(Error::Kind::Parse, "parse", "bad deg_y line '" + line + "'");
  std::vector<Poly> c;
  for (long i = 0; i <= dy; ++i) c.push_back(parse_poly(f, require_line(in, "y-coefficient")));
  return BiPoly(f, std::move(c));
}

BivariateInstance parse_bivariate(std::istream& in, std::optional<u64> cli_prime) {
  Header h = read_header(in);
  const Field& f = resolve_field(cli_prime, h.p);
  BivariateInstance b{parse_bipoly(in, f), parse_bipoly(in, f)};
  expect_end(in);
  if (b.P.degree_y() != static_cast<int>(h.r)) throw Error(Error::Kind::Parse, "parse", "P must have y-degree r");
  if (b.P.degree_x() > static_cast<int>(h.d) || b.Q.degree_x() > static_cast<int>(h.d)) {
    throw Error(Error::Kind::Parse, "parse", "x-degree exceeds the header");
  }
  return b;
}

std::string format_poly(const Poly& p) { return p.to_string(); }

std::string format_bipoly(const BiPoly& b) {
  std::string out = std::to_string(b.degree_y() < 0 ? -1 : b.degree_y()) + "\n";
  for (const auto& c : b.coeffs()) out += c.to_string() + "\n";
  return out;
}

std::string format_spec(const CFiniteSpec& s) {
  std::string out = std::to_string(s.field->modulus()) + " " + std::to_string(s.r()) + " " + std::to_string(s.d()) + "\n";
  for (const auto& c : s.c) out += c.to_string() + "\n";
  for (const auto& u : s.init) out += u.to_string() + "\n";
  return out;
}

std::string format_matrix(const PolyMatrix& m) {
  std::string out = std::to_string(m.field().modulus()) + " " + std::to_string(m.rows()) + " " +
                    std::to_string(std::max(m.degree(), 0)) + "\n";
  for (const auto& e : m.entries()) out += e.to_string() + "\n";
  return out;
}

std::string format_bivariate(const BivariateInstance& b) {
  int d = std::max({b.P.degree_x(), b.Q.degree_x(), 0});
  std::string out = std::to_string(b.P.field().modulus()) + " " + std::to_string(b.P.degree_y()) + " " +
                    std::to_string(d) + "\n";
  return out + format_bipoly(b.P) + format_bipoly(b.Q);
}

u64 content_hash(const Poly& p) {
  Fnv1a h;
  h.add(p.size());
  for (u64 c : p.coeffs()) h.add(c);
  return h.value();
}

u64 content_hash(const BiPoly& b) {
  Fnv1a h;
  h.add(b.size());
  for (const auto& c : b.coeffs()) h.add(content_hash(c));
  return h.value();
}

u64 content_hash(const PolyMatrix& m) {
  Fnv1a h;
  h.add(m.rows());
  for (const auto& e : m.entries()) h.add(content_hash(e));
  return h.value();
}

std::string hash_hex(u64 h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polypow
