#pragma once

#include <vector>

#include "polypow/poly.hpp"
#include "polypow/ypoly.hpp"

namespace polypow {

// Square matrix over F_p[x], row-major.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(const Field& f, std::size_t r);  // zero matrix
  PolyMatrix(const Field& f, std::size_t r, std::vector<Poly> entries);

  static PolyMatrix identity(const Field& f, std::size_t r);

  const Field& field() const { return *f_; }
  std::size_t rows() const { return r_; }
  int degree() const;  // max entry degree, kMinusInfinity for the zero matrix
  const Poly& at(std::size_t i, std::size_t j) const { return e_[i * r_ + j]; }
  Poly& at(std::size_t i, std::size_t j) { return e_[i * r_ + j]; }
  const std::vector<Poly>& entries() const { return e_; }

  bool operator==(const PolyMatrix& o) const { return r_ == o.r_ && e_ == o.e_; }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix times(const Poly& c) const;
  bool is_zero() const;
  // Scalar matrix at x = a, row-major.
  std::vector<u64> eval(u64 a) const;

 private:
  const Field* f_ = nullptr;
  std::size_t r_ = 0;
  std::vector<Poly> e_;
};

// Entry-by-entry products; used as a reference for operator*.
PolyMatrix matmul_naive(const PolyMatrix& a, const PolyMatrix& b);

// Characteristic polynomial det(t I - A) of a scalar r x r matrix via
// Hessenberg reduction; returns c_0 .. c_r with c_r = 1.
std::vector<u64> charpoly_scalar(const Field& f, std::vector<u64> a, std::size_t r);

// det(y I - M(x)) by evaluation at r*d+1 points and interpolation.
BiPoly charpoly(const PolyMatrix& m);

// P(x, M) for a polynomial P in y; used for Cayley-Hamilton checks.
PolyMatrix eval_at_matrix(const BiPoly& p, const PolyMatrix& m);

}  // namespace polypow
