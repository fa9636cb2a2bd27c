#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "polypow/ypoly.hpp"

namespace polypow {

// L = sum_i q_i(x) d/dx^i with scalar coefficients.
// Canonical form: coefficients jointly primitive, q_l monic.
struct DiffOp {
  std::vector<Poly> coeffs;

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const Field& field() const { return coeffs.back().field(); }
  int degree_x() const;
  Poly apply(const Poly& u) const;
  void normalize();
  bool operator==(const DiffOp& o) const { return coeffs == o.coeffs; }
};

// Operator whose coefficients are polynomials in a parameter n:
// q_i = sum_j terms[i][j](x) n^j.
struct SymbolicDiffOp {
  std::vector<std::vector<Poly>> terms;
  std::size_t order = 0;
  int deg_n = 0;
  int deg_x = 0;

  DiffOp specialize(u64 n) const;  // normalized
};

// P/Q = d/dy(A / Q-) + a / Q*, with Q*, Q- monic.
struct HermiteResult {
  YPolyL A, a;
  YPolyL Qstar, Qminus;
};
HermiteResult hermite_reduce(const YPolyL& P, const YPolyL& Q);

// P / (Q y^(l+1)) = d/dy(B / (Q- y^l)) + b / (Q* y^(l+1)) with l = lambda.
struct ReductionPair {
  YPolyL B, b;
};
ReductionPair param_reduce(const YPolyL& P, const YPolyL& Q, u64 lambda);

// Same identities for coefficients in F_p, polynomials in y stored as Poly.
std::pair<Poly, Poly> hermite_reduce_scalar(const Poly& P, const Poly& Q);
std::pair<Poly, Poly> param_reduce_scalar(const Poly& P, const Poly& Q, u64 lambda);

// Every reduction result can be checked by clearing denominators.
namespace reduction_audit {
void set_enabled(bool on);
bool enabled();
std::uint64_t calls();
std::uint64_t failures();
void reset();
}  // namespace reduction_audit

enum class TelescoperRoute {
  // Residuals over F_p(x), kernel by fraction-free elimination.
  Exact,
  // Residuals at sampled x = alpha over F_p, coefficients rebuilt by
  // rational reconstruction in x.
  Evaluation,
};

// Precomputation for telescopers of U / y^(n+1) that does not depend on n.
class TelescoperEngine {
 public:
  explicit TelescoperEngine(BiRat U);
  ~TelescoperEngine();
  TelescoperEngine(const TelescoperEngine&) = delete;
  TelescoperEngine& operator=(const TelescoperEngine&) = delete;

  const BiRat& function() const { return U_; }
  std::size_t dstar() const { return dstar_; }

  DiffOp at(u64 lambda, TelescoperRoute route = TelescoperRoute::Evaluation) const;

  // Residual numerators b_0 .. b_{count-1} over F_p(x). Incremental mode
  // differentiates the previous residual; direct mode reduces d^i U / dx^i.
  std::vector<YPolyL> exact_residuals(u64 lambda, std::size_t count, bool incremental) const;

 private:
  struct Impl;
  DiffOp at_exact(u64 lambda) const;
  DiffOp at_evaluation(u64 lambda) const;

  BiRat U_;
  std::size_t dstar_ = 0;
  Impl* impl_;
};

DiffOp telescoper_at(const BiRat& U, u64 lambda, TelescoperRoute route = TelescoperRoute::Evaluation);
SymbolicDiffOp telescoper_symbolic(const BiRat& U, int n_deg_hint);
SymbolicDiffOp telescoper_symbolic(const TelescoperEngine& engine, int n_deg_hint);

}  // namespace polypow
