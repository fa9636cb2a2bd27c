#pragma once

#include <vector>

#include "polypow/ff.hpp"

namespace polypow::detail {

// Twiddles for all stages up to size 2^max_log. For half-block h (a power
// of two), fwd[h + j] = w_{2h}^j and inv[h + j] = w_{2h}^{-j}, j < h.
struct NttTables {
  unsigned max_log = 0;
  std::vector<u64> fwd;
  std::vector<u64> inv;
  std::vector<u64> inv_pow2;  // 1 / 2^k
};

// In-place transforms of length 2^log_n. Forward takes natural order and
// leaves bit-reversed order; inverse takes bit-reversed order, returns
// natural order and includes the 1/n scaling.
void ntt_forward(const Field& f, u64* a, unsigned log_n);
void ntt_inverse(const Field& f, u64* a, unsigned log_n);

// Whether f supports a transform of length 2^log_n.
inline bool ntt_supported(const Field& f, unsigned log_n) { return log_n <= f.two_adicity(); }

// NTT-friendly primes below 2^50 used for multi-prime products.
const std::vector<u64>& crt_primes();

}  // namespace polypow::detail
