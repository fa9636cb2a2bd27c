#include "polypow/ntt.hpp"

#include "polypow/kernels.hpp"

namespace polypow::detail {

void ntt_forward(const Field& f, u64* a, unsigned log_n) {
  if (log_n == 0) return;
  const NttTables& t = f.ntt_tables(log_n);
  const simd::Kernels& k = f.kernels();
  std::size_t n = std::size_t{1} << log_n;
  for (std::size_t h = n / 2; h >= 1; h /= 2) k.dif_stage(f, a, n, h, t.fwd.data() + h);
}

void ntt_inverse(const Field& f, u64* a, unsigned log_n) {
  if (log_n == 0) return;
  const NttTables& t = f.ntt_tables(log_n);
  const simd::Kernels& k = f.kernels();
  std::size_t n = std::size_t{1} << log_n;
  for (std::size_t h = 1; h < n; h *= 2) k.dit_stage(f, a, n, h, t.inv.data() + h);
  k.scale(f, a, a, t.inv_pow2[log_n], n);
}

const std::vector<u64>& crt_primes() {
  static const std::vector<u64> primes = {
      1125845146009601ULL, 1125844072267777ULL, 1125825818656769ULL,
      1125818302464001ULL, 1125816154980353ULL, 1125809712529409ULL,
  };
  return primes;
}

}  // namespace polypow::detail
