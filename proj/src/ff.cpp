#include "polypow/ff.hpp"

#include <map>
#include <string>

#include "polypow/kernels.hpp"
#include "polypow/ntt.hpp"

namespace polypow {

namespace {

u64 mulmod_u128(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u128(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u128(r, a, m);
    a = mulmod_u128(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  static const u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : small) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    u64 x = powmod_u128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_u128(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct FieldRegistry {
  std::mutex mu;
  std::map<u64, Field*> fields;

  const Field& get(u64 p) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = fields.find(p);
    if (it != fields.end()) return *it->second;
    Field* f = new Field(p);  // intentionally never freed
    fields.emplace(p, f);
    return *f;
  }
};

const Field& Field::of(u64 p) {
  static FieldRegistry* registry = new FieldRegistry;
  if (p <= 2 || p >= (u64{1} << 62)) {
    throw Error(Error::Kind::Precondition, "field", "prime must satisfy 2 < p < 2^62, got " + std::to_string(p));
  }
  if (!is_prime_u64(p)) {
    throw Error(Error::Kind::Precondition, "field", std::to_string(p) + " is not prime");
  }
  return registry->get(p);
}

Field::Field(u64 p) : p_(p) {
  shift_ = static_cast<unsigned>(__builtin_clzll(p));
  dnorm_ = p << shift_;
  v_ = static_cast<u64>(~static_cast<u128>(0) / dnorm_);  // floor((2^128-1)/d) - 2^64
  two_adicity_ = static_cast<unsigned>(__builtin_ctzll(p - 1));
  u128 terms = ~static_cast<u128>(0) / (static_cast<u128>(p - 1) * (p - 1));
  lazy_terms_ = terms > (u128{1} << 30) ? (std::size_t{1} << 30) : static_cast<std::size_t>(terms);
  // A quadratic non-residue g gives g^((p-1)/2^v) of order exactly 2^v.
  for (u64 g = 2;; ++g) {
    if (pow(g, (p - 1) / 2) == p - 1) {
      two_adic_root_ = pow(g, (p - 1) >> two_adicity_);
      break;
    }
  }
}

u64 Field::pow(u64 a, u64 e) const {
  u64 r = 1;
  a = reduce64(a);
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Field::inv(u64 a) const {
  a = reduce64(a);
  if (a == 0) throw Error(Error::Kind::DivisionByZero, "field", "inverse of zero");
  // Extended Euclid on signed 128-bit to avoid the slower exponentiation.
  __int128 t = 0, nt = 1;
  u64 r = p_, nr = a;
  while (nr) {
    u64 q = r / nr;
    __int128 tmp = t - static_cast<__int128>(q) * nt;
    t = nt;
    nt = tmp;
    u64 rr = r - q * nr;
    r = nr;
    nr = rr;
  }
  if (t < 0) t += p_;
  return static_cast<u64>(t);
}

u64 Field::from_int(i64 v) const {
  if (v >= 0) return static_cast<u64>(v) % p_;
  u64 m = static_cast<u64>(-(v + 1)) % p_;  // |v| - 1, avoids overflow at INT64_MIN
  return sub(p_ - 1, m);
}

u64 Field::root_of_unity(unsigned k) const {
  if (k > two_adicity_) {
    throw Error(Error::Kind::Precondition, "field", "no root of unity of order 2^" + std::to_string(k));
  }
  u64 w = two_adic_root_;
  for (unsigned i = k; i < two_adicity_; ++i) w = mul(w, w);
  return w;
}

const simd::Kernels& Field::kernels() const { return simd::select(*this); }

const detail::NttTables& Field::ntt_tables(unsigned log_n) const {
  std::lock_guard<std::mutex> lock(tables_mu_);
  if (!tables_.empty() && tables_.back()->max_log >= log_n) return *tables_.back();
  unsigned target = log_n < 10 ? 10 : log_n;
  if (target > two_adicity_) target = log_n;
  root_of_unity(target);  // validates
  auto t = std::make_unique<detail::NttTables>();
  t->max_log = target;
  std::size_t n = std::size_t{1} << target;
  t->fwd.assign(n, 0);
  t->inv.assign(n, 0);
  for (unsigned k = 1; k <= target; ++k) {
    std::size_t h = std::size_t{1} << (k - 1);
    u64 w = root_of_unity(k);
    u64 wi = inv(w);
    u64 cur = 1, curi = 1;
    for (std::size_t j = 0; j < h; ++j) {
      t->fwd[h + j] = cur;
      t->inv[h + j] = curi;
      cur = mul(cur, w);
      curi = mul(curi, wi);
    }
  }
  t->inv_pow2.resize(target + 1);
  u64 half = inv(2);
  t->inv_pow2[0] = 1;
  for (unsigned k = 1; k <= target; ++k) t->inv_pow2[k] = mul(t->inv_pow2[k - 1], half);
  tables_.push_back(std::move(t));
  return *tables_.back();
}

void Field::batch_inv(u64* a, std::size_t n) const {
  if (n == 0) return;
  std::vector<u64> prefix(n);
  u64 acc = 1;
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i] = acc;
    if (a[i] != 0) acc = mul(acc, a[i]);
  }
  u64 ia = inv(acc);
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] == 0) continue;
    u64 ai = a[i];
    a[i] = mul(ia, prefix[i]);
    ia = mul(ia, ai);
  }
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  if (&a.field() != &b.field()) throw Error(Error::Kind::Precondition, "field", "operands from different fields");
  switch (op) {
    case FieldOp::Add: return a + b;
    case FieldOp::Sub: return a - b;
    case FieldOp::Mul: return a * b;
    case FieldOp::Div: return a / b;
  }
  throw Error(Error::Kind::Internal, "field", "unknown op");
}

FieldElement field_pow(const FieldElement& a, u64 e) { return {a.field(), a.field().pow(a.value(), e)}; }

FactorialTable::FactorialTable(const Field& f, u64 limit) : f_(&f) {
  if (limit >= f.modulus()) {
    throw Error(Error::Kind::Precondition, "factorial_tables", "prime too small for requested range");
  }
  fact_.resize(limit + 1);
  inv_fact_.resize(limit + 1);
  fact_[0] = 1;
  for (u64 k = 1; k <= limit; ++k) fact_[k] = f.mul(fact_[k - 1], k);
  inv_fact_[limit] = f.inv(fact_[limit]);
  for (u64 k = limit; k > 0; --k) inv_fact_[k - 1] = f.mul(inv_fact_[k], k);
}

u64 FactorialTable::inv(u64 k) const { return f_->mul(inv_fact_[k], fact_[k - 1]); }

u64 FactorialTable::binom(u64 k, u64 i) const {
  if (i > k) return 0;
  if (k > limit()) throw Error(Error::Kind::Precondition, "factorial_tables", "binomial outside table range");
  return f_->mul(fact_[k], f_->mul(inv_fact_[i], inv_fact_[k - i]));
}

}  // namespace polypow
