#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "rgm/errors.hpp"

namespace rgm {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline u64 gcd_u64(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Checked integer power; throws BoundError on overflow past `cap`.
inline u64 checked_pow(u64 base, unsigned e,
                       u64 cap = std::numeric_limits<u64>::max()) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > cap / base) throw BoundError("integer power overflow");
    r *= base;
  }
  return r;
}

// base^e, or cap + 1 when that exceeds cap.
inline u64 saturating_pow(u64 base, unsigned e, u64 cap) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

// Residues modulo ell^k, stored in [0, q). q < 2^32 so products fit in 64 bits.
class Zmod {
 public:
  Zmod() = default;
  Zmod(u64 ell, int k) : ell_(ell), k_(k) {
    if (!is_prime(ell)) throw ConfigError("ell must be prime, got " + std::to_string(ell));
    if (k < 1) throw ConfigError("k must be >= 1");
    pows_.assign(1, 1);
    for (int i = 1; i <= k; ++i) {
      if (pows_.back() > (u64{1} << 32) / ell)
        throw BoundError("ell^k must be below 2^32");
      pows_.push_back(pows_.back() * ell);
    }
    q_ = pows_.back();
    if (q_ >= (u64{1} << 32)) throw BoundError("ell^k must be below 2^32");
  }

  u64 ell() const { return ell_; }
  int k() const { return k_; }
  u64 q() const { return q_; }
  u64 pow(int e) const { return pows_.at(static_cast<std::size_t>(e)); }

  u64 reduce(i64 a) const {
    i64 r = a % static_cast<i64>(q_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
  }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 mul(u64 a, u64 b) const { return (a * b) % q_; }

  // ell-adic valuation; val(0) = k.
  int val(u64 a) const {
    if (a == 0) return k_;
    int v = 0;
    while (a % ell_ == 0) {
      a /= ell_;
      ++v;
    }
    return v;
  }

  u64 inv_unit(u64 a) const {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(q_), nr = static_cast<i64>(a % q_);
    while (nr != 0) {
      i64 quo = r / nr;
      i64 tmp = t - quo * nt;
      t = nt;
      nt = tmp;
      tmp = r - quo * nr;
      r = nr;
      nr = tmp;
    }
    if (r != 1) throw InternalError("inv_unit: not a unit");
    return reduce(t);
  }

  // a = ell^v * unit  ->  unit (mod q); requires v = val(a) < k.
  u64 unit_part(u64 a, int v) const { return a / pows_[static_cast<std::size_t>(v)]; }

 private:
  u64 ell_ = 2;
  int k_ = 1;
  u64 q_ = 2;
  std::vector<u64> pows_{1, 2};
};

}  // namespace rgm
