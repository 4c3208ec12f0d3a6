#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace iwa {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Valuation reported for the zero class.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// The residue ring Z/p^N for an odd prime p.
///
/// N = 0 is allowed and denotes the zero ring; it only shows up when a
/// computation has divided away all of its known digits.
class Modulus {
 public:
  Modulus() = default;

  Modulus(u64 p, int N) : p_(p), N_(N) {
    if (p < 3 || !is_prime(p))
      throw std::invalid_argument("modulus: p must be an odd prime, got " + std::to_string(p));
    if (N < 0) throw std::invalid_argument("modulus: negative precision");
    q_ = 1;
    for (int i = 0; i < N; ++i) {
      if (q_ > (u64{1} << 62) / p) throw std::invalid_argument("modulus: p^N exceeds 2^62");
      q_ *= p;
    }
  }

  u64 p() const { return p_; }
  int precision() const { return N_; }
  /// p^N
  u64 value() const { return q_; }

  u64 reduce(i64 x) const {
    i64 r = x % static_cast<i64>(q_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
  }
  u64 reduce_u(u64 x) const { return x % q_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }
  u64 mul(u64 a, u64 b) const {
    if (q_ <= (u64{1} << 32)) return a * b % q_;
    return static_cast<u64>(static_cast<u128>(a) * b % q_);
  }

  u64 pow(u64 a, u64 e) const {
    u64 r = reduce_u(1), b = reduce_u(a);
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  /// p^k reduced mod p^N (zero once k >= N).
  u64 p_power(int k) const {
    if (k >= N_) return 0;
    u64 r = 1;
    for (int i = 0; i < k; ++i) r *= p_;
    return r;
  }

  /// Largest k <= N with p^k | a; kInfiniteValuation for the zero class.
  int val(u64 a) const {
    a = reduce_u(a);
    if (a == 0) return kInfiniteValuation;
    int k = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++k;
    }
    return k;
  }

  bool is_unit(u64 a) const { return N_ > 0 && a % p_ != 0; }

  u64 inv(u64 a) const {
    if (N_ == 0) return 0;
    if (!is_unit(a)) throw std::domain_error("modulus: inverse of a non-unit");
    // extended Euclid on (a, q)
    i64 r0 = static_cast<i64>(q_), r1 = static_cast<i64>(reduce_u(a));
    i64 s0 = 0, s1 = 1;
    while (r1 != 0) {
      i64 t = r0 / r1;
      i64 r2 = r0 - t * r1;
      r0 = r1;
      r1 = r2;
      i64 s2 = static_cast<i64>((static_cast<__int128>(s0) - static_cast<__int128>(t) * s1) %
                                static_cast<__int128>(q_));
      s0 = s1;
      s1 = s2;
    }
    return reduce(s0);
  }

  Modulus with_precision(int N) const { return Modulus(p_, N); }

  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.p_ == b.p_ && a.N_ == b.N_;
  }

 private:
  u64 p_ = 3;
  int N_ = 1;
  u64 q_ = 3;
};

/// Common precision of two residue rings over the same prime.
inline Modulus common_modulus(const Modulus& a, const Modulus& b) {
  if (a.p() != b.p()) throw std::invalid_argument("mixed primes in one computation");
  return a.precision() <= b.precision() ? a : b;
}

}  // namespace iwa
