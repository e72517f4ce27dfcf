#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace bpx {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string rat_string(const Rat& x) {
  std::string s = x.get_num().get_str();
  if (x.get_den() != 1) s += "/" + x.get_den().get_str();
  return s;
}

inline Rat rat_parse(const std::string& s) {
  Rat x(s);
  x.canonicalize();
  return x;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

// 64-bit FNV-1a, used for content digests of lattices and cache files.
// Not cryptographic; collisions are irrelevant at atlas scale.
struct Fnv64 {
  uint64_t h = 1469598103934665603ULL;
  void feed(const void* data, size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  }
  void feed(const std::string& s) { feed(s.data(), s.size()); }
  void feed_i64(long v) { feed(&v, sizeof v); }
  std::string hex() const {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    uint64_t x = h;
    for (int i = 15; i >= 0; --i, x >>= 4) s[i] = d[x & 15];
    return s;
  }
};

inline long sigma_divisors(long n, int power) {
  // sum of d^power over positive divisors d of n
  long s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    long e = n / d;
    long dp = 1, ep = 1;
    for (int i = 0; i < power; ++i) dp *= d, ep *= e;
    s += dp;
    if (e != d) s += ep;
  }
  return s;
}

// Kronecker symbol (-4/n): +1 for n = 1 mod 4, -1 for n = 3 mod 4, 0 for even n.
inline int kronecker_m4(long n) {
  long r = n % 4;
  if (r < 0) r += 4;
  if (r == 1) return 1;
  if (r == 3) return -1;
  return 0;
}

inline long gcd_ll(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace bpx
