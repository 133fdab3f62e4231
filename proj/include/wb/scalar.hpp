#pragma once

// Exact field scalars: arbitrary-precision rationals (GMP) and a prime field
// with runtime modulus.  No floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wb {

using Rat = mpq_class;

inline std::string to_string(const Rat& x) { return x.get_str(); }

// mpq_class(n, d) does not canonicalize; use this when building from a ratio.
inline Rat rat(long num, long den) {
  Rat x(num, den);
  x.canonicalize();
  return x;
}
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

// Prime field F_p.  The modulus is a process-wide runtime constant: set it
// once (set_modulus) before any arithmetic.  Values are kept in [0, p).
struct Fp {
  static inline std::int64_t p = 32003;

  static void set_modulus(std::int64_t m) {
    if (m < 2) throw std::invalid_argument("Fp: modulus must be >= 2");
    p = m;
  }

  std::int64_t v = 0;

  Fp() = default;
  Fp(std::int64_t x) : v(x % p) {
    if (v < 0) v += p;
  }

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v + b.v); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v - b.v); }
  friend Fp operator-(Fp a) { return Fp(-a.v); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v * b.v); }

  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }

  Fp inv() const {
    if (v == 0) throw std::domain_error("Fp: division by zero");
    // extended Euclid
    std::int64_t a = v, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0);
  }

  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp& operator/=(Fp b) { return *this = *this / b; }

  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

inline std::string to_string(const Fp& x) { return std::to_string(x.v); }
inline bool is_zero(const Fp& x) { return x.v == 0; }

template <class S>
S scalar_of(long x) {
  return S(x);
}

}  // namespace wb
