#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace exspec {

constexpr bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_odd_prime(int p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw std::invalid_argument("modulus must be an odd prime >= 3, got " + std::to_string(p));
}

inline int32_t mod_reduce(int64_t v, int32_t p) {
  int64_t r = v % p;
  return static_cast<int32_t>(r < 0 ? r + p : r);
}

inline int32_t mod_pow(int64_t a, int64_t e, int32_t p) {
  a = mod_reduce(a, p);
  int64_t acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<int32_t>(acc);
}

/// Inverse of a nonzero residue, by Fermat.
inline int32_t mod_inverse(int32_t a, int32_t p) {
  a = mod_reduce(a, p);
  if (a == 0) throw std::domain_error("inverse of zero mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

/// Smallest primitive root mod p.
inline int32_t primitive_root(int32_t p) {
  require_odd_prime(p);
  for (int32_t g = 2; g < p; ++g) {
    bool ok = true;
    // order of g divides p-1; g is primitive iff g^((p-1)/q) != 1 for prime q | p-1
    for (int32_t q = 2; q <= p - 1; ++q) {
      if ((p - 1) % q != 0 || !is_prime(q)) continue;
      if (mod_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

/// Binomial coefficient mod p via Lucas' theorem.
int32_t binom_mod(int64_t n, int64_t k, int32_t p);

/// A residue together with its modulus. Arithmetic requires matching moduli.
struct Fp {
  int32_t value = 0;
  int32_t p = 0;

  Fp() = default;
  Fp(int64_t v, int32_t modulus) : value(mod_reduce(v, modulus)), p(modulus) {
    require_odd_prime(modulus);
  }

  friend Fp operator+(Fp a, Fp b) { a.check(b); return Fp(int64_t(a.value) + b.value, a.p); }
  friend Fp operator-(Fp a, Fp b) { a.check(b); return Fp(int64_t(a.value) - b.value, a.p); }
  friend Fp operator*(Fp a, Fp b) { a.check(b); return Fp(int64_t(a.value) * b.value, a.p); }
  Fp inverse() const { return Fp(mod_inverse(value, p), p); }
  friend bool operator==(const Fp& a, const Fp& b) { return a.p == b.p && a.value == b.value; }

 private:
  void check(const Fp& o) const {
    if (p != o.p) throw std::invalid_argument("mixed moduli in Fp arithmetic");
  }
};

/// Odd prime in the supported range of the graded-ring machinery.
struct Prime {
  int32_t p;
  explicit Prime(int32_t q) : p(q) {
    require_odd_prime(q);
    if (q > 13)
      throw std::invalid_argument("supported primes are 3 <= p <= 13, got " + std::to_string(q));
  }
  friend bool operator==(const Prime& a, const Prime& b) { return a.p == b.p; }
};

}  // namespace exspec
