#pragma once

// Dense polynomials over F_p as coefficient vectors, low degree first.
// Internal helpers for level construction; not part of the public API.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "closure/error.hpp"

namespace closure::fp {

using Poly = std::vector<std::uint64_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of 0 mod p");
  return powmod(a, p - 2, p);
}

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

/// Returns (quotient, remainder); b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  trim(a);
  const int db = degree(b);
  const std::uint64_t lc_inv = inv(b.back(), p);
  if (degree(a) < db) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  for (int i = degree(a); i >= db; --i) {
    const std::uint64_t c = mulmod(a[i], lc_inv, p);
    q[i - db] = c;
    if (!c) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + p - mulmod(c, b[j], p)) % p;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly mod(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(a, b, p).second; }

inline Poly monic(Poly f, std::uint64_t p) {
  trim(f);
  if (f.empty()) return f;
  const std::uint64_t c = inv(f.back(), p);
  for (auto& x : f) x = mulmod(x, c, p);
  return f;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  result = mod(result, m, p);
  Poly b = mod(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, b, p), m, p);
  }
  return result;
}

/// Rabin's test: f monic of degree d is irreducible iff x^{p^d} = x mod f and
/// gcd(x^{p^{d/q}} - x, f) = 1 for every prime q | d.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const int d = degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  const Poly x{0, 1};
  auto x_pow_p_pow = [&](int k) {
    Poly h = x;
    for (int i = 0; i < k; ++i) h = powmod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
    return h;
  };
  if (sub(x_pow_p_pow(d), x, p) != Poly{}) return false;
  int n = d;
  for (int q = 2; q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    const Poly g = gcd(sub(x_pow_p_pow(d / q), x, p), f, p);
    if (degree(g) != 0) return false;
  }
  return true;
}

/// Inverse of a modulo m (m irreducible) by the extended Euclidean algorithm.
inline Poly inv_mod(const Poly& a, const Poly& m, std::uint64_t p) {
  Poly r0 = m, r1 = mod(a, m, p);
  Poly s0{}, s1{1};
  if (r1.empty()) throw DivisionByZero("inverse of zero field element");
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    Poly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant when gcd(a, m) = 1.
  if (degree(r0) != 0) throw DivisionByZero("element not invertible modulo a reducible polynomial");
  const std::uint64_t c = inv(r0[0], p);
  for (auto& x : s0) x = mulmod(x, c, p);
  return mod(s0, m, p);
}

}  // namespace closure::fp
