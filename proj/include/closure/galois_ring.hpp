#pragma once

// Truncated Witt vectors W_m(F_{p^d}) realized as the Galois ring
// Z/p^m[x]/(G). G is the minimal polynomial of the Teichmuller lift of the
// tower generator, so the class theta of x is itself a Teichmuller element
// and Frobenius is theta -> theta^p.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "closure/gfield.hpp"

namespace closure {

class GaloisRing {
 public:
  GaloisRing(const std::shared_ptr<FieldTower>& tower, unsigned m, unsigned d);

  std::uint64_t p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned d() const { return d_; }
  /// p^m.
  std::uint64_t modulus() const { return pm_; }
  /// Monic G, low degree first, coefficients mod p^m.
  const std::vector<std::uint64_t>& lift_poly() const { return lift_; }
  const LevelPtr& level() const { return level_; }
  std::shared_ptr<FieldTower> tower() const;

  // Raw coordinate arithmetic, used by GrElem.
  std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const;
  std::vector<std::uint64_t> apply_sigma(const std::vector<std::uint64_t>& a) const;

  std::string descriptor() const;

  // Teichmuller lifts keyed by the naive lift of the residue.
  std::optional<std::vector<std::uint64_t>> cached_lift(const std::vector<std::uint64_t>& key) const;
  void store_lift(std::vector<std::uint64_t> key, std::vector<std::uint64_t> value) const;

 private:
  std::uint64_t p_;
  unsigned m_;
  unsigned d_;
  std::uint64_t pm_;
  std::vector<std::uint64_t> lift_;
  // sigma_[j] = coordinates of theta^{p j}.
  std::vector<std::vector<std::uint64_t>> sigma_;
  LevelPtr level_;
  std::weak_ptr<FieldTower> tower_;
  mutable std::mutex lift_mutex_;
  mutable std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> lifts_;
};

using RingPtr = std::shared_ptr<const GaloisRing>;

class GrElem {
 public:
  GrElem(RingPtr ring, std::vector<std::uint64_t> coeffs);

  static GrElem zero(const RingPtr& ring);
  static GrElem one(const RingPtr& ring);
  static GrElem from_int(const RingPtr& ring, long long value);
  /// Coordinatewise lift of a field element with digits in [0, p).
  static GrElem naive_lift(const RingPtr& ring, const FqElem& x);

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t p() const { return ring_->p(); }
  unsigned m() const { return ring_->m(); }
  unsigned d() const { return ring_->d(); }

  bool is_zero() const;
  bool is_unit() const;
  /// Largest k <= m with p^k | x.
  unsigned valuation() const;
  /// Reduction mod p.
  FqElem reduce() const;

  /// Throws NotAUnit.
  GrElem inverse() const;
  GrElem pow(const mpz_class& e) const;
  /// x / p^k; x must be divisible by p^k. The top k digits become zero.
  GrElem div_p(unsigned k) const;
  /// x * p^k.
  GrElem mul_p(unsigned k) const;

  std::string to_string() const;

  friend GrElem operator+(const GrElem& a, const GrElem& b);
  friend GrElem operator-(const GrElem& a, const GrElem& b);
  friend GrElem operator*(const GrElem& a, const GrElem& b);
  friend GrElem operator-(const GrElem& a);
  GrElem& operator+=(const GrElem& o) { return *this = *this + o; }
  GrElem& operator-=(const GrElem& o) { return *this = *this - o; }
  GrElem& operator*=(const GrElem& o) { return *this = *this * o; }
  friend bool operator==(const GrElem& a, const GrElem& b);

 private:
  RingPtr ring_;
  std::vector<std::uint64_t> c_;
};

/// Brings two elements to a common ring: the lcm residue degree and the
/// smaller length m.
std::pair<GrElem, GrElem> common_ring(const GrElem& a, const GrElem& b);

/// Same element in W_{m'}(F_{p^d}) for m' <= m (reduction), or an arbitrary
/// lift for m' > m.
GrElem change_length(const GrElem& x, unsigned m);
/// Image under W_m(F_{p^d}) -> W_m(F_{p^D}), d | D.
GrElem embed(const GrElem& x, unsigned big_d);

GrElem teichmuller(const FqElem& x, const RingPtr& ring);
std::vector<FqElem> digits(const GrElem& z);
GrElem from_digits(const std::vector<FqElem>& digits, const RingPtr& ring);
std::vector<FqElem> witt_coords(const GrElem& z);
GrElem from_witt_coords(const std::vector<FqElem>& coords, const RingPtr& ring);
/// sigma^k; k taken mod d.
GrElem sigma(const GrElem& z, long k);

struct ZpmReport {
  std::uint64_t p;
  unsigned m;
  unsigned trials;
  unsigned mismatches;
};

/// Compares W_m(F_p) arithmetic against integers mod p^m.
ZpmReport zpm_oracle_check(std::uint64_t p, unsigned m, unsigned trials, std::uint64_t seed = 1);

/// Parses "W(p,m,d):[c0,...]".
GrElem parse_gr(const std::string& text, const std::shared_ptr<FieldTower>& tower);

}  // namespace closure
